use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use unlinking::bounds::KnotUnknottingTable;
use unlinking::covering::AnnularTangle;
use unlinking::diagram::LinkDiagram;

pub const MANIFEST: &str = "manifest.toml";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub schema: u32,
    #[serde(default)]
    pub knot_table: Option<String>,
    #[serde(default)]
    pub link: Vec<LinkEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkEntry {
    pub name: String,
    pub file: String,
    /// `+1` or `-1` per component.
    #[serde(default)]
    pub orientation: Option<Vec<i64>>,
    #[serde(default)]
    pub shading: bool,
    #[serde(default)]
    pub region_order: Option<Vec<usize>>,
    #[serde(default)]
    pub alternates: Vec<String>,
    #[serde(default)]
    pub tangle: Option<String>,
    /// `"3"` or `"[2,3]"`.
    #[serde(default)]
    pub u: Option<String>,
    #[serde(default)]
    pub method: Option<String>,
}

impl LinkEntry {
    pub fn bare(name: String, file: String) -> Self {
        LinkEntry {
            name,
            file,
            orientation: None,
            shading: false,
            region_order: None,
            alternates: Vec::new(),
            tangle: None,
            u: None,
            method: None,
        }
    }

    pub fn expected_bracket(&self) -> Result<Option<(usize, usize)>> {
        self.u.as_deref().map(parse_bracket).transpose()
    }
}

/// Parses `"3"` or `"[2,3]"`.
pub fn parse_bracket(s: &str) -> Result<(usize, usize)> {
    let s = s.trim();
    if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
        let (a, b) = inner.split_once(',').context("expected `[lower,upper]`")?;
        return Ok((a.trim().parse()?, b.trim().parse()?));
    }
    let v = s.parse()?;
    Ok((v, v))
}

pub fn format_bracket(lower: usize, upper: Option<usize>) -> String {
    match upper {
        Some(u) if u == lower => lower.to_string(),
        Some(u) => format!("[{lower},{u}]"),
        None => format!("[{lower},?]"),
    }
}

/// A link entry with its files loaded.
#[derive(Debug, Clone)]
pub struct LoadedLink {
    pub entry: LinkEntry,
    pub diagram: LinkDiagram,
    pub alternates: Vec<LinkDiagram>,
    pub tangle: Option<AnnularTangle>,
}

impl LoadedLink {
    pub fn load(root: &Path, entry: &LinkEntry) -> Result<Self> {
        let diagram = read_pd(&root.join(&entry.file))?;
        let diagram = match &entry.orientation {
            Some(o) => diagram.with_orientation(&orientation_flags(o)?)?,
            None => diagram,
        };
        let alternates = entry.alternates.iter().map(|f| read_pd(&root.join(f))).collect::<Result<Vec<_>>>()?;
        let tangle = entry.tangle.as_ref().map(|f| read_tangle(&root.join(f))).transpose()?;
        Ok(LoadedLink { entry: entry.clone(), diagram, alternates, tangle })
    }
}

pub fn orientation_flags(o: &[i64]) -> Result<Vec<bool>> {
    o.iter()
        .map(|&v| match v {
            1 => Ok(false),
            -1 => Ok(true),
            _ => bail!("orientation entries must be +1 or -1, got {v}"),
        })
        .collect()
}

pub fn read_pd(path: &Path) -> Result<LinkDiagram> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let d = LinkDiagram::parse_pd(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(match d.name() {
        Some(_) => d,
        None => d.with_name(path.file_stem().and_then(|s| s.to_str()).unwrap_or("link")),
    })
}

pub fn read_tangle(path: &Path) -> Result<AnnularTangle> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    AnnularTangle::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Reads `knot value` lines and registers `knots/<name>.pd` next to the
/// table file for every entry that has one.
pub fn read_knot_table(path: &Path) -> Result<KnotUnknottingTable> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut table = KnotUnknottingTable::parse(&text).with_context(|| format!("parsing {}", path.display()))?;
    let dir = path.parent().unwrap_or(Path::new(".")).join("knots");
    let names: Vec<String> =
        text.lines().filter_map(|l| l.split('#').next()?.split_whitespace().next().map(str::to_string)).collect();
    for name in names {
        let p = dir.join(format!("{name}.pd"));
        if p.exists() {
            table.add_knot_diagram(&name, &read_pd(&p)?)?;
        }
    }
    Ok(table)
}

/// The links of a dataset directory: the manifest entries if a manifest is
/// present, otherwise every `.pd` file in the directory and in `links/`.
pub struct Dataset {
    pub root: PathBuf,
    pub manifest: Option<Manifest>,
    pub entries: Vec<LinkEntry>,
}

impl Dataset {
    pub fn open(root: &Path) -> Result<Self> {
        if !root.is_dir() {
            bail!("{} is not a directory", root.display());
        }
        let mpath = root.join(MANIFEST);
        if mpath.exists() {
            let text = fs::read_to_string(&mpath).with_context(|| format!("reading {}", mpath.display()))?;
            let manifest: Manifest = toml::from_str(&text).with_context(|| format!("parsing {}", mpath.display()))?;
            let mut entries = manifest.link.clone();
            entries.sort_by(|a, b| a.name.cmp(&b.name));
            return Ok(Dataset { root: root.to_path_buf(), manifest: Some(manifest), entries });
        }
        let mut entries = Vec::new();
        for dir in [root.to_path_buf(), root.join("links")] {
            let Ok(rd) = fs::read_dir(&dir) else { continue };
            for e in rd {
                let p = e?.path();
                if p.extension().and_then(|s| s.to_str()) == Some("pd") {
                    let name = p.file_stem().and_then(|s| s.to_str()).unwrap_or_default().to_string();
                    let rel = p.strip_prefix(root).unwrap_or(&p).to_string_lossy().into_owned();
                    entries.push(LinkEntry::bare(name, rel));
                }
            }
        }
        entries.sort_by(|a, b| a.name.cmp(&b.name));
        Ok(Dataset { root: root.to_path_buf(), manifest: None, entries })
    }

    pub fn knot_table(&self) -> Result<KnotUnknottingTable> {
        let rel = self.manifest.as_ref().and_then(|m| m.knot_table.clone());
        let path = match rel {
            Some(r) => self.root.join(r),
            None => self.root.join("knot_unknotting.txt"),
        };
        if path.exists() {
            read_knot_table(&path)
        } else {
            Ok(KnotUnknottingTable::default())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brackets() {
        assert_eq!(parse_bracket("3").unwrap(), (3, 3));
        assert_eq!(parse_bracket("[2, 3]").unwrap(), (2, 3));
        assert!(parse_bracket("[2").is_err());
        assert_eq!(format_bracket(2, Some(3)), "[2,3]");
        assert_eq!(format_bracket(4, Some(4)), "4");
        assert_eq!(format_bracket(1, None), "[1,?]");
    }

    #[test]
    fn orientation_entries() {
        assert_eq!(orientation_flags(&[1, -1]).unwrap(), vec![false, true]);
        assert!(orientation_flags(&[0]).is_err());
    }
}
