use std::path::Path;

use anyhow::Result;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use unlinking::bounds::{combine, BoundContext, BoundReport, MethodId, Status, UpperBound};
use unlinking::covering::bound_covering;
use unlinking::search::{upper_bound_search, SearchOptions, Verdict};

use crate::dataset::{format_bracket, Dataset, LoadedLink};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnalysisOptions {
    /// Run the crossing-change search for an upper bound.
    pub search: bool,
    pub search_options: SearchOptions,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions { search: true, search_options: SearchOptions::default() }
    }
}

/// Lower bounds from every method, plus the covering bound when a tangle is
/// supplied and an upper bound from the search.
pub fn analyze(link: &LoadedLink, ctx: &BoundContext, opts: &AnalysisOptions) -> Result<BoundReport> {
    let d = &link.diagram;
    let mut report = combine(d, &link.alternates, ctx)?;
    report.name = link.entry.name.clone();
    if let Some(t) = &link.tangle {
        report.add_entry(bound_covering(t, ctx)?);
    }
    if opts.search {
        let found = upper_bound_search(d, opts.search_options)?;
        report.set_upper(found.map(|r| UpperBound { value: r.changes, witness: r.witness, verdict: r.verdict.value }));
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub name: String,
    /// Unlinking number, or `[lower,upper]`.
    pub u: String,
    pub lower: usize,
    pub upper: Option<usize>,
    pub status: Status,
    pub method: Option<MethodId>,
    /// Verdict tier of the upper-bound witness.
    pub witness: Option<Verdict>,
    pub expected_u: Option<String>,
    pub expected_method: Option<String>,
    /// Whether the row agrees with the manifest, when it has expectations.
    pub matches: Option<bool>,
}

impl TableRow {
    pub fn from_report(r: &BoundReport) -> Self {
        let upper = r.upper.as_ref().map(|u| u.value);
        TableRow {
            name: r.name.clone(),
            u: format_bracket(r.best_lower, upper),
            lower: r.best_lower,
            upper,
            status: r.status,
            method: r.method,
            witness: r.upper.as_ref().map(|u| u.verdict),
            expected_u: None,
            expected_method: None,
            matches: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableOutput {
    pub schema: u32,
    pub rows: Vec<TableRow>,
    pub errors: Vec<String>,
}

impl TableOutput {
    pub fn mismatches(&self) -> Vec<&TableRow> {
        self.rows.iter().filter(|r| r.matches == Some(false)).collect()
    }
}

/// Analyzes every link of a dataset directory. Rows come back in name order
/// whatever the completion order; unreadable links are listed as errors.
pub fn run_table(root: &Path, opts: &AnalysisOptions) -> Result<TableOutput> {
    let ds = Dataset::open(root)?;
    let table = ds.knot_table()?;
    let ctx = BoundContext::new(&table);
    let results: Vec<std::result::Result<TableRow, String>> = ds
        .entries
        .par_iter()
        .map(|entry| {
            let link = LoadedLink::load(&ds.root, entry).map_err(|e| format!("{}: {e:#}", entry.file))?;
            let report = analyze(&link, &ctx, opts).map_err(|e| format!("{}: {e:#}", entry.file))?;
            let mut row = TableRow::from_report(&report);
            row.expected_u = entry.u.clone();
            row.expected_method = entry.method.clone();
            if entry.u.is_some() || entry.method.is_some() {
                let u_ok = match entry.expected_bracket() {
                    Ok(Some((lo, hi))) => row.lower == lo && row.upper == Some(hi),
                    Ok(None) => true,
                    Err(_) => false,
                };
                let m_ok = match &entry.method {
                    Some(m) => row.method.map(|x| x.as_str()) == Some(m.as_str()),
                    None => true,
                };
                row.matches = Some(u_ok && m_ok);
            }
            Ok(row)
        })
        .collect();
    let mut rows = Vec::new();
    let mut errors = Vec::new();
    for r in results {
        match r {
            Ok(row) => rows.push(row),
            Err(e) => errors.push(e),
        }
    }
    Ok(TableOutput { schema: SCHEMA, rows, errors })
}

pub fn render_table(t: &TableOutput) -> String {
    let mut out = format!("{:<10} {:<7} {:<12} {:<10} {}\n", "link", "u", "method", "status", "check");
    for r in &t.rows {
        let method = r.method.map_or("-", |m| m.as_str());
        let status = r.status.as_str();
        let check = match (r.matches, &r.expected_u, &r.expected_method) {
            (Some(true), _, _) => "ok".to_string(),
            (Some(false), u, m) => {
                format!("expected {} {}", u.as_deref().unwrap_or("?"), m.as_deref().unwrap_or("-"))
            }
            (None, _, _) => String::new(),
        };
        out.push_str(format!("{:<10} {:<7} {:<12} {:<10} {}", r.name, r.u, method, status, check).trim_end());
        out.push('\n');
    }
    out
}
