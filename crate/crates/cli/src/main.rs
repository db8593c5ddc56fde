use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use unlinking::bounds::{BoundContext, BoundReport, KnotUnknottingTable};
use unlinking::covering::{annular_closure, covering_obstruction, double_cover};
use unlinking::diagram::{checkerboard, LinkDiagram};
use unlinking::embeddings::{norm2_complement_systems, orthogonal_embeddings};
use unlinking::exactla::IntSymMatrix;
use unlinking::invariants::{kauffman_jones, link_invariants, linking_matrix};
use unlinking::search::{upper_bound_search, SearchOptions, SearchResult};
use unlinking_cli::analysis::{analyze, render_table, run_table, AnalysisOptions, SCHEMA};
use unlinking_cli::dataset::{orientation_flags, read_knot_table, read_pd, read_tangle, LinkEntry, LoadedLink};
use unlinking_cli::matrix::{parse_matrix, render_matrix};

/// `writeln!` into the output buffer.
macro_rules! say {
    ($o:expr) => {
        $o.push('\n')
    };
    ($o:expr, $($t:tt)*) => {{
        $o.push_str(&format!($($t)*));
        $o.push('\n');
    }};
}

macro_rules! put {
    ($o:expr, $($t:tt)*) => {
        $o.push_str(&format!($($t)*))
    };
}

const DEFAULT_KNOT_TABLE: &str = "dataset/knot_unknotting.txt";

#[derive(Parser)]
#[command(name = "unlink", version, about = "Link invariants and unlinking-number bounds from PD codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Determinant, nullity, signatures, linking numbers, Goeritz matrix.
    Invariants(InvariantsArgs),
    /// Lower bounds from every method, with an upper bound from the search.
    Bounds(BoundsArgs),
    /// Bounds for every link of a dataset directory.
    Table(TableArgs),
    /// Factorizations G = AᵀA of a positive-definite matrix.
    Embed(EmbedArgs),
    /// Double cover of a knot in annular presentation.
    Cover(CoverArgs),
    /// Smallest set of crossing changes that unlinks the diagram.
    Search(SearchArgs),
}

#[derive(Args, Clone)]
struct SearchFlags {
    /// Largest number of crossing changes tried.
    #[arg(long, default_value_t = 6)]
    max_changes: usize,
    /// Accept only diagrams that simplify to no crossings.
    #[arg(long)]
    certify_only: bool,
    /// Skip the Jones test above this many crossings.
    #[arg(long, default_value_t = unlinking::invariants::DEFAULT_JONES_CAP)]
    jones_cap: usize,
}

impl SearchFlags {
    fn options(&self) -> SearchOptions {
        SearchOptions { max_changes: self.max_changes, jones_cap: self.jones_cap, certify_only: self.certify_only }
    }
}

#[derive(Args)]
struct InvariantsArgs {
    file: PathBuf,
    /// Orientation as comma-separated +1/-1 entries.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    orientation: Option<Vec<i64>>,
    /// Use the other checkerboard shading.
    #[arg(long)]
    shading: bool,
    /// Relabelling of the white regions, comma-separated.
    #[arg(long, value_delimiter = ',')]
    region_order: Option<Vec<usize>>,
    #[arg(long, default_value_t = unlinking::invariants::DEFAULT_JONES_CAP)]
    jones_cap: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct BoundsArgs {
    file: PathBuf,
    /// Further diagrams of the same link for the lattice test.
    #[arg(long = "alternate")]
    alternates: Vec<PathBuf>,
    /// Annular presentation for the covering-link bound.
    #[arg(long)]
    tangle: Option<PathBuf>,
    /// `knot value` file; diagrams are read from `knots/` beside it.
    #[arg(long)]
    knot_table: Option<PathBuf>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    orientation: Option<Vec<i64>>,
    /// Skip the upper-bound search.
    #[arg(long)]
    no_search: bool,
    #[command(flatten)]
    search: SearchFlags,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct TableArgs {
    dir: PathBuf,
    /// Worker threads (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
    #[command(flatten)]
    search: SearchFlags,
    /// JSON lines instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct EmbedArgs {
    /// Matrix file, one row per line.
    matrix: PathBuf,
    /// Dimension of the target lattice.
    l: usize,
    /// Also count systems of this many orthogonal norm-2 vectors in each
    /// complement.
    #[arg(long)]
    systems: Option<usize>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CoverArgs {
    tangle: PathBuf,
    #[arg(long)]
    knot_table: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SearchArgs {
    file: PathBuf,
    #[command(flatten)]
    search: SearchFlags,
    #[arg(long)]
    json: bool,
}

#[derive(Serialize, Deserialize)]
struct SignatureEntry {
    orientation: Vec<i64>,
    sigma: i64,
}

#[derive(Serialize, Deserialize)]
struct InvariantsOutput {
    schema: u32,
    name: String,
    crossings: usize,
    components: usize,
    connected: bool,
    det: Option<i64>,
    nullity: Option<usize>,
    signature: Option<i64>,
    signatures: Vec<SignatureEntry>,
    linking_matrix: Vec<Vec<i64>>,
    goeritz: Option<Vec<Vec<i64>>>,
    snf: Option<Vec<i64>>,
    jones: Option<String>,
}

fn sign_vec(flags: &[bool]) -> Vec<i64> {
    flags.iter().map(|&r| if r { -1 } else { 1 }).collect()
}

fn load_oriented(path: &Path, orientation: &Option<Vec<i64>>) -> Result<LinkDiagram> {
    let d = read_pd(path)?;
    Ok(match orientation {
        Some(o) => d.with_orientation(&orientation_flags(o)?)?,
        None => d,
    })
}

fn knot_table(path: &Option<PathBuf>) -> Result<KnotUnknottingTable> {
    match path {
        Some(p) => read_knot_table(p),
        None if Path::new(DEFAULT_KNOT_TABLE).exists() => read_knot_table(Path::new(DEFAULT_KNOT_TABLE)),
        None => Ok(KnotUnknottingTable::default()),
    }
}

fn print_json<T: Serialize>(o: &mut String, v: &T) -> Result<()> {
    say!(o, "{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn cmd_invariants(o: &mut String, a: &InvariantsArgs) -> Result<()> {
    let d = load_oriented(&a.file, &a.orientation)?;
    let jones = kauffman_jones(&d, a.jones_cap).ok().map(|j| j.to_string());
    let mut out = InvariantsOutput {
        schema: SCHEMA,
        name: d.name().unwrap_or("link").to_string(),
        crossings: d.num_crossings(),
        components: d.num_components(),
        connected: d.is_connected(),
        det: None,
        nullity: None,
        signature: None,
        signatures: Vec::new(),
        linking_matrix: linking_matrix(&d),
        goeritz: None,
        snf: None,
        jones,
    };
    if out.connected {
        let mut s = checkerboard(&d, a.shading)?;
        if let Some(order) = &a.region_order {
            s = s.with_region_order(order)?;
        }
        let inv = link_invariants(&d, &s)?;
        out.det = Some(inv.det);
        out.nullity = Some(inv.eta);
        out.signature = Some(inv.sigma);
        out.signatures =
            inv.signatures.iter().map(|(o, s)| SignatureEntry { orientation: o.clone(), sigma: *s }).collect();
        out.goeritz = Some(inv.goeritz.to_rows());
        out.snf = Some(inv.snf.clone());
    }
    if a.json {
        return print_json(o, &out);
    }
    say!(o, "link        {}", out.name);
    say!(o, "crossings   {}", out.crossings);
    say!(o, "components  {}", out.components);
    if !out.connected {
        say!(o, "note        diagram is disconnected; Goeritz invariants skipped");
    }
    if let (Some(det), Some(eta), Some(sigma)) = (out.det, out.nullity, out.signature) {
        say!(o, "det         {det}");
        say!(o, "nullity     {eta}");
        say!(o, "signature   {sigma} (orientation {:?})", sign_vec(d.reversed()));
        for e in &out.signatures {
            say!(o, "  {:?}  {}", e.orientation, e.sigma);
        }
    }
    say!(o, "linking matrix");
    for r in &out.linking_matrix {
        say!(o, "  {r:?}");
    }
    if let (Some(g), Some(snf)) = (&out.goeritz, &out.snf) {
        say!(o, "goeritz");
        for r in g {
            say!(o, "  {r:?}");
        }
        let f: Vec<String> = snf.iter().map(|v| v.to_string()).collect();
        say!(o, "snf         diag({})", f.join(","));
    }
    if let Some(j) = &out.jones {
        say!(o, "jones       {j}");
    }
    Ok(())
}

#[derive(Serialize)]
struct BoundsOutput<'a> {
    schema: u32,
    #[serde(flatten)]
    report: &'a BoundReport,
}

fn print_report(o: &mut String, r: &BoundReport) {
    say!(o, "link        {}", r.name);
    for e in &r.entries {
        say!(o, "  {:<12} {}", e.method.as_str(), e.bound);
    }
    let method = r.method.map_or("-", |m| m.as_str());
    say!(o, "lower       {} ({method})", r.best_lower);
    match &r.upper {
        Some(u) => say!(o, "upper       {} witness {:?} ({})", u.value, u.witness, u.verdict),
        None => say!(o, "upper       none found"),
    }
    say!(o, "status      {}", r.status);
}

fn cmd_bounds(o: &mut String, a: &BoundsArgs) -> Result<()> {
    let d = load_oriented(&a.file, &a.orientation)?;
    let table = knot_table(&a.knot_table)?;
    let ctx = BoundContext::new(&table);
    let alternates = a.alternates.iter().map(|p| read_pd(p)).collect::<Result<Vec<_>>>()?;
    let tangle = a.tangle.as_ref().map(|p| read_tangle(p)).transpose()?;
    let name = d.name().unwrap_or("link").to_string();
    let link =
        LoadedLink { entry: LinkEntry::bare(name, a.file.display().to_string()), diagram: d, alternates, tangle };
    let opts = AnalysisOptions { search: !a.no_search, search_options: a.search.options() };
    let report = analyze(&link, &ctx, &opts)?;
    if a.json {
        return print_json(o, &BoundsOutput { schema: SCHEMA, report: &report });
    }
    print_report(o, &report);
    Ok(())
}

fn cmd_table(o: &mut String, a: &TableArgs) -> Result<ExitCode> {
    let opts = AnalysisOptions { search: true, search_options: a.search.options() };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = a.threads {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().context("building worker pool")?;
    let out = pool.install(|| run_table(&a.dir, &opts))?;
    if a.json {
        for r in &out.rows {
            say!(o, "{}", serde_json::to_string(r)?);
        }
    } else {
        put!(o, "{}", render_table(&out));
    }
    for e in &out.errors {
        eprintln!("error: {e}");
    }
    let bad = out.mismatches();
    for r in &bad {
        eprintln!("mismatch: {} got {} {}", r.name, r.u, r.method.map_or("-", |m| m.as_str()));
    }
    Ok(if !bad.is_empty() {
        ExitCode::from(1)
    } else if !out.errors.is_empty() {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    })
}

#[derive(Serialize, Deserialize)]
struct EmbedSolution {
    a: Vec<Vec<i64>>,
    systems: Option<usize>,
}

#[derive(Serialize, Deserialize)]
struct EmbedOutput {
    schema: u32,
    l: usize,
    solutions: Vec<EmbedSolution>,
}

fn cmd_embed(o: &mut String, a: &EmbedArgs) -> Result<()> {
    let text = std::fs::read_to_string(&a.matrix).with_context(|| format!("reading {}", a.matrix.display()))?;
    let g = IntSymMatrix::new(parse_matrix(&text)?)?;
    let sols = orthogonal_embeddings(&g, a.l)?;
    let out = EmbedOutput {
        schema: SCHEMA,
        l: a.l,
        solutions: sols
            .iter()
            .map(|s| EmbedSolution {
                a: s.a.to_rows(),
                systems: a.systems.map(|q| norm2_complement_systems(&s.a, q, false).len()),
            })
            .collect(),
    };
    if a.json {
        return print_json(o, &out);
    }
    say!(o, "{} solution(s) in dimension {}", sols.len(), a.l);
    for (i, s) in sols.iter().enumerate() {
        say!(o);
        match out.solutions[i].systems {
            Some(n) => say!(o, "A{} ({n} system(s) of {} norm-2 vectors)", i + 1, a.systems.unwrap_or(0)),
            None => say!(o, "A{}", i + 1),
        }
        put!(o, "{}", render_matrix(&s.a));
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct CoverOutput {
    schema: u32,
    closure_crossings: usize,
    closure_jones: Option<String>,
    winding: i64,
    cover_pd: String,
    cover_components: usize,
    linking_matrix: Vec<Vec<i64>>,
    component_jones: Vec<Option<String>>,
    cover_bound: Option<usize>,
    obstructed: Option<bool>,
}

fn cmd_cover(o: &mut String, a: &CoverArgs) -> Result<()> {
    let t = read_tangle(&a.tangle)?;
    let b = annular_closure(&t)?;
    let c = double_cover(&t)?;
    let table = knot_table(&a.knot_table)?;
    let ctx = BoundContext::new(&table);
    let obstruction = covering_obstruction(&t, &ctx).ok();
    let jones = |d: &LinkDiagram| kauffman_jones(d, 24).ok().map(|j| j.to_string());
    let out = CoverOutput {
        schema: SCHEMA,
        closure_crossings: b.num_crossings(),
        closure_jones: jones(&b),
        winding: t.winding()?,
        cover_pd: c.to_pd_string(),
        cover_components: c.num_components(),
        linking_matrix: linking_matrix(&c),
        component_jones: (0..c.num_components()).map(|i| c.sublink(&[i]).ok().and_then(|s| jones(&s))).collect(),
        cover_bound: obstruction.as_ref().map(|o| o.cover_bound),
        obstructed: obstruction.as_ref().map(|o| o.obstructed),
    };
    if a.json {
        return print_json(o, &out);
    }
    say!(o, "closure     {} crossings, jones {}", out.closure_crossings, out.closure_jones.as_deref().unwrap_or("?"));
    say!(o, "winding     {}", out.winding);
    say!(o, "cover       {} components", out.cover_components);
    for (i, j) in out.component_jones.iter().enumerate() {
        say!(o, "  component {i}: jones {}", j.as_deref().unwrap_or("?"));
    }
    say!(o, "linking matrix");
    for r in &out.linking_matrix {
        say!(o, "  {r:?}");
    }
    match (out.cover_bound, out.obstructed) {
        (Some(b), Some(obs)) => say!(
            o,
            "cover bound {b}; single change within the knot {}",
            if obs { "obstructed" } else { "not obstructed" }
        ),
        _ => say!(o, "obstruction not applicable"),
    }
    say!(o);
    put!(o, "{}", out.cover_pd);
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct SearchOutput {
    schema: u32,
    name: String,
    result: Option<SearchResult>,
}

fn cmd_search(o: &mut String, a: &SearchArgs) -> Result<()> {
    let d = read_pd(&a.file)?;
    let result = upper_bound_search(&d, a.search.options())?;
    let out = SearchOutput { schema: SCHEMA, name: d.name().unwrap_or("link").to_string(), result };
    if a.json {
        return print_json(o, &out);
    }
    match &out.result {
        Some(r) => say!(
            o,
            "{}: {} change(s) at {:?}, {} after {} move(s)",
            out.name,
            r.changes,
            r.witness,
            r.verdict.value,
            r.verdict.moves.len()
        ),
        None => say!(o, "{}: nothing within {} changes", out.name, a.search.max_changes),
    }
    Ok(())
}

fn run(o: &mut String, cli: Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::Invariants(a) => cmd_invariants(o, a)?,
        Command::Bounds(a) => cmd_bounds(o, a)?,
        Command::Table(a) => return cmd_table(o, a),
        Command::Embed(a) => cmd_embed(o, a)?,
        Command::Cover(a) => cmd_cover(o, a)?,
        Command::Search(a) => cmd_search(o, a)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut o = String::new();
    let code = match run(&mut o, cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    };
    // a closed pipe (`| head`) is not an error
    match std::io::stdout().lock().write_all(o.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        _ => code,
    }
}
