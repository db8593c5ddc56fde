use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use unlinking::bounds::BoundReport;
use unlinking_cli::analysis::TableRow;

fn dataset() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../dataset")
}

fn unlink(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unlink")).args(args).current_dir(dataset().join("..")).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn p(rel: &str) -> String {
    dataset().join(rel).to_string_lossy().into_owned()
}

fn table_rows(o: &Output) -> Vec<TableRow> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn every_command_runs() {
    let g = tempfile::NamedTempFile::new().unwrap();
    fs::write(g.path(), "7 -1 -1\n-1 3 -1\n-1 -1 3\n").unwrap();
    let gp = g.path().to_string_lossy().into_owned();
    let runs: Vec<Vec<String>> = vec![
        vec!["invariants".into(), p("links/L10a54.pd")],
        vec!["bounds".into(), p("links/L10n33.pd")],
        vec!["table".into(), p("")],
        vec!["embed".into(), gp, "7".into()],
        vec!["cover".into(), p("tangles/L10a7.tangle")],
        vec!["search".into(), p("links/hopf.pd")],
    ];
    for args in runs {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let o = unlink(&args);
        assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(!o.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn invariants_follow_orientation_and_shading_flags() {
    let o = unlink(&["invariants", &p("links/L10a99.pd"), "--orientation", "1,-1", "--json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["signature"], -5);

    let o = unlink(&["invariants", &p("links/L10a138.pd"), "--region-order", "0,2,1,3", "--json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["goeritz"], serde_json::json!([[7, -1, -1], [-1, 3, -1], [-1, -1, 3]]));
    assert_eq!((v["det"].as_i64(), v["signature"].as_i64()), (Some(48), Some(-4)));

    let other = unlink(&["invariants", &p("links/L10a138.pd"), "--shading", "--json"]);
    let w: Value = serde_json::from_slice(&other.stdout).unwrap();
    assert_eq!(w["signature"], v["signature"]);
    assert_eq!(w["det"], v["det"]);
}

#[test]
fn empty_directory_gives_empty_table() {
    let dir = tempfile::tempdir().unwrap();
    let o = unlink(&["table", &dir.path().to_string_lossy(), "--json"]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
}

fn copy_links(dir: &Path, names: &[&str]) {
    for n in names {
        fs::copy(dataset().join(format!("links/{n}.pd")), dir.join(format!("{n}.pd"))).unwrap();
    }
}

#[test]
fn corrupt_file_is_reported_and_skipped() {
    let dir = tempfile::tempdir().unwrap();
    copy_links(dir.path(), &["hopf", "L10n96"]);
    fs::write(dir.path().join("broken.pd"), "X 1 2 3\n").unwrap();
    let o = unlink(&["table", &dir.path().to_string_lossy(), "--json"]);
    assert_eq!(o.status.code(), Some(2));
    let rows = table_rows(&o);
    let names: Vec<&str> = rows.iter().map(|r| r.name.as_str()).collect();
    assert_eq!(names, ["L10n96", "hopf"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("broken.pd"));
}

#[test]
fn golden_mismatch_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    copy_links(dir.path(), &["hopf"]);
    fs::write(
        dir.path().join("manifest.toml"),
        "schema = 1\n\n[[link]]\nname = \"hopf\"\nfile = \"hopf.pd\"\nu = \"2\"\nmethod = \"linking\"\n",
    )
    .unwrap();
    let o = unlink(&["table", &dir.path().to_string_lossy()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("mismatch: hopf"));
}

#[test]
fn bad_input_exits_two() {
    assert_eq!(unlink(&["invariants", "no/such/file.pd"]).status.code(), Some(2));
    assert_eq!(unlink(&["frobnicate"]).status.code(), Some(2));
    let t = tempfile::NamedTempFile::new().unwrap();
    fs::write(t.path(), "left 1\nright 2\n").unwrap();
    assert_eq!(unlink(&["cover", &t.path().to_string_lossy()]).status.code(), Some(2));
}

#[test]
fn json_round_trips() {
    let o = unlink(&["table", &p(""), "--json"]);
    for line in stdout(&o).lines() {
        let row: TableRow = serde_json::from_str(line).unwrap();
        let again: Value = serde_json::to_value(&row).unwrap();
        assert_eq!(again, serde_json::from_str::<Value>(line).unwrap());
    }

    let o = unlink(&["bounds", &p("links/L10n34.pd"), "--alternate", &p("links/extra/L10n34-definite.pd"), "--json"]);
    let mut v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    v.as_object_mut().unwrap().remove("schema");
    let report: BoundReport = serde_json::from_value(v.clone()).unwrap();
    assert_eq!(serde_json::to_value(&report).unwrap(), v);
    assert_eq!((report.best_lower, report.upper.map(|u| u.value)), (2, Some(3)));
}

#[test]
fn table_is_deterministic_across_thread_counts() {
    let one = unlink(&["table", &p(""), "--json", "--threads", "1"]);
    let four = unlink(&["table", &p(""), "--json", "--threads", "4"]);
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(table_rows(&one).len(), 10);
}

#[test]
fn embed_counts_solutions() {
    let g = tempfile::NamedTempFile::new().unwrap();
    fs::write(g.path(), "[[7,-1,-1],[-1,3,-1],[-1,-1,3]]\n").unwrap();
    let o = unlink(&["embed", &g.path().to_string_lossy(), "7", "--systems", "3", "--json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let sols = v["solutions"].as_array().unwrap();
    assert_eq!(sols.len(), 9);
    assert!(sols.iter().all(|s| s["systems"] == 0));

    fs::write(g.path(), "2\n").unwrap();
    let o = unlink(&["embed", &g.path().to_string_lossy(), "1", "--json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["solutions"].as_array().unwrap().is_empty());

    fs::write(g.path(), "1 2\n2 1\n").unwrap();
    assert_eq!(unlink(&["embed", &g.path().to_string_lossy(), "3"]).status.code(), Some(2));
}

#[test]
fn cover_reports_two_linked_components() {
    let o = unlink(&["cover", &p("tangles/L10a7.tangle"), "--json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["cover_components"], 2);
    assert_eq!(v["linking_matrix"][0][1].as_i64().map(i64::abs), Some(2));
    assert_eq!(v["obstructed"], true);
    assert_eq!(v["component_jones"][0], v["component_jones"][1]);
}

#[test]
fn search_respects_change_limit() {
    let o = unlink(&["search", &p("links/L10n96.pd"), "--max-changes", "4", "--json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["result"].is_null());
    let o = unlink(&["search", &p("links/L10n96.pd"), "--json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"]["changes"], 5);
}

#[test]
fn closed_pipe_is_not_an_error() {
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_unlink"))
        .args(["cover", &p("tangles/L10a7.tangle")])
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    drop(child.stdout.take());
    let status = child.wait().unwrap();
    assert!(status.success());
}
