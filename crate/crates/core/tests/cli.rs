use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use spinstat::campaign::CampaignReport;
use tempfile::TempDir;

fn spinstat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spinstat"))
        .args(args)
        .output()
        .expect("spinstat runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

const SMALL_2D: &str = r#"{"lambda": [0, 0.5, 1, 2], "sigma": [0, 0.5], "order": 6, "grid": 32}"#;

#[test]
fn passing_campaign_exits_zero() {
    let dir = TempDir::new().unwrap();
    let config = write(dir.path(), "c.json", SMALL_2D);
    let out = dir.path().join("r.json");
    let run = spinstat(&["verify-2d", "--config", &config, "--out", out.to_str().unwrap()]);
    assert_eq!(run.status.code(), Some(0), "{}", String::from_utf8_lossy(&run.stderr));
    let report = CampaignReport::from_json(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report.summary.items, 16);
    assert!(report.passed());
}

#[test]
fn mutated_condition_exits_one() {
    let run = spinstat(&["lemma-tables", "--mutate-condition", "1"]);
    assert_eq!(run.status.code(), Some(1));
}

#[test]
fn bad_inputs_exit_two() {
    let dir = TempDir::new().unwrap();
    let cases = [
        write(dir.path(), "order.json", r#"{"order": 100, "grid": 128}"#),
        write(dir.path(), "mode.json", r#"{"mode": "verify-3d"}"#),
        write(dir.path(), "unknown.json", r#"{"lamda": [0]}"#),
        write(dir.path(), "broken.json", "{"),
    ];
    for config in &cases {
        let run = spinstat(&["verify-2d", "--config", config]);
        assert_eq!(run.status.code(), Some(2), "{config}");
    }
    let missing = spinstat(&["verify-2d", "--config", "/nonexistent/c.json"]);
    assert_eq!(missing.status.code(), Some(2));
    let column = spinstat(&["braid-phases", "--format", "csv", "--columns", "nope"]);
    assert_eq!(column.status.code(), Some(2));
}

#[test]
fn output_is_independent_of_worker_count() {
    let dir = TempDir::new().unwrap();
    let config = write(dir.path(), "c.json", SMALL_2D);
    let runs: Vec<Vec<u8>> = ["1", "3", "8"]
        .iter()
        .map(|w| spinstat(&["verify-2d", "--config", &config, "--workers", w]).stdout)
        .collect();
    assert!(!runs[0].is_empty());
    assert!(runs.iter().all(|r| r == &runs[0]));

    let flow = r#"{"order": 6, "grid": 32, "angles": 8, "test_functions": 4, "seed": 11}"#;
    let flow = write(dir.path(), "f.json", flow);
    let a = spinstat(&["flow-crosscheck", "--config", &flow, "--workers", "1"]).stdout;
    let b = spinstat(&["flow-crosscheck", "--config", &flow, "--workers", "4"]).stdout;
    assert_eq!(a, b);
}

#[test]
fn csv_matches_render_table() {
    let dir = TempDir::new().unwrap();
    let json = dir.path().join("r.json");
    let run = spinstat(&["bound-states", "--out", json.to_str().unwrap()]);
    assert_eq!(run.status.code(), Some(0));
    let direct = spinstat(&["bound-states", "--format", "csv"]).stdout;
    let rendered = spinstat(&["render-table", "--report", json.to_str().unwrap()]).stdout;
    assert_eq!(direct, rendered);

    let mut reader = csv::Reader::from_reader(direct.as_slice());
    assert_eq!(reader.records().count(), 16);
}

#[test]
fn render_table_selects_columns() {
    let dir = TempDir::new().unwrap();
    let json = dir.path().join("r.json");
    spinstat(&["verify-3d", "--out", json.to_str().unwrap()]);
    let table = spinstat(&[
        "render-table",
        "--report",
        json.to_str().unwrap(),
        "--columns",
        "lambda,s,equiv_plus",
    ]);
    let text = String::from_utf8(table.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("lambda,s,equiv_plus"));
    assert_eq!(lines.count(), 30);
}

#[test]
fn seed_changes_flow_states_not_verdicts() {
    let a = spinstat(&["flow-crosscheck", "--seed", "1"]);
    let b = spinstat(&["flow-crosscheck", "--seed", "2"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(b.status.code(), Some(0));
    assert_ne!(a.stdout, b.stdout);
}
