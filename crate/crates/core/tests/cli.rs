use std::path::PathBuf;

use potgraph::cli::{run_with, EXIT_BREACH, EXIT_INPUT, EXIT_OK, EXIT_UNCERTIFIED};
use potgraph::sigma::{records_from_csv, SigmaRecord, SigmaValue};
use potgraph::{PatternGraph, SimpleGraph};

fn run(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut argv = vec!["potgraph"];
    argv.extend_from_slice(args);
    let code = run_with(argv, &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("potgraph-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn check_reports_graphicality_and_sum() {
    let (code, out) = run(&["check", "2,2,2", "3,3,1,1", "8 8 8 3 3 3 3 3 3"]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "(2,2,2) graphical σ=6");
    assert_eq!(lines[1], "(3,3,1,1) not graphical σ=8");
    assert_eq!(lines[2], "(8,8,8,3,3,3,3,3,3) graphical σ=42");
}

#[test]
fn check_reads_files_and_emits_json() {
    let path = scratch("seqs.txt", "# two sequences\n2,2,2\n\n1 1\n");
    let (code, out) = run(&["check", "--file", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
    assert_eq!(v[1]["sequence"], serde_json::json!([1, 1]));
    assert_eq!(v[1]["graphical"], true);
}

#[test]
fn malformed_input_exits_with_input_code() {
    assert_eq!(run(&["check", "2,x,2"]).0, EXIT_INPUT);
    assert_eq!(run(&["check", "-1,1"]).0, EXIT_INPUT);
    assert_eq!(run(&["sigma", "--n", "5"]).0, EXIT_INPUT);
    assert_eq!(run(&["sigma", "--cycle", "2", "--n", "5"]).0, EXIT_INPUT);
    assert_eq!(run(&["sigma", "--cycle", "5", "--matching", "2", "--n", "5"]).0, EXIT_INPUT);
    assert_eq!(run(&["potentially", "3,3,1,1", "--cycle", "3"]).0, EXIT_INPUT);
    assert_eq!(run(&["no-such-command"]).0, EXIT_INPUT);
}

#[test]
fn realize_prints_a_realization() {
    let (code, out) = run(&["realize", "3,3,2,2,2"]);
    assert_eq!(code, EXIT_OK);
    let g = SimpleGraph::parse_text(&out).unwrap();
    assert_eq!(g.degree_sequence().to_string(), "(3,3,2,2,2)");
}

#[test]
fn potentially_decisions() {
    assert_eq!(run(&["potentially", "8,8,8,3,3,3,3,3,3", "--cycle", "7"]), (EXIT_OK, "no\n".into()));
    assert_eq!(run(&["potentially", "4,1,1,1,1", "--matching", "2"]), (EXIT_OK, "no\n".into()));
    let (code, out) = run(&["potentially", "2,2,2,2,2,2", "--cycle", "6", "--witness", "-"]);
    assert_eq!(code, EXIT_OK);
    let (first, graph) = out.split_once('\n').unwrap();
    assert_eq!(first, "yes");
    let g = SimpleGraph::parse_text(graph).unwrap();
    assert!(potgraph::graph::contains_pattern(&g, PatternGraph::Cycle(6)));
}

#[test]
fn forcibly_decisions_and_witness_file() {
    assert_eq!(run(&["forcibly", "2,2,2", "--cycle", "3"]).1, "yes\n");
    let dir = std::env::temp_dir().join(format!("potgraph-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("avoid.txt");
    let (code, out) = run(&["forcibly", "2,2,2,2,2,2", "--cycle", "6", "--witness", path.to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (EXIT_OK, "no\n"));
    let g = SimpleGraph::parse_text(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert!(!potgraph::graph::contains_pattern(&g, PatternGraph::Cycle(6)));
}

#[test]
fn budget_limited_answers_exit_uncertified() {
    let (code, out) = run(&["potentially", "2,2,2,2,2,2", "--cycle", "6", "--max-states", "1"]);
    assert_eq!((code, out.as_str()), (EXIT_UNCERTIFIED, "unknown\n"));
    let (code, _) = run(&["sigma", "--cycle", "5", "--n", "7", "--max-states", "1"]);
    assert_eq!(code, EXIT_UNCERTIFIED);
}

#[test]
fn sigma_json_and_csv() {
    let (code, out) = run(&["sigma", "--cycle", "5", "--n", "6", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let r = SigmaRecord::from_json(&out).unwrap();
    assert_eq!(r.sigma, SigmaValue::Value(20));
    assert_eq!(r.unknown_count, 0);
    let (_, csv) = run(&["sigma", "--cycle", "5", "--n", "6", "--format", "csv", "--jobs", "3"]);
    assert_eq!(records_from_csv(&csv).unwrap(), vec![r]);
    let (code, out) = run(&["sigma", "--clique", "5", "--n", "4", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(SigmaRecord::from_json(&out).unwrap().sigma, SigmaValue::Impossible);
}

#[test]
fn sigma_writes_to_out_path() {
    let path = scratch("sigma.json", "");
    let (code, out) = run(&["sigma", "--matching", "2", "--n", "5", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (EXIT_OK, ""));
    let r = SigmaRecord::from_json(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(r.sigma, SigmaValue::Value(10));
}

#[test]
fn table_rows_match_formulas() {
    let (code, out) = run(&["table", "--cycle", "5", "--n-range", "5..7", "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows, ["C5,5,16,16,true,true,0", "C5,6,20,20,true,true,0", "C5,7,24,24,true,true,0"]);
    let (code, out) = run(&["table", "--cycle", "4", "--n-range", "4..6", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let got: Vec<u64> = v.as_array().unwrap().iter().map(|r| r["sigma_oracle"].as_u64().unwrap()).collect();
    assert_eq!(got, [10, 14, 16]);
    let (code, out) = run(&["table", "--cycle", "7", "--n", "9"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.lines().nth(1).unwrap().starts_with("C7\t9\t44\t44\ttrue\ttrue"));
}

#[test]
fn table_flags_uncertified_rows() {
    let (code, _) = run(&["table", "--cycle", "5", "--n-range", "6..7", "--max-states", "1"]);
    assert_eq!(code, EXIT_UNCERTIFIED);
    assert_eq!(run(&["table", "--cycle", "5", "--n-range", "7..5"]).0, EXIT_INPUT);
}

#[test]
fn table_mismatch_exit_code_is_reserved_for_valid_rows() {
    // 3K_2 at n = 7 disagrees with the two-edge formula, which is only
    // flagged valid for p = 2, so the row is informational.
    let (code, out) = run(&["table", "--matching", "2,3", "--n", "7", "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("3K2,7,24,26,false,,0"));
    assert_ne!(code, EXIT_BREACH);
}

const WORKED_K4: &str = "6\n0 1\n1 2\n2 3\n3 0\n4 0\n4 2\n4 5\n";

#[test]
fn extend_worked_instance() {
    let path = scratch("k4.txt", WORKED_K4);
    let (code, out) = run(&["extend", "--graph", path.to_str().unwrap(), "--cycle", "0,1,2,3", "--x", "4", "--w", "0"]);
    assert_eq!(code, EXIT_OK);
    let g = SimpleGraph::parse_text(&out).unwrap();
    let before = SimpleGraph::parse_text(WORKED_K4).unwrap();
    assert_eq!(g.degree_sequence(), before.degree_sequence());
    assert!(potgraph::graph::contains_pattern(&g, PatternGraph::Cycle(5)));
    assert!(out.contains("# cycle "));
}

#[test]
fn extend_rejects_unmet_hypotheses() {
    // Without the pendant edge d(x) = 2 < 3.
    let path = scratch("weak.txt", "6\n0 1\n1 2\n2 3\n3 0\n4 0\n4 2\n0 5\n");
    let (code, _) = run(&["extend", "--graph", path.to_str().unwrap(), "--cycle", "0,1,2,3", "--x", "4", "--w", "0"]);
    assert_eq!(code, EXIT_INPUT);
}

#[test]
fn extend_returns_existing_longer_cycle() {
    let path = scratch("has5.txt", "5\n0 1\n1 2\n2 3\n3 0\n4 0\n4 1\n4 2\n");
    let (code, out) = run(&["extend", "--graph", path.to_str().unwrap(), "--cycle", "0,1,2,3", "--x", "4", "--w", "0"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("# strategy AlreadyPresent"));
    assert_eq!(SimpleGraph::parse_text(&out).unwrap(), SimpleGraph::parse_text("5\n0 1\n1 2\n2 3\n3 0\n4 0\n4 1\n4 2\n").unwrap());
}

#[test]
fn lower_bound_command() {
    let (code, out) = run(&["lower-bound", "--kind", "odd", "--m", "2", "--n", "6", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["certified"], true);
    assert_eq!(v["containing"], 0);
    assert_eq!(run(&["lower-bound", "--kind", "even", "--m", "3", "--n", "7"]).0, EXIT_INPUT);
}

#[test]
fn hypotheses_command() {
    let (code, out) = run(&["hypotheses", "--m", "3", "--n", "8"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("violations=0"), "{out}");
    let (code, out) = run(&["hypotheses", "--m", "3", "--sequence", "8,8,8,4,4,3,3,3,3"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("holds"), "{out}");
    assert_eq!(run(&["hypotheses", "--m", "2", "--n", "8"]).0, EXIT_INPUT);
}
