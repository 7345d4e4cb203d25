use std::fs;
use std::process::{Command, Output};

use qsym_cli::document::{ConstructionDocument, ReportDocument, REPORT_SCHEMA};
use qsym_cli::format::{parse_edges, parse_graph6, write_edges, write_graph6};
use qsym_core::classifier::{Status, Target};
use qsym_core::constructors::{gallery, ConstructionTrace};
use qsym_core::Graph;
use serde_json::Value;

fn qsym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsym"))
        .args(args)
        .env_remove("QSYM_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn report(args: &[&str]) -> (Value, ReportDocument) {
    let o = qsym(args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let value: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let doc: ReportDocument = serde_json::from_value(value.clone()).unwrap();
    (value, doc)
}

fn validate(value: &Value) {
    let schema: Value = serde_json::from_str(REPORT_SCHEMA).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator.iter_errors(value).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:#?}");
}

#[test]
fn analyze_sc_reports_both_pairs() {
    let (value, doc) = report(&["analyze", "--gallery", "sc"]);
    validate(&value);
    assert!(doc.verify());
    assert_eq!(doc.verdict(Target::Bic).unwrap().status, Status::NonCommutative);
    assert_eq!(doc.verdict(Target::BicComplement).unwrap().status, Status::NonCommutative);
    assert!(doc.self_complementary_witness.is_some());
    assert_eq!(doc.graph.labels().unwrap()[0], "1");
}

#[test]
fn reports_validate_across_inputs() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["analyze", "--edges", "4;0 1;1 2;2 3;3 0"],
        vec!["analyze", "--gallery", "fig7", "--pattern"],
        vec!["analyze", "--gallery", "cherry", "--line-graph"],
        vec!["analyze", "--gallery", "k3_4"],
        vec!["analyze", "--gallery", "c4path3"],
        vec!["analyze", "--gallery", "e0"],
        vec!["product", "direct", "--gallery", "e4", "--gallery", "k2", "--analyze"],
        vec!["product", "corona", "--gallery", "k2", "--gallery", "e2", "--analyze"],
        vec!["construct", "free", "--gallery", "p3", "--gallery", "c5", "--analyze"],
        vec!["construct", "tensor", "--gallery", "c4", "--gallery", "p2", "--analyze"],
        vec!["construct", "wreath", "--gallery", "c3", "--gallery", "p2", "--analyze"],
    ];
    for args in cases {
        let (value, doc) = report(&args);
        validate(&value);
        assert!(doc.verify(), "{args:?}");
        let back: ReportDocument = serde_json::from_str(&serde_json::to_string(&doc).unwrap()).unwrap();
        assert_eq!(back, doc);
    }
}

#[test]
fn tampered_certificates_fail_verification() {
    let (mut value, _) = report(&["analyze", "--gallery", "sc"]);
    value["graph"]["edges"].as_array_mut().unwrap().truncate(10);
    let doc: ReportDocument = serde_json::from_value(value).unwrap();
    assert!(!doc.verify());
}

#[test]
fn schema_rejects_unknown_fields() {
    let (mut value, _) = report(&["analyze", "--gallery", "c5"]);
    value["extra"] = Value::Bool(true);
    let schema: Value = serde_json::from_str(REPORT_SCHEMA).unwrap();
    assert!(!jsonschema::is_valid(&schema, &value));
}

#[test]
fn budget_env_and_flag() {
    let with_env = |budget: &str, extra: &[&str]| {
        let mut args = vec!["analyze", "--gallery", "k6"];
        args.extend_from_slice(extra);
        Command::new(env!("CARGO_BIN_EXE_qsym"))
            .args(&args)
            .env("QSYM_BUDGET", budget)
            .output()
            .unwrap()
    };
    let starved = with_env("20", &[]);
    assert_eq!(starved.status.code(), Some(0));
    let doc: ReportDocument = serde_json::from_slice(&starved.stdout).unwrap();
    assert_eq!(doc.verdict(Target::Ban).unwrap().status, Status::Unknown);
    assert!(doc.notes.iter().any(|n| n.contains("budget")));

    let overridden = with_env("20", &["--budget", "10000000"]);
    let doc: ReportDocument = serde_json::from_slice(&overridden.stdout).unwrap();
    assert_eq!(doc.verdict(Target::Ban).unwrap().status, Status::NonCommutative);
    assert_eq!(doc.automorphism_group_order, Some(720));
}

#[test]
fn exit_codes() {
    assert_eq!(qsym(&["analyze", "--edges", "3;0 3"]).status.code(), Some(2));
    assert_eq!(qsym(&["analyze", "--edges", "3 2;0 1"]).status.code(), Some(2));
    assert_eq!(qsym(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(qsym(&["gallery", "nonesuch"]).status.code(), Some(3));
    assert_eq!(qsym(&["construct", "wreath", "--gallery", "k1", "--gallery", "k4"]).status.code(), Some(3));
    assert_eq!(qsym(&["product", "lex", "--gallery", "c4"]).status.code(), Some(2));
    assert_eq!(qsym(&["analyze", "/nonexistent/graph.txt"]).status.code(), Some(1));
    assert_eq!(qsym(&["analyze", "--gallery", "c5"]).status.code(), Some(0));
}

#[test]
fn budget_exhaustion_maps_to_four() {
    let e = qsym_cli::commands::CliError::Core(qsym_core::Error::SizeLimitExceeded { budget: 1 });
    assert_eq!(e.exit_code(), 4);
}

#[test]
fn gallery_output_formats() {
    let o = qsym(&["gallery", "c4"]);
    assert_eq!(stdout(&o), "4 4\n0 1\n0 3\n1 2\n2 3\n");
    let o = qsym(&["gallery", "c4", "--format", "graph6"]);
    assert_eq!(parse_graph6(&stdout(&o)).unwrap(), Graph::cycle(4));
    let o = qsym(&["gallery", "fig7", "--format", "dot"]);
    assert!(stdout(&o).starts_with("graph G {"));
    let o = qsym(&["gallery", "--list"]);
    assert!(stdout(&o).contains("fig7"));
}

#[test]
fn file_inputs_in_both_formats() {
    let dir = tempfile::tempdir().unwrap();
    let g = gallery("sc").unwrap();
    let g6 = dir.path().join("sc.g6");
    let el = dir.path().join("sc.txt");
    fs::write(&g6, write_graph6(&g)).unwrap();
    fs::write(&el, write_edges(&g)).unwrap();
    for path in [&g6, &el] {
        let (value, doc) = report(&["analyze", path.to_str().unwrap()]);
        validate(&value);
        assert_eq!(doc.graph, g);
        assert!(doc.verify());
    }
}

#[test]
fn products_match_the_library() {
    let o = qsym(&["product", "corona", "--gallery", "c3", "--gallery", "p2"]);
    let g = parse_edges(&stdout(&o)).unwrap();
    assert_eq!((g.n(), g.edge_count()), (12, 18));
    let o = qsym(&["product", "cartesian", "--gallery", "k2", "--gallery", "k2"]);
    let g = parse_edges(&stdout(&o)).unwrap();
    assert!(qsym_core::iso::are_isomorphic(&g, &Graph::cycle(4)).is_some());
    assert_eq!(g, qsym_core::products::cartesian(&Graph::complete(2), &Graph::complete(2)));
}

#[test]
fn construction_trace_replays() {
    let dir = tempfile::tempdir().unwrap();
    let trace_path = dir.path().join("trace.json");
    let out_path = dir.path().join("free.g6");
    let o = qsym(&[
        "construct",
        "free",
        "--gallery",
        "p3",
        "--gallery",
        "c5",
        "--gallery",
        "k1",
        "--format",
        "graph6",
        "--trace",
        trace_path.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let built = parse_graph6(&fs::read_to_string(&out_path).unwrap()).unwrap();
    let trace: ConstructionTrace = serde_json::from_str(&fs::read_to_string(&trace_path).unwrap()).unwrap();
    let inputs = [Graph::path(3), Graph::cycle(5), Graph::complete(1)];
    assert_eq!(trace.replay_single(&inputs).unwrap(), built);
    assert!(!trace.notes.is_empty());

    let o = qsym(&["construct", "tensor", "--gallery", "c4", "--gallery", "p2", "--json"]);
    let doc: ConstructionDocument = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc.trace.replay_single(&[Graph::cycle(4), Graph::path(2)]).unwrap(), doc.graph);
}

#[test]
fn census_writes_csv_and_json() {
    let o = qsym(&["census", "forests", "--n-max", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("n,trees,forests,disjoint_pair,edge_free_pair,two_cherries,graphs,violations"));
    assert_eq!(text.lines().count(), 7);
    let o = qsym(&["census", "oracle", "--count", "20", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["violations"].as_array().unwrap().is_empty());
}

#[test]
fn pattern_command_prints_blocks() {
    let o = qsym(&["pattern", "--gallery", "fig7", "--provenance"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("[2, 1, 1, 1, 1]"));
}
