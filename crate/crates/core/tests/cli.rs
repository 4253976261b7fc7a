mod common;

use std::fs;

use common::{fixture, run_cli};
use medexplain::io::{graph_from_json, parse_map, GraphFile};

fn path(name: &str) -> String {
    fixture(name).to_str().unwrap().to_string()
}

#[test]
fn mdt_of_delta5_has_prime_root() {
    let (code, out, _) = run_cli(&["mdt", &path("delta5.json")]);
    assert_eq!(code, 0);
    let tree: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(tree["label"], "prime");
    assert_eq!(tree["children"].as_array().unwrap().len(), 3);
    assert_eq!(tree["children"][2]["label"], "green");
}

#[test]
fn mdt_of_ultrametric_matrix_is_prime_free() {
    let (code, out, _) = run_cli(&["mdt", &path("ultrametric.tsv"), "--format", "dot"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("graph mdt {"));
    assert!(!out.contains("prime"));
}

#[test]
fn missing_pair_exits_2() {
    let (code, out, err) = run_cli(&["mdt", &path("missing_pair.json")]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("missing label for pair (b, c)"), "{err}");
}

#[test]
fn unreadable_input_exits_2() {
    let (code, _, err) = run_cli(&["mdt", "/nonexistent/map.json"]);
    assert_eq!(code, 2);
    assert!(err.contains("cannot read"));
}

#[test]
fn asymmetric_matrix_names_the_cell() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.tsv");
    fs::write(&p, "\ta\tb\na\t\tred\nb\tblue\t\n").unwrap();
    let (code, _, err) = run_cli(&["mdt", p.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("(1, 2)") && err.contains("(2, 1)"), "{err}");
}

#[test]
fn explain_then_verify_round_trips_for_every_construction() {
    let dir = tempfile::tempdir().unwrap();
    for input in ["delta4.json", "delta5.json", "ultrametric.tsv", "one_label.json"] {
        for cons in ["pvr", "halfgrid", "hypercube"] {
            let out = dir.path().join(format!("{input}.{cons}.json"));
            let (code, stdout, err) = run_cli(&[
                "explain",
                &path(input),
                "--construction",
                cons,
                "--out",
                out.to_str().unwrap(),
            ]);
            assert_eq!(code, 0, "{input} {cons}: {err}");
            assert!(stdout.is_empty());
            assert!(err.starts_with("wrote "));
            let (code, report, err) = run_cli(&["verify", &path(input), out.to_str().unwrap()]);
            assert_eq!(code, 0, "{input} {cons}: {err}");
            let report: serde_json::Value = serde_json::from_str(&report).unwrap();
            assert_eq!(report["explains"], true);
            assert_eq!(report["median_graph"], true);
        }
    }
}

#[test]
fn explain_delta4_sizes() {
    let d = parse_map(&fs::read_to_string(fixture("delta4.json")).unwrap()).unwrap();
    for (cons, vertices) in [("halfgrid", 12), ("hypercube", 20)] {
        let (code, out, _) = run_cli(&["explain", &path("delta4.json"), "--construction", cons]);
        assert_eq!(code, 0);
        let file: GraphFile = serde_json::from_str(&out).unwrap();
        assert_eq!(file.vertices.len(), vertices);
        let g = graph_from_json(&out, &d).unwrap().graph;
        assert!(g.explains(&d).unwrap().explains());
    }
}

#[test]
fn explain_delta5_pvr_json_fields() {
    let (code, out, _) = run_cli(&["explain", &path("delta5.json")]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let vertices = v["vertices"].as_array().unwrap();
    assert_eq!(vertices.len(), 11);
    assert_eq!(v["edges"].as_array().unwrap().len(), 11);
    assert_eq!(vertices.iter().filter(|x| x["root"] == true).count(), 1);
    assert_eq!(vertices.iter().filter(|x| x.get("leaf").is_some()).count(), 5);
    let unlabeled_inner = vertices
        .iter()
        .filter(|x| x.get("leaf").is_none() && x.get("label").is_none())
        .count();
    assert_eq!(unlabeled_inner, 1);
}

#[test]
fn explain_formats() {
    let (_, dot, _) = run_cli(&["explain", &path("delta4.json"), "--format", "dot"]);
    assert!(dot.starts_with("graph G {"));
    let (_, gml, _) = run_cli(&["explain", &path("delta4.json"), "--format", "graphml"]);
    assert!(gml.starts_with("<?xml"));
    assert!(gml.contains("<graphml"));
}

#[test]
fn hypercube_cap_exits_3() {
    let (code, out, err) = run_cli(&[
        "explain",
        &path("delta5.json"),
        "--construction",
        "hypercube",
        "--cap-hypercube",
        "4",
    ]);
    assert_eq!(code, 3);
    assert!(out.is_empty());
    assert!(!err.is_empty());
}

#[test]
fn flipped_label_exits_1_with_pair_list() {
    let dir = tempfile::tempdir().unwrap();
    let (_, out, _) = run_cli(&["explain", &path("delta4.json"), "--construction", "halfgrid"]);
    let mut file: GraphFile = serde_json::from_str(&out).unwrap();
    let v = file
        .vertices
        .iter_mut()
        .find(|v| v.label.as_deref() == Some("green"))
        .unwrap();
    v.label = Some("red".into());
    let p = dir.path().join("flipped.json");
    fs::write(&p, serde_json::to_string(&file).unwrap()).unwrap();
    let (code, report, _) = run_cli(&["verify", &path("delta4.json"), p.to_str().unwrap()]);
    assert_eq!(code, 1);
    let report: serde_json::Value = serde_json::from_str(&report).unwrap();
    let mism = report["mismatches"].as_array().unwrap();
    assert_eq!(mism.len(), 1);
    assert_eq!(mism[0]["x"], "a");
    assert_eq!(mism[0]["y"], "d");
    assert_eq!(mism[0]["found"], "red");
    assert_eq!(mism[0]["expected"], "green");
}

#[test]
fn removed_label_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let (_, out, _) = run_cli(&["explain", &path("delta4.json"), "--construction", "hypercube"]);
    let mut file: GraphFile = serde_json::from_str(&out).unwrap();
    let v = file.vertices.iter_mut().find(|v| v.label.is_some()).unwrap();
    v.label = None;
    let p = dir.path().join("unlabeled.json");
    fs::write(&p, serde_json::to_string(&file).unwrap()).unwrap();
    let (code, report, _) = run_cli(&["verify", &path("delta4.json"), p.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(report.contains("unlabeled"));
}

#[test]
fn six_cycle_graph_exits_5_with_witness() {
    let (code, out, err) = run_cli(&["verify", &path("delta4.json"), &path("delta4_c6.json")]);
    assert_eq!(code, 5, "{err}");
    let report: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report["median_graph"], false);
    assert_eq!(report["witness"]["triple"].as_array().unwrap().len(), 3);
}

#[test]
fn check_reports_both_verdicts() {
    let (code, out, _) = run_cli(&["check", &path("delta5.json")]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "not symbolic ultrametric; U2 witness (a,b,c); MDT has 1 prime vertex\n"
    );
    let (code, out, _) = run_cli(&["check", &path("one_label.json")]);
    assert_eq!(code, 0);
    assert!(out.starts_with("symbolic ultrametric;"));
}

#[test]
fn check_sweep_agrees() {
    let (code, out, _) = run_cli(&["check", "--sweep", "n=7", "k=3", "count=500"]);
    assert_eq!(code, 0);
    assert_eq!(out, "sweep n=7 k=3 count=500 seed=0: 500 instances, 0 disagreements\n");
    let (code, out, _) = run_cli(&["check", "--sweep", "n=4,k=2"]);
    assert_eq!(code, 0);
    assert!(out.contains("exhaustive") && out.contains("64 instances"));
}

#[test]
fn check_sweep_respects_budget() {
    let (code, _, err) = run_cli(&["check", "--sweep", "n=5", "k=3", "--budget", "100"]);
    assert_eq!(code, 2);
    assert!(!err.is_empty());
}

#[test]
fn check_without_input_exits_2() {
    let (code, _, _) = run_cli(&["check"]);
    assert_eq!(code, 2);
}

#[test]
fn help_goes_to_stdout() {
    let (code, out, _) = run_cli(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("explain"));
}

#[test]
fn repeated_runs_are_identical() {
    let args: [&[&str]; 3] = [
        &["mdt", &path("delta5.json")],
        &["explain", &path("delta5.json"), "--format", "graphml"],
        &["check", "--sweep", "n=6", "k=4", "count=40", "--seed", "9"],
    ];
    for a in args {
        assert_eq!(run_cli(a), run_cli(a));
    }
}
