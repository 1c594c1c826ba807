use std::io::Write;
use std::process::{Command, Output, Stdio};

use equilab_core::report::validate_report;
use equilab_core::{parse_edge_list, Graph};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_equilab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_equilab"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json_of(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("JSON output")
}

fn gallery(desc: &str) -> Graph {
    let o = run(&["gallery", desc]);
    assert!(o.status.success());
    parse_edge_list(std::str::from_utf8(&o.stdout).unwrap()).unwrap()
}

#[test]
fn analyze_k43_not_equistarable() {
    let o = run(&["analyze", "gallery:complete_bipartite(4,3)"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json_of(&o);
    assert_eq!(r["schema"], 1);
    assert_eq!(r["properties"]["equistarable"]["value"], "no");
    assert_eq!(
        r["properties"]["equistarable"]["witness"]["type"],
        "infeasible_unit_system"
    );
    assert_eq!(r["properties"]["p5_constrained"]["value"], "yes");
}

#[test]
fn analyze_c4_weighting_validates() {
    let o = run(&["analyze", "gallery:cycle(4)", "--with-co-line", "--strong"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json_of(&o);
    assert_eq!(r["properties"]["equistarable"]["value"], "yes");
    assert_eq!(r["properties"]["equistarable"]["witness"]["type"], "weighting");
    assert_eq!(validate_report(&gallery("cycle(4)"), &r).unwrap(), 7);
}

#[test]
fn analyze_petersen_strong() {
    let o = run(&["analyze", "gallery:petersen", "--strong"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json_of(&o);
    let w = &r["properties"]["equistarable"]["witness"];
    assert_eq!(w["type"], "forced_value");
    assert_eq!(w["value"], serde_json::json!({"num": 1, "den": 1}));
    assert_eq!(w["target"].as_array().unwrap().len(), 3);
    assert!(validate_report(&gallery("petersen"), &r).unwrap() >= 3);
}

#[test]
fn analyze_text_and_stdin() {
    let o = run_stdin(&["analyze", "-", "--text"], "a b\nb c\nc d\nd e\n");
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("p5_constrained: no"));
    assert!(text.contains("equistarable: no"));
}

#[test]
fn reports_are_byte_identical() {
    let a = run(&["analyze", "gallery:cycle(8)", "--seed", "7"]);
    let b = run(&["analyze", "gallery:cycle(8)", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn budget_exhaustion_exits_3() {
    let o = run(&["analyze", "gallery:petersen", "--strong", "--strong-limit", "10"]);
    assert_eq!(o.status.code(), Some(3));
    let r = json_of(&o);
    assert_eq!(r["properties"]["strongly_equistarable"]["value"], "unknown");
    assert_eq!(r["properties"]["strongly_equistarable"]["budget"], 10);
    let o = run(&["analyze", "gallery:cycle(6)", "--with-co-line", "--budget", "3"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(run(&["analyze", "/nonexistent/graph.txt"]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "gallery:nosuch(3)"]).status.code(), Some(2));
    assert_eq!(run_stdin(&["analyze", "-"], "1 1\n").status.code(), Some(2));
    assert_eq!(run_stdin(&["analyze", "-"], "v 9\n1 2\n").status.code(), Some(2));
    assert_eq!(
        run(&["certify", "gallery:cycle(6)", "--target", "1-9"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["crosscheck", "--max-n", "12"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn certify_examples() {
    let o = run(&["certify", "gallery:cycle(6)", "--target", "1-2,4-5"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json_of(&o);
    assert_eq!(r["result"], "forced");
    assert_eq!(r["certificate"]["value"], serde_json::json!({"num": 1, "den": 1}));

    let o = run(&["certify", "gallery:kmn_plus(2,3)", "--target", "b1-l1,b2-l2,b3-l3"]);
    let r = json_of(&o);
    assert_eq!(r["result"], "forced");
    assert_eq!(r["certificate"]["value"], serde_json::json!({"num": 1, "den": 1}));

    let o = run(&["certify", "gallery:cycle(4)", "--target", "1-2,3-4"]);
    let r = json_of(&o);
    assert_eq!(r["result"], "not_forced");
    assert_eq!(r["certificate"]["type"], "not_forced");

    let o = run(&["certify", "gallery:complete_bipartite(4,3)", "--target", "a1-b1"]);
    assert_eq!(json_of(&o)["result"], "infeasible_system");
}

#[test]
fn certify_round_trips_through_core() {
    use equilab_core::exact::{star_system, SystemWitness};
    let g = gallery("cycle(6)");
    let s = star_system(&g).unwrap();
    let r = json_of(&run(&["certify", "gallery:cycle(6)", "--target", "2-1,5-4"]));
    let w = SystemWitness::from_json(&s, &r["certificate"]).unwrap();
    assert!(w.verify(&s));
}

#[test]
fn gallery_outputs() {
    let o = run(&["gallery", "cycle(5)"]);
    assert_eq!(String::from_utf8(o.stdout).unwrap().lines().count(), 5);
    let o = run(&["gallery", "kmn_plus(2,3)"]);
    assert_eq!(String::from_utf8(o.stdout).unwrap().lines().count(), 9);
    let h = gallery("graph_H");
    assert_eq!((h.n(), h.m()), (9, 14));
    assert!(h.is_triangle_free());

    let dir = std::env::temp_dir().join(format!("equilab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("c7.txt");
    let o = run(&["gallery", "cycle(7)", "-o", path.to_str().unwrap()]);
    assert!(o.status.success() && o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(parse_edge_list(&text).unwrap().to_edge_list(), text);
    std::fs::remove_dir_all(&dir).unwrap();
    assert_eq!(run(&["gallery", "cycle(x)"]).status.code(), Some(2));
}

#[test]
fn crosscheck_small() {
    let o = run(&["crosscheck", "--max-n", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json_of(&o);
    assert_eq!(r["violations"].as_array().unwrap().len(), 0);
    assert_eq!(r["graphs"], 30);
    for row in r["rows"].as_array().unwrap() {
        assert_eq!(row["disagree"], 0);
    }

    let r = json_of(&run(&["crosscheck", "--max-n", "2"]));
    assert_eq!(r["graphs"], 1);
    assert_eq!(r["violations"].as_array().unwrap().len(), 0);
}

#[test]
fn crosscheck_samples_are_seeded() {
    let a = run(&["crosscheck", "--max-n", "3", "--samples", "4", "--seed", "11"]);
    let b = run(&["crosscheck", "--max-n", "3", "--samples", "4", "--seed", "11"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json_of(&a)["graphs"], 6);
}

#[test]
fn crosscheck_gallery_set() {
    let inputs = [
        "gallery:graph_H",
        "gallery:cycle(4)",
        "gallery:cycle(6)",
        "gallery:path(5)",
        "gallery:complete_bipartite(3,3)",
        "gallery:complete_bipartite(4,3)",
        "gallery:kmn_plus(2,3)",
    ];
    let mut args = vec!["crosscheck"];
    args.extend(inputs);
    let o = run(&args);
    assert_eq!(o.status.code(), Some(0));
    let r = json_of(&o);
    assert_eq!(r["graphs"], 7);
    assert_eq!(r["violations"].as_array().unwrap().len(), 0);
    // C4 and K33 are yes throughout, H on rows 3 and 4, K43 and the
    // leaf-extended K23 on row 4 only
    let yes: Vec<u64> = r["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x["yes_yes"].as_u64().unwrap())
        .collect();
    assert_eq!(yes, [2, 2, 3, 5]);
}
