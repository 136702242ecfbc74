use std::process::Command;

use gridbasis_cli::{run, Outcome, EXIT_MALFORMED, EXIT_NEGATIVE, EXIT_OK, EXIT_REFUSED};
use serde_json::Value;

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn cli(args: &[&str]) -> Outcome {
    cli_stdin(args, "")
}

fn cli_stdin(args: &[&str], input: &str) -> Outcome {
    let argv = std::iter::once("gridbasis").chain(args.iter().copied());
    run(argv, &mut input.as_bytes())
}

fn out_json(o: &Outcome) -> Value {
    serde_json::from_str(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", o.stdout))
}

fn ints(v: &Value) -> Vec<i64> {
    v.as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect()
}

#[test]
fn independent_four_is_basic() {
    let o = cli(&["check", &data("independent_four.json")]);
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(out_json(&o)["basic"], true);
    let t = cli(&["check", &data("independent_four.json"), "--format", "text"]);
    assert!(t.stdout.starts_with("basic\n"));
}

#[test]
fn five_point_kernel() {
    let o = cli(&["kernel", &data("five_point.json")]);
    assert_eq!(o.code, EXIT_OK);
    let j = out_json(&o);
    assert_eq!(j["dimension"], 1);
    assert_eq!(ints(&j["basis"][0]["values"]), vec![2, -1, -1, -1, 1]);
    let c = cli(&["check", &data("five_point.json")]);
    assert_eq!(c.code, EXIT_NEGATIVE);
}

#[test]
fn padded_circuit_is_not_minimal() {
    let o = cli(&["minimal", &data("padded_circuit.json")]);
    let j = out_json(&o);
    assert_eq!(j["minimal"], false);
    assert_eq!(j["basic"], false);
    assert_eq!(j["zero_points"], serde_json::json!([[1, 1, 2]]));
}

#[test]
fn empty_set_is_basic() {
    let o = cli(&["check", r#"{"d":3,"n":2,"points":[]}"#]);
    assert_eq!(o.code, EXIT_OK);
}

#[test]
fn stdin_input() {
    let text = std::fs::read_to_string(data("five_point.json")).unwrap();
    let o = cli_stdin(&["check", "-"], &text);
    assert_eq!(o.code, EXIT_NEGATIVE);
}

#[test]
fn malformed_input_exits_two_with_a_field() {
    let o = cli(&["check", r#"{"d":3,"n":2,"points":[[1,1]]}"#]);
    assert_eq!(o.code, EXIT_MALFORMED);
    assert!(o.stderr.contains("points[0]"), "{}", o.stderr);
    let o = cli(&["check", "{\"d\":3,\n\"n\":2,\n\"points\":[[1,1,1],]}"]);
    assert_eq!(o.code, EXIT_MALFORMED);
    assert!(o.stderr.contains("line 3"), "{}", o.stderr);
    assert_eq!(cli(&["check", "--bogus", &data("independent_four.json")]).code, EXIT_MALFORMED);
    assert_eq!(cli(&["check", "/no/such/file.json"]).code, EXIT_MALFORMED);
    assert_eq!(cli(&["frobnicate"]).code, EXIT_MALFORMED);
}

#[test]
fn decompose_both_outcomes() {
    let o = cli(&["decompose", &data("plane_function.json"), "--verify"]);
    assert_eq!(o.code, EXIT_NEGATIVE);
    let j = out_json(&o);
    assert_eq!(j["decomposable"], false);
    assert_eq!(j["verified"], true);
    let o = cli(&["decompose", r#"{"d":2,"n":2,"points":[[1,1],[1,2],[2,1]],"values":["1/3",2,-5]}"#, "--verify"]);
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(out_json(&o)["verified"], true);
}

#[test]
fn rectangles_for_the_five_point_function() {
    let o = cli(&["rectangles", &data("five_point.json"), "--unit", "--verify"]);
    assert_eq!(o.code, EXIT_OK);
    let j = out_json(&o);
    assert_eq!(j["terms"].as_array().unwrap().len(), 3);
    assert_eq!(j["simple"].as_array().unwrap().len(), 3);
    assert_eq!(j["verified"], true);
    let bad = cli(&["rectangles", &data("plane_function.json")]);
    assert_eq!(bad.code, EXIT_MALFORMED);
}

#[test]
fn graphs_and_hypergraphs() {
    let o = cli(&["graph", &data("triangle.json"), "--solve", "--verify"]);
    assert_eq!(o.code, EXIT_OK);
    let j = out_json(&o);
    assert_eq!(j["edge_weights"], serde_json::json!(["0", "1", "2"]));
    assert_eq!(j["verified"], true);
    assert_eq!(cli(&["graph", &data("k4.json")]).code, EXIT_OK);
    let square = r#"{"vertices":4,"edges":[[1,2],[2,3],[3,4],[4,1]],"weights":[1,1,1,2]}"#;
    let o = cli(&["graph", square, "--verify"]);
    assert_eq!(o.code, EXIT_NEGATIVE);
    assert_eq!(ints(&out_json(&o)["dependence"]), vec![1, -1, 1, -1]);
    assert_eq!(cli(&["graph", square, "--solve"]).code, EXIT_NEGATIVE);
    let o = cli(&["graph", &data("independent_four.json")]);
    assert_eq!(out_json(&o)["graph"]["edges"].as_array().unwrap().len(), 6);
    let o = cli(&["hypergraph", &data("five_point.json"), "--verify"]);
    assert_eq!(o.code, EXIT_NEGATIVE);
    assert_eq!(ints(&out_json(&o)["dependence"]), vec![2, -1, -1, -1, 1]);
    assert_eq!(cli(&["graph", &data("five_point.json")]).code, EXIT_MALFORMED);
}

#[test]
fn constructions_verify() {
    for args in [
        vec!["construct", "cross", "--n", "4", "--d", "3"],
        vec!["construct", "staircase", "--n", "4", "--d", "3"],
        vec!["construct", "unbounded", "--m", "2"],
        vec!["construct", "cross-plus-point", "--n", "3", "--x", "2,3,2"],
    ] {
        let mut a = args.clone();
        a.push("--verify");
        let o = cli(&a);
        assert_eq!(o.code, EXIT_OK, "{args:?}: {}", o.stderr);
        assert_eq!(out_json(&o)["verified"], true);
    }
    let o = cli(&["construct", "cross", "--n", "4", "--d", "3"]);
    assert_eq!(out_json(&o)["set"]["points"].as_array().unwrap().len(), 10);
    assert_eq!(cli(&["construct", "cross-plus-point", "--n", "3", "--x", "1,3,2"]).code, EXIT_MALFORMED);
    assert_eq!(cli(&["construct", "staircase", "--n", "3"]).code, EXIT_MALFORMED);
}

#[test]
fn search_modes() {
    let o = cli(&["search", "--n", "2", "--d", "3", "--verify"]);
    assert_eq!(o.code, EXIT_OK);
    let j = out_json(&o);
    assert_eq!(j["mode"], "exhaustive");
    assert_eq!(j["verified"], true);
    let o = cli(&["search", "--n", "4", "--d", "3", "--size", "8"]);
    assert_eq!(o.code, EXIT_REFUSED);
    assert!(o.stderr.contains("--random"));
    let one = cli(&["search", "--n", "4", "--d", "3", "--size", "10", "--random", "--seed", "5", "--budget", "200", "--jobs", "1"]);
    let many = cli(&["search", "--n", "4", "--d", "3", "--size", "10", "--random", "--seed", "5", "--budget", "200", "--jobs", "4"]);
    assert_eq!(one, many);
    assert_eq!(cli(&["search", "--n", "2", "--d", "3", "--jobs", "0"]).code, EXIT_MALFORMED);
}

#[test]
fn conjecture_outcomes() {
    let stair = cli(&["construct", "staircase", "--n", "4", "--d", "3"]);
    let set = out_json(&stair)["set"].to_string();
    let o = cli(&["conjecture", &set, "--verify"]);
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(out_json(&o)["holds"], true);
    let counter = r#"{"d":3,"n":3,"points":[[1,1,1],[1,1,2],[1,2,3],[2,1,3],[2,2,1],[3,3,2],[3,3,3]]}"#;
    let o = cli(&["conjecture", counter]);
    assert_eq!(o.code, EXIT_NEGATIVE);
    assert_eq!((out_json(&o)["sum_abs"].as_i64(), out_json(&o)["rhs"].as_i64()), (Some(10), Some(8)));
    let unbounded = out_json(&cli(&["construct", "unbounded", "--m", "2"]))["set"].to_string();
    let o = cli(&["conjecture", &unbounded]);
    assert_eq!(o.code, EXIT_MALFORMED);
    assert!(o.stderr.contains("layer"), "{}", o.stderr);
}

#[test]
fn reachability_small() {
    let o = cli(&["reachability", "--n", "2", "--d", "3", "--verify"]);
    assert_eq!(o.code, EXIT_OK);
    let j = out_json(&o);
    assert_eq!(ints(&j["realized"]), vec![4, 5]);
    assert_eq!(j["verified"], true);
}

#[test]
fn binary_is_deterministic() {
    let bin = env!("CARGO_BIN_EXE_gridbasis");
    let go = || Command::new(bin).args(["kernel", &data("five_point.json")]).output().unwrap();
    let (a, b) = (go(), go());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let help = Command::new(bin).arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(0));
}
