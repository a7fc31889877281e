use std::process::{Command, Output};

use dyck_tilings::identities::KNOWN_FALSE;
use serde_json::Value;

fn dyck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dyck"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = dyck(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    dyck(args).status.code().unwrap()
}

#[test]
fn enumerate_counts() {
    let count = |args: &[&str]| stdout(args).lines().count();
    assert_eq!(count(&["enumerate", "paths", "--n", "4"]), 14);
    assert_eq!(count(&["enumerate", "paths", "--n", "3", "--k", "2"]), 12);
    assert_eq!(count(&["enumerate", "stirling", "--n", "3", "--k", "2"]), 15);
    assert_eq!(count(&["enumerate", "tilings", "--lower", "UDUD", "--upper", "UUDD"]), 1);
    assert_eq!(count(&["enumerate", "involutive", "--n", "4"]), 10);
}

#[test]
fn enumerate_json_is_one_value_per_line() {
    for line in stdout(&["--json", "enumerate", "paths", "--n", "3"]).lines() {
        serde_json::from_str::<Value>(line).unwrap();
    }
}

#[test]
fn verify_single_identities() {
    let out = stdout(&["verify", "kw-lambda", "--n", "3"]);
    assert!(out.lines().all(|l| l.starts_with("PASS kw-lambda")));
    assert_eq!(code(&["verify", "zigzag", "--comp", "2,1", "--k", "2"]), 0);
    assert_eq!(code(&["verify", "bruhat", "--max-n", "4"]), 0);
}

#[test]
fn verify_list_names_every_identity() {
    let out = stdout(&["verify", "list"]);
    for id in ["kw-lambda", "bruhat", "sym-grand", "sym-phi"] {
        assert!(out.contains(id), "{id}");
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&["verify", "no-such-identity"]), 2);
    assert_eq!(code(&["enumerate", "paths", "--bogus"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["biject", "alpha", "12x"]), 2);
}

#[test]
fn counterexamples_exit_one() {
    let out = dyck(&["verify", "sym-phi", "--n", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("counterexample"));
    // A precondition failure: 132 is not 132-avoiding.
    assert_eq!(code(&["biject", "alpha", "132"]), 1);
}

#[test]
fn verify_all_fails_only_on_known_false_identities() {
    let out = dyck(&["--json", "verify", "all", "--max-n", "3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let cases: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let mut seen = std::collections::BTreeSet::new();
    for c in &cases {
        for key in ["identity", "params", "lhs", "rhs", "pass"] {
            assert!(c.get(key).is_some(), "{c}");
        }
        let id = c["identity"].as_str().unwrap();
        seen.insert(id.to_string());
        if !c["pass"].as_bool().unwrap() {
            assert!(KNOWN_FALSE.contains(&id), "unexpected failure {c}");
        }
    }
    assert_eq!(seen.len(), dyck_tilings::identities::registry().len());
    let failed = cases.iter().any(|c| !c["pass"].as_bool().unwrap());
    assert_eq!(out.status.code(), Some(if failed { 1 } else { 0 }));
}

#[test]
fn job_count_does_not_change_output() {
    let args = |j| vec!["--json", "--jobs", j, "verify", "all", "--max-n", "3"];
    assert_eq!(dyck(&args("1")).stdout, dyck(&args("4")).stdout);
}

#[test]
fn bijections() {
    assert!(stdout(&["biject", "alpha", "34215"]).starts_with("UUUDDUDUDD\n"));
    assert!(stdout(&["biject", "alpha-inv", "UUUDDUDUDD"]).starts_with("34215\n"));
    assert!(stdout(&["biject", "alpha-k", "33211244", "--k", "2"]).starts_with("UUDDUDUDDDDD\n"));
    assert!(stdout(&["biject", "ncp", "422243111334", "--k", "3"]).starts_with("{1,5,12}{2,3,4}{6,10,11}{7,8,9}"));
    let post = stdout(&["biject", "post", "((()())()(()))((()()())()):1,3,13,8,7,2,9,4,5,10,6,12,11"]);
    assert!(post.starts_with("13,8,3,7,9,2,1,10,6,12,5,11,4\n"));
    let hist = stdout(&["biject", "f-inv", "@tests/data/two_dyck_tiling.json", "--k", "2"]);
    assert!(hist.starts_with("UUUUUDDUUDDUDUDUDDDDDDDDDDDDDD:0,0,3,1,8,1,0,4,2,2\n"));
}

#[test]
fn history_to_tiling_round_trips_through_json() {
    let hist = "UUUUUDDUUDDUDUDUDDDDDDDDDDDDDD:0,0,3,1,8,1,0,4,2,2";
    let json = stdout(&["--json", "biject", "f", hist, "--k", "2"]);
    let tiling = serde_json::from_str::<Value>(json.lines().next().unwrap()).unwrap();
    assert_eq!(tiling["output"]["tiles"].as_array().unwrap().len(), 21);
}

#[test]
fn render_outputs() {
    let empty = stdout(&["render", "empty", "UDUD"]);
    assert_eq!(empty.matches(r#"class="tile""#).count(), 0);
    let points: Vec<&str> = empty
        .lines()
        .filter(|l| l.contains("<polyline"))
        .map(|l| l.split("points=\"").nth(1).unwrap().split('"').next().unwrap())
        .collect();
    assert_eq!(points.len(), 2);
    assert_eq!(points[0], points[1]);

    let drawn = stdout(&["render", "tiling", "@tests/data/dyck_tiling.json"]);
    assert_eq!(drawn.matches(r#"class="tile""#).count(), 15);

    let svg = stdout(&["render", "hasse", "--n", "3", "--k", "2"]);
    assert_eq!(svg.matches(r#"class="node""#).count(), 15);
    let dot = stdout(&["render", "hasse", "--n", "3", "--k", "2", "--format", "dot"]);
    assert_eq!(dot.matches("->").count(), 22);
}

#[test]
fn stats_of_fixture() {
    let out = stdout(&["stats", "@tests/data/dyck_tiling.json"]);
    assert_eq!(out.trim(), "area 43 tiles 15 art 29 art_k 29");
    let json: Value =
        serde_json::from_str(stdout(&["--json", "stats", "@tests/data/dyck_tiling.json"]).trim()).unwrap();
    assert_eq!(json["stats"]["tiles"], 15);
}
