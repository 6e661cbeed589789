use std::process::{Command, Output};

const PLANE_CREMONA: &str = "map
field: rational
source: x, y, z
target: a, b, c
forms: y*z, x*z, x*y";

fn cremona(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cremona")).args(args).output().expect("running cremona")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn inline_map_degree() {
    let o = cremona(&["map-degree", PLANE_CREMONA]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("degree: 1"), "{}", stdout(&o));
}

#[test]
fn json_report_parses() {
    let o = cremona(&["--format", "json", "proj-degrees", PLANE_CREMONA]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["prime"], 31991);
    assert_eq!(v["checks"][0]["computed"], "[1, 2, 1]");
}

#[test]
fn parse_error_names_the_token() {
    let o = cremona(&["dim-deg", "ideal\nfield: prime 101\nvariables: x, y\ngenerators: x + q"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("unknown variable `q`") && err.contains("column 17"), "{err}");
}

#[test]
fn step_budget_is_an_error() {
    let o = cremona(&["--budget-gb-steps", "1", "gb", "edge-variety"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget exceeded"));
}

#[test]
fn verify_lambda_points() {
    let o = cremona(&["verify", "lambda-points"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("lambda-points [PASS]"));
}

#[test]
fn list_subjects() {
    let o = cremona(&["verify", "--list"]);
    let out = stdout(&o);
    for s in ["cremona-p11", "edge-variety", "s3", "lifting"] {
        assert!(out.lines().any(|l| l == s), "{out}");
    }
}
