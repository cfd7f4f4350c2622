use std::process::{Command, Output};

use serde_json::Value;

fn unitri(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unitri"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

const D8: &str = "(4,1),(7,2),(8,3),(5,4)";
const D7: &str = "(4,1),(5,2),(6,3),(7,5)";

#[test]
fn diagram_of_first_example() {
    let out = unitri(&["diagram", "--n", "8", "--d", D8]);
    assert!(out.status.success());
    let expected = "\n+\n+ +\nx - -\n* + + x\n* + + * *\n* x - + - -\n* * x x - - -\nC(D) = (4,1) (7,2) (8,3) (8,4) (5,4)\n";
    assert_eq!(stdout(&out), expected);
    assert!(out.stderr.is_empty());
}

#[test]
fn wd_is_homogeneous() {
    let out = unitri(&["wd", "--n", "4", "--d", "(3,1), (4,2)"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("3 4 2 1\n"));
    assert!(text.contains("homogeneous=true"));
    let j = json(&unitri(&[
        "wd",
        "--n",
        "4",
        "--d",
        "(3,1),(4,2)",
        "--format",
        "json",
    ]));
    assert_eq!(j["w"], serde_json::json!([3, 4, 2, 1]));
    assert_eq!(j["homogeneous"], true);
}

#[test]
fn factor_reproduces_wd() {
    let j = json(&unitri(&[
        "factor", "--n", "8", "--d", D8, "--format", "json",
    ]));
    assert_eq!(j["equal"], true);
    assert_eq!(j["reflections"].as_array().unwrap().len(), 5);
    assert_eq!(j["product"], j["w"]);
}

#[test]
fn enumerate_three() {
    let out = unitri(&["enumerate", "--n", "3"]);
    let text = stdout(&out);
    assert!(text.contains("basic subsets: 5\n"));
    assert!(text.contains("homogeneous elements: 5\n"));
    let j = json(&unitri(&["enumerate", "--n", "4", "--format", "json"]));
    assert_eq!(j["basic_subsets"], 15);
    assert_eq!(j["homogeneous_elements"], 15);
}

#[test]
fn invariants_of_second_example() {
    let j = json(&unitri(&[
        "invariants",
        "--n",
        "7",
        "--d",
        D7,
        "--format",
        "json",
    ]));
    assert_eq!(j["generators"]["(6,4)"], "x[6,4]*x[4,1] + x[6,3]*x[3,1]");
    assert_eq!(j["generators"].as_object().unwrap().len(), 6);
}

#[test]
fn relations_with_phi() {
    let out = unitri(&[
        "relations",
        "--n",
        "4",
        "--d",
        "(3,1),(4,2)",
        "--phi",
        "(3,1)=2,(4,2)=-1/2",
        "--format",
        "json",
    ]);
    let j = json(&out);
    assert_eq!(j["vanishing"]["(4,1)"], "x[4,1]");
    assert_eq!(j["variety"]["(4,2)"], "-1/2");
}

#[test]
fn verify_passes_on_examples() {
    for d in [D8, D7] {
        let n = if d == D8 { "8" } else { "7" };
        let out = unitri(&[
            "verify", "--n", n, "--d", d, "--trials", "5", "--format", "json",
        ]);
        assert_eq!(out.status.code(), Some(0));
        let j = json(&out);
        assert_eq!(j["passed"], true);
        assert_eq!(j["invariance"]["failures"], serde_json::json!([]));
        assert_eq!(j["jacobian_rank"], j["ranks"]["expected"]);
    }
    let out = unitri(&[
        "verify",
        "--n",
        "4",
        "--d",
        "(3,1),(4,2)",
        "--phi",
        "(3,1)=1,(4,2)=3",
    ]);
    assert!(stdout(&out).contains("invariance: pass"));
}

#[test]
fn invalid_input_exits_with_two() {
    let cases: [&[&str]; 5] = [
        &["wd", "--n", "4", "--d", "(3,1),(4,1)"],
        &["diagram", "--n", "3", "--d", "(4,1)"],
        &["invariants", "--n", "4", "--d", "(1,2)"],
        &["verify", "--n", "4", "--d", "(3,1)", "--phi", "(4,2)=1"],
        &["relations", "--n", "4", "--d", "(3,1)", "--phi", "(3,1)=0"],
    ];
    for args in cases {
        let out = unitri(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
    assert_eq!(unitri(&["wd", "--d", "(2,1)"]).status.code(), Some(2));
    assert_eq!(unitri(&["frobnicate"]).status.code(), Some(2));
}

/// Feeding the emitted `D` back through `--d-json` reproduces the output.
#[test]
fn json_round_trip() {
    for verb in [
        "diagram",
        "wd",
        "factor",
        "invariants",
        "relations",
        "verify",
    ] {
        let extra: &[&str] = if verb == "verify" {
            &["--seed", "3", "--trials", "2"]
        } else {
            &[]
        };
        let mut args = vec![verb, "--n", "8", "--d", D8, "--format", "json"];
        args.extend(extra);
        let first = unitri(&args);
        assert!(first.status.success(), "{verb}");

        let d = json(&first)["D"].to_string();
        let mut args = vec![verb, "--d-json", &d, "--format", "json"];
        args.extend(extra);
        assert_eq!(stdout(&first), stdout(&unitri(&args)), "{verb}");
    }
}
