use std::path::PathBuf;
use std::process::{Command, Output};

use invk::parser::{default_labels, parse_expr};
use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .display()
        .to_string()
}

fn invk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_invk"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn validate_exit_codes() {
    let ok = invk(&["validate", &data("sl2.json")]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json(&ok)["verdict"], "pass");

    let bad = invk(&["validate", &data("bad-antisym.json")]);
    assert_eq!(bad.status.code(), Some(2));
    let report = json(&bad);
    assert_eq!(report["verdict"], "fail");
    assert!(report["witnesses"][0].as_str().unwrap().starts_with("antisymmetry (1, 2)"));

    let missing = invk(&["validate", &data("missing.json")]);
    assert_eq!(missing.status.code(), Some(1));
    assert!(stderr(&missing).contains("cannot read"));
}

#[test]
fn pbw_anchor_counts() {
    let out = invk(&["pbw", &data("abelian2.json"), "--variant", "6th", "--k", "1", "--degree", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["counts"]["basis_count"], 24);
    assert_eq!(r["counts"]["normal_count"], 21);
    assert_eq!(r["counts"]["span_rank"], 3);
    assert_eq!(r["anchor"], "Extended 6th P-B-W theorem");

    let out = invk(&["pbw", &data("leibniz-trivial1.json"), "--variant", "4th", "--k", "1", "--degree", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!((r["counts"]["basis_count"].as_u64(), r["counts"]["normal_count"].as_u64()), (Some(9), Some(8)));
}

#[test]
fn zero_k_is_a_usage_error() {
    let out = invk(&["pbw", &data("sl2.json"), "--variant", "6th", "--k", "0", "--degree", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("must be non-zero"));
    assert!(out.stdout.is_empty());

    let out = invk(&["hopf", &data("abelian1.json"), "--k", "0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn pbw_defect_is_reported_with_a_parseable_witness() {
    let out = invk(&["pbw", &data("leibniz2.json"), "--k", "2", "--degree", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let r = json(&out);
    assert_eq!(r["verdict"], "fail");
    let witness = r["witnesses"][0].as_str().unwrap();
    assert!(!parse_expr(witness, &default_labels(2)).unwrap().is_zero());
}

#[test]
fn normal_forms() {
    let base = ["nf", &data("abelian2.json"), "--variant", "6th", "--k", "1", "--degree", "3"];
    let run = |expr: &str| {
        let mut args = base.to_vec();
        args.extend(["--expr", expr]);
        invk(&args)
    };
    let out = run("q*q");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["results"]["normal_form"], "q");

    let out = run("x2*x1");
    let nf = json(&out)["results"]["normal_form"].as_str().unwrap().to_string();
    let again = run(&nf);
    assert_eq!(json(&again)["results"]["normal_form"], nf.as_str());

    let out = run("x1*x1*x1*x1*x1");
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("degree cap"));

    let out = run("x1 +");
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn hopf_verdicts() {
    let out = invk(&["hopf", &data("abelian2.json"), "--variant", "6th", "--k", "2", "--degree", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["verdict"], "pass");

    let out = invk(&["hopf", &data("leibniz-trivial1.json"), "--variant", "4th1", "--k", "1", "--degree", "3"]);
    assert_eq!(json(&out)["verdict"], "pass");

    let out = invk(&["hopf", &data("leibniz-trivial1.json"), "--variant", "4th1", "--k", "2", "--degree", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["verdict"], "exploratory");

    let out = invk(&["hopf", &data("leibniz2.json"), "--variant", "4th2", "--k", "2", "--degree", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = invk(&[
        "hopf",
        &data("leibniz2.json"),
        "--variant",
        "4th2",
        "--k",
        "2",
        "--degree",
        "3",
        "--uncertified",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["results"]["basis"], "standard monomials (uncertified)");

    let out = invk(&["hopf", &data("abelian1.json"), "--k", "-1/2", "--s-source", "solver"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn rep_files() {
    let out = invk(&["rep", &data("rep-abelian1-heis.json")]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["counts"]["regular_dim_ann"], 2);

    let out = invk(&["rep", &data("rep-bad-q.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(json(&out)["checks"][0]["detail"].as_str().unwrap().contains("is not in W"));

    let out = invk(&["rep", &data("abelian1.json")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("no matrices section"));
}

#[test]
fn reports_are_deterministic() {
    let args = ["hopf", &data("nonabelian2.json"), "--k", "1/2", "--degree", "3"];
    let a = invk(&args);
    let b = invk(&args);
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn bad_arguments_exit_with_one() {
    assert_eq!(invk(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(invk(&["pbw", &data("sl2.json"), "--variant", "5th"]).status.code(), Some(1));
    assert_eq!(invk(&["--help"]).status.code(), Some(0));
}
