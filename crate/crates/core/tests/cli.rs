mod common;

use std::io::Write;

use common::{fixture, most};
use serde_json::Value;

#[test]
fn density_prints_bare_fraction_first() {
    for (expr, want) in [
        ("comp(AP(3,1))", "2/3"),
        ("O", "0"),
        ("AP(5,2) | AP(5,3)", "2/5"),
        ("P", "0"),
    ] {
        let r = most(&["density", expr]);
        assert_eq!(r.code, 0, "{expr}: {}", r.stderr);
        assert_eq!(r.stdout.lines().next(), Some(want), "{expr}");
    }
}

#[test]
fn density_json_is_versioned() {
    let r = most(&["--format", "json", "density", "AP(2,0) | P"]);
    assert_eq!(r.code, 0);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["schema"], "most/1");
    assert_eq!(v["density"], "1/2");
    assert_eq!(v["canonical"]["period"], 2);
    assert_eq!(v["canonical"]["residues"], serde_json::json!([0]));
}

#[test]
fn exit_codes() {
    assert_eq!(most(&["density", "AP(3,"]).code, 2);
    assert_eq!(most(&["density", "AP(0,0)"]).code, 2);
    assert_eq!(most(&["frobnicate"]).code, 2);
    assert_eq!(most(&["--period-cap", "100", "density", "AP(11,0) & AP(13,0)"]).code, 3);
    assert_eq!(most(&["--period-cap", "0", "density", "N"]).code, 2);
    assert_eq!(most(&["eval", "Most(P & AP(4,0), N)", "--sem", "diff"]).code, 4);
    assert_eq!(most(&["--let", "P=N", "density", "P"]).code, 2);
    assert_eq!(most(&["--help"]).code, 0);
}

#[test]
fn parse_errors_go_to_stderr() {
    let r = most(&["density", "AP(3,1) |"]);
    assert_eq!(r.code, 2);
    assert!(r.stdout.is_empty());
    assert!(r.stderr.contains("offset 10"), "{}", r.stderr);
}

#[test]
fn eval_all_semantics() {
    let r = most(&["eval", "Most(N, comp(AP(3,1)))", "--sem", "all"]);
    assert_eq!(r.code, 0);
    let lines: Vec<&str> = r.stdout.lines().collect();
    assert!(lines[0].starts_with("half: False"));
    assert!(lines[1].starts_with("diff: False"));
    assert_eq!(lines[2], "density: True (lhs 2/3, rhs 1/3)");

    let r = most(&["eval", r"Most(N, N \ {1,2,3})", "--sem", "diff"]);
    assert_eq!(r.stdout, "diff: True (lhs aleph0, rhs finite:3)\n");
    let r = most(&["eval", "Most(P, N)", "--sem", "density"]);
    assert!(r.stdout.starts_with("density: False"));
}

#[test]
fn eval_with_bindings() {
    let r = most(&["--let", "K=AP(3,1)", "--let", "Kc=comp(K_UNUSED)", "eval", "Most(N,K)"]);
    assert_eq!(r.code, 2, "bindings parse before commands run");
    let r = most(&[
        "--let",
        "K=comp(AP(3,1))",
        "--format",
        "json",
        "eval",
        "Most(N,K)",
        "--sem",
        "density",
    ]);
    assert_eq!(r.code, 0);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["verdicts"][0]["truth"], "True");
    assert_eq!(v["verdicts"][0]["lhs"], "2/3");
}

#[test]
fn converge_csv() {
    let r = most(&["--format", "csv", "converge", "P", "--checkpoints", "100,10000"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout, "n,count,num,den\n100,25,1,4\n10000,1229,1229,10000\n");
    assert_eq!(most(&["converge", "P", "--checkpoints", "100,10"]).code, 2);
}

#[test]
fn check_reports_witness_and_countermodel() {
    let path = fixture("x2_clash.txt");
    let r = most(&["check", path.to_str().unwrap()]);
    assert_eq!(r.code, 5);
    assert!(r.stdout.contains("witness: Most(U,A) Most(U,Ac) (X2)"), "{}", r.stdout);

    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "Most(U,A)").unwrap();
    let p = file.path().to_str().unwrap();
    let r = most(&["check", p, "--query", "Most(U,Ac)"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("derivable: no"));
    assert!(r.stdout.contains("countermodel: A = comp(AP(3,0))"), "{}", r.stdout);

    let r = most(&["--let", "A=AP(2,0)", "check", p]);
    assert!(r.stdout.contains("model: False"), "{}", r.stdout);
}

#[test]
fn check_rejects_bad_premises() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "Most(U,A)\nMost(A,B)").unwrap();
    let r = most(&["check", file.path().to_str().unwrap()]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("line 2"), "{}", r.stderr);
    assert_eq!(most(&["check", "/nonexistent/premises.txt"]).code, 1);
}

#[test]
fn axioms_minimal_run() {
    let r = most(&["axioms", "--trials", "1"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert_eq!(
        r.stdout.lines().next().unwrap(),
        "axioms 1-5: pass; properties i-iii: pass; propositions: 5 pass, 1 discrepancy (Prop 6 / semantics (1))"
    );
}
