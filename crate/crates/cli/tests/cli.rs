use std::process::Command;

use matlift_cli::{run, Outcome};
use serde_json::{json, Value};

fn go(args: &[&str]) -> Outcome {
    run(args.iter().copied())
}

fn check<'a>(out: &'a Outcome, name: &str) -> &'a matlift_cli::Check {
    let report = out.report.as_ref().expect("report");
    report.checks.iter().find(|c| c.name == name).unwrap_or_else(|| panic!("no check {name}"))
}

fn details(out: &Outcome) -> &Value {
    &out.report.as_ref().expect("report").details
}

#[test]
fn binary_exit_codes_follow_the_contract() {
    let bin = env!("CARGO_BIN_EXE_matlift");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(status(&["krt", "build", "4", "3"]), Some(0));
    assert_eq!(status(&["gain", "lift3", "builtin:z4"]), Some(1));
    assert_eq!(status(&["krt", "build", "3", "3"]), Some(2));
    assert_eq!(status(&["no-such-command"]), Some(2));
}

#[test]
fn usage_errors_exit_2_without_a_report() {
    for args in [
        &["check", "testdata/missing.ckt"][..],
        &["check", "testdata/bad_syntax.ckt"],
        &["rank", "testdata/u24.ckt", "1,9"],
        &["krt", "certify", "4", "2"],
        &["krt", "certify", "9", "5"],
        &["gain", "build", "builtin:x7", "3"],
        &["lift", "general", "testdata/u13_free.lift", "--check-star", "--check-star-prime"],
    ] {
        let out = go(args);
        assert_eq!(out.code, 2, "{args:?}");
        assert!(out.report.is_none());
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn parse_errors_name_the_line() {
    let out = go(&["check", "testdata/bad_syntax.ckt"]);
    assert!(out.stderr.contains("line 3"), "{}", out.stderr);
}

#[test]
fn axiom_violations_exit_1_with_witness() {
    let out = go(&["check", "testdata/bad_antichain.ckt"]);
    assert_eq!(out.code, 1);
    let c = check(&out, "circuit_axioms");
    assert!(!c.pass);
    assert!(c.witness.as_str().unwrap().contains("{1,2} is contained in {1,2,3}"));
}

#[test]
fn json_report_is_written_and_omits_its_own_path() {
    let dir = std::env::temp_dir().join(format!("matlift-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("u24.json");
    let p = path.to_str().unwrap();
    let out = go(&["--json", p, "check", "testdata/u24.ckt"]);
    assert_eq!(out.code, 0);
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(written["command"], json!(["check", "testdata/u24.ckt"]));
    let keys: Vec<&String> = written.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["checks", "command", "conclusion", "details", "inputs", "wall_time_ms"]);
    let out = go(&["rank", "testdata/u24.ckt", "1,2", "--json", p]);
    assert_eq!(out.report.unwrap().command, ["rank", "testdata/u24.ckt", "1,2"]);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn rank_reports_closure() {
    let out = go(&["rank", "testdata/u24.ckt", "{1}"]);
    assert_eq!(out.code, 0);
    assert_eq!(details(&out)["rank"], 1);
    assert_eq!(details(&out)["closure"], json!([1]));
    let out = go(&["rank", "testdata/u24.ckt", "1 2"]);
    assert_eq!(details(&out)["closure"], json!([1, 2, 3, 4]));
}

#[test]
fn elementary_lift_by_file_and_by_index() {
    // {1,2,3} alone is a linear class of U(2,4): no modular pair inside it
    let out = go(&["lift", "elementary", "testdata/u24.ckt", "--class", "testdata/u24_class.txt"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert_eq!(details(&out)["lift"]["rank"], 3);
    assert_eq!(details(&out)["lift"]["circuits"], json!([[1, 2, 3]]));

    let out = go(&["lift", "elementary", "testdata/u24.ckt", "--class", "1,2"]);
    assert_eq!(out.code, 1);
    assert!(!check(&out, "linear_class").pass);

    let out = go(&["lift", "elementary", "testdata/u24.ckt", "--class", "1,2,3,4"]);
    assert_eq!(out.code, 0);
    assert_eq!(details(&out)["lift"]["rank"], 2);
}

#[test]
fn general_lift_conditions() {
    let out = go(&["lift", "general", "testdata/u13_parallel.lift"]);
    assert_eq!(out.code, 0);
    assert_eq!(details(&out)["lift"]["circuits"], json!([[1, 2, 3]]));
    let out = go(&["lift", "general", "testdata/u13_parallel.lift", "--check-star"]);
    assert_eq!(out.code, 0);
    assert!(check(&out, "star").pass);

    let out = go(&["lift", "general", "testdata/u13_free.lift"]);
    assert_eq!(out.code, 1);
    assert_eq!(check(&out, "star_prime").witness["circuit"], json!([2, 3]));
    assert_eq!(out.report.as_ref().unwrap().checks.len(), 1);

    let out = go(&["lift", "general", "testdata/u13_free.lift", "--force"]);
    assert_eq!(out.code, 1);
    assert!(!check(&out, "rank_axioms").pass);
}

#[test]
fn representable_witness() {
    let out = go(&["rep", "witness", "testdata/gf2_example.gfm", "--x", "1,2"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    let d = details(&out);
    assert_eq!(d["field"], 2);
    assert_eq!(d["n"]["n"], d["m"]["circuits"].as_array().unwrap().len());

    // column 3 is e1 + e2, so {1,2,3} is dependent
    let out = go(&["rep", "witness", "testdata/gf2_example.gfm", "--x", "1,2,3"]);
    assert_eq!(out.code, 1);
    let out = go(&["rep", "witness", "testdata/gf2_example.gfm", "--x", "1,2,3", "--reduce"]);
    assert_eq!(out.code, 0);
    assert_eq!(details(&out)["dropped"], json!([3]));
}

#[test]
fn krt_commands() {
    let out = go(&["krt", "build", "5", "4"]);
    assert_eq!(out.code, 0);
    assert_eq!(details(&out)["circuit_hyperplanes"].as_array().unwrap().len(), 7);

    let out = go(&["krt", "ingleton", "5", "4"]);
    assert_eq!(out.code, 0);
    let out = go(&["krt", "ingleton", "4", "3"]);
    assert_eq!(out.code, 1);
    assert_eq!(check(&out, "ingleton").witness["quadruple"], json!([[3, 4], [7, 8], [1, 2], [5, 6]]));

    let out = go(&["krt", "vamos-scan", "5", "4"]);
    assert_eq!(out.code, 0);
    let out = go(&["krt", "vamos-scan", "6", "4"]);
    assert_eq!(out.code, 1);
    let minors = &details(&out)["vamos_like_minors"];
    assert_eq!(minors.as_array().unwrap().len(), 1);
    assert_eq!(minors[0]["contracted"], json!([5, 6]));

    let out = go(&["krt", "certify", "8", "7"]);
    assert_eq!(out.code, 0);
    assert_eq!(details(&out)["vamos_like_minors"], Value::Null);
}

#[test]
fn gain_commands() {
    let out = go(&["gain", "build", "builtin:z2", "3"]);
    assert_eq!(out.code, 0);
    assert_eq!(details(&out)["lift_rank"], 3);
    let out = go(&["gain", "build", "testdata/z4.grp", "3"]);
    assert_eq!(out.code, 0);
    assert_eq!(details(&out)["group"]["order"], 4);

    let out = go(&["gain", "partitions", "builtin:s3"]);
    assert_eq!(out.code, 0);
    assert_eq!(details(&out)["primitive"].as_array().unwrap().len(), 4);
    let out = go(&["gain", "partitions", "testdata/z4.grp"]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("no nontrivial partition"));

    for g in ["builtin:z4", "builtin:z6", "testdata/z4.grp"] {
        let out = go(&["gain", "lift3", g]);
        assert_eq!(out.code, 1, "{g}");
        assert_eq!(out.report.unwrap().conclusion, "no nontrivial partition");
    }
}

#[test]
fn iso_outcomes() {
    let out = go(&["iso", "testdata/k43.ckt", "testdata/v8.ckt"]);
    assert_eq!(out.code, 0);
    assert_eq!(details(&out)["permutation"].as_array().unwrap().len(), 8);
    let out = go(&["iso", "testdata/u24.ckt", "testdata/v8.ckt"]);
    assert_eq!(out.code, 1);
    assert_eq!(check(&out, "isomorphic").witness, json!("non-isomorphic"));
    let out = go(&["iso", "testdata/k43.ckt", "testdata/v8.ckt", "--budget", "0"]);
    assert_eq!(out.code, 1);
    assert_eq!(out.report.unwrap().conclusion, "budget exceeded");
}
