//! Reports for the published examples, compared with stored copies.
//! `MATLIFT_BLESS=1` rewrites the stored files.

use std::path::PathBuf;

use matlift_cli::run;
use serde_json::Value;

const CASES: &[(&str, &[&str], i32)] = &[
    ("krt_build_4_3", &["krt", "build", "4", "3"], 0),
    ("krt_certify_4_3", &["krt", "certify", "4", "3"], 0),
    ("krt_ingleton_4_3", &["krt", "ingleton", "4", "3"], 1),
    ("iso_k43_v8", &["iso", "testdata/k43.ckt", "testdata/v8.ckt"], 0),
    ("gain_lift3_s3", &["gain", "lift3", "builtin:s3"], 0),
    ("gain_lift3_z2z2", &["gain", "lift3", "builtin:z2^2"], 0),
    ("gain_lift3_z4", &["gain", "lift3", "builtin:z4"], 1),
];

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("testdata/golden").join(format!("{name}.json"))
}

#[test]
fn reports_match_golden_files() {
    let bless = std::env::var_os("MATLIFT_BLESS").is_some();
    for &(name, args, code) in CASES {
        let out = run(args.iter().copied());
        assert_eq!(out.code, code, "{name}: {}", out.stderr);
        let got = out.report.expect("report").stable_json();
        let path = golden_path(name);
        if bless {
            std::fs::write(&path, serde_json::to_string_pretty(&got).unwrap() + "\n").unwrap();
            continue;
        }
        let stored: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(got, stored, "{name} differs from {}", path.display());
    }
}

#[test]
fn reports_are_identical_across_runs() {
    for &(_, args, _) in CASES {
        let a = run(args.iter().copied()).report.unwrap().stable_json();
        let b = run(args.iter().copied()).report.unwrap().stable_json();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}
