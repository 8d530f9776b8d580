use std::process::Command;

use dihyper::harness::report::CountRecord;
use dihyper::harness::{run_cli, CompareReport, Verdict};

fn run(args: &[&str]) -> (u8, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_cli(
        std::iter::once("dihyper").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn formula_eval_text() {
    let (code, out, _) = run(&[
        "formula", "--family", "acyclic", "--b", "2", "--n", "4", "--eval", "1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out, "1 1 3 25 543\n");
}

#[test]
fn formula_json_schema() {
    let (code, out, _) = run(&[
        "formula", "--family", "acyclic", "--b", "2", "--n", "3", "--format", "json",
    ]);
    assert_eq!(code, 0);
    let records: Vec<CountRecord> = serde_json::from_str(&out).unwrap();
    assert_eq!(records.len(), 4);
    let r = &records[3];
    assert_eq!(
        (r.b, r.n, r.family.as_str(), r.semantics.as_str()),
        (2, 3, "acyclic", "head-to-tail")
    );
    let coeffs: Vec<(&str, &str)> = r
        .coeffs
        .iter()
        .map(|(q, c)| (q.as_str(), c.as_str()))
        .collect();
    assert_eq!(coeffs, [("0", "1"), ("1", "6"), ("2", "12"), ("3", "6")]);

    let positions: Vec<usize> = [
        "\"b\"",
        "\"n\"",
        "\"family\"",
        "\"method\"",
        "\"semantics\"",
        "\"coeffs\"",
    ]
    .iter()
    .map(|k| out.find(k).unwrap())
    .collect();
    assert!(
        positions.windows(2).all(|w| w[0] < w[1]),
        "field order {positions:?}"
    );
}

#[test]
fn formula_csv() {
    let (code, out, _) = run(&[
        "formula", "--family", "strong", "--b", "2", "--n", "2", "--format", "csv",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "b,n,family,method,q,count\n2,1,strong,inversion,0,1\n2,2,strong,inversion,0,0\n2,2,strong,inversion,1,0\n2,2,strong,inversion,2,1\n"
    );
}

#[test]
fn formula_methods_and_errors() {
    let (code, out, _) = run(&[
        "formula",
        "--family",
        "acyclic",
        "--b",
        "3",
        "--n",
        "6",
        "--method",
        "compositions",
        "--eval",
        "1",
    ]);
    assert_eq!(code, 0);
    let (_, reference, _) = run(&[
        "formula", "--family", "acyclic", "--b", "3", "--n", "6", "--eval", "1",
    ]);
    assert_eq!(out, reference);

    assert_eq!(
        run(&[
            "formula",
            "--family",
            "total",
            "--b",
            "2",
            "--n",
            "3",
            "--method",
            "inversion"
        ])
        .0,
        2
    );
    assert_eq!(
        run(&["formula", "--family", "cyclic", "--b", "2", "--n", "3"]).0,
        2
    );
    assert_eq!(
        run(&["formula", "--family", "acyclic", "--b", "1", "--n", "3"]).0,
        2
    );
    assert_eq!(run(&["bogus"]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn formula_out_file() {
    let dir = std::env::temp_dir().join(format!("dihyper-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("a.csv");
    let p = path.to_str().unwrap();
    let (code, out, _) = run(&[
        "formula", "--family", "total", "--b", "2", "--n", "2", "--format", "csv", "--out", p,
    ]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("b,n,family,method,q,count\n"));
    assert!(text.ends_with("2,2,total,closed-form,2,1\n"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn oracle_formats_and_cap() {
    let (code, out, _) = run(&["oracle", "--b", "2", "--n", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("census n=2 b=2"));
    let (code, out, _) = run(&["oracle", "--b", "2", "--n", "2", "--format", "json"]);
    assert_eq!(code, 0);
    let records: Vec<CountRecord> = serde_json::from_str(&out).unwrap();
    let acyclic = records.iter().find(|r| r.family == "acyclic").unwrap();
    assert_eq!(acyclic.method, "oracle");
    assert_eq!(acyclic.to_poly().unwrap().to_string(), "1 + 2y");

    let (code, _, err) = run(&["oracle", "--b", "3", "--n", "4", "--cap", "20"]);
    assert_eq!(code, 3);
    assert!(err.contains("cap"));
    assert_eq!(run(&["oracle", "--b", "2", "--n", "9"]).0, 2);
    assert_eq!(run(&["oracle", "--b", "2", "--n", "3", "--jobs", "0"]).0, 2);
}

#[test]
fn cap_from_environment() {
    let bin = env!("CARGO_BIN_EXE_dihyper");
    let status = Command::new(bin)
        .args(["oracle", "--b", "2", "--n", "3"])
        .env("DIHYPER_ORACLE_CAP", "4")
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(3));
    let status = Command::new(bin)
        .args(["oracle", "--b", "2", "--n", "3", "--cap", "6"])
        .env("DIHYPER_ORACLE_CAP", "4")
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(0));
}

#[test]
fn compare_strict_and_default() {
    let args = ["compare", "--family", "acyclic", "--b", "3", "--n-max", "3"];
    let (code, out, _) = run(&args);
    assert_eq!(code, 0);
    assert!(out.contains("first at n=3, q=1: formula 0 vs oracle 6"));
    let strict: Vec<&str> = args.iter().copied().chain(["--strict"]).collect();
    assert_eq!(run(&strict).0, 1);

    let (code, _, _) = run(&[
        "compare", "--family", "acyclic", "--b", "2", "--n-max", "4", "--strict",
    ]);
    assert_eq!(code, 0);
}

#[test]
fn compare_is_reproducible_and_independent_of_jobs() {
    let base = [
        "compare", "--family", "strong", "--b", "2", "--n-max", "4", "--format", "json",
    ];
    let one: Vec<&str> = base.iter().copied().chain(["--jobs", "1"]).collect();
    let four: Vec<&str> = base.iter().copied().chain(["--jobs", "4"]).collect();
    let (_, a, _) = run(&one);
    let (_, b, _) = run(&four);
    let (_, c, _) = run(&base);
    assert_eq!(a, b);
    assert_eq!(a, c);
    let report = CompareReport::from_json(&a).unwrap();
    assert_eq!(report.verdict, Verdict::Match);
    assert!(report.timing.is_none());
    assert_eq!(report.to_json().unwrap() + "\n", a);
}

#[test]
fn compare_reports_unavailable_sizes() {
    let (code, out, _) = run(&[
        "compare", "--family", "acyclic", "--b", "2", "--n-max", "4", "--cap", "6", "--strict",
        "--format", "json",
    ]);
    assert_eq!(code, 0);
    let report = CompareReport::from_json(&out).unwrap();
    assert_eq!(report.verdict, Verdict::OracleUnavailable);
    assert_eq!(report.records[3].status, Verdict::Match);
    assert_eq!(report.records[4].status, Verdict::OracleUnavailable);
    assert!(report.records[4].note.is_some());
}

#[test]
fn compare_timing_opt_in() {
    let (_, out, _) = run(&[
        "compare", "--family", "acyclic", "--b", "2", "--n-max", "2", "--timing", "--format",
        "json",
    ]);
    assert!(CompareReport::from_json(&out).unwrap().timing.is_some());
}

#[test]
fn check_suites() {
    for suite in ["identities", "marked-source", "fixtures", "lambda"] {
        let (code, out, _) = run(&["check", "--suite", suite]);
        assert_eq!(code, 0, "{suite}: {out}");
        assert!(out.trim_end().ends_with(", 0 failed"), "{suite}: {out}");
    }
    let (_, out, _) = run(&["check", "--suite", "marked-source"]);
    assert!(out.contains("[FIND] acyclic sources b=3 n=3 u0=1: equal=false"));
    assert_eq!(run(&["check", "--suite", "everything"]).0, 2);
}

#[test]
fn fixture_reports() {
    let (code, out, _) = run(&["fixtures", "--name", "fig1"]);
    assert_eq!(code, 0);
    assert!(out.contains("cyclic; cycle witness through nodes 2,6,4,3"));
    let (_, out, _) = run(&["fixtures", "--name", "fig2"]);
    assert!(out.contains("strong components: {1} {2,3,4,6} {5} {7}"));
    assert!(out.contains("source strong components: 2 (2 sources)"));
    assert_eq!(run(&["fixtures"]).0, 2);
}
