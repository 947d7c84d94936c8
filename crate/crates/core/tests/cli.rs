use std::process::{Command, Output as ProcOutput};

use hermitia::cli::*;
use hermitia::hsum::ConstancyReport;
use hermitia::Error;
use serde::de::DeserializeOwned;
use serde::Serialize;

fn hermitia(args: &[&str]) -> ProcOutput {
    Command::new(env!("CARGO_BIN_EXE_hermitia"))
        .args(args)
        .env_remove("HERMITIA_PRECISION")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = hermitia(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn stderr_with_code(args: &[&str], code: i32) -> String {
    let out = hermitia(args);
    assert_eq!(out.status.code(), Some(code), "{args:?}");
    String::from_utf8(out.stderr).unwrap()
}

fn json<T: DeserializeOwned + Serialize>(args: &[&str]) -> T {
    let mut full = args.to_vec();
    full.extend(["--output", "json"]);
    let text = stdout(&full);
    let value: T = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{args:?}: {e}\n{text}"));
    assert_eq!(serde_json::to_string_pretty(&value).unwrap() + "\n", text, "{args:?} does not round-trip");
    value
}

#[test]
fn alpha_values() {
    assert_eq!(stdout(&["alpha", "--d", "1", "--k", "1", "--delta", "3"]), "20\n");
    assert_eq!(stdout(&["alpha", "--d", "1", "--k", "3", "--delta", "3"]), "68\n");
    let err = stderr_with_code(&["alpha", "--d", "1", "--k", "1", "--delta", "4"], 2);
    assert!(err.contains("4 = N(2)"), "{err}");
}

#[test]
fn lvalue_outputs() {
    assert_eq!(stdout(&["lvalue", "--d", "1", "--s", "-2"]), "-1/2\n");
    assert_eq!(stdout(&["lvalue", "--d", "1", "--s", "3"]), "π³/32 ≈ 0.96894614…\n");
    let err = stderr_with_code(&["lvalue", "--d", "2", "--s", "5"], 2);
    assert!(err.contains("scope"), "{err}");
    let r: LValueReport = json(&["lvalue", "--d", "1", "--s", "-4"]);
    assert_eq!(r.exact.as_deref(), Some("5/2"));
    let r: LValueReport = json(&["lvalue", "--d", "1", "--s", "5"]);
    assert_eq!((r.coefficient.as_deref(), r.pi_power), (Some("5/1536"), Some(5)));
    assert!(r.numeric.starts_with("0.9961578280"), "{}", r.numeric);
}

#[test]
fn invalid_arguments() {
    stderr_with_code(&["alpha", "--d", "5", "--k", "1", "--delta", "3"], 2);
    stderr_with_code(&["lvalue", "--s", "-2", "--precision", "32"], 2);
    stderr_with_code(&["frobnicate"], 2);
    stderr_with_code(&["alpha", "--k", "2", "--delta", "3"], 2);
    assert_eq!(Error::Consistency("x".into()).exit_code(), 3);
    assert_eq!(run(["hermitia", "selftest", "--d", "4"]), 2);
}

#[test]
fn precision_from_environment() {
    let run_with = |p: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_hermitia"))
            .args(["lvalue", "--s", "3", "--output", "json"])
            .env("HERMITIA_PRECISION", p)
            .output()
            .unwrap();
        (out.status.code(), String::from_utf8(out.stdout).unwrap())
    };
    let (code, text) = run_with("256");
    assert_eq!(code, Some(0));
    let r: LValueReport = serde_json::from_str(&text).unwrap();
    assert!(r.numeric.len() > 70, "{}", r.numeric);
    let short: LValueReport = json(&["lvalue", "--s", "3"]);
    assert!(short.numeric.len() < 45);
    assert_eq!(run_with("16").0, Some(2));
}

#[test]
fn hconst_reports() {
    let text = stdout(&["hconst", "--d", "1", "--k", "1", "--delta", "3", "--trials", "100"]);
    assert!(text.ends_with("PASS, 100/100 points equal 20\n"), "{text}");
    let r: ConstancyReport = json(&["hconst", "--d", "3", "--k", "5", "--delta", "2", "--trials", "30"]);
    assert!(r.proven && r.passed());
    let r: ConstancyReport = json(&["hconst", "--d", "2", "--k", "3", "--delta", "5", "--trials", "30"]);
    assert!(!r.proven && r.values.len() > 1);
}

#[test]
fn runs_are_deterministic() {
    let args = ["hconst", "--d", "2", "--k", "3", "--delta", "5", "--trials", "25", "--seed", "7", "--output", "json"];
    assert_eq!(stdout(&args), stdout(&args));
    let a: ConstancyReport = json(&["hconst", "--d", "2", "--k", "3", "--delta", "5", "--trials", "25", "--seed", "7"]);
    let b: ConstancyReport = json(&["hconst", "--d", "2", "--k", "3", "--delta", "5", "--trials", "25", "--seed", "8"]);
    assert_eq!((a.seed, b.seed), (7, 8));
    let sel = ["selftest", "--seed", "3", "--output", "json"];
    assert_eq!(stdout(&sel), stdout(&sel));
}

#[test]
fn reports_round_trip() {
    let r: AlphaReport = json(&["alpha", "--d", "3", "--k", "5", "--delta", "2"]);
    assert_eq!(r.alpha, "39");
    let r: ThetaReport = json(&["theta", "--delta", "3", "--s", "4"]);
    assert_eq!(r.theta, "425/432");
    assert_eq!(r.factors.len(), 2);
    let r: RcountReport = json(&["rcount", "--delta", "-3", "--n-max", "4"]);
    assert_eq!(r.counts, vec![(1, 1), (2, 2), (3, 1), (4, 0)]);
    let r: BenchReport = json(&["bench", "--deltas", "3,6", "--budget-ms", "20"]);
    assert_eq!(r.rows.len(), 3);
    let r: AverageReport = json(&["average", "--d", "1", "--k", "1", "--delta", "3", "--grid", "8", "--a-max", "60"]);
    assert!(r.relative_error < 0.05, "{r:?}");
    let r: CfracReport = json(&["cfrac", "--z", "1/2,0"]);
    assert_eq!(r.alphas, vec!["0", "2"]);
    assert!(r.terminated);
    let r: CfracReport = json(&["cfrac", "--z", "2.718281828459045,0", "--float", "--steps", "6"]);
    assert_eq!(r.alphas.len(), 6);
    let r: DimsReport = json(&["dims", "--d", "1", "--kmax", "7"]);
    assert_eq!(r.rows.len(), 4);
    assert!(r.rows.iter().all(|row| row.table_match == Some(true)));
    let r: BasisReport = json(&["basis", "--d", "1", "--k", "3"]);
    assert_eq!(r.basis.len(), 1);
    let r: ExpandReport = json(&["expandp", "--d", "1", "--k", "1", "--delta", "3"]);
    assert_eq!(r.polynomial, "20*z*zb - 20");
    assert!(r.in_w);
    let r: SelftestReport = json(&["selftest"]);
    assert!(r.passed());
}

#[test]
fn csv_output() {
    let text = stdout(&["dims", "--d", "3", "--kmax", "5", "--output", "csv"]);
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let headers = reader.headers().unwrap().clone();
    assert_eq!(headers.iter().collect::<Vec<_>>(), ["d", "k", "dims", "total", "conjecture", "table", "millis"]);
    let rows: Vec<csv::StringRecord> = reader.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| &r[0] == "3" && &r[5] == "PASS"));
    let text = stdout(&["expandp", "--d", "2", "--k", "1", "--delta", "5", "--output", "csv"]);
    let rows: Vec<csv::StringRecord> = csv::Reader::from_reader(text.as_bytes()).records().map(|r| r.unwrap()).collect();
    assert_eq!(&rows[0][1], "true");
}

#[test]
fn table_output() {
    let text = stdout(&["theta", "--delta", "3", "--s", "2"]);
    assert!(text.lines().last().unwrap().trim_end().ends_with("5/6"), "{text}");
    let text = stdout(&["selftest"]);
    assert!(text.lines().skip(1).all(|l| l.starts_with("PASS") || l.trim().is_empty() || l.starts_with('-')), "{text}");
}

#[test]
fn config_validation() {
    assert!(Config::new(7, 64, Output::Csv, 1).is_ok());
    assert!(Config::new(6, 128, Output::Table, 0).is_err());
    assert!(Config::new(1, 63, Output::Table, 0).is_err());
}
