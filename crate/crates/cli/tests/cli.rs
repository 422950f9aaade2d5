use std::process::{Command, Output};

use heckoid_cli::{emit_report, run_with, Format};
use heckoid_core::verify::{verify_connection, SweepOptions};
use heckoid_core::build_context;

fn heckoid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heckoid"))
        .args(args)
        .env_remove("HECKOID_CACHE_DIR")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn cs_prints_the_cyclic_sequence() {
    let o = heckoid(&["cs", "3/8"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "⟨3,3,2,3,3,2⟩\n");
    // both slope dialects
    assert_eq!(stdout(&heckoid(&["cs", "[2,1,2]"])), "⟨3,3,2,3,3,2⟩\n");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["cf", "not-a-slope"][..],
        &["cs", "3/8", "--frobnicate"],
        &["verify", "connection"],
        &["verify", "no-such-lemma", "--r", "2/5"],
        &["ctx", "--r", "1/3"],
        &["ctx", "--r", "2/5", "--n", "1"],
        &["ctx", "--r", "2/5", "--endpoint-policy", "sideways"],
        &["frobnicate"],
    ] {
        let o = heckoid(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!stderr(&o).is_empty(), "{args:?}");
        assert!(stdout(&o).is_empty(), "{args:?}");
    }
}

#[test]
fn verify_connection_json() {
    let o = heckoid(&[
        "verify",
        "connection",
        "--r",
        "2/5",
        "--n",
        "2",
        "--max-denominator",
        "100",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["failures"], serde_json::json!([]));
    assert_eq!(v["lemma"], "connection");
    assert_eq!(v["r"], "2/5");
    assert_eq!(v["max_den"], 100);
    assert_eq!(v["checked"], v["verdicts"].as_array().unwrap().len());
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(
        keys[..7],
        ["lemma", "r", "n", "max_den", "checked", "failures", "duration_ms"]
    );
}

#[test]
fn mirrored_input_is_announced() {
    let o = heckoid(&["ctx", "--r", "3/5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("mirror 2/5"));
    assert!(stdout(&o).starts_with("r = 2/5"));
}

#[test]
fn csv_reports_have_a_fixed_header_and_one_row_per_slope() {
    let o = heckoid(&["verify", "span", "--r", "2/5", "--max-denominator", "20", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("s,cs,pass,pattern,position,detail"));
    let json = heckoid(&["verify", "span", "--r", "2/5", "--max-denominator", "20", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    assert_eq!(lines.count() as u64, v["checked"].as_u64().unwrap());

    let o = heckoid(&["audit", "conjugacy", "--r", "2/5", "--max-denominator", "6", "--format", "csv"]);
    assert!(stdout(&o).starts_with("s,s2,status,searched_to,degree\n"));
}

#[test]
fn queries() {
    assert_eq!(stdout(&heckoid(&["cf", "12/29"])), "[2,2,2,2]\n");
    assert_eq!(stdout(&heckoid(&["tilde", "[2,3]"])), "1/2\n");
    assert_eq!(stdout(&heckoid(&["word", "2/5"])), "abaBAbabAB\n");
    assert_eq!(stdout(&heckoid(&["orbit", "3/7", "--r", "2/5"])), "representative 1/3\n");

    let o = heckoid(&["reduce", "abaBAbabABabaBAbabAB", "--r", "2/5"]);
    assert!(stdout(&o).starts_with("1\n"));
    let o = heckoid(&["reduce", "3/8", "--r", "2/5", "--trace", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["steps"].as_array().unwrap().len(), 1);

    let o = heckoid(&["match", "3/8", "--r", "2/5"]);
    assert!(stdout(&o).starts_with("ABSENT\n"));
    let o = heckoid(&["match", "2/5", "--r", "2/5", "--link"]);
    assert!(stdout(&o).starts_with("PRESENT"));

    let o = heckoid(&["pieces", "3/8", "--r", "2/5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v.as_array().unwrap().iter().all(|t| t["min_pieces"].as_u64().unwrap() < 7));
}

#[test]
fn separation_and_self_test() {
    let o = heckoid(&["separate", "1/3", "1/2", "--r", "2/5", "--degree-max", "4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["certificate"].is_object());

    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = ["separate", "3/8", "3/7", "--r", "2/5", "--degree-max", "4", "--cache-dir", cache];
    let first = stdout(&heckoid(&args));
    assert!(dir.path().join("r2_5_n2_k2.jsonl").exists());
    assert_eq!(stdout(&heckoid(&args)), first);

    let o = heckoid(&["audit", "self-test", "--r", "2/5", "--max-denominator", "10", "--trials", "20", "--degree-max", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "20/20 conjugate pairs left unseparated\n");
}

#[test]
fn audits_exit_zero_and_report_conclusions() {
    let o = heckoid(&["audit", "torsion", "--r", "3/8", "--max-denominator", "15", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["summary"]["empty_reductions"], 0);
    assert!(v["verdicts"].as_array().unwrap().iter().all(|x| x.get("trace").is_none()));
}

#[test]
fn run_with_captures_streams() {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_with(["heckoid", "cs", "0/1"], &mut out, &mut err);
    assert_eq!(code, 0);
    assert_eq!(String::from_utf8(out).unwrap(), "⟨2⟩\n");

    let (mut out, mut err) = (Vec::new(), Vec::new());
    assert_eq!(run_with(["heckoid", "--help"], &mut out, &mut err), 0);
    assert!(String::from_utf8(out).unwrap().contains("verify"));
}

#[test]
fn emitted_reports_round_trip() {
    let ctx = build_context("2/5".parse().unwrap(), 2).unwrap();
    let rep = verify_connection(&ctx, SweepOptions::new(12)).unwrap();
    let json = emit_report(&rep, Format::Json);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["failures"], serde_json::json!([]));
    assert_eq!(serde_json::to_string_pretty(&v).unwrap(), json);
    let text = emit_report(&rep, Format::Text);
    assert!(text.starts_with("connection r=2/5 n=2 max_den=12\n"));
    assert!(!text.contains("ms"));
}
