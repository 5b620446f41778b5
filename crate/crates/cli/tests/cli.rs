use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kostka")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap_or(-1)
}

fn json(args: &[&str]) -> Value {
    let o = run(args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn info_s3() {
    let d = json(&["info", "--group", "S3", "--format", "json"]);
    assert_eq!(d["order"], 6);
    assert_eq!(d["degrees"], serde_json::json!([2, 3]));
    let sizes: Vec<u64> = d["classes"].as_array().unwrap().iter().map(|c| c["size"].as_u64().unwrap()).collect();
    assert_eq!(sizes.iter().sum::<u64>(), 6);
    for ch in d["characters"].as_array().unwrap() {
        assert_eq!(ch["conjugate"], ch["name"]);
    }
}

#[test]
fn info_trivial_and_c3_conjugation() {
    assert_eq!(json(&["info", "--group", "trivial", "--format", "json"])["order"], 1);
    let text = stdout(&run(&["info", "--group", "C3"]));
    assert!(text.contains("order 3"));
    assert!(text.contains("conjugation chi1 <-> chi2"), "{text}");
}

#[test]
fn info_bad_file_exits_2() {
    let dir = std::env::temp_dir().join(format!("kostka-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"format": 1, "name": "x"}"#).unwrap();
    let o = run(&["info", "--group", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("bad.json"));
    assert_eq!(code(&run(&["info", "--group", "no-such-group"])), 2);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn traces_s2_sign() {
    let text = stdout(&run(&["traces", "--group", "S2", "--preorder", "dominance", "--chi", "sgn"]));
    assert!(text.contains("grades ((1,1); (2))"), "{text}");
    let d = json(&["traces", "--group", "trivial", "--format", "json"]);
    let traces = d["traces"].as_array().unwrap();
    assert_eq!(traces.len(), 1);
    assert_eq!(traces[0]["top"], 0);
}

#[test]
fn traces_unknown_label_exits_2() {
    assert_eq!(code(&run(&["traces", "--group", "S3", "--chi", "(4)"])), 2);
}

#[test]
fn one_phylum_has_trivial_factorization() {
    let d = json(&["kostka", "--group", "S2", "--preorder", "one-phylum", "--format", "json"]);
    assert_eq!(d["L"], serde_json::json!([["1", "0"], ["0", "1"]]));
    assert_eq!(d["D"], d["Omega"]);
}

#[test]
fn ldl_csv_and_out_file() {
    let dir = std::env::temp_dir().join(format!("kostka-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("l.csv");
    let o = run(&["ldl", "--group", "S2", "--format", "csv", "--matrix", "L", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&out).unwrap(), ",\"(1,1)\",(2)\n\"(1,1)\",1,0\n(2),q,1\n");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn kostka_csv_matrix_selection() {
    let m = stdout(&run(&["kostka", "--group", "S3", "--format", "csv", "--matrix", "m"]));
    assert_eq!(m.lines().nth(3).unwrap(), "(3),q^3,q,1");
    assert_eq!(code(&run(&["kostka", "--group", "S2", "--format", "csv", "--matrix", "X"])), 2);
}

#[test]
fn oracle_entries_and_table() {
    assert_eq!(stdout(&run(&["oracle", "--lambda", "(3,1)", "--mu", "(1,1,1,1)"])).trim(), "q^3 + q^4 + q^5");
    let d = json(&["oracle", "--size", "3", "--format", "json"]);
    assert_eq!(d["partitions"], serde_json::json!(["(1,1,1)", "(2,1)", "(3)"]));
    assert_eq!(d["K"][1][0], "q + q^2");
    assert_eq!(code(&run(&["oracle", "--size", "7"])), 2);
    assert_eq!(code(&run(&["oracle", "--lambda", "(2,1)", "--mu", "(2)"])), 2);
}

#[test]
fn output_is_deterministic_and_thread_independent() {
    let args = ["kostka", "--group", "B2", "--format", "json"];
    let a = run(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_kostka")).args(args).env("KOSTKA_THREADS", "1").output().unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn full_verification_reports_hom_checks() {
    let o = run(&["kostka", "--group", "trivial", "--verify", "full", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let d: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(!d["hom_checks"].as_array().unwrap().is_empty());
}
