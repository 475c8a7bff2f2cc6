use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn g6q(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_g6q")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = g6q(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stderr))
    });
    (out.status.code().unwrap(), v)
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

const SWAP: &str = r#"{"rows":4,"cols":4,"data":[[1,0],[0,0],[0,0],[0,0],[0,0],[0,0],[1,0],[0,0],[0,0],[1,0],[0,0],[0,0],[0,0],[0,0],[0,0],[1,0]]}"#;

#[test]
fn verify_iso_passes() {
    let (code, v) = json(&["verify-iso"]);
    assert_eq!(code, 0);
    assert_eq!(v["pass"], true);
    assert_eq!(v["adoption"]["adopted"]["delta_sign"], false);
}

#[test]
fn tables_qprime_has_fifteen_rows() {
    let out = g6q(&["tables", "--op", "Qprime"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.contains(" -> ")).count(), 15);
    let (_, v) = json(&["tables", "--op", "Qprime"]);
    assert_eq!(v["entries"].as_array().unwrap().len(), 15);
    assert_eq!(v["diff"].as_array().unwrap().len(), 0);
    assert_eq!(v["monomial"], true);
}

#[test]
fn tables_rejects_unknown_op() {
    assert_eq!(g6q(&["tables", "--op", "R"]).status.code(), Some(2));
}

#[test]
fn factor_check_swap_residual_and_verdict() {
    let (code, v) = json(&["factor-check", "--which", "swap"]);
    let residual = v["report"]["candidates"][0]["phase_match"]["residual"].as_f64().unwrap();
    assert!(residual < 1e-10);
    // the exact rotor identity fails, so the whole check fails
    assert_eq!(v["report"]["lines"][0]["pass"], false);
    assert_eq!(code, 1);
}

#[test]
fn factor_check_verdicts() {
    let (code, v) = json(&["factor-check", "--which", "Qprime"]);
    assert_eq!(code, 1);
    let c = v["report"]["candidates"].as_array().unwrap();
    assert_eq!(c.len(), 3);
    assert_eq!(c[0]["pass"], true);
    assert_eq!(c[1]["pass"], false);
    assert_eq!(c[2]["pass"], true);
    let (code, _) = json(&["factor-check", "--which", "q"]);
    assert_eq!(code, 1);
    assert_eq!(g6q(&["factor-check", "--which", "x"]).status.code(), Some(2));
}

#[test]
fn kak_swap() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "swap.json", SWAP);
    let (code, v) = json(&["kak", "--unitary", &f]);
    assert_eq!(code, 0);
    for c in v["canonical"].as_array().unwrap() {
        assert!((c.as_f64().unwrap() - std::f64::consts::FRAC_PI_4).abs() < 1e-9);
    }
    assert!(v["residual"].as_f64().unwrap() < 1e-9);
    assert_eq!(v["factorization"]["factors"].as_array().unwrap().len(), 3);
}

#[test]
fn kak_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", "{\"rows\":4");
    assert_eq!(g6q(&["kak", "--unitary", &bad]).status.code(), Some(2));
    let short = write(dir.path(), "short.json", r#"{"rows":2,"cols":2,"data":[[1,0],[0,0],[0,0],[1,0]]}"#);
    assert_eq!(g6q(&["kak", "--unitary", &short]).status.code(), Some(2));
    let scaled = SWAP.replace("[1,0]", "[2,0]");
    let nonunitary = write(dir.path(), "nu.json", &scaled);
    assert_eq!(g6q(&["kak", "--unitary", &nonunitary]).status.code(), Some(3));
    assert_eq!(g6q(&["kak", "--unitary", "/nonexistent/u.json"]).status.code(), Some(2));
}

#[test]
fn schmidt_singlet() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "p.json",
        r#"{"rho":1,"phi":0,"phi1":0,"phi2":0,"theta1":0,"theta2":0,"tau":0,"sigma":1.5707963267948966}"#,
    );
    let (code, v) = json(&["schmidt", "--params", &f, "--log2"]);
    assert_eq!(code, 0);
    assert!((v["entropy_standard"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!((v["entropy_formula"].as_f64().unwrap() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
    assert!((v["purity"]["m2"].as_f64().unwrap() - 3.0 / 16.0).abs() < 1e-12);
    let extra = write(dir.path(), "x.json", r#"{"rho":1,"phi":0,"phi1":0,"phi2":0,"theta1":0,"theta2":0,"tau":0,"sigma":0,"z":1}"#);
    assert_eq!(g6q(&["schmidt", "--params", &extra]).status.code(), Some(2));
}

#[test]
fn kraus_reports() {
    let (code, v) = json(&["kraus", "--k", "4"]);
    assert_eq!(code, 1);
    for key in ["k", "trace_preserving", "min_choi_eig", "boundary"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["trace_preserving"], true);
    assert!((v["min_choi_eig"].as_f64().unwrap() + 0.3125).abs() < 1e-12);
    assert_eq!(g6q(&["kraus", "--k", "7"]).status.code(), Some(2));
}

#[test]
fn kraus_accepts_both_density_formats() {
    let dir = tempfile::tempdir().unwrap();
    let mv = write(dir.path(), "mv.json", r#"{"signature":[6,0],"terms":[{"blade":[],"coeff":0.25}]}"#);
    let (_, a) = json(&["kraus", "--k", "1", "--rho", &mv]);
    assert_eq!(a["output"]["terms"][0]["coeff"], 0.25);
    let m = write(
        dir.path(),
        "m.json",
        r#"{"rows":4,"cols":4,"data":[[0.25,0],[0,0],[0,0],[0,0],[0,0],[0.25,0],[0,0],[0,0],[0,0],[0,0],[0.25,0],[0,0],[0,0],[0,0],[0,0],[0.25,0]]}"#,
    );
    let (_, b) = json(&["kraus", "--k", "1", "--rho", &m]);
    assert_eq!(a["output"], b["output"]);
    let unnormalized = write(dir.path(), "u.json", r#"{"signature":[6,0],"terms":[{"blade":[],"coeff":1.0}]}"#);
    assert_eq!(g6q(&["kraus", "--k", "1", "--rho", &unnormalized]).status.code(), Some(3));
    let neither = write(dir.path(), "n.json", r#"{"x":1}"#);
    assert_eq!(g6q(&["kraus", "--k", "1", "--rho", &neither]).status.code(), Some(2));
}

#[test]
fn selftest_deterministic_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let out = g6q(&["selftest", "--json", "--seed", "5", "--out", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(1));
        assert!(out.stdout.is_empty());
    }
    let (ja, jb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ja, jb);
    let v: Value = serde_json::from_slice(&ja).unwrap();
    let crit = v["criteria"].as_array().unwrap();
    assert_eq!(crit.len(), 12);
    let failing: Vec<u64> = crit
        .iter()
        .filter(|c| c["lines"].as_array().unwrap().iter().any(|l| l["pass"] == false))
        .map(|c| c["id"].as_u64().unwrap())
        .collect();
    assert_eq!(failing, vec![5, 8, 12]);
}

#[test]
fn text_selftest_lists_every_criterion() {
    let out = g6q(&["selftest"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS ") || l.starts_with("FAIL ")).count(), 13);
}
