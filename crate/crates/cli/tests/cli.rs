use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const PATTERN_B: &str = "# pattern b\nqubits=2\nRZZ 0,1;theta=0.3\nCNOT 0,1\n";

fn blockpec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_blockpec"))
        .args(args)
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

#[test]
fn gamma_reports_block_and_standard_costs() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "b.txt", PATTERN_B);
    let noise = r#"{"kind":"uncorrelated","p":0.1}"#;
    let v = json(&blockpec(&["gamma", &f, "--mode", "blk", "--noise", noise, "--coeffs"]));
    assert!((v["total_gamma"].as_f64().unwrap() - 2.234375).abs() < 1e-12);
    assert!((v["gamma_std"].as_f64().unwrap() - 2.44140625).abs() < 1e-12);
    assert_eq!(v["segments"][0]["type"], "block");
    assert!(v["segments"][0]["coeffs"].is_array());
}

#[test]
fn estimate_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "h.txt", "qubits=2\nH 0\nRZZ 0,1;theta=0.3\nCNOT 0,1\nH 0\n");
    let args = [
        "estimate",
        f.as_str(),
        "--samples",
        "2000",
        "--seed",
        "7",
        "--noise",
        r#"{"kind":"correlated","p":0.05}"#,
    ];
    let a = json(&blockpec(&args));
    let b = json(&blockpec(&args));
    assert_eq!(a, b);
    assert_eq!(a["n_samples"], 2000);
    let shots = json(&blockpec(
        &[
            &args[..],
            &["--shots", "3", "--mode", "std", "--observable", "zstring:0,1"],
        ]
        .concat(),
    ));
    assert_eq!(shots["mode"], "std");
}

#[test]
fn check_compat_lists_segments() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "m.txt",
        "qubits=2\nX 0\nCNOT 0,1\nH 1\nCZ 0,1\nRBS 0,1;theta=0.2\n",
    );
    let v = json(&blockpec(&["check-compat", &f]));
    assert_eq!(v["segments"], serde_json::json!([[0, 2], [3, 4]]));
    assert_eq!(v["fully_compatible"], false);
    let r = json(&blockpec(&["check-compat", &f, "--compat", "relaxed"]));
    assert_eq!(r["segments"], serde_json::json!([[0, 2], [3, 5]]));
}

#[test]
fn experiment_then_fit() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("gain.csv");
    let cfg = serde_json::json!({
        "family": "swap_network",
        "n_range": [3, 7],
        "depth_factor": 3.0,
        "interaction": "rzz",
        "noise": {"kind": "uncorrelated", "p": 0.01},
        "seeds": [1, 2],
        "output_path": csv,
    });
    let cfg_path = write(dir.path(), "cfg.json", &cfg.to_string());
    let out = blockpec(&["experiment", "--config", &cfg_path]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("family,n,depth,seed,gamma_std,gamma_blk,gain\n"));
    assert_eq!(text.lines().count(), 1 + 5 * 2);
    let meta: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("gain.csv.meta.json")).unwrap()).unwrap();
    assert_eq!(meta["prng"], "chacha8-v1");
    let fit = json(&blockpec(&["fit", csv.to_str().unwrap()]));
    assert_eq!(fit["points"].as_array().unwrap().len(), 5);
    assert!(fit["exponential"]["total_squared_residual"].as_f64().unwrap() >= 0.0);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.txt", "qubits=2\nFOO 0\n");
    let out = blockpec(&["gamma", &bad]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let f = write(dir.path(), "b.txt", PATTERN_B);
    let singular = blockpec(&["gamma", &f, "--noise", r#"{"kind":"uncorrelated","p":0.5}"#]);
    assert_eq!(singular.status.code(), Some(3));

    let big = write(dir.path(), "big.txt", "qubits=15\nH 0\n");
    let guard = blockpec(&[
        "estimate",
        &big,
        "--samples",
        "10",
        "--seed",
        "1",
        "--observable",
        "z:0",
    ]);
    assert_eq!(guard.status.code(), Some(2));

    assert_eq!(blockpec(&["gamma", &f, "--noise", "{"]).status.code(), Some(4));
    assert_eq!(blockpec(&["gamma", "/nonexistent/file"]).status.code(), Some(1));
    assert_eq!(blockpec(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(blockpec(&["--help"]).status.code(), Some(0));
}
