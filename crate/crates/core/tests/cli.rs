//! The `polya` binary: exit codes, stdout contents and artifacts.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn polya(args: &[&str], cert_dir: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_polya"));
    cmd.args(args).env_remove("POLYA_CERT_DIR");
    if let Some(d) = cert_dir {
        cmd.env("POLYA_CERT_DIR", d);
    }
    cmd.output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["bound", "foo"][..],
        &["bound", "triangle:gamma=1"],
        &["certify", "theorem9"],
        &["certify", "theorem5", "--threshold", "abc"],
        &["certify", "theorem5", "--max-depth", "99"],
        &["oracle", "triangle:beta=0.5", "--series"],
        &["oracle", "disc:r=1", "--h", "0.9"],
        &["frobnicate"],
    ] {
        let out = polya(args, None);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(out.stdout.is_empty(), "{args:?} wrote to stdout");
    }
}

#[test]
fn help_exits_0() {
    let out = polya(&["--help"], None);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("certify"));
}

#[test]
fn bound_rows() {
    let out = polya(&["bound", "rhombus:beta=0.5", "--which", "all", "--json"], None);
    assert_eq!(out.status.code(), Some(0));
    let rows = json(&out);
    let tags: Vec<&str> = rows.as_array().unwrap().iter().map(|r| r["equation_tag"].as_str().unwrap()).collect();
    assert!(tags.contains(&"e28a") && tags.contains(&"e28b"), "{tags:?}");
    for r in rows.as_array().unwrap() {
        for k in ["equation_tag", "kind", "quantity", "lo", "hi", "valid", "params"] {
            assert!(r.get(k).is_some(), "missing {k}");
        }
    }

    let out = polya(&["bound", "triangle:beta=1.2", "--which", "e28", "--json"], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)[0]["valid"], Value::Bool(false));
    let out = polya(&["bound", "triangle:beta=1.0", "--which", "e28", "--json"], None);
    assert_eq!(json(&out)[0]["valid"], Value::Bool(true));

    let out = polya(&["bound", "slab:m=2,w=0.1,rho=1", "--which", "e15", "--json"], None);
    let row = &json(&out)[0];
    assert!(row["lo"].as_f64().unwrap() > std::f64::consts::PI.powi(2) / 8.0);
    assert_eq!(row["kind"], "UpperBound");
}

#[test]
fn certify_writes_listed_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let out = polya(&["certify", "theorem5", "--threshold", "1.01"], Some(dir.path()));
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let s = json(&out);
    assert_eq!(s["passed"], true);
    assert_eq!(s["cells"], 1001);
    let digest = s["config_digest"].as_str().unwrap();
    let manifest_path = s["manifest"].as_str().unwrap();
    let manifest: Value = serde_json::from_str(&std::fs::read_to_string(manifest_path).unwrap()).unwrap();
    assert_eq!(manifest["config_digest"], digest);
    let listed: Vec<&str> = manifest["artifacts"].as_array().unwrap().iter().map(|a| a.as_str().unwrap()).collect();
    let on_disk: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    // everything but the manifest itself is listed
    assert_eq!(listed.len() + 1, on_disk.len());
    for p in &on_disk {
        let p = p.to_str().unwrap();
        assert!(p == manifest_path || listed.contains(&p), "{p} not listed");
    }
    let cert_json = listed.iter().find(|p| p.ends_with(".json")).unwrap();
    let cert: Value = serde_json::from_str(&std::fs::read_to_string(cert_json).unwrap()).unwrap();
    assert_eq!(cert["config_digest"], digest);
    let threshold = &manifest["parameters"]["threshold"];
    assert_eq!(threshold["decimal"], "1.01");
    assert!(threshold["lo_hex"].is_string() && threshold["hi_hex"].is_string());
}

#[test]
fn reruns_are_byte_identical() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let run = |d: &Path| polya(&["certify", "t11", "--out", d.to_str().unwrap()], None);
    let (ra, rb) = (run(a.path()), run(b.path()));
    assert_eq!(ra.status.code(), Some(0));
    let name = |d: &Path, ext: &str| {
        std::fs::read_dir(d)
            .unwrap()
            .map(|e| e.unwrap().path())
            .find(|p| p.file_name().unwrap().to_str().unwrap().starts_with("cert_") && p.extension().unwrap() == ext)
            .unwrap()
    };
    for ext in ["json", "csv"] {
        let (pa, pb) = (name(a.path(), ext), name(b.path(), ext));
        assert_eq!(pa.file_name(), pb.file_name());
        assert_eq!(std::fs::read(pa).unwrap(), std::fs::read(pb).unwrap());
    }
    assert_eq!(json(&ra)["config_digest"], json(&rb)["config_digest"]);
}

#[test]
fn failed_certificate_exits_1_with_failures() {
    let dir = tempfile::tempdir().unwrap();
    let out = polya(&["certify", "theorem5", "--threshold", "10", "--format", "json"], Some(dir.path()));
    assert_eq!(out.status.code(), Some(1));
    let s = json(&out);
    assert_eq!(s["passed"], false);
    assert!(!s["failing_cells"].as_array().unwrap().is_empty());
    // the certificate is still written
    assert!(std::fs::read_dir(dir.path()).unwrap().count() >= 2);
}

#[test]
fn other_claims_pass() {
    for claim in ["t11", "theorem4"] {
        let dir = tempfile::tempdir().unwrap();
        let out = polya(&["certify", claim, "--jobs", "2"], Some(dir.path()));
        assert_eq!(out.status.code(), Some(0), "{claim}");
        assert_eq!(json(&out)["passed"], true);
    }
}

#[test]
fn oracle_summaries() {
    let out = polya(&["oracle", "rhombus:beta=0.5", "--h", "0.02"], None);
    assert_eq!(out.status.code(), Some(0));
    let s = json(&out);
    for k in ["T_est", "M_est", "lambda_est", "h", "residual", "iterations"] {
        assert!(s.get(k).is_some(), "missing {k}");
    }
    // area of the rhombus is its minor diagonal 2 tan(β/2)
    let area = 2.0 * 0.25f64.tan();
    let ratio = s["lambda_est"].as_f64().unwrap() * s["T_est"].as_f64().unwrap() / area;
    assert!(ratio > std::f64::consts::PI.powi(2) / 24.0 && ratio < 1.0, "{ratio}");

    let out = polya(&["oracle", "rect:a=1000,b=1", "--series"], None);
    let r = json(&out)["ratio"].as_f64().unwrap();
    assert!((r / (std::f64::consts::PI.powi(2) / 12.0) - 1.0).abs() < 1e-3);

    let out = polya(&["oracle", "disc:r=1", "--max-cg", "2"], None);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
}

#[test]
fn sweep_csv_columns() {
    let out = polya(&["oracle", "--sweep", "rhombus.beta=0.3:0.9:3", "--across", "16", "--jobs", "1"], None);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let mut rdr = csv::Reader::from_reader(&out.stdout[..]);
    let head = rdr.headers().unwrap().clone();
    for col in ["param", "lambda", "T", "M", "ratio", "lower_cert_lo", "upper_cert_hi"] {
        assert!(head.iter().any(|h| h == col), "missing column {col}");
    }
    assert_eq!(rdr.records().count(), 3);
}

#[test]
fn constants_dump() {
    let out = polya(&["constants"], None);
    assert_eq!(out.status.code(), Some(0));
    let c = json(&out);
    for k in ["pi", "zeta5", "airy_C"] {
        for f in ["lo_hex", "hi_hex", "lo_dec", "hi_dec"] {
            assert!(c[k][f].is_string(), "{k}.{f}");
        }
    }
}
