//! End-to-end runs of the `qw2d` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use qw2d::coin_hadamard;
use qw2d::linalg::{mat_power, tensor_product};
use serde_json::Value;
use tempfile::TempDir;

fn qw2d(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qw2d"))
        .args(args)
        .arg("--output")
        .arg(out)
        .output()
        .unwrap()
}

fn tmp() -> (TempDir, PathBuf) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out");
    (dir, path)
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn read_json(path: &Path) -> Value {
    serde_json::from_slice(&std::fs::read(path).unwrap()).unwrap()
}

#[test]
fn dist_hadamard_one_step() {
    let (_d, out) = tmp();
    let o = qw2d(
        &["dist", "--coin", "hadamard", "--n", "1", "--init", "1,0,0,0,0,0,0,0"],
        &out,
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = std::fs::read_to_string(&out).unwrap();
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows[0], "x,y,p");
    assert_eq!(rows.len(), 5);
    for row in &rows[1..] {
        let p: f64 = row.rsplit(',').next().unwrap().parse().unwrap();
        assert!((p - 0.25).abs() < 1e-15, "{row}");
    }
    let summary: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(summary["time"], 1);
    assert!((summary["total"].as_f64().unwrap() - 1.0).abs() < 1e-15);
}

#[test]
fn dist_identity_coin_moves_left() {
    let (_d, out) = tmp();
    let o = qw2d(
        &["dist", "--coin", "identity", "--n", "3", "--init", "1,0,0,0,0,0,0,0"],
        &out,
    );
    assert!(o.status.success());
    assert_eq!(
        std::fs::read_to_string(&out).unwrap(),
        "x,y,p\n-3,0,1.0000000000000000e0\n"
    );
}

#[test]
fn dist_rejects_bad_preconditions() {
    let (_d, out) = tmp();
    for args in [
        &["dist", "--n", "-1"][..],
        &["dist", "--n", "2", "--init", "1,0,1,0,0,0,0,0"],
        &["dist", "--n", "2", "--coin", "1,0,1,0,1,0"],
        &["dist", "--n", "4", "--grid", "8"],
    ] {
        let o = qw2d(args, &out);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(stderr(&o).starts_with("error: "));
    }
    let o = qw2d(&["dist", "--n", "-1"], &out);
    assert!(stderr(&o).contains("n must be non-negative"));
    assert!(!out.exists());
}

#[test]
fn dist_momentum_route_and_json() {
    let (_d, out) = tmp();
    let direct = qw2d(&["dist", "--coin", "seed:4", "--n", "6"], &out);
    let a = std::fs::read_to_string(&out).unwrap();
    let fourier = qw2d(&["dist", "--coin", "seed:4", "--n", "6", "--grid", "13"], &out);
    let b = std::fs::read_to_string(&out).unwrap();
    assert!(direct.status.success() && fourier.status.success());
    let parse = |s: &str| -> Vec<(String, f64)> {
        s.lines()
            .skip(1)
            .map(|l| {
                let (site, p) = l.rsplit_once(',').unwrap();
                (site.to_string(), p.parse().unwrap())
            })
            .collect()
    };
    // Round-off can create or drop tiny nonzero sites; compare by site.
    let (pa, pb) = (parse(&a), parse(&b));
    for (site, p) in &pa {
        let q = pb.iter().find(|(s, _)| s == site).map_or(0.0, |x| x.1);
        assert!((p - q).abs() < 1e-12, "{site}");
    }

    let o = qw2d(&["dist", "--n", "2", "--format", "json"], &out);
    assert!(o.status.success());
    let rows = read_json(&out);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 13);
    assert_eq!(rows[0]["re"].as_array().unwrap().len(), 4);
}

#[test]
fn verify_prop2_small() {
    let (_d, out) = tmp();
    let o = qw2d(&["verify", "--suite", "prop2", "--coin", "hadamard", "--n", "3"], &out);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let reports = read_json(&out);
    for r in reports.as_array().unwrap() {
        assert_eq!(r["verdict"], "pass");
        assert!(r["residual"].as_f64().unwrap() < 1e-12);
        // serde_json parses without correct rounding; the text itself has 17 digits.
        assert!((r["tolerance"].as_f64().unwrap() - 1e-12).abs() < 1e-26);
        assert!(r["counterexamples"].as_array().unwrap().is_empty());
    }
}

#[test]
fn verify_cor5_records_literal_residuals() {
    let (_d, out) = tmp();
    let o = qw2d(&["verify", "--suite", "cor5", "--coin", "hadamard", "--n", "4"], &out);
    assert_eq!(o.status.code(), Some(0));
    let reports = read_json(&out);
    let literal: Vec<&Value> = reports
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["check"] == "cor5_literal")
        .collect();
    assert_eq!(literal.len(), 5);
    assert!(literal.iter().all(|r| r["verdict"] == "report-only"));
    assert!(literal
        .iter()
        .any(|r| !r["counterexamples"].as_array().unwrap().is_empty()));
    let coin = &reports[0]["params"]["coin"];
    assert_eq!(coin["delta"], serde_json::json!([-1.0, 0.0]));
}

#[test]
fn verify_rejects_guard_and_unknown_suite() {
    let (_d, out) = tmp();
    let o = qw2d(&["verify", "--suite", "thm3", "--n", "13"], &out);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("2^24"), "{}", stderr(&o));
    let o = qw2d(&["verify", "--suite", "thm9"], &out);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn conjecture6_runs_and_is_deterministic() {
    let (_d, out) = tmp();
    let first = qw2d(&["conjecture6", "--n", "2"], &out);
    let a = std::fs::read(&out).unwrap();
    let second = qw2d(&["conjecture6", "--n", "2"], &out);
    let b = std::fs::read(&out).unwrap();
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(second.status.code(), Some(0));
    assert_eq!(a, b);
    let report = &read_json(&out)[0];
    assert_eq!(report["check"], "conjecture6");
    assert_eq!(report["verdict"], "report-only");

    let o = qw2d(&["conjecture6", "--n", "9"], &out);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sigma_one_is_tensor_power() {
    let (_d, out) = tmp();
    let o = qw2d(
        &[
            "sigma",
            "--function",
            "one",
            "--n",
            "2",
            "--n-prime",
            "2",
            "--coin",
            "hadamard",
        ],
        &out,
    );
    assert!(o.status.success());
    let json = read_json(&out);
    let u2 = mat_power(&coin_hadamard().matrix(), 2);
    let expected = tensor_product(&u2, &u2).unwrap();
    for (i, z) in expected.entries().iter().enumerate() {
        assert!((json["re"][i].as_f64().unwrap() - z.re).abs() < 1e-12);
        assert!((json["im"][i].as_f64().unwrap() - z.im).abs() < 1e-12);
    }
}

#[test]
fn sigma_x_identity_coin_and_unknown_function() {
    let (_d, out) = tmp();
    let o = qw2d(
        &[
            "sigma",
            "--function",
            "x",
            "--coin",
            "identity",
            "--n",
            "2",
            "--n-prime",
            "0",
        ],
        &out,
    );
    assert!(o.status.success());
    let re: Vec<f64> = read_json(&out)["re"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect();
    let diag: Vec<f64> = (0..4).map(|i| re[5 * i]).collect();
    assert_eq!(diag, vec![-2.0, -2.0, 2.0, 2.0]);

    let o = qw2d(&["sigma", "--function", "cosh", "--n", "2"], &out);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("abs_x_plus_abs_y"));
}

#[test]
fn thread_cap_does_not_change_output() {
    let (_d, out) = tmp();
    let run = |threads: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_qw2d"));
        cmd.args(["verify", "--suite", "thm3", "--coin", "seed:9", "--n", "3", "--output"])
            .arg(&out);
        if let Some(t) = threads {
            cmd.env("QW2D_THREADS", t);
        }
        let status = cmd.output().unwrap().status;
        (status.code(), std::fs::read(&out).ok())
    };
    let (c1, a) = run(None);
    let (c2, b) = run(Some("1"));
    let (c3, c) = run(Some("3"));
    assert_eq!((c1, c2, c3), (Some(0), Some(0), Some(0)));
    assert_eq!(a, b);
    assert_eq!(b, c);
    assert_eq!(run(Some("0")).0, Some(2));
}
