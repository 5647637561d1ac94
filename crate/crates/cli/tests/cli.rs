//! End-to-end runs of the `latnorm` binary.

use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    json: Value,
}

fn latnorm(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_latnorm")).args(args).output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let json = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    Run {
        code: out.status.code().unwrap(),
        stdout,
        json,
    }
}

/// A scratch directory unique to one test.
fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("latnorm-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

const P: &str = r#"{"dim": 2, "xi1": [-0.2, -0.2], "xi2": [[0.1, 0.0], [0.0, 0.2]]}"#;
const Q: &str = r#"{"dim": 2, "xi1": [0.2, 0.2], "xi2": [0.15, 0.0, 0.0, 0.25]}"#;

fn f(v: &Value) -> f64 {
    v.as_f64().unwrap()
}

#[test]
fn reproduce_reports_reference_values() {
    let r = latnorm(&["reproduce"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json["command"], "reproduce");
    assert_eq!(r.json["pass"], true);
    assert!((f(&r.json["bhattacharyya"]) - 1.6259948590224578).abs() < 1e-6);
    assert!((f(&r.json["kl"]) - 7.841371347366552).abs() < 1e-4);
    assert!(r.json["config"]["eps"].is_number());
}

#[test]
fn self_kl_is_zero() {
    let dir = scratch("selfkl");
    let p = write(&dir, "p.json", P);
    let r = latnorm(&["divergence", "--kind", "kl", "-p", &p, "-q", &p]);
    assert_eq!(r.code, 0);
    assert_eq!(f(&r.json["value"]), 0.0);
}

#[test]
fn divergence_agrees_with_oracle() {
    let dir = scratch("oracle");
    let p = write(&dir, "p.json", P);
    let q = write(&dir, "q.json", Q);
    for (kind, extra) in [
        ("renyi", vec!["--alpha", "0.5"]),
        ("sharma-mittal", vec!["--alpha", "0.7", "--beta", "0.4"]),
        ("gamma", vec!["--gamma", "1.5"]),
        ("cauchy-schwarz", vec![]),
    ] {
        let mut args = vec!["divergence", "--kind", kind, "-p", &p, "-q", &q, "--oracle"];
        args.extend(extra);
        let r = latnorm(&args);
        assert_eq!(r.code, 0, "{}", r.stdout);
        let (v, o) = (f(&r.json["value"]), f(&r.json["oracle_value"]));
        assert!((v - o).abs() <= 1e-8 * o.abs().max(1.0), "{kind}: {v} vs {o}");
    }
}

#[test]
fn theta_of_unit_form() {
    let dir = scratch("theta");
    let p = write(&dir, "p.json", r#"{"dim": 1, "xi1": [0.0], "xi2": [[1.0]]}"#);
    let r = latnorm(&["theta", "-p", &p, "--eps", "1e-14"]);
    assert_eq!(r.code, 0);
    assert!((f(&r.json["value"]) - 1.086_434_811_213_308).abs() < 1e-15);
    assert!(f(&r.json["tail_bound"]) <= 1e-14);
    assert_eq!(f(&r.json["config"]["eps"]), 1e-14);
    assert!(r.json["points_used"].as_u64().unwrap() >= 3);
}

#[test]
fn pmf_on_and_off_the_lattice() {
    let dir = scratch("pmf");
    let p = write(&dir, "p.json", r#"{"dim": 1, "xi1": [0.0], "xi2": [[1.0]]}"#);
    let r = latnorm(&["pmf", "-p", &p, "--point", "0"]);
    assert_eq!(r.code, 0);
    assert!((f(&r.json["pmf"]) - 1.0 / 1.086_434_811_213_308).abs() < 1e-14);
    assert_eq!(f(&r.json["unnormalized"]), 1.0);
    let shifted = write(&dir, "s.json", r#"{"dim": 1, "xi1": [0.0], "xi2": [[1.0]], "shift": [0.5]}"#);
    let r = latnorm(&["pmf", "-p", &shifted, "--point", "1"]);
    assert_eq!(r.code, 2);
    assert!(r.json["error"]["message"].is_string());
    let r = latnorm(&["pmf", "-p", &shifted, "--point", "-0.5"]);
    assert_eq!(r.code, 0);
}

#[test]
fn convert_round_trip() {
    let dir = scratch("convert");
    let m = write(&dir, "m.json", r#"{"dim": 2, "mu": [0.3, -0.2], "sigma": [[0.6, 0.1], [0.1, 0.4]]}"#);
    let r = latnorm(&["convert", "--to", "natural", "-p", &m]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert!(r.json["iterations"].as_u64().unwrap() >= 1);
    let nat = write(&dir, "n.json", &r.json["natural"].to_string());
    let back = latnorm(&["convert", "--to", "moment", "-p", &nat]);
    assert_eq!(back.code, 0);
    let mu = back.json["moment"]["mu"].as_array().unwrap();
    assert!((f(&mu[0]) - 0.3).abs() < 1e-8 && (f(&mu[1]) + 0.2).abs() < 1e-8);
    let s = back.json["moment"]["sigma"].as_array().unwrap();
    assert!((f(&s[0][1]) - 0.1).abs() < 1e-8 && (f(&s[1][1]) - 0.4).abs() < 1e-8);
}

#[test]
fn unrealizable_moments_exit_with_numerical_error() {
    // A half-integer mean forces variance ≥ 1/4 on Z.
    let dir = scratch("unreal");
    let m = write(&dir, "m.json", r#"{"dim": 1, "mu": [0.5], "sigma": [[0.01]]}"#);
    let r = latnorm(&["convert", "--to", "natural", "-p", &m]);
    assert_eq!(r.code, 3, "{}", r.stdout);
    assert_eq!(r.json["error"]["kind"], "numerical");
}

#[test]
fn sampling_is_seed_deterministic_and_config_replays() {
    let dir = scratch("sample");
    let p = write(&dir, "p.json", P);
    for method in ["exact", "h1", "h2"] {
        let a = latnorm(&["sample", "-p", &p, "-n", "50", "--method", method, "--seed", "9"]);
        let b = latnorm(&["sample", "-p", &p, "-n", "50", "--method", method, "--seed", "9"]);
        assert_eq!(a.code, 0, "{}", a.stdout);
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(a.json["points"].as_array().unwrap().len(), 50);
        // Replay from the echoed configuration alone.
        let cfg = &a.json["config"];
        let replay_params = write(&dir, &format!("replay-{method}.json"), &cfg["p"]["params"].to_string());
        let n = cfg["n"].to_string();
        let seed = cfg["seed"].to_string();
        let eps = cfg["eps"].to_string();
        let m = cfg["method"].as_str().unwrap();
        let c = latnorm(&["sample", "-p", &replay_params, "-n", &n, "--method", m, "--seed", &seed, "--eps", &eps]);
        assert_eq!(a.json["points"], c.json["points"]);
    }
    let d = latnorm(&["sample", "-p", &p, "-n", "50", "--seed", "10"]);
    let a = latnorm(&["sample", "-p", &p, "-n", "50", "--seed", "9"]);
    assert_ne!(a.json["points"], d.json["points"]);
}

#[test]
fn csv_samples_feed_mle() {
    let dir = scratch("mle");
    let p = write(&dir, "p.json", r#"{"dim": 2, "mu": [1.0, -0.5], "sigma": [[1.5, 0.3], [0.3, 0.8]]}"#);
    let r = latnorm(&["sample", "-p", &p, "-n", "20000", "--seed", "3", "--csv"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with("x1,x2\n"));
    assert_eq!(r.stdout.lines().count(), 20_001);
    let csv = write(&dir, "s.csv", &r.stdout);
    let fit = latnorm(&["mle", "--data", &csv]);
    assert_eq!(fit.code, 0, "{}", fit.stdout);
    let mu = fit.json["moment"]["mu"].as_array().unwrap();
    assert!((f(&mu[0]) - 1.0).abs() < 0.05 && (f(&mu[1]) + 0.5).abs() < 0.05);
    assert!(fit.json["natural"]["xi2"].is_array());
}

#[test]
fn degenerate_sample_is_a_numerical_error() {
    let dir = scratch("degenerate");
    let csv = write(&dir, "z.csv", "x1\n0\n0\n0\n");
    let r = latnorm(&["mle", "--data", &csv]);
    assert_eq!(r.code, 3);
    let bad = write(&dir, "b.csv", "y1\n0\n");
    assert_eq!(latnorm(&["mle", "--data", &bad]).code, 2);
}

#[test]
fn chernoff_symmetric_pair() {
    let dir = scratch("chernoff");
    let p = write(&dir, "p.json", r#"{"dim": 1, "xi1": [0.3], "xi2": [[0.4]]}"#);
    let q = write(&dir, "q.json", r#"{"dim": 1, "xi1": [-0.3], "xi2": [[0.4]]}"#);
    let r = latnorm(&["chernoff", "-p", &p, "-q", &q]);
    assert_eq!(r.code, 0);
    assert!((f(&r.json["alpha_star"]) - 0.5).abs() < 1e-6);
    assert!(f(&r.json["value"]) > 0.0);
}

#[test]
fn malformed_inputs_exit_two_with_json_error() {
    let dir = scratch("bad");
    let both = write(&dir, "both.json", r#"{"dim": 1, "xi1": [0.0], "xi2": [[1.0]], "mu": [0.0], "sigma": [[1.0]]}"#);
    let not_pd = write(&dir, "npd.json", r#"{"dim": 2, "xi1": [0, 0], "xi2": [[1, 2], [2, 1]]}"#);
    let wrong_dim = write(&dir, "dim.json", r#"{"dim": 2, "xi1": [0], "xi2": [[1, 0], [0, 1]]}"#);
    let garbage = write(&dir, "g.json", "{not json");
    let good = write(&dir, "p.json", P);
    let cases: Vec<Vec<&str>> = vec![
        vec!["theta", "-p", &both],
        vec!["theta", "-p", &not_pd],
        vec!["theta", "-p", &wrong_dim],
        vec!["theta", "-p", &garbage],
        vec!["theta", "-p", "/nonexistent/p.json"],
        vec!["theta", "-p", &good, "--eps", "-1"],
        vec!["divergence", "--kind", "nonsense", "-p", &good, "-q", &good],
        vec!["divergence", "--kind", "renyi", "-p", &good, "-q", &good],
        vec!["pmf", "-p", &good, "--point", "1"],
        vec!["frobnicate"],
        vec![],
    ];
    for args in cases {
        let r = latnorm(&args);
        assert_eq!(r.code, 2, "{args:?}: {}", r.stdout);
        assert!(r.json["error"]["message"].is_string(), "{args:?}");
    }
}

#[test]
fn help_exits_zero() {
    let r = latnorm(&["--help"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("reproduce"));
}
