use serde_json::Value;
use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hyperising"));
    for (key, _) in std::env::vars() {
        if key.starts_with("HYPERISING_") {
            cmd.env_remove(key);
        }
    }
    cmd
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn report(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn complex(v: &Value) -> (f64, f64) {
    (v[0].as_f64().unwrap(), v[1].as_f64().unwrap())
}

fn temp_doc(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn without_timings(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timings_ms");
    v
}

#[test]
fn approx_single_edge() {
    let k2 = data("k2.json");
    let out = run(&["approx", k2.to_str().unwrap(), "--lambda", "0.3", "--epsilon", "0.01"]);
    let r = report(&out);
    assert_eq!(r["command"], "approx");
    assert_eq!(r["guarantee"], true);
    let (re, im) = complex(&r["result"]["z_hat"]);
    assert!(((re - 1.39).powi(2) + im * im).sqrt() <= 0.0139);
    assert_eq!(r["input_digest"].as_str().unwrap().len(), 64);
    assert!(r["timings_ms"].is_object());
}

#[test]
fn approx_inverts_outside_the_disk() {
    let k2 = data("k2.json");
    let r = report(&run(&["approx", k2.to_str().unwrap(), "--lambda", "3.3333333333333335,0", "--epsilon", "0.01"]));
    assert_eq!(r["result"]["inverted"], true);
    let (re, _) = complex(&r["result"]["z_hat"]);
    let exact = 100.0 / 9.0 + 10.0 / 3.0 + 1.0;
    assert!((re - exact).abs() <= 0.01 * exact);
}

#[test]
fn exit_codes() {
    let k2 = data("k2.json");
    let k2 = k2.to_str().unwrap();
    let circle = run(&["approx", k2, "--lambda", "1,0", "--epsilon", "0.1"]);
    assert_eq!(circle.status.code(), Some(2));
    assert!(circle.stdout.is_empty());
    assert!(String::from_utf8_lossy(&circle.stderr).contains("unit circle"));

    let missing = run(&["approx", "no-such-file.json", "--lambda", "0.3", "--epsilon", "0.1"]);
    assert_eq!(missing.status.code(), Some(1));
    assert!(missing.stdout.is_empty());

    let bad = temp_doc(r#"{"n": 2, "edges": [{"v": [0, 0], "beta": 0.5}]}"#);
    let out = run(&["zeros", bad.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());

    assert_eq!(run(&["approx", k2, "--lambda", "0.3,1,2", "--epsilon", "0.1"]).status.code(), Some(1));
    assert_eq!(run(&["approx", k2, "--lambda", "0.3", "--epsilon", "2"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));

    let capped = run(&["--m-cap", "1", "approx", k2, "--lambda", "0.5", "--epsilon", "0.1"]);
    assert_eq!(capped.status.code(), Some(2));
    assert!(capped.stdout.is_empty());

    let asym = temp_doc(
        r#"{"n": 2, "edges": [{"v": [0, 1], "phi": {"--": [1, 0], "+-": [0.2, 0], "-+": [0.3, 0], "++": [0.5, 0]}}]}"#,
    );
    let out = run(&["approx", asym.path().to_str().unwrap(), "--lambda", "2", "--epsilon", "0.1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn environment_mirrors_flags() {
    let k2 = data("k2.json");
    let k2 = k2.to_str().unwrap();
    let args = ["approx", k2, "--lambda", "0.5", "--epsilon", "0.1"];
    let env_only = bin().env("HYPERISING_M_CAP", "1").args(args).output().unwrap();
    assert_eq!(env_only.status.code(), Some(2));
    let flag_wins = bin()
        .env("HYPERISING_M_CAP", "1")
        .args(["--m-cap", "24"])
        .args(args)
        .output()
        .unwrap();
    assert!(flag_wins.status.success());
}

#[test]
fn zeros_of_the_boundary_three_edge() {
    let r = report(&run(&["zeros", data("single_3edge.json").to_str().unwrap()]));
    assert!(r["result"]["max_circle_deviation"].as_f64().unwrap() <= 1e-6);
    assert_eq!(r["result"]["pass"], true);
    assert_eq!(r["result"]["roots"].as_array().unwrap().len(), 3);
}

#[test]
fn check_range_verdicts() {
    let doc = temp_doc(r#"{"n": 5, "edges": [{"v": [0, 1, 2], "beta": 0.4}, {"v": [2, 3, 4], "beta": 0.4}]}"#);
    let r = report(&run(&["check-range", doc.path().to_str().unwrap()]));
    assert_eq!(r["result"]["all_pass"], true);
    let r = report(&run(&["check-range", data("out_of_range.json").to_str().unwrap()]));
    assert_eq!(r["result"]["all_pass"], false);
    assert_eq!(r["result"]["edges"][0]["criterion"], "ising-range");
}

#[test]
fn enumerate_path() {
    let r = report(&run(&["enumerate", data("path3.json").to_str().unwrap(), "--t", "2", "--sets"]));
    assert_eq!(r["result"]["counts"]["1"], 3);
    assert_eq!(r["result"]["counts"]["2"], 2);
    assert_eq!(r["result"]["sets"].as_array().unwrap().len(), 5);
}

#[test]
fn coeffs_of_single_edge() {
    let r = report(&run(&["coeffs", data("k2.json").to_str().unwrap(), "--m", "4"]));
    let e: Vec<(f64, f64)> = r["result"]["e"].as_array().unwrap().iter().map(complex).collect();
    assert_eq!(e.len(), 4);
    assert!((e[0].0 + 1.0).abs() < 1e-12 && (e[1].0 - 1.0).abs() < 1e-12);
    assert_eq!(e[2], (0.0, 0.0));
    let p: Vec<(f64, f64)> = r["result"]["p"].as_array().unwrap().iter().map(complex).collect();
    assert!((p[1].0 + 1.0).abs() < 1e-12);
}

#[test]
fn tight_example_quadratic() {
    let r = report(&run(&["tight-example", "--k", "2", "--beta", "1.5"]));
    assert_eq!(r["result"]["k_used"], 2);
    assert!(r["result"]["deviation"].as_f64().unwrap() > 1e-4);
    let r = report(&run(&["tight-example", "--k", "3", "--beta", "-0.4"]));
    assert!(r["result"]["sign_change"]["p_at_1"].as_f64().unwrap() < 0.0);
    assert_eq!(run(&["tight-example", "--k", "3", "--beta", "0.5"]).status.code(), Some(1));
}

#[test]
fn exact_values() {
    let r = report(&run(&["exact", data("k2.json").to_str().unwrap(), "--lambda", "0.3"]));
    let (re, im) = complex(&r["result"]["z"]);
    assert!((re - 1.39).abs() < 1e-12 && im == 0.0);
}

#[test]
fn reports_ignore_worker_count() {
    let grid = data("grid3x4.json");
    let mixed = data("mixed14.json");
    let cases: Vec<Vec<&str>> = vec![
        vec!["approx", grid.to_str().unwrap(), "--lambda", "0.5,0.5", "--epsilon", "0.01"],
        vec!["coeffs", mixed.to_str().unwrap(), "--m", "8"],
        vec!["zeros", mixed.to_str().unwrap()],
        vec!["enumerate", mixed.to_str().unwrap(), "--t", "6", "--sets"],
        vec!["sweep", "--count", "5", "--max-n", "9", "--seed", "3"],
    ];
    for args in cases {
        let one = report(&bin().arg("--threads").arg("1").args(&args).output().unwrap());
        let four = report(&bin().arg("--threads").arg("4").args(&args).output().unwrap());
        assert_eq!(without_timings(one), without_timings(four), "{args:?}");
    }
}

#[test]
fn sweep_is_seeded() {
    let a = report(&run(&["sweep", "--count", "4", "--max-n", "8", "--seed", "11"]));
    let b = report(&run(&["sweep", "--count", "4", "--max-n", "8", "--seed", "11"]));
    assert_eq!(without_timings(a.clone()), without_timings(b));
    assert_eq!(a["result"]["instances"].as_array().unwrap().len(), 4);
    let out = report(&run(&["sweep", "--count", "3", "--beta-lo", "-0.9", "--beta-hi", "-0.5"]));
    assert!(out["result"]["worst_deviation_out_of_range"].as_f64().unwrap() >= 0.0);
}
