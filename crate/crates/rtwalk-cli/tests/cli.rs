//! End-to-end checks of the command-line surface: formats, manifests,
//! determinism and exit codes.

use std::path::Path;
use std::process::{Command, Output};

fn rtwalk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rtwalk"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn rtwalk_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_rtwalk"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn spectrum_two_step_summary() {
    let out = rtwalk(&["spectrum", "--n", "5", "--f", "3", "--g", "2"]);
    assert!(out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("|S_M| = 36"), "{err}");
    assert!(err.contains("delta = 6"));
    let csv = stdout(&out);
    assert!(csv.starts_with("eig_adj,eig_p_num,eig_p_den,dim\n"));
    assert!(csv.contains("6,17,17,1"));
}

#[test]
fn spectrum_single_state_vector() {
    let out = rtwalk(&["spectrum", "--b", "1,2,3"]);
    assert!(out.status.success());
    let body = stdout(&out);
    let lines: Vec<&str> = body.trim().lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[1], "0,3,3,1");
}

#[test]
fn spectrum_three_class_vector_json() {
    let out = rtwalk(&["spectrum", "--b", "1,1,1,2,4", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["total_dim"], "36");
    assert_eq!(v["manifest"]["command"], "spectrum");
}

#[test]
fn spectrum_rejects_empty_vector_with_usage_exit() {
    let out = rtwalk(&["spectrum", "--b", "2,2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn spectrum_cap_exceeded_exit() {
    let out = rtwalk_env(&["spectrum", "--b", "1,1,1,1"], &[("RTWALK_CAP", "2")]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_quick_passes() {
    let out = rtwalk(&["verify", "--level", "quick"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["passed"], true);
    assert!(v["checks"].as_array().unwrap().len() >= 2);
}

#[test]
fn verify_unknown_level_is_usage_error() {
    let out = rtwalk(&["verify", "--level", "nope"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bounds_small_instance_with_fastmix_curve() {
    let out = rtwalk(&[
        "bounds", "--n", "300", "--f", "10", "--g", "1", "--c", "0", "--t-grid", "0:2000:1000",
    ]);
    assert!(out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("t_fast_mix = 14118.9"), "{err}");
    let csv = stdout(&out);
    assert!(csv.contains("t_chi_upper,0,"));
    assert!(csv.contains(",tv-lower-bound"));
    assert!(csv.contains(",chi-upper-bound"));
    // at t = 0 the fast-mix lower bound is 1 - 1/f = 0.9
    assert!(csv.contains("0,0.9,tv-lower-bound"));
}

#[test]
fn simulate_is_deterministic_and_writes_manifest() {
    let dir = std::env::temp_dir().join(format!("rtwalk-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("cfg.json");
    std::fs::write(
        &cfg,
        r#"{"b": [1,1,1,3,3], "t": 50, "record": [0, 25, 50], "reps": 400, "seed": 9}"#,
    )
    .unwrap();
    let out_a = dir.join("a.csv");
    let out_b = dir.join("b.csv");
    for out in [&out_a, &out_b] {
        let st = rtwalk(&[
            "simulate",
            "--config",
            cfg.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(st.status.success(), "{}", String::from_utf8_lossy(&st.stderr));
    }
    let a = std::fs::read(&out_a).unwrap();
    let b = std::fs::read(&out_b).unwrap();
    assert_eq!(a, b, "same seed must give byte-identical output");
    let manifest_path = dir.join("a.csv.manifest.json");
    assert!(Path::new(&manifest_path).exists());
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(manifest_path).unwrap()).unwrap();
    assert_eq!(manifest["seed"], 9);
    assert_eq!(manifest["command"], "simulate");
    let body = String::from_utf8(a).unwrap();
    assert!(body.starts_with("t,statistic,mean,ci99\n"));
    assert!(body.contains("0,small_fixed_points,2,"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn simulate_flag_form_and_zero_reps() {
    let ok = rtwalk(&[
        "simulate", "--n", "5", "--f", "3", "--g", "2", "--t", "10", "--reps", "50", "--seed", "3",
        "--format", "json",
    ]);
    assert!(ok.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&ok)).unwrap();
    assert_eq!(v["times"], serde_json::json!([10]));

    let bad = rtwalk(&[
        "simulate", "--n", "5", "--f", "3", "--g", "2", "--t", "10", "--reps", "0",
    ]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn missing_instance_is_usage_error() {
    let out = rtwalk(&["spectrum"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bounds_output_is_deterministic() {
    let args = [
        "bounds", "--n", "40", "--f", "6", "--g", "3", "--c", "2", "--t-grid", "0:60:20",
    ];
    let a = rtwalk(&args);
    let b = rtwalk(&args);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn bounds_rejects_bad_two_step_params() {
    let out = rtwalk(&["bounds", "--n", "10", "--f", "2", "--g", "5", "--c", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn simulate_output_is_independent_of_worker_count() {
    let args = [
        "simulate", "--n", "6", "--f", "4", "--g", "2", "--t", "30", "--reps", "700", "--seed",
        "17", "--format", "json",
    ];
    let one = rtwalk(&[&args[..], &["--workers", "1"]].concat());
    let four = rtwalk(&[&args[..], &["--workers", "4"]].concat());
    assert!(one.status.success() && four.status.success());
    assert_eq!(stdout(&one), stdout(&four));
}
