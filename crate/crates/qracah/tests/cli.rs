use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs").join(name)
}

fn scratch(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli").join(name);
    let _ = std::fs::remove_dir_all(&dir);
    dir
}

fn qracah(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qracah")).args(args).output().expect("binary runs")
}

fn run_in(sub: &str, conf: &str, out: &Path, extra: &[&str]) -> Output {
    let c = config(conf);
    let mut args = vec![sub, "--config", c.to_str().unwrap(), "--out", out.to_str().unwrap()];
    args.extend_from_slice(extra);
    qracah(&args)
}

#[test]
fn weights_csv_has_one_row_per_weight() {
    let out = scratch("weights");
    let o = run_in("weights", "a.conf", &out, &[]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(out.join("grid.csv")).unwrap();
    assert_eq!(csv.lines().count(), 15);
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out.join("weights.json")).unwrap()).unwrap();
    assert!(json.is_object());
}

#[test]
fn outputs_are_deterministic() {
    let (a, b) = (scratch("det-a"), scratch("det-b"));
    for out in [&a, &b] {
        assert!(run_in("poly", "b.conf", out, &["--seed", "5"]).status.success());
    }
    for file in ["polynomials.json", "values.csv"] {
        assert_eq!(std::fs::read(a.join(file)).unwrap(), std::fs::read(b.join(file)).unwrap(), "{file}");
    }
}

#[test]
fn verify_passes_and_reports() {
    let out = scratch("verify");
    let o = run_in("verify", "a.conf", &out, &["--suite", "flip", "--suite", "gram"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    let text = report.to_string();
    assert!(text.contains("\"flip\"") && text.contains("params_hash"));
}

#[test]
fn impossible_tolerance_fails_verify() {
    let out = scratch("strict");
    let o = run_in("verify", "a.conf", &out, &["--suite", "exterior", "--tol", "1e-30"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn bad_input_exits_with_two() {
    let out = scratch("bad");
    assert_eq!(run_in("weights", "a.conf", &out, &["--precision", "extended"]).status.code(), Some(2));
    assert_eq!(qracah(&["weights", "--config", "/nonexistent.conf"]).status.code(), Some(2));
    assert_eq!(run_in("verify", "a.conf", &out, &["--suite", "no-such-suite"]).status.code().map(|c| c != 0), Some(true));
}

#[test]
fn racah_and_limit_run() {
    let out = scratch("racah");
    assert!(run_in("racah", "r.conf", &out, &[]).status.success());
    assert!(out.join("racah_kernel.csv").exists());
    assert!(run_in("limit", "r.conf", &out, &[]).status.success());
    assert!(out.join("limit.json").exists());
}

#[test]
fn transform_writes_kernels() {
    let out = scratch("transform");
    let o = run_in("transform", "sd.conf", &out, &[]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(out.join("transform.json").exists());
}
