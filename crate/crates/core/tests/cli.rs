//! End-to-end runs of the `exact-integral` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_exact-integral"))
}

fn spec(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/specs").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn scratch(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("exact-integral-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn integrate_reports_the_step_integral() {
    let out = run(&["integrate", "--spec", spec("step_integrate.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report = json(&out);
    assert_eq!(report["task"], "integrate_mi");
    assert_eq!(report["value"], "5/2");
    assert_eq!(report["class"], "integrable");
}

#[test]
fn compare_on_the_identity_is_within_bound() {
    let p = spec("identity_compare.json");
    let out = run(&["compare", "--spec", p.to_str().unwrap(), "--depth", "20", "--eta", "1/1024"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["mi"], "1/2");
    assert_eq!(report["gap_within_bound"], true);
    assert_eq!(report["certificate_holds"], true);
    assert_eq!(report["pointwise_ok"], true);
}

#[test]
fn every_example_task_file_exits_as_expected() {
    for entry in std::fs::read_dir(spec("")).unwrap() {
        let path = entry.unwrap().path();
        let out = run(&["integrate", "--spec", path.to_str().unwrap()]);
        let expected = if path.ends_with("mismatched_set.json") { 1 } else { 0 };
        assert_eq!(out.status.code(), Some(expected), "{}", path.display());
    }
}

#[test]
fn table_writes_csv() {
    let dir = scratch("table");
    let out_path = dir.join("tent.csv");
    let out = run(&[
        "table",
        "--spec",
        spec("tent_table.json").to_str().unwrap(),
        "--max-level",
        "5",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(&out_path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("n,integral,integral_decimal,gap,gap_decimal,bound,bound_decimal"));
    assert_eq!(lines.count(), 5);
    assert_eq!(json(&out)["all_within_bound"], true);
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn validation_errors_exit_with_one() {
    let missing = run(&["integrate", "--spec", "/nonexistent/task.json"]);
    assert_eq!(missing.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&missing.stderr).starts_with("validation error:"));

    let mismatched = run(&["integrate", "--spec", spec("mismatched_set.json").to_str().unwrap()]);
    assert_eq!(mismatched.status.code(), Some(1));

    let p = spec("identity_compare.json");
    let bad_eta = run(&["compare", "--spec", p.to_str().unwrap(), "--depth", "4", "--eta", "1/0"]);
    assert_eq!(bad_eta.status.code(), Some(1));
    let negative_eta = run(&["compare", "--spec", p.to_str().unwrap(), "--depth", "4", "--eta", "-1/2"]);
    assert_eq!(negative_eta.status.code(), Some(1));
    let deep = run(&["compare", "--spec", p.to_str().unwrap(), "--depth", "31", "--eta", "0"]);
    assert_eq!(deep.status.code(), Some(1));

    assert_eq!(run(&["gen", "--family", "fractal", "--seed", "1", "--count", "1"]).status.code(), Some(1));
    assert_eq!(run(&["integrate"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));

    let dir = scratch("invalid");
    let path = dir.join("unknown_key.json");
    std::fs::write(&path, r#"{"space": {"type": "lebesgue"}, "function": {"type": "simple", "terms": []}, "task": "integrate_mi", "extra": 1}"#).unwrap();
    let out = run(&["integrate", "--spec", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn unwritable_table_output_exits_with_two() {
    let out = run(&[
        "table",
        "--spec",
        spec("tent_table.json").to_str().unwrap(),
        "--max-level",
        "3",
        "--out",
        "/nonexistent/dir/t.csv",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("computation error:"));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let p = spec("identity_compare.json");
    let args = ["compare", "--spec", p.to_str().unwrap(), "--depth", "12", "--eta", "1/1024"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let gen = ["gen", "--family", "series", "--seed", "42", "--count", "3"];
    let (a, b) = (run(&gen), run(&gen));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let other = run(&["gen", "--family", "series", "--seed", "43", "--count", "3"]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn generated_task_files_run() {
    let dir = scratch("gen");
    for family in ["simple", "piecewise_linear", "vector_simple", "series"] {
        let out = run(&["gen", "--family", family, "--seed", "7", "--count", "3"]);
        assert_eq!(out.status.code(), Some(0));
        let specs = json(&out);
        assert_eq!(specs.as_array().unwrap().len(), 3);
        for (k, s) in specs.as_array().unwrap().iter().enumerate() {
            let path = dir.join(format!("{family}-{k}.json"));
            std::fs::write(&path, s.to_string()).unwrap();
            let out = run(&["integrate", "--spec", path.to_str().unwrap()]);
            assert_eq!(out.status.code(), Some(0), "{family}-{k}: {}", String::from_utf8_lossy(&out.stderr));
        }
    }
    std::fs::remove_dir_all(dir).ok();
}
