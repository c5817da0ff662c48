use std::path::Path;
use std::process::Command;

use serde_json::Value;

fn zetaforge(dir: &Path, args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_zetaforge"))
        .args(args)
        .current_dir(dir)
        .env_remove("ZETAFORGE_PRESETS")
        .output()
        .expect("binary runs");
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap_or(-1), v)
}

fn scratch() -> tempfile::TempDir {
    tempfile::tempdir().unwrap()
}

#[test]
fn delta_antisymmetry_verified() {
    let d = scratch();
    let (code, v) = zetaforge(
        d.path(),
        &[
            "--no-timing",
            "verify",
            "delta-antisym",
            "--kind",
            "unitary-inert",
            "--m",
            "7",
        ],
    );
    assert_eq!(code, 0);
    assert_eq!(v["command"], "verify delta-antisym");
    assert_eq!(v["result"]["status"], "verified");
    assert_eq!(v["result"]["witness"], "0");
    assert_eq!(v["elapsed_ms"], 0);
}

#[test]
fn eps_has_three_entries() {
    let d = scratch();
    let (code, v) = zetaforge(
        d.path(),
        &[
            "--no-timing",
            "orbits",
            "eps",
            "--j",
            "2",
            "--ell",
            "1",
            "--mtilde",
            "3",
            "--kind",
            "unitary-inert",
        ],
    );
    assert_eq!(code, 0);
    let pairs: Vec<(u64, u64)> = v["result"]["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["alpha"].as_u64().unwrap(), e["beta"].as_u64().unwrap()))
        .collect();
    assert_eq!(pairs, vec![(0, 1), (0, 2), (1, 2)]);
}

#[test]
fn tensor_factor_rendering() {
    let d = scratch();
    let (code, v) = zetaforge(
        d.path(),
        &[
            "--no-timing",
            "lfactor",
            "tensor",
            "--kind",
            "unitary-inert",
            "--m",
            "5",
            "--ell",
            "1",
            "--j",
            "1",
        ],
    );
    assert_eq!(code, 0);
    assert_eq!(v["result"]["polynomial"], "[(1 - x1*m1*u)(1 - x1*m1^-1*u)]^-1");
}

#[test]
fn output_is_deterministic_without_timing() {
    let d = scratch();
    let args = [
        "--no-timing",
        "verify",
        "main",
        "--kind",
        "unitary-inert",
        "--m",
        "5",
        "--ell",
        "1",
    ];
    let (c1, v1) = zetaforge(d.path(), &args);
    let (c2, v2) = zetaforge(d.path(), &args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(v1, v2);
    assert_eq!(v1["result"]["status"], "verified");
}

#[test]
fn usage_errors_exit_two() {
    let d = scratch();
    let (code, v) = zetaforge(d.path(), &["--bogus"]);
    assert_eq!(code, 2);
    assert!(v["error"].is_string());
    let (code, v) = zetaforge(d.path(), &["lfactor", "zeta", "--kind", "so-odd", "--m", "7"]);
    assert_eq!(code, 2);
    assert!(v["error"].as_str().unwrap().contains("so-odd"));
    let (code, _) = zetaforge(
        d.path(),
        &["verify", "main", "--kind", "unitary-inert", "--m", "5", "--ell", "7"],
    );
    assert_eq!(code, 2);
}

#[test]
fn preset_from_working_directory() {
    let d = scratch();
    std::fs::write(
        d.path().join("zetaforge.presets"),
        "u32 = kind=unitary-inert m=5 ell=1 j=2\n",
    )
    .unwrap();
    let (code, v) = zetaforge(d.path(), &["--no-timing", "lfactor", "d", "--preset", "u32"]);
    assert_eq!(code, 0);
    assert_eq!(v["context"]["kind"], "unitary-inert");
    assert_eq!(v["context"]["m"], 5);
    assert_eq!(v["context"]["ell"], 1);
    assert_eq!(v["context"]["j"], 2);
}

#[test]
fn preset_file_from_environment() {
    let d = scratch();
    let file = d.path().join("elsewhere.presets");
    std::fs::write(&file, "# comment\nsplit5 = kind=unitary-split m=5 ell=1 j=2\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_zetaforge"))
        .args(["--no-timing", "verify", "q-identity", "--preset", "split5"])
        .current_dir(d.path())
        .env("ZETAFORGE_PRESETS", &file)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["context"]["kind"], "unitary-split");
}

#[test]
fn missing_preset_file_is_fine_without_preset() {
    let d = scratch();
    let (code, _) = zetaforge(
        d.path(),
        &["--no-timing", "lfactor", "zeta", "--kind", "unitary-inert", "--m", "5"],
    );
    assert_eq!(code, 0);
    let (code, v) = zetaforge(d.path(), &["lfactor", "zeta", "--preset", "nothing"]);
    assert_eq!(code, 2);
    assert!(v["error"].is_string());
}

#[test]
fn duplicate_preset_names_exit_two() {
    let d = scratch();
    std::fs::write(
        d.path().join("zetaforge.presets"),
        "a = kind=unitary-inert m=5 ell=1 j=2\na = kind=unitary-inert m=7 ell=1 j=2\n",
    )
    .unwrap();
    let (code, v) = zetaforge(d.path(), &["lfactor", "d", "--preset", "a"]);
    assert_eq!(code, 2);
    assert!(v["error"].as_str().unwrap().contains("line 2"));
}
