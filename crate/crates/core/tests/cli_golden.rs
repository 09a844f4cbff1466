mod common;

use std::process::Command;

use common::*;

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sigma-product"))
}

#[test]
fn golden_files_match() {
    let specs = golden_specs();
    assert!(specs.len() >= 12);
    for spec in specs {
        let expected = std::fs::read_to_string(expected_path(&spec)).unwrap();
        assert_eq!(run_binary(&spec), expected, "{}", spec.display());
    }
}

#[test]
fn errors_use_stderr_only() {
    for spec in golden_specs() {
        let mut cmd = binary();
        cmd.arg("run").arg(&spec);
        if spec.to_string_lossy().ends_with(".json.spec") {
            cmd.args(["--format", "json"]);
        }
        let out = cmd.output().unwrap();
        let code = out.status.code().unwrap();
        if code == 2 {
            assert!(out.stdout.is_empty(), "{}", spec.display());
            assert!(!out.stderr.is_empty());
        } else {
            assert!(out.stderr.is_empty(), "{}", spec.display());
            assert!(code == 0 || code == 1);
        }
    }
}

#[test]
fn missing_file_is_an_io_error() {
    let out = binary()
        .args(["run", "/nonexistent/x.spec"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .starts_with("error: IoError: "));
}

#[test]
fn size_limit_from_environment() {
    let spec = golden_dir().join("component_tabulated.spec");
    let out = binary()
        .arg("run")
        .arg(&spec)
        .env("SIGMA_PRODUCT_SIZE_LIMIT", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .starts_with("error: SizeLimit: "));
    let out = binary()
        .arg("run")
        .arg(&spec)
        .env("SIGMA_PRODUCT_SIZE_LIMIT", "8")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}
