//! End-to-end checks of the binary: exit codes, bundled configs,
//! reproducible outputs, and manifest integrity.

use std::fs;
use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_unruh"))
}

fn run_ok(args: &[&str]) {
    let out = bin().args(args).output().unwrap();
    assert!(
        out.status.success(),
        "command {:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
}

const MINI_MAP: &str = r#"
[pulse]
shape = "gaussian"
gamma_max = 1.6
width = 1.0

[map]
k_min = 0.2
k_max = 1.2
k_points = 5
theta_points = 6

[output]
directory = "unused"
"#;

#[test]
fn config_schema_violation_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    fs::write(&cfg, format!("{MINI_MAP}\nmystery_knob = 3\n")).unwrap();
    let out = bin()
        .args(["map", "--config", cfg.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("line"), "diagnostic lacks location: {stderr}");
}

#[test]
fn empty_sweep_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sweep.toml");
    fs::write(
        &cfg,
        r#"
[pulse]
shape = "gaussian"
gamma_max = 1.5
width = 1.0

[sweep]
parameter = "e0"
values = []
observables = ["gamma_max"]
"#,
    )
    .unwrap();
    let out = bin()
        .args(["sweep", "--config", cfg.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_config_exits_4() {
    let out = bin()
        .args(["trajectory", "--config", "/no/such/file.toml"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn unreachable_tolerance_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("map.toml");
    fs::write(
        &cfg,
        r#"
[pulse]
shape = "gaussian"
gamma_max = 1.6
width = 1.0

[map]
k_min = 0.4
k_max = 0.8
k_points = 2
theta_points = 2
"#,
    )
    .unwrap();
    let out = bin()
        .args([
            "map",
            "--config",
            cfg.to_str().unwrap(),
            "--out",
            dir.path().join("out").to_str().unwrap(),
            "--tolerance-scale",
            "1e-12",
        ])
        .output()
        .unwrap();
    assert_eq!(
        out.status.code(),
        Some(3),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    // failing cells are listed
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("cells"), "{stderr}");
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("map.toml");
    fs::write(&cfg, MINI_MAP).unwrap();
    let out_a = dir.path().join("a");
    let out_b = dir.path().join("b");
    for out in [&out_a, &out_b] {
        run_ok(&[
            "map",
            "--config",
            cfg.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
        ]);
    }
    for name in ["quantum.csv", "classical.csv", "ratio.csv", "quantum.pgm"] {
        let a = fs::read(out_a.join(name)).unwrap();
        let b = fs::read(out_b.join(name)).unwrap();
        assert_eq!(a, b, "{name} differs between runs");
    }
}

#[test]
fn manifest_checksums_every_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    run_ok(&[
        "trajectory",
        "--config",
        "trajectory",
        "--out",
        out.to_str().unwrap(),
    ]);
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
    let files = manifest["files"].as_array().unwrap();
    assert!(!files.is_empty());
    let mut listed = Vec::new();
    for entry in files {
        let name = entry["file"].as_str().unwrap();
        listed.push(name.to_string());
        let body = fs::read(out.join(name)).unwrap();
        let digest = {
            use sha2::{Digest, Sha256};
            let mut h = Sha256::new();
            h.update(&body);
            h.finalize().iter().map(|b| format!("{b:02x}")).collect::<String>()
        };
        assert_eq!(entry["sha256"].as_str().unwrap(), digest, "{name}");
        assert_eq!(entry["bytes"].as_u64().unwrap() as usize, body.len());
    }
    // every non-manifest output is listed
    for f in fs::read_dir(&out).unwrap() {
        let name = f.unwrap().file_name().into_string().unwrap();
        if name != "manifest.json" {
            assert!(listed.contains(&name), "{name} missing from manifest");
        }
    }
    assert!(manifest["config_hash"].as_str().unwrap().len() == 64);
}

#[test]
fn env_var_overrides_output_directory() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("from_env");
    let status = bin()
        .args(["vacuum", "--config", "vacuum"])
        .env("UNRUH_OUT_DIR", out.to_str().unwrap())
        .status()
        .unwrap();
    assert!(status.success());
    assert!(out.join("manifest.json").exists());
}

#[test]
fn bundled_configs_parse_and_static_fixture_meets_tolerance() {
    for (name, text) in unruh::cli::BUNDLED_CONFIGS {
        unruh::cli::RunConfig::parse(text).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fixture");
    run_ok(&[
        "map",
        "--config",
        "static_fixture",
        "--out",
        out.to_str().unwrap(),
        "--threads",
        "2",
    ]);
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
    let max_rel = manifest["max_rel_error"].as_f64().unwrap();
    assert!(max_rel < 1e-8, "static fixture max rel error {max_rel:.2e}");
    assert!(csv_rows(&out.join("static_fixture.csv")) == 400);
}

fn csv_rows(path: &Path) -> usize {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#'))
        .count()
        - 1 // header
}
