//! End-to-end checks of the command-line tool: determinism, config
//! round-tripping, the documented reference outputs, and exit codes.

use std::path::PathBuf;
use std::process::Command;

use spinflux_cli::config::{PartialConfig, RunConfig, SubcommandKind};
use spinflux_cli::execute;

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_spinflux"))
}

fn temp_path(tag: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("spinflux-test-{}-{tag}", std::process::id()));
    p
}

fn resolve(sub: SubcommandKind, partial: PartialConfig) -> RunConfig {
    RunConfig::resolve(sub, partial).expect("valid config")
}

#[test]
fn repeated_runs_are_byte_identical() {
    let config = resolve(
        SubcommandKind::Square,
        PartialConfig {
            n_grid: Some(50),
            ..Default::default()
        },
    );
    let first = execute(&config).unwrap();
    let second = execute(&config).unwrap();
    assert_eq!(first, second);
    assert_eq!(first.lines().count(), 51); // header + 50 rows
}

#[test]
fn config_json_round_trip_reproduces_the_output() {
    let config = resolve(
        SubcommandKind::Ring,
        PartialConfig {
            theta_r: Some(0.9),
            phi_b: Some(0.13),
            n_grid: Some(25),
            ..Default::default()
        },
    );
    let direct = execute(&config).unwrap();

    // Serialize the resolved config, read it back as a config file, resolve
    // with no flag overrides, and run again.
    let text = serde_json::to_string(&config).unwrap();
    let reread: PartialConfig = serde_json::from_str(&text).unwrap();
    let resolved = RunConfig::resolve(SubcommandKind::Ring, reread).unwrap();
    assert_eq!(config, resolved);
    assert_eq!(direct, execute(&resolved).unwrap());
}

#[test]
fn design_square_prints_the_filter_point() {
    let out = binary()
        .args(["design", "--square"])
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["phi_b"], 0.25);
    let theta_l = value["theta_l"].as_f64().unwrap();
    assert!((theta_l - 1.997_874_913_187_372_5).abs() < 1e-12);
}

#[test]
fn design_ring_prints_filter_and_material() {
    let out = binary()
        .args(["design", "--ring", "--n", "0", "--m", "0"])
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    let value: serde_json::Value =
        serde_json::from_str(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(value["phi_b"], 0.25);
    let theta_r = value["theta_r"].as_f64().unwrap();
    assert!((theta_r - 1.118_033_988_749_895).abs() < 1e-12);
    let radius = value["material"]["radius_m"].as_f64().unwrap();
    assert!((radius - 40e-9).abs() / 40e-9 < 0.15);
}

#[test]
fn spin_independent_square_in_the_fallback_basis() {
    // θl = 0 leaves the loop phase spin-degenerate, so the analyzer falls
    // back to σz and the device is spin-diagonal with equal channels.
    let out = binary()
        .args(["square", "--theta-l", "0", "--phi-b", "0", "--n-grid", "3"])
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 4);
    for row in &rows[1..] {
        let cells: Vec<f64> = row
            .split(',')
            .map(|c| c.parse::<f64>().unwrap())
            .collect();
        let (t_uu, t_ud, t_du, t_dd) = (cells[1], cells[2], cells[3], cells[4]);
        assert!((t_uu - t_dd).abs() < 1e-10);
        assert!(t_ud.abs() < 1e-12 && t_du.abs() < 1e-12);
    }
}

#[test]
fn output_file_matches_stdout_and_is_stable() {
    let path_a = temp_path("out-a.csv");
    let path_b = temp_path("out-b.csv");
    for path in [&path_a, &path_b] {
        let status = binary()
            .args([
                "ring",
                "--theta-r",
                "1.2",
                "--phi-b",
                "0.2",
                "--n-grid",
                "10",
                "--out",
                path.to_str().unwrap(),
            ])
            .status()
            .expect("binary runs");
        assert!(status.success());
    }
    let a = std::fs::read(&path_a).unwrap();
    let b = std::fs::read(&path_b).unwrap();
    assert_eq!(a, b);
    assert!(!a.is_empty());
    let _ = std::fs::remove_file(&path_a);
    let _ = std::fs::remove_file(&path_b);
}

#[test]
fn flags_override_config_file() {
    let config_path = temp_path("config.json");
    let config = resolve(
        SubcommandKind::Sweep,
        PartialConfig {
            n_grid: Some(5),
            ..Default::default()
        },
    );
    std::fs::write(&config_path, serde_json::to_string(&config).unwrap()).unwrap();

    let out = binary()
        .args([
            "sweep",
            "--config",
            config_path.to_str().unwrap(),
            "--n-grid",
            "7",
        ])
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 8); // header + 7 rows: the flag won
    let _ = std::fs::remove_file(&config_path);
}

#[test]
fn invalid_config_exits_with_2() {
    let out = binary()
        .args(["square", "--n-grid", "1"])
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("n_grid"), "message names the field: {stderr}");

    let out = binary()
        .args(["square", "--emin", "-3.0"])
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unwritable_output_path_fails() {
    let out = binary()
        .args([
            "design",
            "--square",
            "--out",
            "/nonexistent-directory/report.json",
        ])
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn csv_cells_carry_twelve_significant_digits() {
    let config = resolve(
        SubcommandKind::Sweep,
        PartialConfig {
            n_grid: Some(3),
            ..Default::default()
        },
    );
    let text = execute(&config).unwrap();
    let row = text.lines().nth(2).unwrap();
    let cell = row.split(',').nth(1).unwrap();
    // Mantissa with 11 decimal places: d.ddddddddddde±e
    let mantissa = cell.split('e').next().unwrap();
    let decimals = mantissa.split('.').nth(1).unwrap();
    assert_eq!(decimals.len(), 11, "cell {cell}");
}
