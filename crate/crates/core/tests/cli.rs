//! End-to-end runs of the `spindce` binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use spindce::cli::config::hash_canonical;
use tempfile::TempDir;

const OMEGA_T: f64 = 5.7e9;

fn spindce(args: &[&str], envs: &[(&str, &Path)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_spindce"));
    cmd.args(args).env_remove("SPINDCE_CATALOG");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn write_config(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

/// Run `command` on `config` text, writing into `dir/out`.
fn run(dir: &Path, command: &str, config: &str, extra: &[&str]) -> (Output, PathBuf) {
    let cfg = write_config(dir, &format!("{command}.json"), config);
    let out = dir.join("out");
    let mut args = vec![command, "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()];
    args.extend_from_slice(extra);
    (spindce(&args, &[]), out)
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

/// Data rows of a CSV, header comments and column line stripped.
fn csv_rows(path: &Path) -> Vec<Vec<f64>> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| {
            l.split(',')
                .map(|c| c.parse::<f64>().unwrap_or(f64::NAN))
                .collect()
        })
        .collect()
}

fn spectrum_config(omega: f64) -> String {
    format!(
        r#"{{"command": "spectrum", "material": "BST",
            "geometry": {{"r_parallel_m": 1.5e-7, "eccentricity": 0.8660254037844386}},
            "spin": {{"omega_rad_s": {omega:e}}}}}"#
    )
}

const SWEEP_SIZE: &str = r#"{
    "material": "cnt-bound",
    "geometry": {"eccentricity": 0.6},
    "spin": {"tip_speed_from_material": true},
    "grids": {"r_parallel_m": {"min": 1e-6, "max": 1e-4, "points": 24}}
}"#;

#[test]
fn spectrum_is_symmetric_about_omega() {
    let dir = TempDir::new().unwrap();
    let omega = 1.9 * OMEGA_T;
    let (o, out) = run(dir.path(), "spectrum", &spectrum_config(omega), &[]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let rows = csv_rows(&out.join("spectrum.csv"));
    assert!(rows.len() >= 512);
    let n = rows.len();
    let peak = rows.iter().map(|r| r[1]).fold(0.0, f64::max);
    for i in 0..n {
        let (a, b) = (&rows[i], &rows[n - 1 - i]);
        assert!((a[0] + b[0] - 2.0 * omega).abs() <= 1e-6 * omega);
        assert!((a[1] - b[1]).abs() <= 1e-12 * peak);
    }
    let header = fs::read_to_string(out.join("spectrum.csv")).unwrap();
    assert!(header.starts_with("# spindce=spectrum\n# config_hash="));
}

#[test]
fn manifest_hash_round_trips() {
    let dir = TempDir::new().unwrap();
    let (o, out) = run(dir.path(), "spectrum", &spectrum_config(OMEGA_T), &[]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let manifest: Value =
        serde_json::from_str(&fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
    let canonical = manifest["canonical_config"].as_str().unwrap();
    assert_eq!(hash_canonical(canonical), manifest["config_hash"].as_str().unwrap());
    assert_eq!(manifest["constants_version"], "CODATA-2018");
    assert_eq!(manifest["command"], "spectrum");
    assert_eq!(manifest["output_files"][0], "spectrum.csv");
    assert!(manifest["timestamp_unix_s"].as_u64().unwrap() > 0);
}

#[test]
fn frequency_key_conversion_lands_in_manifest() {
    let dir = TempDir::new().unwrap();
    let cfg = r#"{"material": "SiO2",
        "geometry": {"r_parallel_m": 1.5e-7, "eccentricity": 0.8660254037844386},
        "spin": {"frequency_ghz": 5.2}}"#;
    let (o, out) = run(dir.path(), "rate", cfg, &[]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(String::from_utf8_lossy(&o.stdout).contains("photons/year"));
    let manifest = fs::read_to_string(out.join("manifest.json")).unwrap();
    assert!(manifest.contains("2*pi*1e9*frequency_ghz"));
}

#[test]
fn typo_is_a_schema_error_naming_the_key() {
    let dir = TempDir::new().unwrap();
    let cfg = spectrum_config(OMEGA_T).replace("\"eccentricity\"", "\"eccentrcity\"");
    let (o, _) = run(dir.path(), "spectrum", &cfg, &[]);
    assert_eq!(code(&o), 4);
    assert!(stderr(&o).contains("geometry.eccentrcity"), "{}", stderr(&o));
}

#[test]
fn unknown_material() {
    let dir = TempDir::new().unwrap();
    let cfg = spectrum_config(OMEGA_T).replace("\"BST\"", "\"unobtainium\"");
    let (o, _) = run(dir.path(), "spectrum", &cfg, &[]);
    assert_eq!(code(&o), 5);
    assert!(stderr(&o).contains("unobtainium"));
}

#[test]
fn parse_and_io_errors() {
    let dir = TempDir::new().unwrap();
    let (o, _) = run(dir.path(), "rate", "{not json", &[]);
    assert_eq!(code(&o), 3);
    let o = spindce(&["rate", "--config", "/nonexistent/cfg.json"], &[]);
    assert_eq!(code(&o), 6);
    let o = spindce(&["rate"], &[]);
    assert_eq!(code(&o), 2);
    let o = spindce(&["frobnicate", "--config", "x.json"], &[]);
    assert_eq!(code(&o), 2);
}

#[test]
fn lossless_crossing_has_its_own_exit_code() {
    let dir = TempDir::new().unwrap();
    let cfg = format!(
        r#"{{"material": {{"name": "ideal", "model": "lorentz", "eps_static": 7.1, "eps_uv": 2.896,
                           "omega_T_rad_s": 5.7e9, "gamma_hz": 0.0}},
            "geometry": {{"r_parallel_m": 1.5e-7, "eccentricity": 0.8}},
            "spin": {{"omega_rad_s": {:e}}}}}"#,
        2.0 * OMEGA_T
    );
    let (o, _) = run(dir.path(), "rate", &cfg, &[]);
    assert_eq!(code(&o), 10, "{}", stderr(&o));
}

#[test]
fn missing_mechanics_has_its_own_exit_code() {
    let dir = TempDir::new().unwrap();
    let cfg = SWEEP_SIZE.replace("cnt-bound", "BST");
    let (o, _) = run(dir.path(), "sweep-size", &cfg, &[]);
    assert_eq!(code(&o), 14, "{}", stderr(&o));
}

#[test]
fn degenerate_objective_exit_code() {
    let dir = TempDir::new().unwrap();
    let cfg = r#"{"material": {"name": "vacuum", "model": "constant", "eps_static": 1.0},
        "geometry": {"r_parallel_m": 2e-6}, "spin": {"tip_speed_m_s": 1.5e5}, "xtol": 1e-3}"#;
    let (o, _) = run(dir.path(), "optimize", cfg, &[]);
    assert_eq!(code(&o), 13, "{}", stderr(&o));
}

#[test]
fn size_sweep_spans_the_burst_limited_band() {
    let dir = TempDir::new().unwrap();
    let (o, out) = run(dir.path(), "sweep-size", SWEEP_SIZE, &[]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let rows = csv_rows(&out.join("sweep_size.csv"));
    assert_eq!(rows.len(), 24);
    let ghz = |w: f64| w / (2.0 * std::f64::consts::PI * 1e9);
    assert!((ghz(rows[0][2]) - 23.87).abs() < 0.01);
    assert!((ghz(rows[23][2]) - 0.2387).abs() < 1e-4);
    for r in &rows {
        assert!((r[0] * r[2] / 1.5e5 - 1.0).abs() < 1e-12);
    }
    let text = fs::read_to_string(out.join("sweep_size.csv")).unwrap();
    assert!(text.contains(
        "\nr_parallel_m,eccentricity,omega_rot_rad_s,gamma_per_s,gamma_qs_per_s,enhancement\n"
    ));
}

#[test]
fn outputs_are_byte_identical_across_runs_and_workers() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "s.json", SWEEP_SIZE);
    let mut outputs = Vec::new();
    for (i, workers) in ["1", "4", "4"].iter().enumerate() {
        let out = dir.path().join(format!("run{i}"));
        let o = spindce(
            &[
                "sweep-size",
                "--config",
                cfg.to_str().unwrap(),
                "--out",
                out.to_str().unwrap(),
                "--workers",
                workers,
            ],
            &[],
        );
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        outputs.push(fs::read(out.join("sweep_size.csv")).unwrap());
    }
    assert!(outputs.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn eccentricity_commands() {
    let dir = TempDir::new().unwrap();
    let cfg = r#"{"material": "BST", "geometry": {"r_parallel_m": 2e-6},
        "spin": {"tip_speed_m_s": 1.5e5},
        "grids": {"eccentricity": {"min": 0.05, "max": 0.95, "points": 19}}}"#;
    let (o, out) = run(dir.path(), "sweep-ecc", cfg, &[]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let rows = csv_rows(&out.join("sweep_ecc.csv"));
    assert_eq!(rows.len(), 19);
    assert_eq!(rows.iter().filter(|r| r[2] == 1.0).count(), 1);

    let cfg = r#"{"material": "BST", "geometry": {"r_parallel_m": 2e-6},
        "spin": {"tip_speed_m_s": 1.5e5}, "xtol": 1e-4}"#;
    let (o, out) = run(dir.path(), "optimize", cfg, &[]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let row = &csv_rows(&out.join("optimize.csv"))[0];
    assert!(row[2] > 0.0 && row[2] < 0.999);
    assert!(row[3] >= row[5]);
}

#[test]
fn enhancement_command() {
    let dir = TempDir::new().unwrap();
    let cfg = r#"{"material": "BST", "geometry": {"r_parallel_m": 1.5e-7, "eccentricity": 0.8},
        "grids": {"omega_over_omega_t": {"min": 0.01, "max": 30.0, "points": 16}}}"#;
    let (o, out) = run(dir.path(), "enhancement", cfg, &[]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let rows = csv_rows(&out.join("enhancement.csv"));
    assert_eq!(rows.len(), 16);
    assert!((rows[0][4] - 1.0).abs() < 0.01, "{}", rows[0][4]);

    let (o, _) = run(dir.path(), "enhancement", &cfg.replace("BST", "SiO2"), &[]);
    assert_eq!(code(&o), 8);
}

#[test]
fn validate_report_has_reference_rows() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("report");
    let o = spindce(&["validate", "--out", out.to_str().unwrap()], &[]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = fs::read_to_string(out.join("validation_report.csv")).unwrap();
    for case in [
        "sio2_quasistatic_rate,",
        "bst_qs_coefficient_rad_s,",
        "bst_qs_coefficient_hz,",
        "crossover_analytic,",
    ] {
        assert!(text.contains(case), "missing {case}");
    }
    let crossover = text
        .lines()
        .find(|l| l.starts_with("crossover_analytic,"))
        .unwrap();
    let ratio: f64 = crossover.split(',').nth(4).unwrap().parse().unwrap();
    assert!((0.9..=1.1).contains(&ratio));
}

#[test]
fn catalog_override() {
    let dir = TempDir::new().unwrap();
    let catalog = write_config(
        dir.path(),
        "catalog.json",
        r#"[{"name": "glass", "model": "constant", "eps_static": 2.25}]"#,
    );
    let cfg = write_config(
        dir.path(),
        "rate.json",
        r#"{"material": "glass", "geometry": {"r_parallel_m": 1e-7, "eccentricity": 0.5},
            "spin": {"omega_rad_s": 1e10}}"#,
    );
    let out = dir.path().join("out");
    let args = ["rate", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()];
    let o = spindce(&args, &[("SPINDCE_CATALOG", &catalog)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    // the built-in catalog has no such material
    assert_eq!(code(&spindce(&args, &[])), 5);
    let broken = write_config(dir.path(), "broken.json", "[{\"name\": 1}]");
    assert_eq!(code(&spindce(&args, &[("SPINDCE_CATALOG", &broken)])), 7);
}
