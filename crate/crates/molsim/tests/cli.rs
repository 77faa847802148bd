use std::path::Path;
use std::process::{Command, Output};

use molsim::scenario::{apply_override, preset_toml, resolve, Grid, ScenarioConfig, PRESETS};
use sha2::{Digest, Sha256};

fn molsim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_molsim")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

const SMALL_SWEEP: &str = r#"name = "small-sweep"
[scenario.micromaser-sweep]
axis = "theta-over-pi"
grid = [0.5, 1.0, 2.0]
[scenario.micromaser-sweep.params]
n_ex = 10.0
t_j = 1.0
n_max = 6
"#;

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

fn read_dir_csvs(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "csv"))
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read(&p).unwrap()))
        .collect();
    files.sort();
    files
}

#[test]
fn list_covers_figures() {
    let o = molsim(&["list"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("fig-II3a"));
    assert!(text.contains("fig-g2ofgap"));
    assert!(PRESETS.len() >= 12);
    for name in ["fig-II1a", "fig-II4", "fig-III1", "fig-III4", "fig-PnNFG", "fig-nofp-broad"] {
        assert!(text.contains(name), "{name} missing");
    }
}

#[test]
fn every_preset_resolves() {
    for p in PRESETS {
        let c = resolve(p.name, &[]).unwrap_or_else(|e| panic!("{}: {e}", p.name));
        assert_eq!(c.name, p.name);
        assert!(preset_toml(p.name).is_some());
    }
    assert!(preset_toml("fig-none").is_none());
}

#[test]
fn empty_theta_grid_is_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "empty.toml", &SMALL_SWEEP.replace("grid = [0.5, 1.0, 2.0]", "grid = []"));
    let o = molsim(&["validate", &cfg]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("scenario.micromaser-sweep.grid"));
    let o = molsim(&["run", &cfg, "--out", dir.path().join("o").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn parse_errors_name_line_and_field() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "bad.toml", &SMALL_SWEEP.replace("n_max = 6", "n_max = \"six\""));
    let o = molsim(&["validate", &cfg]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("line 8"), "{err}");
    assert!(err.contains("n_max"), "{err}");
    let cfg = write(dir.path(), "unknown.toml", &SMALL_SWEEP.replace("n_ex = 10.0", "n_ex = 10.0\nspeed = 3"));
    let o = molsim(&["validate", &cfg]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("speed"));
}

#[test]
fn run_is_deterministic_and_manifest_matches_disk() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "sweep.toml", SMALL_SWEEP);
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    assert!(molsim(&["run", &cfg, "--out", a.to_str().unwrap(), "--workers", "1"]).status.success());
    assert!(molsim(&["run", &cfg, "--out", b.to_str().unwrap(), "--workers", "2"]).status.success());
    let (fa, fb) = (read_dir_csvs(&a), read_dir_csvs(&b));
    assert!(!fa.is_empty());
    assert_eq!(fa, fb);

    let manifest: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(a.join("manifest.json")).unwrap()).unwrap();
    let outputs = manifest["outputs"].as_array().unwrap();
    assert_eq!(outputs.len(), fa.len());
    for o in outputs {
        let bytes = std::fs::read(a.join(o["file"].as_str().unwrap())).unwrap();
        assert_eq!(o["sha256"].as_str().unwrap(), hex::encode(Sha256::digest(&bytes)));
    }
    assert_eq!(manifest["points"].as_array().unwrap().len(), 3);
    assert_eq!(manifest["failed_points"], 0);

    // The manifest's resolved config reproduces the run.
    let config: ScenarioConfig = serde_json::from_value(manifest["config"].clone()).unwrap();
    let c = dir.path().join("c");
    molsim::scenario::run(&config, &c, Some(1)).unwrap();
    assert_eq!(read_dir_csvs(&c), fa);
}

#[test]
fn csv_header_block() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "sweep.toml", SMALL_SWEEP);
    let out = dir.path().join("o");
    assert!(molsim(&["run", &cfg, "--out", out.to_str().unwrap()]).status.success());
    let text = std::fs::read_to_string(out.join("sweep.csv")).unwrap();
    let header: Vec<&str> = text.lines().take_while(|l| l.starts_with('#')).collect();
    for key in ["# scenario: micromaser-sweep", "# name: small-sweep", "# parameters: ", "# units: ", "# validity: "] {
        assert!(header.iter().any(|l| l.starts_with(key)), "missing {key}");
    }
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert!(rows[0].starts_with("theta_over_pi,mean"));
    assert_eq!(rows.len(), 4);
}

#[test]
fn overrides_apply_before_validation() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "sweep.toml", SMALL_SWEEP);
    let out = dir.path().join("o");
    let o = molsim(&[
        "run",
        &cfg,
        "--out",
        out.to_str().unwrap(),
        "--override",
        "scenario.micromaser-sweep.params.t_j=0.0",
        "--override",
        "scenario.micromaser-sweep.grid=[1.0]",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let manifest: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["config"]["scenario"]["micromaser-sweep"]["params"]["t_j"], 0.0);
    assert_eq!(manifest["points"].as_array().unwrap().len(), 1);
    let o = molsim(&["validate", &cfg, "--override", "scenario.micromaser-sweep.params.n_max=0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn all_points_failing_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "bad_points.toml",
        r#"name = "diverging-noise"
[scenario.momentum]
p = [0.0]
[[scenario.momentum.models]]
kind = "bec"
atoms = 1000.0
scattering_length = 0.1
"#,
    );
    let out = dir.path().join("o");
    let o = molsim(&["run", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(out.join("manifest.json").exists());
}

#[test]
fn unknown_target_is_config_error() {
    let o = molsim(&["run", "fig-does-not-exist"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn override_parser() {
    let mut t: toml::Table = toml::from_str(SMALL_SWEEP).unwrap();
    apply_override(&mut t, "scenario.micromaser-sweep.params.theta = 2.5").unwrap();
    apply_override(&mut t, "name=renamed run").unwrap();
    assert_eq!(t["scenario"]["micromaser-sweep"]["params"]["theta"].as_float(), Some(2.5));
    assert_eq!(t["name"].as_str(), Some("renamed run"));
    assert!(apply_override(&mut t, "no-equals").is_err());
    assert!(apply_override(&mut t, "name.inner=1").is_err());
}

#[test]
fn grid_forms() {
    let g: Grid = toml::from_str::<toml::Table>("g = { start = 1.0, stop = 100.0, points = 3, log = true }")
        .unwrap()["g"]
        .clone()
        .try_into()
        .unwrap();
    let v = g.values();
    assert!((v[1] - 10.0).abs() < 1e-12 && v.len() == 3);
    assert_eq!(Grid::Values(vec![1.0, 2.0]).values(), vec![1.0, 2.0]);
}
