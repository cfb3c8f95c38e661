//! End-to-end checks on the built binary: exit codes, file contracts,
//! golden column orders, and byte-level determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fqergo"))
}

fn tmp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fqergo-cli-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run_ok(cmd: &mut Command) -> Output {
    let out = cmd.output().expect("binary runs");
    assert!(
        out.status.success(),
        "expected success, got {:?}\nstderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

const BELL_STATE: &str = "dim 4\n\
    0.5,0.0 0.0,0.0 0.0,0.0 0.5,0.0\n\
    0.0,0.0 0.0,0.0 0.0,0.0 0.0,0.0\n\
    0.0,0.0 0.0,0.0 0.0,0.0 0.0,0.0\n\
    0.5,0.0 0.0,0.0 0.0,0.0 0.5,0.0\n";

#[test]
fn preset_suite_writes_trajectories_and_scatter() {
    let dir = tmp_dir("fig2");
    run_ok(bin().args([
        "run",
        "--preset",
        "1q-fig2",
        "--seed",
        "7",
        "--out",
        dir.to_str().unwrap(),
    ]));
    for idx in 0..20 {
        assert!(dir.join(format!("trajectory_{idx:03}.csv")).exists(), "trajectory {idx}");
    }
    assert!(dir.join("suite.csv").exists());
    assert!(dir.join("summary.json").exists());
    assert!(dir.join("estimated_vs_exact.svg").exists());
    assert!(dir.join("energy_vs_iteration.svg").exists());

    // Golden column orders.
    let traj = read(&dir.join("trajectory_000.csv"));
    assert!(traj.starts_with("k,phase,beta_X,beta_Y,energy,fid_initial,fid_passive\n"));
    let suite = read(&dir.join("suite.csv"));
    assert!(suite.starts_with(
        "state_index,initial_energy,final_energy,exact_ergotropy,estimated_ergotropy,\
         exact_local_sum,exact_local_opt,estimated_local,estimated_global,exact_gap,estimated_gap\n"
    ));
    assert_eq!(suite.lines().count(), 21);

    // The scatter carries the config fingerprint and a y = x guide.
    let scatter = read(&dir.join("estimated_vs_exact.svg"));
    assert!(scatter.contains("seed=7"));
    assert!(scatter.contains("stroke-dasharray"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn error_override_reaches_the_summary() {
    let dir = tmp_dir("fig3err");
    let mut config = String::from("suite = \"two-qubit\"\nmodel = \"2q-global\"\nn_states = 4\n");
    config.push_str("iterations_local = 10\niterations_global = 10\n");
    let config_path = dir.join("run.toml");
    std::fs::write(&config_path, config).unwrap();
    run_ok(bin().args([
        "run",
        "--config",
        config_path.to_str().unwrap(),
        "--error",
        "random_hamiltonian:2deg",
        "--out",
        dir.to_str().unwrap(),
    ]));
    let summary = read(&dir.join("summary.json"));
    let json: serde_json::Value = serde_json::from_str(&summary).unwrap();
    assert_eq!(json["summary"]["error_model"], "random_hamiltonian:2deg");
    assert!(json["summary"]["rms_gap_dev"].as_f64().unwrap() < 0.2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn malformed_config_key_exits_2_without_output() {
    let dir = tmp_dir("badkey");
    let config_path = dir.join("bad.toml");
    std::fs::write(&config_path, "suite = \"single-qubit\"\nnot_a_key = true\n").unwrap();
    let out_dir = dir.join("outputs");
    let out = bin()
        .args([
            "run",
            "--config",
            config_path.to_str().unwrap(),
            "--out",
            out_dir.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("not_a_key"), "message names the key: {stderr}");
    assert!(!out_dir.exists(), "no partial output files");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn oracle_reports_bell_gap() {
    let dir = tmp_dir("oraclebell");
    let state_path = dir.join("bell.state");
    std::fs::write(&state_path, BELL_STATE).unwrap();
    let out = run_ok(bin().args([
        "oracle",
        "--state",
        state_path.to_str().unwrap(),
        "--hamiltonian",
        "2q-default",
    ]));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((json["gap"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert!((json["ergotropy"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert!((json["passive_energy"].as_f64().unwrap() - 0.01).abs() < 1e-9);
    assert!(json["local_sum_ergotropy"].as_f64().unwrap().abs() < 1e-9);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn oracle_ground_state_is_zero() {
    let dir = tmp_dir("oracleground");
    let state_path = dir.join("ground.state");
    std::fs::write(&state_path, "dim 2\n1.0,0.0 0.0,0.0\n0.0,0.0 0.0,0.0\n").unwrap();
    let out = run_ok(bin().args([
        "oracle",
        "--state",
        state_path.to_str().unwrap(),
        "--hamiltonian",
        "1q-default",
    ]));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(json["ergotropy"].as_f64().unwrap().abs() < 1e-12);
    assert!(json["gap"].is_null());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn oracle_rejects_non_psd_with_diagnostics() {
    let dir = tmp_dir("oraclebad");
    let state_path = dir.join("bad.state");
    std::fs::write(&state_path, "dim 2\n1.5,0.0 0.0,0.0\n0.0,0.0 -0.5,0.0\n").unwrap();
    let out = bin()
        .args([
            "oracle",
            "--state",
            state_path.to_str().unwrap(),
            "--hamiltonian",
            "1q-default",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("positive semidefinite"), "{stderr}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn sweep_grid_contract_and_determinism() {
    let dir_a = tmp_dir("sweep-a");
    let dir_b = tmp_dir("sweep-b");
    for dir in [&dir_a, &dir_b] {
        run_ok(bin().args([
            "sweep",
            "--system",
            "1q",
            "--tau",
            "0.5:2.5:5",
            "--states",
            "4",
            "--seed",
            "11",
            "--out",
            dir.to_str().unwrap(),
        ]));
    }
    let csv_a = read(&dir_a.join("sweep.csv"));
    let csv_b = read(&dir_b.join("sweep.csv"));
    assert_eq!(csv_a, csv_b, "same seed gives identical files");
    assert!(csv_a.starts_with("tau,state_index,n\n"));
    // 5 grid points x 4 states + header.
    assert_eq!(csv_a.lines().count(), 21);
    assert!(dir_a.join("n_vs_tau.svg").exists());
    assert!(dir_a.join("sweep_summary.json").exists());
    std::fs::remove_dir_all(&dir_a).unwrap();
    std::fs::remove_dir_all(&dir_b).unwrap();
}

#[test]
fn sweep_records_non_converged_cells_as_empty() {
    let dir = tmp_dir("sweep-empty");
    // ω₀τ = 4.4 is beyond the single-qubit stability edge; cells stay empty.
    run_ok(bin().args([
        "sweep",
        "--system",
        "1q",
        "--tau",
        "4.4:4.6:2",
        "--states",
        "3",
        "--seed",
        "3",
        "--out",
        dir.to_str().unwrap(),
    ]));
    let csv = read(&dir.join("sweep.csv"));
    let empty_cells = csv.lines().skip(1).filter(|l| l.ends_with(',')).count();
    assert!(empty_cells > 0, "expected some non-converged cells:\n{csv}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn bad_sweep_arguments_exit_2() {
    let out = bin()
        .args(["sweep", "--system", "3q", "--tau", "0.5:2.0:4"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin()
        .args(["sweep", "--system", "1q", "--tau", "2.0:0.5:4"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn run_without_preset_or_config_exits_2() {
    let out = bin().arg("run").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_preset_exits_2() {
    let out = bin().args(["run", "--preset", "nope"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown preset"));
}

#[test]
fn env_var_sets_default_output_dir() {
    let dir = tmp_dir("envout");
    run_ok(
        bin()
            .args(["run", "--preset", "bell", "--format", "json"])
            .env("FQERGO_OUT", dir.to_str().unwrap())
            .current_dir(&dir),
    );
    assert!(dir.join("summary.json").exists());
    assert!(!dir.join("trajectory.csv").exists(), "format filter respected");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn bell_preset_estimates_match_contract() {
    let dir = tmp_dir("bellrun");
    run_ok(bin().args([
        "run",
        "--preset",
        "bell",
        "--seed",
        "5",
        "--out",
        dir.to_str().unwrap(),
        "--format",
        "json",
    ]));
    let json: serde_json::Value =
        serde_json::from_str(&read(&dir.join("summary.json"))).unwrap();
    assert!(json["estimated_ergotropy_local"].as_f64().unwrap().abs() <= 1e-2);
    assert!((json["estimated_ergotropy_global"].as_f64().unwrap() - 1.0).abs() <= 1e-2);
    assert!((json["oracle"]["gap"].as_f64().unwrap() - 1.0).abs() <= 1e-9);
    std::fs::remove_dir_all(&dir).unwrap();
}
