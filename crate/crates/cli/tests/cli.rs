//! Black-box tests of the binary: exit-status contract, validation
//! messages, file outputs.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_nogo-cool")
}

fn tmp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("nogo-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write(path: &Path, text: &str) {
    std::fs::write(path, text).unwrap();
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().unwrap()
}

#[test]
fn help_exits_zero() {
    let out = run(&["--help"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("run"));
    assert!(text.contains("bound-search"));
    assert!(text.contains("list-scenarios"));
}

#[test]
fn version_prints_tool_version() {
    let out = run(&["--version"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains(env!("CARGO_PKG_VERSION")));
}

#[test]
fn list_scenarios_names_all_kinds() {
    let out = run(&["list-scenarios"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    for kind in [
        "no_go_check",
        "swap",
        "nonthermal_bath",
        "correlated",
        "approximate_cooling",
        "contrast",
        "bound_search",
    ] {
        assert!(text.contains(kind), "missing {kind}");
    }
}

#[test]
fn swap_run_reports_feasible() {
    let dir = tmp_dir("swap");
    let cfg = dir.join("swap.toml");
    write(&cfg, "name = \"swap07\"\nkind = \"swap\"\n[parameters]\ns0 = 0.7\n");
    let out = run(&["run", cfg.to_str().unwrap(), "--out", dir.to_str().unwrap()]);
    assert!(out.status.success());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("swap07.report.json")).unwrap())
            .unwrap();
    assert_eq!(report["result"]["report"]["verdict"], "Feasible");
    assert_eq!(report["result"]["report"]["bound"], 1.0);
    assert_eq!(report["config_echo"]["parameters"]["s0"], 0.7);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn thermal_no_go_reports_infeasible_with_product_bound() {
    let dir = tmp_dir("nogo");
    let cfg = dir.join("nogo.toml");
    write(
        &cfg,
        "name = \"nogo\"\nkind = \"no_go_check\"\n[parameters]\ns = [0.7, 0.3]\nb = [0.8, 0.2]\n",
    );
    let out = run(&["run", cfg.to_str().unwrap(), "--out", dir.to_str().unwrap()]);
    assert!(out.status.success());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("nogo.report.json")).unwrap())
            .unwrap();
    assert_eq!(report["result"]["report"]["verdict"], "Infeasible");
    let bound = report["result"]["report"]["bound"].as_f64().unwrap();
    assert!((bound - 0.80).abs() <= 1e-12);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn invalid_config_exits_two_with_field_path() {
    let dir = tmp_dir("invalid");
    let cfg = dir.join("bad.toml");
    write(
        &cfg,
        "name = \"bad\"\nkind = \"swap\"\n[parameters]\ns0 = 1.5\n",
    );
    let out = run(&["run", cfg.to_str().unwrap(), "--out", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("parameters.s0"), "stderr: {err}");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn probability_sum_validated_at_ingestion() {
    let dir = tmp_dir("probsum");
    let cfg = dir.join("bad.toml");
    write(
        &cfg,
        "name = \"bad\"\nkind = \"no_go_check\"\n[parameters]\ns = [0.7, 0.4]\nb = [0.8, 0.2]\n",
    );
    let out = run(&["run", cfg.to_str().unwrap(), "--out", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("sum to 1"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn missing_file_exits_two() {
    let out = run(&["run", "/nonexistent/nothing.toml"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_config_accepted() {
    let dir = tmp_dir("json");
    let cfg = dir.join("swap.json");
    write(
        &cfg,
        "{\"name\": \"swapj\", \"kind\": \"swap\", \"parameters\": {\"s0\": 0.6}}",
    );
    let out = run(&["run", cfg.to_str().unwrap(), "--out", dir.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(dir.join("swapj.report.json").exists());
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn bound_search_subcommand_rejects_other_kinds() {
    let dir = tmp_dir("bskind");
    let cfg = dir.join("swap.toml");
    write(&cfg, "name = \"swap\"\nkind = \"swap\"\n[parameters]\ns0 = 0.7\n");
    let out = run(&[
        "bound-search",
        cfg.to_str().unwrap(),
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn bound_search_stays_below_bound() {
    let dir = tmp_dir("bs");
    let cfg = dir.join("bound.toml");
    write(
        &cfg,
        "name = \"bs\"\nkind = \"bound_search\"\n[parameters]\ns = [0.7, 0.3]\nb = [0.8, 0.2]\nsamples = 1000\n",
    );
    let out = run(&[
        "bound-search",
        cfg.to_str().unwrap(),
        "--seed",
        "3",
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("bs.report.json")).unwrap())
            .unwrap();
    let max = report["result"]["max_achieved"].as_f64().unwrap();
    let bound = report["result"]["analytic_bound"].as_f64().unwrap();
    assert!(max <= bound + 1e-8);
    assert!(report["result"]["gap_to_bound"].as_f64().unwrap() >= -1e-8);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn batch_run_writes_every_report() {
    let dir = tmp_dir("batch");
    let cfg = dir.join("batch.toml");
    write(
        &cfg,
        "[[scenario]]\nname = \"a\"\nkind = \"swap\"\n[scenario.parameters]\ns0 = 0.7\n\n\
         [[scenario]]\nname = \"b\"\nkind = \"correlated\"\n[scenario.parameters]\n\
         bath_weights = [0.5, 0.5]\nsplit_index = 0\n",
    );
    let out = run(&["run", cfg.to_str().unwrap(), "--out", dir.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(dir.join("a.report.json").exists());
    assert!(dir.join("b.report.json").exists());
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn contrast_emits_trajectory_csvs() {
    let dir = tmp_dir("contrast");
    let cfg = dir.join("c.toml");
    write(
        &cfg,
        "name = \"c\"\nkind = \"contrast\"\n[parameters]\nhorizon = 5.0\nn_times = 10\n",
    );
    let out = run(&["run", cfg.to_str().unwrap(), "--out", dir.to_str().unwrap()]);
    assert!(out.status.success());
    let csv = std::fs::read_to_string(dir.join("c.trajectory.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "time,ground_population,spectrum_drift,purity"
    );
    assert_eq!(lines.count(), 10);
    assert!(dir.join("c.lindblad.trajectory.csv").exists());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("c.report.json")).unwrap()).unwrap();
    assert_eq!(report["trajectory_files"].as_array().unwrap().len(), 2);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn thread_cap_env_is_honored() {
    let dir = tmp_dir("threads");
    let cfg = dir.join("swap.toml");
    write(&cfg, "name = \"t\"\nkind = \"swap\"\n[parameters]\ns0 = 0.3\n");
    let out = Command::new(bin())
        .env("NOGO_COOL_THREADS", "1")
        .args(["run", cfg.to_str().unwrap(), "--out", dir.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());
    std::fs::remove_dir_all(&dir).ok();
}
