//! Report and trajectory emission. Reports are self-describing: they embed
//! the full config echo and the tool version, and identical (config, seed,
//! version) triples serialize to byte-identical JSON. Files are written to a
//! temporary sibling and renamed into place.

use serde::Serialize;
use serde_json::Value;
use std::io::Write;
use std::path::Path;

use nogo_cool::dynamics::Trajectory;

use crate::config::{CliError, CliResult, ScenarioConfig};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub tool_version: String,
    pub seed: u64,
    pub config_echo: ScenarioConfig,
    pub result: Value,
    pub trajectory_files: Vec<String>,
}

fn atomic_write(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    std::fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

pub fn write_report(path: &Path, report: &RunReport) -> CliResult<()> {
    let mut json = serde_json::to_string_pretty(report)
        .map_err(|e| CliError::Numerical(e.to_string()))?;
    json.push('\n');
    atomic_write(path, json.as_bytes())
        .map_err(|e| CliError::Numerical(format!("{}: {e}", path.display())))
}

/// CSV with columns time, ground_population, spectrum_drift, purity at full
/// double precision (17 significant digits). The drift column is empty for
/// reduced-dynamics runs where no joint spectrum exists.
pub fn write_trajectory_csv(path: &Path, traj: &Trajectory) -> std::io::Result<()> {
    let mut out = String::from("time,ground_population,spectrum_drift,purity\n");
    for (k, &t) in traj.times.iter().enumerate() {
        let drift = traj
            .joint_spectrum_drift
            .get(k)
            .map(|d| format!("{d:.16e}"))
            .unwrap_or_default();
        out.push_str(&format!(
            "{t:.16e},{:.16e},{drift},{:.16e}\n",
            traj.ground_population[k], traj.purity[k]
        ));
    }
    atomic_write(path, out.as_bytes())
}
