//! Command-line front end: scenario configuration ingestion, batch
//! execution, and report emission.
//!
//! Exit status: 0 on success, 2 on configuration/validation errors, 3 on
//! numerical failures. `NOGO_COOL_THREADS` caps batch parallelism.

mod config;
mod exec;
mod report;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use std::path::{Path, PathBuf};
use std::time::Instant;

use config::{CliError, CliResult, Kind, ScenarioConfig};
use exec::{execute, scenario_seed};
use report::{write_report, RunReport, TOOL_VERSION};

#[derive(Parser)]
#[command(name = "nogo-cool", version, about = "Unitary reachability analysis for ground-state cooling")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute the scenario(s) in a TOML or JSON config file.
    Run {
        config: PathBuf,
        /// Master seed; per-scenario seeds are derived from it.
        #[arg(long)]
        seed: Option<u64>,
        /// Output directory for reports and trajectories.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Probe the analytic ground-population bound with seeded Haar samples.
    BoundSearch {
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// List the available scenario kinds and their parameters.
    ListScenarios,
}

fn main() {
    let cli = Cli::parse();
    if let Ok(threads) = std::env::var("NOGO_COOL_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build_global();
        }
    }
    let status = match dispatch(cli) {
        Ok(()) => 0,
        Err(e @ CliError::Config(_)) => {
            eprintln!("{e}");
            2
        }
        Err(e @ CliError::Numerical(_)) => {
            eprintln!("{e}");
            3
        }
    };
    std::process::exit(status);
}

fn dispatch(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Run { config, seed, out } => run_batch(&config, seed, &out, None),
        Command::BoundSearch { config, seed, out } => {
            run_batch(&config, seed, &out, Some(Kind::BoundSearch))
        }
        Command::ListScenarios => {
            for kind in Kind::ALL {
                println!("{:<20} {}", kind.as_str(), kind.describe());
            }
            Ok(())
        }
    }
}

fn run_batch(
    config_path: &Path,
    seed: Option<u64>,
    out_dir: &Path,
    required_kind: Option<Kind>,
) -> CliResult<()> {
    let configs = config::load_configs(config_path)?;
    if let Some(kind) = required_kind {
        for (i, c) in configs.iter().enumerate() {
            if c.kind != kind {
                return Err(CliError::Config(format!(
                    "scenario[{i}].kind: expected {} for this subcommand, got {}",
                    kind.as_str(),
                    c.kind.as_str()
                )));
            }
        }
    }
    let master = seed.unwrap_or(0);
    let started = Instant::now();

    let results: Vec<CliResult<PathBuf>> = configs
        .par_iter()
        .enumerate()
        .map(|(index, scenario)| run_one(scenario, index, master, out_dir))
        .collect();

    for r in results {
        let path = r?;
        eprintln!("wrote {}", path.display());
    }
    eprintln!("completed in {:.3}s", started.elapsed().as_secs_f64());
    Ok(())
}

fn run_one(
    scenario: &ScenarioConfig,
    index: usize,
    master: u64,
    out_dir: &Path,
) -> CliResult<PathBuf> {
    let seed = scenario_seed(master, index);
    let outcome = execute(scenario, index, seed, out_dir)?;
    let report = RunReport {
        tool_version: TOOL_VERSION.to_string(),
        seed,
        config_echo: scenario.clone(),
        result: outcome.result,
        trajectory_files: outcome.trajectory_files,
    };
    let path = match &scenario.output_path {
        Some(p) => out_dir.join(p),
        None => out_dir.join(format!("{}.report.json", scenario.name)),
    };
    write_report(&path, &report)?;
    Ok(path)
}
