//! Scenario configuration: TOML (or JSON with the identical schema) files
//! holding either a single scenario or a `[[scenario]]` batch. Validation
//! reports the offending field path so sweep generators can be debugged
//! from the error message alone.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use std::fmt;
use std::path::Path;

#[derive(Debug)]
pub enum CliError {
    /// Exit status 2.
    Config(String),
    /// Exit status 3.
    Numerical(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "config error: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    NoGoCheck,
    Swap,
    NonthermalBath,
    Correlated,
    ApproximateCooling,
    Contrast,
    BoundSearch,
}

impl Kind {
    pub const ALL: [Kind; 7] = [
        Kind::NoGoCheck,
        Kind::Swap,
        Kind::NonthermalBath,
        Kind::Correlated,
        Kind::ApproximateCooling,
        Kind::Contrast,
        Kind::BoundSearch,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Kind::NoGoCheck => "no_go_check",
            Kind::Swap => "swap",
            Kind::NonthermalBath => "nonthermal_bath",
            Kind::Correlated => "correlated",
            Kind::ApproximateCooling => "approximate_cooling",
            Kind::Contrast => "contrast",
            Kind::BoundSearch => "bound_search",
        }
    }

    pub fn describe(&self) -> &'static str {
        match self {
            Kind::NoGoCheck => "rank-based reachability verdict for diagonal s and b (params: s, b | bath_energies + bath_temperature)",
            Kind::Swap => "mixed qubit against a pure bath qubit, cooled by swapping (params: s0)",
            Kind::NonthermalBath => "qubit system, rank-2 two-qubit bath diag(b0,b1,0,0) (params: s, b01)",
            Kind::Correlated => "correlated initial state with a 1/2 ground-block split (params: bath_weights, split_index)",
            Kind::ApproximateCooling => "spectral audit of the approximate-cooling deduction (params: s, bath_energies, bath_temperature, final_bath_thermal)",
            Kind::Contrast => "exact joint propagation vs amplitude-damping master equation (params: s, bath_gaps, bath_temperature, gap, coupling, gamma, horizon, n_times, dt)",
            Kind::BoundSearch => "seeded Haar sweep probing the analytic ground-population bound (params: s, b, samples)",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub name: String,
    pub kind: Kind,
    #[serde(default)]
    pub parameters: Map<String, Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_path: Option<String>,
}

#[derive(Debug, Deserialize)]
struct BatchFile {
    scenario: Vec<ScenarioConfig>,
}

/// Load scenario configs from a TOML or JSON file. A file is a batch when it
/// carries a `[[scenario]]` array, otherwise a single scenario.
pub fn load_configs(path: &Path) -> CliResult<Vec<ScenarioConfig>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    let is_json = path.extension().map(|e| e == "json").unwrap_or(false);

    let value: Value = if is_json {
        serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?
    } else {
        let toml_value: toml::Value = toml::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        serde_json::to_value(toml_value)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?
    };

    let configs = if value.get("scenario").is_some() {
        let batch: BatchFile = serde_json::from_value(value)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        batch.scenario
    } else {
        let single: ScenarioConfig = serde_json::from_value(value)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        vec![single]
    };

    if configs.is_empty() {
        return Err(CliError::Config(format!(
            "{}: no scenarios defined",
            path.display()
        )));
    }
    for (i, c) in configs.iter().enumerate() {
        if c.name.is_empty() {
            return Err(CliError::Config(format!("scenario[{i}].name: must be nonempty")));
        }
        validate_parameters(c, i)?;
    }
    Ok(configs)
}

/// Field accessors with path-carrying errors.
pub struct Params<'a> {
    map: &'a Map<String, Value>,
    path: String,
}

impl<'a> Params<'a> {
    pub fn new(config: &'a ScenarioConfig, index: usize) -> Self {
        Self {
            map: &config.parameters,
            path: format!("scenario[{index}].parameters"),
        }
    }

    fn err(&self, key: &str, msg: &str) -> CliError {
        CliError::Config(format!("{}.{key}: {msg}", self.path))
    }

    pub fn has(&self, key: &str) -> bool {
        self.map.contains_key(key)
    }

    pub fn f64(&self, key: &str) -> CliResult<f64> {
        self.map
            .get(key)
            .ok_or_else(|| self.err(key, "missing required parameter"))?
            .as_f64()
            .ok_or_else(|| self.err(key, "expected a number"))
    }

    pub fn f64_or(&self, key: &str, default: f64) -> CliResult<f64> {
        if self.has(key) {
            self.f64(key)
        } else {
            Ok(default)
        }
    }

    pub fn usize_or(&self, key: &str, default: usize) -> CliResult<usize> {
        if !self.has(key) {
            return Ok(default);
        }
        self.map[key]
            .as_u64()
            .map(|v| v as usize)
            .ok_or_else(|| self.err(key, "expected a nonnegative integer"))
    }

    pub fn u64_opt(&self, key: &str) -> CliResult<Option<u64>> {
        match self.map.get(key) {
            None => Ok(None),
            Some(v) => v
                .as_u64()
                .map(Some)
                .ok_or_else(|| self.err(key, "expected a nonnegative integer")),
        }
    }

    pub fn bool_or(&self, key: &str, default: bool) -> CliResult<bool> {
        match self.map.get(key) {
            None => Ok(default),
            Some(v) => v.as_bool().ok_or_else(|| self.err(key, "expected a boolean")),
        }
    }

    pub fn f64_list(&self, key: &str) -> CliResult<Vec<f64>> {
        let arr = self
            .map
            .get(key)
            .ok_or_else(|| self.err(key, "missing required parameter"))?
            .as_array()
            .ok_or_else(|| self.err(key, "expected an array of numbers"))?;
        arr.iter()
            .map(|v| v.as_f64().ok_or_else(|| self.err(key, "expected an array of numbers")))
            .collect()
    }

    pub fn f64_list_or(&self, key: &str, default: &[f64]) -> CliResult<Vec<f64>> {
        if self.has(key) {
            self.f64_list(key)
        } else {
            Ok(default.to_vec())
        }
    }

    /// Probability list: nonnegative entries summing to 1 within 1e-9.
    pub fn prob_list(&self, key: &str) -> CliResult<Vec<f64>> {
        let v = self.f64_list(key)?;
        if v.is_empty() {
            return Err(self.err(key, "must be nonempty"));
        }
        if v.iter().any(|&x| x < 0.0 || !x.is_finite()) {
            return Err(self.err(key, "entries must be finite and nonnegative"));
        }
        let total: f64 = v.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(self.err(key, &format!("must sum to 1 within 1e-9, got {total}")));
        }
        Ok(v)
    }

    pub fn prob_list_or(&self, key: &str, default: &[f64]) -> CliResult<Vec<f64>> {
        if self.has(key) {
            self.prob_list(key)
        } else {
            Ok(default.to_vec())
        }
    }
}

/// Kind-specific parameter validation performed at ingestion, before any
/// scenario runs.
pub fn validate_parameters(config: &ScenarioConfig, index: usize) -> CliResult<()> {
    let p = Params::new(config, index);
    match config.kind {
        Kind::NoGoCheck => {
            p.prob_list("s")?;
            if p.has("b") {
                p.prob_list("b")?;
            } else {
                let energies = p.f64_list("bath_energies")?;
                if energies.is_empty() {
                    return Err(CliError::Config(format!(
                        "scenario[{index}].parameters.bath_energies: must be nonempty"
                    )));
                }
                let t = p.f64("bath_temperature")?;
                if t <= 0.0 {
                    return Err(CliError::Config(format!(
                        "scenario[{index}].parameters.bath_temperature: must be > 0"
                    )));
                }
            }
        }
        Kind::Swap => {
            let s0 = p.f64("s0")?;
            if !(s0 > 0.0 && s0 < 1.0) {
                return Err(CliError::Config(format!(
                    "scenario[{index}].parameters.s0: must lie strictly in (0, 1)"
                )));
            }
        }
        Kind::NonthermalBath => {
            let s = p.prob_list("s")?;
            if s.len() != 2 {
                return Err(CliError::Config(format!(
                    "scenario[{index}].parameters.s: expected exactly 2 entries"
                )));
            }
            let b01 = p.prob_list("b01")?;
            if b01.len() != 2 || b01.iter().any(|&x| x <= 0.0) {
                return Err(CliError::Config(format!(
                    "scenario[{index}].parameters.b01: expected 2 strictly positive entries"
                )));
            }
        }
        Kind::Correlated => {
            let w = p.prob_list("bath_weights")?;
            let n = p.usize_or("split_index", usize::MAX)?;
            if n >= w.len() {
                return Err(CliError::Config(format!(
                    "scenario[{index}].parameters.split_index: must be < len(bath_weights)"
                )));
            }
        }
        Kind::ApproximateCooling => {
            p.prob_list("s")?;
            p.f64_list("bath_energies")?;
            let t = p.f64("bath_temperature")?;
            if t <= 0.0 {
                return Err(CliError::Config(format!(
                    "scenario[{index}].parameters.bath_temperature: must be > 0"
                )));
            }
            p.bool_or("final_bath_thermal", true)?;
        }
        Kind::Contrast => {
            let s = p.prob_list_or("s", &[0.7, 0.3])?;
            if s.len() != 2 {
                return Err(CliError::Config(format!(
                    "scenario[{index}].parameters.s: expected exactly 2 entries"
                )));
            }
            if p.has("b") {
                let b = p.prob_list("b")?;
                if b.len() != 4 {
                    return Err(CliError::Config(format!(
                        "scenario[{index}].parameters.b: expected exactly 4 entries"
                    )));
                }
            }
            let gamma = p.f64_or("gamma", 1.0)?;
            if gamma < 0.0 {
                return Err(CliError::Config(format!(
                    "scenario[{index}].parameters.gamma: must be >= 0"
                )));
            }
            let dt = p.f64_or("dt", 0.02)?;
            if dt <= 0.0 {
                return Err(CliError::Config(format!(
                    "scenario[{index}].parameters.dt: must be > 0"
                )));
            }
            let horizon = p.f64_or("horizon", 50.0)?;
            if horizon <= 0.0 {
                return Err(CliError::Config(format!(
                    "scenario[{index}].parameters.horizon: must be > 0"
                )));
            }
        }
        Kind::BoundSearch => {
            let s = p.prob_list("s")?;
            let b = p.prob_list("b")?;
            let dim = s.len() * b.len();
            if dim > 16 {
                return Err(CliError::Config(format!(
                    "scenario[{index}].parameters: joint dimension {dim} exceeds 16"
                )));
            }
            let samples = p.usize_or("samples", 10_000)?;
            if samples == 0 || samples > 1_000_000 {
                return Err(CliError::Config(format!(
                    "scenario[{index}].parameters.samples: must be in 1..=1000000"
                )));
            }
        }
    }
    if let Some(seed) = p.u64_opt("seed")? {
        let _ = seed;
    }
    Ok(())
}
