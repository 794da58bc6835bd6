//! Resolved experiment configuration: defaults, then the key=value config
//! file, then command-line flags.

use std::path::{Path, PathBuf};

use zetalab::ladder::LadderMode;
use zetalab::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    pub fn ext(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub eps_min: f64,
    /// Default absolute quadrature tolerance for direct moment requests.
    pub tol: f64,
    pub solver_tol: f64,
    pub t0: f64,
    pub mode: LadderMode,
    pub budget: u64,
    pub cache_path: PathBuf,
    pub out_dir: PathBuf,
    pub format: OutputFormat,
    /// Critical-line fast-path threshold; infinite disables it.
    pub rs_threshold: f64,
    /// Per-unit-length tolerance for ladder/functional moment evaluations.
    pub moment_unit_tol: f64,
    /// Empirical half-width for the Fermat verdict.
    pub band: f64,
    pub expectations: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            eps_min: 0.05,
            tol: 1e-6,
            solver_tol: 1e-10,
            t0: 200.0,
            mode: LadderMode::Exact,
            budget: 50_000_000,
            cache_path: PathBuf::from("zetalab.cache"),
            out_dir: PathBuf::from("out"),
            format: OutputFormat::Csv,
            rs_threshold: 3000.0,
            moment_unit_tol: 1e-4,
            band: 0.3,
            expectations: None,
        }
    }
}

impl ExperimentConfig {
    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Integrity(format!("cannot read config {}: {e}", path.display())))?;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Integrity(format!(
                    "config {} line {}: expected key=value",
                    path.display(),
                    lineno + 1
                ))
            })?;
            self.set(key.trim(), value.trim())?;
        }
        Ok(())
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = |what: &str| Error::Domain(format!("config key {key}: {what} `{value}`"));
        let f = |v: &str| v.parse::<f64>().map_err(|_| bad("bad number"));
        match key {
            "eps_min" => self.eps_min = f(value)?,
            "tol" => self.tol = f(value)?,
            "solver_tol" => self.solver_tol = f(value)?,
            "t0" => self.t0 = f(value)?,
            "budget" => {
                self.budget = value.parse().map_err(|_| bad("bad integer"))?;
            }
            "rs_threshold" => {
                self.rs_threshold = if value == "off" { f64::INFINITY } else { f(value)? }
            }
            "moment_unit_tol" => self.moment_unit_tol = f(value)?,
            "band" => self.band = f(value)?,
            "mode" => {
                self.mode = match value {
                    "exact" => LadderMode::Exact,
                    "asymptotic" => LadderMode::Asymptotic,
                    _ => return Err(bad("expected exact|asymptotic")),
                }
            }
            "format" => {
                self.format = match value {
                    "csv" => OutputFormat::Csv,
                    "json" => OutputFormat::Json,
                    _ => return Err(bad("expected csv|json")),
                }
            }
            "cache" => self.cache_path = PathBuf::from(value),
            "out_dir" => self.out_dir = PathBuf::from(value),
            "expectations" => self.expectations = Some(PathBuf::from(value)),
            _ => return Err(Error::Domain(format!("unknown config key `{key}`"))),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eps_min > 0.0 && self.tol > 0.0 && self.solver_tol > 0.0) {
            return Err(Error::Domain("all tolerances must be positive".into()));
        }
        if self.budget < 1_000_000 {
            return Err(Error::Domain(format!(
                "budget {} below the 1e6 floor",
                self.budget
            )));
        }
        Ok(())
    }

    /// Flat, ordered view for the run manifest.
    pub fn pairs(&self) -> Vec<(String, String)> {
        vec![
            ("eps_min".into(), format!("{:e}", self.eps_min)),
            ("tol".into(), format!("{:e}", self.tol)),
            ("solver_tol".into(), format!("{:e}", self.solver_tol)),
            ("t0".into(), format!("{}", self.t0)),
            (
                "mode".into(),
                match self.mode {
                    LadderMode::Exact => "exact".into(),
                    LadderMode::Asymptotic => "asymptotic".into(),
                },
            ),
            ("budget".into(), format!("{}", self.budget)),
            ("rs_threshold".into(), format!("{}", self.rs_threshold)),
            (
                "moment_unit_tol".into(),
                format!("{:e}", self.moment_unit_tol),
            ),
            ("band".into(), format!("{}", self.band)),
            ("cache".into(), self.cache_path.display().to_string()),
            ("out_dir".into(), self.out_dir.display().to_string()),
            ("format".into(), self.format.ext().into()),
        ]
    }
}
