//! Run configuration: defaults, a `key=value` file and flag overrides.

use std::fmt;
use std::str::FromStr;

use nrank_core::algnum::DependenceConfig;
use nrank_core::ec::StructureConfig;
use nrank_core::spectral::SpectralConfig;

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format {s:?}, expected csv or json")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

/// Pass/fail thresholds used only by `paper-regression`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Thresholds {
    /// Exceptional growth slope must reach this multiple of the reference height.
    pub exceptional_slope_factor: f64,
    /// Regular growth slope must stay below this.
    pub regular_slope_max: f64,
    /// Gcd slope of non-isogenous point counts, as a multiple of `log q`.
    pub gcd_slope_factor: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            exceptional_slope_factor: 0.9,
            regular_slope_max: 0.1,
            gcd_slope_factor: 0.05,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    /// Starting precision in bits for heights and root enclosures.
    pub precision: u32,
    /// Precision at which the dependence test gives up.
    pub max_precision: u32,
    /// Largest exponent denominator tried by the dependence test.
    pub bound: u32,
    /// Length of growth series and experiments.
    pub n_max: u64,
    /// Largest modulus accepted by `ord`.
    pub modulus_budget: u64,
    /// Largest irreducible factor degree attempted over `Q`.
    pub degree_cap: usize,
    /// Largest `q^n` whose points are enumerated.
    pub exhaustive_limit: u64,
    /// Largest `q^n` handled by point sampling.
    pub sampling_limit: u64,
    pub seed: u64,
    pub format: Format,
    pub thresholds: Thresholds,
}

impl Default for RunConfig {
    fn default() -> Self {
        let s = StructureConfig::default();
        let d = SpectralConfig::default();
        RunConfig {
            precision: d.dependence.start_precision,
            max_precision: d.dependence.max_precision,
            bound: d.dependence.bound,
            n_max: 60,
            modulus_budget: 1_000_000,
            degree_cap: d.degree_cap,
            exhaustive_limit: s.exhaustive_limit,
            sampling_limit: s.sampling_limit,
            seed: 0,
            format: Format::Csv,
            thresholds: Thresholds::default(),
        }
    }
}

fn parse_value<T: FromStr>(key: &str, value: &str) -> Result<T, CliError> {
    value
        .parse()
        .map_err(|_| CliError::parse("config", format!("bad value {value:?} for {key}")))
}

impl RunConfig {
    /// Apply one `key=value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        let v = value.trim();
        match key.trim() {
            "precision" => self.precision = parse_value(key, v)?,
            "max_precision" => self.max_precision = parse_value(key, v)?,
            "bound" => self.bound = parse_value(key, v)?,
            "n_max" => self.n_max = parse_value(key, v)?,
            "modulus_budget" => self.modulus_budget = parse_value(key, v)?,
            "degree_cap" => self.degree_cap = parse_value(key, v)?,
            "exhaustive_limit" => self.exhaustive_limit = parse_value(key, v)?,
            "sampling_limit" => self.sampling_limit = parse_value(key, v)?,
            "seed" => self.seed = parse_value(key, v)?,
            "format" => self.format = parse_value(key, v)?,
            "threshold.exceptional_slope_factor" => {
                self.thresholds.exceptional_slope_factor = parse_value(key, v)?
            }
            "threshold.regular_slope_max" => self.thresholds.regular_slope_max = parse_value(key, v)?,
            "threshold.gcd_slope_factor" => self.thresholds.gcd_slope_factor = parse_value(key, v)?,
            other => return Err(CliError::parse("config", format!("unknown key {other:?}"))),
        }
        Ok(())
    }

    /// Read `key=value` lines; blank lines and text after `#` are ignored.
    pub fn apply_text(&mut self, text: &str) -> Result<(), CliError> {
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::parse("config", format!("line {}: expected key=value", i + 1)))?;
            self.set(k, v)?;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let caps = [
            ("precision", self.precision as u64),
            ("max_precision", self.max_precision as u64),
            ("bound", self.bound as u64),
            ("n_max", self.n_max),
            ("modulus_budget", self.modulus_budget),
            ("degree_cap", self.degree_cap as u64),
            ("sampling_limit", self.sampling_limit),
        ];
        if let Some((k, _)) = caps.iter().find(|(_, v)| *v == 0) {
            return Err(CliError::usage(format!("{k} must be positive")));
        }
        if self.max_precision < self.precision {
            return Err(CliError::usage("max_precision is below precision".to_string()));
        }
        Ok(())
    }

    pub fn spectral(&self) -> SpectralConfig {
        SpectralConfig {
            dependence: DependenceConfig {
                bound: self.bound,
                start_precision: self.precision,
                max_precision: self.max_precision,
            },
            degree_cap: self.degree_cap,
        }
    }

    pub fn structure(&self) -> StructureConfig {
        StructureConfig {
            exhaustive_limit: self.exhaustive_limit,
            sampling_limit: self.sampling_limit,
            seed: self.seed,
            ..StructureConfig::default()
        }
    }
}
