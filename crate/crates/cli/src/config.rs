// SPDX-License-Identifier: Apache-2.0

//! Flat INI-style run configuration.
//!
//! Grammar, one item per line:
//!
//! ```text
//! # comment            (also ';')
//! [section]            physics | kossakowski | protocol | scan | output
//! key = value
//! ```
//!
//! Keys before the first section header, unknown sections, unknown keys and
//! duplicate keys are all errors. Angle values (`theta`, `phi`) and grid
//! bounds accept a `pi` multiplier: `0.187pi`, `2pi`, `pi`, `0.5*pi`.
//! Grids are written `start:stop:count`.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::PathBuf;

use lgnu_core::model::{DEFAULT_DM2, DEFAULT_ENERGY, DEFAULT_THETA};
use lgnu_core::{
    validate_kossakowski, Grid, KossakowskiCoefficients, OscillationParams, ScanMode,
    ScanParameter, DEFAULT_PHI_POINTS,
};
use thiserror::Error;

pub const DEFAULT_TAU: f64 = 0.1;
pub const DEFAULT_PRECISION: usize = 12;

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid {field}: {message}")]
    Validation { field: String, message: String },
}

fn parse_err(line: usize, message: impl Into<String>) -> ConfigError {
    ConfigError::Parse { line, message: message.into() }
}

fn invalid(field: &str, message: impl Into<String>) -> ConfigError {
    ConfigError::Validation { field: field.to_string(), message: message.into() }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ScanConfig {
    pub parameter: Option<ScanParameter>,
    pub grid: Option<Grid>,
    pub mode: ScanMode,
    pub outer_parameter: Option<ScanParameter>,
    pub outer_grid: Option<Grid>,
    pub phi_points: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputConfig {
    pub csv: Option<PathBuf>,
    pub svg: Option<PathBuf>,
    pub envelope: Option<PathBuf>,
    /// Significant digits for CSV numbers.
    pub precision: usize,
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig { csv: None, svg: None, envelope: None, precision: DEFAULT_PRECISION }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: OscillationParams,
    pub coefficients: KossakowskiCoefficients,
    /// Spacing of the anchored time triple `(0, τ, 2τ)`.
    pub tau: f64,
    pub scan: ScanConfig,
    pub output: OutputConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            params: OscillationParams {
                theta: DEFAULT_THETA,
                dm2: DEFAULT_DM2,
                energy: DEFAULT_ENERGY,
                v_cc: 0.0,
                phi: 0.0,
            },
            coefficients: KossakowskiCoefficients::ZERO,
            tau: DEFAULT_TAU,
            scan: ScanConfig { phi_points: DEFAULT_PHI_POINTS, ..Default::default() },
            output: OutputConfig::default(),
        }
    }
}

/// One `section.key = value` assignment with its source line (0 for flags).
#[derive(Debug, Clone, PartialEq)]
pub struct Entry {
    pub section: String,
    pub key: String,
    pub value: String,
    pub line: usize,
}

const SECTIONS: [&str; 5] = ["physics", "kossakowski", "protocol", "scan", "output"];

/// Splits config text into entries without interpreting values.
pub fn parse_entries(text: &str) -> Result<Vec<Entry>, ConfigError> {
    let mut section: Option<String> = None;
    let mut entries: Vec<Entry> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let s = raw.trim();
        if s.is_empty() || s.starts_with('#') || s.starts_with(';') {
            continue;
        }
        if let Some(rest) = s.strip_prefix('[') {
            let name = rest
                .strip_suffix(']')
                .ok_or_else(|| parse_err(line, "unterminated section header"))?
                .trim();
            if !SECTIONS.contains(&name) {
                return Err(parse_err(line, format!("unknown section [{name}]")));
            }
            section = Some(name.to_string());
            continue;
        }
        let (key, value) = s
            .split_once('=')
            .ok_or_else(|| parse_err(line, format!("expected 'key = value', got '{s}'")))?;
        let (key, value) = (key.trim(), value.trim());
        let section = section
            .clone()
            .ok_or_else(|| parse_err(line, format!("key '{key}' appears before any section header")))?;
        if key.is_empty() {
            return Err(parse_err(line, "empty key"));
        }
        if entries.iter().any(|e| e.section == section && e.key == key) {
            return Err(parse_err(line, format!("duplicate key '{key}' in [{section}]")));
        }
        entries.push(Entry { section, key: key.to_string(), value: value.to_string(), line });
    }
    Ok(entries)
}

/// Parses a real number with an optional `pi` multiplier.
pub fn parse_real_pi(s: &str) -> Option<f64> {
    let s = s.trim();
    if let Some(head) = s.strip_suffix("pi") {
        let head = head.trim().trim_end_matches('*').trim();
        let factor = match head {
            "" => 1.0,
            "-" => -1.0,
            h => h.parse::<f64>().ok()?,
        };
        return Some(factor * PI);
    }
    s.parse::<f64>().ok()
}

/// Parses `start:stop:count`.
pub fn parse_grid(s: &str) -> Result<Grid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("grid '{s}' must be start:stop:count"));
    }
    let start = parse_real_pi(parts[0]).ok_or_else(|| format!("bad grid start '{}'", parts[0]))?;
    let stop = parse_real_pi(parts[1]).ok_or_else(|| format!("bad grid stop '{}'", parts[1]))?;
    let count = parts[2]
        .trim()
        .parse::<usize>()
        .map_err(|_| format!("bad grid count '{}'", parts[2]))?;
    Grid::new(start, stop, count).map_err(|e| e.to_string())
}

impl RunConfig {
    /// Applies entries on top of `self`, later entries winning.
    pub fn apply(&mut self, entries: &[Entry]) -> Result<(), ConfigError> {
        for e in entries {
            self.apply_one(e)?;
        }
        Ok(())
    }

    fn apply_one(&mut self, e: &Entry) -> Result<(), ConfigError> {
        let line = e.line;
        let where_ = |msg: String| {
            if line > 0 {
                parse_err(line, msg)
            } else {
                invalid(&format!("{}.{}", e.section, e.key), msg)
            }
        };
        let real = || {
            e.value
                .parse::<f64>()
                .map_err(|_| where_(format!("'{}' is not a number for {}", e.value, e.key)))
        };
        let angle = || {
            parse_real_pi(&e.value)
                .ok_or_else(|| where_(format!("'{}' is not an angle for {}", e.value, e.key)))
        };
        let unknown = || where_(format!("unknown key '{}' in [{}]", e.key, e.section));
        let k = &mut self.coefficients.c;
        match (e.section.as_str(), e.key.as_str()) {
            ("physics", "theta") => self.params.theta = angle()?,
            ("physics", "phi") => self.params.phi = angle()?,
            ("physics", "dm2") => self.params.dm2 = real()?,
            ("physics", "energy") => self.params.energy = real()?,
            ("physics", "v_cc") => self.params.v_cc = real()?,
            ("kossakowski", key) => {
                let (i, j) = match key {
                    "c11" => (0, 0),
                    "c22" => (1, 1),
                    "c33" => (2, 2),
                    "c12" | "c21" => (0, 1),
                    "c13" | "c31" => (0, 2),
                    "c23" | "c32" => (1, 2),
                    _ => return Err(unknown()),
                };
                let v = real()?;
                k[i][j] = v;
                k[j][i] = v;
            }
            ("protocol", "tau") => self.tau = real()?,
            ("scan", "parameter") => {
                self.scan.parameter = Some(e.value.parse().map_err(|x: lgnu_core::Error| where_(x.to_string()))?)
            }
            ("scan", "outer_parameter") => {
                self.scan.outer_parameter =
                    Some(e.value.parse().map_err(|x: lgnu_core::Error| where_(x.to_string()))?)
            }
            ("scan", "grid") => self.scan.grid = Some(parse_grid(&e.value).map_err(where_)?),
            ("scan", "outer_grid") => self.scan.outer_grid = Some(parse_grid(&e.value).map_err(where_)?),
            ("scan", "mode") => {
                self.scan.mode = e.value.parse().map_err(|x: lgnu_core::Error| where_(x.to_string()))?
            }
            ("scan", "phi_points") => {
                self.scan.phi_points = e
                    .value
                    .parse()
                    .ok()
                    .filter(|&n: &usize| n >= 1)
                    .ok_or_else(|| where_(format!("phi_points '{}' must be a positive integer", e.value)))?
            }
            ("output", "csv") => self.output.csv = Some(PathBuf::from(&e.value)),
            ("output", "svg") => self.output.svg = Some(PathBuf::from(&e.value)),
            ("output", "envelope") => self.output.envelope = Some(PathBuf::from(&e.value)),
            ("output", "precision") => {
                self.output.precision = e
                    .value
                    .parse()
                    .ok()
                    .filter(|n: &usize| (1..=17).contains(n))
                    .ok_or_else(|| where_(format!("precision '{}' must be 1..=17", e.value)))?
            }
            _ => return Err(unknown()),
        }
        Ok(())
    }

    /// Physical and protocol checks, excluding the Kossakowski bounds.
    pub fn validate_physics(&self) -> Result<(), ConfigError> {
        let p = &self.params;
        let checks: [(&str, f64, bool, &str); 6] = [
            ("physics.theta", p.theta, (0.0..=PI / 2.0).contains(&p.theta), "must lie in [0, pi/2]"),
            ("physics.dm2", p.dm2, p.dm2 >= 0.0, "must be >= 0"),
            ("physics.energy", p.energy, p.energy > 0.0, "must be > 0"),
            ("physics.v_cc", p.v_cc, p.v_cc >= 0.0, "must be >= 0"),
            ("physics.phi", p.phi, (0.0..=2.0 * PI).contains(&p.phi), "must lie in [0, 2pi]"),
            ("protocol.tau", self.tau, self.tau > 0.0, "must be > 0"),
        ];
        for (field, value, ok, bound) in checks {
            if !value.is_finite() || !ok {
                return Err(invalid(field, format!("{value} {bound}")));
            }
        }
        for (i, v) in self.coefficients.six().iter().enumerate() {
            if !v.is_finite() {
                return Err(invalid("kossakowski", format!("coefficient #{} is not finite", i + 1)));
            }
        }
        Ok(())
    }

    /// Full validation including `|c_ij| <= (c_ii + c_jj)/2`.
    pub fn validate(&self) -> Result<(), ConfigError> {
        self.validate_physics()?;
        let report = validate_kossakowski(&self.coefficients)
            .map_err(|e| invalid("kossakowski", e.to_string()))?;
        if !report.passed() {
            return Err(invalid("kossakowski", report.to_string()));
        }
        Ok(())
    }

    /// Serialises to the config grammar; parsing the output reproduces `self`.
    pub fn to_config_string(&self) -> String {
        let mut s = String::new();
        let p = &self.params;
        let [c11, c22, c33, c12, c13, c23] = self.coefficients.six();
        let _ = writeln!(s, "[physics]");
        for (k, v) in [("theta", p.theta), ("dm2", p.dm2), ("energy", p.energy), ("v_cc", p.v_cc), ("phi", p.phi)] {
            let _ = writeln!(s, "{k} = {v:?}");
        }
        let _ = writeln!(s, "[kossakowski]");
        for (k, v) in [("c11", c11), ("c22", c22), ("c33", c33), ("c12", c12), ("c13", c13), ("c23", c23)] {
            let _ = writeln!(s, "{k} = {v:?}");
        }
        let _ = writeln!(s, "[protocol]");
        let _ = writeln!(s, "tau = {:?}", self.tau);
        let _ = writeln!(s, "[scan]");
        if let Some(p) = self.scan.parameter {
            let _ = writeln!(s, "parameter = {p}");
        }
        if let Some(g) = &self.scan.grid {
            let _ = writeln!(s, "grid = {}", grid_string(g));
        }
        let _ = writeln!(s, "mode = {}", self.scan.mode.name());
        if let Some(p) = self.scan.outer_parameter {
            let _ = writeln!(s, "outer_parameter = {p}");
        }
        if let Some(g) = &self.scan.outer_grid {
            let _ = writeln!(s, "outer_grid = {}", grid_string(g));
        }
        let _ = writeln!(s, "phi_points = {}", self.scan.phi_points);
        let _ = writeln!(s, "[output]");
        for (k, v) in [("csv", &self.output.csv), ("svg", &self.output.svg), ("envelope", &self.output.envelope)] {
            if let Some(path) = v {
                let _ = writeln!(s, "{k} = {}", path.display());
            }
        }
        let _ = writeln!(s, "precision = {}", self.output.precision);
        s
    }
}

pub fn grid_string(g: &Grid) -> String {
    format!("{:?}:{:?}:{}", g.start(), g.stop(), g.count())
}

/// Parses and fully validates config text on top of the defaults.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let mut cfg = RunConfig::default();
    cfg.apply(&parse_entries(text)?)?;
    cfg.validate()?;
    Ok(cfg)
}

/// Parses a `section.key=value` override.
pub fn parse_override(s: &str) -> Result<Entry, ConfigError> {
    let (lhs, value) = s
        .split_once('=')
        .ok_or_else(|| invalid("--set", format!("'{s}' must be section.key=value")))?;
    let (section, key) = lhs
        .trim()
        .split_once('.')
        .ok_or_else(|| invalid("--set", format!("'{lhs}' must be section.key")))?;
    if !SECTIONS.contains(&section) {
        return Err(invalid("--set", format!("unknown section '{section}'")));
    }
    Ok(Entry {
        section: section.to_string(),
        key: key.trim().to_string(),
        value: value.trim().to_string(),
        line: 0,
    })
}
