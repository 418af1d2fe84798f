//! Sweep configuration, JSON loading and error-to-exit-code mapping.

use std::fmt;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use triopo_core::{Error as CoreError, OpoParams, THRESHOLD_MARGIN};

/// Physical parameters without the swept pump power.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ParamSpec {
    pub t0: f64,
    pub t: f64,
    pub mu0: f64,
    pub mu: f64,
    pub chi: f64,
}

impl Default for ParamSpec {
    fn default() -> Self {
        ParamSpec {
            t0: 0.10,
            t: 0.02,
            mu0: 0.0,
            mu: 0.0,
            chi: 1.0,
        }
    }
}

impl ParamSpec {
    pub fn build(&self, sigma: f64) -> Result<OpoParams<f64>, CoreError> {
        OpoParams::new(self.t0, self.t, self.mu0, self.mu, sigma, self.chi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        if self.steps <= 1 {
            return vec![self.min];
        }
        let span = self.max - self.min;
        (0..self.steps)
            .map(|i| self.min + span * i as f64 / (self.steps - 1) as f64)
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OmegaGrid {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
    /// Geometric instead of linear spacing.
    pub log: bool,
}

impl Default for OmegaGrid {
    fn default() -> Self {
        OmegaGrid {
            min: 0.005,
            max: 0.5,
            steps: 100,
            log: false,
        }
    }
}

impl OmegaGrid {
    pub fn points(&self) -> Vec<f64> {
        if self.steps <= 1 {
            return vec![self.min];
        }
        if self.log {
            let ratio = (self.max / self.min).ln();
            (0..self.steps)
                .map(|i| self.min * (ratio * i as f64 / (self.steps - 1) as f64).exp())
                .collect()
        } else {
            Grid {
                min: self.min,
                max: self.max,
                steps: self.steps,
            }
            .points()
        }
    }
}

/// Which result families a sweep emits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputKind {
    /// S1..S3 with optimal parameters (columns s1_min..alpha1).
    Witnesses,
    /// Eigenvalues and logarithmic negativities (columns lambda1..en_diff).
    Negativity,
    /// Extra columns with the six diagonal quadrature variances.
    Spectra,
    /// Post-sweep Monte Carlo cross-check written next to the table.
    Oracle,
}

impl OutputKind {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        match s.trim() {
            "witnesses" => Ok(OutputKind::Witnesses),
            "negativity" => Ok(OutputKind::Negativity),
            "spectra" => Ok(OutputKind::Spectra),
            "oracle" => Ok(OutputKind::Oracle),
            other => Err(CliError::Config(format!(
                "unknown output selection `{other}` (expected witnesses, negativity, spectra or oracle)"
            ))),
        }
    }
}

/// Full sweep configuration. The JSON file format uses exactly these field
/// names; every field can be overridden from the command line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    pub params: ParamSpec,
    pub sigma_grid: Grid,
    pub omega_grid: OmegaGrid,
    pub outputs: Vec<OutputKind>,
    /// Only used by the oracle output family.
    pub seed: u64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            params: ParamSpec::default(),
            sigma_grid: Grid {
                min: 1.05,
                max: 2.0,
                steps: 40,
            },
            omega_grid: OmegaGrid::default(),
            outputs: vec![OutputKind::Witnesses, OutputKind::Negativity],
            seed: 42,
        }
    }
}

impl SweepConfig {
    pub fn from_json_file(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("bad config {}: {e}", path.display())))
    }

    pub fn selected(&self, kind: OutputKind) -> bool {
        self.outputs.contains(&kind)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let s = &self.sigma_grid;
        if !(s.min.is_finite() && s.max.is_finite()) || s.steps == 0 {
            return Err(CliError::Config("sigma grid must be finite and non-empty".into()));
        }
        if s.steps > 1 && !(s.min < s.max) {
            return Err(CliError::Config("sigma grid must be strictly increasing".into()));
        }
        if s.min < 1.0 + THRESHOLD_MARGIN {
            return Err(CliError::Config(format!(
                "sigma_min = {} is below the linearization margin 1 + {THRESHOLD_MARGIN}",
                s.min
            )));
        }
        let w = &self.omega_grid;
        if !(w.min.is_finite() && w.max.is_finite()) || w.steps == 0 {
            return Err(CliError::Config("omega grid must be finite and non-empty".into()));
        }
        if !(w.min > 0.0) {
            return Err(CliError::Config(
                "omega_min must be positive (omega = 0 is singular)".into(),
            ));
        }
        if w.steps > 1 && !(w.min < w.max) {
            return Err(CliError::Config("omega grid must be strictly increasing".into()));
        }
        // the physical parameters must construct at every sigma on the grid
        self.params
            .build(s.min)
            .map_err(|e| CliError::Config(e.to_string()))?;
        Ok(())
    }
}

/// Process-level error with the documented exit codes: 2 for configuration
/// problems, 3 for numeric failures, 4 for an oracle mismatch.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Config(String),
    Numeric(String),
    OracleMismatch { fraction: f64 },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::OracleMismatch { .. } => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "config error: {msg}"),
            CliError::Numeric(msg) => write!(f, "numeric failure: {msg}"),
            CliError::OracleMismatch { fraction } => write!(
                f,
                "oracle mismatch: {:.1}% of z-scores exceed |z| = 3",
                fraction * 100.0
            ),
        }
    }
}

impl std::error::Error for CliError {}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Range { .. } | CoreError::Threshold { .. } | CoreError::Config(_) => {
                CliError::Config(e.to_string())
            }
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

/// Format a value with 12 significant digits for the CSV output.
pub fn fmt_sig(x: f64) -> String {
    format!("{x:.11e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grids() {
        let cfg = SweepConfig::default();
        let s = cfg.sigma_grid.points();
        let w = cfg.omega_grid.points();
        assert_eq!(s.len(), 40);
        assert_eq!(w.len(), 100);
        assert!((s[0] - 1.05).abs() < 1e-15 && (s[39] - 2.0).abs() < 1e-15);
        assert!((w[0] - 0.005).abs() < 1e-15 && (w[99] - 0.5).abs() < 1e-15);
        cfg.validate().unwrap();
    }

    #[test]
    fn log_spacing() {
        let g = OmegaGrid {
            min: 0.01,
            max: 1.0,
            steps: 3,
            log: true,
        };
        let pts = g.points();
        assert!((pts[1] - 0.1).abs() < 1e-12);
        assert!((pts[2] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn validation_failures() {
        let mut cfg = SweepConfig::default();
        cfg.sigma_grid.min = 1.0;
        assert!(cfg.validate().is_err());

        let mut cfg = SweepConfig::default();
        cfg.omega_grid.min = 0.0;
        assert!(cfg.validate().is_err());

        let cfg = SweepConfig {
            sigma_grid: Grid {
                min: 2.0,
                max: 1.5,
                steps: 10,
            },
            ..SweepConfig::default()
        };
        assert!(cfg.validate().is_err());

        let mut cfg = SweepConfig::default();
        cfg.params.t0 = 1.5;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn config_roundtrips_through_json() {
        let cfg = SweepConfig::default();
        let text = serde_json::to_string(&cfg).unwrap();
        let back: SweepConfig = serde_json::from_str(&text).unwrap();
        assert_eq!(cfg, back);
    }

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(fmt_sig(1.05), "1.05000000000e0");
        assert_eq!(fmt_sig(0.000123456789012345), "1.23456789012e-4");
    }
}
