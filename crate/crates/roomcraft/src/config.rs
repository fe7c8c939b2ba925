//! TOML run configuration. Every field is optional; missing ones keep their
//! defaults, and command-line flags override whatever the file says.

use std::path::Path;

use roomcraft_core::constraints::{ConstraintConfig, DistanceMeasure};
use roomcraft_core::metrics::MetricThresholds;
use roomcraft_core::placement::CapsConfig;
use serde::Deserialize;

pub const DEFAULT_BUDGET: u32 = 50;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("invalid config: {0}")]
    Parse(String),
    #[error("invalid config value: {0}")]
    Value(String),
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct PlacementSection {
    alpha0: Option<f64>,
    beta0: Option<f64>,
    /// Convenience: sets `alpha0`/`beta0` from an α/β ratio.
    ratio: Option<f64>,
    k: Option<f64>,
    delta_alpha: Option<f64>,
    mu: Option<f64>,
    grid_step: Option<f64>,
    max_retries: Option<u32>,
    seed: Option<u64>,
    overlap_tolerance: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConstraintSection {
    orientation_tolerance_deg: Option<f64>,
    alignment_tolerance: Option<f64>,
    distance_measure: Option<String>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct MetricSection {
    boundary_tolerance: Option<f64>,
    overlap_fraction: Option<f64>,
    clearance_depth: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct OptimizeSection {
    budget: Option<u32>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    #[serde(default)]
    placement: PlacementSection,
    #[serde(default)]
    constraints: ConstraintSection,
    #[serde(default)]
    metrics: MetricSection,
    #[serde(default)]
    optimize: OptimizeSection,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub caps: CapsConfig,
    pub constraints: ConstraintConfig,
    pub metrics: MetricThresholds,
    pub budget: u32,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            caps: CapsConfig::default(),
            constraints: ConstraintConfig::default(),
            metrics: MetricThresholds::default(),
            budget: DEFAULT_BUDGET,
        }
    }
}

fn set<T: Copy>(slot: &mut T, v: Option<T>) {
    if let Some(v) = v {
        *slot = v;
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        let file: ConfigFile = toml::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))?;
        let mut cfg = RunConfig::default();
        let p = file.placement;
        if let Some(r) = p.ratio {
            if p.alpha0.is_some() || p.beta0.is_some() {
                return Err(ConfigError::Value("placement.ratio excludes alpha0/beta0".into()));
            }
            if !(r.is_finite() && r > 0.0) {
                return Err(ConfigError::Value(format!("placement.ratio must be positive, got {r}")));
            }
            cfg.caps = cfg.caps.with_ratio(r);
        }
        set(&mut cfg.caps.alpha0, p.alpha0);
        set(&mut cfg.caps.beta0, p.beta0);
        set(&mut cfg.caps.k, p.k);
        set(&mut cfg.caps.delta_alpha, p.delta_alpha);
        set(&mut cfg.caps.mu, p.mu);
        set(&mut cfg.caps.grid_step, p.grid_step);
        set(&mut cfg.caps.max_retries, p.max_retries);
        set(&mut cfg.caps.seed, p.seed);
        set(&mut cfg.caps.overlap_tolerance, p.overlap_tolerance);

        let c = file.constraints;
        set(&mut cfg.constraints.orientation_tolerance, c.orientation_tolerance_deg.map(f64::to_radians));
        set(&mut cfg.constraints.alignment_tolerance, c.alignment_tolerance);
        if let Some(m) = c.distance_measure {
            cfg.constraints.distance_measure = match m.as_str() {
                "center" => DistanceMeasure::Center,
                "surface" => DistanceMeasure::Surface,
                other => return Err(ConfigError::Value(format!("unknown distance_measure `{other}`"))),
            };
        }

        let m = file.metrics;
        set(&mut cfg.metrics.boundary_tolerance, m.boundary_tolerance);
        set(&mut cfg.metrics.overlap_fraction, m.overlap_fraction);
        set(&mut cfg.metrics.clearance_depth, m.clearance_depth);

        set(&mut cfg.budget, file.optimize.budget);
        cfg.check()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_toml(&text)
    }

    pub fn check(&self) -> Result<(), ConfigError> {
        self.caps.validate().map_err(|e| ConfigError::Value(e.to_string()))?;
        let t = self.constraints.orientation_tolerance;
        if !(t.is_finite() && t >= 0.0) {
            return Err(ConfigError::Value("orientation tolerance must be non-negative".into()));
        }
        let a = self.constraints.alignment_tolerance;
        if !(a.is_finite() && a >= 0.0) {
            return Err(ConfigError::Value("alignment tolerance must be non-negative".into()));
        }
        let m = &self.metrics;
        for (name, v) in [
            ("boundary_tolerance", m.boundary_tolerance),
            ("overlap_fraction", m.overlap_fraction),
            ("clearance_depth", m.clearance_depth),
        ] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(ConfigError::Value(format!("metrics.{name} must be non-negative")));
            }
        }
        if self.budget == 0 {
            return Err(ConfigError::Value("optimize.budget must be at least 1".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_is_defaults() {
        assert_eq!(RunConfig::from_toml("").unwrap(), RunConfig::default());
    }

    #[test]
    fn sections_override() {
        let cfg = RunConfig::from_toml(
            "[placement]\nratio = 3.0\nmax_retries = 10\n[constraints]\norientation_tolerance_deg = 10\n\
             distance_measure = \"surface\"\n[optimize]\nbudget = 5\n",
        )
        .unwrap();
        assert!((cfg.caps.alpha0 - 0.75).abs() < 1e-12);
        assert!((cfg.caps.beta0 - 0.25).abs() < 1e-12);
        assert_eq!(cfg.caps.max_retries, 10);
        assert!((cfg.constraints.orientation_tolerance - 10f64.to_radians()).abs() < 1e-12);
        assert_eq!(cfg.constraints.distance_measure, DistanceMeasure::Surface);
        assert_eq!(cfg.budget, 5);
    }

    #[test]
    fn rejects_bad_values() {
        assert!(RunConfig::from_toml("[placement]\nalpha0 = 0.9\nbeta0 = 0.9\n").is_err());
        assert!(RunConfig::from_toml("[placement]\nbogus = 1\n").is_err());
        assert!(RunConfig::from_toml("[optimize]\nbudget = 0\n").is_err());
        assert!(RunConfig::from_toml("[placement\n").is_err());
    }
}
