//! Scenario configuration files.
//!
//! TOML key/value schema:
//!
//! ```toml
//! radius_m     = 1000.0   # cell radius R in meters
//! alpha        = 3.65     # pathloss exponent
//! h0           = 1.0      # reference gain at 1 m
//! sigma2       = 1.0e-13  # receiver noise variance (power units)
//! power_budget = 1.0      # BS power budget P_M (power units)
//! total_users  = 100.0    # average user count U_T (optional for uniform)
//!
//! [density]
//! kind = "uniform"        # "uniform" or "table"
//! u0   = 3.1831e-5        # users/m² (uniform; derived from total_users if absent)
//! # table = [[0.0, 1.0], [500.0, 2.0], [1000.0, 0.5]]   # (radius_m, users/m²)
//!
//! # optional: rate reporting convention, "real" (default, ½log₂(1+γ))
//! # or "complex" (doubles reported rates)
//! rate_convention = "real"
//! ```
//!
//! For `kind = "table"` the table rows are (radius, density) samples
//! interpolated linearly; `total_users` is required and the table is
//! rescaled so its integral over the disk matches it exactly.

use std::path::Path;

use serde::Deserialize;

use crate::scenario::{PathlossModel, RadialDensity, Scenario};

/// Rate reporting convention at the output boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RateConvention {
    /// Real Gaussian channel, c = ½ log₂(1+γ). The default.
    Real,
    /// Complex baseband channel; reported rates double.
    Complex,
}

impl RateConvention {
    /// Multiplier applied to reported rate columns.
    pub fn rate_scale(self) -> f64 {
        match self {
            RateConvention::Real => 1.0,
            RateConvention::Complex => 2.0,
        }
    }
}

/// A validated configuration: the scenario plus output conventions.
#[derive(Debug, Clone)]
pub struct CellConfig {
    pub scenario: Scenario,
    pub rate_convention: RateConvention,
}

/// Configuration errors; mapped to CLI exit code 2.
#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("config parse error: {0}")]
    Parse(String),
    #[error("missing config key `{key}`")]
    MissingKey { key: &'static str },
    #[error("invalid value for `{key}`: {reason}")]
    InvalidValue { key: &'static str, reason: String },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    radius_m: Option<f64>,
    alpha: Option<f64>,
    h0: Option<f64>,
    sigma2: Option<f64>,
    power_budget: Option<f64>,
    total_users: Option<f64>,
    density: Option<RawDensity>,
    rate_convention: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDensity {
    kind: Option<String>,
    u0: Option<f64>,
    table: Option<Vec<[f64; 2]>>,
}

/// Loads and validates a scenario configuration file.
pub fn load(path: &Path) -> Result<CellConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse(&text)
}

/// Parses a configuration from TOML text.
pub fn parse(text: &str) -> Result<CellConfig, ConfigError> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))?;

    let radius = require(raw.radius_m, "radius_m")?;
    let alpha = require(raw.alpha, "alpha")?;
    let h0 = require(raw.h0, "h0")?;
    let sigma2 = require(raw.sigma2, "sigma2")?;
    let power_budget = require(raw.power_budget, "power_budget")?;
    let density = raw.density.ok_or(ConfigError::MissingKey { key: "density" })?;
    let kind = density.kind.ok_or(ConfigError::MissingKey {
        key: "density.kind",
    })?;

    let pathloss = PathlossModel::new(h0, alpha).map_err(|e| ConfigError::InvalidValue {
        key: "alpha/h0",
        reason: e.to_string(),
    })?;

    let rate_convention = match raw.rate_convention.as_deref() {
        None | Some("real") => RateConvention::Real,
        Some("complex") => RateConvention::Complex,
        Some(other) => {
            return Err(ConfigError::InvalidValue {
                key: "rate_convention",
                reason: format!("expected \"real\" or \"complex\", got \"{other}\""),
            })
        }
    };

    let scenario = match kind.as_str() {
        "uniform" => {
            let area = std::f64::consts::PI * radius * radius;
            let (u0, total_users) = match (density.u0, raw.total_users) {
                (Some(u0), Some(t)) => (u0, t),
                (Some(u0), None) => (u0, u0 * area),
                (None, Some(t)) => (t / area, t),
                (None, None) => {
                    return Err(ConfigError::MissingKey {
                        key: "density.u0 or total_users",
                    })
                }
            };
            Scenario::new(
                radius,
                pathloss,
                sigma2,
                power_budget,
                RadialDensity::Uniform { u0 },
                total_users,
            )
        }
        "table" => {
            let points = density.table.ok_or(ConfigError::MissingKey {
                key: "density.table",
            })?;
            let total_users = raw.total_users.ok_or(ConfigError::MissingKey {
                key: "total_users",
            })?;
            let shape = RadialDensity::Table {
                points: points.iter().map(|p| (p[0], p[1])).collect(),
            };
            // rescale the table so its integral matches total_users exactly
            let rescaled = rescale_table(shape, radius, total_users).map_err(|reason| {
                ConfigError::InvalidValue {
                    key: "density.table",
                    reason,
                }
            })?;
            Scenario::new(radius, pathloss, sigma2, power_budget, rescaled, total_users)
        }
        other => {
            return Err(ConfigError::InvalidValue {
                key: "density.kind",
                reason: format!("expected \"uniform\" or \"table\", got \"{other}\""),
            })
        }
    }
    .map_err(|e| ConfigError::InvalidValue {
        key: "scenario",
        reason: e.to_string(),
    })?;

    Ok(CellConfig {
        scenario,
        rate_convention,
    })
}

fn require(v: Option<f64>, key: &'static str) -> Result<f64, ConfigError> {
    v.ok_or(ConfigError::MissingKey { key })
}

fn rescale_table(
    shape: RadialDensity,
    radius: f64,
    total_users: f64,
) -> Result<RadialDensity, String> {
    // Probe the integral through a throwaway scenario-free path: build the
    // mass with the same closed-form segment integration used everywhere.
    let probe = match &shape {
        RadialDensity::Table { points } => {
            let mut mass = 0.0;
            for w in points.windows(2) {
                let (r0, u0) = w[0];
                let (r1, u1) = w[1];
                if r1 > r0 {
                    let slope = (u1 - u0) / (r1 - r0);
                    let quad = (r1 * r1 - r0 * r0) / 2.0;
                    let cubic = (r1.powi(3) - r0.powi(3)) / 3.0 - r0 * quad;
                    mass += u0 * quad + slope * cubic;
                }
            }
            2.0 * std::f64::consts::PI * mass
        }
        _ => unreachable!(),
    };
    if !(probe > 0.0) || !probe.is_finite() || radius <= 0.0 {
        return Err(format!(
            "table integrates to {probe} users over the disk; need a positive finite mass"
        ));
    }
    let scale = total_users / probe;
    match shape {
        RadialDensity::Table { points } => Ok(RadialDensity::Table {
            points: points.into_iter().map(|(r, u)| (r, u * scale)).collect(),
        }),
        _ => unreachable!(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const GOOD: &str = r#"
radius_m = 1000.0
alpha = 3.65
h0 = 1.0
sigma2 = 1.0
power_budget = 10.0
total_users = 100.0

[density]
kind = "uniform"
"#;

    #[test]
    fn parses_minimal_uniform_config() {
        let cfg = parse(GOOD).unwrap();
        assert_eq!(cfg.scenario.total_users(), 100.0);
        assert!(cfg.scenario.is_uniform_density());
        assert_eq!(cfg.rate_convention, RateConvention::Real);
    }

    #[test]
    fn missing_keys_are_named() {
        let err = parse("alpha = 2.0\n[density]\nkind = \"uniform\"\nu0 = 1.0").unwrap_err();
        assert!(err.to_string().contains("radius_m"), "{err}");
        let err = parse("radius_m = 1.0\nalpha = 2.0\nh0 = 1.0\nsigma2 = 1.0\npower_budget = 1.0")
            .unwrap_err();
        assert!(err.to_string().contains("density"), "{err}");
    }

    #[test]
    fn rejects_invalid_ranges() {
        let bad = GOOD.replace("alpha = 3.65", "alpha = -1.0");
        assert!(parse(&bad).is_err());
        let bad = GOOD.replace("radius_m = 1000.0", "radius_m = 0.0");
        assert!(parse(&bad).is_err());
    }

    #[test]
    fn rejects_unknown_keys() {
        let bad = format!("{GOOD}\nbogus_key = 1\n");
        assert!(parse(&bad).is_err());
    }

    #[test]
    fn table_density_rescaled_to_total_users() {
        let text = r#"
radius_m = 2.0
alpha = 2.0
h0 = 1.0
sigma2 = 1.0
power_budget = 1.0
total_users = 50.0

[density]
kind = "table"
table = [[0.0, 1.0], [2.0, 1.0]]
"#;
        let cfg = parse(text).unwrap();
        assert_eq!(cfg.scenario.total_users(), 50.0);
        assert!(!cfg.scenario.is_uniform_density());
    }

    #[test]
    fn complex_convention_doubles_rates() {
        // top-level key, so it must precede the [density] table
        let text = GOOD.replace("[density]", "rate_convention = \"complex\"\n\n[density]");
        let cfg = parse(&text).unwrap();
        assert_eq!(cfg.rate_convention.rate_scale(), 2.0);
        let bad = GOOD.replace("[density]", "rate_convention = \"imaginary\"\n\n[density]");
        assert!(parse(&bad).is_err());
    }

    #[test]
    fn inconsistent_uniform_pair_rejected() {
        let text = r#"
radius_m = 1.0
alpha = 2.0
h0 = 1.0
sigma2 = 1.0
power_budget = 1.0
total_users = 100.0

[density]
kind = "uniform"
u0 = 1.0
"#;
        assert!(parse(text).is_err());
    }
}
