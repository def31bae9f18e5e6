use std::fs;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use super::CliError;
use crate::jost::{JostMethod, DEFAULT_VOLTERRA_MAX_ITER, DEFAULT_VOLTERRA_TOL};
use crate::liouville::DEFAULT_DECAY_TOL;
use crate::spectrum::DEFAULT_SPECTRUM_TOL;

/// Environment variable naming the default config file.
pub const CONFIG_ENV: &str = "CHSCATTER_CONFIG";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    #[default]
    Ode,
    Volterra,
}

/// Run parameters. Unset bounds and spacings are derived from the input by
/// each command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub xmin: Option<f64>,
    pub xmax: Option<f64>,
    pub dx: Option<f64>,
    pub ymin: Option<f64>,
    pub ymax: Option<f64>,
    pub dy: Option<f64>,
    pub decay_tol: f64,
    pub method: Option<Method>,
    pub volterra_tol: f64,
    pub max_iter: usize,
    pub spectrum_tol: f64,
    pub output: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            xmin: None,
            xmax: None,
            dx: None,
            ymin: None,
            ymax: None,
            dy: None,
            decay_tol: DEFAULT_DECAY_TOL,
            method: None,
            volterra_tol: DEFAULT_VOLTERRA_TOL,
            max_iter: DEFAULT_VOLTERRA_MAX_ITER,
            spectrum_tol: DEFAULT_SPECTRUM_TOL,
            output: None,
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_owned(),
            source,
        })?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |msg: String| Err(CliError::Config(msg));
        for (name, v) in [("dx", self.dx), ("dy", self.dy)] {
            if let Some(v) = v {
                if !(v > 0.0 && v.is_finite()) {
                    return bad(format!("{name} must be positive and finite (got {v})"));
                }
            }
        }
        for (name, lo, hi) in [("x", self.xmin, self.xmax), ("y", self.ymin, self.ymax)] {
            for v in [lo, hi].into_iter().flatten() {
                if !v.is_finite() {
                    return bad(format!("{name} bounds must be finite (got {v})"));
                }
            }
            if let (Some(lo), Some(hi)) = (lo, hi) {
                if lo >= hi {
                    return bad(format!(
                        "{name}min must be below {name}max (got {lo} >= {hi})"
                    ));
                }
            }
        }
        for (name, v) in [
            ("decay_tol", self.decay_tol),
            ("volterra_tol", self.volterra_tol),
            ("spectrum_tol", self.spectrum_tol),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return bad(format!("{name} must be positive and finite (got {v})"));
            }
        }
        if self.max_iter == 0 {
            return bad("max_iter must be at least 1".into());
        }
        Ok(())
    }

    pub fn jost_method(&self) -> JostMethod {
        match self.method.unwrap_or_default() {
            Method::Ode => JostMethod::Ode,
            Method::Volterra => JostMethod::Volterra {
                tol: self.volterra_tol,
                max_iter: self.max_iter,
            },
        }
    }
}
