//! Grid sweeps of the speed-limit bound over `(gamma0, r)`.

use std::path::PathBuf;

use altfid_core::dynamics::werner_state;
use altfid_core::fidelity::FidelityKind;
use altfid_core::qsl::{generic_fidelity_bound, qsl_time};
use altfid_core::{Error, QuadratureConfig, ReservoirParams, Result, WernerSpec};
use rayon::prelude::*;
use serde::Deserialize;

use crate::format::g12;

pub const HEADER: &str = "gamma0,r,f_tau,x_tau,tau_qsl,tau_qsl_generic_f1,quad_error,error";

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum GammaGrid {
    List(Vec<f64>),
    /// `count` log-spaced points from `min` to `max` inclusive.
    Log {
        min: f64,
        max: f64,
        count: usize,
    },
}

impl Default for GammaGrid {
    fn default() -> Self {
        GammaGrid::Log {
            min: 0.05,
            max: 20.0,
            count: 60,
        }
    }
}

impl GammaGrid {
    /// Sorted, deduplicated grid.
    pub fn points(&self) -> Result<Vec<f64>> {
        let mut pts = match *self {
            GammaGrid::List(ref v) => v.clone(),
            GammaGrid::Log { min, max, count } => {
                if !(min > 0.0 && max >= min) || count == 0 {
                    return Err(Error::InvalidParameter(format!(
                        "log grid needs 0 < min <= max and count > 0, got {min}, {max}, {count}"
                    )));
                }
                if count == 1 {
                    vec![min]
                } else {
                    let step = (max / min).ln() / (count - 1) as f64;
                    (0..count)
                        .map(|i| {
                            if i + 1 == count {
                                max
                            } else {
                                min * (step * i as f64).exp()
                            }
                        })
                        .collect()
                }
            }
        };
        if pts.is_empty() {
            return Err(Error::InvalidParameter("gamma0 grid is empty".into()));
        }
        if let Some(bad) = pts.iter().find(|g| !(**g > 0.0 && g.is_finite())) {
            return Err(Error::InvalidParameter(format!("gamma0 must be > 0, got {bad}")));
        }
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        Ok(pts)
    }
}

fn default_one() -> f64 {
    1.0
}

fn default_r_values() -> Vec<f64> {
    vec![0.1, 0.5, 0.9, 1.0]
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    #[serde(default = "default_one")]
    pub lambda: f64,
    #[serde(default = "default_one")]
    pub omega0: f64,
    #[serde(default = "default_one")]
    pub tau: f64,
    #[serde(default)]
    pub gamma0_grid: GammaGrid,
    #[serde(default = "default_r_values")]
    pub r_values: Vec<f64>,
    #[serde(default)]
    pub quadrature: QuadratureConfig,
    #[serde(default)]
    pub output_path: Option<PathBuf>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            lambda: 1.0,
            omega0: 1.0,
            tau: 1.0,
            gamma0_grid: GammaGrid::default(),
            r_values: default_r_values(),
            quadrature: QuadratureConfig::default(),
            output_path: None,
        }
    }
}

impl SweepConfig {
    pub fn from_json(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        ReservoirParams::new(1.0, self.lambda, self.omega0)?;
        if !(self.tau > 0.0 && self.tau.is_finite()) {
            return Err(Error::InvalidParameter(format!("tau must be > 0, got {}", self.tau)));
        }
        if self.r_values.is_empty() {
            return Err(Error::InvalidParameter("r_values is empty".into()));
        }
        for &r in &self.r_values {
            WernerSpec::new(r)?;
        }
        self.gamma0_grid.points()?;
        self.quadrature.validate()
    }

    fn r_points(&self) -> Vec<f64> {
        let mut rs = self.r_values.clone();
        rs.sort_by(f64::total_cmp);
        rs.dedup();
        rs
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub gamma0: f64,
    pub r: f64,
    pub f_tau: f64,
    pub x_tau: f64,
    pub tau_qsl: f64,
    pub tau_qsl_generic_f1: f64,
    pub quad_error: f64,
    pub error: Option<String>,
}

impl SweepRow {
    pub fn csv_line(&self) -> String {
        let error = self
            .error
            .as_deref()
            .map(|e| e.replace([',', '\n', '\r'], ";"))
            .unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{}",
            g12(self.gamma0),
            g12(self.r),
            g12(self.f_tau),
            g12(self.x_tau),
            g12(self.tau_qsl),
            g12(self.tau_qsl_generic_f1),
            g12(self.quad_error),
            error
        )
    }
}

fn compute_row(cfg: &SweepConfig, gamma0: f64, r: f64) -> SweepRow {
    let mut row = SweepRow {
        gamma0,
        r,
        f_tau: f64::NAN,
        x_tau: f64::NAN,
        tau_qsl: f64::NAN,
        tau_qsl_generic_f1: f64::NAN,
        quad_error: f64::NAN,
        error: None,
    };
    let setup =
        ReservoirParams::new(gamma0, cfg.lambda, cfg.omega0).and_then(|p| Ok((p, werner_state(WernerSpec::new(r)?)?)));
    let (p, rho0) = match setup {
        Ok(v) => v,
        Err(e) => {
            row.error = Some(e.to_string());
            return row;
        }
    };
    let mut errors = Vec::new();
    match qsl_time(&rho0, &p, cfg.tau, &cfg.quadrature) {
        Ok(b) => {
            row.f_tau = b.f_tau;
            row.x_tau = b.x_tau;
            row.tau_qsl = b.tau_qsl;
            row.quad_error = b.quad_error;
            if !b.converged {
                errors.push(format!("quadrature not converged (error {:.3e})", b.quad_error));
            }
        }
        Err(e) => errors.push(e.to_string()),
    }
    match generic_fidelity_bound(FidelityKind::F1, &rho0, &p, cfg.tau, &cfg.quadrature) {
        Ok(v) => row.tau_qsl_generic_f1 = v,
        Err(e) => errors.push(format!("f1: {e}")),
    }
    if !errors.is_empty() {
        row.error = Some(errors.join("; "));
    }
    row
}

/// Rows sorted by `(r, gamma0)`; computed in parallel, order independent of threads.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    cfg.validate()?;
    let gammas = cfg.gamma0_grid.points()?;
    let points: Vec<(f64, f64)> = cfg
        .r_points()
        .into_iter()
        .flat_map(|r| gammas.iter().map(move |&g| (r, g)))
        .collect();
    Ok(points.par_iter().map(|&(r, g)| compute_row(cfg, g, r)).collect())
}

pub fn to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.csv_line());
        out.push('\n');
    }
    out
}
