//! Direct numerical solution of `Ġ(t) = -∫₀ᵗ f(t - s) G(s) ds`, `G(0) = 1`.
//!
//! The convolution uses the trapezoidal rule on the history and each step is
//! an explicit-Euler predictor followed by one trapezoidal corrector. Cost is
//! `O(steps²)`; global error is `O(h²)`.

use num_complex::Complex64;

use super::{memory_kernel, ReservoirParams};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct VolterraSolution {
    pub times: Vec<f64>,
    pub g: Vec<f64>,
    pub g_dot: Vec<f64>,
}

pub fn solve_g_volterra_with_rate(p: &ReservoirParams, t_max: f64, steps: usize) -> Result<VolterraSolution> {
    p.validate()?;
    if steps < 100 {
        return Err(Error::InvalidParameter(format!(
            "Volterra solver needs >= 100 steps, got {steps}"
        )));
    }
    if !(t_max > 0.0 && t_max.is_finite()) {
        return Err(Error::InvalidParameter(format!("t_max must be > 0, got {t_max}")));
    }
    let h = t_max / steps as f64;
    if h > 1.0 / (10.0 * p.lambda) {
        return Err(Error::InvalidParameter(format!(
            "step {h} too coarse: need at least 10 steps per 1/lambda = {}",
            1.0 / p.lambda
        )));
    }

    let n = steps + 1;
    let kernel: Vec<f64> = (0..n).map(|k| memory_kernel(k as f64 * h, p)).collect();
    let mut g = vec![0.0; n];
    let mut gd = vec![0.0; n];
    g[0] = 1.0;
    let half_f0 = 0.5 * h * kernel[0];

    for m in 1..n {
        // History part of h·Σ' f(t_m - t_k) G_k, excluding k = m.
        let mut acc = 0.0;
        for k in 0..m {
            acc += kernel[m - k] * g[k];
        }
        let history = h * (acc - 0.5 * kernel[m] * g[0]);

        let predicted = g[m - 1] + h * gd[m - 1];
        let rate_predicted = -(history + half_f0 * predicted);
        g[m] = g[m - 1] + 0.5 * h * (gd[m - 1] + rate_predicted);
        gd[m] = -(history + half_f0 * g[m]);
    }

    let times = (0..n).map(|k| k as f64 * h).collect();
    Ok(VolterraSolution { times, g, g_dot: gd })
}

/// `G` at `t_k = k · t_max / steps`, `k = 0..=steps`.
pub fn solve_g_volterra(p: &ReservoirParams, t_max: f64, steps: usize) -> Result<Vec<Complex64>> {
    let sol = solve_g_volterra_with_rate(p, t_max, steps)?;
    Ok(sol.g.into_iter().map(|x| Complex64::new(x, 0.0)).collect())
}
