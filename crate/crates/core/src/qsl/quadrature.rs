use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Composite Simpson on a shared uniform grid.
///
/// Level `k` of the refinement ladder uses every `2^k`-th node, so
/// `n_points - 1` must be divisible by `2^(refinement + 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QuadratureConfig {
    pub n_points: usize,
    pub refinement: usize,
    pub purity_guard: f64,
    /// Estimated error at or below `tolerance · max(1, |value|)` counts as converged.
    pub tolerance: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            n_points: 2001,
            refinement: 2,
            purity_guard: 1e-9,
            tolerance: 1e-8,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_points < 3 || self.n_points.is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!(
                "n_points must be odd and >= 3, got {}",
                self.n_points
            )));
        }
        if self.refinement < 1 || self.refinement > 20 {
            return Err(Error::InvalidParameter(format!(
                "refinement must lie in 1..=20, got {}",
                self.refinement
            )));
        }
        let block = 1usize << (self.refinement + 1);
        if !(self.n_points - 1).is_multiple_of(block) {
            return Err(Error::InvalidParameter(format!(
                "n_points - 1 = {} is not divisible by 2^(refinement + 1) = {block}",
                self.n_points - 1
            )));
        }
        if !(self.purity_guard > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "purity_guard must be > 0, got {}",
                self.purity_guard
            )));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "tolerance must be > 0, got {}",
                self.tolerance
            )));
        }
        Ok(())
    }
}

/// Composite Simpson rule for `values` sampled with spacing `h`; `values.len()` must be odd.
pub fn simpson(values: &[f64], h: f64) -> f64 {
    let n = values.len();
    debug_assert!(n >= 3 && n % 2 == 1);
    let mut odd = 0.0;
    let mut even = 0.0;
    for (i, v) in values.iter().enumerate().take(n - 1).skip(1) {
        if i % 2 == 1 {
            odd += v;
        } else {
            even += v;
        }
    }
    h / 3.0 * (values[0] + values[n - 1] + 4.0 * odd + 2.0 * even)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Integral {
    /// Finest-level Simpson value.
    pub value: f64,
    /// `|S(h) - S(2h)| / 15`.
    pub error: f64,
    /// Simpson values at strides `1, 2, 4, ...`.
    pub levels: Vec<f64>,
}

/// Simpson at every level of the ladder with a Richardson error estimate.
pub fn simpson_ladder(values: &[f64], h: f64, refinement: usize) -> Result<Integral> {
    let n = values.len();
    let block = 1usize << (refinement + 1);
    if refinement < 1 || n < 3 || !(n - 1).is_multiple_of(block) {
        return Err(Error::InvalidParameter(format!(
            "{n} samples do not support {refinement} refinement levels"
        )));
    }
    let levels: Vec<f64> = (0..=refinement)
        .map(|k| {
            let stride = 1usize << k;
            let sub: Vec<f64> = values.iter().step_by(stride).copied().collect();
            simpson(&sub, h * stride as f64)
        })
        .collect();
    Ok(Integral {
        value: levels[0],
        error: (levels[0] - levels[1]).abs() / 15.0,
        levels,
    })
}
