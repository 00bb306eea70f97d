//! Fidelity measures between density matrices.
//!
//! | kind    | value                                                    |
//! |---------|----------------------------------------------------------|
//! | `Bures` | `(Tr √(√ρ σ √ρ))²`                                       |
//! | `F1`    | `Tr(ρσ) / √(Tr ρ² · Tr σ²)`                              |
//! | `F2`    | `Tr(ρσ) + √(1 - Tr ρ²) · √(1 - Tr σ²)`                   |
//! | `F3`    | `(1 - k)/2 + (1 + k)/2 · F2` with `k = 1/(d - 1)`        |
//! | `NewF`  | `(1 + √((1 - Tr ρ²)/Tr ρ²) · √((1 - Tr σ²)/Tr σ²)) · Tr(ρσ)` |
//!
//! `1 - Tr ρ²` is always taken from [`DensityMatrix::linear_entropy`], which is
//! exact for known-pure states, so the purity-dependent kinds reduce to
//! `<ψ|ρ|ψ>` without rounding noise when one argument is pure.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::densmat::{eig_hermitian, singular_values, ComplexMatrix, DensityMatrix, PSD_TOL};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FidelityKind {
    Bures,
    F1,
    F2,
    F3,
    NewF,
}

impl FidelityKind {
    pub const ALL: [FidelityKind; 5] = [
        FidelityKind::Bures,
        FidelityKind::F1,
        FidelityKind::F2,
        FidelityKind::F3,
        FidelityKind::NewF,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FidelityKind::Bures => "bures",
            FidelityKind::F1 => "f1",
            FidelityKind::F2 => "f2",
            FidelityKind::F3 => "f3",
            FidelityKind::NewF => "newf",
        }
    }
}

impl fmt::Display for FidelityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FidelityKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bures" => Ok(FidelityKind::Bures),
            "f1" => Ok(FidelityKind::F1),
            "f2" => Ok(FidelityKind::F2),
            "f3" => Ok(FidelityKind::F3),
            "newf" | "new_f" | "new" => Ok(FidelityKind::NewF),
            other => Err(Error::InvalidParameter(format!("unknown fidelity kind '{other}'"))),
        }
    }
}

pub fn evaluate(kind: FidelityKind, rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    match kind {
        FidelityKind::Bures => bures(rho, sigma),
        FidelityKind::F1 => f1(rho, sigma),
        FidelityKind::F2 => f2(rho, sigma),
        FidelityKind::F3 => f3(rho, sigma),
        FidelityKind::NewF => new_f(rho, sigma),
    }
}

fn same_dim(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<()> {
    if rho.dim() == sigma.dim() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(rho.dim(), sigma.dim()))
    }
}

/// Eigenvalues below `SPECTRAL_FLOOR · dim · λ_max` are rounding noise and are
/// zeroed before square roots are taken.
const SPECTRAL_FLOOR: f64 = 8.0 * f64::EPSILON;

fn floored_sqrt(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = eig_hermitian(m)?;
    let lowest = eig.values[0];
    if lowest < -PSD_TOL {
        return Err(Error::NotPsd(lowest));
    }
    let top = eig.values.last().copied().unwrap_or(0.0).max(0.0);
    let floor = SPECTRAL_FLOOR * m.rows() as f64 * top;
    Ok(eig.map_spectrum(|w| if w > floor { w.sqrt() } else { 0.0 }))
}

/// Bures (Uhlmann) fidelity, squared convention.
///
/// Evaluated as `(Σ sᵢ)²` over the singular values of `√σ √ρ`, which equals
/// `(Tr √(√ρ σ √ρ))²` without squaring small eigenvalues.
pub fn bures(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    same_dim(rho, sigma)?;
    let product = &floored_sqrt(sigma.matrix())? * &floored_sqrt(rho.matrix())?;
    let trace_norm: f64 = singular_values(&product)?.iter().sum();
    Ok(trace_norm * trace_norm)
}

pub fn f1(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    let overlap = rho.hs_inner(sigma)?;
    Ok(overlap / (rho.purity() * sigma.purity()).sqrt())
}

pub fn f2(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    let overlap = rho.hs_inner(sigma)?;
    Ok(overlap + rho.linear_entropy().sqrt() * sigma.linear_entropy().sqrt())
}

/// Requires `dim >= 2`; at `dim == 2` this is `f2` exactly.
pub fn f3(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    same_dim(rho, sigma)?;
    let d = rho.dim();
    if d < 2 {
        return Err(Error::InvalidParameter("f3 needs dimension >= 2".into()));
    }
    let base = f2(rho, sigma)?;
    if d == 2 {
        return Ok(base);
    }
    let k = 1.0 / (d as f64 - 1.0);
    Ok((1.0 - k) / 2.0 + (1.0 + k) / 2.0 * base)
}

/// `√((1 - Tr ρ²) / Tr ρ²)`.
fn mixedness_ratio(rho: &DensityMatrix) -> f64 {
    let l = rho.linear_entropy();
    (l / (1.0 - l)).sqrt()
}

/// The purity-weighted fidelity.
///
/// The overlap `Tr(ρσ)` is multiplied in last, so orthogonal states give
/// exactly `0.0` whatever the purity bracket evaluates to.
pub fn new_f(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    let overlap = rho.hs_inner(sigma)?;
    let bracket = 1.0 + mixedness_ratio(rho) * mixedness_ratio(sigma);
    Ok(bracket * overlap)
}
