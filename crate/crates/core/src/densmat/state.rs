use num_complex::Complex64;

use super::eigen::{check_psd, eig_hermitian};
use super::matrix::{ComplexMatrix, ZERO};
use crate::error::{Error, Result};

/// Max-entry Hermiticity and absolute trace tolerance for a valid state.
pub const STATE_TOL: f64 = 1e-12;

/// A normalized state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<Complex64>,
}

impl PureState {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let n2: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if amplitudes.is_empty() || (n2 - 1.0).abs() > STATE_TOL {
            return Err(Error::NotNormalized(n2));
        }
        Ok(Self { amplitudes })
    }

    pub fn normalized(mut amplitudes: Vec<Complex64>) -> Result<Self> {
        let n = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if amplitudes.is_empty() || !(n > 0.0) || !n.is_finite() {
            return Err(Error::NotNormalized(n * n));
        }
        for a in &mut amplitudes {
            *a /= n;
        }
        Ok(Self { amplitudes })
    }

    /// Computational basis vector `|index>`.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::InvalidParameter(format!("basis index {index} >= dim {dim}")));
        }
        let mut amps = vec![ZERO; dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self { amplitudes: amps })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// `<psi| rho |psi>`.
    pub fn expectation(&self, rho: &DensityMatrix) -> Result<f64> {
        if rho.dim() != self.dim() {
            return Err(Error::DimensionMismatch(rho.dim(), self.dim()));
        }
        let m = rho.matrix();
        let mut acc = ZERO;
        for (i, a) in self.amplitudes.iter().enumerate() {
            for (j, b) in self.amplitudes.iter().enumerate() {
                acc += a.conj() * m[(i, j)] * b;
            }
        }
        Ok(acc.re)
    }

    pub fn to_density(&self) -> DensityMatrix {
        DensityMatrix {
            mat: ComplexMatrix::outer(&self.amplitudes, &self.amplitudes).hermitian_part(),
            rank_one: true,
        }
    }
}

/// Hermitian, unit-trace, positive semidefinite matrix.
///
/// States built from a state vector remember that they are rank one, so their
/// linear entropy `1 - Tr ρ²` is exactly zero instead of rounding noise.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
    rank_one: bool,
}

impl DensityMatrix {
    /// Validates Hermiticity and trace to [`STATE_TOL`] and positivity to
    /// [`PSD_TOL`](super::eigen::PSD_TOL).
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::NotSquare {
                rows: mat.rows(),
                cols: mat.cols(),
            });
        }
        let herr = mat.hermiticity_error();
        if !(herr <= STATE_TOL) {
            return Err(Error::NotHermitian(herr));
        }
        let tr = mat.trace();
        if !((tr.re - 1.0).abs() <= STATE_TOL && tr.im.abs() <= STATE_TOL) {
            return Err(Error::InvalidTrace(tr.re));
        }
        let eig = eig_hermitian(&mat)?;
        check_psd(&eig)?;
        Ok(Self {
            mat: mat.hermitian_part(),
            rank_one: false,
        })
    }

    /// Hermitian part of `m`, rescaled to unit trace, then validated.
    pub fn from_unnormalized(m: ComplexMatrix) -> Result<Self> {
        let h = m.hermitian_part();
        let tr = h.trace().re;
        if !(tr > 0.0) || !tr.is_finite() {
            return Err(Error::InvalidTrace(tr));
        }
        Self::new(h.scale_real(1.0 / tr))
    }

    /// Validates after taking the Hermitian part; absorbs rounding asymmetry
    /// from products such as `U ρ U†`.
    pub fn from_hermitian_noisy(m: ComplexMatrix) -> Result<Self> {
        let herr = m.hermiticity_error();
        if !(herr <= 1e-10) {
            return Err(Error::NotHermitian(herr));
        }
        Self::new(m.hermitian_part())
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            mat: ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64),
            rank_one: dim == 1,
        }
    }

    pub fn from_diagonal(probs: &[f64]) -> Result<Self> {
        Self::new(ComplexMatrix::from_diag(probs))
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    /// True only when the state is known to be rank one by construction.
    pub fn is_known_pure(&self) -> bool {
        self.rank_one
    }

    /// Marks the state as rank one after checking `|1 - Tr ρ²| ≤ STATE_TOL`.
    pub fn known_pure(mut self) -> Result<Self> {
        let p = self.purity();
        if (1.0 - p).abs() > STATE_TOL {
            return Err(Error::NotPure(p));
        }
        self.rank_one = true;
        Ok(self)
    }

    /// `Tr(a b)`, exactly symmetric in its arguments.
    pub fn hs_inner(&self, other: &Self) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        self.mat.trace_product_hermitian(&other.mat)
    }

    /// `Tr ρ²`.
    pub fn purity(&self) -> f64 {
        self.mat.frobenius_sq()
    }

    /// `1 - Tr ρ²`, evaluated as `(Tr ρ)² - Tr ρ² = 2 Σ_{i<j} (ρ_ii ρ_jj - |ρ_ij|²)`.
    ///
    /// The minor form keeps relative accuracy when populations are small.
    /// Clamped into `[0, 1 - 1/dim]`; exactly zero for known-pure states.
    pub fn linear_entropy(&self) -> f64 {
        if self.rank_one {
            return 0.0;
        }
        let n = self.dim();
        let m = &self.mat;
        let mut acc = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                acc += m[(i, i)].re * m[(j, j)].re - m[(i, j)].norm_sqr();
            }
        }
        (2.0 * acc).clamp(0.0, 1.0 - 1.0 / n as f64)
    }

    pub fn tensor(&self, other: &Self) -> Self {
        Self {
            mat: self.mat.kron(&other.mat),
            rank_one: self.rank_one && other.rank_one,
        }
    }

    /// Reduced state of subsystem `keep` (0-based) for the layout `dims`.
    pub fn partial_trace(&self, dims: &[usize], keep: usize) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::InvalidSubsystems(format!("bad subsystem dims {dims:?}")));
        }
        let total: usize = dims.iter().product();
        if total != self.dim() {
            return Err(Error::InvalidSubsystems(format!(
                "dims {dims:?} multiply to {total}, state has dim {}",
                self.dim()
            )));
        }
        if keep >= dims.len() {
            return Err(Error::InvalidSubsystems(format!(
                "subsystem {keep} out of range for {} subsystems",
                dims.len()
            )));
        }
        let d_keep = dims[keep];
        // Row-major multi-index: index = (outer * d_keep + k) * inner + rest.
        let inner: usize = dims[keep + 1..].iter().product();
        let outer: usize = dims[..keep].iter().product();
        let mut out = ComplexMatrix::zeros(d_keep, d_keep);
        for a in 0..d_keep {
            for b in 0..d_keep {
                let mut acc = ZERO;
                for o in 0..outer {
                    for r in 0..inner {
                        let i = (o * d_keep + a) * inner + r;
                        let j = (o * d_keep + b) * inner + r;
                        acc += self.mat[(i, j)];
                    }
                }
                out[(a, b)] = acc;
            }
        }
        Ok(Self {
            mat: out.hermitian_part(),
            rank_one: self.rank_one && d_keep == self.dim(),
        })
    }

    /// `U ρ U†` for a unitary `U`.
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> Result<Self> {
        if u.rows() != self.dim() || u.cols() != self.dim() {
            return Err(Error::DimensionMismatch(u.rows(), self.dim()));
        }
        let mut out = Self::from_hermitian_noisy(self.mat.conjugate_by(u)?)?;
        out.rank_one = self.rank_one;
        Ok(out)
    }

    /// `p·self + (1-p)·other`.
    pub fn mix(&self, p: f64, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter(format!("mixing weight {p} outside [0, 1]")));
        }
        let m = &self.mat.scale_real(p) + &other.mat.scale_real(1.0 - p);
        let rank_one = (p == 1.0 && self.rank_one) || (p == 0.0 && other.rank_one);
        Ok(Self {
            mat: m.hermitian_part(),
            rank_one,
        })
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(eig_hermitian(&self.mat)?.values[0])
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.mat.max_abs_diff(&other.mat)
    }
}
