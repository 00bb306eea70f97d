//! Exact reduced dynamics of a two-level atom resonantly coupled to a
//! zero-temperature reservoir with Lorentzian spectral density.
//!
//! Basis convention: index 0 is the excited state `|1>`, index 1 the ground
//! state `|0>`. With amplitude `G(t)`,
//!
//! ```text
//! ρ(t) = [[ρ_ee(0)|G|²,   ρ_eg(0) G     ],
//!         [ρ_ge(0) G*,    1 - ρ_ee(0)|G|²]]
//! ```
//!
//! `ω0` is carried in [`ReservoirParams`] but does not enter the resonant
//! solution.

mod volterra;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::densmat::{ComplexMatrix, DensityMatrix};
use crate::error::{Error, Result};

pub use volterra::{solve_g_volterra, solve_g_volterra_with_rate, VolterraSolution};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReservoirParams {
    pub gamma0: f64,
    pub lambda: f64,
    #[serde(default)]
    pub omega0: f64,
}

impl ReservoirParams {
    pub fn new(gamma0: f64, lambda: f64, omega0: f64) -> Result<Self> {
        let p = Self { gamma0, lambda, omega0 };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.gamma0 > 0.0 && self.gamma0.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "gamma0 must be > 0, got {}",
                self.gamma0
            )));
        }
        if !(self.lambda > 0.0 && self.lambda.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "lambda must be > 0, got {}",
                self.lambda
            )));
        }
        if !(self.omega0 >= 0.0 && self.omega0.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "omega0 must be >= 0, got {}",
                self.omega0
            )));
        }
        Ok(())
    }

    /// Strong coupling: `G` oscillates and has zeros.
    pub fn is_non_markovian(&self) -> bool {
        self.gamma0 > self.lambda / 2.0
    }
}

/// Werner-type qubit `(1 - r)/2 · I + r |ψ><ψ|` with `|ψ> = (|1> + |0>)/√2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WernerSpec {
    pub r: f64,
}

impl WernerSpec {
    pub fn new(r: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&r) {
            return Err(Error::InvalidParameter(format!("Werner weight {r} outside [0, 1]")));
        }
        Ok(Self { r })
    }
}

pub fn werner_state(spec: WernerSpec) -> Result<DensityMatrix> {
    let r = WernerSpec::new(spec.r)?.r;
    let m = ComplexMatrix::from_real(2, &[0.5, r / 2.0, r / 2.0, 0.5])?;
    let rho = DensityMatrix::new(m)?;
    if r == 1.0 {
        rho.known_pure()
    } else {
        Ok(rho)
    }
}

/// `γ0 λ² / (2π ((ω0 - ω)² + λ²))`.
pub fn spectral_density(omega: f64, p: &ReservoirParams) -> f64 {
    let detune = p.omega0 - omega;
    p.gamma0 * p.lambda * p.lambda / (2.0 * std::f64::consts::PI * (detune * detune + p.lambda * p.lambda))
}

/// Reservoir correlation function at resonance, `(γ0 λ / 2) e^{-λ|dt|}`.
pub fn memory_kernel(dt: f64, p: &ReservoirParams) -> f64 {
    0.5 * p.gamma0 * p.lambda * (-p.lambda * dt.abs()).exp()
}

fn check_time(t: f64) -> Result<()> {
    if t >= 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "time must be finite and >= 0, got {t}"
        )))
    }
}

/// `(e^{-a} cosh x, e^{-a} sinh(x)/x)` for `x² = s`, continued to `s < 0`
/// through `cos`/`sin`.
fn damped_parts(a: f64, s: f64) -> (f64, f64) {
    if s.abs() < 1e-12 {
        let e = (-a).exp();
        return (e * (1.0 + s / 2.0), e * (1.0 + s / 6.0));
    }
    if s < 0.0 {
        let y = (-s).sqrt();
        let e = (-a).exp();
        return (e * y.cos(), e * y.sin() / y);
    }
    let x = s.sqrt();
    if x < 1.0 {
        let e = (-a).exp();
        (e * x.cosh(), e * x.sinh() / x)
    } else {
        let up = (x - a).exp();
        let down = (-x - a).exp();
        ((up + down) / 2.0, (up - down) / (2.0 * x))
    }
}

/// Returns `(G, Ġ)`; both are real for the resonant model.
fn amplitude(t: f64, p: &ReservoirParams) -> (f64, f64) {
    let a = p.lambda * t / 2.0;
    let s = (p.lambda * p.lambda - 2.0 * p.gamma0 * p.lambda) * t * t / 4.0;
    let (c, sc) = damped_parts(a, s);
    (c + a * sc, -0.5 * p.gamma0 * p.lambda * t * sc)
}

/// `G(t) = e^{-λt/2} [cosh(dt/2) + (λ/d) sinh(dt/2)]`, `d = √(λ² - 2γ0λ)`.
pub fn g_function(t: f64, p: &ReservoirParams) -> Result<Complex64> {
    check_time(t)?;
    Ok(Complex64::new(amplitude(t, p).0, 0.0))
}

/// `Ġ(t) = -e^{-λt/2} (γ0 λ / d) sinh(dt/2)`.
pub fn g_dot(t: f64, p: &ReservoirParams) -> Result<Complex64> {
    check_time(t)?;
    Ok(Complex64::new(amplitude(t, p).1, 0.0))
}

/// Time-dependent decay rate `γ_t = -2 Re(Ġ/G)`.
pub fn decay_rate(t: f64, p: &ReservoirParams) -> Result<f64> {
    check_time(t)?;
    let (g, gd) = amplitude(t, p);
    if g.abs() < 1e-12 {
        return Err(Error::SingularDecayRate { t, g_abs: g.abs() });
    }
    Ok(-2.0 * gd / g)
}

/// Amplitude-damping generator `γ (σ₋ ρ σ₊ - ½{σ₊σ₋, ρ})`.
pub fn generator(rho: &ComplexMatrix, gamma: f64) -> Result<ComplexMatrix> {
    if rho.rows() != 2 || rho.cols() != 2 {
        return Err(Error::DimensionMismatch(rho.rows(), 2));
    }
    let out = vec![
        -rho[(0, 0)] * gamma,
        -rho[(0, 1)] * (gamma / 2.0),
        -rho[(1, 0)] * (gamma / 2.0),
        rho[(0, 0)] * gamma,
    ];
    ComplexMatrix::from_row_major(2, 2, out)
}

fn check_qubit(rho: &DensityMatrix) -> Result<()> {
    if rho.dim() == 2 {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(rho.dim(), 2))
    }
}

/// `ρ(t)` from the exact solution.
pub fn evolve(initial: &DensityMatrix, t: f64, p: &ReservoirParams) -> Result<DensityMatrix> {
    check_qubit(initial)?;
    check_time(t)?;
    let (g, _) = amplitude(t, p);
    let m = initial.matrix();
    let excited = m[(0, 0)].re * g * g;
    let entries = vec![
        Complex64::new(excited, 0.0),
        m[(0, 1)] * g,
        m[(1, 0)] * g,
        Complex64::new(1.0 - excited, 0.0),
    ];
    DensityMatrix::new(ComplexMatrix::from_row_major(2, 2, entries)?)
}

/// `dρ/dt` from the exact solution; Hermitian and traceless.
pub fn rho_dot(initial: &DensityMatrix, t: f64, p: &ReservoirParams) -> Result<ComplexMatrix> {
    check_qubit(initial)?;
    check_time(t)?;
    let (g, gd) = amplitude(t, p);
    let m = initial.matrix();
    let pop_rate = m[(0, 0)].re * 2.0 * g * gd;
    let entries = vec![
        Complex64::new(pop_rate, 0.0),
        m[(0, 1)] * gd,
        m[(1, 0)] * gd,
        Complex64::new(-pop_rate, 0.0),
    ];
    ComplexMatrix::from_row_major(2, 2, entries)
}

/// A state trajectory `t ↦ ρ(t)` with its derivative.
pub trait Evolution: Sync {
    fn state(&self, initial: &DensityMatrix, t: f64) -> Result<DensityMatrix>;
    fn derivative(&self, initial: &DensityMatrix, t: f64) -> Result<ComplexMatrix>;

    fn params(&self) -> Option<ReservoirParams> {
        None
    }
}

/// The damped two-level atom.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DampedAtom(pub ReservoirParams);

impl Evolution for DampedAtom {
    fn state(&self, initial: &DensityMatrix, t: f64) -> Result<DensityMatrix> {
        evolve(initial, t, &self.0)
    }

    fn derivative(&self, initial: &DensityMatrix, t: f64) -> Result<ComplexMatrix> {
        rho_dot(initial, t, &self.0)
    }

    fn params(&self) -> Option<ReservoirParams> {
        Some(self.0)
    }
}

/// `ρ(t) = ρ(0)` for all `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Frozen;

impl Evolution for Frozen {
    fn state(&self, initial: &DensityMatrix, t: f64) -> Result<DensityMatrix> {
        check_time(t)?;
        Ok(initial.clone())
    }

    fn derivative(&self, initial: &DensityMatrix, t: f64) -> Result<ComplexMatrix> {
        check_time(t)?;
        Ok(ComplexMatrix::zeros(initial.dim(), initial.dim()))
    }
}

/// Samples of `ρ(t)` and `dρ/dt` on a uniform grid over `[0, t_max]`.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub params: Option<ReservoirParams>,
    pub initial: DensityMatrix,
    pub times: Vec<f64>,
    pub states: Vec<DensityMatrix>,
    pub derivs: Vec<ComplexMatrix>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn purities(&self) -> Vec<f64> {
        self.states.iter().map(DensityMatrix::purity).collect()
    }
}

/// Uniform grid `t_i = t_max · i / (n_points - 1)`; the last node is `t_max` exactly.
pub fn uniform_grid(t_max: f64, n_points: usize) -> Vec<f64> {
    let last = (n_points - 1) as f64;
    (0..n_points)
        .map(|i| {
            if i + 1 == n_points {
                t_max
            } else {
                t_max * i as f64 / last
            }
        })
        .collect()
}

pub fn trajectory<E: Evolution + ?Sized>(
    initial: &DensityMatrix,
    evolution: &E,
    t_max: f64,
    n_points: usize,
) -> Result<Trajectory> {
    if n_points < 2 {
        return Err(Error::InvalidParameter(format!(
            "trajectory needs >= 2 points, got {n_points}"
        )));
    }
    check_time(t_max)?;
    let times = uniform_grid(t_max, n_points);
    let states = times
        .iter()
        .map(|&t| evolution.state(initial, t))
        .collect::<Result<Vec<_>>>()?;
    let derivs = times
        .iter()
        .map(|&t| evolution.derivative(initial, t))
        .collect::<Result<Vec<_>>>()?;
    Ok(Trajectory {
        params: evolution.params(),
        initial: initial.clone(),
        times,
        states,
        derivs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(gamma0: f64, lambda: f64) -> ReservoirParams {
        ReservoirParams::new(gamma0, lambda, 1.0).unwrap()
    }

    #[test]
    fn validation() {
        assert!(ReservoirParams::new(0.0, 1.0, 1.0).is_err());
        assert!(ReservoirParams::new(1.0, -1.0, 1.0).is_err());
        assert!(ReservoirParams::new(1.0, 1.0, -1.0).is_err());
        assert!(WernerSpec::new(1.5).is_err());
        assert!(g_function(-1.0, &params(1.0, 1.0)).is_err());
    }

    #[test]
    fn g_at_origin() {
        for p in [params(0.1, 1.0), params(0.5, 1.0), params(5.0, 1.0)] {
            assert_eq!(g_function(0.0, &p).unwrap(), Complex64::new(1.0, 0.0));
            assert_eq!(g_dot(0.0, &p).unwrap().norm(), 0.0);
            assert_eq!(decay_rate(0.0, &p).unwrap(), 0.0);
        }
    }

    #[test]
    fn branches_are_continuous() {
        // Crossing γ0 = λ/2 moves between the cosh, series and cos branches.
        let t = 1.3;
        let mid = g_function(t, &params(0.5, 1.0)).unwrap().re;
        let limit = (-0.5 * t).exp() * (1.0 + 0.5 * t);
        assert!((mid - limit).abs() < 1e-15);
        for eps in [1e-6, 1e-9, 1e-12] {
            let below = g_function(t, &params(0.5 - eps, 1.0)).unwrap().re;
            let above = g_function(t, &params(0.5 + eps, 1.0)).unwrap().re;
            assert!((below - mid).abs() < 10.0 * eps, "{eps}");
            assert!((above - mid).abs() < 10.0 * eps, "{eps}");
        }
        // Large argument: the exponential form must not overflow.
        let g = g_function(100.0, &params(0.01, 20.0)).unwrap().re;
        assert!(g.is_finite() && g > 0.0 && g < 1.0);
    }

    #[test]
    fn first_zero_strong_coupling() {
        let p = params(5.0, 1.0);
        let root = 2.0 / 3.0 * (std::f64::consts::PI - 3f64.atan());
        assert!(g_function(root, &p).unwrap().re.abs() < 1e-14);
        assert!(g_function(root - 1e-3, &p).unwrap().re > 0.0);
        assert!(g_function(root + 1e-3, &p).unwrap().re < 0.0);
        assert!(matches!(decay_rate(root, &p), Err(Error::SingularDecayRate { .. })));
    }

    #[test]
    fn memory_kernel_shape() {
        let p = params(2.0, 3.0);
        assert_eq!(memory_kernel(0.0, &p), 3.0);
        assert_eq!(memory_kernel(0.7, &p), memory_kernel(-0.7, &p));
    }

    #[test]
    fn werner_examples() {
        let r0 = werner_state(WernerSpec { r: 0.0 }).unwrap();
        assert_eq!(r0.max_abs_diff(&DensityMatrix::maximally_mixed(2)), 0.0);
        let r1 = werner_state(WernerSpec { r: 1.0 }).unwrap();
        assert!(r1.is_known_pure());
        assert_eq!(r1.matrix()[(0, 1)].re, 0.5);
        assert_eq!(werner_state(WernerSpec { r: 0.5 }).unwrap().purity(), 0.625);
    }

    #[test]
    fn evolve_examples() {
        let p = params(5.0, 1.0);
        let rho0 = werner_state(WernerSpec { r: 0.5 }).unwrap();
        assert_eq!(evolve(&rho0, 0.0, &p).unwrap().max_abs_diff(&rho0), 0.0);

        let excited = DensityMatrix::from_diagonal(&[1.0, 0.0]).unwrap();
        let t = 0.8;
        let g = g_function(t, &p).unwrap().re;
        let expected = DensityMatrix::from_diagonal(&[g * g, 1.0 - g * g]).unwrap();
        assert!(evolve(&excited, t, &p).unwrap().max_abs_diff(&expected) < 1e-15);

        let late = evolve(&rho0, 60.0, &params(0.2, 1.0)).unwrap();
        let ground = DensityMatrix::from_diagonal(&[0.0, 1.0]).unwrap();
        assert!(late.max_abs_diff(&ground) < 1e-2);
        assert!(evolve(&DensityMatrix::maximally_mixed(3), 1.0, &p).is_err());
    }

    #[test]
    fn rho_dot_traceless_and_zero_at_origin() {
        let p = params(1.0, 1.0);
        let rho0 = werner_state(WernerSpec { r: 0.9 }).unwrap();
        assert_eq!(rho_dot(&rho0, 0.0, &p).unwrap().max_abs(), 0.0);
        for t in [0.1, 0.5, 2.0] {
            let d = rho_dot(&rho0, t, &p).unwrap();
            assert!(d.trace().norm() < 1e-14);
            assert_eq!(d.hermiticity_error(), 0.0);
        }
    }

    #[test]
    fn trajectory_grid() {
        let p = params(1.0, 1.0);
        let rho0 = werner_state(WernerSpec { r: 0.5 }).unwrap();
        let tr = trajectory(&rho0, &DampedAtom(p), 2.0, 2).unwrap();
        assert_eq!(tr.times, vec![0.0, 2.0]);
        assert!(trajectory(&rho0, &DampedAtom(p), 2.0, 1).is_err());
        let tr = trajectory(&rho0, &DampedAtom(p), 1.0, 11).unwrap();
        assert_eq!(tr.len(), 11);
        assert_eq!(*tr.times.last().unwrap(), 1.0);
        assert_eq!(tr.params, Some(p));
        let frozen = trajectory(&rho0, &Frozen, 1.0, 5).unwrap();
        assert!(frozen.purities().iter().all(|&x| x == rho0.purity()));
        assert!(frozen.derivs.iter().all(|d| d.max_abs() == 0.0));
    }
}
