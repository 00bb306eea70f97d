//! Quantum-speed-limit bound built on [`new_f`](crate::fidelity::new_f).
//!
//! With `a = Tr ρ0²` and `b = Tr ρ_t²`, the speed `X_τ` is the time average of
//!
//! ```text
//! √((1-a)/a) · √(b/(1-b)) · |Tr(ρ̇ρ_t) · Tr(ρ0ρ_t)| / b²
//!   + √(a · Tr ρ̇²)
//!   + √((1-b)/b) · √(1-a) · √(Tr ρ̇²)
//! ```
//!
//! which bounds `|d𝓕(ρ0, ρ_t)/dt|` pointwise, and `τ_QSL = |1 - 𝓕_τ| / X_τ ≤ τ`.

mod quadrature;

use serde::{Deserialize, Serialize};

use crate::densmat::{ComplexMatrix, DensityMatrix};
use crate::dynamics::{trajectory, DampedAtom, Evolution, ReservoirParams, Trajectory};
use crate::error::{Error, Result};
use crate::fidelity::{evaluate, new_f, FidelityKind};

pub use quadrature::{simpson, simpson_ladder, Integral, QuadratureConfig};

/// `|1 - 𝓕|` below this with `X_τ = 0` yields `τ_QSL = 0`.
pub const ZERO_GAP_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundResult {
    pub tau: f64,
    pub f_tau: f64,
    pub x_tau: f64,
    pub tau_qsl: f64,
    pub quad_error: f64,
    pub converged: bool,
    pub integrand_samples: Vec<(f64, f64)>,
}

/// Pointwise speed integrand at one time.
pub fn integrand_x(rho0: &DensityMatrix, rho_t: &DensityMatrix, rho_dot: &ComplexMatrix, guard: f64) -> Result<f64> {
    if rho0.dim() != rho_t.dim() {
        return Err(Error::DimensionMismatch(rho0.dim(), rho_t.dim()));
    }
    if rho_dot.rows() != rho_t.dim() || rho_dot.cols() != rho_t.dim() {
        return Err(Error::DimensionMismatch(rho_dot.rows(), rho_t.dim()));
    }
    let speed_sq = rho_dot.frobenius_sq();
    let la = rho0.linear_entropy();
    let a = 1.0 - la;
    let term2 = (a * speed_sq).sqrt();
    if la == 0.0 {
        return Ok(term2);
    }

    let lb = rho_t.linear_entropy();
    let b = 1.0 - lb;
    let term3 = (lb / b).sqrt() * la.sqrt() * speed_sq.sqrt();

    let purity_rate = rho_dot.trace_product_hermitian(rho_t.matrix())?;
    let term1 = if lb.sqrt() < guard {
        if purity_rate.abs() > guard {
            return Err(Error::PuritySingularity {
                t: f64::NAN,
                linear_entropy: lb,
                overlap_rate: purity_rate,
            });
        }
        0.0
    } else {
        let overlap = rho0.hs_inner(rho_t)?;
        (la / a).sqrt() * (b / lb).sqrt() * (purity_rate * overlap).abs() / (b * b)
    };
    Ok(term1 + term2 + term3)
}

fn with_time(err: Error, t: f64) -> Error {
    match err {
        Error::PuritySingularity {
            linear_entropy,
            overlap_rate,
            ..
        } => Error::PuritySingularity {
            t,
            linear_entropy,
            overlap_rate,
        },
        other => other,
    }
}

/// Time-averaged speed over a trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct SpeedAverage {
    pub value: f64,
    pub error: f64,
    pub converged: bool,
    pub samples: Vec<(f64, f64)>,
}

fn grid_step(traj: &Trajectory) -> Result<(f64, f64)> {
    let tau = *traj
        .times
        .last()
        .ok_or_else(|| Error::InvalidParameter("empty trajectory".into()))?;
    if !(tau > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "trajectory must span tau > 0, got {tau}"
        )));
    }
    Ok((tau, tau / (traj.len() - 1) as f64))
}

pub fn x_tau(rho0: &DensityMatrix, traj: &Trajectory, cfg: &QuadratureConfig) -> Result<SpeedAverage> {
    cfg.validate()?;
    let start = traj
        .states
        .first()
        .ok_or_else(|| Error::InvalidParameter("empty trajectory".into()))?;
    if start.dim() != rho0.dim() || start.max_abs_diff(rho0) > 1e-12 {
        return Err(Error::InvalidParameter("trajectory does not start at rho0".into()));
    }
    let (tau, h) = grid_step(traj)?;
    let values = traj
        .times
        .iter()
        .zip(&traj.states)
        .zip(&traj.derivs)
        .map(|((&t, s), d)| integrand_x(rho0, s, d, cfg.purity_guard).map_err(|e| with_time(e, t)))
        .collect::<Result<Vec<f64>>>()?;
    let integral = simpson_ladder(&values, h, cfg.refinement)?;
    let value = integral.value / tau;
    let error = integral.error / tau;
    Ok(SpeedAverage {
        value,
        error,
        converged: error <= cfg.tolerance * value.abs().max(1.0),
        samples: traj.times.iter().copied().zip(values).collect(),
    })
}

/// `gap / speed`, with the `0/0` case resolved to zero.
fn ratio_bound(gap: f64, speed: f64) -> Result<f64> {
    if speed > 0.0 {
        Ok(gap / speed)
    } else if gap <= ZERO_GAP_TOL {
        Ok(0.0)
    } else {
        Err(Error::InconsistentBound(gap))
    }
}

fn check_tau(tau: f64) -> Result<()> {
    if tau > 0.0 && tau.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("tau must be > 0, got {tau}")))
    }
}

pub fn qsl_time_with<E: Evolution + ?Sized>(
    rho0: &DensityMatrix,
    evolution: &E,
    tau: f64,
    cfg: &QuadratureConfig,
) -> Result<BoundResult> {
    check_tau(tau)?;
    cfg.validate()?;
    let traj = trajectory(rho0, evolution, tau, cfg.n_points)?;
    let rho_tau = evolution.state(rho0, tau)?;
    let f_tau = new_f(rho0, &rho_tau)?;
    let speed = x_tau(rho0, &traj, cfg)?;
    let tau_qsl = ratio_bound((1.0 - f_tau).abs(), speed.value)?;
    Ok(BoundResult {
        tau,
        f_tau,
        x_tau: speed.value,
        tau_qsl,
        quad_error: speed.error,
        converged: speed.converged,
        integrand_samples: speed.samples,
    })
}

/// `τ_QSL` for the damped atom started in `rho0`.
pub fn qsl_time(rho0: &DensityMatrix, p: &ReservoirParams, tau: f64, cfg: &QuadratureConfig) -> Result<BoundResult> {
    p.validate()?;
    qsl_time_with(rho0, &DampedAtom(*p), tau, cfg)
}

/// Pure-state bound `τ |1 - Tr(ρ0 ρ_τ)| / ∫₀^τ √(Tr ρ̇²) dt`.
pub fn mt_pure_bound_with<E: Evolution + ?Sized>(
    rho0: &DensityMatrix,
    evolution: &E,
    tau: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    check_tau(tau)?;
    cfg.validate()?;
    let purity = rho0.purity();
    if purity < 1.0 - 1e-10 {
        return Err(Error::NotPure(purity));
    }
    let traj = trajectory(rho0, evolution, tau, cfg.n_points)?;
    let (_, h) = grid_step(&traj)?;
    let speeds: Vec<f64> = traj.derivs.iter().map(|d| d.frobenius_sq().sqrt()).collect();
    let length = simpson(&speeds, h);
    let rho_tau = evolution.state(rho0, tau)?;
    let gap = (1.0 - rho0.hs_inner(&rho_tau)?).abs();
    Ok(tau * ratio_bound(gap, length)?)
}

pub fn mt_pure_bound(rho0: &DensityMatrix, p: &ReservoirParams, tau: f64, cfg: &QuadratureConfig) -> Result<f64> {
    p.validate()?;
    mt_pure_bound_with(rho0, &DampedAtom(*p), tau, cfg)
}

/// Second-order finite-difference derivative of samples on a uniform grid.
fn grid_derivative(values: &[f64], h: f64) -> Vec<f64> {
    let n = values.len();
    (0..n)
        .map(|i| {
            if i == 0 {
                (-3.0 * values[0] + 4.0 * values[1] - values[2]) / (2.0 * h)
            } else if i == n - 1 {
                (3.0 * values[n - 1] - 4.0 * values[n - 2] + values[n - 3]) / (2.0 * h)
            } else {
                (values[i + 1] - values[i - 1]) / (2.0 * h)
            }
        })
        .collect()
}

/// `τ |F(ρ0, ρ0) - F(ρ0, ρ_τ)| / ∫₀^τ |dF(ρ0, ρ_t)/dt| dt` for any fidelity.
pub fn generic_fidelity_bound_with<E: Evolution + ?Sized>(
    kind: FidelityKind,
    rho0: &DensityMatrix,
    evolution: &E,
    tau: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    check_tau(tau)?;
    cfg.validate()?;
    let traj = trajectory(rho0, evolution, tau, cfg.n_points)?;
    let (_, h) = grid_step(&traj)?;
    let fid = traj
        .states
        .iter()
        .map(|s| evaluate(kind, rho0, s))
        .collect::<Result<Vec<f64>>>()?;
    let slopes: Vec<f64> = grid_derivative(&fid, h).into_iter().map(f64::abs).collect();
    let length = simpson(&slopes, h);
    let start = evaluate(kind, rho0, rho0)?;
    let gap = (start - fid[fid.len() - 1]).abs();
    Ok(tau * ratio_bound(gap, length)?)
}

pub fn generic_fidelity_bound(
    kind: FidelityKind,
    rho0: &DensityMatrix,
    p: &ReservoirParams,
    tau: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    p.validate()?;
    generic_fidelity_bound_with(kind, rho0, &DampedAtom(*p), tau, cfg)
}
