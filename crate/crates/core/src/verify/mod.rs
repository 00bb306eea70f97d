//! Randomized property checks for the fidelity measures and the speed-limit
//! integrand, plus the fixed worked examples.
//!
//! Every search is reproducible from its seed: trial `i` owns its own RNG
//! stream, so reports are identical for any thread count.

mod channel;
mod report;

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::densmat::random::{random_density, random_mixed, random_pure, random_unitary, StateRng};
use crate::densmat::{ComplexMatrix, DensityMatrix, PureState};
use crate::dynamics::{DampedAtom, Evolution, ReservoirParams};
use crate::error::{Error, Result};
use crate::fidelity::{bures, evaluate, f2, new_f, FidelityKind};
use crate::qsl::integrand_x;

pub use channel::{apply_channel, ChannelRecord, ChannelSpec};
use report::{search, Outcome};
pub use report::{Counterexample, ViolationReport};

pub const JOZSA_TOL: f64 = 1e-9;
pub const SUPERMULTIPLICATIVE_TOL: f64 = 1e-10;
pub const MONOTONICITY_TOL: f64 = 1e-9;
pub const CONCAVITY_TOL: f64 = 1e-9;
pub const DERIVATIVE_CHAIN_TOL: f64 = 1e-7;
pub const ORTHOGONALITY_TOL: f64 = 1e-10;

/// Step of the five-point stencil used for `d𝓕/dt`.
pub const FD_STEP: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axiom {
    A1,
    A2,
    A3,
    A4,
}

impl Axiom {
    pub const ALL: [Axiom; 4] = [Axiom::A1, Axiom::A2, Axiom::A3, Axiom::A4];

    fn describe(self) -> &'static str {
        match self {
            Axiom::A1 => "range [0, 1] and F = 1 iff states coincide",
            Axiom::A2 => "symmetry",
            Axiom::A3 => "unitary invariance",
            Axiom::A4 => "reduces to <psi|rho|psi> for pure sigma",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Whether `kind` is known to satisfy `axiom` in dimension `dim`.
///
/// F1 fails A4 in every dimension; F3 fails A4 once `dim > 2`, where its
/// constant offset `(1 - 1/(d-1))/2` no longer vanishes.
pub fn expected_to_hold(kind: FidelityKind, axiom: Axiom, dim: usize) -> bool {
    match (kind, axiom) {
        (FidelityKind::F1, Axiom::A4) => false,
        (FidelityKind::F3, Axiom::A4) => dim <= 2,
        _ => true,
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AxiomReport {
    pub axiom: Axiom,
    pub dim: usize,
    pub expected_to_hold: bool,
    pub report: ViolationReport,
}

impl AxiomReport {
    /// The outcome disagrees with [`expected_to_hold`].
    pub fn is_surprise(&self) -> bool {
        self.expected_to_hold != self.report.passed()
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct JozsaReport {
    pub kind: FidelityKind,
    pub axioms: Vec<AxiomReport>,
}

impl JozsaReport {
    pub fn get(&self, axiom: Axiom, dim: usize) -> Option<&AxiomReport> {
        self.axioms.iter().find(|a| a.axiom == axiom && a.dim == dim)
    }

    pub fn all_passed(&self) -> bool {
        self.axioms.iter().all(|a| a.report.passed())
    }

    pub fn surprises(&self) -> Vec<&AxiomReport> {
        self.axioms.iter().filter(|a| a.is_surprise()).collect()
    }
}

fn check_dims(dims: &[usize]) -> Result<()> {
    if dims.is_empty() || dims.iter().any(|&d| !(2..=8).contains(&d)) {
        return Err(Error::InvalidParameter(format!(
            "dims must be non-empty and within 2..=8, got {dims:?}"
        )));
    }
    Ok(())
}

fn mats(states: &[&DensityMatrix]) -> Vec<ComplexMatrix> {
    states.iter().map(|s| s.matrix().clone()).collect()
}

fn jozsa_trial(kind: FidelityKind, axiom: Axiom, dim: usize, rng: &mut StateRng, trial: usize) -> Result<Outcome> {
    let tol = JOZSA_TOL;
    let witness = |states: Vec<ComplexMatrix>, values: Vec<f64>| Counterexample {
        trial,
        description: format!("{kind} {axiom} ({}) in dim {dim}", axiom.describe()),
        states,
        channel: None,
        values,
    };
    match axiom {
        Axiom::A1 => {
            let rho = random_mixed(dim, rng);
            let sigma = random_mixed(dim, rng);
            let v = evaluate(kind, &rho, &sigma)?;
            let same = evaluate(kind, &rho, &rho)?;
            let mut margin = v.min(1.0 - v).min(-(same - 1.0).abs());
            if rho.max_abs_diff(&sigma) > 1e-10 && (1.0 - v).abs() <= 1e-10 {
                margin = -1.0;
            }
            Ok(Outcome::check(margin, tol, || {
                witness(mats(&[&rho, &sigma]), vec![v, same])
            }))
        }
        Axiom::A2 => {
            let rho = random_mixed(dim, rng);
            let sigma = random_mixed(dim, rng);
            let ab = evaluate(kind, &rho, &sigma)?;
            let ba = evaluate(kind, &sigma, &rho)?;
            Ok(Outcome::check(-(ab - ba).abs(), tol, || {
                witness(mats(&[&rho, &sigma]), vec![ab, ba])
            }))
        }
        Axiom::A3 => {
            let rho = random_mixed(dim, rng);
            let sigma = random_mixed(dim, rng);
            let u = random_unitary(dim, rng);
            let before = evaluate(kind, &rho, &sigma)?;
            let after = evaluate(kind, &rho.conjugate_by(&u)?, &sigma.conjugate_by(&u)?)?;
            Ok(Outcome::check(-(before - after).abs(), tol, || {
                let mut w = witness(mats(&[&rho, &sigma]), vec![before, after]);
                w.states.push(u.clone());
                w
            }))
        }
        Axiom::A4 => {
            // Trial 0 is the textbook pair (I/d, |0><0|).
            let (rho, psi) = if trial == 0 {
                (DensityMatrix::maximally_mixed(dim), PureState::basis(dim, 0)?)
            } else {
                (random_mixed(dim, rng), random_pure(dim, rng))
            };
            let sigma = psi.to_density();
            let v = evaluate(kind, &rho, &sigma)?;
            let expect = psi.expectation(&rho)?;
            Ok(Outcome::check(-(v - expect).abs(), tol, || {
                witness(mats(&[&rho, &sigma]), vec![v, expect])
            }))
        }
    }
}

/// Checks axioms A1–A4 with `trials` random cases per axiom and dimension.
pub fn check_jozsa(kind: FidelityKind, trials: usize, dims: &[usize], seed: u64) -> Result<JozsaReport> {
    check_dims(dims)?;
    let mut axioms = Vec::new();
    for (ai, &axiom) in Axiom::ALL.iter().enumerate() {
        for (di, &dim) in dims.iter().enumerate() {
            let base = ((ai * 16 + di) as u64) << 32;
            let report = search(
                format!("jozsa-{axiom}-d{dim}"),
                trials,
                JOZSA_TOL,
                seed,
                base,
                |rng, i| jozsa_trial(kind, axiom, dim, rng, i),
            )?;
            axioms.push(AxiomReport {
                axiom,
                dim,
                expected_to_hold: expected_to_hold(kind, axiom, dim),
                report,
            });
        }
    }
    Ok(JozsaReport { kind, axioms })
}

/// Slack of the purity inequality behind super-multiplicativity:
/// `√((1-r1 r2)(1-s1 s2)) - <X|Y>` with
/// `X = (√r1 √(1-r2), √r2 √(1-r1), √(1-r1) √(1-r2))` and `Y` likewise in `s`.
pub fn purity_inequality_slack(r1: f64, r2: f64, s1: f64, s2: f64) -> f64 {
    let c = |x: f64| (1.0 - x).max(0.0).sqrt();
    let x = [r1.sqrt() * c(r2), r2.sqrt() * c(r1), c(r1) * c(r2)];
    let y = [s1.sqrt() * c(s2), s2.sqrt() * c(s1), c(s1) * c(s2)];
    let xy: f64 = x.iter().zip(&y).map(|(a, b)| a * b).sum();
    ((1.0 - r1 * r2).max(0.0) * (1.0 - s1 * s2).max(0.0)).sqrt() - xy
}

/// `𝓕(ρ1⊗ρ2, σ1⊗σ2) ≥ 𝓕(ρ1,σ1) 𝓕(ρ2,σ2)` together with the purity inequality.
pub fn check_supermultiplicative(trials: usize, dims: (usize, usize), seed: u64) -> Result<ViolationReport> {
    check_dims(&[dims.0, dims.1])?;
    let (d1, d2) = dims;
    search(
        "supermultiplicative",
        trials,
        SUPERMULTIPLICATIVE_TOL,
        seed,
        1 << 48,
        |rng, trial| {
            // Trial 0 uses pure states, where both sides coincide.
            let draw = |d: usize, rng: &mut StateRng| {
                if trial == 0 {
                    random_pure(d, rng).to_density()
                } else {
                    random_mixed(d, rng)
                }
            };
            let (r1, s1) = (draw(d1, rng), draw(d1, rng));
            let (r2, s2) = (draw(d2, rng), draw(d2, rng));
            let joint = new_f(&r1.tensor(&r2), &s1.tensor(&s2))?;
            let product = new_f(&r1, &s1)? * new_f(&r2, &s2)?;
            let p = |x: &DensityMatrix| 1.0 - x.linear_entropy();
            let slack = purity_inequality_slack(p(&r1), p(&r2), p(&s1), p(&s2));
            let margin = (joint - product).min(slack);
            Ok(Outcome::check(margin, SUPERMULTIPLICATIVE_TOL, || Counterexample {
                trial,
                description: format!("super-multiplicativity on {d1}x{d2}"),
                states: mats(&[&r1, &s1, &r2, &s2]),
                channel: None,
                values: vec![joint, product, slack],
            }))
        },
    )
}

/// The two-qubit example `ϱ = |0><0| ⊗ I/2`, `ς = |1><1| ⊗ I/2` under partial traces.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FixedMonotonicity {
    pub f_full: f64,
    /// Trace over the first qubit.
    pub f_trace_first: f64,
    /// Trace over the second qubit.
    pub f_trace_second: f64,
    /// Same maps as dilated channels resetting one qubit to `|0>`.
    pub f_reset_first: f64,
    pub f_reset_second: f64,
    pub holds: bool,
}

pub fn fixed_pair() -> Result<(DensityMatrix, DensityMatrix)> {
    Ok((
        DensityMatrix::from_diagonal(&[0.5, 0.5, 0.0, 0.0])?,
        DensityMatrix::from_diagonal(&[0.0, 0.0, 0.5, 0.5])?,
    ))
}

pub fn check_monotonicity_fixed() -> Result<FixedMonotonicity> {
    let (varrho, varsigma) = fixed_pair()?;
    let f_full = new_f(&varrho, &varsigma)?;
    let f_trace_first = new_f(&varrho.partial_trace(&[2, 2], 1)?, &varsigma.partial_trace(&[2, 2], 1)?)?;
    let f_trace_second = new_f(&varrho.partial_trace(&[2, 2], 0)?, &varsigma.partial_trace(&[2, 2], 0)?)?;
    let through = |which: usize| -> Result<f64> {
        let ch = ChannelSpec::reset_subsystem(&[2, 2], which)?;
        new_f(&apply_channel(&ch, &varrho)?, &apply_channel(&ch, &varsigma)?)
    };
    let f_reset_first = through(0)?;
    let f_reset_second = through(1)?;
    let holds =
        f_full == 0.0 && f_trace_first == 1.0 && f_trace_second == 0.0 && f_reset_first == 1.0 && f_reset_second == 0.0;
    Ok(FixedMonotonicity {
        f_full,
        f_trace_first,
        f_trace_second,
        f_reset_first,
        f_reset_second,
        holds,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MonotonicityReport {
    pub random: ViolationReport,
    pub fixed: FixedMonotonicity,
}

/// Margin `F(Φρ, Φσ) - F(ρ, σ)` over random dilated channels, plus the fixed example.
pub fn check_monotonicity(kind: FidelityKind, trials: usize, dims: &[usize], seed: u64) -> Result<MonotonicityReport> {
    check_dims(dims)?;
    let random = search(
        format!("monotonicity-{kind}"),
        trials,
        MONOTONICITY_TOL,
        seed,
        2 << 48,
        |rng, trial| {
            let dim = dims[trial % dims.len()];
            let rho = random_mixed(dim, rng);
            let sigma = random_mixed(dim, rng);
            // Trial 0 is the identity channel.
            let ch = if trial == 0 {
                ChannelSpec::identity(dim)
            } else {
                let anc = rng.random_range(2..=3);
                ChannelSpec::random(dim, anc, rng)?
            };
            let before = evaluate(kind, &rho, &sigma)?;
            let after = evaluate(kind, &apply_channel(&ch, &rho)?, &apply_channel(&ch, &sigma)?)?;
            Ok(Outcome::check(after - before, MONOTONICITY_TOL, || Counterexample {
                trial,
                description: format!("{kind} decreased under a channel in dim {dim}"),
                states: mats(&[&rho, &sigma]),
                channel: Some(ch.record()),
                values: vec![before, after],
            }))
        },
    )?;
    Ok(MonotonicityReport {
        random,
        fixed: check_monotonicity_fixed()?,
    })
}

/// Margin `𝓕(ρ, pσ1 + (1-p)σ2) - p𝓕(ρ,σ1) - (1-p)𝓕(ρ,σ2)`.
pub fn check_concavity(trials: usize, dims: &[usize], seed: u64) -> Result<ViolationReport> {
    check_dims(dims)?;
    search("concavity", trials, CONCAVITY_TOL, seed, 3 << 48, |rng, trial| {
        let dim = dims[trial % dims.len()];
        let rho = random_mixed(dim, rng);
        let s1 = random_mixed(dim, rng);
        let s2 = random_mixed(dim, rng);
        let p: f64 = rng.random();
        let mixed = s1.mix(p, &s2)?;
        let (fa, fb) = (new_f(&rho, &s1)?, new_f(&rho, &s2)?);
        let fm = new_f(&rho, &mixed)?;
        let margin = fm - p * fa - (1.0 - p) * fb;
        Ok(Outcome::check(margin, CONCAVITY_TOL, || Counterexample {
            trial,
            description: format!("concavity in dim {dim} at p = {p}"),
            states: mats(&[&rho, &s1, &s2]),
            channel: None,
            values: vec![p, fm, fa, fb],
        }))
    })
}

/// Five-point central difference of `t ↦ 𝓕(ρ0, ρ_t)`.
pub fn fidelity_rate<E: Evolution + ?Sized>(rho0: &DensityMatrix, evolution: &E, t: f64, h: f64) -> Result<f64> {
    let f = |s: f64| -> Result<f64> { new_f(rho0, &evolution.state(rho0, s)?) };
    Ok((f(t - 2.0 * h)? - 8.0 * f(t - h)? + 8.0 * f(t + h)? - f(t + 2.0 * h)?) / (12.0 * h))
}

/// `|d𝓕/dt| ≤ integrand_x + tol` at `n_samples` times `τ k / n_samples`, `k = 1..=n_samples`.
pub fn check_derivative_chain_with<E: Evolution + ?Sized>(
    rho0: &DensityMatrix,
    evolution: &E,
    tau: f64,
    n_samples: usize,
) -> Result<ViolationReport> {
    if !(tau > 0.0) {
        return Err(Error::InvalidParameter(format!("tau must be > 0, got {tau}")));
    }
    let h = FD_STEP.min(tau / (4.0 * n_samples.max(1) as f64));
    search(
        "derivative-chain",
        n_samples,
        DERIVATIVE_CHAIN_TOL,
        0,
        4 << 48,
        |_, k| {
            let t = tau * (k + 1) as f64 / n_samples as f64;
            let rate = fidelity_rate(rho0, evolution, t, h)?;
            let rho_t = evolution.state(rho0, t)?;
            let bound = integrand_x(rho0, &rho_t, &evolution.derivative(rho0, t)?, 1e-9)?;
            Ok(Outcome::check(bound - rate.abs(), DERIVATIVE_CHAIN_TOL, || {
                Counterexample {
                    trial: k,
                    description: format!("|dF/dt| exceeds the speed integrand at t = {t}"),
                    states: mats(&[rho0, &rho_t]),
                    channel: None,
                    values: vec![t, rate, bound],
                }
            }))
        },
    )
}

pub fn check_derivative_chain(
    rho0: &DensityMatrix,
    p: &ReservoirParams,
    tau: f64,
    n_samples: usize,
) -> Result<ViolationReport> {
    p.validate()?;
    check_derivative_chain_with(rho0, &DampedAtom(*p), tau, n_samples)
}

fn embed(block: &DensityMatrix, total: usize, offset: usize) -> Result<DensityMatrix> {
    let mut m = ComplexMatrix::zeros(total, total);
    for i in 0..block.dim() {
        for j in 0..block.dim() {
            m[(i + offset, j + offset)] = block.matrix()[(i, j)];
        }
    }
    DensityMatrix::new(m)
}

/// States with disjoint supports: `new_f` must vanish exactly, Bures to
/// [`ORTHOGONALITY_TOL`], while F2 stays positive for mixed blocks.
pub fn check_orthogonality(trials: usize, seed: u64) -> Result<ViolationReport> {
    search(
        "orthogonality",
        trials,
        ORTHOGONALITY_TOL,
        seed,
        5 << 48,
        |rng, trial| {
            let d1 = rng.random_range(2..=4);
            let d2 = rng.random_range(2..=(8 - d1).min(4));
            let a = random_density(d1, rng.random_range(2..=d1), rng)?;
            let b = random_density(d2, rng.random_range(2..=d2), rng)?;
            let rho = embed(&a, d1 + d2, 0)?;
            let sigma = embed(&b, d1 + d2, d1)?;
            let nf = new_f(&rho, &sigma)?;
            let bu = bures(&rho, &sigma)?;
            let f2v = f2(&rho, &sigma)?;
            let margin = if nf != 0.0 || !(f2v > 0.0) { -1.0 } else { -bu.abs() };
            Ok(Outcome::check(margin, ORTHOGONALITY_TOL, || Counterexample {
                trial,
                description: format!("disjoint supports {d1}+{d2}"),
                states: mats(&[&rho, &sigma]),
                channel: None,
                values: vec![nf, bu, f2v],
            }))
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{werner_state, Frozen, WernerSpec};

    #[test]
    fn expectations_table() {
        assert!(!expected_to_hold(FidelityKind::F1, Axiom::A4, 2));
        assert!(expected_to_hold(FidelityKind::F3, Axiom::A4, 2));
        assert!(!expected_to_hold(FidelityKind::F3, Axiom::A4, 3));
        assert!(expected_to_hold(FidelityKind::F3, Axiom::A1, 4));
        assert!(expected_to_hold(FidelityKind::NewF, Axiom::A4, 4));
    }

    #[test]
    fn f1_a4_counterexample() {
        let rep = check_jozsa(FidelityKind::F1, 20, &[2], 1).unwrap();
        let a4 = rep.get(Axiom::A4, 2).unwrap();
        let cx = a4.report.counterexample.as_ref().unwrap();
        assert_eq!(cx.trial, 0);
        assert!((cx.values[0] - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert_eq!(cx.values[1], 0.5);
        assert!(rep.surprises().is_empty());
    }

    #[test]
    fn new_f_small_run_clean() {
        let rep = check_jozsa(FidelityKind::NewF, 200, &[2, 3], 9).unwrap();
        assert!(rep.all_passed(), "{:?}", rep.surprises());
    }

    #[test]
    fn reports_reproducible() {
        let a = check_concavity(300, &[2, 3], 4).unwrap();
        let b = check_concavity(300, &[2, 3], 4).unwrap();
        assert_eq!(a.worst_margin.to_bits(), b.worst_margin.to_bits());
        assert_eq!(a.violations, b.violations);
    }

    #[test]
    fn zero_trials_rejected() {
        assert!(check_concavity(0, &[2], 1).is_err());
        assert!(check_jozsa(FidelityKind::F2, 10, &[1], 1).is_err());
    }

    #[test]
    fn purity_inequality_edges() {
        assert_eq!(purity_inequality_slack(1.0, 1.0, 1.0, 1.0), 0.0);
        assert!(purity_inequality_slack(0.5, 0.7, 0.6, 0.9) >= 0.0);
    }

    #[test]
    fn fixed_example_exact() {
        let fx = check_monotonicity_fixed().unwrap();
        assert!(fx.holds, "{fx:?}");
    }

    #[test]
    fn identity_channel_zero_margin() {
        let rep = check_monotonicity(FidelityKind::NewF, 1, &[3], 5).unwrap();
        assert_eq!(rep.random.worst_margin, 0.0);
    }

    #[test]
    fn frozen_chain_is_trivial() {
        let rho0 = werner_state(WernerSpec { r: 0.5 }).unwrap();
        let rep = check_derivative_chain_with(&rho0, &Frozen, 1.0, 20).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.worst_margin, 0.0);
    }
}
