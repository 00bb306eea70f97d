use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::densmat::random::{stream_rng, StateRng};
use crate::densmat::ComplexMatrix;
use crate::error::{Error, Result};
use crate::verify::channel::ChannelRecord;

/// Data for the first violating trial of a search.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Counterexample {
    pub trial: usize,
    pub description: String,
    pub states: Vec<ComplexMatrix>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub channel: Option<ChannelRecord>,
    pub values: Vec<f64>,
}

/// Outcome of a randomized property search.
///
/// `margin` is the slack of the checked inequality (negative means violated);
/// a counterexample is kept iff `worst_margin < -tolerance`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ViolationReport {
    pub property: String,
    pub trials: usize,
    pub tolerance: f64,
    pub worst_margin: f64,
    pub violations: usize,
    pub counterexample: Option<Counterexample>,
    pub seed: u64,
}

impl ViolationReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

pub(crate) struct Outcome {
    pub margin: f64,
    pub witness: Option<Counterexample>,
}

impl Outcome {
    /// Builds the witness only when `margin` breaks the tolerance.
    pub fn check(margin: f64, tolerance: f64, witness: impl FnOnce() -> Counterexample) -> Self {
        let violated = !(margin >= -tolerance);
        Self {
            margin,
            witness: violated.then(witness),
        }
    }
}

/// Runs `trials` independent trials; trial `i` draws from stream `stream_base + i`
/// of `seed`, so the result does not depend on thread count.
pub(crate) fn search<F>(
    property: impl Into<String>,
    trials: usize,
    tolerance: f64,
    seed: u64,
    stream_base: u64,
    trial: F,
) -> Result<ViolationReport>
where
    F: Fn(&mut StateRng, usize) -> Result<Outcome> + Sync,
{
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be >= 1".into()));
    }
    let outcomes = (0..trials)
        .into_par_iter()
        .map(|i| trial(&mut stream_rng(seed, stream_base + i as u64), i))
        .collect::<Result<Vec<Outcome>>>()?;
    Ok(merge(property.into(), tolerance, seed, outcomes))
}

pub(crate) fn merge(property: String, tolerance: f64, seed: u64, outcomes: Vec<Outcome>) -> ViolationReport {
    let trials = outcomes.len();
    let mut worst = f64::INFINITY;
    let mut violations = 0;
    let mut counterexample = None;
    for o in outcomes {
        worst = if o.margin.is_nan() {
            f64::MIN
        } else {
            worst.min(o.margin)
        };
        if let Some(w) = o.witness {
            violations += 1;
            counterexample.get_or_insert(w);
        }
    }
    ViolationReport {
        property,
        trials,
        tolerance,
        worst_margin: worst,
        violations,
        counterexample,
        seed,
    }
}
