//! Inputs shared by the benchmarks in `benches/`.

use altfid_core::densmat::random::{random_density, seeded_rng};
use altfid_core::dynamics::werner_state;
use altfid_core::{DensityMatrix, ReservoirParams, WernerSpec};

/// Two full-rank random states of dimension `dim`.
pub fn state_pair(dim: usize, seed: u64) -> (DensityMatrix, DensityMatrix) {
    let mut rng = seeded_rng(seed);
    (
        random_density(dim, dim, &mut rng).expect("valid rank"),
        random_density(dim, dim, &mut rng).expect("valid rank"),
    )
}

pub fn werner(r: f64) -> DensityMatrix {
    werner_state(WernerSpec::new(r).expect("r in [0, 1]")).expect("valid state")
}

pub fn strong_coupling() -> ReservoirParams {
    ReservoirParams::new(5.0, 1.0, 1.0).expect("valid params")
}
