//! Numerics for an alternative quantum fidelity and the quantum-speed-limit
//! bound built on it.
//!
//! - [`densmat`]: complex matrices, density matrices, eigendecomposition, random ensembles.
//! - [`fidelity`]: Bures fidelity, three closed-form alternatives and the purity-weighted fidelity `new_f`.
//! - [`dynamics`]: exact reduced dynamics of a resonantly damped two-level atom in a Lorentzian reservoir.
//! - [`qsl`]: the speed-limit integrand, quadrature and bounds.
//! - [`verify`]: randomized property checks and the fixed worked examples.
//! - [`io`]: JSON state files.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod densmat;
pub mod dynamics;
mod error;
pub mod fidelity;
pub mod io;
pub mod qsl;
pub mod verify;

pub use densmat::{ComplexMatrix, DensityMatrix, PureState};
pub use dynamics::{ReservoirParams, Trajectory, WernerSpec};
pub use error::{Error, Result};
pub use fidelity::FidelityKind;
pub use qsl::{BoundResult, QuadratureConfig};
pub use verify::{ChannelSpec, ViolationReport};
