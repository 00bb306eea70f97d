use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::densmat::random::random_unitary;
use crate::densmat::{ComplexMatrix, DensityMatrix, PureState};
use crate::error::{Error, Result};

/// A CPTP map in Stinespring form: `ρ ↦ Tr_anc[U (ρ ⊗ |a><a|) U†]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelSpec {
    input_dim: usize,
    ancilla_dim: usize,
    dilation_unitary: ComplexMatrix,
    ancilla_state: PureState,
}

/// Serializable view of a [`ChannelSpec`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChannelRecord {
    pub input_dim: usize,
    pub ancilla_dim: usize,
    pub dilation_unitary: ComplexMatrix,
    pub ancilla_state: Vec<Complex64>,
}

impl ChannelSpec {
    pub fn new(
        input_dim: usize,
        ancilla_dim: usize,
        dilation_unitary: ComplexMatrix,
        ancilla_state: PureState,
    ) -> Result<Self> {
        let total = input_dim * ancilla_dim;
        if total == 0 || dilation_unitary.rows() != total || dilation_unitary.cols() != total {
            return Err(Error::DimensionMismatch(dilation_unitary.rows(), total));
        }
        if ancilla_state.dim() != ancilla_dim {
            return Err(Error::DimensionMismatch(ancilla_state.dim(), ancilla_dim));
        }
        let defect = (&dilation_unitary * &dilation_unitary.adjoint()).max_abs_diff(&ComplexMatrix::identity(total));
        if defect > 1e-10 {
            return Err(Error::InvalidParameter(format!(
                "dilation is not unitary (defect {defect:e})"
            )));
        }
        Ok(Self {
            input_dim,
            ancilla_dim,
            dilation_unitary,
            ancilla_state,
        })
    }

    pub fn identity(input_dim: usize) -> Self {
        Self::new(
            input_dim,
            1,
            ComplexMatrix::identity(input_dim),
            PureState::basis(1, 0).expect("dim 1"),
        )
        .expect("identity is unitary")
    }

    /// Haar-random dilation with the ancilla in `|0>`.
    pub fn random<R: Rng + ?Sized>(input_dim: usize, ancilla_dim: usize, rng: &mut R) -> Result<Self> {
        let u = random_unitary(input_dim * ancilla_dim, rng);
        Self::new(input_dim, ancilla_dim, u, PureState::basis(ancilla_dim, 0)?)
    }

    /// Replaces subsystem `which` of the layout `dims` by `|0>`, by swapping it
    /// with an ancilla of the same dimension.
    pub fn reset_subsystem(dims: &[usize], which: usize) -> Result<Self> {
        if which >= dims.len() || dims.contains(&0) {
            return Err(Error::InvalidSubsystems(format!(
                "cannot reset subsystem {which} of {dims:?}"
            )));
        }
        let input_dim: usize = dims.iter().product();
        let anc = dims[which];
        let total = input_dim * anc;
        let mut u = ComplexMatrix::zeros(total, total);
        for index in 0..input_dim {
            // Digit of subsystem `which` in the row-major multi-index.
            let inner: usize = dims[which + 1..].iter().product();
            let digit = (index / inner) % anc;
            for a in 0..anc {
                let swapped = index - digit * inner + a * inner;
                u[(swapped * anc + digit, index * anc + a)] = Complex64::new(1.0, 0.0);
            }
        }
        Self::new(input_dim, anc, u, PureState::basis(anc, 0)?)
    }

    pub fn input_dim(&self) -> usize {
        self.input_dim
    }

    pub fn ancilla_dim(&self) -> usize {
        self.ancilla_dim
    }

    pub fn dilation_unitary(&self) -> &ComplexMatrix {
        &self.dilation_unitary
    }

    pub fn ancilla_state(&self) -> &PureState {
        &self.ancilla_state
    }

    pub fn record(&self) -> ChannelRecord {
        ChannelRecord {
            input_dim: self.input_dim,
            ancilla_dim: self.ancilla_dim,
            dilation_unitary: self.dilation_unitary.clone(),
            ancilla_state: self.ancilla_state.amplitudes().to_vec(),
        }
    }
}

pub fn apply_channel(channel: &ChannelSpec, rho: &DensityMatrix) -> Result<DensityMatrix> {
    if rho.dim() != channel.input_dim {
        return Err(Error::DimensionMismatch(rho.dim(), channel.input_dim));
    }
    let joint = rho.tensor(&channel.ancilla_state.to_density());
    let rotated = joint.conjugate_by(&channel.dilation_unitary)?;
    rotated.partial_trace(&[channel.input_dim, channel.ancilla_dim], 0)
}
