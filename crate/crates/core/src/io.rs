//! JSON state files: `{"dim": n, "entries": [[re, im], ...]}` with `n²`
//! entries in row-major order.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::densmat::{ComplexMatrix, DensityMatrix};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub dim: usize,
    pub entries: Vec<[f64; 2]>,
}

impl StateFile {
    pub fn from_state(rho: &DensityMatrix) -> Self {
        Self {
            dim: rho.dim(),
            entries: rho.matrix().entries().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    /// Shape problems are parse errors; physical invariants are checked by
    /// [`DensityMatrix::new`].
    pub fn matrix(&self) -> Result<ComplexMatrix> {
        if self.dim == 0 || self.entries.len() != self.dim * self.dim {
            return Err(Error::Parse(format!(
                "expected {} entries for dim {}, got {}",
                self.dim * self.dim,
                self.dim,
                self.entries.len()
            )));
        }
        let entries = self.entries.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
        ComplexMatrix::from_row_major(self.dim, self.dim, entries)
    }

    pub fn to_state(&self) -> Result<DensityMatrix> {
        DensityMatrix::new(self.matrix()?)
    }
}

/// Parses only; the returned file may still describe an invalid state.
pub fn parse_state_file(json: &str) -> Result<StateFile> {
    serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))
}

pub fn state_from_json(json: &str) -> Result<DensityMatrix> {
    parse_state_file(json)?.to_state()
}

pub fn state_to_json(rho: &DensityMatrix) -> String {
    serde_json::to_string_pretty(&StateFile::from_state(rho)).expect("plain data serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let rho = DensityMatrix::from_diagonal(&[0.75, 0.25]).unwrap();
        let back = state_from_json(&state_to_json(&rho)).unwrap();
        assert_eq!(back.max_abs_diff(&rho), 0.0);
    }

    #[test]
    fn parse_vs_invariant_errors() {
        assert!(matches!(state_from_json("{"), Err(Error::Parse(_))));
        assert!(matches!(
            state_from_json(r#"{"dim": 2, "entries": [[1,0],[0,0],[0,0]]}"#),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            state_from_json(r#"{"dim": 2, "entries": [[0.5,0],[0,0],[0,0],[0.6,0]]}"#),
            Err(Error::InvalidTrace(_))
        ));
    }
}
