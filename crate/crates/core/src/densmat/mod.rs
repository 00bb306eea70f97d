//! Dense complex matrices and density-matrix algebra for small dimensions.

mod eigen;
mod matrix;
pub mod random;
mod state;

pub use eigen::{eig_hermitian, singular_values, sqrt_psd, HermitianEigen, HERMITIAN_TOL, PSD_TOL};
pub use matrix::ComplexMatrix;
pub use state::{DensityMatrix, PureState, STATE_TOL};

pub use num_complex::Complex64;
