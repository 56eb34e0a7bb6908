//! Dense complex linear algebra: matrices, Hermitian spectra, matrix square
//! roots, partial transposes and seeded random states.

mod density;
mod matrix;
pub mod random;
mod spectrum;

pub use density::{DensityMatrix, DensityMatrixFile};
pub use matrix::{pauli, tensor, ComplexMatrix, Pauli, Subsystem};
pub use spectrum::{
    eig_hermitian, eig_hermitian_tol, principal_scalar_sqrt, principal_sqrt, unitary_exp, Spectrum,
};
