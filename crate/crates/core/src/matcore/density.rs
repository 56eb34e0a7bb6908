use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::matrix::{ComplexMatrix, Subsystem};
use super::spectrum::{eig_hermitian_tol, Spectrum};
use crate::error::{Error, Result};
use crate::DEFAULT_TOL;

/// A unit-trace Hermitian operator on a two-party space.
///
/// Also used for partially transposed states, which keep trace and
/// Hermiticity but may have negative spectrum; `is_valid_state` records
/// whether the matrix is positive semidefinite.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    dim_a: usize,
    dim_b: usize,
    is_valid_state: bool,
    min_eigenvalue: f64,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix, dim_a: usize, dim_b: usize) -> Result<Self> {
        Self::with_tol(matrix, dim_a, dim_b, DEFAULT_TOL)
    }

    /// Validates trace and Hermiticity at `tol` and classifies positivity.
    pub fn with_tol(matrix: ComplexMatrix, dim_a: usize, dim_b: usize, tol: f64) -> Result<Self> {
        if dim_a == 0 || dim_b == 0 || dim_a * dim_b != matrix.dim() {
            return Err(Error::DimensionMismatch {
                expected: matrix.dim(),
                found: dim_a * dim_b,
            });
        }
        if !matrix.is_finite() {
            return Err(Error::invalid_state("matrix has non-finite entries"));
        }
        let deviation = matrix.hermiticity_deviation();
        if deviation > tol {
            return Err(Error::NonHermitianInput { deviation });
        }
        let trace = matrix.trace();
        if (trace - Complex64::ONE).norm() > tol {
            return Err(Error::invalid_state(format!(
                "trace is {} (expected 1)",
                fmt_complex(trace)
            )));
        }
        let min_eigenvalue = eig_hermitian_tol(&matrix, tol)?.min();
        Ok(Self {
            matrix,
            dim_a,
            dim_b,
            is_valid_state: min_eigenvalue >= -tol,
            min_eigenvalue,
        })
    }

    /// State on a single party, stored with dimensions `(dim, 1)`.
    pub fn single(matrix: ComplexMatrix) -> Result<Self> {
        let dim = matrix.dim();
        Self::new(matrix, dim, 1)
    }

    /// Product state `rho_a ⊗ rho_b` of two single-party states.
    pub fn product(rho_a: &DensityMatrix, rho_b: &DensityMatrix) -> Result<Self> {
        Self::new(rho_a.matrix.tensor(&rho_b.matrix), rho_a.dim(), rho_b.dim())
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.dim_a, self.dim_b)
    }

    pub fn is_valid_state(&self) -> bool {
        self.is_valid_state
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.min_eigenvalue
    }

    pub fn spectrum(&self) -> Result<Spectrum> {
        eig_hermitian_tol(&self.matrix, DEFAULT_TOL)
    }

    pub fn require_valid(&self) -> Result<()> {
        if self.is_valid_state {
            Ok(())
        } else {
            Err(Error::invalid_state(format!(
                "not positive semidefinite (min eigenvalue {:e})",
                self.min_eigenvalue
            )))
        }
    }

    pub fn partial_transpose(&self, which: Subsystem) -> Result<DensityMatrix> {
        let pt = self
            .matrix
            .partial_transpose(self.dim_a, self.dim_b, which)?;
        Self::new(pt, self.dim_a, self.dim_b)
    }

    /// Convex combination `weight * self + (1 - weight) * other`.
    pub fn mix(&self, other: &DensityMatrix, weight: f64) -> Result<DensityMatrix> {
        if self.dims() != other.dims() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        let m = &self.matrix.scale_real(weight) + &other.matrix.scale_real(1.0 - weight);
        Self::new(m, self.dim_a, self.dim_b)
    }

    /// `U rho U†`.
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> Result<DensityMatrix> {
        let m = &(u * &self.matrix) * &u.adjoint();
        Self::new(m, self.dim_a, self.dim_b)
    }

    pub fn to_file_format(&self) -> DensityMatrixFile {
        DensityMatrixFile {
            dims: [self.dim_a, self.dim_b],
            matrix: self.matrix.entries().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file_format()).expect("plain numeric data always serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: DensityMatrixFile = serde_json::from_str(text)?;
        file.into_density()
    }
}

/// On-disk form: `{"dims": [dA, dB], "matrix": [[re, im], ...]}`, row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DensityMatrixFile {
    pub dims: [usize; 2],
    pub matrix: Vec<[f64; 2]>,
}

impl DensityMatrixFile {
    pub fn into_density(self) -> Result<DensityMatrix> {
        let [dim_a, dim_b] = self.dims;
        let dim = dim_a * dim_b;
        if self.matrix.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: self.matrix.len(),
            });
        }
        let entries = self
            .matrix
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        DensityMatrix::new(ComplexMatrix::new(dim, entries)?, dim_a, dim_b)
    }
}

fn fmt_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("{}{:+}i", z.re, z.im)
    }
}
