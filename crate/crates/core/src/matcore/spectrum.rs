//! Hermitian eigendecomposition and the matrix functions built on it.
//!
//! Every matrix function here is evaluated as `V f(Λ) V†`. Degenerate
//! eigenvalues need no special care: any orthonormal basis of an eigenspace
//! produces the same `V f(Λ) V†`, so only the eigenvalue multiset and the
//! reconstruction are contractual, never individual eigenvectors.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};
use crate::DEFAULT_TOL;

const EIG_MAX_ITER: usize = 10_000;

/// Eigenvalues whose magnitude is below this multiple of the spectral radius
/// are treated as exact zeros by [`principal_sqrt`]. Without it, a rounding
/// residue of `-1e-17` on a singular state turns into an `i * 3e-9` imaginary
/// part, which is the same order as the verdict tolerance.
const ZERO_EIGENVALUE_REL: f64 = 64.0 * f64::EPSILON;

/// Eigenvalues (descending) and the unitary whose columns are the eigenvectors.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl Spectrum {
    pub fn min(&self) -> f64 {
        *self.eigenvalues.last().expect("spectrum is never empty")
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues[0]
    }

    /// Rebuilds `V diag(f(λ)) V†`.
    pub fn apply(&self, f: impl Fn(f64) -> Complex64) -> ComplexMatrix {
        let v = self.eigenvectors.as_nalgebra();
        let n = v.nrows();
        let fvals: Vec<Complex64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let scaled = DMatrix::from_fn(n, n, |i, k| v[(i, k)] * fvals[k]);
        ComplexMatrix::from_nalgebra(scaled * v.adjoint())
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.apply(|l| Complex64::new(l, 0.0))
    }
}

pub fn eig_hermitian(m: &ComplexMatrix) -> Result<Spectrum> {
    eig_hermitian_tol(m, DEFAULT_TOL)
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues sorted descending.
///
/// The input is checked against `tol` (scaled by the largest entry when that
/// exceeds one) and then symmetrized before the solver sees it.
pub fn eig_hermitian_tol(m: &ComplexMatrix, tol: f64) -> Result<Spectrum> {
    let deviation = m.hermiticity_deviation();
    if !m.is_finite() || deviation > tol * m.max_abs().max(1.0) {
        return Err(Error::NonHermitianInput { deviation });
    }
    let raw = m.as_nalgebra();
    let sym = (raw + raw.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = SymmetricEigen::try_new(sym, f64::EPSILON, EIG_MAX_ITER)
        .ok_or_else(|| Error::Numerical("Hermitian eigensolver did not converge".into()))?;

    let n = m.dim();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let eigenvalues = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = DMatrix::from_fn(n, n, |i, k| eig.eigenvectors[(i, order[k])]);
    Ok(Spectrum {
        eigenvalues,
        eigenvectors: ComplexMatrix::from_nalgebra(vectors),
    })
}

/// Principal scalar square root: `√λ` for `λ ≥ 0`, `i√|λ|` for `λ < 0`.
pub fn principal_scalar_sqrt(lambda: f64) -> Complex64 {
    if lambda >= 0.0 {
        Complex64::new(lambda.sqrt(), 0.0)
    } else {
        Complex64::new(0.0, (-lambda).sqrt())
    }
}

/// Square root of a Hermitian matrix that may be indefinite.
///
/// Negative eigenvalues map onto the positive imaginary axis, so the result
/// squares back to `m` but is not Hermitian once `m` has negative spectrum.
pub fn principal_sqrt(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let spectrum = eig_hermitian(m)?;
    Ok(principal_sqrt_of(&spectrum))
}

fn principal_sqrt_of(spectrum: &Spectrum) -> ComplexMatrix {
    let radius = spectrum.max().abs().max(spectrum.min().abs());
    let cutoff = ZERO_EIGENVALUE_REL * radius.max(1.0);
    spectrum.apply(|l| {
        if l.abs() <= cutoff {
            Complex64::ZERO
        } else {
            principal_scalar_sqrt(l)
        }
    })
}

/// `exp(-iθH)` for Hermitian `H`.
pub fn unitary_exp(h: &ComplexMatrix, theta: f64) -> Result<ComplexMatrix> {
    let spectrum = eig_hermitian(h)?;
    Ok(spectrum.apply(|l| Complex64::from_polar(1.0, -theta * l)))
}
