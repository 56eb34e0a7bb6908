//! Uncertainty quantities of an observable in a state.
//!
//! Every quantity returns a complex scalar: on a valid state they are real,
//! but on a partially transposed matrix `√ρ` picks up imaginary parts and so
//! do the skew information, the U-quantity and the Wigner–Yanase correlation.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matcore::{principal_sqrt, ComplexMatrix, DensityMatrix};
use crate::observable::Observable;

/// Variance, skew information, classical part and `U²` for one (state, observable) pair.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct UncertaintyProfile {
    pub variance: Complex64,
    pub skew_info: Complex64,
    pub classical_part: Complex64,
    pub u_squared: Complex64,
}

impl UncertaintyProfile {
    pub fn compute(rho: &DensityMatrix, a: &Observable) -> Result<Self> {
        check_dims(rho, a)?;
        let sqrt = principal_sqrt(rho.matrix())?;
        Ok(Self::with_sqrt(rho.matrix(), &sqrt, a.matrix()))
    }

    pub(crate) fn with_sqrt(rho: &ComplexMatrix, sqrt: &ComplexMatrix, a: &ComplexMatrix) -> Self {
        let variance = variance_raw(rho, a);
        let skew_info = skew_raw(rho, sqrt, a);
        let classical_part = variance - skew_info;
        Self {
            variance,
            skew_info,
            classical_part,
            u_squared: variance * variance - classical_part * classical_part,
        }
    }

    /// Principal square root of `U²`.
    pub fn u(&self) -> Complex64 {
        self.u_squared.sqrt()
    }
}

fn check_dims(rho: &DensityMatrix, a: &Observable) -> Result<()> {
    if rho.dim() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: a.dim(),
        });
    }
    Ok(())
}

pub(crate) fn expectation(rho: &ComplexMatrix, a: &ComplexMatrix) -> Complex64 {
    rho.trace_product(a)
}

pub(crate) fn variance_raw(rho: &ComplexMatrix, a: &ComplexMatrix) -> Complex64 {
    let mean = expectation(rho, a);
    expectation(rho, &(a * a)) - mean * mean
}

pub(crate) fn skew_raw(rho: &ComplexMatrix, sqrt: &ComplexMatrix, a: &ComplexMatrix) -> Complex64 {
    let sa = sqrt * a;
    expectation(rho, &(a * a)) - sa.trace_product(&sa)
}

pub(crate) fn wy_correlation_raw(
    rho: &ComplexMatrix,
    sqrt: &ComplexMatrix,
    a: &ComplexMatrix,
    b: &ComplexMatrix,
) -> Complex64 {
    let a_star = a.conj();
    let first = expectation(rho, &(&a_star * b));
    let second = (sqrt * &a_star).trace_product(&(sqrt * b));
    first - second
}

pub(crate) fn covariance_raw(
    rho: &ComplexMatrix,
    a: &ComplexMatrix,
    b: &ComplexMatrix,
) -> Complex64 {
    expectation(rho, &(a * b)) - expectation(rho, a) * expectation(rho, b)
}

/// `Tr(ρA²) − (Tr ρA)²`.
pub fn variance(rho: &DensityMatrix, a: &Observable) -> Result<Complex64> {
    check_dims(rho, a)?;
    Ok(variance_raw(rho.matrix(), a.matrix()))
}

/// Wigner–Yanase skew information `Tr(ρA²) − Tr(√ρ A √ρ A)`.
///
/// `√ρ` is the principal square root, so partially transposed inputs with
/// negative eigenvalues are accepted and give complex values.
pub fn skew_information(rho: &DensityMatrix, a: &Observable) -> Result<Complex64> {
    check_dims(rho, a)?;
    let sqrt = principal_sqrt(rho.matrix())?;
    Ok(skew_raw(rho.matrix(), &sqrt, a.matrix()))
}

/// `U² = V² − (V − I)²`.
pub fn u_quantity_squared(rho: &DensityMatrix, a: &Observable) -> Result<Complex64> {
    Ok(UncertaintyProfile::compute(rho, a)?.u_squared)
}

/// Wigner–Yanase correlation `Tr(ρA*B) − Tr(√ρ A* √ρ B)`, with `A*` the
/// entrywise conjugate of `A` in the computational basis.
pub fn wy_correlation(rho: &DensityMatrix, a: &Observable, b: &Observable) -> Result<Complex64> {
    check_dims(rho, a)?;
    check_dims(rho, b)?;
    let sqrt = principal_sqrt(rho.matrix())?;
    Ok(wy_correlation_raw(
        rho.matrix(),
        &sqrt,
        a.matrix(),
        b.matrix(),
    ))
}

/// `Tr(ρAB) − (Tr ρA)(Tr ρB)`.
pub fn covariance(rho: &DensityMatrix, a: &Observable, b: &Observable) -> Result<Complex64> {
    check_dims(rho, a)?;
    check_dims(rho, b)?;
    Ok(covariance_raw(rho.matrix(), a.matrix(), b.matrix()))
}

/// Measurable lower bound `¼ Σ_ij (λ_i − λ_j)² |A_ij|²` on the skew information.
///
/// Evaluated basis-free as `−¼ Tr([ρ, A]²)`, which equals the eigenbasis sum.
pub fn skew_info_lower_bound(rho: &DensityMatrix, a: &Observable) -> Result<f64> {
    check_dims(rho, a)?;
    rho.require_valid()?;
    let comm = rho.matrix().commutator(a.matrix());
    Ok((-0.25 * comm.trace_product(&comm).re).max(0.0))
}

/// `A − ⟨A⟩_ρ 𝟙`.
pub fn fluctuation_operator(rho: &DensityMatrix, a: &Observable) -> Result<Observable> {
    check_dims(rho, a)?;
    Ok(Observable::new_unchecked(fluctuation_raw(
        rho.matrix(),
        a.matrix(),
    )))
}

pub(crate) fn fluctuation_raw(rho: &ComplexMatrix, a: &ComplexMatrix) -> ComplexMatrix {
    let mean = expectation(rho, a).re;
    a - &ComplexMatrix::identity(a.dim()).scale_real(mean)
}
