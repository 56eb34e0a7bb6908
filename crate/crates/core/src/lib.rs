//! Entanglement detection for mixed two-party states.
//!
//! The central test evaluates the skew-information uncertainty relation
//! `U(ρ^PT,A) U(ρ^PT,B) ≥ |C_{ρ^PT}(A,B)|²` on the partial transpose of a
//! state; a violation certifies entanglement. The crate also evaluates the
//! variance-based relations it is compared against (Heisenberg,
//! Schrödinger–Robertson, the SRPT inequality) and the plain PPT test.
//!
//! Layout:
//! - [`matcore`]: complex matrices, Hermitian spectra, square roots, partial transpose.
//! - [`wyquant`]: variance, skew information, U-quantity, Wigner–Yanase correlation.
//! - [`criteria`]: every criterion as a [`criteria::CriterionReport`].
//! - [`states`]: the parameterized state families.
//! - [`observable`], [`scan`]: Pauli-string parsing, state specs, sweeps and threshold search.

pub mod criteria;
mod error;
pub mod matcore;
pub mod observable;
pub mod scan;
pub mod states;
pub mod wyquant;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Default absolute tolerance for validity checks and verdicts.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Environment variable that overrides [`DEFAULT_TOL`] in front ends.
pub const TOL_ENV_VAR: &str = "WYWITNESS_TOL";

/// Reads the verdict tolerance from `WYWITNESS_TOL`, falling back to [`DEFAULT_TOL`].
pub fn tolerance_from_env() -> Result<f64> {
    match std::env::var(TOL_ENV_VAR) {
        Ok(text) => match text.trim().parse::<f64>() {
            Ok(t) if t.is_finite() && t >= 0.0 => Ok(t),
            _ => Err(Error::Parse {
                position: 0,
                message: format!("{TOL_ENV_VAR}={text:?} is not a non-negative number"),
            }),
        },
        Err(_) => Ok(DEFAULT_TOL),
    }
}
