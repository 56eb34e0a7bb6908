//! Observables and the two-qubit Pauli-string notation used to name them.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matcore::{ComplexMatrix, Pauli};
use crate::DEFAULT_TOL;

/// Number of qubits a [`PauliString`] spans.
pub const QUBITS: usize = 2;

/// Hermitian operator on the joint space.
#[derive(Clone, Debug, PartialEq)]
pub struct Observable {
    matrix: ComplexMatrix,
    label: Option<String>,
}

impl Observable {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let deviation = matrix.hermiticity_deviation();
        if deviation > DEFAULT_TOL * matrix.max_abs().max(1.0) {
            return Err(Error::NonHermitianInput { deviation });
        }
        Ok(Self {
            matrix,
            label: None,
        })
    }

    pub(crate) fn new_unchecked(matrix: ComplexMatrix) -> Self {
        Self {
            matrix,
            label: None,
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn identity(dim: usize) -> Self {
        Self::new_unchecked(ComplexMatrix::identity(dim))
            .with_label("I".repeat(dim.ilog2() as usize))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    /// True when every entry is real in the computational basis, so `A* = A`.
    pub fn is_real(&self) -> bool {
        self.matrix.as_nalgebra().iter().all(|z| z.im == 0.0)
    }
}

impl From<PauliString> for Observable {
    fn from(p: PauliString) -> Self {
        let label = p.to_string();
        Observable::new_unchecked(p.matrix()).with_label(label)
    }
}

/// Tensor product of single-qubit Paulis, written left factor first (`"XY"` = σx ⊗ σy).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliString(Vec<Pauli>);

impl PauliString {
    pub fn new(factors: Vec<Pauli>) -> Self {
        Self(factors)
    }

    pub fn factors(&self) -> &[Pauli] {
        &self.0
    }

    pub fn matrix(&self) -> ComplexMatrix {
        self.0
            .iter()
            .map(|p| p.matrix())
            .reduce(|acc, m| acc.tensor(&m))
            .unwrap_or_else(|| ComplexMatrix::identity(1))
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut factors = Vec::with_capacity(QUBITS);
        for (position, c) in text.chars().enumerate() {
            match Pauli::from_symbol(c) {
                Some(p) => factors.push(p),
                None => {
                    return Err(Error::parse(
                        position,
                        format!(
                            "invalid Pauli symbol {c:?} in {text:?} (expected one of I, X, Y, Z)"
                        ),
                    ))
                }
            }
        }
        if factors.len() != QUBITS {
            return Err(Error::parse(
                factors.len().min(QUBITS),
                format!("Pauli string {text:?} must have exactly {QUBITS} symbols"),
            ));
        }
        Ok(Self(factors))
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|p| write!(f, "{}", p.symbol()))
    }
}

pub fn parse_observable(text: &str) -> Result<Observable> {
    Ok(text.parse::<PauliString>()?.into())
}

/// Parses `"A,B"` into two observables.
pub fn parse_observable_pair(text: &str) -> Result<(Observable, Observable)> {
    let (a, b) = text.split_once(',').ok_or_else(|| {
        Error::parse(0, format!("expected two Pauli strings `A,B`, got {text:?}"))
    })?;
    let first = parse_observable(a.trim())?;
    let second = parse_observable(b.trim()).map_err(|e| match e {
        Error::Parse { position, message } => Error::Parse {
            position: position + a.len() + 1,
            message,
        },
        other => other,
    })?;
    Ok((first, second))
}
