//! Parameterized two-qubit state families and the `family:key=val` spec syntax.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matcore::{ComplexMatrix, DensityMatrix};
use crate::DEFAULT_TOL;

fn check_unit(name: &'static str, value: f64, lo: f64, range: &'static str) -> Result<()> {
    if !(lo..=1.0).contains(&value) {
        return Err(Error::ParamOutOfRange { name, value, range });
    }
    Ok(())
}

fn two_qubit(entries: &[f64]) -> DensityMatrix {
    DensityMatrix::new(
        ComplexMatrix::from_real(4, entries).expect("16 entries"),
        2,
        2,
    )
    .expect("family constructors produce valid states")
}

/// `(1−p)/4 𝟙 + p |ψ−⟩⟨ψ−|`.
pub fn werner(p: f64) -> Result<DensityMatrix> {
    check_unit("p", p, 0.0, "[0, 1]")?;
    let (d, m, o) = ((1.0 - p) / 4.0, (1.0 + p) / 4.0, -p / 2.0);
    #[rustfmt::skip]
    let e = [
        d,   0.0, 0.0, 0.0,
        0.0, m,   o,   0.0,
        0.0, o,   m,   0.0,
        0.0, 0.0, 0.0, d,
    ];
    Ok(two_qubit(&e))
}

/// `(1−p)/4 𝟙 + p |ψ⟩⟨ψ|` with `|ψ⟩ = √a|00⟩ + √(1−a)|11⟩`.
pub fn werner_derivative(a: f64, p: f64) -> Result<DensityMatrix> {
    check_unit("a", a, 0.5, "[1/2, 1]")?;
    check_unit("p", p, 0.0, "[0, 1]")?;
    let q = (1.0 - p) / 4.0;
    let top = q + a * p;
    let bottom = q + (1.0 - a) * p;
    let off = p * (a * (1.0 - a)).sqrt();
    #[rustfmt::skip]
    let e = [
        top, 0.0, 0.0, off,
        0.0, q,   0.0, 0.0,
        0.0, 0.0, q,   0.0,
        off, 0.0, 0.0, bottom,
    ];
    Ok(two_qubit(&e))
}

/// Projector onto `c0|00⟩ + c1|11⟩`.
pub fn pure_nonmax(c0: Complex64, c1: Complex64) -> Result<DensityMatrix> {
    let norm = c0.norm_sqr() + c1.norm_sqr();
    if (norm - 1.0).abs() > DEFAULT_TOL {
        return Err(Error::NotNormalized { norm });
    }
    let z = Complex64::ZERO;
    DensityMatrix::new(ComplexMatrix::projector(&[c0, z, z, c1]), 2, 2)
}

/// `(1−p) ρ_G + p ρ_W`, the mixture of the two-qubit reductions of the
/// three-qubit GHZ and W states.
pub fn ghz_w_mixture(p: f64) -> Result<DensityMatrix> {
    check_unit("p", p, 0.0, "[0, 1]")?;
    let (d0, m, d3) = ((3.0 - p) / 6.0, p / 3.0, (1.0 - p) / 2.0);
    #[rustfmt::skip]
    let e = [
        d0,  0.0, 0.0, 0.0,
        0.0, m,   m,   0.0,
        0.0, m,   m,   0.0,
        0.0, 0.0, 0.0, d3,
    ];
    Ok(two_qubit(&e))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BellKind {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BellKind::PhiPlus => "phi+",
            BellKind::PhiMinus => "phi-",
            BellKind::PsiPlus => "psi+",
            BellKind::PsiMinus => "psi-",
        }
    }
}

impl FromStr for BellKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "phi+" | "phi_plus" => Ok(BellKind::PhiPlus),
            "phi-" | "phi_minus" => Ok(BellKind::PhiMinus),
            "psi+" | "psi_plus" => Ok(BellKind::PsiPlus),
            "psi-" | "psi_minus" => Ok(BellKind::PsiMinus),
            _ => Err(Error::parse(
                0,
                format!("unknown Bell state {s:?} (phi+, phi-, psi+, psi-)"),
            )),
        }
    }
}

pub fn bell(kind: BellKind) -> DensityMatrix {
    let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let z = Complex64::ZERO;
    let v = match kind {
        BellKind::PhiPlus => [s, z, z, s],
        BellKind::PhiMinus => [s, z, z, -s],
        BellKind::PsiPlus => [z, s, s, z],
        BellKind::PsiMinus => [z, s, -s, z],
    };
    DensityMatrix::new(ComplexMatrix::projector(&v), 2, 2).expect("Bell states are valid")
}

/// `𝟙/dim`, split as two qubits when `dim = 4` and as `(dim, 1)` otherwise.
pub fn max_mixed(dim: usize) -> Result<DensityMatrix> {
    if dim == 0 {
        return Err(Error::ParamOutOfRange {
            name: "dim",
            value: 0.0,
            range: "positive integers",
        });
    }
    let (da, db) = if dim == 4 { (2, 2) } else { (dim, 1) };
    DensityMatrix::new(
        ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64),
        da,
        db,
    )
}

/// Named state families accepted by [`StateSpec`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyId {
    Werner,
    WernerDerivative,
    PureNonmax,
    GhzW,
    Bell,
    MaxMixed,
    Custom,
}

impl FamilyId {
    pub const ALL: [FamilyId; 7] = [
        FamilyId::Werner,
        FamilyId::WernerDerivative,
        FamilyId::PureNonmax,
        FamilyId::GhzW,
        FamilyId::Bell,
        FamilyId::MaxMixed,
        FamilyId::Custom,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FamilyId::Werner => "werner",
            FamilyId::WernerDerivative => "werner_derivative",
            FamilyId::PureNonmax => "pure_nonmax",
            FamilyId::GhzW => "ghz_w",
            FamilyId::Bell => "bell",
            FamilyId::MaxMixed => "max_mixed",
            FamilyId::Custom => "custom",
        }
    }

    fn keys(self) -> &'static [&'static str] {
        match self {
            FamilyId::Werner | FamilyId::GhzW => &["p"],
            FamilyId::WernerDerivative => &["a", "p"],
            FamilyId::PureNonmax => &["c0", "c1"],
            FamilyId::Bell => &["kind"],
            FamilyId::MaxMixed => &["dim"],
            FamilyId::Custom => &["file"],
        }
    }

    /// Observable pair used when none is given.
    pub fn default_observables(self) -> (&'static str, &'static str) {
        match self {
            FamilyId::Werner | FamilyId::Bell | FamilyId::Custom => ("XY", "YX"),
            FamilyId::GhzW | FamilyId::WernerDerivative | FamilyId::MaxMixed => ("ZI", "IZ"),
            FamilyId::PureNonmax => ("ZZ", "XX"),
        }
    }

    /// Parameter swept by default, with its full domain.
    pub fn default_sweep_param(self) -> Option<(&'static str, f64, f64)> {
        match self {
            FamilyId::Werner | FamilyId::GhzW => Some(("p", 0.0, 1.0)),
            FamilyId::WernerDerivative => Some(("a", 0.5, 1.0)),
            FamilyId::PureNonmax => Some(("c0", 0.0, 1.0)),
            _ => None,
        }
    }

    /// Domain of a real parameter, when it has one.
    pub fn param_domain(self, key: &str) -> Option<(f64, f64)> {
        match (self, key) {
            (FamilyId::WernerDerivative, "a") => Some((0.5, 1.0)),
            (FamilyId::PureNonmax, "c0" | "c1") => Some((0.0, 1.0)),
            (_, "p") => Some((0.0, 1.0)),
            _ => None,
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "ghz_w_mixture" => return Ok(FamilyId::GhzW),
            "wd" => return Ok(FamilyId::WernerDerivative),
            _ => {}
        }
        FamilyId::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::parse(0, format!("unknown state family {s:?}")))
    }
}

/// A state family plus its parameters, written `family:key=val,key=val`.
///
/// Values are kept as text so that real, complex (`0.6+0.1i`), keyword and
/// path parameters share one map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateSpec {
    pub family: FamilyId,
    pub params: BTreeMap<String, String>,
}

impl StateSpec {
    pub fn new(family: FamilyId) -> Self {
        Self {
            family,
            params: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    /// Sets a real parameter using the shortest representation that parses back exactly.
    pub fn set_real(&mut self, key: &str, value: f64) {
        self.params.insert(key.to_string(), format!("{value}"));
    }

    fn real(&self, key: &'static str) -> Result<f64> {
        let raw = self
            .params
            .get(key)
            .ok_or_else(|| Error::parse(0, format!("{} needs parameter `{key}`", self.family)))?;
        raw.trim()
            .parse::<f64>()
            .map_err(|_| Error::parse(0, format!("`{key}={raw}` is not a real number")))
    }

    fn complex(&self, key: &'static str) -> Result<Option<Complex64>> {
        match self.params.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .trim()
                .parse::<Complex64>()
                .map(Some)
                .map_err(|_| Error::parse(0, format!("`{key}={raw}` is not a complex number"))),
        }
    }

    pub fn build(&self) -> Result<DensityMatrix> {
        match self.family {
            FamilyId::Werner => werner(self.real("p")?),
            FamilyId::GhzW => ghz_w_mixture(self.real("p")?),
            FamilyId::WernerDerivative => werner_derivative(self.real("a")?, self.real("p")?),
            FamilyId::PureNonmax => {
                let c0 = self
                    .complex("c0")?
                    .ok_or_else(|| Error::parse(0, "pure_nonmax needs parameter `c0`"))?;
                let c1 = match self.complex("c1")? {
                    Some(c1) => c1,
                    None => {
                        let rest = 1.0 - c0.norm_sqr();
                        if rest < -DEFAULT_TOL {
                            return Err(Error::NotNormalized {
                                norm: c0.norm_sqr(),
                            });
                        }
                        Complex64::new(rest.max(0.0).sqrt(), 0.0)
                    }
                };
                pure_nonmax(c0, c1)
            }
            FamilyId::Bell => {
                let kind = self
                    .params
                    .get("kind")
                    .map(String::as_str)
                    .unwrap_or("psi-");
                Ok(bell(kind.parse()?))
            }
            FamilyId::MaxMixed => {
                let dim = match self.params.get("dim") {
                    None => 4,
                    Some(raw) => raw.trim().parse::<usize>().map_err(|_| {
                        Error::parse(0, format!("`dim={raw}` is not a positive integer"))
                    })?,
                };
                max_mixed(dim)
            }
            FamilyId::Custom => {
                let file = self
                    .params
                    .get("file")
                    .ok_or_else(|| Error::parse(0, "custom needs parameter `file`"))?;
                load_state_file(Path::new(file))
            }
        }
    }
}

impl FromStr for StateSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let (name, rest) = match text.split_once(':') {
            Some((name, rest)) => (name, Some(rest)),
            None => (text, None),
        };
        let family: FamilyId = name.parse()?;
        let mut spec = StateSpec::new(family);
        let Some(rest) = rest else {
            return Ok(spec);
        };
        let mut offset = name.len() + 1;
        for item in rest.split(',') {
            if item.trim().is_empty() {
                offset += item.len() + 1;
                continue;
            }
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::parse(offset, format!("expected key=value, got {item:?}")))?;
            let key = key.trim();
            if !family.keys().contains(&key) {
                return Err(Error::parse(
                    offset,
                    format!(
                        "{family} has no parameter `{key}` (expected {})",
                        family.keys().join(", ")
                    ),
                ));
            }
            spec.params
                .insert(key.to_string(), value.trim().to_string());
            offset += item.len() + 1;
        }
        Ok(spec)
    }
}

impl fmt::Display for StateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family)?;
        for (i, (k, v)) in self.params.iter().enumerate() {
            let sep = if i == 0 { ':' } else { ',' };
            write!(f, "{sep}{k}={v}")?;
        }
        Ok(())
    }
}

/// Reads a density matrix in the JSON file format.
pub fn load_state_file(path: &Path) -> Result<DensityMatrix> {
    let text = std::fs::read_to_string(path)?;
    DensityMatrix::from_json(&text)
}
