//! Uncertainty-relation entanglement criteria.
//!
//! Each evaluator returns a [`CriterionReport`]. `SATISFIED` means the
//! inequality holds within tolerance; `VIOLATED` on any of the partial
//! transpose based criteria (`PROPOSED_PT`, `SR_ON_PT`, `SRPT`, `PPT`)
//! certifies entanglement. The state-level relations (`HEISENBERG`, `SR`,
//! `LUO_I`, `LUO_U`, `FURUICHI`) are theorems for valid states, except
//! `LUO_I`, which is kept for comparison only.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matcore::{principal_sqrt, ComplexMatrix, DensityMatrix, Subsystem};
use crate::observable::Observable;
use crate::wyquant::{
    expectation, fluctuation_raw, variance_raw, wy_correlation_raw, UncertaintyProfile,
};
use crate::DEFAULT_TOL;

/// Maximum disagreement tolerated between the two SRPT evaluation routes.
pub const SRPT_ROUTE_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CriterionId {
    Heisenberg,
    Sr,
    LuoI,
    LuoU,
    Furuichi,
    ProposedPt,
    SrOnPt,
    Srpt,
    Ppt,
}

impl CriterionId {
    pub const ALL: [CriterionId; 9] = [
        CriterionId::Heisenberg,
        CriterionId::Sr,
        CriterionId::LuoI,
        CriterionId::LuoU,
        CriterionId::Furuichi,
        CriterionId::ProposedPt,
        CriterionId::SrOnPt,
        CriterionId::Srpt,
        CriterionId::Ppt,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CriterionId::Heisenberg => "HEISENBERG",
            CriterionId::Sr => "SR",
            CriterionId::LuoI => "LUO_I",
            CriterionId::LuoU => "LUO_U",
            CriterionId::Furuichi => "FURUICHI",
            CriterionId::ProposedPt => "PROPOSED_PT",
            CriterionId::SrOnPt => "SR_ON_PT",
            CriterionId::Srpt => "SRPT",
            CriterionId::Ppt => "PPT",
        }
    }

    /// Name used on the command line.
    pub fn cli_name(self) -> &'static str {
        match self {
            CriterionId::Heisenberg => "heisenberg",
            CriterionId::Sr => "sr",
            CriterionId::LuoI => "luo-i",
            CriterionId::LuoU => "luo-u",
            CriterionId::Furuichi => "furuichi",
            CriterionId::ProposedPt => "proposed",
            CriterionId::SrOnPt => "sr-pt",
            CriterionId::Srpt => "srpt",
            CriterionId::Ppt => "ppt",
        }
    }
}

impl fmt::Display for CriterionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CriterionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let needle = s.trim();
        CriterionId::ALL
            .into_iter()
            .find(|c| c.cli_name() == needle || c.as_str().eq_ignore_ascii_case(needle))
            .ok_or_else(|| Error::parse(0, format!("unknown criterion {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Satisfied,
    Violated,
}

impl Verdict {
    pub fn is_violated(self) -> bool {
        self == Verdict::Violated
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Satisfied => "SATISFIED",
            Verdict::Violated => "VIOLATED",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Diagnostic {
    /// Both observables commute with the partially transposed state, so the
    /// skew terms vanish and a satisfied verdict carries no information.
    InconclusiveObservables,
    /// Largest disagreement between the state-side and observable-side SRPT routes.
    SrptRouteDeviation(f64),
    Note(&'static str),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriterionReport {
    pub criterion: CriterionId,
    /// Left-hand side; for `PROPOSED_PT` the branch value the verdict rests on.
    pub lhs: Complex64,
    pub rhs: f64,
    /// `Re(lhs) − rhs`; `-inf` when `PROPOSED_PT` has no real branch.
    pub margin: f64,
    pub verdict: Verdict,
    pub branch_values: Vec<Complex64>,
    pub min_pt_eigenvalue: Option<f64>,
    pub diagnostics: Vec<Diagnostic>,
}

impl CriterionReport {
    fn new(criterion: CriterionId, lhs: Complex64, rhs: f64, tol: f64) -> Self {
        let margin = lhs.re - rhs;
        Self {
            criterion,
            lhs,
            rhs,
            margin,
            verdict: verdict_from_margin(margin, tol),
            branch_values: Vec::new(),
            min_pt_eigenvalue: None,
            diagnostics: Vec::new(),
        }
    }

    pub fn is_violated(&self) -> bool {
        self.verdict.is_violated()
    }

    pub fn has_diagnostic(&self, d: &Diagnostic) -> bool {
        self.diagnostics.contains(d)
    }
}

fn verdict_from_margin(margin: f64, tol: f64) -> Verdict {
    if margin < -tol {
        Verdict::Violated
    } else {
        Verdict::Satisfied
    }
}

/// A Werner-state detection threshold quoted from the literature and not
/// computed by this crate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LiteratureThreshold {
    pub name: &'static str,
    pub expression: &'static str,
    pub werner_threshold: f64,
}

pub const LITERATURE_THRESHOLDS: [LiteratureThreshold; 3] = [
    LiteratureThreshold {
        name: "BELL_CHSH",
        expression: "1/sqrt(2)",
        werner_threshold: std::f64::consts::FRAC_1_SQRT_2,
    },
    LiteratureThreshold {
        name: "LOCAL_UNCERTAINTY",
        expression: "1/sqrt(3)",
        werner_threshold: 0.577_350_269_189_625_8,
    },
    LiteratureThreshold {
        name: "SRPT_LOCAL",
        expression: "1/2",
        werner_threshold: 0.5,
    },
];

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ComparisonRow {
    Computed(CriterionReport),
    /// Emitted as `NOT_COMPUTED`.
    Reference(LiteratureThreshold),
}

/// Evaluates criteria at a fixed verdict tolerance and partial-transpose side.
#[derive(Clone, Copy, Debug)]
pub struct Evaluator {
    pub tol: f64,
    pub subsystem: Subsystem,
}

impl Default for Evaluator {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            subsystem: Subsystem::B,
        }
    }
}

impl Evaluator {
    pub fn with_tol(tol: f64) -> Self {
        Self {
            tol,
            ..Self::default()
        }
    }

    fn check(rho: &DensityMatrix, a: &Observable, b: &Observable) -> Result<()> {
        for o in [a, b] {
            if o.dim() != rho.dim() {
                return Err(Error::DimensionMismatch {
                    expected: rho.dim(),
                    found: o.dim(),
                });
            }
        }
        Ok(())
    }

    fn pt(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        rho.partial_transpose(self.subsystem)
    }

    /// `V(A)V(B) ≥ ¼|⟨[A,B]⟩|²`.
    pub fn heisenberg(
        &self,
        rho: &DensityMatrix,
        a: &Observable,
        b: &Observable,
    ) -> Result<CriterionReport> {
        Self::check(rho, a, b)?;
        rho.require_valid()?;
        let m = rho.matrix();
        let lhs = variance_raw(m, a.matrix()) * variance_raw(m, b.matrix());
        Ok(CriterionReport::new(
            CriterionId::Heisenberg,
            lhs,
            commutator_term(m, a, b),
            self.tol,
        ))
    }

    /// `V(A)V(B) ≥ ¼|⟨[A,B]⟩|² + ¼|⟨{A₀,B₀}⟩|²` on `rho` as given.
    ///
    /// Accepts any unit-trace Hermitian matrix, including partial transposes.
    pub fn schrodinger_robertson(
        &self,
        rho: &DensityMatrix,
        a: &Observable,
        b: &Observable,
    ) -> Result<CriterionReport> {
        Self::check(rho, a, b)?;
        let (lhs, rhs) = sr_terms(rho.matrix(), a.matrix(), b.matrix());
        Ok(CriterionReport::new(CriterionId::Sr, lhs, rhs, self.tol))
    }

    /// Schrödinger–Robertson evaluated on `ρ^PT`.
    pub fn sr_on_pt(
        &self,
        rho: &DensityMatrix,
        a: &Observable,
        b: &Observable,
    ) -> Result<CriterionReport> {
        Self::check(rho, a, b)?;
        let pt = self.pt(rho)?;
        let mut report = self.schrodinger_robertson(&pt, a, b)?;
        report.criterion = CriterionId::SrOnPt;
        report.min_pt_eigenvalue = Some(pt.min_eigenvalue());
        Ok(report)
    }

    /// SRPT inequality: Schrödinger–Robertson with the partial transpose
    /// moved onto every operator whose mean appears.
    ///
    /// The verdict comes from the state-side route `SR(ρ^PT)`; the
    /// observable-side route `⟨X^PT⟩_ρ` is evaluated alongside and its
    /// deviation recorded. A deviation above [`SRPT_ROUTE_TOL`] is a
    /// numerical failure.
    pub fn srpt(
        &self,
        rho: &DensityMatrix,
        a: &Observable,
        b: &Observable,
    ) -> Result<CriterionReport> {
        Self::check(rho, a, b)?;
        rho.require_valid()?;
        let pt = self.pt(rho)?;
        let (lhs, rhs) = sr_terms(pt.matrix(), a.matrix(), b.matrix());
        let (lhs_obs, rhs_obs) = self.srpt_observable_route(rho, a.matrix(), b.matrix())?;
        let deviation = (lhs - lhs_obs).norm().max((rhs - rhs_obs).abs());
        let scale = lhs.norm().max(rhs.abs()).max(1.0);
        if deviation > SRPT_ROUTE_TOL * scale {
            return Err(Error::Numerical(format!(
                "SRPT routes disagree by {deviation:e}"
            )));
        }
        let mut report = CriterionReport::new(CriterionId::Srpt, lhs, rhs, self.tol);
        report.min_pt_eigenvalue = Some(pt.min_eigenvalue());
        report
            .diagnostics
            .push(Diagnostic::SrptRouteDeviation(deviation));
        Ok(report)
    }

    /// `(lhs, rhs)` of SRPT from expectations `⟨X^PT⟩_ρ` of transposed operators.
    pub fn srpt_observable_route(
        &self,
        rho: &DensityMatrix,
        a: &ComplexMatrix,
        b: &ComplexMatrix,
    ) -> Result<(Complex64, f64)> {
        let (da, db) = rho.dims();
        let m = rho.matrix();
        let mean_pt = |x: &ComplexMatrix| -> Result<Complex64> {
            Ok(expectation(
                m,
                &x.partial_transpose(da, db, self.subsystem)?,
            ))
        };
        let (ma, mb) = (mean_pt(a)?, mean_pt(b)?);
        let va = mean_pt(&(a * a))? - ma * ma;
        let vb = mean_pt(&(b * b))? - mb * mb;
        let comm = mean_pt(&a.commutator(b))?;
        let anti = mean_pt(&a.anticommutator(b))? - ma * mb * 2.0;
        let rhs = 0.25 * comm.norm_sqr() + 0.25 * anti.norm_sqr();
        Ok((va * vb, rhs))
    }

    /// `I(A)I(B) ≥ ¼|⟨[A,B]⟩|²`; not a valid uncertainty relation in general.
    pub fn luo_i(
        &self,
        rho: &DensityMatrix,
        a: &Observable,
        b: &Observable,
    ) -> Result<CriterionReport> {
        Self::check(rho, a, b)?;
        rho.require_valid()?;
        let (pa, pb, _) = profiles(rho.matrix(), a, b)?;
        let mut report = CriterionReport::new(
            CriterionId::LuoI,
            pa.skew_info * pb.skew_info,
            commutator_term(rho.matrix(), a, b),
            self.tol,
        );
        report.diagnostics.push(Diagnostic::Note(
            "skew-information Heisenberg form; fails whenever both skew terms vanish, so a violation does not indicate entanglement",
        ));
        Ok(report)
    }

    /// `U(A)U(B) ≥ ¼|⟨[A,B]⟩|²`.
    pub fn luo_u(
        &self,
        rho: &DensityMatrix,
        a: &Observable,
        b: &Observable,
    ) -> Result<CriterionReport> {
        Self::check(rho, a, b)?;
        rho.require_valid()?;
        let (pa, pb, _) = profiles(rho.matrix(), a, b)?;
        Ok(CriterionReport::new(
            CriterionId::LuoU,
            pa.u() * pb.u(),
            commutator_term(rho.matrix(), a, b),
            self.tol,
        ))
    }

    /// `U(A)U(B) ≥ |C_ρ(A,B)|²`.
    pub fn furuichi(
        &self,
        rho: &DensityMatrix,
        a: &Observable,
        b: &Observable,
    ) -> Result<CriterionReport> {
        Self::check(rho, a, b)?;
        rho.require_valid()?;
        let (pa, pb, corr) = profiles(rho.matrix(), a, b)?;
        Ok(CriterionReport::new(
            CriterionId::Furuichi,
            pa.u() * pb.u(),
            corr.norm_sqr(),
            self.tol,
        ))
    }

    /// `U(ρ^PT,A) U(ρ^PT,B) ≥ |C_{ρ^PT}(A,B)|²`; a violation certifies entanglement.
    ///
    /// On a non-positive `ρ^PT` the two U-quantities are complex and their
    /// product is defined only up to the sign of the square root. Both signs
    /// `±√(U²(A)U²(B))` are listed in `branch_values`; the inequality counts
    /// as satisfied only through a branch that is real within `tol` and
    /// clears the right-hand side.
    pub fn proposed_pt_criterion(
        &self,
        rho: &DensityMatrix,
        a: &Observable,
        b: &Observable,
    ) -> Result<CriterionReport> {
        Self::check(rho, a, b)?;
        let pt = self.pt(rho)?;
        let (pa, pb, corr) = profiles(pt.matrix(), a, b)?;
        let rhs = corr.norm_sqr();
        let w = (pa.u_squared * pb.u_squared).sqrt();
        let branch_values = vec![w, -w];

        let best = branch_values
            .iter()
            .filter(|z| z.im.abs() <= self.tol)
            .max_by(|x, y| x.re.total_cmp(&y.re))
            .copied();
        let (lhs, margin) = match best {
            Some(z) => (z, z.re - rhs),
            None => (w, f64::NEG_INFINITY),
        };

        let mut diagnostics = Vec::new();
        let commutes = |o: &Observable| pt.matrix().commutator(o.matrix()).max_abs() <= self.tol;
        if commutes(a) && commutes(b) {
            diagnostics.push(Diagnostic::InconclusiveObservables);
        }
        Ok(CriterionReport {
            criterion: CriterionId::ProposedPt,
            lhs,
            rhs,
            margin,
            verdict: verdict_from_margin(margin, self.tol),
            branch_values,
            min_pt_eigenvalue: Some(pt.min_eigenvalue()),
            diagnostics,
        })
    }

    /// Peres test: violated (entangled) when `ρ^PT` has an eigenvalue below `−tol`.
    pub fn ppt_check(&self, rho: &DensityMatrix) -> Result<CriterionReport> {
        rho.require_valid()?;
        let pt = self.pt(rho)?;
        let min = pt.spectrum()?.min();
        let mut report =
            CriterionReport::new(CriterionId::Ppt, Complex64::new(min, 0.0), 0.0, self.tol);
        report.min_pt_eigenvalue = Some(min);
        Ok(report)
    }

    pub fn evaluate(
        &self,
        id: CriterionId,
        rho: &DensityMatrix,
        a: &Observable,
        b: &Observable,
    ) -> Result<CriterionReport> {
        match id {
            CriterionId::Heisenberg => self.heisenberg(rho, a, b),
            CriterionId::Sr => self.schrodinger_robertson(rho, a, b),
            CriterionId::LuoI => self.luo_i(rho, a, b),
            CriterionId::LuoU => self.luo_u(rho, a, b),
            CriterionId::Furuichi => self.furuichi(rho, a, b),
            CriterionId::ProposedPt => self.proposed_pt_criterion(rho, a, b),
            CriterionId::SrOnPt => self.sr_on_pt(rho, a, b),
            CriterionId::Srpt => self.srpt(rho, a, b),
            CriterionId::Ppt => self.ppt_check(rho),
        }
    }

    /// Every computed criterion in [`CriterionId`] order, then the literature
    /// reference rows.
    pub fn evaluate_all(
        &self,
        rho: &DensityMatrix,
        a: &Observable,
        b: &Observable,
    ) -> Result<Vec<ComparisonRow>> {
        let mut rows = CriterionId::ALL
            .into_iter()
            .map(|id| self.evaluate(id, rho, a, b).map(ComparisonRow::Computed))
            .collect::<Result<Vec<_>>>()?;
        rows.extend(
            LITERATURE_THRESHOLDS
                .iter()
                .copied()
                .map(ComparisonRow::Reference),
        );
        Ok(rows)
    }
}

fn commutator_term(m: &ComplexMatrix, a: &Observable, b: &Observable) -> f64 {
    0.25 * expectation(m, &a.matrix().commutator(b.matrix())).norm_sqr()
}

fn sr_terms(m: &ComplexMatrix, a: &ComplexMatrix, b: &ComplexMatrix) -> (Complex64, f64) {
    let lhs = variance_raw(m, a) * variance_raw(m, b);
    let a0 = fluctuation_raw(m, a);
    let b0 = fluctuation_raw(m, b);
    let comm = expectation(m, &a.commutator(b));
    let anti = expectation(m, &a0.anticommutator(&b0));
    (lhs, 0.25 * comm.norm_sqr() + 0.25 * anti.norm_sqr())
}

fn profiles(
    m: &ComplexMatrix,
    a: &Observable,
    b: &Observable,
) -> Result<(UncertaintyProfile, UncertaintyProfile, Complex64)> {
    let sqrt = principal_sqrt(m)?;
    Ok((
        UncertaintyProfile::with_sqrt(m, &sqrt, a.matrix()),
        UncertaintyProfile::with_sqrt(m, &sqrt, b.matrix()),
        wy_correlation_raw(m, &sqrt, a.matrix(), b.matrix()),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::random;
    use crate::observable::parse_observable;
    use crate::states;

    fn obs(s: &str) -> Observable {
        parse_observable(s).unwrap()
    }

    fn ev() -> Evaluator {
        Evaluator::default()
    }

    fn run(id: CriterionId, rho: &DensityMatrix, a: &str, b: &str) -> CriterionReport {
        ev().evaluate(id, rho, &obs(a), &obs(b)).unwrap()
    }

    fn max_mixed() -> DensityMatrix {
        states::max_mixed(4).unwrap()
    }

    fn singlet() -> DensityMatrix {
        states::bell(states::BellKind::PsiMinus)
    }

    #[test]
    fn heisenberg_examples() {
        let r = run(CriterionId::Heisenberg, &singlet(), "ZI", "XI");
        assert_eq!(r.verdict, Verdict::Satisfied);
        assert!(r.rhs.abs() < 1e-12 && (r.lhs.re - 1.0).abs() < 1e-12);
        let r = run(CriterionId::Heisenberg, &max_mixed(), "XY", "ZX");
        assert_eq!(r.verdict, Verdict::Satisfied);
        assert!(r.rhs.abs() < 1e-12);
        let rho = random::random_density(2, 2, 3).unwrap();
        let r = run(CriterionId::Heisenberg, &rho, "XZ", "XZ");
        assert!(r.rhs.abs() < 1e-12 && r.verdict == Verdict::Satisfied);
    }

    #[test]
    fn state_level_criteria_reject_invalid_states() {
        let pt = states::werner(0.8)
            .unwrap()
            .partial_transpose(Subsystem::B)
            .unwrap();
        for id in [
            CriterionId::Heisenberg,
            CriterionId::LuoI,
            CriterionId::LuoU,
            CriterionId::Furuichi,
            CriterionId::Srpt,
            CriterionId::Ppt,
        ] {
            assert!(
                matches!(
                    ev().evaluate(id, &pt, &obs("ZI"), &obs("IZ")),
                    Err(Error::InvalidState { .. })
                ),
                "{id}"
            );
        }
        // SR takes partially transposed matrices.
        assert!(ev()
            .schrodinger_robertson(&pt, &obs("ZI"), &obs("IZ"))
            .is_ok());
    }

    #[test]
    fn sr_on_werner_pt_local_pair_always_satisfied() {
        for k in 0..=100 {
            let p = k as f64 / 100.0;
            let r = run(CriterionId::SrOnPt, &states::werner(p).unwrap(), "ZI", "IZ");
            assert_eq!(r.verdict, Verdict::Satisfied, "p = {p}");
        }
    }

    #[test]
    fn sr_on_pt_pure_nonmax_violated() {
        // lhs = 0 because ZZ has zero variance on ρ^PT; rhs = 4 (c0 c1* + c0* c1)².
        for c0 in [0.3, 0.6, std::f64::consts::FRAC_1_SQRT_2] {
            let c1 = (1.0f64 - c0 * c0).sqrt();
            let rho =
                states::pure_nonmax(Complex64::new(c0, 0.0), Complex64::new(c1, 0.0)).unwrap();
            let r = run(CriterionId::SrOnPt, &rho, "ZZ", "XX");
            assert!(r.lhs.norm() < 1e-12);
            let x = 2.0 * c0 * c1;
            assert!((r.rhs - 4.0 * x * x).abs() < 1e-12, "{}", r.rhs);
            assert_eq!(r.verdict, Verdict::Violated);
        }
    }

    #[test]
    fn sr_on_ghz_w_pt_local_pair_satisfied() {
        for k in 0..=20 {
            let rho = states::ghz_w_mixture(k as f64 / 20.0).unwrap();
            assert_eq!(
                run(CriterionId::SrOnPt, &rho, "ZI", "IZ").verdict,
                Verdict::Satisfied
            );
        }
    }

    #[test]
    fn srpt_examples() {
        let r = run(CriterionId::Srpt, &states::werner(0.6).unwrap(), "XX", "YY");
        assert_eq!(r.verdict, Verdict::Violated);
        let r = run(
            CriterionId::Srpt,
            &states::werner(0.45).unwrap(),
            "XX",
            "YY",
        );
        assert_eq!(r.verdict, Verdict::Satisfied);
        let r = run(CriterionId::Srpt, &states::werner(0.9).unwrap(), "ZI", "IZ");
        assert_eq!(r.verdict, Verdict::Satisfied);
        let r = run(CriterionId::Srpt, &singlet(), "ZZ", "XX");
        assert_eq!(r.verdict, Verdict::Violated);
    }

    // Closed form on Werner states with XX, YY: lhs = (1 − p²)², rhs = p²(1 + p)².
    #[test]
    fn srpt_werner_closed_form() {
        for k in 0..=20 {
            let p = k as f64 / 20.0;
            let r = run(CriterionId::Srpt, &states::werner(p).unwrap(), "XX", "YY");
            assert!((r.lhs.re - (1.0 - p * p).powi(2)).abs() < 1e-12);
            assert!((r.rhs - p * p * (1.0 + p).powi(2)).abs() < 1e-12);
        }
    }

    #[test]
    fn luo_examples() {
        for id in [CriterionId::LuoI, CriterionId::LuoU] {
            let r = run(id, &max_mixed(), "XI", "YI");
            assert!(r.lhs.norm() < 1e-12 && r.rhs.abs() < 1e-12);
            assert_eq!(r.verdict, Verdict::Satisfied);
        }
        let pure = random::random_pure(2, 2, 12).unwrap();
        let h = run(CriterionId::Heisenberg, &pure, "XZ", "YI");
        let u = run(CriterionId::LuoU, &pure, "XZ", "YI");
        assert!((h.lhs - u.lhs).norm() < 1e-9 && (h.rhs - u.rhs).abs() < 1e-12);
        assert_eq!(h.verdict, u.verdict);
        assert!(matches!(
            run(CriterionId::LuoI, &max_mixed(), "XI", "YI").diagnostics[..],
            [Diagnostic::Note(_)]
        ));
    }

    #[test]
    fn furuichi_examples() {
        let r = run(CriterionId::Furuichi, &max_mixed(), "ZI", "IZ");
        assert!(r.lhs.norm() < 1e-12 && r.rhs < 1e-12);
        let r = run(CriterionId::Furuichi, &singlet(), "ZI", "IZ");
        assert!((r.lhs.re - 1.0).abs() < 1e-12 && (r.rhs - 1.0).abs() < 1e-12);
        assert!(r.margin.abs() < 1e-12);
        assert_eq!(r.verdict, Verdict::Satisfied);
    }

    #[test]
    fn proposed_on_werner() {
        let w = states::werner(0.5).unwrap();
        let r = run(CriterionId::ProposedPt, &w, "XY", "YX");
        assert_eq!(r.verdict, Verdict::Violated);
        assert_eq!(r.margin, f64::NEG_INFINITY);
        assert_eq!(r.branch_values.len(), 2);
        assert!(r.branch_values.iter().all(|z| z.im.abs() > 1e-3));
        assert_eq!(
            run(CriterionId::ProposedPt, &w, "ZI", "IZ").verdict,
            Verdict::Violated
        );

        let w = states::werner(0.2).unwrap();
        for (a, b) in [("XY", "YX"), ("ZI", "IZ")] {
            let r = run(CriterionId::ProposedPt, &w, a, b);
            assert_eq!(r.verdict, Verdict::Satisfied, "{a},{b}");
            assert!(r.margin >= -1e-9);
        }
    }

    // At p = 1 the single U² is 1 − 2i, so the branch pair is ±(1 − 2i)² square-rooted.
    #[test]
    fn proposed_branch_values_at_p1() {
        let r = run(
            CriterionId::ProposedPt,
            &states::werner(1.0).unwrap(),
            "ZI",
            "IZ",
        );
        let u2 = Complex64::new(1.0, -2.0);
        let w = (u2 * u2).sqrt();
        assert!((r.branch_values[0] - w).norm() < 1e-12);
        assert!((r.branch_values[1] + w).norm() < 1e-12);
        assert!((r.rhs - 1.0).abs() < 1e-12); // |−i|²
    }

    #[test]
    fn proposed_commuting_pair_is_flagged() {
        for p in [0.2, 0.5, 0.9] {
            let r = run(
                CriterionId::ProposedPt,
                &states::werner(p).unwrap(),
                "ZZ",
                "XX",
            );
            assert_eq!(r.verdict, Verdict::Satisfied);
            assert!(r.lhs.norm() < 1e-12 && r.rhs < 1e-12);
            assert!(r.has_diagnostic(&Diagnostic::InconclusiveObservables));
        }
        let r = run(
            CriterionId::ProposedPt,
            &states::werner(0.5).unwrap(),
            "XY",
            "YX",
        );
        assert!(!r.has_diagnostic(&Diagnostic::InconclusiveObservables));
    }

    #[test]
    fn ppt_examples() {
        let r = ev().ppt_check(&states::werner(0.5).unwrap()).unwrap();
        assert_eq!(r.verdict, Verdict::Violated);
        assert!((r.min_pt_eigenvalue.unwrap() + 0.125).abs() < 1e-12);
        let r = ev()
            .ppt_check(&random::random_separable(2, 2, 4, 1).unwrap())
            .unwrap();
        assert_eq!(r.verdict, Verdict::Satisfied);
        let r = ev()
            .ppt_check(&states::ghz_w_mixture(0.8).unwrap())
            .unwrap();
        assert_eq!(r.verdict, Verdict::Violated);
    }

    #[test]
    fn evaluate_all_rows() {
        let rows = ev()
            .evaluate_all(&states::werner(0.4).unwrap(), &obs("XY"), &obs("YX"))
            .unwrap();
        assert_eq!(
            rows.len(),
            CriterionId::ALL.len() + LITERATURE_THRESHOLDS.len()
        );
        let verdict = |id| {
            rows.iter()
                .find_map(|r| match r {
                    ComparisonRow::Computed(rep) if rep.criterion == id => Some(rep.verdict),
                    _ => None,
                })
                .unwrap()
        };
        assert_eq!(verdict(CriterionId::ProposedPt), Verdict::Violated);
        assert_eq!(verdict(CriterionId::Ppt), Verdict::Violated);
        let srpt = ev()
            .srpt(&states::werner(0.4).unwrap(), &obs("XX"), &obs("YY"))
            .unwrap();
        assert_eq!(srpt.verdict, Verdict::Satisfied);

        let rows = ev()
            .evaluate_all(&states::werner(0.25).unwrap(), &obs("XY"), &obs("YX"))
            .unwrap();
        for row in &rows {
            if let ComparisonRow::Computed(rep) = row {
                assert_eq!(rep.verdict, Verdict::Satisfied, "{}", rep.criterion);
            }
        }

        let rows = ev()
            .evaluate_all(
                &states::ghz_w_mixture(0.75).unwrap(),
                &obs("ZI"),
                &obs("IZ"),
            )
            .unwrap();
        let get = |id| {
            rows.iter()
                .find_map(|r| match r {
                    ComparisonRow::Computed(rep) if rep.criterion == id => Some(rep.verdict),
                    _ => None,
                })
                .unwrap()
        };
        assert_eq!(get(CriterionId::ProposedPt), Verdict::Violated);
        assert_eq!(get(CriterionId::SrOnPt), Verdict::Satisfied);
    }

    #[test]
    fn criterion_names_roundtrip() {
        for id in CriterionId::ALL {
            assert_eq!(id.cli_name().parse::<CriterionId>().unwrap(), id);
            assert_eq!(id.as_str().parse::<CriterionId>().unwrap(), id);
        }
        assert!("bogus".parse::<CriterionId>().is_err());
    }
}
