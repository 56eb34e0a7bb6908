//! Parameter sweeps, verdict-threshold bisection and the sweep CSV format.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use crate::criteria::{CriterionId, CriterionReport, Evaluator, Verdict, LITERATURE_THRESHOLDS};
use crate::error::{Error, Result};
use crate::matcore::DensityMatrix;
use crate::observable::{parse_observable_pair, Observable};
use crate::states::StateSpec;

/// Column header of the sweep CSV.
pub const CSV_HEADER: &str =
    "param,criterion,observables,lhs_re,lhs_im,rhs,margin,verdict,min_pt_eig";

/// Default bracket width for threshold bisection.
pub const DEFAULT_BRACKET_TOL: f64 = 1e-9;

/// Grid values are rounded to this many decimals so that `0.1 * 3` prints as `0.3`.
const GRID_DECIMALS: f64 = 1e12;

/// Shortest text that parses back to the same `f64`, with an exponent for very
/// small or large magnitudes (`0.25`, `1`, `4.4e-16`, `-inf`).
pub fn csv_number(x: f64) -> String {
    let s = format!("{x:?}");
    match s.strip_suffix(".0") {
        Some(int) => int.to_string(),
        None => s,
    }
}

/// Observable pair with the label it was parsed from (`"XY,YX"`).
#[derive(Clone, Debug)]
pub struct ObservablePair {
    pub label: String,
    pub a: Observable,
    pub b: Observable,
}

impl FromStr for ObservablePair {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = parse_observable_pair(s)?;
        let label = format!("{},{}", a.label().unwrap_or("?"), b.label().unwrap_or("?"));
        Ok(Self { label, a, b })
    }
}

/// Evenly spaced parameter values written `lo:hi:step`; `hi` is included when it
/// lies on the grid.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl Grid {
    pub fn new(lo: f64, hi: f64, step: f64) -> Result<Self> {
        let finite = lo.is_finite() && hi.is_finite() && step.is_finite();
        if !finite || lo >= hi || step <= 0.0 {
            return Err(Error::parse(
                0,
                format!("invalid range {lo}:{hi}:{step} (need lo < hi and step > 0)"),
            ));
        }
        Ok(Self { lo, hi, step })
    }

    pub fn points(&self) -> Vec<f64> {
        let n = ((self.hi - self.lo) / self.step + 1e-9).floor() as usize;
        (0..=n)
            .map(|k| {
                let x = self.lo + k as f64 * self.step;
                ((x * GRID_DECIMALS).round() / GRID_DECIMALS).min(self.hi)
            })
            .collect()
    }
}

impl FromStr for Grid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::parse(0, format!("expected lo:hi:step, got {s:?}")));
        }
        let mut vals = [0.0; 3];
        let mut offset = 0;
        for (slot, part) in vals.iter_mut().zip(&parts) {
            *slot = part
                .trim()
                .parse()
                .map_err(|_| Error::parse(offset, format!("{part:?} is not a number")))?;
            offset += part.len() + 1;
        }
        Grid::new(vals[0], vals[1], vals[2])
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.lo, self.hi, self.step)
    }
}

/// One criterion evaluated at one grid point.
#[derive(Clone, Debug, Serialize)]
pub struct SweepEntry {
    pub criterion: CriterionId,
    pub observables: String,
    pub lhs: Complex64,
    pub rhs: f64,
    pub margin: f64,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub param_value: f64,
    pub min_pt_eigenvalue: f64,
    pub entries: Vec<SweepEntry>,
}

#[derive(Clone, Debug)]
pub struct Sweep {
    pub spec: StateSpec,
    pub param: String,
    pub grid: Grid,
    pub criteria: Vec<CriterionId>,
    pub observables: Vec<ObservablePair>,
    pub evaluator: Evaluator,
}

impl Sweep {
    fn state_at(&self, value: f64) -> Result<DensityMatrix> {
        let mut spec = self.spec.clone();
        spec.set_real(&self.param, value);
        spec.build()
    }

    fn row_at(&self, value: f64) -> Result<SweepRow> {
        let rho = self.state_at(value)?;
        let min_pt = rho
            .partial_transpose(self.evaluator.subsystem)?
            .min_eigenvalue();
        let mut entries = Vec::with_capacity(self.criteria.len() * self.observables.len());
        for &criterion in &self.criteria {
            for pair in &self.observables {
                let r = self.evaluator.evaluate(criterion, &rho, &pair.a, &pair.b)?;
                entries.push(SweepEntry {
                    criterion,
                    observables: pair.label.clone(),
                    lhs: r.lhs,
                    rhs: r.rhs,
                    margin: r.margin,
                    verdict: r.verdict,
                });
            }
        }
        Ok(SweepRow {
            param_value: value,
            min_pt_eigenvalue: min_pt,
            entries,
        })
    }

    /// Rows in ascending parameter order; criteria in [`CriterionId`] order
    /// within a row, then observable pairs in the order given.
    pub fn run(&self) -> Result<Vec<SweepRow>> {
        let mut sorted = self.clone();
        sorted.criteria.sort();
        sorted.criteria.dedup();
        let points = self.grid.points();
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            points.par_iter().map(|&v| sorted.row_at(v)).collect()
        }
        #[cfg(not(feature = "parallel"))]
        {
            points.iter().map(|&v| sorted.row_at(v)).collect()
        }
    }

    /// Writes the CSV: `#` comment lines, the header, then one line per entry.
    pub fn write_csv(&self, rows: &[SweepRow], annotate: bool, out: &mut impl Write) -> Result<()> {
        writeln!(out, "# wywitness sweep")?;
        writeln!(
            out,
            "# state={} param={} range={} tol={}",
            self.spec,
            self.param,
            self.grid,
            csv_number(self.evaluator.tol)
        )?;
        if annotate {
            for t in LITERATURE_THRESHOLDS {
                writeln!(
                    out,
                    "# reference,{},p>{}={},NOT_COMPUTED",
                    t.name, t.expression, t.werner_threshold
                )?;
            }
        }
        writeln!(out, "{CSV_HEADER}")?;
        for row in rows {
            for e in &row.entries {
                writeln!(
                    out,
                    "{},{},\"{}\",{},{},{},{},{},{}",
                    csv_number(row.param_value),
                    e.criterion,
                    e.observables,
                    csv_number(e.lhs.re),
                    csv_number(e.lhs.im),
                    csv_number(e.rhs),
                    csv_number(e.margin),
                    e.verdict,
                    csv_number(row.min_pt_eigenvalue)
                )?;
            }
        }
        Ok(())
    }
}

/// Verdict flip located by bisection: the verdict equals `below` on the low
/// side of `threshold` and differs above it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Flip {
    pub threshold: f64,
    pub bracket: (f64, f64),
    pub below: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct ThresholdResult {
    /// First flip above `lo`.
    pub threshold: f64,
    pub flips: Vec<Flip>,
    /// More than one flip was found by the prescan.
    pub non_monotonic: bool,
}

#[derive(Clone, Debug)]
pub struct ThresholdSearch {
    pub spec: StateSpec,
    pub param: String,
    pub lo: f64,
    pub hi: f64,
    pub criterion: CriterionId,
    pub a: Observable,
    pub b: Observable,
    pub evaluator: Evaluator,
    /// Bisection stops once the bracket is no wider than this.
    pub bracket_tol: f64,
    /// Number of uniform prescan intervals; 0 checks only the endpoints.
    pub prescan: usize,
}

impl ThresholdSearch {
    pub fn verdict_at(&self, value: f64) -> Result<Verdict> {
        let mut spec = self.spec.clone();
        spec.set_real(&self.param, value);
        let rho = spec.build()?;
        Ok(self.report(&rho)?.verdict)
    }

    fn report(&self, rho: &DensityMatrix) -> Result<CriterionReport> {
        self.evaluator
            .evaluate(self.criterion, rho, &self.a, &self.b)
    }

    fn bisect(&self, mut lo: f64, mut hi: f64, below: Verdict) -> Result<Flip> {
        // 200 halvings exhaust f64 resolution on any bracket.
        for _ in 0..200 {
            if hi - lo <= self.bracket_tol {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.verdict_at(mid)? == below {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(Flip {
            threshold: 0.5 * (lo + hi),
            bracket: (lo, hi),
            below,
        })
    }

    /// Bisects on the boolean verdict (not the margin, which is a sentinel
    /// when the partial-transpose criterion has no real branch).
    pub fn run(&self) -> Result<ThresholdResult> {
        if self.lo.is_nan()
            || self.hi.is_nan()
            || self.lo >= self.hi
            || self.bracket_tol.is_nan()
            || self.bracket_tol <= 0.0
        {
            return Err(Error::parse(
                0,
                format!("invalid bracket [{}, {}]", self.lo, self.hi),
            ));
        }
        let v_lo = self.verdict_at(self.lo)?;
        let v_hi = self.verdict_at(self.hi)?;
        if v_lo == v_hi {
            return Err(Error::NoSignChange {
                lo: self.lo,
                hi: self.hi,
            });
        }
        let n = self.prescan.max(1);
        let xs: Vec<f64> = (0..=n)
            .map(|k| self.lo + (self.hi - self.lo) * k as f64 / n as f64)
            .collect();
        let mut verdicts = Vec::with_capacity(xs.len());
        for (k, &x) in xs.iter().enumerate() {
            verdicts.push(match k {
                0 => v_lo,
                _ if k == n => v_hi,
                _ => self.verdict_at(x)?,
            });
        }
        let mut flips = Vec::new();
        for k in 0..n {
            if verdicts[k] != verdicts[k + 1] {
                flips.push(self.bisect(xs[k], xs[k + 1], verdicts[k])?);
            }
        }
        Ok(ThresholdResult {
            threshold: flips[0].threshold,
            non_monotonic: flips.len() > 1,
            flips,
        })
    }
}
