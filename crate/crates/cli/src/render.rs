//! Table, JSON and CSV renderings of reports, sweeps and thresholds.

use std::io::Write;

use serde_json::{json, Value};
use wywitness::criteria::{
    ComparisonRow, CriterionReport, Diagnostic, LiteratureThreshold, LITERATURE_THRESHOLDS,
};
use wywitness::scan::{csv_number, Sweep, SweepRow, ThresholdResult, ThresholdSearch};
use wywitness::{Complex64, Result};

#[derive(Clone, Copy)]
pub enum Format {
    Csv,
    Json,
    Table,
}

/// What was evaluated, shown above the results.
pub struct Subject<'a> {
    pub state: &'a str,
    pub observables: &'a str,
    pub tol: f64,
    pub min_pt_eigenvalue: f64,
    pub valid_state: bool,
}

fn complex(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{:.9}{sign}{:.9}i", z.re, z.im.abs())
}

fn diagnostic(d: &Diagnostic) -> String {
    match d {
        Diagnostic::InconclusiveObservables => {
            "INCONCLUSIVE_OBSERVABLES: both observables commute with the partial transpose".into()
        }
        Diagnostic::SrptRouteDeviation(dev) => format!("SRPT route deviation {dev:.3e}"),
        Diagnostic::Note(text) => (*text).into(),
    }
}

fn reference_json(t: &LiteratureThreshold) -> Value {
    json!({
        "name": t.name,
        "werner_threshold": t.werner_threshold,
        "expression": t.expression,
        "status": "NOT_COMPUTED",
    })
}

fn report_json(r: &CriterionReport) -> Value {
    // Margins can be -inf, which JSON cannot carry as a number.
    let margin = if r.margin.is_finite() {
        json!(r.margin)
    } else {
        json!(r.margin.to_string())
    };
    json!({
        "criterion": r.criterion.as_str(),
        "verdict": r.verdict.as_str(),
        "lhs": [r.lhs.re, r.lhs.im],
        "rhs": r.rhs,
        "margin": margin,
        "branch_values": r.branch_values.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
        "min_pt_eigenvalue": r.min_pt_eigenvalue,
        "diagnostics": r.diagnostics.iter().map(diagnostic).collect::<Vec<_>>(),
    })
}

pub fn reports(
    subject: &Subject,
    rows: &[ComparisonRow],
    format: Format,
    out: &mut impl Write,
) -> Result<()> {
    match format {
        Format::Json => {
            let results: Vec<Value> = rows
                .iter()
                .map(|row| match row {
                    ComparisonRow::Computed(r) => report_json(r),
                    ComparisonRow::Reference(t) => reference_json(t),
                })
                .collect();
            let doc = json!({
                "state": subject.state,
                "observables": subject.observables,
                "tol": subject.tol,
                "valid_state": subject.valid_state,
                "min_pt_eigenvalue": subject.min_pt_eigenvalue,
                "results": results,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
        Format::Csv => {
            writeln!(
                out,
                "# state={} tol={}",
                subject.state,
                csv_number(subject.tol)
            )?;
            for row in rows {
                if let ComparisonRow::Reference(t) = row {
                    writeln!(
                        out,
                        "# reference,{},p>{}={},NOT_COMPUTED",
                        t.name, t.expression, t.werner_threshold
                    )?;
                }
            }
            writeln!(
                out,
                "criterion,observables,lhs_re,lhs_im,rhs,margin,verdict,min_pt_eig"
            )?;
            for row in rows {
                if let ComparisonRow::Computed(r) = row {
                    writeln!(
                        out,
                        "{},\"{}\",{},{},{},{},{},{}",
                        r.criterion,
                        subject.observables,
                        csv_number(r.lhs.re),
                        csv_number(r.lhs.im),
                        csv_number(r.rhs),
                        csv_number(r.margin),
                        r.verdict,
                        csv_number(subject.min_pt_eigenvalue)
                    )?;
                }
            }
        }
        Format::Table => {
            writeln!(out, "state        {}", subject.state)?;
            writeln!(out, "observables  {}", subject.observables)?;
            writeln!(out, "tolerance    {:e}", subject.tol)?;
            let positivity = if subject.valid_state {
                ""
            } else {
                " (state is not positive semidefinite)"
            };
            writeln!(
                out,
                "min PT eig   {:.9}{positivity}",
                subject.min_pt_eigenvalue
            )?;
            writeln!(out)?;
            writeln!(
                out,
                "{:<18} {:<10} {:>26} {:>14} {:>14}",
                "criterion", "verdict", "lhs", "rhs", "margin"
            )?;
            for row in rows {
                match row {
                    ComparisonRow::Computed(r) => {
                        writeln!(
                            out,
                            "{:<18} {:<10} {:>26} {:>14.9} {:>14.9}",
                            r.criterion.as_str(),
                            r.verdict.as_str(),
                            complex(r.lhs),
                            r.rhs,
                            r.margin
                        )?;
                        if !r.branch_values.is_empty() {
                            let b: Vec<String> =
                                r.branch_values.iter().map(|&z| complex(z)).collect();
                            writeln!(out, "{:<18}   branches: {}", "", b.join(", "))?;
                        }
                        for d in &r.diagnostics {
                            writeln!(out, "{:<18}   {}", "", diagnostic(d))?;
                        }
                    }
                    ComparisonRow::Reference(t) => writeln!(
                        out,
                        "{:<18} {:<10} Werner p > {} = {:.6} (literature value)",
                        t.name, "NOT_COMPUTED", t.expression, t.werner_threshold
                    )?,
                }
            }
        }
    }
    Ok(())
}

pub fn sweep(
    sweep: &Sweep,
    rows: &[SweepRow],
    annotate: bool,
    format: Format,
    out: &mut impl Write,
) -> Result<()> {
    match format {
        Format::Csv => sweep.write_csv(rows, annotate, out),
        Format::Json => {
            let data: Vec<Value> = rows
                .iter()
                .flat_map(|row| {
                    row.entries.iter().map(move |e| {
                        json!({
                            "param": row.param_value,
                            "criterion": e.criterion.as_str(),
                            "observables": e.observables,
                            "lhs": [e.lhs.re, e.lhs.im],
                            "rhs": e.rhs,
                            "margin": if e.margin.is_finite() { json!(e.margin) } else { json!(e.margin.to_string()) },
                            "verdict": e.verdict.as_str(),
                            "min_pt_eig": row.min_pt_eigenvalue,
                        })
                    })
                })
                .collect();
            let mut doc = json!({
                "state": sweep.spec.to_string(),
                "param": sweep.param,
                "range": sweep.grid.to_string(),
                "tol": sweep.evaluator.tol,
                "rows": data,
            });
            if annotate {
                doc["references"] = LITERATURE_THRESHOLDS.iter().map(reference_json).collect();
            }
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
            Ok(())
        }
        Format::Table => {
            writeln!(
                out,
                "state {}  param {}  range {}",
                sweep.spec, sweep.param, sweep.grid
            )?;
            writeln!(
                out,
                "{:>10} {:<12} {:<8} {:<10} {:>14} {:>14}",
                sweep.param, "criterion", "obs", "verdict", "margin", "min PT eig"
            )?;
            for row in rows {
                for e in &row.entries {
                    writeln!(
                        out,
                        "{:>10} {:<12} {:<8} {:<10} {:>14.9} {:>14.9}",
                        row.param_value,
                        e.criterion.as_str(),
                        e.observables,
                        e.verdict.as_str(),
                        e.margin,
                        row.min_pt_eigenvalue
                    )?;
                }
            }
            if annotate {
                for t in LITERATURE_THRESHOLDS {
                    writeln!(
                        out,
                        "reference {} p > {} = {:.6} NOT_COMPUTED",
                        t.name, t.expression, t.werner_threshold
                    )?;
                }
            }
            Ok(())
        }
    }
}

pub fn threshold(
    search: &ThresholdSearch,
    observables: &str,
    result: &ThresholdResult,
    format: Format,
    out: &mut impl Write,
) -> Result<()> {
    match format {
        Format::Json => {
            let flips: Vec<Value> = result
                .flips
                .iter()
                .map(|f| {
                    json!({
                        "threshold": f.threshold,
                        "bracket": [f.bracket.0, f.bracket.1],
                        "below": f.below.as_str(),
                    })
                })
                .collect();
            let doc = json!({
                "state": search.spec.to_string(),
                "param": search.param,
                "criterion": search.criterion.as_str(),
                "observables": observables,
                "threshold": result.threshold,
                "non_monotonic": result.non_monotonic,
                "flips": flips,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
        Format::Csv => {
            writeln!(out, "threshold,bracket_lo,bracket_hi,below")?;
            for f in &result.flips {
                writeln!(
                    out,
                    "{},{},{},{}",
                    csv_number(f.threshold),
                    csv_number(f.bracket.0),
                    csv_number(f.bracket.1),
                    f.below
                )?;
            }
        }
        Format::Table => {
            writeln!(out, "{:.12}", result.threshold)?;
            for f in &result.flips {
                writeln!(
                    out,
                    "  {} {} on {}: {} below {:.12}, bracket [{:.12}, {:.12}]",
                    search.criterion,
                    observables,
                    search.param,
                    f.below,
                    f.threshold,
                    f.bracket.0,
                    f.bracket.1
                )?;
            }
        }
    }
    Ok(())
}
