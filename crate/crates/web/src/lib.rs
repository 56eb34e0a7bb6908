//! Browser bindings: every export takes plain strings and returns JSON text.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;
use wywitness::criteria::{ComparisonRow, CriterionId, Evaluator};
use wywitness::scan::{Grid, ObservablePair, Sweep, ThresholdSearch, DEFAULT_BRACKET_TOL};
use wywitness::states::StateSpec;
use wywitness::Complex64;

type Outcome = Result<String, String>;

fn pair_for(spec: &StateSpec, obs: &str) -> Result<ObservablePair, String> {
    let text = if obs.trim().is_empty() {
        let (a, b) = spec.family.default_observables();
        format!("{a},{b}")
    } else {
        obs.to_string()
    };
    text.parse().map_err(|e: wywitness::Error| e.to_string())
}

fn parse_criteria(text: &str) -> Result<Vec<CriterionId>, String> {
    if text.trim() == "all" {
        return Ok(CriterionId::ALL.to_vec());
    }
    text.split(',')
        .map(|s| s.parse().map_err(|e: wywitness::Error| e.to_string()))
        .collect()
}

fn finite_or_null(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

fn complex(z: Complex64) -> Value {
    json!([z.re, z.im])
}

/// Every criterion on one state.
pub fn evaluate(state: &str, obs: &str) -> Outcome {
    let spec: StateSpec = state.parse().map_err(|e: wywitness::Error| e.to_string())?;
    let rho = spec.build().map_err(|e| e.to_string())?;
    let pair = pair_for(&spec, obs)?;
    let ev = Evaluator::default();
    let rows = ev
        .evaluate_all(&rho, &pair.a, &pair.b)
        .map_err(|e| e.to_string())?;
    let rows: Vec<Value> = rows
        .iter()
        .map(|row| match row {
            ComparisonRow::Computed(r) => json!({
                "criterion": r.criterion.as_str(),
                "verdict": r.verdict.as_str(),
                "lhs": complex(r.lhs),
                "rhs": r.rhs,
                "margin": finite_or_null(r.margin),
                "branches": r.branch_values.iter().copied().map(complex).collect::<Vec<_>>(),
            }),
            ComparisonRow::Reference(t) => json!({
                "criterion": t.name,
                "verdict": "NOT_COMPUTED",
                "expression": t.expression,
                "werner_threshold": t.werner_threshold,
            }),
        })
        .collect();
    let min_pt = rho
        .partial_transpose(ev.subsystem)
        .map_err(|e| e.to_string())?
        .min_eigenvalue();
    Ok(json!({
        "state": spec.to_string(),
        "observables": pair.label,
        "min_pt_eigenvalue": min_pt,
        "rows": rows,
    })
    .to_string())
}

/// Margins of the chosen criteria over `lo:hi:step` of the family's default parameter.
pub fn sweep(state: &str, range: &str, criteria: &str, obs: &str) -> Outcome {
    let spec: StateSpec = state.parse().map_err(|e: wywitness::Error| e.to_string())?;
    let (param, _, _) = spec
        .family
        .default_sweep_param()
        .ok_or_else(|| format!("{} has no sweep parameter", spec.family))?;
    let grid: Grid = range.parse().map_err(|e: wywitness::Error| e.to_string())?;
    let observables = vec![pair_for(&spec, obs)?];
    let sweep = Sweep {
        spec,
        param: param.to_string(),
        grid,
        criteria: parse_criteria(criteria)?,
        observables,
        evaluator: Evaluator::default(),
    };
    let rows = sweep.run().map_err(|e| e.to_string())?;
    let mut series: Vec<Value> = Vec::new();
    for (k, criterion) in rows
        .first()
        .map(|r| r.entries.as_slice())
        .unwrap_or_default()
        .iter()
        .enumerate()
    {
        let points: Vec<Value> = rows
            .iter()
            .map(|r| {
                let e = &r.entries[k];
                json!([
                    r.param_value,
                    finite_or_null(e.margin),
                    e.verdict.is_violated()
                ])
            })
            .collect();
        series.push(json!({ "criterion": criterion.criterion.as_str(), "points": points }));
    }
    let min_pt: Vec<Value> = rows
        .iter()
        .map(|r| json!([r.param_value, r.min_pt_eigenvalue]))
        .collect();
    Ok(json!({
        "state": sweep.spec.to_string(),
        "param": param,
        "observables": sweep.observables[0].label,
        "series": series,
        "min_pt_eigenvalue": min_pt,
    })
    .to_string())
}

/// Bisected verdict flip of one criterion over the family's default parameter domain.
pub fn threshold(state: &str, criterion: &str, obs: &str) -> Outcome {
    let spec: StateSpec = state.parse().map_err(|e: wywitness::Error| e.to_string())?;
    let (param, lo, hi) = spec
        .family
        .default_sweep_param()
        .ok_or_else(|| format!("{} has no sweep parameter", spec.family))?;
    let pair = pair_for(&spec, obs)?;
    let criterion: CriterionId = criterion
        .parse()
        .map_err(|e: wywitness::Error| e.to_string())?;
    let search = ThresholdSearch {
        spec,
        param: param.to_string(),
        lo,
        hi,
        criterion,
        a: pair.a,
        b: pair.b,
        evaluator: Evaluator::default(),
        bracket_tol: DEFAULT_BRACKET_TOL,
        prescan: 64,
    };
    let result = search.run().map_err(|e| e.to_string())?;
    Ok(json!({
        "param": param,
        "criterion": criterion.as_str(),
        "observables": pair.label,
        "threshold": result.threshold,
        "flips": result.flips.iter().map(|f| json!({
            "threshold": f.threshold,
            "below": f.below.as_str(),
        })).collect::<Vec<_>>(),
    })
    .to_string())
}

#[wasm_bindgen]
pub fn evaluate_json(state: &str, obs: &str) -> Result<String, JsError> {
    evaluate(state, obs).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn sweep_json(state: &str, range: &str, criteria: &str, obs: &str) -> Result<String, JsError> {
    sweep(state, range, criteria, obs).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn threshold_json(state: &str, criterion: &str, obs: &str) -> Result<String, JsError> {
    threshold(state, criterion, obs).map_err(|e| JsError::new(&e))
}
