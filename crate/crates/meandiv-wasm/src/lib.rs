//! Browser bindings for the mean-difference divergence toolkit.
//!
//! Exposes three explorable surfaces to the static demo page:
//!
//! - [`means_report`]: the seven means and eleven differences at `(a, b)`;
//! - [`generator_curves`]: sampled `f(x)` and `f*(u)` curves for one kind;
//! - [`bound_report`] / [`bound_sweep`]: error bounds for a two-symbol
//!   problem, pointwise and swept over the first conditional.
//!
//! Every export returns a JSON string; the page parses and plots it. The
//! JSON builders are plain Rust so the host test suite exercises them
//! without a browser.

use meandiv::{
    all_means, chained_bounds, conjugate_value, f_infinity, generator_value, mean_difference,
    sharpness_check, symmetric_bound, GeneratorKind, MeanDiffKind, TwoClassProblem,
};
use serde::Serialize;
use serde_json::json;
use wasm_bindgen::prelude::*;

#[derive(Serialize)]
struct Entry {
    kind: String,
    value: f64,
}

#[derive(Serialize)]
struct MeansReport {
    means: Vec<Entry>,
    differences: Vec<Entry>,
}

#[derive(Serialize)]
struct CurveReport {
    kind: String,
    f_infinity: f64,
    x: Vec<f64>,
    f: Vec<f64>,
    u: Vec<f64>,
    conjugate: Vec<f64>,
}

#[derive(Serialize)]
struct SweepReport {
    kind: String,
    head: Vec<f64>,
    bound: Vec<f64>,
    exact: Vec<f64>,
}

fn parse_kind(kind: &str) -> Result<GeneratorKind, String> {
    kind.parse::<GeneratorKind>().map_err(|e| e.to_string())
}

fn means_report_json(a: f64, b: f64) -> Result<String, String> {
    let means = all_means(a, b).map_err(|e| e.to_string())?;
    let differences = MeanDiffKind::ALL
        .into_iter()
        .map(|kind| Entry {
            kind: kind.to_string(),
            value: mean_difference(kind, a, b).expect("arguments already validated"),
        })
        .collect();
    let report = MeansReport {
        means: means
            .into_iter()
            .map(|(kind, value)| Entry {
                kind: kind.to_string(),
                value,
            })
            .collect(),
        differences,
    };
    Ok(serde_json::to_string(&report).expect("report serializes"))
}

fn generator_curves_json(kind: &str, points: usize) -> Result<String, String> {
    let kind = parse_kind(kind)?;
    if !(2..=100_000).contains(&points) {
        return Err(format!("points must lie in [2, 100000], got {points}"));
    }
    // f over two decades on each side of x = 1, f* over [0, 1].
    let n = points as f64 - 1.0;
    let mut report = CurveReport {
        kind: kind.to_string(),
        f_infinity: f_infinity(kind),
        x: Vec::with_capacity(points),
        f: Vec::with_capacity(points),
        u: Vec::with_capacity(points),
        conjugate: Vec::with_capacity(points),
    };
    for i in 0..points {
        let t = i as f64 / n;
        let x = 10f64.powf(-2.0 + 4.0 * t);
        report.x.push(x);
        report
            .f
            .push(generator_value(kind, x).expect("x is positive"));
        report.u.push(t);
        report
            .conjugate
            .push(conjugate_value(kind, t).expect("t is in [0,1]"));
    }
    Ok(serde_json::to_string(&report).expect("report serializes"))
}

fn binary_problem(prior1: f64, p_head: f64, q_head: f64) -> Result<TwoClassProblem, String> {
    for (name, value) in [("p", p_head), ("q", q_head)] {
        if !(0.0..=1.0).contains(&value) {
            return Err(format!("{name} must lie in [0, 1], got {value}"));
        }
    }
    TwoClassProblem::new(
        prior1,
        1.0 - prior1,
        vec![p_head, 1.0 - p_head],
        vec![q_head, 1.0 - q_head],
    )
    .map_err(|e| e.to_string())
}

fn bound_report_json(prior1: f64, p_head: f64, q_head: f64) -> Result<String, String> {
    let problem = binary_problem(prior1, p_head, q_head)?;
    let bounds: Vec<_> = GeneratorKind::ALL
        .into_iter()
        .map(|kind| symmetric_bound(kind, &problem))
        .collect();
    let document = json!({
        "exact_error": problem.bayes_error(),
        "bounds": bounds,
        "chained": chained_bounds(&problem),
        "sharpness": sharpness_check(&problem),
    });
    Ok(document.to_string())
}

fn bound_sweep_json(kind: &str, prior1: f64, q_head: f64, points: usize) -> Result<String, String> {
    let kind = parse_kind(kind)?;
    if !(2..=100_000).contains(&points) {
        return Err(format!("points must lie in [2, 100000], got {points}"));
    }
    let n = points as f64 - 1.0;
    let mut report = SweepReport {
        kind: kind.to_string(),
        head: Vec::with_capacity(points),
        bound: Vec::with_capacity(points),
        exact: Vec::with_capacity(points),
    };
    for i in 0..points {
        let p_head = i as f64 / n;
        let problem = binary_problem(prior1, p_head, q_head)?;
        report.head.push(p_head);
        report.bound.push(symmetric_bound(kind, &problem).bound);
        report.exact.push(problem.bayes_error());
    }
    Ok(serde_json::to_string(&report).expect("report serializes"))
}

/// The seven means and eleven differences at `(a, b)`, as JSON.
#[wasm_bindgen]
pub fn means_report(a: f64, b: f64) -> Result<String, JsError> {
    means_report_json(a, b).map_err(|e| JsError::new(&e))
}

/// Sampled generator and conjugate curves for one kind, as JSON.
#[wasm_bindgen]
pub fn generator_curves(kind: &str, points: usize) -> Result<String, JsError> {
    generator_curves_json(kind, points).map_err(|e| JsError::new(&e))
}

/// Bounds, chained bounds, and sharpness margins for the two-symbol problem
/// with conditionals `[p, 1-p]` and `[q, 1-q]`, as JSON.
#[wasm_bindgen]
pub fn bound_report(prior1: f64, p_head: f64, q_head: f64) -> Result<String, JsError> {
    bound_report_json(prior1, p_head, q_head).map_err(|e| JsError::new(&e))
}

/// One kind's bound and the exact error swept over the first conditional
/// head `p`, as JSON.
#[wasm_bindgen]
pub fn bound_sweep(kind: &str, prior1: f64, q_head: f64, points: usize) -> Result<String, JsError> {
    bound_sweep_json(kind, prior1, q_head, points).map_err(|e| JsError::new(&e))
}
