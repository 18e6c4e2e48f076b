//! Machine-readable reports.
//!
//! Reports are JSON objects with sorted keys (`serde_json` keeps object keys
//! in a `BTreeMap`) and no timings, so reruns with the same configuration are
//! byte-identical.

use polymat_core::toric::{FailingFiber, WhiteReport};
use polymat_core::{Binomial, Monomial, Presentation, YMonomial};
use serde_json::{json, Value};

use crate::suites::SuiteSummary;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Top-level report: `{command, config, pass, results, tool, version}`.
pub fn envelope(command: &str, config: Value, pass: bool, results: Value) -> Value {
    json!({
        "tool": "polymat",
        "version": VERSION,
        "command": command,
        "config": config,
        "pass": pass,
        "results": results,
    })
}

pub fn render(report: &Value) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("json values always serialize");
    text.push('\n');
    text
}

pub fn monomial(m: &Monomial) -> Value {
    json!(m.display_vars().to_string())
}

pub fn y_monomial(pres: &Presentation, m: &YMonomial) -> Value {
    json!(pres.display_monomial(m))
}

pub fn binomial(pres: &Presentation, b: &Binomial) -> Value {
    json!(pres.display_binomial(b))
}

pub fn binomials<'a>(pres: &Presentation, bs: impl IntoIterator<Item = &'a Binomial>) -> Value {
    Value::Array(bs.into_iter().map(|b| binomial(pres, b)).collect())
}

pub fn failing_fiber(pres: &Presentation, f: &FailingFiber) -> Value {
    let components: Vec<Value> =
        f.components.iter().map(|c| Value::Array(c.iter().map(|m| y_monomial(pres, m)).collect())).collect();
    json!({
        "degree": f.degree,
        "target": monomial(&f.target),
        "components": components,
    })
}

pub fn white(pres: &Presentation, r: &WhiteReport) -> Value {
    let per_degree: Vec<Value> = r
        .per_degree
        .iter()
        .map(|s| {
            json!({
                "degree": s.degree,
                "monomials": s.monomials,
                "fibers": s.fibers,
                "nontrivial_fibers": s.nontrivial_fibers,
                "largest_fiber": s.largest_fiber,
                "disconnected": s.disconnected,
            })
        })
        .collect();
    json!({
        "pass": r.pass,
        "d_max": r.d_max,
        "moves": r.moves,
        "linear_moves": r.linear_moves,
        "per_degree": per_degree,
        "first_failure": r.first_failure.as_ref().map(|f| failing_fiber(pres, f)),
    })
}

pub fn suite(s: &SuiteSummary) -> Value {
    json!({
        "suite": s.suite.name(),
        "seed": s.seed,
        "instances": s.count,
        "passed": s.passed,
        "failed": s.failed,
        "errors": s.errors,
        "resource_caps": s.resource_caps,
        "first_failure": s.first_failure.as_ref().map(|c| json!({
            "index": c.index,
            "detail": c.detail,
        })),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_are_sorted() {
        let text = render(&envelope("check", json!({"z": 1, "a": 2}), true, json!({})));
        let command = text.find("\"command\"").unwrap();
        let config = text.find("\"config\"").unwrap();
        let version = text.find("\"version\"").unwrap();
        assert!(command < config && config < version);
        assert!(text.find("\"a\"").unwrap() < text.find("\"z\"").unwrap());
    }
}
