use renyi_core::{Error, ErrorCategory, ExtendedReal, Order};
use serde_json::{json, Map, Value};

use crate::args::Base;

/// JSON has no infinities, so they travel as the strings `inf` and `-inf`.
pub fn num(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else if x == f64::INFINITY {
        json!("inf")
    } else if x == f64::NEG_INFINITY {
        json!("-inf")
    } else {
        json!("nan")
    }
}

pub fn nums(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| num(x)).collect())
}

/// Text form shared by CSV cells; matches the JSON strings for infinities.
pub fn text(x: f64) -> String {
    if x == f64::INFINITY {
        "inf".into()
    } else if x == f64::NEG_INFINITY {
        "-inf".into()
    } else {
        x.to_string()
    }
}

/// Converts information quantities to the requested base.
#[derive(Debug, Clone, Copy)]
pub struct Units(pub Base);

impl Units {
    pub fn info(self, nats: f64) -> Value {
        num(self.0.convert(nats))
    }

    pub fn ext(self, d: ExtendedReal) -> Value {
        self.info(d.value())
    }

    pub fn exts(self, ds: &[ExtendedReal]) -> Value {
        Value::Array(ds.iter().map(|&d| self.ext(d)).collect())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub result: Value,
    pub iterations: Option<usize>,
    pub converged: bool,
    /// Tolerance the command ran with, if it uses one.
    pub tol: Option<f64>,
    /// Curve points kept for CSV rendering.
    pub table: Option<Vec<(Order, f64)>>,
}

impl Report {
    pub fn exact(result: Value) -> Self {
        Report { result, iterations: None, converged: true, tol: None, table: None }
    }

    pub fn document(&self, base: Base, seed: u64) -> Value {
        let mut tolerances = Map::new();
        if let Some(t) = self.tol {
            tolerances.insert("tol".into(), num(t));
        }
        json!({
            "result": self.result,
            "unit": base.label(),
            "diagnostics": {
                "iterations": self.iterations,
                "converged": self.converged,
                "seed": seed,
                "tolerances": tolerances,
            },
        })
    }

    pub fn csv(&self, base: Base) -> Option<String> {
        let rows = self.table.as_ref()?;
        let mut out = format!("alpha,divergence_{}\n", base.label());
        for (a, d) in rows {
            out.push_str(&format!("{},{}\n", a, text(base.convert(*d))));
        }
        Some(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub kind: &'static str,
    pub detail: String,
}

pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_DOMAIN: i32 = 4;

impl Failure {
    pub fn validation(detail: impl Into<String>) -> Self {
        Failure { kind: "validation", detail: detail.into() }
    }

    pub fn non_convergence(detail: impl Into<String>) -> Self {
        Failure { kind: "non_convergence", detail: detail.into() }
    }

    pub fn exit_code(&self) -> i32 {
        match self.kind {
            "domain" => EXIT_DOMAIN,
            "numerical" | "non_convergence" => EXIT_NUMERICAL,
            _ => EXIT_VALIDATION,
        }
    }

    pub fn document(&self) -> Value {
        json!({ "error": self.kind, "detail": self.detail })
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let kind = match e.category() {
            ErrorCategory::Validation => "validation",
            ErrorCategory::Domain => "domain",
            ErrorCategory::Numerical => "numerical",
        };
        Failure { kind, detail: e.to_string() }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::validation(format!("malformed input: {e}"))
    }
}
