//! Exit codes, structured errors and output sinks.

use std::io::Write;
use std::path::Path;

use qes_core::Error;
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_OTHER: i32 = 1;
pub const EXIT_INVARIANCE: i32 = 2;
pub const EXIT_RELATION: i32 = 3;
pub const EXIT_NONCONVERGENCE: i32 = 4;

pub fn exit_code(err: &Error) -> i32 {
    match err.root_cause() {
        Error::DegreeOverflow { .. } | Error::NotSymmetric | Error::NonPolynomial { .. } => {
            EXIT_INVARIANCE
        }
        Error::NoRelation(_) | Error::AmbiguousRelation { .. } => EXIT_RELATION,
        Error::NonConvergence { .. } => EXIT_NONCONVERGENCE,
        _ => EXIT_OTHER,
    }
}

fn kind(err: &Error) -> &'static str {
    match err {
        Error::InvalidArgument(_) => "invalid_argument",
        Error::Parse(_) => "parse",
        Error::NonDivisible { .. } => "non_divisible",
        Error::NonPolynomial { .. } => "non_polynomial",
        Error::NotSymmetric => "not_symmetric",
        Error::DegreeOverflow { .. } => "degree_overflow",
        Error::BasisElement { .. } => "basis_element",
        Error::DimensionMismatch(..) => "dimension_mismatch",
        Error::NoRelation(_) => "no_relation",
        Error::AmbiguousRelation { .. } => "ambiguous_relation",
        Error::NonConvergence { .. } => "non_convergence",
    }
}

pub fn error_json(err: &Error) -> Value {
    let cause = err.root_cause();
    let mut v = json!({
        "kind": kind(&cause),
        "message": err.to_string(),
        "exit_code": exit_code(err),
    });
    match &cause {
        Error::DegreeOverflow { degree, d, element } => {
            v["degree"] = json!(degree);
            v["d"] = json!(d);
            if let Some((m1, m2)) = element {
                v["element"] = json!([m1, m2]);
            }
        }
        Error::AmbiguousRelation { nullity } => v["nullity"] = json!(nullity),
        Error::NonConvergence {
            iterations,
            worst_residual,
        } => {
            v["iterations"] = json!(iterations);
            v["worst_residual"] = json!(worst_residual);
        }
        _ => {}
    }
    if let Error::BasisElement { element, .. } = err {
        v["element"] = json!([element.0, element.1]);
    }
    json!({ "error": v })
}

pub fn to_json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

/// Builds CSV text from a header and rows.
pub fn csv_text(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("CSV is UTF-8")
}

/// Writes to `path`, or stdout when absent.
pub fn emit(text: &str, path: Option<&Path>) -> Result<(), Error> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| Error::InvalidArgument(format!("cannot write to stdout: {e}")))
        }
    }
}
