use std::io::{self, Write};

use serde::Serialize;

/// One line of a verification report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub check: String,
    pub lhs: f64,
    pub rhs: f64,
    pub tol: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Check {
    /// Passes when `|lhs − rhs| ≤ tol`; NaN never passes.
    pub fn close(name: impl Into<String>, lhs: f64, rhs: f64, tol: f64) -> Self {
        let pass = (lhs - rhs).abs() <= tol;
        Self { check: name.into(), lhs, rhs, tol, pass, error: None }
    }

    /// Relative variant: the tolerance is scaled by `|rhs|`.
    pub fn relative(name: impl Into<String>, lhs: f64, rhs: f64, rel: f64) -> Self {
        Self::close(name, lhs, rhs, rel * rhs.abs())
    }

    pub fn failed(name: impl Into<String>, tol: f64, err: impl ToString) -> Self {
        Self { check: name.into(), lhs: f64::NAN, rhs: f64::NAN, tol, pass: false, error: Some(err.to_string()) }
    }

    /// Builds a check from a fallible `(lhs, rhs)` computation.
    pub fn from_result<E: ToString>(name: impl Into<String>, r: Result<(f64, f64), E>, tol: f64) -> Self {
        match r {
            Ok((lhs, rhs)) => Self::close(name, lhs, rhs, tol),
            Err(e) => Self::failed(name, tol, e),
        }
    }
}

pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.pass)
}

/// Writes `value` as a single JSON line.
pub fn json_line<T: Serialize>(out: &mut dyn Write, value: &T) -> io::Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    out.write_all(b"\n")
}

#[derive(Serialize)]
struct ErrorRecord<'a> {
    error: &'a str,
}

pub fn error_line(out: &mut dyn Write, msg: &str) -> io::Result<()> {
    json_line(out, &ErrorRecord { error: msg })
}
