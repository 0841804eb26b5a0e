use std::io::{self, Write};

use phmf_core::arith::{is_square, Discriminant};
use phmf_core::kloosterman::{coeff_b, coeff_c, default_c_max, CoeffQuery, CoeffResult, Weight};
use phmf_core::maass::EvalContext;
use phmf_core::qforms::enumerate_classes;
use phmf_core::traces::{cm_trace, cycle_trace, trace, Integrand, TraceResult, TraceSpec};
use phmf_core::{Error, Result};
use serde::Serialize;

use crate::args::{ClassesArgs, CoeffArgs, Format, FunctionArg, GenfunArgs, Side, TraceArgs};
use crate::report::json_line;

pub fn integrand(f: FunctionArg, m: Option<i64>, s: Option<f64>) -> Result<Integrand> {
    match (f, m, s) {
        (FunctionArg::Niebur, Some(m), Some(s)) => Ok(Integrand::Niebur { m, s }),
        (FunctionArg::Niebur, _, _) => Err(Error::ParameterOutOfRange("niebur needs both --m and --s".into())),
        (_, None, None) => Ok(match f {
            FunctionArg::ConstOne => Integrand::ConstOne,
            FunctionArg::JMinus744 => Integrand::JMinus744,
            _ => Integrand::Klf,
        }),
        _ => Err(Error::ParameterOutOfRange("--m and --s only apply to niebur".into())),
    }
}

pub fn run_trace(a: &TraceArgs) -> Result<TraceResult> {
    let ctx = a.ctx.context();
    ctx.validate()?;
    let spec = TraceSpec::new(integrand(a.f, a.m, a.s)?, a.d, a.big_d)?;
    trace(&spec, &ctx)
}

/// Serialized shape of a coefficient query result.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoeffRecord {
    pub k: f64,
    pub m: i64,
    pub n: i64,
    pub s: f64,
    pub c_max: u64,
    pub value: [f64; 2],
    pub last_term: f64,
    pub tail_bound: f64,
}

impl From<CoeffResult> for CoeffRecord {
    fn from(r: CoeffResult) -> Self {
        Self {
            k: r.k,
            m: r.m,
            n: r.n,
            s: r.s,
            c_max: r.c_max,
            value: [r.value.re, r.value.im],
            last_term: r.last_term,
            tail_bound: r.tail_bound,
        }
    }
}

pub fn run_coeff(a: &CoeffArgs) -> Result<CoeffRecord> {
    if !(a.tol > 0.0) {
        return Err(Error::ParameterOutOfRange(format!("tolerance {} must be positive", a.tol)));
    }
    let c_max = match a.cmax {
        Some(0) => return Err(Error::ParameterOutOfRange("--cmax must be positive".into())),
        Some(c) => c,
        None => default_c_max(a.k, a.m, a.n, a.s, a.tol)?,
    };
    let q = CoeffQuery { k: a.k, m: a.m, n: a.n, s: a.s, c_max };
    let r = match Weight::from_f64(a.k)? {
        Weight::Integral(_) => coeff_c(&q)?,
        Weight::Half { .. } => coeff_b(&q)?,
    };
    Ok(r.into())
}

/// One coefficient of a generating function, or the reason it is absent.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GenfunRow {
    pub d: i64,
    pub value: Option<f64>,
    pub skipped_reason: Option<&'static str>,
}

impl GenfunRow {
    fn value(d: i64, v: f64) -> Self {
        Self { d, value: Some(v), skipped_reason: None }
    }

    fn skipped(d: i64, reason: &'static str) -> Self {
        Self { d, value: None, skipped_reason: Some(reason) }
    }
}

/// Rows `d_min ≤ d ≤ d_max` of the series `Σ Tr_{d,D}(f) q^{−d}` (CM side) or
/// `Σ d^{−1/2} Tr_{d,D}(f) q^d` (cycle side).
pub fn genfun_rows(f: Integrand, big_d: i64, d_min: i64, d_max: i64, side: Side, ctx: &EvalContext) -> Result<Vec<GenfunRow>> {
    if d_min > d_max {
        return Err(Error::ParameterOutOfRange(format!("empty range [{d_min}, {d_max}]")));
    }
    if d_max - d_min > 100_000 {
        return Err(Error::ParameterOutOfRange("range wider than 100000".into()));
    }
    Discriminant::fundamental(big_d)?;
    ctx.validate()?;
    let mut rows = Vec::new();
    for d in d_min..=d_max {
        rows.push(genfun_row(f, big_d, d, side, ctx)?);
    }
    Ok(rows)
}

fn genfun_row(f: Integrand, big_d: i64, d: i64, side: Side, ctx: &EvalContext) -> Result<GenfunRow> {
    if side == Side::Cm && big_d == 1 {
        match (f, d) {
            (Integrand::ConstOne, 0) => return Ok(GenfunRow::value(0, -1.0 / 12.0)),
            (Integrand::JMinus744, 0) => return Ok(GenfunRow::value(0, 2.0)),
            (Integrand::JMinus744, 1) => return Ok(GenfunRow::value(1, -1.0)),
            _ => {}
        }
    }
    if d == 0 {
        return Ok(GenfunRow::skipped(d, "zero_discriminant"));
    }
    if !matches!(d.rem_euclid(4), 0 | 1) {
        return Ok(GenfunRow::skipped(d, "not_a_discriminant"));
    }
    let delta = d * big_d;
    match side {
        Side::Cm if delta > 0 => return Ok(GenfunRow::skipped(d, "positive_discriminant")),
        Side::Cycle if delta < 0 => return Ok(GenfunRow::skipped(d, "negative_discriminant")),
        Side::Cycle if is_square(delta) => return Ok(GenfunRow::skipped(d, "square_discriminant")),
        _ => {}
    }
    let spec = TraceSpec::new(f, d, big_d)?;
    Ok(match side {
        Side::Cm => GenfunRow::value(d, cm_trace(&spec, ctx)?.value),
        Side::Cycle => GenfunRow::value(d, cycle_trace(&spec, ctx)?.value / (d.unsigned_abs() as f64).sqrt()),
    })
}

pub fn run_genfun(a: &GenfunArgs) -> Result<Vec<GenfunRow>> {
    let f = integrand(a.f, a.m, a.s)?;
    genfun_rows(f, a.big_d, a.d_min, a.d_max, a.side, &a.ctx.context())
}

pub fn write_genfun(out: &mut dyn Write, rows: &[GenfunRow], format: Format) -> io::Result<()> {
    match format {
        Format::Json => rows.iter().try_for_each(|r| json_line(out, r)),
        Format::Csv => {
            writeln!(out, "d,value,skipped_reason")?;
            for r in rows {
                match (r.value, r.skipped_reason) {
                    (Some(v), _) => writeln!(out, "{},{},", r.d, v)?,
                    (None, reason) => writeln!(out, "{},,{}", r.d, reason.unwrap_or(""))?,
                }
            }
            Ok(())
        }
    }
}

pub fn run_classes(a: &ClassesArgs) -> Result<phmf_core::qforms::ClassListRecord> {
    let delta = Discriminant::new(a.delta)?;
    Ok(enumerate_classes(delta, a.positive_a_only)?.record())
}
