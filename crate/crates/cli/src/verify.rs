//! Identity-verification suites. Every check is deterministic: random inputs
//! come from a fixed-seed generator and all reductions are thread-independent.

use std::f64::consts::PI;

use num_complex::Complex64;
use phmf_core::arith::{dirichlet_l, is_square, isqrt, regulator, zeta, Discriminant};
use phmf_core::kloosterman::{b_zero_closed, coeff_b, coeff_c, kloosterman_k, kloosterman_ktilde, CoeffQuery};
use phmf_core::maass::{
    eval_g, kronecker_limit_constant, kronecker_limit_extrapolated, EvalContext, Method, ModularPoint,
};
use phmf_core::qforms::enumerate_classes;
use phmf_core::specfun::dedekind_eta;
use phmf_core::traces::{cm_trace, cycle_trace, trace, verify_key_identity, Integrand, TraceSpec};
use phmf_core::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::args::Suite;
use crate::oracle::six_hurwitz;
use crate::report::Check;

pub const RANDOM_SEED: u64 = 0x5eed_4b10;

pub fn run_suite(suite: Suite) -> Vec<Check> {
    match suite {
        Suite::Kloosterman => kloosterman_suite(),
        Suite::Limits => limits_suite(),
        Suite::Traces => traces_suite(),
        Suite::KeyIdentity => key_identity_suite(),
        Suite::All => [kloosterman_suite(), limits_suite(), traces_suite(), key_identity_suite()].concat(),
    }
}

fn pt(x: f64, y: f64) -> ModularPoint {
    ModularPoint::new(x, y).expect("sample point lies in the upper half plane")
}

fn l_at_one(big_d: i64) -> Result<f64> {
    dirichlet_l(Discriminant::fundamental(big_d)?, 1.0)
}

// Kloosterman sums

pub fn kloosterman_suite() -> Vec<Check> {
    let mut out = ktilde_identities(200, 12);
    out.extend(random_symmetry(500));
    out.push(Check::from_result(
        "ktilde_half_zero_mod4",
        kloosterman_ktilde(0.5, 0, 0, 4).map(|v| ((v - Complex64::new(1.0, 1.0)).norm(), 0.0)),
        1e-12,
    ));
    out.push(b_symmetry());
    out.push(weight_shift_scaling());
    out
}

/// Maximum deviations of `K̃_{k+2} = K̃_k` and `K̃_{3/2}(m,n,c) = −i K̃_{1/2}(−m,−n,c)`
/// over `4 | c ≤ c_max`, `|m|, |n| ≤ bound`.
pub fn ktilde_identities(c_max: u64, bound: i64) -> Vec<Check> {
    let scan = || -> Result<(f64, f64)> {
        let (mut period, mut refl) = (0f64, 0f64);
        for c in (4..=c_max).step_by(4) {
            for m in -bound..=bound {
                for n in -bound..=bound {
                    let half = kloosterman_ktilde(0.5, m, n, c)?;
                    let three = kloosterman_ktilde(1.5, m, n, c)?;
                    period = period
                        .max((half - kloosterman_ktilde(2.5, m, n, c)?).norm())
                        .max((three - kloosterman_ktilde(3.5, m, n, c)?).norm());
                    let flipped = -Complex64::i() * kloosterman_ktilde(0.5, -m, -n, c)?;
                    refl = refl.max((three - flipped).norm());
                }
            }
        }
        Ok((period, refl))
    };
    match scan() {
        Ok((p, r)) => vec![
            Check::close("ktilde_weight_period", p, 0.0, 1e-12),
            Check::close("ktilde_reflection", r, 0.0, 1e-12),
        ],
        Err(e) => vec![Check::failed("ktilde_weight_period", 1e-12, &e), Check::failed("ktilde_reflection", 1e-12, &e)],
    }
}

/// Triples `(m, n, c)` with `|m|, |n| ≤ 1000`, `1 ≤ c ≤ 2000`.
pub fn random_triples(count: usize) -> Vec<(i64, i64, u64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED);
    (0..count)
        .map(|_| (rng.random_range(-1000..=1000), rng.random_range(-1000..=1000), rng.random_range(1..=2000)))
        .collect()
}

/// `K(m,n,c) = K(n,m,c)` and `Im K = 0` on seeded random triples.
pub fn random_symmetry(count: usize) -> Vec<Check> {
    let (mut sym, mut imag) = (0f64, 0f64);
    for (m, n, c) in random_triples(count) {
        let a = kloosterman_k(m, n, c);
        sym = sym.max((a - kloosterman_k(n, m, c)).norm());
        imag = imag.max(a.im.abs());
    }
    vec![Check::close("kloosterman_symmetry_random", sym, 0.0, 1e-12), Check::close("kloosterman_reality_random", imag, 0.0, 1e-10)]
}

fn b_symmetry() -> Check {
    let q = |m, n| CoeffQuery { k: 0.5, m, n, s: 1.3, c_max: 3000 };
    Check::from_result(
        "b_index_symmetry",
        coeff_b(&q(5, 8)).and_then(|a| Ok((a.value - coeff_b(&q(8, 5))?.value).norm())).map(|d| (d, 0.0)),
        0.0,
    )
}

/// `b_{5/2,1}(4,s) = −4^{−1} b_{1/2,1}(4,s)`.
fn weight_shift_scaling() -> Check {
    let q = |k| CoeffQuery { k, m: 1, n: 4, s: 1.4, c_max: 2000 };
    let r = (|| -> Result<(f64, f64, f64)> {
        let big = coeff_b(&q(2.5))?.value;
        let predicted = -0.25 * coeff_b(&q(0.5))?.value;
        Ok(((big - predicted).norm(), 0.0, predicted.norm()))
    })();
    match r {
        Ok((lhs, rhs, scale)) => Check::close("weight_shift_scaling", lhs, rhs, 1e-12 * scale),
        Err(e) => Check::failed("weight_shift_scaling", 1e-12, e),
    }
}

// Closed forms and limits

pub fn limits_suite() -> Vec<Check> {
    let mut out = vec![eta_quotient(), b_zero_constant_term(), c_zero_constant_term()];
    out.extend(kronecker_limit());
    out.push(fourier_vs_group_sum());
    out
}

/// `|η((−1+2√2 i)/3) / η(2√2 i)|⁴ = 3 + 3√2`.
pub fn eta_quotient() -> Check {
    let r2 = 2f64.sqrt();
    let a = dedekind_eta(Complex64::new(-1.0 / 3.0, 2.0 * r2 / 3.0));
    let b = dedekind_eta(Complex64::new(0.0, 2.0 * r2));
    Check::relative("eta_quotient", (a / b).norm().powi(4), 3.0 + 3.0 * r2, 1e-10)
}

/// `b_{1/2,0}(0,2)` from the series at `c_max = 10⁵` against its closed form.
pub fn b_zero_constant_term() -> Check {
    let q = CoeffQuery { k: 0.5, m: 0, n: 0, s: 2.0, c_max: 100_000 };
    match (coeff_b(&q), b_zero_closed(2.0)) {
        (Ok(r), Ok(closed)) => Check::relative("b_zero_closed_form", r.value.re, closed, 1e-4),
        (Err(e), _) | (_, Err(e)) => Check::failed("b_zero_closed_form", 1e-4, e),
    }
}

/// `c_{0,0}(0,2) = (3/8) ζ(3)/ζ(4)`.
fn c_zero_constant_term() -> Check {
    let q = CoeffQuery { k: 0.0, m: 0, n: 0, s: 2.0, c_max: 100_000 };
    let r = (|| Ok::<_, phmf_core::Error>((coeff_c(&q)?.value.re, 0.375 * zeta(3.0)? / zeta(4.0)?)))();
    Check::from_result("c_zero_closed_form", r, 1e-6)
}

pub const KRONECKER_POINTS: [(f64, f64); 2] = [(0.0, 1.0), (0.3, 1.2)];

/// Extrapolated constant term of `E(z,s)` at `s = 1` against
/// `−(3/π) log(y|η(z)|⁴) + C`.
pub fn kronecker_limit() -> Vec<Check> {
    let ctx = EvalContext::default();
    KRONECKER_POINTS
        .iter()
        .map(|&(x, y)| {
            let z = pt(x, y);
            let r = (|| -> Result<(f64, f64)> {
                let lhs = kronecker_limit_extrapolated(z, 0.02, 2, &ctx)?;
                let rhs = -3.0 / PI * (y * dedekind_eta(z.z()).norm_sqr().powi(2)).ln() + kronecker_limit_constant()?;
                Ok((lhs, rhs))
            })();
            Check::from_result(format!("kronecker_limit[z={x}+{y}i]"), r, 1e-4)
        })
        .collect()
}

fn fourier_vs_group_sum() -> Check {
    let ctx = EvalContext::default();
    let z = pt(0.0, 1.0);
    let r = (|| -> Result<(f64, f64)> {
        let a = eval_g(0, z, 2.0, &ctx, Method::Fourier)?;
        let b = eval_g(0, z, 2.0, &ctx, Method::GroupSum)?;
        Ok(((a - b).norm(), 0.0))
    })();
    Check::from_result("eisenstein_fourier_vs_group_sum", r, 1e-6)
}

// Traces

pub fn traces_suite() -> Vec<Check> {
    let mut out = hurwitz_class_numbers(400);
    out.extend(kronecker_formula());
    out.push(siegel_example());
    out.extend(zagier_traces());
    out.extend(corollary_pairs());
    out.extend(twisted_vanishing(150));
    out
}

/// `cm_trace(1, d, 1)` for `−d ≤ n_max`: the distance of each value from the
/// nearest sixth, and the number of disagreements with brute-force `6H(|d|)`.
pub fn hurwitz_class_numbers(n_max: u64) -> Vec<Check> {
    let ctx = EvalContext::default();
    let scan = || -> Result<(f64, f64)> {
        let (mut dev, mut mismatches) = (0f64, 0u32);
        for n in 3..=n_max {
            let d = -(n as i64);
            if !matches!(d.rem_euclid(4), 0 | 1) {
                continue;
            }
            let v = cm_trace(&TraceSpec::new(Integrand::ConstOne, d, 1)?, &ctx)?.value;
            let six = (6.0 * v).round();
            dev = dev.max((v - six / 6.0).abs());
            if six < 0.0 || six as u64 != six_hurwitz(n) {
                mismatches += 1;
            }
        }
        Ok((dev, mismatches as f64))
    };
    match scan() {
        Ok((dev, bad)) => vec![
            Check::close("hurwitz_rational_reconstruction", dev, 0.0, 1e-12),
            Check::close("hurwitz_brute_force_mismatches", bad, 0.0, 0.0),
        ],
        Err(e) => vec![
            Check::failed("hurwitz_rational_reconstruction", 1e-12, &e),
            Check::failed("hurwitz_brute_force_mismatches", 0.0, &e),
        ],
    }
}

pub const KRONECKER_DISCRIMINANTS: [i64; 5] = [5, 8, 12, 13, 17];

/// `Tr_{d,1}(1) = h(d) log ε_d / π`.
pub fn kronecker_formula() -> Vec<Check> {
    let ctx = EvalContext::default();
    KRONECKER_DISCRIMINANTS
        .iter()
        .map(|&d| {
            let r = (|| -> Result<(f64, f64)> {
                let lhs = cycle_trace(&TraceSpec::new(Integrand::ConstOne, d, 1)?, &ctx)?.value;
                let disc = Discriminant::new(d)?;
                let h = enumerate_classes(disc, false)?.count() as f64;
                Ok((lhs, h * regulator(disc)? / PI))
            })();
            Check::from_result(format!("kronecker_formula[d={d}]"), r, 1e-8)
        })
        .collect()
}

/// `Tr_{5,8}(−log(y|η|⁴)) = √8 L_8(1) log ε_5 / π`.
fn siegel_example() -> Check {
    let ctx = EvalContext::default();
    let r = (|| -> Result<(f64, f64)> {
        let lhs = cycle_trace(&TraceSpec::new(Integrand::Klf, 5, 8)?, &ctx)?.value;
        let eps = (3.0 + 5f64.sqrt()) / 2.0;
        Ok((lhs, 8f64.sqrt() * l_at_one(8)? * eps.ln() / PI))
    })();
    Check::from_result("siegel_klf_trace[d=5,D=8]", r, 1e-8)
}

pub const ZAGIER_VALUES: [(i64, f64); 4] = [(-3, -248.0), (-4, 492.0), (-7, -4119.0), (-8, 7256.0)];

pub fn zagier_traces() -> Vec<Check> {
    let ctx = EvalContext::default();
    ZAGIER_VALUES
        .iter()
        .map(|&(d, expected)| {
            let r = TraceSpec::new(Integrand::JMinus744, d, 1).and_then(|s| cm_trace(&s, &ctx)).map(|t| (t.value, expected));
            Check::from_result(format!("zagier_trace[d={d}]"), r, 1e-6 * expected.abs())
        })
        .collect()
}

pub const COROLLARY_PAIRS: [(i64, i64); 15] = [
    (5, -3), (5, -4), (8, -3), (8, -4), (12, -4), (13, -4), (5, -8), (13, -3),
    (5, 8), (8, 5), (5, 12), (8, 12), (13, 5), (12, 5), (5, 13),
];

/// `Tr_{d,D}(−log(y|η|⁴)) = √|D| L_D(1) Tr_{d,1}(1)`.
pub fn corollary_pairs() -> Vec<Check> {
    let ctx = EvalContext::default();
    COROLLARY_PAIRS
        .iter()
        .map(|&(d, big_d)| {
            let r = (|| -> Result<(f64, f64)> {
                let lhs = trace(&TraceSpec::new(Integrand::Klf, d, big_d)?, &ctx)?.value;
                let base = cycle_trace(&TraceSpec::new(Integrand::ConstOne, d, 1)?, &ctx)?.value;
                Ok((lhs, (big_d.abs() as f64).sqrt() * l_at_one(big_d)? * base))
            })();
            Check::from_result(format!("corollary_log_eta[d={d},D={big_d}]"), r, 1e-6)
        })
        .collect()
}

/// Admissible `(d, D)` with `0 < dD ≤ bound` non-square, `D ∈ {−4, −3, 5, 8}`.
pub fn twisted_pairs(bound: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for big_d in [-4i64, -3, 5, 8] {
        for d in -bound..=bound {
            let delta = d * big_d;
            if d != 0 && delta > 0 && delta <= bound && matches!(d.rem_euclid(4), 0 | 1) && !is_square(delta) {
                out.push((d, big_d));
            }
        }
    }
    out
}

/// `Tr_{d,D}(1) = 0` for non-square `d`, `= n√|D| L_D(1)/π` for `d = n²`.
pub fn twisted_vanishing(bound: i64) -> Vec<Check> {
    let ctx = EvalContext::default();
    let scan = || -> Result<(f64, f64)> {
        let (mut zero_dev, mut square_dev) = (0f64, 0f64);
        for (d, big_d) in twisted_pairs(bound) {
            let v = cycle_trace(&TraceSpec::new(Integrand::ConstOne, d, big_d)?, &ctx)?.value;
            if d > 0 && is_square(d) {
                let n = isqrt(d) as f64;
                square_dev = square_dev.max((v - n * (big_d.abs() as f64).sqrt() * l_at_one(big_d)? / PI).abs());
            } else {
                zero_dev = zero_dev.max(v.abs());
            }
        }
        Ok((zero_dev, square_dev))
    };
    match scan() {
        Ok((z, s)) => vec![
            Check::close("twisted_trace_vanishing", z, 0.0, 1e-7),
            Check::close("twisted_trace_square_d", s, 0.0, 1e-6),
        ],
        Err(e) => vec![Check::failed("twisted_trace_vanishing", 1e-7, &e), Check::failed("twisted_trace_square_d", 1e-6, &e)],
    }
}

// Divisor-sum identity

pub const KEY_IDENTITY_CASES: [(i64, i64, i64, f64); 4] = [(1, 5, 1, 1.8), (2, 5, 1, 1.8), (1, -3, 1, 1.8), (0, 5, 1, 1.8)];
pub const KEY_IDENTITY_C_MAX: u64 = 4000;
pub const KEY_IDENTITY_TOL: f64 = 5e-3;

pub fn key_identity_suite() -> Vec<Check> {
    let ctx = EvalContext::default();
    KEY_IDENTITY_CASES
        .iter()
        .map(|&(m, d, big_d, s)| {
            let r = verify_key_identity(m, d, big_d, s, &ctx, KEY_IDENTITY_C_MAX).map(|k| (k.lhs, k.rhs));
            Check::from_result(format!("key_identity[m={m},d={d},D={big_d},s={s}]"), r, KEY_IDENTITY_TOL)
        })
        .collect()
}
