//! Riemann and Hurwitz zeta, `ζ′`, and quadratic Dirichlet L-functions via
//! Euler–Maclaurin summation.

use super::integer::kronecker;
use super::pell::Discriminant;
use crate::error::{Error, Result};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const CUTOFF: usize = 50;

/// `B_{2j} / (2j)!` for `j = 1..=8`.
const BERNOULLI_OVER_FACTORIAL: [f64; 8] = [
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40_320.0,
    5.0 / 66.0 / 3_628_800.0,
    -691.0 / 2730.0 / 479_001_600.0,
    7.0 / 6.0 / 87_178_291_200.0,
    -3617.0 / 510.0 / 20_922_789_888_000.0,
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZetaKind {
    Zeta,
    ZetaPrime,
    Hurwitz,
}

/// Dispatches to [`zeta`], [`zeta_prime`] or [`hurwitz_zeta`]; `a` is used
/// only for the Hurwitz kind.
pub fn zeta_family(kind: ZetaKind, s: f64, a: f64) -> Result<f64> {
    match kind {
        ZetaKind::Zeta => zeta(s),
        ZetaKind::ZetaPrime => zeta_prime(s),
        ZetaKind::Hurwitz => hurwitz_zeta(s, a),
    }
}

/// `ζ(s, a) − 1/(s − 1)`, finite and continuous at `s = 1`.
pub fn hurwitz_zeta_regularized(s: f64, a: f64) -> f64 {
    assert!(a > 0.0, "Hurwitz parameter must be positive");
    let mut head = 0.0;
    for k in 0..CUTOFF {
        head += (k as f64 + a).powf(-s);
    }
    let big = CUTOFF as f64 + a;
    let l = big.ln();
    let x = (1.0 - s) * l;
    let integral = if x == 0.0 { -l } else { -l * x.exp_m1() / x };
    let mut tail = 0.5 * big.powf(-s);
    let mut poch = s;
    let mut power = big.powf(-s - 1.0);
    let inv_sq = 1.0 / (big * big);
    for (j, coef) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        tail += coef * poch * power;
        let m = 2 * j + 1;
        poch *= (s + m as f64) * (s + m as f64 + 1.0);
        power *= inv_sq;
    }
    head + integral + tail
}

pub fn hurwitz_zeta(s: f64, a: f64) -> Result<f64> {
    if s == 1.0 {
        return Err(Error::PoleAtOne);
    }
    Ok(hurwitz_zeta_regularized(s, a) + 1.0 / (s - 1.0))
}

pub fn zeta(s: f64) -> Result<f64> {
    hurwitz_zeta(s, 1.0)
}

/// `∂/∂s ζ(s, a)` by term-by-term differentiation of the Euler–Maclaurin formula.
pub fn hurwitz_zeta_prime(s: f64, a: f64) -> Result<f64> {
    if s == 1.0 {
        return Err(Error::PoleAtOne);
    }
    let mut head = 0.0;
    for k in 0..CUTOFF {
        let t = k as f64 + a;
        head -= t.ln() * t.powf(-s);
    }
    let big = CUTOFF as f64 + a;
    let l = big.ln();
    let p1 = big.powf(1.0 - s);
    let integral = -l * p1 / (s - 1.0) - p1 / ((s - 1.0) * (s - 1.0));
    let mut tail = -0.5 * l * big.powf(-s);
    let mut poch = s;
    let mut dlog = 1.0 / s;
    let mut power = big.powf(-s - 1.0);
    let inv_sq = 1.0 / (big * big);
    for (j, coef) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        tail += coef * poch * power * (dlog - l);
        let m = (2 * j + 1) as f64;
        poch *= (s + m) * (s + m + 1.0);
        dlog += 1.0 / (s + m) + 1.0 / (s + m + 1.0);
        power *= inv_sq;
    }
    Ok(head + integral + tail)
}

pub fn zeta_prime(s: f64) -> Result<f64> {
    hurwitz_zeta_prime(s, 1.0)
}

/// `L_D(s) = Σ (D/n) n^{−s}` for `D` fundamental or 1.
pub fn dirichlet_l(d: Discriminant, s: f64) -> Result<f64> {
    if !d.is_fundamental {
        return Err(Error::BadDiscriminant(d.value));
    }
    if d.value == 1 {
        return zeta(s);
    }
    let q = d.value.unsigned_abs() as i64;
    let qf = q as f64;
    let mut acc = 0.0;
    for r in 1..=q {
        let chi = kronecker(d.value, r);
        if chi != 0 {
            acc += chi as f64 * hurwitz_zeta_regularized(s, r as f64 / qf);
        }
    }
    Ok(qf.powf(-s) * acc)
}
