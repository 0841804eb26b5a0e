//! Kloosterman sums and the Fourier coefficients `c_{k,m}(n,s)` (integral
//! weight) and `b_{k,m}(n,s)` (half-integral weight, plus space) of
//! Maass–Poincaré series.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::arith::{gcd, kronecker, mod_inverse, zeta, SpfSieve};
use crate::error::{Error, Result};
use crate::specfun::{bessel_i, bessel_j, gamma};
use crate::sum::chunked_sum;

/// Weight of a Poincaré series: an integer or `λ + 1/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weight {
    Integral(i64),
    Half { lambda: i64 },
}

impl Weight {
    pub fn from_f64(k: f64) -> Result<Self> {
        let twice = 2.0 * k;
        if (twice - twice.round()).abs() > 1e-12 {
            return Err(Error::DomainError(format!("weight {k} is not a half-integer")));
        }
        let t = twice.round() as i64;
        if t % 2 == 0 {
            Ok(Weight::Integral(t / 2))
        } else {
            Ok(Weight::Half { lambda: (t - 1) / 2 })
        }
    }

    pub fn value(&self) -> f64 {
        match *self {
            Weight::Integral(k) => k as f64,
            Weight::Half { lambda } => lambda as f64 + 0.5,
        }
    }

    /// `(−1)^λ n ≡ 0, 1 (mod 4)`; always true in integral weight.
    pub fn plus_condition(&self, n: i64) -> bool {
        match *self {
            Weight::Integral(_) => true,
            Weight::Half { lambda } => {
                let v = if lambda % 2 == 0 { n } else { -n };
                matches!(v.rem_euclid(4), 0 | 1)
            }
        }
    }
}

/// `i^j` for an integer exponent.
fn i_pow(j: i64) -> (i32, i32) {
    match j.rem_euclid(4) {
        0 => (1, 0),
        1 => (0, 1),
        2 => (-1, 0),
        _ => (0, -1),
    }
}

/// `e(r/c)` for `r = 0..c`, with `table[c − r] = conj(table[r])` exactly.
pub fn phase_table(c: u64) -> Vec<Complex64> {
    let c = c as usize;
    let mut table = vec![Complex64::new(1.0, 0.0); c];
    const BLOCK: usize = 64;
    let step = 2.0 * PI / c as f64;
    let fine: Vec<Complex64> = (0..BLOCK).map(|j| Complex64::from_polar(1.0, step * j as f64)).collect();
    let half = c / 2;
    let mut r = 0usize;
    while r <= half {
        let coarse = Complex64::from_polar(1.0, step * r as f64);
        for (j, f) in fine.iter().enumerate() {
            let idx = r + j;
            if idx > half {
                break;
            }
            table[idx] = if j == 0 { coarse } else { coarse * f };
        }
        r += BLOCK;
    }
    for r in half + 1..c {
        table[r] = table[c - r].conj();
    }
    if c.is_multiple_of(2) && c > 0 {
        table[half] = Complex64::new(-1.0, 0.0);
    }
    table
}

/// Residue histogram `Σ coef · e(r/c)` collected as Gaussian-integer weights per residue.
struct Histogram {
    re: Vec<i64>,
    im: Vec<i64>,
}

impl Histogram {
    fn new(c: usize) -> Self {
        Self { re: vec![0; c], im: vec![0; c] }
    }

    #[inline]
    fn add(&mut self, r: usize, coef: (i32, i32)) {
        self.re[r] += coef.0 as i64;
        self.im[r] += coef.1 as i64;
    }

    fn evaluate(&self, table: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (r, e) in table.iter().enumerate() {
            let (a, b) = (self.re[r], self.im[r]);
            if a != 0 || b != 0 {
                acc += Complex64::new(a as f64, b as f64) * e;
            }
        }
        acc
    }
}

/// Per-modulus data: inverses of units and, for `4 | c`, the symbols `(c/d)`.
struct UnitTables {
    inv: Vec<u32>,
    kron: Vec<i8>,
}

impl UnitTables {
    fn build(c: u64, sieve: Option<&SpfSieve>, with_kron: bool) -> Self {
        let cu = c as usize;
        let mut inv = vec![0u32; cu.max(1)];
        let mut kron = if with_kron { vec![0i8; cu.max(1)] } else { Vec::new() };
        if c == 1 {
            inv[0] = 0;
            return Self { inv, kron: if with_kron { vec![1] } else { kron } };
        }
        let mut unit = vec![true; cu];
        unit[0] = false;
        let mut rest = c;
        let mut p = 2u64;
        while rest > 1 {
            let q = match sieve {
                Some(sv) if (rest as usize) <= sv.limit() => sv.spf(rest as usize) as u64,
                _ => {
                    while !rest.is_multiple_of(p) && p * p <= rest {
                        p += 1;
                    }
                    if !rest.is_multiple_of(p) {
                        rest
                    } else {
                        p
                    }
                }
            };
            let mut j = q as usize;
            while j < cu {
                unit[j] = false;
                j += q as usize;
            }
            while rest.is_multiple_of(q) {
                rest /= q;
            }
        }
        for d in 1..cu {
            if !unit[d] {
                continue;
            }
            let p = match sieve {
                Some(sv) if d <= sv.limit() && d >= 2 => sv.spf(d),
                _ => d,
            };
            if d == 1 {
                inv[1] = 1;
                if with_kron {
                    kron[1] = 1;
                }
            } else if p == d || sieve.is_none() {
                inv[d] = mod_inverse(d as i64, c as i64).expect("unit") as u32;
                if with_kron {
                    kron[d] = kronecker(c as i64, d as i64) as i8;
                }
            } else {
                let e = d / p;
                inv[d] = ((inv[p] as u64 * inv[e] as u64) % c) as u32;
                if with_kron {
                    kron[d] = kron[p] * kron[e];
                }
            }
        }
        Self { inv, kron }
    }
}

/// Kloosterman sums for one modulus and a row of second indices.
fn kloosterman_row(
    weight: Weight,
    m: i64,
    ns: &[i64],
    c: u64,
    sieve: Option<&SpfSieve>,
) -> Vec<Complex64> {
    let half = matches!(weight, Weight::Half { .. });
    let tables = UnitTables::build(c, sieve, half);
    let phases = phase_table(c);
    let ci = c as i64;
    let eps3 = match weight {
        Weight::Half { lambda } => i_pow(2 * lambda + 1),
        Weight::Integral(_) => (1, 0),
    };
    let mut out = Vec::with_capacity(ns.len());
    for &n in ns {
        let mut hist = Histogram::new(c as usize);
        if c == 1 {
            hist.add(0, (1, 0));
        }
        let mm = m.rem_euclid(ci);
        let nn = n.rem_euclid(ci);
        for d in 1..c as usize {
            let a = tables.inv[d];
            if a == 0 {
                continue;
            }
            let r = ((mm * a as i64 + nn * d as i64) % ci) as usize;
            let coef = if half {
                let k = tables.kron[d] as i32;
                if d % 4 == 1 {
                    (k, 0)
                } else {
                    (k * eps3.0, k * eps3.1)
                }
            } else {
                (1, 0)
            };
            hist.add(r, coef);
        }
        out.push(hist.evaluate(&phases));
    }
    out
}

/// `K(m, n, c) = Σ_{d mod c, (d,c)=1} e((a m + d n)/c)`, `a d ≡ 1 (mod c)`.
pub fn kloosterman_k(m: i64, n: i64, c: u64) -> Complex64 {
    assert!(c >= 1, "modulus must be positive");
    kloosterman_row(Weight::Integral(0), m, &[n], c, None)[0]
}

/// `K̃_k(m, n, c) = Σ (c/d) ε_d^{2k} e((a m + d n)/c)` for `4 | c`.
pub fn kloosterman_ktilde(k: f64, m: i64, n: i64, c: u64) -> Result<Complex64> {
    let w = Weight::from_f64(k)?;
    if !matches!(w, Weight::Half { .. }) {
        return Err(Error::DomainError(format!("weight {k} is not half-integral")));
    }
    if c == 0 || !c.is_multiple_of(4) {
        return Err(Error::BadModulus(c as i64));
    }
    Ok(kloosterman_row(w, m, &[n], c, None)[0])
}

fn euler_phi_sieve(c: u64, sieve: &SpfSieve) -> u64 {
    let mut rest = c as usize;
    let mut phi = c;
    while rest > 1 {
        let p = sieve.spf(rest);
        phi = phi / p as u64 * (p as u64 - 1);
        while rest.is_multiple_of(p) {
            rest /= p;
        }
    }
    phi
}

fn moebius_sieve(n: u64, sieve: &SpfSieve) -> i64 {
    let mut rest = n as usize;
    let mut mu = 1;
    while rest > 1 {
        let p = sieve.spf(rest);
        rest /= p;
        if rest.is_multiple_of(p) {
            return 0;
        }
        mu = -mu;
    }
    mu
}

/// Ramanujan sum `K(0, n, c) = Σ_{d | (c, n)} d μ(c/d)`.
fn ramanujan_sum(n: i64, c: u64, sieve: &SpfSieve) -> f64 {
    if n == 0 {
        return euler_phi_sieve(c, sieve) as f64;
    }
    let g = gcd(n, c as i64) as u64;
    let mut total = 0i64;
    for d in 1..=g {
        if g.is_multiple_of(d) {
            total += d as i64 * moebius_sieve(c / d, sieve);
        }
    }
    total as f64
}

/// `K̃_k(0, 0, c) = (1 + i^{2k})/2 · φ(c) · [c is a square]`.
fn ktilde_zero(lambda: i64, c: u64, sieve: &SpfSieve) -> Complex64 {
    let r = (c as f64).sqrt().round() as u64;
    if r * r != c {
        return Complex64::new(0.0, 0.0);
    }
    let (a, b) = i_pow(2 * lambda + 1);
    let phi = euler_phi_sieve(c, sieve) as f64;
    Complex64::new((1.0 + a as f64) * phi / 2.0, b as f64 * phi / 2.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoeffQuery {
    pub k: f64,
    pub m: i64,
    pub n: i64,
    pub s: f64,
    pub c_max: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoeffResult {
    pub k: f64,
    pub m: i64,
    pub n: i64,
    pub s: f64,
    pub c_max: u64,
    pub value: Complex64,
    /// Magnitude of the summand at `c = c_max`.
    pub last_term: f64,
    /// Trivial-bound estimate of the omitted tail `c > c_max`.
    pub tail_bound: f64,
}

#[derive(Debug, Clone, Copy)]
enum Branch {
    J { pre: f64, root: f64 },
    I { pre: f64, root: f64 },
    Linear { pre: f64 },
    Zero { pre: f64 },
}

impl Branch {
    fn new(k: f64, m: i64, n: i64, s: f64) -> Self {
        let mn = m as f64 * n as f64;
        if m != 0 && n != 0 {
            let pre = mn.abs().powf((1.0 - k) / 2.0);
            let root = 4.0 * PI * mn.abs().sqrt();
            if mn > 0.0 {
                Branch::J { pre, root }
            } else {
                Branch::I { pre, root }
            }
        } else if m + n != 0 {
            let pre = 2f64.powf(k - 1.0)
                * PI.powf(s + k / 2.0 - 1.0)
                * ((m + n).abs() as f64).powf(s - k / 2.0);
            Branch::Linear { pre }
        } else {
            Branch::Zero { pre: 2f64.powf(2.0 * k - 2.0) * PI.powf(k - 1.0) * gamma(2.0 * s) }
        }
    }

    /// Branch factor at modulus `big` (`c` or `4c`).
    fn at(&self, big: f64, s: f64) -> f64 {
        let nu = 2.0 * s - 1.0;
        match *self {
            Branch::J { pre, root } => pre * bessel_j(nu, root / big),
            Branch::I { pre, root } => pre * bessel_i(nu, root / big),
            Branch::Linear { pre } => pre * big.powf(1.0 - 2.0 * s),
            Branch::Zero { pre } => pre * (2.0 * big).powf(1.0 - 2.0 * s),
        }
    }

    /// Constant `A` with `|branch(big)| ≲ A · big^{1−2s}` for large `big`.
    fn decay_constant(&self, s: f64) -> f64 {
        let nu = 2.0 * s - 1.0;
        match *self {
            Branch::J { pre, root } | Branch::I { pre, root } => {
                pre * (root / 2.0).powf(nu) / gamma(nu + 1.0)
            }
            Branch::Linear { pre } => pre,
            Branch::Zero { pre } => pre * 2f64.powf(1.0 - 2.0 * s),
        }
    }
}

fn check_query(w: Weight, m: i64, ns: &[i64], s: f64) -> Result<()> {
    if !(s > 1.0) {
        return Err(Error::ConvergenceRegion { s, bound: 1.0 });
    }
    for &idx in std::iter::once(&m).chain(ns) {
        if !w.plus_condition(idx) {
            return Err(Error::PlusCondition { weight: w.value(), index: idx });
        }
    }
    Ok(())
}

/// Summand of the coefficient series at index `c` (before the `2π i^{−k}` prefactor).
#[allow(clippy::too_many_arguments)]
fn series_terms(
    w: Weight,
    m: i64,
    ns: &[i64],
    branches: &[Branch],
    s: f64,
    c: u64,
    sieve: &SpfSieve,
    out: &mut [Complex64],
) {
    let (big, weight_factor) = match w {
        Weight::Integral(_) => (c, 1.0),
        Weight::Half { .. } => (4 * c, 1.0 + kronecker(4, c as i64) as f64),
    };
    let bigf = big as f64;
    let need_general = ns.iter().any(|&n| m != 0 || n != 0) && !(m == 0 && matches!(w, Weight::Integral(_)));
    let general = if need_general {
        let row: Vec<i64> = ns.to_vec();
        Some(kloosterman_row(w, m, &row, big, Some(sieve)))
    } else {
        None
    };
    for (j, &n) in ns.iter().enumerate() {
        let kl = match w {
            Weight::Integral(_) if m == 0 => Complex64::new(ramanujan_sum(n, c, sieve), 0.0),
            Weight::Integral(_) if n == 0 => Complex64::new(ramanujan_sum(m, c, sieve), 0.0),
            Weight::Half { lambda } if m == 0 && n == 0 => ktilde_zero(lambda, big, sieve),
            _ => general.as_ref().expect("general Kloosterman row")[j],
        };
        out[j] = kl * (weight_factor / bigf * branches[j].at(bigf, s));
    }
}

/// Coefficients `c_{k,m}(n,s)` or `b_{k,m}(n,s)` for every `n` in `ns`,
/// truncated at `c ≤ c_max`.
pub fn coeff_row(k: f64, m: i64, ns: &[i64], s: f64, c_max: u64) -> Result<Vec<CoeffResult>> {
    let w = Weight::from_f64(k)?;
    check_query(w, m, ns, s)?;
    let c_max = c_max.max(1);
    let big_max = match w {
        Weight::Integral(_) => c_max,
        Weight::Half { .. } => 4 * c_max,
    };
    let sieve = SpfSieve::new(big_max as usize + 1);
    let branches: Vec<Branch> = ns.iter().map(|&n| Branch::new(k, m, n, s)).collect();
    let sums = chunked_sum(1, c_max, ns.len(), |c, out| {
        series_terms(w, m, ns, &branches, s, c, &sieve, out)
    });
    let mut last = vec![Complex64::new(0.0, 0.0); ns.len()];
    series_terms(w, m, ns, &branches, s, c_max, &sieve, &mut last);
    let prefactor = Complex64::from_polar(2.0 * PI, -PI * k / 2.0);
    let scale = match w {
        Weight::Integral(_) => 1.0,
        Weight::Half { .. } => 2.0 * 4f64.powf(1.0 - 2.0 * s),
    };
    Ok(ns
        .iter()
        .enumerate()
        .map(|(j, &n)| {
            let cm = c_max as f64;
            let tail = 2.0 * PI * scale * branches[j].decay_constant(s) * cm.powf(2.0 - 2.0 * s)
                / (2.0 * s - 2.0);
            CoeffResult {
                k,
                m,
                n,
                s,
                c_max,
                value: prefactor * sums[j],
                last_term: 2.0 * PI * last[j].norm(),
                tail_bound: tail,
            }
        })
        .collect())
}

/// Upper limit for [`default_c_max`].
pub const DEFAULT_C_MAX_CAP: u64 = 10_000;

/// Smallest `c_max` whose trivial-bound tail estimate is below `tolerance`,
/// clamped to `[100, DEFAULT_C_MAX_CAP]`.
pub fn default_c_max(k: f64, m: i64, n: i64, s: f64, tolerance: f64) -> Result<u64> {
    let w = Weight::from_f64(k)?;
    check_query(w, m, &[n], s)?;
    let scale = match w {
        Weight::Integral(_) => 1.0,
        Weight::Half { .. } => 2.0 * 4f64.powf(1.0 - 2.0 * s),
    };
    let a = 2.0 * PI * scale * Branch::new(k, m, n, s).decay_constant(s) / (2.0 * s - 2.0);
    let c = (a / tolerance).powf(1.0 / (2.0 * s - 2.0));
    Ok(if c.is_finite() { c.ceil().clamp(100.0, DEFAULT_C_MAX_CAP as f64) as u64 } else { DEFAULT_C_MAX_CAP })
}

/// `c_{k,m}(n,s)` for integral `k`.
pub fn coeff_c(q: &CoeffQuery) -> Result<CoeffResult> {
    match Weight::from_f64(q.k)? {
        Weight::Integral(_) => Ok(coeff_row(q.k, q.m, &[q.n], q.s, q.c_max)?[0]),
        Weight::Half { .. } => Err(Error::DomainError(format!("weight {} is not integral", q.k))),
    }
}

/// `b_{k,m}(n,s)` for half-integral `k`.
pub fn coeff_b(q: &CoeffQuery) -> Result<CoeffResult> {
    match Weight::from_f64(q.k)? {
        Weight::Half { .. } => Ok(coeff_row(q.k, q.m, &[q.n], q.s, q.c_max)?[0]),
        Weight::Integral(_) => Err(Error::DomainError(format!("weight {} is not half-integral", q.k))),
    }
}

/// `b_{1/2,0}(0,s) = √π 2^{5/2−6s} Γ(2s) ζ(4s−2)/ζ(4s−1)`.
pub fn b_zero_closed(s: f64) -> Result<f64> {
    if !(s > 0.75) {
        return Err(Error::ConvergenceRegion { s, bound: 0.75 });
    }
    Ok(PI.sqrt() * 2f64.powf(2.5 - 6.0 * s) * gamma(2.0 * s) * zeta(4.0 * s - 2.0)? / zeta(4.0 * s - 1.0)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_k(m: i64, n: i64, c: i64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for d in 0..c {
            if gcd(d, c) != 1 {
                continue;
            }
            let a = mod_inverse(d, c).unwrap();
            let x = (a * m + d * n) as f64 / c as f64;
            acc += Complex64::from_polar(1.0, 2.0 * PI * x);
        }
        acc
    }

    #[test]
    fn small_kloosterman_values() {
        assert!((kloosterman_k(3, 5, 1) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((kloosterman_k(1, 1, 2) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((kloosterman_k(0, 0, 6) - Complex64::new(2.0, 0.0)).norm() < 1e-14);
        for c in 1..40 {
            for m in -5..6 {
                for n in -5..6 {
                    let diff = (kloosterman_k(m, n, c as u64) - brute_k(m, n, c)).norm();
                    assert!(diff < 1e-12, "K({m},{n},{c})");
                }
            }
        }
    }

    #[test]
    fn ktilde_hand_value() {
        let v = kloosterman_ktilde(0.5, 0, 0, 4).unwrap();
        assert!((v - Complex64::new(1.0, 1.0)).norm() < 1e-15);
        assert_eq!(kloosterman_ktilde(0.5, 1, 1, 6), Err(Error::BadModulus(6)));
    }

    #[test]
    fn ktilde_zero_frequency_closed_form() {
        let sieve = SpfSieve::new(1000);
        for lambda in 0..4 {
            let k = lambda as f64 + 0.5;
            for c in (4..=200u64).step_by(4) {
                let direct = kloosterman_ktilde(k, 0, 0, c).unwrap();
                let closed = ktilde_zero(lambda, c, &sieve);
                assert!((direct - closed).norm() < 1e-10, "k={k} c={c}");
                let direct = kloosterman_ktilde(k, c as i64, 2 * c as i64, c).unwrap();
                assert!((direct - closed).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn sieve_tables_match_direct_tables() {
        let sieve = SpfSieve::new(2000);
        for c in [12u64, 97, 360, 1024, 1999, 2000] {
            let w = Weight::Half { lambda: 0 };
            let ns = [-7i64, 0, 3, 8];
            if c % 4 == 0 {
                let a = kloosterman_row(w, 5, &ns, c, Some(&sieve));
                let b = kloosterman_row(w, 5, &ns, c, None);
                for (x, y) in a.iter().zip(&b) {
                    assert!((x - y).norm() < 1e-9);
                }
            }
            let w = Weight::Integral(0);
            let a = kloosterman_row(w, -3, &ns, c, Some(&sieve));
            let b = kloosterman_row(w, -3, &ns, c, None);
            for (x, y) in a.iter().zip(&b) {
                assert!((x - y).norm() < 1e-9);
            }
            for (j, &n) in ns.iter().enumerate() {
                if n == 0 {
                    assert!((a[j].re - ramanujan_sum(-3, c, &sieve)).abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn plus_condition_and_region_errors() {
        let q = CoeffQuery { k: 0.5, m: 2, n: 1, s: 1.3, c_max: 10 };
        assert!(matches!(coeff_b(&q), Err(Error::PlusCondition { .. })));
        let q = CoeffQuery { k: 0.5, m: 1, n: 1, s: 1.0, c_max: 10 };
        assert!(matches!(coeff_b(&q), Err(Error::ConvergenceRegion { .. })));
        let q = CoeffQuery { k: 1.5, m: -1, n: 3, s: 1.3, c_max: 10 };
        assert!(coeff_b(&q).is_ok());
    }

    #[test]
    fn b_zero_closed_examples() {
        let v = b_zero_closed(2.0).unwrap();
        let e = PI.sqrt() * 2f64.powf(-9.5) * 6.0 * zeta(6.0).unwrap() / zeta(7.0).unwrap();
        assert!((v - e).abs() < 1e-15 * e);
        let v = b_zero_closed(1.5).unwrap();
        let e = PI.sqrt() * 2f64.powf(-6.5) * 2.0 * zeta(4.0).unwrap() / zeta(5.0).unwrap();
        assert!((v - e).abs() < 1e-15 * e);
        let mut prev = f64::INFINITY;
        for i in 0..=90 {
            let s = 1.2 + i as f64 * (1.8 / 90.0);
            let v = b_zero_closed(s).unwrap();
            assert!(v < prev);
            prev = v;
        }
    }
}
