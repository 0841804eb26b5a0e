//! Discriminants and the fundamental solution of `t² − Δu² = 4`.

use serde::{Deserialize, Serialize};

use super::integer::{is_square, is_squarefree, isqrt};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Discriminant {
    pub value: i64,
    pub is_fundamental: bool,
    pub is_square: bool,
}

impl Discriminant {
    pub fn new(value: i64) -> Result<Self> {
        let r = value.rem_euclid(4);
        if r != 0 && r != 1 {
            return Err(Error::BadDiscriminant(value));
        }
        Ok(Self {
            value,
            is_fundamental: is_fundamental(value),
            is_square: is_square(value),
        })
    }

    /// Like [`Discriminant::new`] but additionally requires a fundamental
    /// discriminant or 1.
    pub fn fundamental(value: i64) -> Result<Self> {
        let d = Self::new(value)?;
        if !d.is_fundamental {
            return Err(Error::BadDiscriminant(value));
        }
        Ok(d)
    }
}

pub fn is_fundamental(value: i64) -> bool {
    if value == 1 {
        return true;
    }
    if value == 0 {
        return false;
    }
    match value.rem_euclid(4) {
        1 => is_squarefree(value),
        0 => {
            let m = value / 4;
            let r = m.rem_euclid(4);
            (r == 2 || r == 3) && is_squarefree(m)
        }
        _ => false,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PellSolution {
    pub t: i64,
    pub u: i64,
    pub delta: Discriminant,
}

impl PellSolution {
    /// `log ε` with `ε = (t + u√Δ)/2`.
    pub fn log_epsilon(&self) -> f64 {
        let (t, u, d) = (self.t as f64, self.u as f64, self.delta.value as f64);
        ((t + u * d.sqrt()) / 2.0).ln()
    }
}

/// Minimal positive solution of `t² − Δu² = 4` by the continued fraction of
/// `(σ + √Δ)/2`, `σ = Δ mod 2`.
pub fn pell_fundamental(delta: Discriminant) -> Result<PellSolution> {
    let d = delta.value;
    if d <= 0 || is_square(d) || !matches!(d.rem_euclid(4), 0 | 1) {
        return Err(Error::BadDiscriminant(d));
    }
    let sigma = (d % 2) as i128;
    let dd = d as i128;
    let r = isqrt(d) as i128;
    let (mut p, mut q) = (sigma, 2i128);
    let (mut h_prev, mut h) = (0i128, 1i128);
    let (mut k_prev, mut k) = (1i128, 0i128);
    loop {
        let a = (p + r).div_euclid(q);
        let h_next = a
            .checked_mul(h)
            .and_then(|x| x.checked_add(h_prev))
            .ok_or(Error::Overflow("Pell convergent"))?;
        let k_next = a
            .checked_mul(k)
            .and_then(|x| x.checked_add(k_prev))
            .ok_or(Error::Overflow("Pell convergent"))?;
        h_prev = h;
        k_prev = k;
        h = h_next;
        k = k_next;
        let x = 2 * h - sigma * k;
        let y = k;
        let norm = x
            .checked_mul(x)
            .and_then(|xx| y.checked_mul(y).and_then(|yy| yy.checked_mul(dd)).map(|v| xx - v))
            .ok_or(Error::Overflow("Pell norm"))?;
        if norm == 4 && x > 0 && y > 0 {
            let t = i64::try_from(x).map_err(|_| Error::Overflow("Pell t"))?;
            let u = i64::try_from(y).map_err(|_| Error::Overflow("Pell u"))?;
            return Ok(PellSolution { t, u, delta });
        }
        let p_next = a * q - p;
        let q_next = (dd - p_next * p_next) / q;
        p = p_next;
        q = q_next;
    }
}

/// `log ε` for the minimal solution of `t² − Δu² = 4`, from the complete
/// quotients `(P + √Δ)/Q` of one period of `(σ + √Δ)/2`. Exact integer
/// recurrences keep every `P, Q` below `2√Δ`, so no overflow occurs.
pub fn regulator(delta: Discriminant) -> Result<f64> {
    let d = delta.value;
    if d <= 0 || is_square(d) || !matches!(d.rem_euclid(4), 0 | 1) {
        return Err(Error::BadDiscriminant(d));
    }
    let sd = (d as f64).sqrt();
    let r = isqrt(d);
    let (mut p, mut q) = (d % 2, 2i64);
    let a = (p + r).div_euclid(q);
    p = a * q - p;
    q = (d - p * p) / q;
    let start = (p, q);
    let mut log_sum = 0.0;
    let mut len = 0usize;
    loop {
        log_sum += ((p as f64 + sd) / q as f64).ln();
        len += 1;
        let a = (p + r).div_euclid(q);
        let p_next = a * q - p;
        q = (d - p_next * p_next) / q;
        p = p_next;
        if (p, q) == start {
            break;
        }
    }
    Ok(if len.is_multiple_of(2) { log_sum } else { 2.0 * log_sum })
}

#[cfg(test)]
mod tests {
    use super::*;

    const SEARCH_LIMIT: i128 = 20_000_000;

    /// Smallest `(t, u)` with `u ≤ SEARCH_LIMIT`, if any.
    fn brute_force(d: i64) -> Option<(i64, i64)> {
        let d = d as i128;
        for u in 1i128..=SEARCH_LIMIT {
            let t2 = 4 + d * u * u;
            let mut t = (t2 as f64).sqrt() as i128;
            while t * t > t2 {
                t -= 1;
            }
            while (t + 1) * (t + 1) <= t2 {
                t += 1;
            }
            if t * t == t2 {
                return Some((t as i64, u as i64));
            }
        }
        None
    }

    #[test]
    fn pell_examples() {
        let s = pell_fundamental(Discriminant::new(8).unwrap()).unwrap();
        assert_eq!((s.t, s.u), (6, 2));
        assert!((s.log_epsilon() - (3.0 + 2.0 * 2f64.sqrt()).ln()).abs() < 1e-14);
        let s = pell_fundamental(Discriminant::new(5).unwrap()).unwrap();
        assert_eq!((s.t, s.u), (3, 1));
        let s = pell_fundamental(Discriminant::new(12).unwrap()).unwrap();
        assert_eq!((s.t, s.u), (4, 1));
    }

    #[test]
    fn pell_rejects_bad_input() {
        assert!(pell_fundamental(Discriminant::new(9).unwrap()).is_err());
        assert!(pell_fundamental(Discriminant::new(-3).unwrap()).is_err());
        assert!(Discriminant::new(7).is_err());
    }

    #[test]
    fn pell_matches_exhaustive_search() {
        for d in 5..=200i64 {
            if !matches!(d.rem_euclid(4), 0 | 1) || is_square(d) {
                continue;
            }
            let s = pell_fundamental(Discriminant::new(d).unwrap()).unwrap();
            match brute_force(d) {
                Some(found) => assert_eq!((s.t, s.u), found, "delta = {d}"),
                None => {
                    // Only Δ = 193 needs u beyond the search limit.
                    assert_eq!(d, 193);
                    assert!(s.u as i128 > SEARCH_LIMIT);
                    let (t, u) = (s.t as i128, s.u as i128);
                    assert_eq!(t * t - 193 * u * u, 4);
                }
            }
        }
    }

    #[test]
    fn pell_continued_fraction_reaches_large_discriminants() {
        for d in 201..10_000i64 {
            if !matches!(d.rem_euclid(4), 0 | 1) || is_square(d) {
                continue;
            }
            match pell_fundamental(Discriminant::new(d).unwrap()) {
                Ok(s) => {
                    let (t, u, dd) = (s.t as i128, s.u as i128, d as i128);
                    assert_eq!(t * t - dd * u * u, 4, "delta = {d}");
                }
                Err(e) => assert!(matches!(e, Error::Overflow(_)), "delta = {d}: {e}"),
            }
        }
    }

    #[test]
    fn fundamental_discriminants() {
        let fund: Vec<i64> = (-30..30).filter(|&d| is_fundamental(d)).collect();
        assert_eq!(
            fund,
            vec![-24, -23, -20, -19, -15, -11, -8, -7, -4, -3, 1, 5, 8, 12, 13, 17, 21, 24, 28, 29]
        );
    }

    #[test]
    fn regulator_matches_integer_solution() {
        for d in 2..=300i64 {
            let Ok(disc) = Discriminant::new(d) else { continue };
            if disc.is_square {
                continue;
            }
            let reg = regulator(disc).unwrap();
            match pell_fundamental(disc) {
                Ok(p) => assert!((reg - p.log_epsilon()).abs() < 1e-10 * reg, "Δ={d}"),
                Err(Error::Overflow(_)) => {}
                Err(e) => panic!("{e}"),
            }
        }
        let r = regulator(Discriminant::new(5).unwrap()).unwrap();
        assert!((r - ((3.0 + 5f64.sqrt()) / 2.0).ln()).abs() < 1e-14);
    }
}
