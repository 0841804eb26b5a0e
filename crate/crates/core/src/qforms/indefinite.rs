//! Indefinite forms of non-square discriminant: reduced cycles and automorphs.

use std::collections::BTreeSet;

use super::{Automorph, ClassList, QuadForm};
use crate::arith::{isqrt, pell_fundamental, Discriminant};
use crate::error::{Error, Result};

/// `0 < b < √Δ` and `√Δ − b < 2|a| < √Δ + b`, tested in exact arithmetic.
pub fn is_reduced_indefinite(q: &QuadForm) -> bool {
    let d = q.disc();
    if d <= 0 || q.b <= 0 || q.b * q.b >= d {
        return false;
    }
    let two_a = 2 * q.a.abs();
    let lower = two_a + q.b;
    let upper = two_a - q.b;
    lower * lower > d && (upper <= 0 || upper * upper < d)
}

/// One ρ-step `(a, b, c) ↦ (c, −b + 2ct, a − bt + ct²)`, with `t` chosen so
/// that `b′` lies in the normalising window.
pub fn rho(q: QuadForm) -> QuadForm {
    let d = q.disc();
    let r = isqrt(d);
    let c_abs = q.c.abs();
    let two_c = 2 * c_abs;
    // Window (lo, lo + 2|c|] for the new middle coefficient.
    let lo = if c_abs > r { -c_abs } else { r - two_c };
    let target = lo + 1 + (-q.b - lo - 1).rem_euclid(two_c);
    let t = (target + q.b) / (2 * q.c);
    let b_new = -q.b + 2 * q.c * t;
    debug_assert_eq!(b_new, target);
    QuadForm::new(q.c, b_new, q.a - q.b * t + q.c * t * t)
}

pub(crate) fn reduce_indefinite(q: QuadForm) -> QuadForm {
    let mut f = q;
    while !is_reduced_indefinite(&f) {
        f = rho(f);
    }
    f
}

fn cycle_of(q: QuadForm) -> Vec<QuadForm> {
    let mut out = vec![q];
    let mut f = rho(q);
    while f != q {
        out.push(f);
        f = rho(f);
    }
    out
}

pub(crate) fn enumerate(delta: Discriminant, positive_a_only: bool) -> ClassList {
    let d = delta.value;
    let r = isqrt(d);
    let mut reduced = BTreeSet::new();
    for b in 1..=r {
        if (b - d).rem_euclid(2) != 0 {
            continue;
        }
        let n = (d - b * b) / 4;
        for a in 1..=n {
            if n % a != 0 {
                continue;
            }
            for sa in [a, -a] {
                let q = QuadForm::new(sa, b, -n / sa);
                if is_reduced_indefinite(&q) {
                    reduced.insert(q);
                }
            }
        }
    }
    let mut reps = Vec::new();
    let mut cycle_lengths = Vec::new();
    while let Some(&first) = reduced.iter().next() {
        let cycle = cycle_of(first);
        for f in &cycle {
            reduced.remove(f);
        }
        let rep = if positive_a_only {
            cycle.iter().filter(|f| f.a > 0).min().copied().unwrap_or(first)
        } else {
            *cycle.iter().min().unwrap()
        };
        reps.push((rep, cycle.len()));
    }
    reps.sort();
    cycle_lengths.extend(reps.iter().map(|&(_, l)| l));
    ClassList {
        delta,
        reps: reps.into_iter().map(|(q, _)| q).collect(),
        stab_orders: Vec::new(),
        cycle_lengths,
    }
}

/// Generator `[(t−bu)/2, −cu; au, (t+bu)/2]` of the stabilizer of `Q` in
/// `SL₂(ℤ)`, built from the fundamental Pell solution of the primitive part.
/// It contracts toward `w₊ = (−b + √Δ)/(2a)`.
pub fn automorph(q: QuadForm) -> Result<Automorph> {
    let d = q.disc();
    if d <= 0 || crate::arith::is_square(d) {
        return Err(Error::BadDiscriminant(d));
    }
    let g = q.content();
    let (a, b, c) = (q.a / g, q.b / g, q.c / g);
    let pell = pell_fundamental(Discriminant::new(d / (g * g))?)?;
    let (t, u) = (pell.t, pell.u);
    let m = Automorph {
        p: (t - b * u) / 2,
        q: -c * u,
        r: a * u,
        s: (t + b * u) / 2,
    };
    debug_assert_eq!(m.det(), 1);
    Ok(m)
}
