//! Positive and negative definite forms.

use num_complex::Complex64;

use super::{ClassList, QuadForm};
use crate::arith::Discriminant;

/// Gauss reduction of a positive definite form.
pub(crate) fn gauss_reduce(q: QuadForm) -> QuadForm {
    let (mut a, mut b, mut c) = (q.a, q.b, q.c);
    debug_assert!(a > 0 && q.disc() < 0);
    loop {
        // translate b into (−a, a]
        let two_a = 2 * a;
        let k = (b + a - 1).div_euclid(two_a);
        if k != 0 {
            c = c - b * k + a * k * k;
            b -= two_a * k;
        }
        if c < a {
            std::mem::swap(&mut a, &mut c);
            b = -b;
            continue;
        }
        break;
    }
    if a == c && b < 0 {
        b = -b;
    }
    QuadForm::new(a, b, c)
}

pub(crate) fn is_gauss_reduced(q: &QuadForm) -> bool {
    q.a > 0 && q.b.abs() <= q.a && q.a <= q.c && !((q.b.abs() == q.a || q.a == q.c) && q.b < 0)
}

/// `w_Q ∈ {1, 2, 3}`: half the order of the stabilizer of `Q` in `SL₂(ℤ)`.
pub fn stabilizer_order(q: QuadForm) -> u32 {
    let q = if q.a < 0 { q.neg() } else { q };
    let r = gauss_reduce(q);
    if r.a == r.b && r.b == r.c {
        3
    } else if r.b == 0 && r.a == r.c {
        2
    } else {
        1
    }
}

/// The root `α_Q = (−b + i√|Δ|)/(2a)` of `Q(z, 1)` in the upper half plane.
pub fn cm_point(q: QuadForm) -> Complex64 {
    let d = q.disc();
    assert!(d < 0 && q.a > 0, "CM points need a positive definite form");
    let two_a = 2.0 * q.a as f64;
    Complex64::new(-(q.b as f64) / two_a, ((-d) as f64).sqrt() / two_a)
}

pub(crate) fn enumerate(delta: Discriminant, positive_a_only: bool) -> ClassList {
    let d = delta.value;
    let n = -d;
    let mut reps = Vec::new();
    let mut a = 1i64;
    while 3 * a * a <= n {
        for b in -a + 1..=a {
            if (b - d).rem_euclid(2) != 0 {
                continue;
            }
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            let q = QuadForm::new(a, b, c);
            if is_gauss_reduced(&q) {
                reps.push(q);
            }
        }
        a += 1;
    }
    if !positive_a_only {
        let negs: Vec<QuadForm> = reps.iter().map(QuadForm::neg).collect();
        reps.extend(negs);
    }
    reps.sort();
    let stab_orders = reps.iter().map(|&q| stabilizer_order(q)).collect();
    ClassList { delta, reps, stab_orders, cycle_lengths: Vec::new() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stabilizers_and_cm_points() {
        assert_eq!(stabilizer_order(QuadForm::new(1, 1, 1)), 3);
        assert_eq!(stabilizer_order(QuadForm::new(1, 0, 1)), 2);
        assert_eq!(stabilizer_order(QuadForm::new(1, 0, 8)), 1);
        assert_eq!(stabilizer_order(QuadForm::new(2, 2, 2)), 3);
        assert_eq!(stabilizer_order(QuadForm::new(3, 6, 6)), 2);
        assert_eq!(cm_point(QuadForm::new(1, 0, 1)), Complex64::new(0.0, 1.0));
        let rho = cm_point(QuadForm::new(1, 1, 1));
        assert!((rho - Complex64::new(-0.5, 3f64.sqrt() / 2.0)).norm() < 1e-15);
        let z = cm_point(QuadForm::new(3, 2, 3));
        assert!((z - Complex64::new(-1.0 / 3.0, 2.0 * 2f64.sqrt() / 3.0)).norm() < 1e-15);
    }

    #[test]
    fn gauss_reduction_is_canonical() {
        let r = QuadForm::new(1, 0, 1);
        // act by a few SL2 words and reduce back
        let words = [(2, 1, 1, 1), (5, 3, 3, 2), (1, -4, 0, 1), (7, 2, -4, -1)];
        for (p, q, rr, s) in words {
            let m = super::super::Automorph { p, q, r: rr, s };
            assert_eq!(m.det(), 1);
            assert_eq!(gauss_reduce(r.transform(&m)), r);
            let f = QuadForm::new(3, 2, 3);
            assert_eq!(gauss_reduce(f.transform(&m)), f);
        }
    }
}
