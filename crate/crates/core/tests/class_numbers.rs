use std::f64::consts::PI;

use phmf_core::arith::{dirichlet_l, is_fundamental, regulator, Discriminant};
use phmf_core::maass::EvalContext;
use phmf_core::qforms::enumerate_classes;
use phmf_core::traces::{cm_trace, Integrand, TraceSpec};

/// `6 H(n)` from CM points in the closed fundamental domain, weighted 1 inside,
/// 1/2 on an edge and 1/6 at a corner.
fn six_hurwitz_brute(n: i64) -> i64 {
    let mut six = 0;
    let mut a = 1;
    while 3 * a * a <= n {
        for b in -a..=a {
            let num = b * b + n;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a {
                continue;
            }
            let on_side = b.abs() == a;
            let on_arc = c == a;
            six += match (on_side, on_arc) {
                (false, false) => 6,
                (true, true) => 1,
                _ => 3,
            };
        }
        a += 1;
    }
    six
}

#[test]
fn hurwitz_class_numbers_from_cm_traces() {
    let ctx = EvalContext::default();
    for n in 3..=400i64 {
        if !matches!(n % 4, 0 | 3) {
            continue;
        }
        let spec = TraceSpec::new(Integrand::ConstOne, -n, 1).unwrap();
        let v = cm_trace(&spec, &ctx).unwrap().value;
        let six = (6.0 * v).round();
        assert!((6.0 * v - six).abs() < 1e-12, "n={n}: {v}");
        assert_eq!(six as i64, six_hurwitz_brute(n), "n={n}");
    }
}

#[test]
fn small_hurwitz_values() {
    let expected = [(3, 2), (4, 3), (7, 6), (8, 6), (11, 6), (12, 8), (15, 12), (16, 9), (20, 12), (23, 18)];
    for (n, six) in expected {
        assert_eq!(six_hurwitz_brute(n), six, "n={n}");
    }
}

#[test]
fn class_number_formula() {
    for delta in (-500i64..=500).filter(|&d| d != 1 && is_fundamental(d)) {
        let disc = Discriminant::fundamental(delta).unwrap();
        let h = enumerate_classes(disc, true).unwrap().count() as f64;
        let l = dirichlet_l(disc, 1.0).unwrap();
        if delta < 0 {
            let w = match delta {
                -3 => 6.0,
                -4 => 4.0,
                _ => 2.0,
            };
            let predicted = w * (delta.abs() as f64).sqrt() * l / (2.0 * PI);
            assert!((h - predicted).abs() < 1e-8, "Δ={delta}: {h} vs {predicted}");
        } else {
            let predicted = (delta as f64).sqrt() * l / regulator(disc).unwrap();
            assert!((h - predicted).abs() < 1e-8, "Δ={delta}: {h} vs {predicted}");
        }
    }
}
