use phmf_core::arith::{hurwitz_zeta, is_square, pell_fundamental, Discriminant};
use phmf_core::qforms::{enumerate_classes, genus_character, reduce, Automorph, QuadForm};
use proptest::prelude::*;

const TWISTS: [i64; 8] = [-3, -4, -7, -8, 5, 8, 12, 13];

/// `T^{k₁} S T^{k₂} S …` for a short word of exponents.
fn word(exps: &[i64]) -> Automorph {
    let mut m = Automorph { p: 1, q: 0, r: 0, s: 1 };
    for (i, &k) in exps.iter().enumerate() {
        let t = Automorph { p: 1, q: k, r: 0, s: 1 };
        m = mul(&m, &t);
        if i + 1 < exps.len() {
            m = mul(&m, &Automorph { p: 0, q: -1, r: 1, s: 0 });
        }
    }
    m
}

fn mul(a: &Automorph, b: &Automorph) -> Automorph {
    Automorph {
        p: a.p * b.p + a.q * b.r,
        q: a.p * b.q + a.q * b.s,
        r: a.r * b.p + a.s * b.r,
        s: a.r * b.q + a.s * b.s,
    }
}

/// Admissible `(D, d)` with `d ≡ 0, 1 (mod 4)` and `dD` a non-square discriminant.
fn admissible() -> impl Strategy<Value = (i64, i64)> {
    (0usize..TWISTS.len(), -40i64..40).prop_filter_map("admissible", |(i, d)| {
        let big_d = TWISTS[i];
        let delta = d * big_d;
        if d == 0 || !matches!(d.rem_euclid(4), 0 | 1) || (delta > 0 && is_square(delta)) {
            return None;
        }
        Some((big_d, d))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn genus_character_is_a_class_invariant(
        (big_d, d) in admissible(),
        pick in 0usize..64,
        exps in proptest::collection::vec(-3i64..=3, 1..4),
    ) {
        let twist = Discriminant::fundamental(big_d).unwrap();
        let classes = enumerate_classes(Discriminant::new(d * big_d).unwrap(), false).unwrap();
        let q = classes.reps[pick % classes.count()];
        let m = word(&exps);
        prop_assert_eq!(m.p * m.s - m.q * m.r, 1);
        let moved = q.transform(&m);
        prop_assert_eq!(genus_character(q, twist).unwrap(), genus_character(moved, twist).unwrap());
        let sign = big_d.signum() as i32;
        prop_assert_eq!(genus_character(q.neg(), twist).unwrap(), sign * genus_character(q, twist).unwrap());
    }

    #[test]
    fn reduction_is_a_class_invariant(
        delta in prop::sample::select(vec![-23i64, -20, -15, -4, 5, 12, 13, 21, 40, 60]),
        pick in 0usize..16,
        exps in proptest::collection::vec(-3i64..=3, 1..4),
    ) {
        let classes = enumerate_classes(Discriminant::new(delta).unwrap(), false).unwrap();
        let q = classes.reps[pick % classes.count()];
        let moved = q.transform(&word(&exps));
        let r = reduce(moved).unwrap();
        prop_assert_eq!(r.disc(), delta);
        prop_assert_eq!(reduce(r).unwrap(), r);
        let r0 = reduce(q).unwrap();
        if delta < 0 {
            prop_assert_eq!(r, r0);
        }
    }

    #[test]
    fn pell_solution_has_norm_four(delta in 2i64..2000) {
        prop_assume!(matches!(delta % 4, 0 | 1) && !is_square(delta));
        if let Ok(p) = pell_fundamental(Discriminant::new(delta).unwrap()) {
            let (t, u) = (p.t as i128, p.u as i128);
            prop_assert_eq!(t * t - delta as i128 * u * u, 4);
        }
    }

    #[test]
    fn hurwitz_shift(s in 1.1f64..6.0, a in 0.05f64..3.0) {
        let lhs = hurwitz_zeta(s, a).unwrap() - hurwitz_zeta(s, a + 1.0).unwrap();
        let rhs = a.powf(-s);
        prop_assert!((lhs - rhs).abs() < 1e-11 * rhs.max(1.0));
    }
}

#[test]
fn words_generate_nontrivial_forms() {
    let q = QuadForm::new(1, 1, 6);
    let moved = q.transform(&word(&[2, -1, 3]));
    assert_ne!(moved, q);
    assert_eq!(reduce(moved).unwrap(), q);
}
