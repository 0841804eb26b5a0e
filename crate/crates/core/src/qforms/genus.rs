//! Genus characters `χ_D` on forms of discriminant divisible by `D`.

use super::QuadForm;
use crate::arith::{gcd, kronecker, Discriminant};
use crate::error::{Error, Result};

const SEARCH_RADIUS: i64 = 50;

/// Lattice points of the square spiral, ring by ring, up to `radius`.
pub(crate) fn spiral(radius: i64) -> impl Iterator<Item = (i64, i64)> {
    (1..=radius).flat_map(|k| {
        let top = (-k..k).map(move |x| (x, k));
        let right = (-k + 1..=k).rev().map(move |y| (k, y));
        let bottom = (-k + 1..=k).rev().map(move |x| (x, -k));
        let left = (-k..k).map(move |y| (-k, y));
        top.chain(right).chain(bottom).chain(left)
    })
}

/// `χ_D(Q)`: zero if `gcd(a, b, c, D) > 1`, otherwise `(D/r)` for a value
/// `r` represented by `Q` with `gcd(r, D) = 1`.
pub fn genus_character(q: QuadForm, d: Discriminant) -> Result<i32> {
    let disc = q.disc();
    if d.value == 0 || disc % d.value != 0 || !matches!((disc / d.value).rem_euclid(4), 0 | 1) {
        return Err(Error::NotDivisible { twist: d.value, delta: disc });
    }
    if d.value == 1 {
        return Ok(1);
    }
    if gcd(q.content(), d.value) > 1 {
        return Ok(0);
    }
    for (x, y) in spiral(SEARCH_RADIUS) {
        let r = q.eval(x, y);
        if r != 0 && gcd(r, d.value) == 1 {
            return Ok(kronecker(d.value, r));
        }
    }
    Err(Error::SearchExhausted { a: q.a, b: q.b, c: q.c, twist: d.value })
}

/// The first `count` distinct represented values coprime to `D`, in spiral order.
pub fn represented_coprime_values(q: QuadForm, d: i64, count: usize) -> Vec<i64> {
    let mut out = Vec::new();
    for (x, y) in spiral(SEARCH_RADIUS) {
        let r = q.eval(x, y);
        if r != 0 && gcd(r, d) == 1 && !out.contains(&r) {
            out.push(r);
            if out.len() == count {
                break;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let m4 = Discriminant::fundamental(-4).unwrap();
        assert_eq!(genus_character(QuadForm::new(1, 0, 8), m4), Ok(1));
        assert_eq!(genus_character(QuadForm::new(3, 2, 3), m4), Ok(-1));
        assert_eq!(genus_character(QuadForm::new(2, 0, 4), m4), Ok(0));
        let d5 = Discriminant::fundamental(5).unwrap();
        assert!(matches!(
            genus_character(QuadForm::new(1, 0, 8), d5),
            Err(Error::NotDivisible { .. })
        ));
    }

    #[test]
    fn spiral_covers_box() {
        let pts: Vec<_> = spiral(3).collect();
        assert_eq!(pts.len(), 7 * 7 - 1);
        let set: std::collections::BTreeSet<_> = pts.iter().copied().collect();
        assert_eq!(set.len(), pts.len());
    }
}
