//! Integral binary quadratic forms: reduction, class enumeration,
//! stabilizers, CM points, genus characters and automorphs.

mod definite;
mod genus;
mod indefinite;

pub use definite::{cm_point, stabilizer_order};
pub use genus::{genus_character, represented_coprime_values};
pub use indefinite::{automorph, is_reduced_indefinite, rho};

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, Discriminant};
use crate::error::{Error, Result};

/// The form `aX² + bXY + cY²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuadForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QuadForm {
    pub const fn new(a: i64, b: i64, c: i64) -> Self {
        Self { a, b, c }
    }

    pub fn disc(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn eval(&self, x: i64, y: i64) -> i64 {
        self.a * x * x + self.b * x * y + self.c * y * y
    }

    pub fn content(&self) -> i64 {
        gcd(gcd(self.a, self.b), self.c)
    }

    pub fn neg(&self) -> Self {
        Self::new(-self.a, -self.b, -self.c)
    }

    /// `Q∘M`, i.e. `(x, y) ↦ Q(px + qy, rx + sy)`.
    pub fn transform(&self, m: &Automorph) -> Self {
        let (p, q, r, s) = (m.p, m.q, m.r, m.s);
        let (a, b, c) = (self.a, self.b, self.c);
        Self::new(
            a * p * p + b * p * r + c * r * r,
            2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s,
            a * q * q + b * q * s + c * s * s,
        )
    }

    pub fn as_array(&self) -> [i64; 3] {
        [self.a, self.b, self.c]
    }
}

impl std::fmt::Display for QuadForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// A `2×2` integer matrix `[p, q; r, s]` of determinant one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Automorph {
    pub p: i64,
    pub q: i64,
    pub r: i64,
    pub s: i64,
}

impl Automorph {
    pub fn det(&self) -> i64 {
        self.p * self.s - self.q * self.r
    }

    pub fn inverse(&self) -> Self {
        Self { p: self.s, q: -self.q, r: -self.r, s: self.p }
    }

    /// The Möbius action `z ↦ (pz + q)/(rz + s)`.
    pub fn apply(&self, z: num_complex::Complex64) -> num_complex::Complex64 {
        (z * self.p as f64 + self.q as f64) / (z * self.r as f64 + self.s as f64)
    }
}

/// Complete set of class representatives for one discriminant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassList {
    pub delta: Discriminant,
    pub reps: Vec<QuadForm>,
    /// Stabilizer orders `w_Q`; definite discriminants only.
    pub stab_orders: Vec<u32>,
    /// Number of reduced forms in each cycle; indefinite discriminants only.
    pub cycle_lengths: Vec<usize>,
}

impl ClassList {
    pub fn count(&self) -> usize {
        self.reps.len()
    }

    pub fn record(&self) -> ClassListRecord {
        ClassListRecord {
            delta: self.delta.value,
            reps: self.reps.iter().map(QuadForm::as_array).collect(),
            w: self.stab_orders.clone(),
        }
    }
}

/// Serialized shape of a [`ClassList`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassListRecord {
    pub delta: i64,
    pub reps: Vec<[i64; 3]>,
    pub w: Vec<u32>,
}

/// An equivalent reduced form: Gauss-reduced for `Δ < 0`, a member of the
/// reduced cycle for non-square `Δ > 0`.
pub fn reduce(q: QuadForm) -> Result<QuadForm> {
    let d = q.disc();
    if d == 0 {
        return Err(Error::ZeroDiscriminant);
    }
    if d < 0 {
        if q.a < 0 {
            return Ok(definite::gauss_reduce(q.neg()).neg());
        }
        return Ok(definite::gauss_reduce(q));
    }
    if crate::arith::is_square(d) {
        return Err(Error::SquareDiscriminant(d));
    }
    Ok(indefinite::reduce_indefinite(q))
}

pub fn enumerate_classes(delta: Discriminant, positive_a_only: bool) -> Result<ClassList> {
    let d = delta.value;
    if d == 0 {
        return Err(Error::ZeroDiscriminant);
    }
    if d < 0 {
        return Ok(definite::enumerate(delta, positive_a_only));
    }
    if delta.is_square {
        return Err(Error::BadDiscriminant(d));
    }
    Ok(indefinite::enumerate(delta, positive_a_only))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce(QuadForm::new(1, 0, 1)).unwrap(), QuadForm::new(1, 0, 1));
        assert_eq!(reduce(QuadForm::new(3, -2, 3)).unwrap(), QuadForm::new(3, 2, 3));
        let r = reduce(QuadForm::new(1, 8, 8)).unwrap();
        assert_eq!(r.disc(), 32);
        assert!(is_reduced_indefinite(&r));
        assert_eq!(reduce(QuadForm::new(2, 4, 2)), Err(Error::ZeroDiscriminant));
    }

    #[test]
    fn class_list_examples() {
        let cl = enumerate_classes(Discriminant::new(-32).unwrap(), true).unwrap();
        assert_eq!(
            cl.reps,
            vec![QuadForm::new(1, 0, 8), QuadForm::new(2, 0, 4), QuadForm::new(3, 2, 3)]
        );
        let cl = enumerate_classes(Discriminant::new(-3).unwrap(), true).unwrap();
        assert_eq!(cl.reps, vec![QuadForm::new(1, 1, 1)]);
        assert_eq!(cl.stab_orders, vec![3]);
        let cl = enumerate_classes(Discriminant::new(12).unwrap(), false).unwrap();
        assert_eq!(cl.count(), 2);
        assert!(enumerate_classes(Discriminant::new(9).unwrap(), false).is_err());
        let rec = serde_json::to_string(
            &enumerate_classes(Discriminant::new(-4).unwrap(), true).unwrap().record(),
        )
        .unwrap();
        assert_eq!(rec, r#"{"delta":-4,"reps":[[1,0,1]],"w":[2]}"#);
    }

    #[test]
    fn narrow_class_numbers() {
        for (d, h) in [(5, 1), (8, 1), (12, 2), (13, 1), (17, 1), (21, 2), (24, 2), (60, 4)] {
            let cl = enumerate_classes(Discriminant::new(d).unwrap(), false).unwrap();
            assert_eq!(cl.count(), h, "delta = {d}");
        }
    }
}
