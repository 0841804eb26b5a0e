//! Dedekind eta, Klein's j and Jacobi theta on the upper half plane.

use num_complex::Complex64;
use std::f64::consts::PI;

/// Element `[[a, b], [c, d]]` of `SL₂(ℤ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sl2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Sl2 {
    pub const IDENTITY: Sl2 = Sl2 { a: 1, b: 0, c: 0, d: 1 };

    pub fn apply(&self, z: Complex64) -> Complex64 {
        let num = z * self.a as f64 + self.b as f64;
        let den = z * self.c as f64 + self.d as f64;
        num / den
    }

    pub fn mul(&self, o: &Sl2) -> Sl2 {
        Sl2 {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }
}

/// Moves `z` into the closure of the standard fundamental domain
/// (`|x| ≤ 1/2`, `|z| ≥ 1`) and returns the image together with `γ`, `γz = image`.
pub fn reduce_point(z: Complex64) -> (Complex64, Sl2) {
    assert!(z.im > 0.0, "point must lie in the upper half plane");
    let mut w = z;
    let mut g = Sl2::IDENTITY;
    for _ in 0..10_000 {
        let n = w.re.round();
        if n != 0.0 {
            w.re -= n;
            let t = Sl2 { a: 1, b: -(n as i64), c: 0, d: 1 };
            g = t.mul(&g);
        }
        if w.norm_sqr() < 1.0 - 1e-15 {
            w = -w.inv();
            g = Sl2 { a: 0, b: -1, c: 1, d: 0 }.mul(&g);
        } else {
            break;
        }
    }
    (w, g)
}

/// `η(z) = q^{1/24} ∏ (1 − qⁿ)`, evaluated after reduction to the fundamental
/// domain with the transformation multipliers tracked along the way.
pub fn dedekind_eta(z: Complex64) -> Complex64 {
    assert!(z.im > 0.0, "point must lie in the upper half plane");
    let mut w = z;
    let mut mult = Complex64::new(1.0, 0.0);
    for _ in 0..10_000 {
        let n = w.re.round();
        if n != 0.0 {
            w.re -= n;
            mult *= Complex64::from_polar(1.0, PI * n / 12.0);
        }
        if w.norm_sqr() < 1.0 - 1e-15 {
            // η(w) = η(−1/w) / √(w/i)
            mult /= (w / Complex64::i()).sqrt();
            w = -w.inv();
        } else {
            break;
        }
    }
    mult * eta_series(w)
}

/// Pentagonal-number series for `η`, intended for `Im z` not too small.
pub fn eta_series(z: Complex64) -> Complex64 {
    let q = (Complex64::i() * 2.0 * PI * z).exp();
    let qabs = q.norm();
    let mut sum = Complex64::new(1.0, 0.0);
    let mut k: i64 = 1;
    loop {
        let e1 = (k * (3 * k - 1) / 2) as i32;
        let e2 = (k * (3 * k + 1) / 2) as i32;
        if qabs.powi(e1) < 1e-18 {
            break;
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += (q.powi(e1) + q.powi(e2)) * sign;
        k += 1;
    }
    (Complex64::i() * PI * z / 12.0).exp() * sum
}

/// Normalised Eisenstein series `E₄ = 1 + 240 Σ σ₃(n) qⁿ`.
pub fn eisenstein_e4(z: Complex64) -> Complex64 {
    let q = (Complex64::i() * 2.0 * PI * z).exp();
    let qabs = q.norm();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut qn = Complex64::new(1.0, 0.0);
    let mut n = 1u64;
    loop {
        qn *= q;
        let sigma3: u64 = (1..=n).filter(|d| n.is_multiple_of(*d)).map(|d| d * d * d).sum();
        sum += qn * sigma3 as f64;
        if (sigma3 as f64) * qabs.powi(n as i32) < 1e-20 {
            break;
        }
        n += 1;
        if n > 400 {
            break;
        }
    }
    Complex64::new(1.0, 0.0) + sum * 240.0
}

/// Klein's `j = E₄³ / η²⁴`.
pub fn klein_j(z: Complex64) -> Complex64 {
    let (w, _) = reduce_point(z);
    let e4 = eisenstein_e4(w);
    let eta = eta_series(w);
    e4 * e4 * e4 / eta.powi(24)
}

/// `θ(z) = Σ_{r∈ℤ} q^{r²}`.
pub fn theta(z: Complex64) -> Complex64 {
    assert!(z.im > 0.0, "point must lie in the upper half plane");
    let q = (Complex64::i() * 2.0 * PI * z).exp();
    let qabs = q.norm();
    let mut sum = Complex64::new(1.0, 0.0);
    let mut r = 1i32;
    while qabs.powi(r * r) >= 1e-17 {
        sum += q.powi(r * r) * 2.0;
        r += 1;
    }
    sum
}
