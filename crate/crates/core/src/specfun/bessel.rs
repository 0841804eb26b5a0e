//! Bessel functions `J_ν`, `I_ν`, `K_ν` of real order and positive argument.

use std::f64::consts::PI;

use super::gamma::rgamma;
use super::quad::GaussLegendre;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BesselKind {
    J,
    I,
    K,
}

pub fn bessel(kind: BesselKind, nu: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::DomainError(format!("Bessel argument x = {x} must be positive")));
    }
    Ok(match kind {
        BesselKind::J => bessel_j(nu, x),
        BesselKind::I => bessel_i(nu, x),
        BesselKind::K => bessel_k(nu, x),
    })
}

/// Ascending series `Σ (±1)^k (x/2)^{2k+ν} / (k! Γ(k+ν+1))`.
fn ascending_series(nu: f64, x: f64, alternating: bool) -> f64 {
    let half = 0.5 * x;
    let mut term = half.powf(nu) * rgamma(nu + 1.0);
    if term == 0.0 {
        return 0.0;
    }
    let q = if alternating { -half * half } else { half * half };
    let mut sum = term;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= q / (k * (k + nu));
        sum += term;
        if term.abs() < 1e-17 * sum.abs() && k > half {
            break;
        }
        if k > 2000.0 {
            break;
        }
    }
    sum
}

pub fn bessel_i(nu: f64, x: f64) -> f64 {
    if x > 30.0 * nu.max(1.0) {
        let mu = 4.0 * nu * nu;
        let mut term = 1.0;
        let mut sum = 1.0;
        let mut k: f64 = 1.0;
        loop {
            let next = -term * (mu - (2.0 * k - 1.0).powi(2)) / (k * 8.0 * x);
            if next.abs() >= term.abs() || next == 0.0 {
                break;
            }
            term = next;
            sum += term;
            if term.abs() < 1e-17 * sum.abs() {
                break;
            }
            k += 1.0;
        }
        return x.exp() / (2.0 * PI * x).sqrt() * sum;
    }
    ascending_series(nu, x, false)
}

pub fn bessel_j(nu: f64, x: f64) -> f64 {
    if x <= 12.0 {
        return ascending_series(nu, x, true);
    }
    // Schläfli's integral representation.
    let rule = GaussLegendre::order32();
    let panels = ((x / 2.0).ceil() as usize).max(4) + (nu.ceil() as usize);
    let oscill = rule.integrate(|t| (nu * t - x * t.sin()).cos(), 0.0, PI, panels) / PI;
    let sin_nu = (nu * PI).sin();
    if sin_nu.abs() < 1e-300 || nu == nu.floor() {
        return oscill;
    }
    let t_max = (45.0 / x).asinh().max(1e-3) * 1.5;
    let tail = rule.integrate(|t| (-x * t.sinh() - nu * t).exp(), 0.0, t_max, 4);
    oscill - sin_nu / PI * tail
}

/// `e^x K_ν(x)`.
pub fn bessel_k_scaled(nu: f64, x: f64) -> f64 {
    let nu = nu.abs();
    let h = (0.5 / (x + nu).sqrt()).min(0.25);
    let mut sum = 0.5;
    let mut t = 0.0;
    loop {
        t += h;
        let arg = -x * (t.cosh() - 1.0) + nu * t;
        let v = arg.exp() * 0.5 * (1.0 + (-2.0 * nu * t).exp());
        sum += v;
        if arg < -45.0 && x * t.sinh() > nu {
            break;
        }
    }
    sum * h
}

pub fn bessel_k(nu: f64, x: f64) -> f64 {
    bessel_k_scaled(nu, x) * (-x).exp()
}

/// `I_ν(x)` by its ascending series; exposed for reference checks.
pub fn bessel_i_series(nu: f64, x: f64) -> f64 {
    ascending_series(nu, x, false)
}

/// `J_ν(x)` by its ascending series; exposed for reference checks.
pub fn bessel_j_series(nu: f64, x: f64) -> f64 {
    ascending_series(nu, x, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn half_order_closed_forms() {
        for &x in &[0.1, 0.7, 2.0, 5.0, 13.0, 29.0, 45.0] {
            let i = bessel_i(0.5, x);
            let k = bessel_k(0.5, x);
            let j = bessel_j(0.5, x);
            assert!(rel(i, (2.0 / (PI * x)).sqrt() * x.sinh()) < 1e-12, "I x={x}");
            assert!(rel(k, (PI / (2.0 * x)).sqrt() * (-x).exp()) < 1e-12, "K x={x}");
            let jc = (2.0 / (PI * x)).sqrt() * x.sin();
            assert!((j - jc).abs() < 1e-12, "J x={x}");
        }
        assert!(rel(bessel_i(0.5, 2.0), 2f64.sinh() / PI.sqrt()) < 1e-13);
        assert!(rel(bessel_k(0.5, 2.0), (PI / 4.0).sqrt() * (-2f64).exp()) < 1e-13);
        assert!(bessel_j(1.0, 1e-12).abs() < 1e-12);
        assert!(bessel(BesselKind::J, 1.0, 0.0).is_err());
    }

    #[test]
    fn integer_order_reference_values() {
        assert!(rel(bessel_j(0.0, 1.0), 0.765_197_686_557_966_6) < 1e-13);
        assert!(rel(bessel_j(1.0, 20.0), 0.066_833_124_175_850_04) < 1e-10);
        assert!(rel(bessel_i(0.0, 1.0), 1.266_065_877_752_008_4) < 1e-13);
        assert!(rel(bessel_k(0.0, 1.0), 0.421_024_438_240_708_3) < 1e-12);
        assert!(rel(bessel_k(1.0, 0.01), 99.973_894_118_184_8) < 1e-10);
    }

    #[test]
    fn recurrences_in_order() {
        for &nu in &[0.3, 1.0, 1.7, 2.5, 4.0, 8.6] {
            for &x in &[0.4, 1.9, 7.5, 11.9, 12.1, 18.0, 33.0, 49.0] {
                let (a, b, c) = (bessel_j(nu, x), bessel_j(nu + 1.0, x), bessel_j(nu + 2.0, x));
                let lhs = a + c;
                let rhs = 2.0 * (nu + 1.0) / x * b;
                assert!((lhs - rhs).abs() < 1e-9 * (1.0 + rhs.abs()), "J nu={nu} x={x}");
                let (a, b, c) = (bessel_i(nu, x), bessel_i(nu + 1.0, x), bessel_i(nu + 2.0, x));
                let lhs = a - c;
                let rhs = 2.0 * (nu + 1.0) / x * b;
                assert!((lhs - rhs).abs() < 1e-9 * rhs.abs(), "I nu={nu} x={x}");
                let (a, b, c) = (bessel_k(nu, x), bessel_k(nu + 1.0, x), bessel_k(nu + 2.0, x));
                let lhs = c - a;
                let rhs = 2.0 * (nu + 1.0) / x * b;
                assert!((lhs - rhs).abs() < 1e-9 * rhs.abs(), "K nu={nu} x={x}");
            }
        }
    }

    #[test]
    fn j_routes_agree_at_switch() {
        for &nu in &[0.0, 0.5, 1.3, 3.0, 7.2] {
            for &x in &[12.5, 14.0, 16.0] {
                let a = bessel_j(nu, x);
                let b = bessel_j_series(nu, x);
                assert!((a - b).abs() < 1e-10, "nu={nu} x={x}");
            }
        }
    }
}
