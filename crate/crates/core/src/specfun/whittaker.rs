//! Whittaker functions `M_{μ,ν}` and `W_{μ,ν}` of real parameters and
//! positive argument.

use serde::{Deserialize, Serialize};

use super::gamma::ln_gamma;
use super::quad::exp_sinh;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WhittakerArgs {
    pub mu: f64,
    pub nu: f64,
    pub y: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WhittakerKind {
    M,
    W,
}

pub fn whittaker(kind: WhittakerKind, args: WhittakerArgs) -> Result<f64> {
    match kind {
        WhittakerKind::M => whittaker_m(args.mu, args.nu, args.y),
        WhittakerKind::W => whittaker_w(args.mu, args.nu, args.y),
    }
}

/// `W_{μ,ν}(y)` from
/// `y^μ e^{−y/2} Γ(β)^{−1} ∫₀^∞ e^{−w} w^{β−1} (1 + w/y)^{ν+μ−1/2} dw`,
/// `β = ν − μ + 1/2`, using whichever sign of `ν` makes `β` larger.
pub fn whittaker_w(mu: f64, nu: f64, y: f64) -> Result<f64> {
    if !(y > 0.0) {
        return Err(Error::DomainError(format!("Whittaker argument y = {y} must be positive")));
    }
    let nu = nu.abs();
    let beta = nu - mu + 0.5;
    if !(beta > 0.0) {
        return Err(Error::ParameterOutOfRange(format!(
            "W_{{{mu},{nu}}} needs nu - mu + 1/2 > 0"
        )));
    }
    let p = nu + mu - 0.5;
    let integrand = |w: f64| ((beta - 1.0) * w.ln() - w + p * (w / y).ln_1p()).exp();
    let lo = -((60.0 / (beta * std::f64::consts::FRAC_PI_2)).asinh() + 0.5);
    let hi = 4.5;
    let integral = exp_sinh(integrand, lo, hi, 1.0 / 64.0);
    let log_prefactor = mu * y.ln() - 0.5 * y - ln_gamma(beta);
    Ok(log_prefactor.exp() * integral)
}

/// `M_{μ,ν}(y) = e^{−y/2} y^{ν+1/2} ₁F₁(ν − μ + 1/2; 1 + 2ν; y)`.
pub fn whittaker_m(mu: f64, nu: f64, y: f64) -> Result<f64> {
    if !(y > 0.0) {
        return Err(Error::DomainError(format!("Whittaker argument y = {y} must be positive")));
    }
    let b = 1.0 + 2.0 * nu;
    if b <= 0.0 && b == b.floor() {
        return Err(Error::ParameterOutOfRange(format!("1 + 2nu = {b} is a non-positive integer")));
    }
    let a = nu - mu + 0.5;
    let f = hyp1f1(a, b, y);
    Ok(((nu + 0.5) * y.ln() - 0.5 * y).exp() * f)
}

/// Kummer's `₁F₁(a; b; y)` by its power series.
pub fn hyp1f1(a: f64, b: f64, y: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 0.0;
    while k < 5000.0 {
        term *= (a + k) * y / ((b + k) * (k + 1.0));
        sum += term;
        k += 1.0;
        if term.abs() < 1e-17 * sum.abs() && k > y {
            break;
        }
        if term == 0.0 {
            break;
        }
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::bessel::{bessel_i, bessel_k};
    use crate::specfun::gamma::gamma;
    use std::f64::consts::PI;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn w_closed_form_at_degenerate_parameters() {
        let v = whittaker_w(0.25, -0.25, 2.0).unwrap();
        assert!(rel(v, 2f64.powf(0.25) * (-1f64).exp()) < 1e-12);
        // W_{k/2,(k−1)/2}(y) = y^{k/2} e^{−y/2}
        for &k in &[0.5, -0.5, -1.5] {
            for &y in &[0.1, 1.0, 7.0, 60.0] {
                let v = whittaker_w(k / 2.0, (k - 1.0) / 2.0, y).unwrap();
                assert!(rel(v, y.powf(k / 2.0) * (-y / 2.0).exp()) < 1e-11, "k={k} y={y}");
            }
        }
    }

    #[test]
    fn w_reduces_to_k_bessel_at_weight_zero() {
        for &nu in &[0.3, 0.5, 0.8, 1.3, 2.7] {
            for &x in &[0.05, 0.6, 3.0, 25.0, 90.0] {
                let w = whittaker_w(0.0, nu, 2.0 * x).unwrap();
                let k = (2.0 * x / PI).sqrt() * bessel_k(nu, x);
                assert!(rel(w, k) < 1e-10, "nu={nu} x={x}");
            }
        }
    }

    #[test]
    fn w_symmetric_in_nu() {
        let a = whittaker_w(0.25, 0.65, 5.0).unwrap();
        let b = whittaker_w(0.25, -0.65, 5.0).unwrap();
        assert!((a - b).abs() < 1e-10 * a.abs());
        assert!(whittaker_w(2.0, 0.5, 1.0).is_err());
    }

    #[test]
    fn m_reduces_to_i_bessel() {
        let (nu, y) = (0.7, 3.0);
        let m = whittaker_m(0.0, nu, y).unwrap();
        let rhs = 2f64.powf(2.0 * nu) * gamma(nu + 1.0) * y.sqrt() * bessel_i(nu, y / 2.0);
        assert!(rel(m, rhs) < 1e-9);
        for &(nu, y) in &[(0.2, 0.4), (1.1, 12.0), (2.9, 80.0)] {
            let m = whittaker_m(0.0, nu, y).unwrap();
            let rhs = 2f64.powf(2.0 * nu) * gamma(nu + 1.0) * y.sqrt() * bessel_i(nu, y / 2.0);
            assert!(rel(m, rhs) < 1e-9, "nu={nu} y={y}");
        }
    }
}
