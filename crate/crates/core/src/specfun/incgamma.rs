//! Upper incomplete gamma function `Γ(s, y) = ∫_y^∞ e^{−t} t^{s−1} dt`.

use super::gamma::gamma;
use crate::arith::EULER_GAMMA;

/// `Γ(s, y)` for real `s` and `y > 0`.
pub fn incomplete_gamma_upper(s: f64, y: f64) -> f64 {
    assert!(y > 0.0, "incomplete gamma needs y > 0");
    if s > 0.0 {
        if y > s + 1.0 {
            return continued_fraction(s, y);
        }
        return gamma(s) - lower_series(s, y);
    }
    if y >= 1.0 {
        return continued_fraction(s, y);
    }
    // s ≤ 0 and y < 1: start from an order in (0, 1] (or 0) and recur down.
    let n = (-s).floor() as i32 + 1;
    let mut a = s + n as f64;
    let mut value = if (a - 1.0).abs() < 1e-15 {
        // s is a non-positive integer: start at a = 0 with E₁(y).
        a = 0.0;
        exp_integral_e1(y)
    } else {
        gamma(a) - lower_series(a, y)
    };
    let ln_y = y.ln();
    while a - s > 0.5 {
        value = (value - ((a - 1.0) * ln_y - y).exp()) / (a - 1.0);
        a -= 1.0;
    }
    value
}

/// Lower incomplete gamma `γ(s, y)` by its power series, `s > 0`.
fn lower_series(s: f64, y: f64) -> f64 {
    let mut term = 1.0 / s;
    let mut sum = term;
    let mut k = 1.0;
    while k < 500.0 {
        term *= y / (s + k);
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
        k += 1.0;
    }
    sum * (s * y.ln() - y).exp()
}

/// Modified Lentz evaluation of the continued fraction for `Γ(s, y)`.
fn continued_fraction(s: f64, y: f64) -> f64 {
    let tiny = 1e-300;
    let mut b = y + 1.0 - s;
    let mut c = 1.0 / tiny;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..1000 {
        let an = -(i as f64) * (i as f64 - s);
        b += 2.0;
        d = an * d + b;
        if d.abs() < tiny {
            d = tiny;
        }
        c = b + an / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    (s * y.ln() - y).exp() * h
}

/// Exponential integral `E₁(y) = Γ(0, y)`.
fn exp_integral_e1(y: f64) -> f64 {
    if y >= 1.0 {
        return continued_fraction(0.0, y);
    }
    let mut sum = 0.0;
    let mut term = 1.0;
    for k in 1..200 {
        let kf = k as f64;
        term *= -y / kf;
        sum += term / kf;
        if term.abs() < 1e-18 {
            break;
        }
    }
    -EULER_GAMMA - y.ln() - sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn closed_forms() {
        for &y in &[0.01, 0.3, 1.0, 2.5, 10.0, 40.0] {
            assert!(rel(incomplete_gamma_upper(1.0, y), (-y).exp()) < 1e-13, "y={y}");
            assert!(rel(incomplete_gamma_upper(2.0, y), (1.0 + y) * (-y).exp()) < 1e-13);
        }
        assert!(rel(incomplete_gamma_upper(2.0, 1.0), 2.0 / std::f64::consts::E) < 1e-14);
        assert!(rel(incomplete_gamma_upper(0.5, 1.0), 0.278_805_585_280_653_7) < 1e-12);
        assert!(rel(incomplete_gamma_upper(0.5, 1.0), PI.sqrt() * 0.157_299_207_050_285_13) < 1e-12);
    }

    #[test]
    fn recurrence_and_negative_orders() {
        // Γ(s+1, y) = s Γ(s, y) + y^s e^{−y}
        for &s in &[-2.5, -1.5, -1.0, -0.5, 0.0, 0.25, 1.5, 3.0] {
            for &y in &[0.05, 0.4, 0.9, 1.7, 6.0, 30.0] {
                let lhs = incomplete_gamma_upper(s + 1.0, y);
                let rhs = s * incomplete_gamma_upper(s, y) + y.powf(s) * (-y).exp();
                assert!(rel(lhs, rhs) < 1e-11, "s={s} y={y}");
            }
        }
        // Γ(0, y) = E₁(y); E₁(1) = 0.21938393439552...
        assert!(rel(incomplete_gamma_upper(0.0, 1.0), 0.219_383_934_395_520_27) < 1e-13);
        assert!(rel(incomplete_gamma_upper(0.0, 0.5), 0.559_773_594_776_160_8) < 1e-13);
    }
}
