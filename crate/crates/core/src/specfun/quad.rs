//! Gauss–Legendre rules and double-exponential quadrature.

use std::sync::OnceLock;

#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// `n`-point rule on `[−1, 1]`, nodes found by Newton iteration.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    /// Shared 64-point rule.
    pub fn order64() -> &'static GaussLegendre {
        static RULE: OnceLock<GaussLegendre> = OnceLock::new();
        RULE.get_or_init(|| GaussLegendre::new(64))
    }

    /// Shared 32-point rule.
    pub fn order32() -> &'static GaussLegendre {
        static RULE: OnceLock<GaussLegendre> = OnceLock::new();
        RULE.get_or_init(|| GaussLegendre::new(32))
    }

    /// Nodes and weights mapped to `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + half * x, half * w))
    }

    /// Composite rule over `panels` equal panels of `[a, b]`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F, a: f64, b: f64, panels: usize) -> f64 {
        let panels = panels.max(1);
        let width = (b - a) / panels as f64;
        let mut total = 0.0;
        for p in 0..panels {
            let lo = a + width * p as f64;
            let hi = if p + 1 == panels { b } else { lo + width };
            let mut part = 0.0;
            for (x, w) in self.mapped(lo, hi) {
                part += w * f(x);
            }
            total += part;
        }
        total
    }
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p, d)
}

/// `∫₀^∞ f(w) dw` by the exp-sinh substitution `w = exp(π/2 · sinh t)` and
/// the trapezoid rule on `[t_lo, t_hi]` with step `h`.
pub fn exp_sinh<F: FnMut(f64) -> f64>(mut f: F, t_lo: f64, t_hi: f64, h: f64) -> f64 {
    let half_pi = std::f64::consts::FRAC_PI_2;
    let steps = ((t_hi - t_lo) / h).ceil() as usize;
    let mut total = 0.0;
    for i in 0..=steps {
        let t = t_lo + h * i as f64;
        let w = (half_pi * t.sinh()).exp();
        if w == 0.0 || !w.is_finite() {
            continue;
        }
        let v = f(w);
        if v != 0.0 {
            total += v * w * half_pi * t.cosh();
        }
    }
    total * h
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        let rule = GaussLegendre::new(16);
        for deg in 0..32 {
            let approx = rule.integrate(|x| x.powi(deg), 0.0, 1.0, 1);
            assert!((approx - 1.0 / (deg as f64 + 1.0)).abs() < 1e-14, "degree {deg}");
        }
        let w: f64 = GaussLegendre::order64().weights.iter().sum();
        assert!((w - 2.0).abs() < 1e-13);
    }

    #[test]
    fn exp_sinh_handles_endpoint_singularity() {
        // ∫₀^∞ w^{-1/2} e^{-w} dw = √π
        let v = exp_sinh(|w| w.powf(-0.5) * (-w).exp(), -6.0, 4.0, 1.0 / 32.0);
        assert!((v - std::f64::consts::PI.sqrt()).abs() < 1e-13);
    }
}
