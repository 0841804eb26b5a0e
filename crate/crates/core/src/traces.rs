//! Twisted traces of modular functions over CM points (`dD < 0`) and over
//! closed geodesics (`dD > 0`, non-square), modified traces of `G_m`, and the
//! divisor-sum identity tying them to half-integral weight coefficients.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::arith::{divisors_moebius, kronecker, Discriminant};
use crate::error::{Error, Result};
use crate::kloosterman::coeff_row;
use crate::maass::{klf_value, EvalContext, ModularPoint, NieburSeries};
use crate::qforms::{automorph, cm_point, enumerate_classes, genus_character, Automorph, QuadForm};
use crate::specfun::{gamma, klein_j, GaussLegendre};
use crate::sum::ordered_map;

/// Largest `u`-panel width for geodesic quadrature.
const PANEL: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Integrand {
    ConstOne,
    JMinus744,
    Klf,
    Niebur { m: i64, s: f64 },
}

impl Integrand {
    pub fn name(&self) -> &'static str {
        match self {
            Integrand::ConstOne => "const_one",
            Integrand::JMinus744 => "j_minus_744",
            Integrand::Klf => "klf",
            Integrand::Niebur { .. } => "niebur",
        }
    }

    pub fn s(&self) -> Option<f64> {
        match *self {
            Integrand::Niebur { s, .. } => Some(s),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceSpec {
    pub integrand: Integrand,
    pub d: i64,
    pub big_d: Discriminant,
}

impl TraceSpec {
    pub fn new(integrand: Integrand, d: i64, big_d: i64) -> Result<Self> {
        let big_d = Discriminant::fundamental(big_d)?;
        let delta = d.checked_mul(big_d.value).ok_or(Error::Overflow("d·D"))?;
        if delta == 0 {
            return Err(Error::ZeroDiscriminant);
        }
        Discriminant::new(d)?;
        Discriminant::new(delta)?;
        if let Integrand::Niebur { s, .. } = integrand {
            if !(s > 1.0) {
                return Err(Error::ConvergenceRegion { s, bound: 1.0 });
            }
        }
        Ok(Self { integrand, d, big_d })
    }

    pub fn delta(&self) -> i64 {
        self.d * self.big_d.value
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceResult {
    pub f: &'static str,
    pub d: i64,
    #[serde(rename = "D")]
    pub big_d: i64,
    pub s: Option<f64>,
    pub value: f64,
    pub classes: usize,
    /// Contribution of each class, genus character and weight included.
    pub per_class: Vec<f64>,
}

enum Prepared {
    One,
    J,
    Klf,
    Niebur(Box<NieburSeries>),
}

impl Prepared {
    fn new(f: Integrand, ctx: &EvalContext) -> Result<Self> {
        Ok(match f {
            Integrand::ConstOne => Prepared::One,
            Integrand::JMinus744 => Prepared::J,
            Integrand::Klf => Prepared::Klf,
            Integrand::Niebur { m, s } => Prepared::Niebur(Box::new(NieburSeries::new(m, s, ctx)?)),
        })
    }

    fn eval(&self, z: ModularPoint) -> Complex64 {
        match self {
            Prepared::One => Complex64::new(1.0, 0.0),
            Prepared::J => klein_j(z.z()) - 744.0,
            Prepared::Klf => Complex64::new(klf_value(z), 0.0),
            Prepared::Niebur(g) => g.eval(z),
        }
    }
}

fn finish(spec: &TraceSpec, parts: Vec<Complex64>) -> Result<TraceResult> {
    let total: Complex64 = parts.iter().sum();
    let scale = total.norm().max(1.0);
    if total.im.abs() > 1e-6 * scale {
        return Err(Error::DomainError(format!("trace has imaginary part {}", total.im)));
    }
    Ok(TraceResult {
        f: spec.integrand.name(),
        d: spec.d,
        big_d: spec.big_d.value,
        s: spec.integrand.s(),
        value: total.re,
        classes: parts.len(),
        per_class: parts.iter().map(|p| p.re).collect(),
    })
}

/// `Σ_{Q ∈ Q⁺_{dD}/SL₂(ℤ)} χ_D(Q) f(α_Q) / w_Q`.
pub fn cm_trace(spec: &TraceSpec, ctx: &EvalContext) -> Result<TraceResult> {
    let delta = spec.delta();
    if delta >= 0 {
        return Err(Error::BadDiscriminant(delta));
    }
    let classes = enumerate_classes(Discriminant::new(delta)?, true)?;
    let f = Prepared::new(spec.integrand, ctx)?;
    let mut parts = Vec::with_capacity(classes.count());
    for (q, &w) in classes.reps.iter().zip(&classes.stab_orders) {
        let chi = genus_character(*q, spec.big_d)?;
        if chi == 0 {
            parts.push(Complex64::new(0.0, 0.0));
            continue;
        }
        let z = ModularPoint::from_complex(cm_point(*q))?;
        parts.push(f.eval(z) * (chi as f64 / w as f64));
    }
    finish(spec, parts)
}

/// One period of the closed geodesic `S_Q`, parametrised by hyperbolic arc
/// length `u` through `z(u) = c − R tanh u + iR sech u`, so that the measure
/// `√Δ dz/Q(z,1)` becomes `du`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicCycle {
    pub form: QuadForm,
    pub center: f64,
    pub radius: f64,
    pub theta0: f64,
    pub theta1: f64,
    pub automorph: Automorph,
    /// Hyperbolic length `2 log ε` of one period.
    pub length: f64,
}

impl GeodesicCycle {
    pub fn new(q: QuadForm) -> Result<Self> {
        let delta = q.disc();
        if delta <= 0 {
            return Err(Error::BadDiscriminant(delta));
        }
        if crate::arith::is_square(delta) {
            return Err(Error::SquareDiscriminant(delta));
        }
        let m = automorph(q)?;
        let t = (m.p + m.s).abs() as f64;
        let length = 2.0 * ((t + (t * t - 4.0).sqrt()) / 2.0).ln();
        let sd = (delta as f64).sqrt();
        let center = -(q.b as f64) / (2.0 * q.a as f64);
        let radius = sd / (2.0 * q.a.abs() as f64);
        let theta_of = |u: f64| 2.0 * u.exp().atan();
        Ok(Self {
            form: q,
            center,
            radius,
            theta0: theta_of(-length / 2.0),
            theta1: theta_of(length / 2.0),
            automorph: m,
            length,
        })
    }

    /// The point at arc parameter `u`, with the real part computed from the
    /// nearer endpoint of the semicircle.
    pub fn point(&self, u: f64) -> ModularPoint {
        let (c, r) = (self.center, self.radius);
        let x = if u >= 0.0 {
            (c - r) + 2.0 * r / (1.0 + (2.0 * u).exp())
        } else {
            (c + r) - 2.0 * r / (1.0 + (-2.0 * u).exp())
        };
        ModularPoint { x, y: r / u.cosh() }
    }

    pub fn point_at_theta(&self, theta: f64) -> ModularPoint {
        self.point((theta / 2.0).tan().ln())
    }

    /// `∫ f(z(u)) du` over `u ∈ [−L/2, L/2]`.
    pub fn integrate<F: Fn(ModularPoint) -> Complex64>(&self, f: F, order: usize) -> Complex64 {
        let owned;
        let rule = match order {
            64 => GaussLegendre::order64(),
            32 => GaussLegendre::order32(),
            n => {
                owned = GaussLegendre::new(n);
                &owned
            }
        };
        let panels = (self.length / PANEL).ceil().max(1.0) as usize;
        let width = self.length / panels as f64;
        let mut total = Complex64::new(0.0, 0.0);
        for p in 0..panels {
            let lo = -self.length / 2.0 + width * p as f64;
            let mut part = Complex64::new(0.0, 0.0);
            for (u, w) in rule.mapped(lo, lo + width) {
                part += f(self.point(u)) * w;
            }
            total += part;
        }
        total
    }
}

impl GeodesicCycle {
    /// Arc parameter of a point of `S_Q`.
    pub fn arc_parameter(&self, z: Complex64) -> f64 {
        let theta = z.im.atan2(z.re - self.center);
        (theta / 2.0).tan().ln()
    }

    /// `∫_{z₀}^{g z₀} f √Δ dz/Q(z,1)` along `S_Q` from `z₀ = z(−L/2)`, for `g` the
    /// automorph or its inverse.
    pub fn signed_integral<F: Fn(ModularPoint) -> Complex64>(&self, f: F, order: usize, g: &Automorph) -> Complex64 {
        let z0 = self.point(-self.length / 2.0).z();
        let u1 = self.arc_parameter(g.apply(z0));
        let direction = if u1 > -self.length / 2.0 { 1.0 } else { -1.0 };
        self.integrate(f, order) * (direction * self.form.a.signum() as f64)
    }

    /// The generator of `SL₂(ℤ)_Q` moving along `S_Q` counter-clockwise for
    /// `a > 0` and clockwise for `a < 0`.
    pub fn oriented_automorph(&self) -> Automorph {
        let z0 = self.point(0.0).z();
        let ccw = self.arc_parameter(self.automorph.apply(z0)) > 0.0;
        if ccw == (self.form.a > 0) {
            self.automorph
        } else {
            self.automorph.inverse()
        }
    }
}

/// `(1/2π) Σ_Q χ_D(Q) ∫_{SL₂(ℤ)_Q \ S_Q} f(z) √(dD) dz/Q(z,1)`.
pub fn cycle_trace(spec: &TraceSpec, ctx: &EvalContext) -> Result<TraceResult> {
    let delta = spec.delta();
    if delta <= 0 {
        return Err(Error::BadDiscriminant(delta));
    }
    if crate::arith::is_square(delta) {
        return Err(Error::SquareDiscriminant(delta));
    }
    let classes = enumerate_classes(Discriminant::new(delta)?, false)?;
    let f = Prepared::new(spec.integrand, ctx)?;
    let chis = classes
        .reps
        .iter()
        .map(|q| genus_character(*q, spec.big_d))
        .collect::<Result<Vec<i32>>>()?;
    let items: Vec<(QuadForm, i32)> = classes.reps.iter().copied().zip(chis).collect();
    let parts = ordered_map(&items, |&(q, chi)| -> Result<Complex64> {
        if chi == 0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let cyc = GeodesicCycle::new(q)?;
        Ok(cyc.integrate(|z| f.eval(z), ctx.quad_order) * (chi as f64 / (2.0 * PI)))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    finish(spec, parts)
}

/// CM or cycle trace according to the sign of `dD`.
pub fn trace(spec: &TraceSpec, ctx: &EvalContext) -> Result<TraceResult> {
    if spec.delta() < 0 {
        cm_trace(spec, ctx)
    } else {
        cycle_trace(spec, ctx)
    }
}

/// `B(s) = 2^s Γ(s/2)² / (2π Γ(s))`.
pub fn b_factor(s: f64) -> f64 {
    2f64.powf(s) * gamma(s / 2.0).powi(2) / (2.0 * PI * gamma(s))
}

/// `Tr~_{d,D}(G_m(·,s))`: the plain trace for `dD < 0`, `B(s)^{−1}` times the
/// cycle trace for non-square `dD > 0`.
pub fn modified_trace(m: i64, d: i64, big_d: i64, s: f64, ctx: &EvalContext) -> Result<f64> {
    if d < 0 && big_d < 0 {
        return Err(Error::Unsupported("modified traces with d < 0 and D < 0".into()));
    }
    let spec = TraceSpec::new(Integrand::Niebur { m, s }, d, big_d)?;
    if spec.delta() < 0 {
        Ok(cm_trace(&spec, ctx)?.value)
    } else {
        Ok(cycle_trace(&spec, ctx)?.value / b_factor(s))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KeyIdentityReport {
    pub m: i64,
    pub d: i64,
    #[serde(rename = "D")]
    pub big_d: i64,
    pub s: f64,
    /// `b_{1/2,d}(m²D, s/2+1/4)` from the Kloosterman–Bessel series.
    pub lhs: f64,
    /// The Möbius combination of modified traces.
    pub rhs: f64,
    pub diff: f64,
    pub coeff_c_max: u64,
}

/// Compares `b_{1/2,d}(m²D, s/2+1/4)` with
/// `Σ_{n|m} μ(n)(D/n) Tr~_{d,D}(G_{m/n})` for `m ≠ 0`, and with
/// `2^{1−s} π^{(s+1)/2} |D|^{−s/2} L_D(s)^{−1} Tr~_{d,D}(G₀)` for `m = 0`.
/// The coefficient series is truncated at `coeff_c_max`.
pub fn verify_key_identity(
    m: i64,
    d: i64,
    big_d: i64,
    s: f64,
    ctx: &EvalContext,
    coeff_c_max: u64,
) -> Result<KeyIdentityReport> {
    if !(s > 1.5) {
        return Err(Error::ConvergenceRegion { s, bound: 1.5 });
    }
    let dd = Discriminant::fundamental(big_d)?;
    if m < 0 {
        return Err(Error::ParameterOutOfRange(format!("m = {m} must be non-negative")));
    }
    let sp = s / 2.0 + 0.25;
    let n_index = m * m * big_d;
    let lhs = coeff_row(0.5, d, &[n_index], sp, coeff_c_max)?[0].value;
    if lhs.im.abs() > 1e-8 * lhs.norm().max(1.0) {
        return Err(Error::DomainError(format!("coefficient has imaginary part {}", lhs.im)));
    }
    let rhs = if m == 0 {
        let l = crate::arith::dirichlet_l(dd, s)?;
        2f64.powf(1.0 - s) * PI.powf((s + 1.0) / 2.0) * (big_d.abs() as f64).powf(-s / 2.0) / l
            * modified_trace(0, d, big_d, s, ctx)?
    } else {
        let mut acc = 0.0;
        for (n, mu) in divisors_moebius(m as u64) {
            if mu == 0 {
                continue;
            }
            let chi = kronecker(big_d, n as i64);
            if chi == 0 {
                continue;
            }
            acc += (mu * chi) as f64 * modified_trace(m / n as i64, d, big_d, s, ctx)?;
        }
        acc
    };
    Ok(KeyIdentityReport {
        m,
        d,
        big_d,
        s,
        lhs: lhs.re,
        rhs,
        diff: (lhs.re - rhs).abs(),
        coeff_c_max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> EvalContext {
        EvalContext::default()
    }

    #[test]
    fn cm_examples() {
        let r = cm_trace(&TraceSpec::new(Integrand::ConstOne, -3, 1).unwrap(), &ctx()).unwrap();
        assert!((r.value - 1.0 / 3.0).abs() < 1e-15);
        let r = cm_trace(&TraceSpec::new(Integrand::JMinus744, -4, 1).unwrap(), &ctx()).unwrap();
        assert!((r.value - 492.0).abs() < 1e-8);
        let r = cm_trace(&TraceSpec::new(Integrand::Klf, 8, -4).unwrap(), &ctx()).unwrap();
        assert!((r.value - (1.0 + 2f64.sqrt()).ln()).abs() < 1e-12, "{}", r.value);
    }

    #[test]
    fn geodesic_cycle_geometry() {
        for q in [QuadForm::new(1, 0, -2), QuadForm::new(-1, 1, 1), QuadForm::new(2, 3, -1), QuadForm::new(-3, 4, 2)] {
            let g = GeodesicCycle::new(q).unwrap();
            let z0 = g.point_at_theta(g.theta0).z();
            let z1 = g.point_at_theta(g.theta1).z();
            let a = g.automorph.apply(z0);
            let b = g.automorph.inverse().apply(z0);
            let hit = (a - z1).norm().min((b - z1).norm());
            assert!(hit < 1e-12 * z1.norm(), "{q}: {hit}");
            // points satisfy a|z|² + b x + c = 0
            for u in [-0.7, 0.0, 0.4] {
                let p = g.point(u);
                let v = q.a as f64 * p.z().norm_sqr() + q.b as f64 * p.x + q.c as f64;
                assert!(v.abs() < 1e-12);
            }
            // f = 1 integrates to the length 2 log ε
            let len = g.integrate(|_| Complex64::new(1.0, 0.0), 64);
            assert!((len.re - g.length).abs() < 1e-12);
        }
    }

    #[test]
    fn orientation() {
        for q in [QuadForm::new(1, 0, -2), QuadForm::new(-1, 1, 1), QuadForm::new(2, 3, -1), QuadForm::new(-3, 4, 2)] {
            let g = GeodesicCycle::new(q).unwrap();
            let one = |_: ModularPoint| Complex64::new(1.0, 0.0);
            let m = g.oriented_automorph();
            let fwd = g.signed_integral(one, 64, &m);
            let back = g.signed_integral(one, 64, &m.inverse());
            assert!((fwd.re - g.length).abs() < 1e-12);
            assert!((back.re + g.length).abs() < 1e-12);
        }
    }

    #[test]
    fn measure_identity() {
        // √Δ dz/Q(z,1) = du along the cycle
        let q = QuadForm::new(2, 3, -1);
        let g = GeodesicCycle::new(q).unwrap();
        let sd = (q.disc() as f64).sqrt();
        for u in [-0.5, 0.1, 0.8] {
            let h = 1e-6;
            let dz = (g.point(u + h).z() - g.point(u - h).z()) / (2.0 * h);
            let z = g.point(u).z();
            let qz = z * z * q.a as f64 + z * q.b as f64 + q.c as f64;
            let ratio = dz * sd / qz;
            assert!((ratio - 1.0).norm() < 1e-8, "{ratio}");
        }
    }

    #[test]
    fn kronecker_class_number_formula() {
        let r = cycle_trace(&TraceSpec::new(Integrand::ConstOne, 8, 1).unwrap(), &ctx()).unwrap();
        assert!((r.value - (3.0 + 2.0 * 2f64.sqrt()).ln() / PI).abs() < 1e-10);
        let r = cycle_trace(&TraceSpec::new(Integrand::ConstOne, 5, -4).unwrap(), &ctx());
        assert!(matches!(r, Err(Error::BadDiscriminant(-20))));
        let r = cycle_trace(&TraceSpec::new(Integrand::ConstOne, -3, -4).unwrap(), &ctx()).unwrap();
        assert!(r.value.abs() < 1e-8);
    }

    #[test]
    fn siegel_example() {
        let r = cycle_trace(&TraceSpec::new(Integrand::Klf, 5, 8).unwrap(), &ctx()).unwrap();
        let l8 = crate::arith::dirichlet_l(Discriminant::fundamental(8).unwrap(), 1.0).unwrap();
        let eps = (3.0 + 5f64.sqrt()) / 2.0;
        let expected = 8f64.sqrt() * l8 * eps.ln() / PI;
        assert!((r.value - expected).abs() < 1e-8, "{} {expected}", r.value);
    }

    #[test]
    fn b_at_one() {
        assert!((b_factor(1.0) - 1.0).abs() < 1e-14);
    }
}
