//! Pointwise evaluation of Niebur–Poincaré series `G_m(z,s)`, the Eisenstein
//! series `E(z,s) = G₀(z,s)`, half-integral weight Maass–Poincaré series
//! `P_{k,m}(z,s)`, the weight-`k` Whittaker basis and the operator `ξ_k`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::arith::{zeta, zeta_prime, EULER_GAMMA};
use crate::error::{Error, Result};
use crate::kloosterman::{coeff_row, Weight};
use crate::specfun::{
    bessel_i, bessel_k, dedekind_eta, gamma, incomplete_gamma_upper, reduce_point, whittaker_m,
    whittaker_w,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModularPoint {
    pub x: f64,
    pub y: f64,
}

impl ModularPoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !(y > 0.0) {
            return Err(Error::DomainError(format!("point needs y > 0, got {y}")));
        }
        Ok(Self { x, y })
    }

    pub fn from_complex(z: Complex64) -> Result<Self> {
        Self::new(z.re, z.im)
    }

    pub fn z(&self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    /// Image in the closed standard fundamental domain.
    pub fn reduced(&self) -> Self {
        let (w, _) = reduce_point(self.z());
        Self { x: w.re, y: w.im }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalContext {
    pub fourier_terms: usize,
    pub c_max: u64,
    pub quad_order: usize,
    pub tolerance: f64,
}

impl Default for EvalContext {
    fn default() -> Self {
        Self { fourier_terms: 24, c_max: 4000, quad_order: 64, tolerance: 1e-6 }
    }
}

impl EvalContext {
    pub fn validate(&self) -> Result<()> {
        if self.fourier_terms == 0 || self.c_max == 0 || self.quad_order == 0 {
            return Err(Error::ParameterOutOfRange("context sizes must be positive".into()));
        }
        if !(self.tolerance > 0.0 && self.tolerance < 1.0) {
            return Err(Error::ParameterOutOfRange(format!(
                "tolerance {} must lie in (0, 1)",
                self.tolerance
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Fourier,
    GroupSum,
}

fn e_x(n: f64, x: f64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * n * x)
}

/// `φ_{k,m}(z,s) = Γ(2s)^{−1} (4π|m|y)^{−k/2} M_{sgn(m)k/2, s−1/2}(4π|m|y) e(mx)`,
/// and `y^{s−k/2}` for `m = 0`.
pub fn seed_phi(k: f64, m: i64, z: ModularPoint, s: f64) -> Result<Complex64> {
    if !(s > 0.5) {
        return Err(Error::ConvergenceRegion { s, bound: 0.5 });
    }
    if m == 0 {
        return Ok(Complex64::new(z.y.powf(s - k / 2.0), 0.0));
    }
    let t = 4.0 * PI * m.unsigned_abs() as f64 * z.y;
    let mu = (m.signum() as f64) * k / 2.0;
    let value = t.powf(-k / 2.0) * whittaker_m(mu, s - 0.5, t)? / gamma(2.0 * s);
    Ok(e_x(m as f64, z.x) * value)
}

/// `φ_m(z,s) = 2π|m|^{1/2} y^{1/2} I_{s−1/2}(2π|m|y) e(mx)`, and `y^s` for `m = 0`.
pub fn niebur_seed(m: i64, z: ModularPoint, s: f64) -> Complex64 {
    if m == 0 {
        return Complex64::new(z.y.powf(s), 0.0);
    }
    let am = m.unsigned_abs() as f64;
    let v = 2.0 * PI * (am * z.y).sqrt() * bessel_i(s - 0.5, 2.0 * PI * am * z.y);
    e_x(m as f64, z.x) * v
}

/// `𝒲_{k,n}(y,s)`: the normalised `W_{sgn(n)k/2, s−1/2}(4π|n|y)`, or the
/// power of `y` for `n = 0`.
pub fn cal_w(k: f64, n: i64, y: f64, s: f64) -> Result<f64> {
    if !(y > 0.0) {
        return Err(Error::DomainError(format!("y = {y} must be positive")));
    }
    if !(s > 0.5) {
        return Err(Error::ConvergenceRegion { s, bound: 0.5 });
    }
    if n == 0 {
        return Ok((4.0 * PI).powf(1.0 - k) * y.powf(1.0 - s - k / 2.0)
            / ((2.0 * s - 1.0) * gamma(s - k / 2.0) * gamma(s + k / 2.0)));
    }
    let an = n.unsigned_abs() as f64;
    if k == 0.0 {
        return Ok(2.0 * (an * y).sqrt() * bessel_k(s - 0.5, 2.0 * PI * an * y) / (an * gamma(s)));
    }
    let sg = n.signum() as f64;
    let t = 4.0 * PI * an * y;
    Ok(an.powf(k - 1.0) * t.powf(-k / 2.0) * whittaker_w(sg * k / 2.0, s - 0.5, t)?
        / gamma(s + sg * k / 2.0))
}

/// Fourier data of `G_m(·, s)` truncated at `|n| ≤ N`, reusable across points.
#[derive(Debug, Clone)]
pub struct NieburSeries {
    pub m: i64,
    pub s: f64,
    /// `c_{0,m}(n,s)` for `n = −N..=N`.
    pub coeffs: Vec<Complex64>,
    pub fourier_terms: usize,
    /// Magnitude of the largest omitted-tail estimate among the coefficients.
    pub tail_bound: f64,
}

impl NieburSeries {
    pub fn new(m: i64, s: f64, ctx: &EvalContext) -> Result<Self> {
        ctx.validate()?;
        if !(s > 1.0) {
            return Err(Error::ConvergenceRegion { s, bound: 1.0 });
        }
        let nt = ctx.fourier_terms as i64;
        let ns: Vec<i64> = (-nt..=nt).collect();
        let rows = coeff_row(0.0, m, &ns, s, ctx.c_max)?;
        let mut coeffs: Vec<Complex64> = rows.iter().map(|r| r.value).collect();
        let tail_bound = rows.iter().map(|r| r.tail_bound).fold(0.0, f64::max);
        if m == 0 {
            // Σ φ(c) c^{−2s} = ζ(2s−1)/ζ(2s), summed in closed form.
            coeffs[nt as usize] = Complex64::new(
                gamma(2.0 * s) * 2f64.powf(-2.0 * s) * zeta(2.0 * s - 1.0)? / zeta(2.0 * s)?,
                0.0,
            );
        }
        Ok(Self { m, s, coeffs, fourier_terms: ctx.fourier_terms, tail_bound })
    }

    pub fn coeff(&self, n: i64) -> Complex64 {
        self.coeffs[(n + self.fourier_terms as i64) as usize]
    }

    /// `G_m(z,s)` at the reduced image of `z`.
    pub fn eval(&self, z: ModularPoint) -> Complex64 {
        let w = z.reduced();
        self.eval_raw(w)
    }

    /// The truncated Fourier expansion at `z` itself.
    pub fn eval_raw(&self, w: ModularPoint) -> Complex64 {
        let s = self.s;
        let nu = s - 0.5;
        let mut acc = niebur_seed(self.m, w, s);
        // the n = 0 term: Γ(s) c(0) 𝒲_{0,0}(y,s) for m ≠ 0, c(0) 𝒲_{0,0} for m = 0
        let w0 = 4.0 * PI * w.y.powf(1.0 - s) / ((2.0 * s - 1.0) * gamma(s) * gamma(s));
        let g = if self.m == 0 { 1.0 } else { gamma(s) };
        acc += self.coeff(0) * (g * w0);
        for n in 1..=self.fourier_terms as i64 {
            let an = n as f64;
            let kb = bessel_k(nu, 2.0 * PI * an * w.y);
            if kb == 0.0 {
                break;
            }
            // Γ(s) 𝒲_{0,n} for m ≠ 0; 𝒲_{0,n} itself for m = 0
            let radial = 2.0 * (an * w.y).sqrt() * kb / an / if self.m == 0 { gamma(s) } else { 1.0 };
            acc += (self.coeff(n) * e_x(an, w.x) + self.coeff(-n) * e_x(-an, w.x)) * radial;
        }
        acc
    }
}

/// `E(z,s) = Σ_{Γ∞\Γ} Im(γz)^s` as `y^s (2ζ(2s))^{−1} Σ'_{(c,d)} |cz+d|^{−2s}`
/// over lattice points inside a disc, plus the continuum tail outside it.
fn eisenstein_lattice(z: ModularPoint, s: f64, tol: f64) -> Result<f64> {
    let w = z.reduced();
    let radius = (1e-2 * tol).powf(-1.0 / (2.0 * s - 2.0 / 3.0)).clamp(50.0, 2000.0);
    let r2 = radius * radius;
    let c_lim = (radius / w.y).floor() as i64;
    let mut total = 0.0;
    for c in -c_lim..=c_lim {
        let cy = c as f64 * w.y;
        let cx = c as f64 * w.x;
        let span = (r2 - cy * cy).max(0.0).sqrt();
        let d_lo = (-cx - span).ceil() as i64;
        let d_hi = (-cx + span).floor() as i64;
        let mut row = 0.0;
        for d in d_lo..=d_hi {
            if c == 0 && d == 0 {
                continue;
            }
            let re = cx + d as f64;
            let q = re * re + cy * cy;
            row += q.powf(-s);
        }
        total += row;
    }
    let tail = 2.0 * PI * radius.powf(2.0 - 2.0 * s) / ((2.0 * s - 2.0) * w.y);
    Ok(w.y.powf(s) * (total + tail) / (2.0 * zeta(2.0 * s)?))
}

/// `G_m(z,s)`; `groupsum` is available for `m = 0` only.
pub fn eval_g(m: i64, z: ModularPoint, s: f64, ctx: &EvalContext, method: Method) -> Result<Complex64> {
    if !(s > 1.0) {
        return Err(Error::ConvergenceRegion { s, bound: 1.0 });
    }
    match method {
        Method::Fourier => Ok(NieburSeries::new(m, s, ctx)?.eval(z)),
        Method::GroupSum => {
            if m != 0 {
                return Err(Error::MethodUnavailable(format!("group sum for m = {m}")));
            }
            Ok(Complex64::new(eisenstein_lattice(z, s, ctx.tolerance)?, 0.0))
        }
    }
}

/// Fourier data of `P_{k,m}(·, s)` on the plus-space lattice `|n| ≤ N`.
#[derive(Debug, Clone)]
pub struct HalfPoincare {
    pub k: f64,
    pub m: i64,
    pub s: f64,
    pub indices: Vec<i64>,
    pub coeffs: Vec<Complex64>,
}

impl HalfPoincare {
    pub fn new(k: f64, m: i64, s: f64, ctx: &EvalContext) -> Result<Self> {
        ctx.validate()?;
        let w = Weight::from_f64(k)?;
        if !matches!(w, Weight::Half { .. }) {
            return Err(Error::DomainError(format!("weight {k} is not half-integral")));
        }
        let nt = ctx.fourier_terms as i64;
        let indices: Vec<i64> = (-nt..=nt).filter(|&n| w.plus_condition(n)).collect();
        let rows = coeff_row(k, m, &indices, s, ctx.c_max)?;
        Ok(Self { k, m, s, indices, coeffs: rows.iter().map(|r| r.value).collect() })
    }

    pub fn eval(&self, z: ModularPoint) -> Result<Complex64> {
        let mut acc = seed_phi(self.k, self.m, z, self.s)?;
        for (&n, &b) in self.indices.iter().zip(&self.coeffs) {
            acc += b * e_x(n as f64, z.x) * cal_w(self.k, n, z.y, self.s)?;
        }
        Ok(acc)
    }
}

pub fn eval_p_half(k: f64, m: i64, z: ModularPoint, s: f64, ctx: &EvalContext) -> Result<Complex64> {
    HalfPoincare::new(k, m, s, ctx)?.eval(z)
}

/// `−log(y |η(z)|⁴)`, invariant under `SL₂(ℤ)`.
pub fn klf_value(z: ModularPoint) -> f64 {
    let w = z.reduced();
    let eta = dedekind_eta(w.z());
    -(w.y * eta.norm_sqr() * eta.norm_sqr()).ln()
}

/// `C = (6/π)(γ − log 2 − 6ζ′(2)/π²)` in `E(z,s) = (3/π)/(s−1) + C − (3/π) log(y|η|⁴) + O(s−1)`.
pub fn kronecker_limit_constant() -> Result<f64> {
    Ok(6.0 / PI * (EULER_GAMMA - 2f64.ln() - 6.0 * zeta_prime(2.0)? / (PI * PI)))
}

/// Richardson extrapolation of `E(z, 1+h) − (3/π)/h` to `h = 0` over the
/// steps `h₀, h₀/2, …` (`levels` of them).
pub fn kronecker_limit_extrapolated(z: ModularPoint, h0: f64, levels: usize, ctx: &EvalContext) -> Result<f64> {
    let mut table: Vec<f64> = Vec::with_capacity(levels);
    for j in 0..levels {
        let h = h0 / 2f64.powi(j as i32);
        let e = NieburSeries::new(0, 1.0 + h, ctx)?.eval(z).re;
        table.push(e - 3.0 / (PI * h));
    }
    for order in 1..levels {
        let f = 2f64.powi(order as i32);
        for j in (order..levels).rev() {
            table[j] = (f * table[j] - table[j - 1]) / (f - 1.0);
        }
    }
    Ok(table[levels - 1])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Plus,
    Minus,
}

/// Depth-zero Whittaker basis `u^{[0],±}_{k,n}(y)` times `e(nx)`.
pub fn u_basis(k: f64, n: i64, variant: Variant, z: ModularPoint) -> Result<Complex64> {
    let q = |n: i64| Complex64::from_polar((-2.0 * PI * n as f64 * z.y).exp(), 2.0 * PI * n as f64 * z.x);
    let an = n.unsigned_abs() as f64;
    match (variant, n.signum()) {
        (Variant::Minus, 0) => Ok(Complex64::new(z.y.powf(1.0 - k), 0.0)),
        (Variant::Plus, 0) => Ok(Complex64::new(1.0, 0.0)),
        (Variant::Minus, 1) => Ok(q(n) * (4.0 * PI * an).powf(k / 2.0)),
        (Variant::Minus, _) => {
            let t = 4.0 * PI * an;
            Ok(q(n) * (t.powf(k / 2.0) * incomplete_gamma_upper(1.0 - k, t * z.y)))
        }
        (Variant::Plus, -1) => {
            Ok(q(n) * Complex64::from_polar((4.0 * PI * an).powf(k / 2.0), PI * k / 2.0))
        }
        (Variant::Plus, _) => Err(Error::Unsupported("u^{[0],+} with n > 0".into())),
    }
}

/// Fourth-order central difference of `g` at `t`.
fn central<F: Fn(f64) -> Complex64>(g: F, t: f64, h: f64) -> Complex64 {
    (g(t - 2.0 * h) - g(t + 2.0 * h) + (g(t + h) - g(t - h)) * 8.0) / (12.0 * h)
}

/// `ξ_k f(z) = 2i y^k conj(∂f/∂z̄)`, with `∂/∂z̄ = (∂_x + i∂_y)/2` by central differences.
pub fn xi_apply<F>(k: f64, f: F, z: ModularPoint, h: f64) -> Complex64
where
    F: Fn(ModularPoint) -> Complex64,
{
    let fx = central(|x| f(ModularPoint { x, y: z.y }), z.x, h);
    let fy = central(|y| f(ModularPoint { x: z.x, y }), z.y, h);
    let dbar = (fx + Complex64::i() * fy) * 0.5;
    Complex64::new(0.0, 2.0) * z.y.powf(k) * dbar.conj()
}

/// `Δ_k f = −ξ_{2−k}(ξ_k f)` by nested differences.
pub fn laplacian<F>(k: f64, f: F, z: ModularPoint, h: f64) -> Complex64
where
    F: Fn(ModularPoint) -> Complex64,
{
    -xi_apply(2.0 - k, |w| xi_apply(k, &f, w, h), z, h)
}
