//! Mellin transforms M(f, s) = ∫₀^∞ f(u) u^{s-1} du of the Riesz kernel
//! and of the subtracted kernel h, numerically and in closed form through
//! Ferrers functions.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kernels::{weier_h, KernelArgs, ProblemParams};
use crate::quad::{integrate_positive_axis, QuadEstimate, QuadratureSpec};
use crate::specfun::{factorial, gamma, gamma_real, legendre_p_weighted, legendre_p_weighted_angle, sin_pi};

/// Open strip lower < Re s < upper where a Mellin integral converges.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MellinStrip {
    pub lower: f64,
    pub upper: f64,
}

impl MellinStrip {
    pub fn new(lower: f64, upper: f64) -> Result<Self> {
        if !(lower < upper) {
            return Err(Error::InvalidParams(format!("empty strip ({lower}, {upper})")));
        }
        Ok(Self { lower, upper })
    }

    /// -q-1 < Re s < -q, where the transform of h(λ, q, ·, ξ) converges.
    pub fn subtracted(q: u32) -> Self {
        Self { lower: -(q as f64) - 1.0, upper: -(q as f64) }
    }

    /// 0 < Re s < 2λ, where the transform of k_λ converges.
    pub fn riesz(lambda: f64) -> Self {
        Self { lower: 0.0, upper: 2.0 * lambda }
    }

    pub fn contains(&self, s: Complex64) -> bool {
        s.re > self.lower && s.re < self.upper
    }

    pub fn check(&self, s: Complex64) -> Result<()> {
        if self.contains(s) {
            Ok(())
        } else {
            Err(Error::StripViolation { re_s: s.re, lower: self.lower, upper: self.upper })
        }
    }
}

/// ∫₀^∞ f(u) u^{s-1} du for s inside `strip`.
///
/// The integral is split at `quad.split_point`; the inner piece is mapped
/// with u = a x and the outer with u = a / v, both by tanh-sinh. An
/// unconverged estimate is returned with `converged == false`.
pub fn mellin_numeric(
    f: impl Fn(f64) -> f64,
    strip: MellinStrip,
    s: Complex64,
    quad: &QuadratureSpec,
) -> Result<QuadEstimate<Complex64>> {
    strip.check(s)?;
    let sm1 = s - 1.0;
    Ok(integrate_positive_axis(
        |u| {
            let fu = f(u);
            if fu == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            (sm1 * u.ln() + fu.abs().ln()).exp() * fu.signum()
        },
        quad,
    ))
}

/// Numeric transform of h(λ, q, ·, ξ) on its principal strip.
pub fn mellin_h_numeric(
    lambda: f64,
    q: u32,
    s: Complex64,
    xi: f64,
    quad: &QuadratureSpec,
) -> Result<QuadEstimate<Complex64>> {
    KernelArgs::new(lambda, q, 0.0, xi)?;
    mellin_numeric(
        |u| weier_h(KernelArgs { lambda, q, u, xi }).unwrap_or(f64::NAN),
        MellinStrip::subtracted(q),
        s,
        quad,
    )
}

/// -√π Γ(s) Γ(2λ-s) / (2^{λ-1/2} Γ(λ)), the factor in front of the
/// weighted Ferrers function in the closed form of M(h, s).
fn h_prefactor(lambda: f64, s: Complex64) -> Result<Complex64> {
    let g = gamma(s)? * gamma(Complex64::new(2.0 * lambda, 0.0) - s)?;
    Ok(-PI.sqrt() * g / (2f64.powf(lambda - 0.5) * gamma_real(lambda)?))
}

/// Closed form of M(h, s):
/// -√π Γ(s) Γ(2λ-s) / (2^{λ-1/2} Γ(λ)) · (1-ξ²)^{(1-2λ)/4} P^{1/2-λ}_{s-λ-1/2}(ξ).
///
/// Valid on the principal strip -q-1 < Re s < -q and, as the analytic
/// continuation, up to Re s < 2λ away from the poles of Γ(s). `xi` may be 1.
pub fn mellin_h_closed(lambda: f64, q: u32, s: Complex64, xi: f64) -> Result<Complex64> {
    if !(lambda > 0.0) {
        return Err(Error::InvalidParams(format!("kernel exponent must be positive, got {lambda}")));
    }
    MellinStrip { lower: -(q as f64) - 1.0, upper: 2.0 * lambda }.check(s)?;
    let order = Complex64::new(0.5 - lambda, 0.0);
    let degree = s - lambda - 0.5;
    Ok(h_prefactor(lambda, s)? * legendre_p_weighted(degree, order, xi)?)
}

/// Closed form of ∫₀^∞ k_λ(t, ξ) t^{s-1} dt for 0 < Re s < 2λ, i.e. the
/// negative of the continued M(h, s).
pub fn mellin_k_closed(lambda: f64, s: Complex64, xi: f64) -> Result<Complex64> {
    if !(lambda > 0.0) {
        return Err(Error::InvalidParams(format!("kernel exponent must be positive, got {lambda}")));
    }
    MellinStrip::riesz(lambda).check(s)?;
    let order = Complex64::new(0.5 - lambda, 0.0);
    let degree = s - lambda - 0.5;
    Ok(-h_prefactor(lambda, s)? * legendre_p_weighted(degree, order, xi)?)
}

/// Taylor coefficients c_0..=c_m of k_λ(u₀ + ε, ξ) in ε, from
/// c_{j+1} = -[(j+λ) B c_j + (j-1+2λ) c_{j-1}] / (A (j+1)),
/// A = 1 + 2u₀ξ + u₀², B = 2u₀ + 2ξ.
fn riesz_taylor(lambda: f64, u0: f64, xi: f64, m: usize) -> Vec<f64> {
    let a = (u0 + xi) * (u0 + xi) + (1.0 - xi) * (1.0 + xi);
    let b = 2.0 * (u0 + xi);
    let mut c = Vec::with_capacity(m + 1);
    c.push(a.powf(-lambda));
    for j in 0..m {
        let jf = j as f64;
        let prev = if j == 0 { 0.0 } else { c[j - 1] };
        c.push(-((jf + lambda) * b * c[j] + (jf - 1.0 + 2.0 * lambda) * prev) / (a * (jf + 1.0)));
    }
    c
}

/// ∂^m/∂u^m k_λ(u, ξ).
pub fn riesz_derivative(lambda: f64, u: f64, xi: f64, m: usize) -> f64 {
    riesz_taylor(lambda, u, xi, m)[m] * factorial(m as u32)
}

/// M(h, s) after q+1 integrations by parts:
/// (-1)^q / ∏_{k=0}^{q} (s+k) · ∫₀^∞ u^{s+q} ∂^{q+1} k_λ(u, ξ) du,
/// convergent for -q-1 < Re s < 2λ with s ∉ {0, -1, ..., -q}.
pub fn mellin_h_by_parts(
    lambda: f64,
    q: u32,
    s: Complex64,
    xi: f64,
    quad: &QuadratureSpec,
) -> Result<QuadEstimate<Complex64>> {
    KernelArgs::new(lambda, q, 0.0, xi)?;
    let strip = MellinStrip { lower: -(q as f64) - 1.0, upper: 2.0 * lambda };
    strip.check(s)?;
    let mut denom = Complex64::new(1.0, 0.0);
    for k in 0..=q {
        denom *= s + k as f64;
    }
    if denom.norm() == 0.0 {
        return Err(Error::Pole { function: "mellin_h_by_parts", at: format!("{s}") });
    }
    let m = q as usize + 1;
    // ∫ u^{s+q} g(u) du is the Mellin transform of g at s + q + 1
    let inner = mellin_numeric(
        |u| riesz_derivative(lambda, u, xi, m),
        MellinStrip { lower: -1.0, upper: 2.0 * lambda + q as f64 + 1.0 },
        s + q as f64 + 1.0,
        quad,
    )?;
    let sign = if q.is_multiple_of(2) { 1.0 } else { -1.0 };
    let factor = sign / denom;
    Ok(QuadEstimate {
        value: inner.value * factor,
        abs_error: inner.abs_error * factor.norm(),
        converged: inner.converged,
    })
}

/// The two printed forms of M(h_n, ρ) = ∫₀^∞ h_n(u, θ₁, q) u^{-ρ-1} du.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderTransform {
    /// π√π 2^{(3-n)/2} ∏_{k=1}^{n-3}(ρ+k) W / (sin πρ Γ((n-2)/2)); printed
    /// with a leading minus sign, which is not consistent with the gamma
    /// form or with the closed form of M(h, s).
    pub product_form: f64,
    /// π 2^{(n-3)/2} ∏_{k=1}^{n-3}(ρ+k) Γ((n-1)/2) W / ((n-3)! sin πρ).
    pub gamma_form: f64,
}

/// M(h_n, ρ) at ξ = cos θ₁, with W = (1-ξ²)^{(3-n)/4} P^{(3-n)/2}_{-ρ-(n-1)/2}(ξ).
pub fn mellin_hn_at_order(params: &ProblemParams, xi: f64) -> Result<OrderTransform> {
    let w = legendre_p_weighted(
        Complex64::new(-params.rho - (params.n as f64 - 1.0) / 2.0, 0.0),
        Complex64::new(params.legendre_order(), 0.0),
        xi,
    )?
    .re;
    Ok(order_transform_from_weighted(params, w))
}

fn order_transform_from_weighted(params: &ProblemParams, w: f64) -> OrderTransform {
    let n = params.n;
    let nf = n as f64;
    let rho = params.rho;
    let prod: f64 = (1..=n - 3).map(|k| rho + k as f64).product();
    let sin = sin_pi(rho);
    let product_form = PI * PI.sqrt() * 2f64.powf((3.0 - nf) / 2.0) * prod * w
        / (sin * gamma_real((nf - 2.0) / 2.0).expect("n >= 3"));
    let gamma_form = PI * 2f64.powf((nf - 3.0) / 2.0) * prod * gamma_real((nf - 1.0) / 2.0).expect("n >= 3") * w
        / (factorial(n - 3) * sin);
    OrderTransform { product_form, gamma_form }
}

/// M(g; v) = (1 - iv) ∫₀^∞ h_n(u, φ, q) u^{-1-ρ-iv} du, the symbol whose
/// zeros in v govern the Tauberian step, evaluated in closed form.
pub fn tauberian_symbol(params: &ProblemParams, phi: f64, v: f64) -> Result<Complex64> {
    let lambda = params.lambda();
    let s = Complex64::new(-params.rho, -v);
    let w = legendre_p_weighted_angle(s - lambda - 0.5, Complex64::new(0.5 - lambda, 0.0), phi)?;
    Ok(Complex64::new(1.0, -v) * h_prefactor(lambda, s)? * w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::legendre_p_real;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn strips() {
        assert!(MellinStrip::new(1.0, 1.0).is_err());
        let s = MellinStrip::subtracted(2);
        assert!(s.contains(c(-2.5)) && !s.contains(c(-2.0)) && !s.contains(c(-3.2)));
        let quad = QuadratureSpec::default();
        let r = mellin_h_numeric(1.0, 0, c(0.5), 0.3, &quad);
        assert!(matches!(r, Err(Error::StripViolation { .. })));
        assert!(matches!(mellin_k_closed(1.0, c(2.5), 0.0), Err(Error::StripViolation { .. })));
    }

    #[test]
    fn numeric_examples() {
        let quad = QuadratureSpec::default();
        // ξ = 1: a Beta integral, -Γ(s)Γ(2λ-s)/Γ(2λ)
        let v = mellin_h_numeric(1.0, 0, c(-0.5), 1.0, &quad).unwrap();
        assert!((v.value.re - 1.5 * PI).abs() < 1e-10, "{:?}", v);
        assert!(v.value.im.abs() < 1e-14 && v.converged, "{:?}", v);
        let g = mellin_numeric(|u| (-u).exp(), MellinStrip::new(0.0, f64::INFINITY).unwrap(), c(3.0), &quad).unwrap();
        assert!((g.value.re - 2.0).abs() < 1e-11);
        let num = mellin_h_numeric(0.5, 0, c(-0.5), 0.0, &quad).unwrap();
        let closed = mellin_h_closed(0.5, 0, c(-0.5), 0.0).unwrap();
        assert!((num.value - closed).norm() < 1e-8 * closed.norm());
        let expected = PI * legendre_p_real(0.5, 0.0, 0.0).unwrap();
        assert!((closed.re - expected).abs() < 1e-13);
    }

    #[test]
    fn closed_forms() {
        // ξ -> 1 approaches the Beta value
        let near = mellin_h_closed(1.0, 0, c(-0.5), 1.0 - 1e-10).unwrap();
        assert!((near.re - 1.5 * PI).abs() < 1e-6);
        let at = mellin_h_closed(1.0, 0, c(-0.5), 1.0).unwrap();
        assert!((at.re - 1.5 * PI).abs() < 1e-13);
        let quad = QuadratureSpec::default();
        let num = mellin_h_numeric(1.5, 1, c(-1.5), -0.3, &quad).unwrap();
        let closed = mellin_h_closed(1.5, 1, c(-1.5), -0.3).unwrap();
        assert!((num.value - closed).norm() < 1e-8 * closed.norm());
        // Riesz kernel
        let k = mellin_k_closed(1.0, c(1.0), 0.0).unwrap();
        assert!((k.re - PI / 2.0).abs() < 1e-13);
        for (lambda, s, xi) in [(1.0, 1.0, 0.5), (0.75, 0.6, -0.4)] {
            let num = mellin_numeric(
                |t| crate::kernels::riesz_k(lambda, t, xi).unwrap(),
                MellinStrip::riesz(lambda),
                c(s),
                &quad,
            )
            .unwrap();
            let closed = mellin_k_closed(lambda, c(s), xi).unwrap();
            assert!((num.value - closed).norm() < 1e-9 * closed.norm(), "λ={lambda}");
        }
    }

    #[test]
    fn riesz_derivatives_against_differences() {
        let (lambda, xi) = (1.5, -0.4);
        for u in [0.2, 1.0, 3.0] {
            let h = 1e-3;
            let k = |x: f64| crate::kernels::riesz_k(lambda, x, xi).unwrap();
            let d1 = (k(u + h) - k(u - h)) / (2.0 * h);
            let d2 = (k(u + h) - 2.0 * k(u) + k(u - h)) / (h * h);
            assert!((riesz_derivative(lambda, u, xi, 1) - d1).abs() < 1e-5);
            assert!((riesz_derivative(lambda, u, xi, 2) - d2).abs() < 1e-4);
        }
    }

    #[test]
    fn integration_by_parts() {
        let quad = QuadratureSpec::default();
        for (lambda, q, xi) in [(0.5, 0, 0.2), (1.0, 1, -0.6), (1.5, 2, 0.7)] {
            let s = c(-(q as f64) - 0.4);
            let direct = mellin_h_numeric(lambda, q, s, xi, &quad).unwrap();
            let parts = mellin_h_by_parts(lambda, q, s, xi, &quad).unwrap();
            assert!((direct.value - parts.value).norm() < 1e-8 * direct.value.norm());
            // beyond the principal strip it continues the closed form
            let s = c(0.5 * lambda);
            let parts = mellin_h_by_parts(lambda, q, s, xi, &quad).unwrap();
            let closed = mellin_h_closed(lambda, q, s, xi).unwrap();
            assert!((parts.value - closed).norm() < 1e-8 * closed.norm(), "λ={lambda} q={q}");
        }
        assert!(matches!(mellin_h_by_parts(1.0, 1, c(-1.0), 0.0, &quad), Err(Error::Pole { .. })));
    }

    #[test]
    fn order_transform_forms() {
        let p3 = ProblemParams::new(3, 0.5, 1.0).unwrap();
        let t = mellin_hn_at_order(&p3, 0.0).unwrap();
        let expected = PI * legendre_p_real(0.5, 0.0, 0.0).unwrap();
        assert!((t.gamma_form - expected).abs() < 1e-13);
        assert!((t.product_form - t.gamma_form).abs() < 1e-13);
        let closed = mellin_h_closed(0.5, 0, c(-0.5), 0.0).unwrap();
        assert!((closed.re - t.gamma_form).abs() < 1e-13);
        let p4 = ProblemParams::new(4, 0.5, 1.0).unwrap();
        let t = mellin_hn_at_order(&p4, 0.2).unwrap();
        assert!((t.product_form - t.gamma_form).abs() < 1e-12 * t.gamma_form.abs());
        let p5 = ProblemParams::new(5, 1.3, 1.0).unwrap();
        let t = mellin_hn_at_order(&p5, -0.5).unwrap();
        let quad = QuadratureSpec::default();
        let num = mellin_h_numeric(1.5, 1, c(-1.3), -0.5, &quad).unwrap();
        assert!((num.value.re - t.gamma_form).abs() < 1e-8 * t.gamma_form.abs());
        assert!((t.product_form - t.gamma_form).abs() < 1e-12 * t.gamma_form.abs());
    }

    #[test]
    fn symbol_values() {
        let p = ProblemParams::new(3, 0.5, 1.0).unwrap();
        let m0 = tauberian_symbol(&p, PI / 2.0, 0.0).unwrap();
        let t = mellin_hn_at_order(&p, 0.0).unwrap();
        assert!((m0.re - t.gamma_form).abs() < 1e-12 && m0.im.abs() < 1e-14);
        let m = tauberian_symbol(&p, PI / 2.0, 1.7).unwrap();
        assert!(m.norm() > 1e-8);
        // at v = 0 the symbol is M(h_n, ρ) and vanishes with the Legendre factor
        let beta = 130.709_9_f64.to_radians();
        let m = tauberian_symbol(&p, beta, 0.0).unwrap();
        assert!(m.norm() < 1e-5);
    }
}
