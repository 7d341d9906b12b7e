//! Kernels of the canonical representation: the Riesz kernel k_λ, the
//! subtracted kernel h and its specialization h_n, the Weierstrass kernel
//! K_q for a mass on the negative axis, the Poisson-type kernel P_n and the
//! log-substituted kernel used for the order equation.
//!
//! Angles θ₁ are measured from the positive x₁-axis, masses sit at angle π.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::specfun::gegenbauer_table;

/// Dimension, order, genus and type of the problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProblemParams {
    pub n: u32,
    pub rho: f64,
    pub q: u32,
    pub delta: f64,
}

impl ProblemParams {
    pub fn new(n: u32, rho: f64, delta: f64) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParams(format!("dimension must be at least 3, got {n}")));
        }
        if !(rho.is_finite() && rho > 0.0) || rho == rho.floor() {
            return Err(Error::InvalidParams(format!("order must be positive and non-integer, got {rho}")));
        }
        if !(delta.is_finite() && delta >= 0.0) {
            return Err(Error::InvalidParams(format!("type constant must be finite and >= 0, got {delta}")));
        }
        Ok(Self { n, rho, q: rho.floor() as u32, delta })
    }

    /// λ = (n-2)/2.
    pub fn lambda(&self) -> f64 {
        (self.n as f64 - 2.0) / 2.0
    }

    /// Degree ν = ρ + (n-3)/2 of the indicator's Legendre factor.
    pub fn legendre_degree(&self) -> f64 {
        self.rho + (self.n as f64 - 3.0) / 2.0
    }

    /// Order μ = (3-n)/2 of the indicator's Legendre factor.
    pub fn legendre_order(&self) -> f64 {
        (3.0 - self.n as f64) / 2.0
    }

    pub fn with_delta(self, delta: f64) -> Self {
        Self { delta, ..self }
    }
}

/// Arguments of the subtracted kernel h(λ, q, u, ξ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelArgs {
    pub lambda: f64,
    pub q: u32,
    pub u: f64,
    pub xi: f64,
}

impl KernelArgs {
    pub fn new(lambda: f64, q: u32, u: f64, xi: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::InvalidParams(format!("kernel exponent must be positive, got {lambda}")));
        }
        if !(u >= 0.0) {
            return Err(Error::Domain { function: "weier_h", detail: format!("u must be >= 0, got {u}") });
        }
        if !(xi > -1.0 && xi <= 1.0) {
            return Err(Error::Domain { function: "weier_h", detail: format!("ξ must lie in (-1, 1], got {xi}") });
        }
        Ok(Self { lambda, q, u, xi })
    }
}

/// k_λ(t, ξ) = (1 + t² + 2tξ)^{-λ}.
pub fn riesz_k(lambda: f64, t: f64, xi: f64) -> Result<f64> {
    if t > 1e8 {
        let v = 1.0 / t;
        return Ok(t.powf(-2.0 * lambda) * (1.0 + 2.0 * xi * v + v * v).powf(-lambda));
    }
    // (t + ξ)² + (1 - ξ²) keeps the minimum accurate when ξ is close to -1
    let q = (t + xi) * (t + xi) + (1.0 - xi) * (1.0 + xi);
    if !(q > 0.0) {
        return Err(Error::Domain {
            function: "riesz_k",
            detail: format!("1 + t² + 2tξ vanishes at t = {t}, ξ = {xi}"),
        });
    }
    Ok(q.powf(-lambda))
}

const TAIL_MAX_TERMS: usize = 20_000;

/// h(λ, q, u, ξ) = -k_λ(u, ξ) + Σ_{j ≤ q} (-u)^j G^λ_j(ξ).
///
/// For u <= 1/2 the value is summed as the Gegenbauer tail -Σ_{j > q}, which
/// avoids the cancellation between k_λ and its Taylor polynomial.
pub fn weier_h(args: KernelArgs) -> Result<f64> {
    let KernelArgs { lambda, q, u, xi } = args;
    if u == 0.0 {
        return Ok(0.0);
    }
    if u <= 0.5 {
        return Ok(-gegenbauer_tail(lambda, q as usize, u, xi));
    }
    let table = gegenbauer_table(lambda, q as usize, xi);
    let mut poly = 0.0;
    let mut power = 1.0;
    for g in &table {
        poly += power * g;
        power *= -u;
    }
    Ok(poly - riesz_k(lambda, u, xi)?)
}

/// Σ_{j > q} (-u)^j G^λ_j(ξ) for 0 < u <= 1/2, stopped by the bound
/// |G^λ_j(ξ)| <= G^λ_j(1) = (2λ)_j / j!.
fn gegenbauer_tail(lambda: f64, q: usize, u: f64, xi: f64) -> f64 {
    let (mut g0, mut g1) = (1.0, 2.0 * lambda * xi);
    let mut bound = 2.0 * lambda; // G_1(1)
    let mut power = -u;
    let mut sum = 0.0;
    if q == 0 {
        sum += power * g1;
    }
    for j in 2..TAIL_MAX_TERMS {
        let jf = j as f64;
        let g2 = (2.0 * xi * (jf + lambda - 1.0) * g1 - (jf + 2.0 * lambda - 2.0) * g0) / jf;
        bound *= (2.0 * lambda + jf - 1.0) / jf;
        power *= -u;
        g0 = g1;
        g1 = g2;
        if j > q {
            sum += power * g2;
            let ratio = (2.0 * lambda + jf) / (jf + 1.0) * u;
            if ratio < 1.0 {
                let tail = bound * (2.0 * lambda + jf) / (jf + 1.0) * power.abs() * u / (1.0 - ratio);
                if tail <= 1e-17 * sum.abs() || tail < 1e-300 {
                    break;
                }
            }
        }
    }
    sum
}

fn check_angle(theta: f64) -> Result<()> {
    if !(0.0..PI).contains(&theta) {
        return Err(Error::Domain {
            function: "h_n",
            detail: format!("θ₁ must lie in [0, π), got {theta}"),
        });
    }
    Ok(())
}

/// h_n(u, θ₁, q) = h((n-2)/2, q, u, cos θ₁).
pub fn h_n(params: &ProblemParams, u: f64, theta: f64) -> Result<f64> {
    check_angle(theta)?;
    weier_h(KernelArgs::new(params.lambda(), params.q, u, theta.cos())?)
}

/// Weierstrass kernel K_q(x, y) for x at distance r and latitude θ₁ and the
/// mass point y = (t, π) on the negative axis, built directly from the
/// points: -|x-y|^{2-n} + Σ_{j ≤ q} |x|^j |y|^{2-n-j} G^λ_j(cos ∠(x, y)).
#[allow(non_snake_case)]
pub fn weierstrass_K(params: &ProblemParams, r: f64, t: f64, theta: f64) -> Result<f64> {
    if !(t > 0.0) || !(r >= 0.0) {
        return Err(Error::Domain {
            function: "weierstrass_K",
            detail: format!("need r >= 0 and t > 0, got r = {r}, t = {t}"),
        });
    }
    let lambda = params.lambda();
    let x = [r * theta.cos(), r * theta.sin()];
    let y = [-t, 0.0];
    let d2 = (x[0] - y[0]).powi(2) + (x[1] - y[1]).powi(2);
    if d2 <= (4.0 * f64::EPSILON * (r + t)).powi(2) {
        return Err(Error::Singularity { t });
    }
    let cos_angle = if r == 0.0 { 1.0 } else { (x[0] * y[0] + x[1] * y[1]) / (r * t) };
    let table = gegenbauer_table(lambda, params.q as usize, cos_angle.clamp(-1.0, 1.0));
    let two_minus_n = 2.0 - params.n as f64;
    let mut poly = 0.0;
    for (j, g) in table.iter().enumerate() {
        let rj = if j == 0 { 1.0 } else { r.powi(j as i32) };
        poly += rj * t.powf(two_minus_n - j as f64) * g;
    }
    Ok(poly - d2.powf(-lambda))
}

/// P_n(r, t, θ₁) = r t^{n-2} ((n-1) r² cos θ₁ + r t [n + (n-2) cos² θ₁] + (n-1) t² cos θ₁).
#[allow(non_snake_case)]
pub fn poisson_Pn(n: u32, r: f64, t: f64, theta: f64) -> f64 {
    let nf = n as f64;
    let c = theta.cos();
    r * t.powf(nf - 2.0) * ((nf - 1.0) * r * r * c + r * t * (nf + (nf - 2.0) * c * c) + (nf - 1.0) * t * t * c)
}

/// Log-substituted Poisson kernel k(t) for θ₁ ∈ [0, π/2].
///
/// With x = e^{-t} and c = cos θ₁,
/// k(t) = x {(n-1)c + [n + (n-2)c²] x + (n-1)c x²} / (1 + 2cx + x²)^{n/2+1},
/// oriented so that k(t) = (n-1) e^{(n-1)t} (1+e^t)^{-n} at θ₁ = 0.
pub fn log_kernel(n: u32, theta: f64, t: f64) -> Result<f64> {
    if !(0.0..=PI / 2.0).contains(&theta) {
        return Err(Error::Domain {
            function: "log_kernel",
            detail: format!("θ₁ must lie in [0, π/2], got {theta}"),
        });
    }
    log_kernel_extended(n, theta, t)
}

/// [`log_kernel`] without the angle restriction, for θ₁ ∈ [0, π).
pub fn log_kernel_extended(n: u32, theta: f64, t: f64) -> Result<f64> {
    if !(0.0..PI).contains(&theta) || n < 2 {
        return Err(Error::Domain {
            function: "log_kernel",
            detail: format!("θ₁ must lie in [0, π) and n >= 2, got θ₁ = {theta}, n = {n}"),
        });
    }
    let nf = n as f64;
    // exact zero at θ₁ = π/2
    let c = (PI / 2.0 - theta).sin();
    let a = (nf - 1.0) * c;
    let b = nf + (nf - 2.0) * c * c;
    let one_plus_c = 2.0 * (0.5 * theta).cos().powi(2);
    // x = e^{-t} when it is <= 1, otherwise y = e^{t}; the expression is
    // symmetric under x -> 1/x up to the factor x^{n-2}
    let (z, prefactor_exp) = if t >= 0.0 { ((-t).exp(), 1.0) } else { (t.exp(), nf - 1.0) };
    let denom = (1.0 - z).powi(2) + 2.0 * z * one_plus_c;
    let num = a + b * z + a * z * z;
    Ok(z.powf(prefactor_exp) * num / denom.powf(nf / 2.0 + 1.0))
}

/// Existence strip (σ₋, σ₊) of the two-sided Laplace transform of the log
/// kernel, read off the exponential rates of k at ±∞.
pub fn log_kernel_strip(n: u32, theta: f64) -> (f64, f64) {
    let nf = n as f64;
    if (PI / 2.0 - theta).sin() == 0.0 {
        (-2.0, nf)
    } else {
        (-1.0, nf - 1.0)
    }
}

/// Grid supremum of |h_n(u, θ₁, q)| / min(u^q, u^{q+1}) over `u_points`
/// log-uniform values in [u_min, u_max] and `theta_points` uniform values in
/// [0, θ_max].
pub fn bound_constant(
    n: u32,
    q: u32,
    (u_min, u_max): (f64, f64),
    theta_max: f64,
    u_points: usize,
    theta_points: usize,
) -> Result<f64> {
    let lambda = (n as f64 - 2.0) / 2.0;
    let (lu0, lu1) = (u_min.ln(), u_max.ln());
    let sups: Result<Vec<f64>> = (0..theta_points)
        .into_par_iter()
        .map(|i| {
            let theta = theta_max * i as f64 / (theta_points - 1) as f64;
            let xi = theta.cos();
            let mut sup = 0.0_f64;
            for k in 0..u_points {
                let u = (lu0 + (lu1 - lu0) * k as f64 / (u_points - 1) as f64).exp();
                let h = weier_h(KernelArgs { lambda, q, u, xi })?;
                let scale = u.powi(q as i32).min(u.powi(q as i32 + 1));
                sup = sup.max(h.abs() / scale);
            }
            Ok(sup)
        })
        .collect();
    Ok(sups?.into_iter().fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gegenbauer;

    #[test]
    fn params_validation() {
        assert!(ProblemParams::new(2, 0.5, 1.0).is_err());
        assert!(ProblemParams::new(3, 1.0, 1.0).is_err());
        assert!(ProblemParams::new(3, 0.5, -1.0).is_err());
        let p = ProblemParams::new(5, 2.4, 1.0).unwrap();
        assert_eq!(p.q, 2);
        assert_eq!(p.lambda(), 1.5);
    }

    #[test]
    fn riesz_values() {
        assert_eq!(riesz_k(1.0, 1.0, 0.0).unwrap(), 0.5);
        assert_eq!(riesz_k(0.5, 0.0, 0.3).unwrap(), 1.0);
        let (lambda, t, xi) = (1.5, 0.2_f64, 0.4);
        let series: f64 = gegenbauer_table(lambda, 30, xi)
            .iter()
            .enumerate()
            .map(|(j, g)| (-t).powi(j as i32) * g)
            .sum();
        assert!((riesz_k(lambda, t, xi).unwrap() - series).abs() < 1e-10);
        assert!(riesz_k(1.0, 1.0, -1.0).is_err());
        // large t uses the scaled form
        let big = riesz_k(1.0, 1e9, 0.5).unwrap();
        assert!((big * 1e18 - 1.0).abs() < 1e-8);
    }

    #[test]
    fn h_values() {
        for (lambda, q, xi) in [(0.5, 0, 0.3), (1.5, 2, -0.7), (2.0, 1, 1.0)] {
            assert_eq!(weier_h(KernelArgs::new(lambda, q, 0.0, xi).unwrap()).unwrap(), 0.0);
        }
        let h = weier_h(KernelArgs::new(0.5, 0, 1.0, 0.0).unwrap()).unwrap();
        assert!((h - (1.0 - 0.5_f64.sqrt())).abs() < 1e-15);
        // small u: h ≈ -(-u)^{q+1} G_{q+1}(ξ)
        let u = 0.01;
        let h = weier_h(KernelArgs::new(1.0, 1, u, 0.5).unwrap()).unwrap();
        let lead = -(u * u) * gegenbauer(1.0, 2, 0.5);
        assert!((h - lead).abs() < 3.0 * u.powi(3));
    }

    #[test]
    fn tail_series_matches_direct_form() {
        for (lambda, q) in [(0.5, 0), (1.0, 1), (1.5, 2), (2.5, 3)] {
            for xi in [-0.95, -0.3, 0.0, 0.6, 1.0] {
                for u in [0.05, 0.3, 0.5] {
                    let tail = weier_h(KernelArgs::new(lambda, q, u, xi).unwrap()).unwrap();
                    let table = gegenbauer_table(lambda, q as usize, xi);
                    let poly: f64 = table.iter().enumerate().map(|(j, g)| (-u).powi(j as i32) * g).sum();
                    let direct = poly - riesz_k(lambda, u, xi).unwrap();
                    assert!((tail - direct).abs() < 1e-13, "λ={lambda} q={q} ξ={xi} u={u}");
                }
            }
        }
    }

    #[test]
    fn h_n_examples() {
        let p3 = ProblemParams::new(3, 0.5, 1.0).unwrap();
        assert!((h_n(&p3, 1.0, PI / 2.0).unwrap() - (1.0 - 0.5_f64.sqrt())).abs() < 1e-15);
        let p4 = ProblemParams::new(4, 0.5, 1.0).unwrap();
        assert!((h_n(&p4, 2.0, 0.0).unwrap() - 8.0 / 9.0).abs() < 1e-15);
        let p5 = ProblemParams::new(5, 2.4, 1.0).unwrap();
        let a = h_n(&p5, 0.7, 2.0).unwrap();
        let b = weier_h(KernelArgs::new(1.5, 2, 0.7, 2.0_f64.cos()).unwrap()).unwrap();
        assert_eq!(a, b);
        assert!(h_n(&p3, 1.0, PI).is_err());
    }

    #[test]
    fn weierstrass_reduction() {
        let p3 = ProblemParams::new(3, 0.5, 1.0).unwrap();
        assert_eq!(weierstrass_K(&p3, 0.0, 3.0, 1.0).unwrap(), 0.0);
        let k = weierstrass_K(&p3, 1.0, 2.0, PI / 2.0).unwrap();
        assert!((k - 0.5 * (1.0 - 1.25_f64.powf(-0.5))).abs() < 1e-15);
        assert!((k - 0.052_786_404_500_042_06).abs() < 1e-12);
        let p4 = ProblemParams::new(4, 1.5, 1.0).unwrap();
        let (r, t, theta) = (3.0, 5.0, 1.0);
        let lhs = weierstrass_K(&p4, r, t, theta).unwrap();
        let rhs = t.powi(-2) * h_n(&p4, r / t, theta).unwrap();
        assert!((lhs - rhs).abs() < 1e-12 * rhs.abs());
        assert!(matches!(weierstrass_K(&p3, 2.0, 2.0, PI), Err(Error::Singularity { .. })));
    }

    #[test]
    fn poisson_values() {
        assert!((poisson_Pn(3, 1.0, 1.0, 0.0) - 8.0).abs() < 1e-14);
        assert!((poisson_Pn(3, 1.0, 1.0, PI / 2.0) - 3.0).abs() < 1e-14);
        // n = 4, r = 2, t = 1, cos θ = 1/2 expanded by hand:
        // 2 (3·4·½ + 2 [4 + 2·¼] + 3·½) = 2 (6 + 9 + 1.5) = 33
        let v = poisson_Pn(4, 2.0, 1.0, PI / 3.0);
        assert!((v - 33.0).abs() < 1e-12);
    }

    #[test]
    fn log_kernel_values() {
        assert!((log_kernel(3, 0.0, 0.0).unwrap() - 0.25).abs() < 1e-15);
        for n in 3..7u32 {
            for t in [-30.0, -2.0, 0.3, 5.0, 40.0] {
                let nf = n as f64;
                let direct = (nf - 1.0) * ((nf - 1.0) * t).exp() * (1.0 + t.exp()).powf(-nf);
                let v = log_kernel(n, 0.0, t).unwrap();
                assert!((v - direct).abs() <= 1e-13 * direct, "n={n} t={t}");
            }
        }
        // against the Poisson kernel: k(t) = x^{3-n} P_n(1, x, θ) / |1 + x e^{iθ}|^{n+2}, x = e^{-t}
        let (n, theta, t) = (5, 0.7_f64, 0.4_f64);
        let s = (-t).exp();
        let direct = s.powi(-2) * poisson_Pn(n, 1.0, s, theta) / (1.0 + 2.0 * s * theta.cos() + s * s).powf(3.5);
        assert!((log_kernel(n, theta, t).unwrap() - direct).abs() < 1e-14);
        assert!(log_kernel(5, PI / 2.0, 1.3).unwrap() >= 0.0);
        assert!(log_kernel(5, 2.0, 1.3).is_err());
    }

    #[test]
    fn log_kernel_sign_structure() {
        for n in 3..7u32 {
            for i in 0..=40 {
                let theta = PI / 2.0 * i as f64 / 40.0;
                for k in -200..=200 {
                    let t = k as f64 * 0.1;
                    assert!(log_kernel(n, theta, t).unwrap() >= 0.0);
                }
            }
            // beyond π/2 the kernel takes negative values
            let negative = (-200..=200).any(|k| log_kernel_extended(n, 2.0, k as f64 * 0.1).unwrap() < 0.0);
            assert!(negative);
        }
    }

    #[test]
    fn strip_matches_decay_rates() {
        for n in 3..7u32 {
            for theta in [0.0, 0.8, PI / 2.0] {
                let (lo, hi) = log_kernel_strip(n, theta);
                let rate = |t: f64| {
                    (log_kernel(n, theta, t + 1.0).unwrap().ln() - log_kernel(n, theta, t).unwrap().ln()).abs()
                };
                // k(t) ~ e^{lo·t} as t -> +∞ and ~ e^{hi·t} as t -> -∞
                assert!((rate(60.0) + lo).abs() < 1e-6, "n={n} θ={theta}");
                assert!((rate(-61.0) - hi).abs() < 1e-6, "n={n} θ={theta}");
            }
        }
    }

    #[test]
    fn bound_is_stable_under_refinement() {
        for (n, q) in [(3, 0), (4, 1)] {
            let coarse = bound_constant(n, q, (1e-6, 1e3), PI - 0.1, 1000, 40).unwrap();
            let fine = bound_constant(n, q, (1e-6, 1e3), PI - 0.1, 4000, 160).unwrap();
            assert!(coarse.is_finite() && fine >= coarse);
            assert!((fine / coarse - 1.0) < 0.05);
        }
    }
}
