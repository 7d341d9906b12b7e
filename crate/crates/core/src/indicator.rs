//! The indicator H(θ₁) = lim r^{-ρ} u(r, θ₁) of a potential whose mass
//! n(t) ~ Δ t^ρ sits on the negative axis: closed and integral forms, the
//! behavior at θ₁ → π, the zero set of its Legendre factor, the constants
//! of the Tauberian statements and the order equation of the log kernel.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kernels::{h_n, log_kernel, log_kernel_strip, ProblemParams};
use crate::mellin::{mellin_numeric, MellinStrip};
use crate::quad::{integrate_real_line, QuadEstimate, QuadratureSpec};
use crate::specfun::{cos_pi, digamma, factorial, gamma_real, legendre_p_weighted_angle, sin_pi, EULER_GAMMA};

/// Default scan step for [`zero_set`], in radians.
pub const ZERO_SCAN_STEP: f64 = 1e-3;
/// Guard band around each root inside which an angle counts as exceptional.
pub const BRACKET_WIDTH: f64 = 1e-6;

const BISECTION_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndicatorSource {
    ClosedForm,
    IntegralForm,
    Asymptotic,
}

/// Indicator level; the value at θ₁ = π is the limit -∞ and is kept
/// symbolic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Level {
    Finite(f64),
    NegInfinity,
}

impl Level {
    pub fn finite(self) -> Option<f64> {
        match self {
            Level::Finite(v) => Some(v),
            Level::NegInfinity => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndicatorValue {
    pub value: Level,
    pub theta: f64,
    pub source: IndicatorSource,
}

/// (sin θ₁)^{(3-n)/2} P^{(3-n)/2}_{ρ+(n-3)/2}(cos θ₁) for any n >= 2.
///
/// This is regular at θ₁ = 0 and vanishes exactly on the exceptional set.
pub fn legendre_factor_raw(n: u32, rho: f64, theta: f64) -> Result<f64> {
    let nf = n as f64;
    let w = legendre_p_weighted_angle(
        Complex64::new(rho + (nf - 3.0) / 2.0, 0.0),
        Complex64::new((3.0 - nf) / 2.0, 0.0),
        theta,
    )?;
    Ok(w.re)
}

/// The Legendre factor of the indicator for `params`.
pub fn legendre_factor(params: &ProblemParams, theta: f64) -> Result<f64> {
    legendre_factor_raw(params.n, params.rho, theta)
}

fn rising(rho: f64, from: u32, to: u32) -> f64 {
    (from..=to).map(|k| rho + k as f64).product()
}

/// π 2^{(n-3)/2} Γ((n-1)/2) / ((n-3)! sin πρ), common to the indicator and
/// the ratio limits.
fn base_constant(n: u32, rho: f64) -> f64 {
    let nf = n as f64;
    PI * 2f64.powf((nf - 3.0) / 2.0) * gamma_real((nf - 1.0) / 2.0).expect("n >= 3") / (factorial(n - 3) * sin_pi(rho))
}

/// Closed form of H(θ₁) for θ₁ ∈ [0, π):
/// π 2^{(n-3)/2} Γ((n-1)/2) ∏_{k=1}^{n-2}(ρ+k) Δ / ((n-3)! sin πρ) times the
/// Legendre factor.
pub fn indicator_closed(params: &ProblemParams, theta: f64) -> Result<f64> {
    let w = legendre_factor(params, theta)?;
    if params.delta == 0.0 {
        return Ok(0.0);
    }
    Ok(base_constant(params.n, params.rho) * rising(params.rho, 1, params.n - 2) * params.delta * w)
}

/// H(θ₁) = (ρ+n-2) Δ ∫₀^∞ s^{-ρ-1} h_n(s, θ₁, q) ds by quadrature.
pub fn indicator_integral(params: &ProblemParams, theta: f64, quad: &QuadratureSpec) -> Result<QuadEstimate<f64>> {
    h_n(params, 0.0, theta)?;
    let m = mellin_numeric(
        |u| h_n(params, u, theta).unwrap_or(f64::NAN),
        MellinStrip::subtracted(params.q),
        Complex64::new(-params.rho, 0.0),
        quad,
    )?;
    let factor = (params.rho + params.n as f64 - 2.0) * params.delta;
    Ok(m.map(|v| v.re, 1.0).scale(factor))
}

/// Leading behavior of H as θ₁ ↑ π.
///
/// For n >= 4 this is -(ρ+n-2) Γ((n-3)/2)² Δ / (2 (n-4)!) (cos θ₁/2)^{3-n};
/// for n = 3 it is (ρ+1) Δ [2 ln cos(θ₁/2) + 2γ + 2ψ(-ρ) - π cot πρ].
pub fn indicator_near_pi(params: &ProblemParams, theta: f64) -> Result<f64> {
    if !(theta > PI - 0.5 && theta < PI) {
        return Err(Error::Domain {
            function: "indicator_near_pi",
            detail: format!("θ₁ must lie in (π - 0.5, π), got {theta}"),
        });
    }
    let nf = params.n as f64;
    let (rho, delta) = (params.rho, params.delta);
    let half_cos = (0.5 * (PI - theta)).sin();
    if params.n == 3 {
        let cot = cos_pi(rho) / sin_pi(rho);
        let bracket = 2.0 * half_cos.ln() + 2.0 * EULER_GAMMA + 2.0 * digamma(-rho)? - PI * cot;
        return Ok((rho + 1.0) * delta * bracket);
    }
    let g = gamma_real((nf - 3.0) / 2.0)?;
    Ok(-(rho + nf - 2.0) * g * g * delta / (2.0 * factorial(params.n - 4)) * half_cos.powf(3.0 - nf))
}

/// H(θ₁) on the closed interval [0, π]; the endpoint is the symbolic -∞.
pub fn indicator(params: &ProblemParams, theta: f64) -> Result<IndicatorValue> {
    if theta == PI {
        let value = if params.delta == 0.0 { Level::Finite(0.0) } else { Level::NegInfinity };
        return Ok(IndicatorValue { value, theta, source: IndicatorSource::Asymptotic });
    }
    Ok(IndicatorValue {
        value: Level::Finite(indicator_closed(params, theta)?),
        theta,
        source: IndicatorSource::ClosedForm,
    })
}

/// The exceptional set Θ_n(ρ): zeros of the Legendre factor in (0, π).
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroSet {
    pub n: u32,
    pub rho: f64,
    /// Roots in radians, ascending.
    pub roots: Vec<f64>,
    /// Legendre factor at each root.
    pub residuals: Vec<f64>,
    pub bracket_width: f64,
}

impl ZeroSet {
    /// The root within `bracket_width` of `theta`, if any.
    pub fn exceptional(&self, theta: f64) -> Option<f64> {
        self.roots.iter().copied().find(|r| (theta - r).abs() <= self.bracket_width)
    }
}

/// Zero set at the default resolution, checked against the count q + 1.
pub fn zero_set(params: &ProblemParams) -> Result<ZeroSet> {
    let set = zero_set_with_resolution(params, ZERO_SCAN_STEP)?;
    let expected = params.q as usize + 1;
    if set.roots.len() != expected {
        return Err(Error::CountMismatch { found: set.roots.len(), expected });
    }
    Ok(set)
}

/// All sign changes of the Legendre factor on a scan of step `step`,
/// refined by bisection and one Newton step. No count check.
pub fn zero_set_with_resolution(params: &ProblemParams, step: f64) -> Result<ZeroSet> {
    if !(step > 0.0 && step < 0.1) {
        return Err(Error::InvalidParams(format!("scan step must lie in (0, 0.1), got {step}")));
    }
    let f = |t: f64| legendre_factor(params, t);
    let count = (PI / step).ceil() as usize;
    let samples: Vec<(f64, f64)> = (0..count)
        .into_par_iter()
        .map(|k| {
            let t = k as f64 * step;
            f(t).map(|v| (t, v))
        })
        .collect::<Result<_>>()?;
    let mut roots = Vec::new();
    for pair in samples.windows(2) {
        let ((a, fa), (b, fb)) = (pair[0], pair[1]);
        if fa == 0.0 && a > 0.0 {
            roots.push(a);
        } else if fa != 0.0 && fb != 0.0 && fa.signum() != fb.signum() {
            roots.push(refine_root(&f, a, b, fa)?);
        }
    }
    // H -> -∞ at π, so the factor ends with the sign of -sin πρ; a root
    // closer to π than the scan step shows up as a mismatch with that sign
    if let Some(&(t, v)) = samples.last() {
        let limit_sign = -sin_pi(params.rho).signum();
        if v == 0.0 {
            roots.push(t);
        } else if v.signum() != limit_sign {
            roots.push(refine_root(&f, t, PI, v)?);
        }
    }
    let residuals = roots.iter().map(|&r| f(r)).collect::<Result<_>>()?;
    Ok(ZeroSet { n: params.n, rho: params.rho, roots, residuals, bracket_width: BRACKET_WIDTH })
}

fn refine_root(f: &impl Fn(f64) -> Result<f64>, mut a: f64, mut b: f64, mut fa: f64) -> Result<f64> {
    while b - a > BISECTION_TOL {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m)?;
        if fm == 0.0 {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    let x = 0.5 * (a + b);
    let fx = f(x)?;
    let h = 1e-6;
    if x + h >= PI {
        return Ok(x);
    }
    let d = (f(x + h)? - f(x - h)?) / (2.0 * h);
    if d != 0.0 {
        let y = x - fx / d;
        if (a - BISECTION_TOL..=b + BISECTION_TOL).contains(&y) && f(y)?.abs() < fx.abs() {
            return Ok(y);
        }
    }
    Ok(x)
}

fn check_exceptional(params: &ProblemParams, angle: f64) -> Result<()> {
    let set = zero_set_with_resolution(params, ZERO_SCAN_STEP)?;
    if let Some(root) = set.exceptional(angle) {
        return Err(Error::ExceptionalAngle { angle, root, width: set.bracket_width });
    }
    Ok(())
}

/// The constant of the Tauberian statement at angle φ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TauberianConstant {
    /// 2^{(n-3)/2} Γ((n-2)/2) sin πρ (sin φ)^{(n-3)/2} /
    /// (π^{3/2} ∏_{k=1}^{n-3}(ρ+k) P^{(3-n)/2}_{ρ+(n-3)/2}(cos φ)).
    pub printed: f64,
    /// printed · H(φ)/Δ, which comes out as ρ + n - 2.
    pub audit_product: f64,
    /// printed / (ρ + n - 2), the factor that turns H(φ) back into Δ.
    pub density_constant: f64,
}

pub fn tauberian_constant(params: &ProblemParams, phi: f64) -> Result<TauberianConstant> {
    check_exceptional(params, phi)?;
    let nf = params.n as f64;
    let rho = params.rho;
    let w = legendre_factor(params, phi)?;
    let printed = 2f64.powf((nf - 3.0) / 2.0) * gamma_real((nf - 2.0) / 2.0)? * sin_pi(rho)
        / (PI.powf(1.5) * rising(rho, 1, params.n - 3) * w);
    let unit = params.with_delta(1.0);
    let audit_product = printed * indicator_closed(&unit, phi)?;
    Ok(TauberianConstant { printed, audit_product, density_constant: printed / (rho + nf - 2.0) })
}

/// Transfer factor H(θ₁)/H(φ) = W(θ₁)/W(φ) of the Legendre factor W, for
/// any n >= 2.
pub fn transfer_factor(n: u32, rho: f64, phi: f64, theta: f64) -> Result<f64> {
    let wp = legendre_factor_raw(n, rho, phi)?;
    if wp == 0.0 {
        return Err(Error::ExceptionalAngle { angle: phi, root: phi, width: 0.0 });
    }
    Ok(legendre_factor_raw(n, rho, theta)? / wp)
}

/// H(θ₁) from a known H(φ), valid for φ off the exceptional set.
pub fn transfer_indicator(params: &ProblemParams, phi: f64, h_phi: f64, theta: f64) -> Result<f64> {
    check_exceptional(params, phi)?;
    if theta == phi {
        return Ok(h_phi);
    }
    Ok(transfer_factor(params.n, params.rho, phi, theta)? * h_phi)
}

/// Limits of u/n and u/N along θ₁ for a mass with n(t) ~ Δ t^ρ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioLimits {
    pub per_n: f64,
    pub per_big_n: f64,
}

pub fn ratio_limits(params: &ProblemParams, theta: f64) -> Result<RatioLimits> {
    let n = params.n;
    let rho = params.rho;
    let w = legendre_factor(params, theta)?;
    let nf = n as f64;
    let lead = PI * 2f64.powf((nf - 3.0) / 2.0) * gamma_real((nf - 1.0) / 2.0)? / sin_pi(rho);
    let per_n = lead * rising(rho, 1, n - 2) / factorial(n - 3) * w;
    let per_big_n = lead * rising(rho, 0, n - 2) / factorial(n - 2) * w;
    Ok(RatioLimits { per_n, per_big_n })
}

/// Γ(n-1-ρ) Γ(1+ρ) / (n-2)!, the right side of the order equation, for
/// ρ ∈ [0, 1] (the endpoints as limits).
pub fn order_rhs(n: u32, rho: f64) -> Result<f64> {
    if n < 3 || !(0.0..=1.0).contains(&rho) {
        return Err(Error::InvalidParams(format!("need n >= 3 and ρ in [0, 1], got n = {n}, ρ = {rho}")));
    }
    if rho == 1.0 {
        return Ok(if n == 3 { 1.0 } else { 1.0 / (n as f64 - 2.0) });
    }
    Ok(gamma_real(n as f64 - 1.0 - rho)? * gamma_real(1.0 + rho)? / factorial(n - 2))
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrderSolution {
    /// Smallest root.
    pub rho: f64,
    /// All roots in (0, 1), ascending.
    pub roots: Vec<f64>,
    pub residual: f64,
    /// Closed range of the right side over [0, 1].
    pub admissible: (f64, f64),
}

/// Solves Δ̄ = Γ(n-1-ρ) Γ(1+ρ) / (n-2)! for ρ ∈ (0, 1).
///
/// The right side is split into monotone branches at the zeros of
/// ψ(1+ρ) - ψ(n-1-ρ); every branch containing Δ̄ contributes one root.
pub fn solve_order(n: u32, target: f64) -> Result<OrderSolution> {
    if !target.is_finite() {
        return Err(Error::InvalidParams(format!("target must be finite, got {target}")));
    }
    let slope = |r: f64| -> Result<f64> { Ok(digamma(1.0 + r)? - digamma(n as f64 - 1.0 - r)?) };
    let grid = 1000;
    let mut cuts = vec![0.0];
    let mut prev = (1e-9, slope(1e-9)?);
    for k in 1..=grid {
        let r = if k == grid { 1.0 - 1e-9 } else { k as f64 / grid as f64 };
        let s = slope(r)?;
        if s == 0.0 {
            cuts.push(r);
        } else if prev.1 != 0.0 && s.signum() != prev.1.signum() {
            cuts.push(bisect(&slope, prev.0, r)?);
        }
        prev = (r, s);
    }
    cuts.push(1.0);
    cuts.dedup();

    let values: Vec<f64> = cuts.iter().map(|&c| order_rhs(n, c)).collect::<Result<_>>()?;
    let lower = values.iter().copied().fold(f64::INFINITY, f64::min);
    let upper = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let f = |r: f64| -> Result<f64> { Ok(order_rhs(n, r)? - target) };

    let mut roots: Vec<f64> = Vec::new();
    for i in 1..cuts.len() - 1 {
        if (values[i] - target).abs() <= 1e-12 {
            roots.push(cuts[i]);
        }
    }
    for i in 0..cuts.len() - 1 {
        let (a, b) = (cuts[i], cuts[i + 1]);
        let (fa, fb) = (values[i] - target, values[i + 1] - target);
        if fa.abs() <= 1e-12 || fb.abs() <= 1e-12 || fa.signum() == fb.signum() {
            continue;
        }
        let mut r = bisect(&f, a, b)?;
        let d = (f(r + 1e-7)? - f(r - 1e-7)?) / 2e-7;
        if d != 0.0 {
            let y = r - f(r)? / d;
            if y > a && y < b && f(y)?.abs() < f(r)?.abs() {
                r = y;
            }
        }
        roots.push(r);
    }
    roots.sort_by(f64::total_cmp);
    let Some(&rho) = roots.first() else {
        return Err(Error::OutOfRange { value: target, lower, upper });
    };
    let residual = f(rho)?;
    Ok(OrderSolution { rho, roots, residual, admissible: (lower, upper) })
}

fn bisect(f: &impl Fn(f64) -> Result<f64>, mut a: f64, mut b: f64) -> Result<f64> {
    let mut fa = f(a)?;
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m)?;
        if fm == 0.0 {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

/// ∫ e^{-st} k(t) dt over the real line for the log kernel at angle θ₁.
pub fn laplace_log_kernel(n: u32, theta: f64, s: f64, quad: &QuadratureSpec) -> Result<QuadEstimate<f64>> {
    log_kernel(n, theta, 0.0)?;
    let (lower, upper) = log_kernel_strip(n, theta);
    if !(s > lower && s < upper) {
        return Err(Error::StripViolation { re_s: s, lower, upper });
    }
    Ok(integrate_real_line(|t| (-s * t).exp() * log_kernel(n, theta, t).unwrap_or(f64::NAN), quad))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u32, rho: f64) -> ProblemParams {
        ProblemParams::new(n, rho, 1.0).unwrap()
    }

    #[test]
    fn closed_form_examples() {
        let h = indicator_closed(&p(3, 0.5), 0.0).unwrap();
        assert!((h - 1.5 * PI).abs() < 1e-13);
        assert_eq!(indicator_closed(&p(3, 0.5).with_delta(0.0), 1.0).unwrap(), 0.0);
        let set = zero_set(&p(3, 0.5)).unwrap();
        assert!(indicator_closed(&p(3, 0.5), set.roots[0]).unwrap().abs() < 1e-12);
        assert!(indicator_closed(&p(3, 0.5), PI).is_err());
    }

    #[test]
    fn integral_form() {
        let quad = QuadratureSpec::default();
        let v = indicator_integral(&p(3, 0.5), 0.0, &quad).unwrap();
        assert!((v.value - 1.5 * PI).abs() < 1e-9 && v.converged, "{v:?}");
        for (n, rho, theta) in [(3, 0.5, PI / 2.0), (5, 2.4, 1.0), (4, 1.3, 2.5)] {
            let params = p(n, rho);
            let num = indicator_integral(&params, theta, &quad).unwrap().value;
            let closed = indicator_closed(&params, theta).unwrap();
            assert!((num / closed - 1.0).abs() < 1e-8, "n={n} ρ={rho}: {num} vs {closed}");
        }
    }

    #[test]
    fn endpoint_asymptotics() {
        for rho in [0.3, 0.5, 1.7] {
            let params = p(3, rho);
            let theta = PI - 1e-6;
            let a = indicator_near_pi(&params, theta).unwrap();
            let c = indicator_closed(&params, theta).unwrap();
            assert!((a / c - 1.0).abs() < 1e-3, "ρ={rho}");
        }
        for n in [4, 5, 7] {
            let params = p(n, 0.5);
            let theta = PI - 1e-4;
            let a = indicator_near_pi(&params, theta).unwrap();
            let c = indicator_closed(&params, theta).unwrap();
            assert!((a / c - 1.0).abs() < 1e-3, "n={n}: {a} vs {c}");
            let b = indicator_near_pi(&params, theta + 5e-5).unwrap();
            assert!(b < a && a < 0.0);
        }
        let params = p(3, 0.3);
        let theta = PI - 1e-3;
        let c = indicator_closed(&params, theta).unwrap();
        assert!((c - indicator_near_pi(&params, theta).unwrap()).abs() / c.abs() <= 0.02);
        assert!(indicator_near_pi(&p(3, 0.5), 1.0).is_err());
        let end = indicator(&p(4, 0.5), PI).unwrap();
        assert_eq!(end.value, Level::NegInfinity);
        assert_eq!(end.source, IndicatorSource::Asymptotic);
    }

    #[test]
    fn zero_sets() {
        let r3 = zero_set(&p(3, 0.5)).unwrap();
        assert_eq!(r3.roots.len(), 1);
        assert!((129.0..131.0).contains(&r3.roots[0].to_degrees()));
        let r5 = zero_set(&p(5, 0.5)).unwrap();
        assert!((114.0..116.0).contains(&r5.roots[0].to_degrees()));
        let r = zero_set(&p(3, 2.5)).unwrap();
        assert_eq!(r.roots.len(), 3);
        assert!(r.residuals.iter().all(|v| v.abs() < 1e-10));
        assert!(r.roots.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn tauberian_constant_values() {
        let c = tauberian_constant(&p(3, 0.5), 0.0).unwrap();
        assert!((c.printed - 1.0 / PI).abs() < 1e-14);
        assert!((c.audit_product - 1.5).abs() < 1e-13);
        let err = tauberian_constant(&p(3, 0.5), zero_set(&p(3, 0.5)).unwrap().roots[0]);
        assert!(matches!(err, Err(Error::ExceptionalAngle { .. })));
        let c = tauberian_constant(&p(4, 0.5), PI / 2.0).unwrap();
        assert!((c.audit_product - 2.5).abs() < 1e-12);
        let h = indicator_closed(&p(4, 0.5).with_delta(3.0), PI / 2.0).unwrap();
        assert!((c.density_constant * h - 3.0).abs() < 1e-12);
    }

    #[test]
    fn transfer() {
        let params = p(3, 0.5);
        let h = indicator_closed(&params, PI / 4.0).unwrap();
        let t = transfer_indicator(&params, PI / 4.0, h, PI / 2.0).unwrap();
        assert!((t - indicator_closed(&params, PI / 2.0).unwrap()).abs() < 1e-10);
        assert_eq!(transfer_indicator(&params, 0.7, 2.5, 0.7).unwrap(), 2.5);
        // two dimensions: cos(ρθ₁)/cos(ρφ)
        let f = transfer_factor(2, 0.7, 0.4, 1.9).unwrap();
        assert!((f - (0.7 * 1.9f64).cos() / (0.7 * 0.4f64).cos()).abs() < 1e-12);
    }

    #[test]
    fn ratios() {
        let r = ratio_limits(&p(3, 0.5), 0.0).unwrap();
        assert!((r.per_n - 1.5 * PI).abs() < 1e-13);
        assert!((r.per_big_n - 0.75 * PI).abs() < 1e-13);
        let root = zero_set(&p(3, 0.5)).unwrap().roots[0];
        let r = ratio_limits(&p(3, 0.5), root).unwrap();
        assert!(r.per_n.abs() < 1e-12 && r.per_big_n.abs() < 1e-12);
    }

    #[test]
    fn order_equation() {
        let s = solve_order(3, PI / 4.0).unwrap();
        assert_eq!(s.roots.len(), 1);
        assert!((s.rho - 0.5).abs() < 1e-6);
        let target = order_rhs(4, 0.3).unwrap();
        let s = solve_order(4, target).unwrap();
        assert!((s.rho - 0.3).abs() < 1e-6 && s.residual.abs() < 1e-10);
        let s = solve_order(3, order_rhs(3, 0.2).unwrap()).unwrap();
        assert_eq!(s.roots.len(), 2);
        assert!((s.roots[0] - 0.2).abs() < 1e-9 && (s.roots[1] - 0.8).abs() < 1e-9);
        assert!(matches!(solve_order(3, 1.0), Err(Error::OutOfRange { .. })));
        assert!(matches!(solve_order(3, 1e6), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn log_kernel_laplace() {
        let quad = QuadratureSpec::default();
        let v = laplace_log_kernel(3, 0.0, 0.0, &quad).unwrap();
        assert!((v.value - 1.0).abs() < 1e-10);
        let v = laplace_log_kernel(3, 0.0, 0.5, &quad).unwrap();
        assert!((v.value - PI / 4.0).abs() < 1e-10);
        assert!(matches!(laplace_log_kernel(3, 0.0, 2.5, &quad), Err(Error::StripViolation { .. })));
        let a = laplace_log_kernel(5, PI / 4.0, 0.2, &quad).unwrap().value;
        let b = laplace_log_kernel(5, PI / 4.0, 0.6, &quad).unwrap().value;
        assert!(a > 0.0 && b > 0.0);
    }
}
