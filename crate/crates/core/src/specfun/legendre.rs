//! Associated Legendre functions of the first kind on the cut (Ferrers
//! functions) for complex degree and order.
//!
//! P^μ_ν(ξ) = ((1+ξ)/(1-ξ))^{μ/2} F(-ν, ν+1; 1-μ; (1-ξ)/2) / Γ(1-μ).
//!
//! When μ is a positive integer the hypergeometric representation has a
//! removable 0·∞ and the value is built instead from order μ-1 with
//! (ν-μ+2) P^{μ-1}_{ν+1} - (ν+μ) ξ P^{μ-1}_ν = √(1-ξ²) P^μ_ν.

use num_complex::Complex64;

use super::hypergeometric::hyp2f1_regularized_split;
use crate::error::{Error, Result};

/// Degree, order and argument of a Ferrers function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LegendreArgs {
    pub degree: Complex64,
    pub order: Complex64,
    pub xi: f64,
}

impl LegendreArgs {
    pub fn new(degree: Complex64, order: Complex64, xi: f64) -> Result<Self> {
        if !(xi > -1.0 && xi < 1.0) {
            return Err(Error::Domain {
                function: "legendre_p_cut",
                detail: format!("argument must lie in (-1, 1), got {xi}"),
            });
        }
        if !(degree.re.is_finite() && degree.im.is_finite() && order.re.is_finite() && order.im.is_finite()) {
            return Err(Error::Domain {
                function: "legendre_p_cut",
                detail: "non-finite degree or order".into(),
            });
        }
        Ok(Self { degree, order, xi })
    }

    /// Real degree and order.
    pub fn real(degree: f64, order: f64, xi: f64) -> Result<Self> {
        Self::new(Complex64::new(degree, 0.0), Complex64::new(order, 0.0), xi)
    }
}

fn positive_integer_order(mu: Complex64) -> Option<u32> {
    (mu.im == 0.0 && mu.re >= 1.0 && mu.re == mu.re.round()).then_some(mu.re as u32)
}

/// P^μ_ν(ξ) on the cut -1 < ξ < 1.
pub fn legendre_p_cut(args: LegendreArgs) -> Result<Complex64> {
    let LegendreArgs { degree: nu, order: mu, xi } = args;
    if let Some(m) = positive_integer_order(mu) {
        return by_order_recurrence(nu, m, xi);
    }
    let ratio = ((1.0 + xi) / (1.0 - xi)).ln();
    let pref = (mu * 0.5 * ratio).exp();
    Ok(pref * hyp2f1_regularized_split(-nu, nu + 1.0, 1.0 - mu, 0.5 * (1.0 - xi), 0.5 * (1.0 + xi))?)
}

fn by_order_recurrence(nu: Complex64, m: u32, xi: f64) -> Result<Complex64> {
    let lower = Complex64::new(m as f64 - 1.0, 0.0);
    let up = legendre_p_cut(LegendreArgs { degree: nu + 1.0, order: lower, xi })?;
    let same = legendre_p_cut(LegendreArgs { degree: nu, order: lower, xi })?;
    let mf = m as f64;
    Ok(((nu - mf + 2.0) * up - (nu + mf) * xi * same) / (1.0 - xi * xi).sqrt())
}

/// (1-ξ²)^{μ/2} P^μ_ν(ξ), which equals (1+ξ)^μ F(-ν, ν+1; 1-μ; (1-ξ)/2)/Γ(1-μ).
///
/// Unlike [`legendre_p_cut`] this is regular at ξ = 1, where it equals
/// 2^μ/Γ(1-μ), so `xi` may be anywhere in (-1, 1].
pub fn legendre_p_weighted(degree: Complex64, order: Complex64, xi: f64) -> Result<Complex64> {
    if !(xi > -1.0 && xi <= 1.0) {
        return Err(Error::Domain {
            function: "legendre_p_weighted",
            detail: format!("argument must lie in (-1, 1], got {xi}"),
        });
    }
    if positive_integer_order(order).is_some() {
        let p = legendre_p_cut(LegendreArgs::new(degree, order, xi)?)?;
        return Ok(p * (order * 0.5 * (1.0 - xi * xi).ln()).exp());
    }
    let pref = (order * (1.0 + xi).ln()).exp();
    if xi == 1.0 {
        return Ok(pref * super::gamma::rgamma(1.0 - order));
    }
    Ok(pref * hyp2f1_regularized_split(-degree, degree + 1.0, 1.0 - order, 0.5 * (1.0 - xi), 0.5 * (1.0 + xi))?)
}

/// The weighted function of [`legendre_p_weighted`] at ξ = cos θ for
/// θ ∈ [0, π), with 1 ± ξ formed from half angles so that θ near π keeps
/// full relative precision in 1 + ξ.
pub fn legendre_p_weighted_angle(degree: Complex64, order: Complex64, theta: f64) -> Result<Complex64> {
    if !(0.0..std::f64::consts::PI).contains(&theta) {
        return Err(Error::Domain {
            function: "legendre_p_weighted_angle",
            detail: format!("angle must lie in [0, π), got {theta}"),
        });
    }
    if positive_integer_order(order).is_some() {
        return legendre_p_weighted(degree, order, theta.cos());
    }
    let (s, c) = (0.5 * theta).sin_cos();
    let (x, w) = (s * s, c * c);
    let pref = (order * (2.0 * w).ln()).exp();
    if theta == 0.0 {
        return Ok(pref * super::gamma::rgamma(1.0 - order));
    }
    Ok(pref * hyp2f1_regularized_split(-degree, degree + 1.0, 1.0 - order, x, w)?)
}

/// Real-valued P^μ_ν(ξ) for real ν, μ.
pub fn legendre_p_real(degree: f64, order: f64, xi: f64) -> Result<f64> {
    Ok(legendre_p_cut(LegendreArgs::real(degree, order, xi)?)?.re)
}
