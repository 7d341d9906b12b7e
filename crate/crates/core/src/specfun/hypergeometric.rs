//! Gauss hypergeometric function F(a, b; c; x) for complex parameters and
//! real argument in (-1, 1).
//!
//! * `x < 0`: Pfaff transformation onto (0, 1/2).
//! * `0 <= x <= 1/2`: Maclaurin series.
//! * `x > 1/2`: the 1 - x connection formula, including the logarithmic
//!   cases where c - a - b is an integer.

use num_complex::Complex64;

use super::gamma::{digamma_complex, gamma, is_complex_pole, rgamma, EULER_GAMMA};
use crate::error::{Error, Result};

/// Stopping threshold for series terms, relative to the running sum.
const SERIES_EPS: f64 = 1e-16;
/// A series that has not reached this relative size is reported as
/// non-convergent.
pub const SERIES_TOL: f64 = 1e-13;
/// Hard cap on the number of series terms.
pub const SERIES_MAX_TERMS: usize = 1_000_000;

const DIRECT_LIMIT: f64 = 0.5;

type C = Complex64;

fn re(x: f64) -> C {
    C::new(x, 0.0)
}

/// F(a, b; c; x).
pub fn hyp2f1(a: C, b: C, c: C, x: f64) -> Result<C> {
    if is_complex_pole(c) {
        return Err(Error::Pole {
            function: "hyp2f1",
            at: format!("c = {c}"),
        });
    }
    check_argument(x)?;
    if is_complex_pole(a) || is_complex_pole(b) {
        return terminating_series(a, b, c, x);
    }
    if x < 0.0 {
        // F(a,b;c;x) = (1-x)^{-a} F(a, c-b; c; x/(x-1))
        let z = x / (x - 1.0);
        let pref = (-a * (1.0 - x).ln()).exp();
        return Ok(pref * hyp2f1(a, c - b, c, z)?);
    }
    if x <= DIRECT_LIMIT {
        return maclaurin(a, b, c, x);
    }
    Ok(connection_regularized(a, b, c, 1.0 - x)? * gamma(c)?)
}

/// F(a, b; c; x) / Γ(c). Requires c not to be a pole of Γ.
pub fn hyp2f1_regularized(a: C, b: C, c: C, x: f64) -> Result<C> {
    hyp2f1_regularized_split(a, b, c, x, 1.0 - x)
}

/// Regularized F with the complement `w = 1 - x` supplied by the caller,
/// so that arguments close to 1 keep full relative precision in `w`.
pub(crate) fn hyp2f1_regularized_split(a: C, b: C, c: C, x: f64, w: f64) -> Result<C> {
    if is_complex_pole(c) {
        return Err(Error::Pole {
            function: "hyp2f1_regularized",
            at: format!("c = {c}"),
        });
    }
    // x itself may round to 1 while w is still positive
    if !(x > -1.0 && w > 0.0 && w < 2.0) {
        return Err(Error::Domain {
            function: "hyp2f1",
            detail: format!("|x| < 1 required, got x = {x}, 1 - x = {w}"),
        });
    }
    if is_complex_pole(a) || is_complex_pole(b) || x <= DIRECT_LIMIT {
        return Ok(hyp2f1(a, b, c, x)? * rgamma(c));
    }
    connection_regularized(a, b, c, w)
}

fn check_argument(x: f64) -> Result<()> {
    if !(x > -1.0 && x < 1.0) {
        return Err(Error::Domain {
            function: "hyp2f1",
            detail: format!("|x| < 1 required, got {x}"),
        });
    }
    Ok(())
}

fn terminating_series(a: C, b: C, c: C, x: f64) -> Result<C> {
    let mut term = re(1.0);
    let mut sum = term;
    let mut k = 0.0;
    loop {
        let factor = (a + k) * (b + k) / ((c + k) * (k + 1.0));
        if factor.norm() == 0.0 {
            return Ok(sum);
        }
        term *= factor * x;
        sum += term;
        k += 1.0;
        if k as usize > SERIES_MAX_TERMS {
            return Err(Error::NonConvergence {
                function: "hyp2f1",
                iterations: SERIES_MAX_TERMS,
            });
        }
    }
}

/// Direct power series, used for |x| <= 1/2 (and inside the connection
/// formulas, always with argument <= 1/2).
fn maclaurin(a: C, b: C, c: C, x: f64) -> Result<C> {
    let mut term = re(1.0);
    let mut sum = term;
    let mut largest = 1.0_f64;
    let mut quiet = 0;
    for k in 0..SERIES_MAX_TERMS {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * x;
        sum += term;
        let t = term.norm();
        largest = largest.max(t);
        if t <= SERIES_EPS * sum.norm() || t <= SERIES_EPS * 1e-2 * largest || t == 0.0 {
            quiet += 1;
            if quiet >= 2 {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    if term.norm() <= SERIES_TOL * sum.norm() {
        return Ok(sum);
    }
    Err(Error::NonConvergence {
        function: "hyp2f1",
        iterations: SERIES_MAX_TERMS,
    })
}

/// Regularized F(a,b;c;1-w)/Γ(c) for 0 < w < 1/2 via the 1 - x connection
/// formulas.
fn connection_regularized(a: C, b: C, c: C, w: f64) -> Result<C> {
    let s = c - a - b;
    // c - a - b picks up rounding when a and b come from ν and -ν; within
    // this distance of an integer the generic formula cancels badly
    let snap = 1e-11 * (1.0 + a.norm().max(b.norm()));
    let near = s.re.round();
    let integer = (s.im.abs() <= snap && (s.re - near).abs() <= snap && near.abs() < 1e9).then_some(near as i64);
    match integer {
        Some(m) if m >= 0 => log_case_nonnegative(a, b, m as u32, w),
        Some(m) => log_case_negative(a, b, (-m) as u32, w),
        None => {
            let first = gamma(s)? * rgamma(c - a) * rgamma(c - b) * maclaurin(a, b, 1.0 - s, w)?;
            let second = (s * w.ln()).exp() * gamma(-s)? * rgamma(a) * rgamma(b) * maclaurin(c - a, c - b, s + 1.0, w)?;
            Ok(first + second)
        }
    }
}

/// ψ(k+1) for k = 0, 1, ...
fn digamma_int(k: u32) -> f64 {
    -EULER_GAMMA + (1..=k).map(|j| 1.0 / j as f64).sum::<f64>()
}

/// c = a + b + m, m >= 0.
fn log_case_nonnegative(a: C, b: C, m: u32, w: f64) -> Result<C> {
    let mf = m as f64;
    let mut total = re(0.0);
    if m > 0 {
        let mut term = re(1.0);
        let mut finite = term;
        for k in 0..(m - 1) {
            let kf = k as f64;
            term *= (a + kf) * (b + kf) / ((kf + 1.0) * (1.0 - mf + kf)) * w;
            finite += term;
        }
        let gm = super::gamma::factorial(m - 1);
        total += gm * rgamma(a + mf) * rgamma(b + mf) * finite;
    }
    let pref = if m.is_multiple_of(2) { 1.0 } else { -1.0 } * w.powi(m as i32) * rgamma(a) * rgamma(b);
    if pref.norm() == 0.0 {
        return Ok(total);
    }
    let lw = w.ln();
    let mut psi_a = digamma_complex(a + mf)?;
    let mut psi_b = digamma_complex(b + mf)?;
    let mut coef = re(1.0 / super::gamma::factorial(m));
    let mut sum = re(0.0);
    let mut largest = 0.0_f64;
    let mut quiet = 0;
    for k in 0..SERIES_MAX_TERMS as u32 {
        let kf = k as f64;
        let bracket = lw - digamma_int(k) - digamma_int(k + m) + psi_a + psi_b;
        let term = coef * bracket;
        sum += term;
        let t = term.norm();
        largest = largest.max(t);
        if t <= SERIES_EPS * sum.norm() || t <= SERIES_EPS * 1e-2 * largest || t == 0.0 {
            quiet += 1;
            if quiet >= 2 {
                return Ok(total - pref * sum);
            }
        } else {
            quiet = 0;
        }
        let am = a + mf + kf;
        let bm = b + mf + kf;
        coef *= am * bm / ((kf + 1.0) * (kf + 1.0 + mf)) * w;
        psi_a += 1.0 / am;
        psi_b += 1.0 / bm;
    }
    Err(Error::NonConvergence {
        function: "hyp2f1",
        iterations: SERIES_MAX_TERMS,
    })
}

/// c = a + b - m, m >= 1.
fn log_case_negative(a: C, b: C, m: u32, w: f64) -> Result<C> {
    let mf = m as f64;
    let mut term = re(1.0);
    let mut finite = term;
    for k in 0..(m - 1) {
        let kf = k as f64;
        term *= (a - mf + kf) * (b - mf + kf) / ((kf + 1.0) * (1.0 - mf + kf)) * w;
        finite += term;
    }
    let gm = super::gamma::factorial(m - 1);
    let total = gm * rgamma(a) * rgamma(b) * w.powi(-(m as i32)) * finite;

    let pref = if m.is_multiple_of(2) { 1.0 } else { -1.0 } * rgamma(a - mf) * rgamma(b - mf);
    if pref.norm() == 0.0 {
        return Ok(total);
    }
    let lw = w.ln();
    let mut psi_a = digamma_complex(a)?;
    let mut psi_b = digamma_complex(b)?;
    let mut coef = re(1.0 / super::gamma::factorial(m));
    let mut sum = re(0.0);
    let mut largest = 0.0_f64;
    let mut quiet = 0;
    for k in 0..SERIES_MAX_TERMS as u32 {
        let kf = k as f64;
        let bracket = lw - digamma_int(k) - digamma_int(k + m) + psi_a + psi_b;
        let term = coef * bracket;
        sum += term;
        let t = term.norm();
        largest = largest.max(t);
        if t <= SERIES_EPS * sum.norm() || t <= SERIES_EPS * 1e-2 * largest || t == 0.0 {
            quiet += 1;
            if quiet >= 2 {
                return Ok(total - pref * sum);
            }
        } else {
            quiet = 0;
        }
        let ak = a + kf;
        let bk = b + kf;
        coef *= ak * bk / ((kf + 1.0) * (kf + 1.0 + mf)) * w;
        psi_a += 1.0 / ak;
        psi_b += 1.0 / bk;
    }
    Err(Error::NonConvergence {
        function: "hyp2f1",
        iterations: SERIES_MAX_TERMS,
    })
}
