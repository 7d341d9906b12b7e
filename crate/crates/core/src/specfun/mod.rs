//! Special-function core: gamma and digamma, Gegenbauer polynomials, the
//! Gauss hypergeometric function and Ferrers (on-the-cut Legendre)
//! functions of arbitrary complex degree and order.
//!
//! Everything here is pure and allocation-light; values may be shared
//! freely across threads.

mod gamma;
mod gegenbauer;
mod hypergeometric;
mod legendre;

pub use gamma::{
    digamma, digamma_complex, factorial, gamma, gamma_real, pochhammer, rgamma, EULER_GAMMA,
};
pub(crate) use gamma::{cos_pi, sin_pi};
pub use gegenbauer::{gegenbauer, gegenbauer_table};
pub use hypergeometric::{hyp2f1, hyp2f1_regularized, SERIES_MAX_TERMS, SERIES_TOL};
pub use legendre::{
    legendre_p_cut, legendre_p_real, legendre_p_weighted, legendre_p_weighted_angle, LegendreArgs,
};

/// Complex scalar used for degrees, orders and Mellin variables.
pub type ComplexScalar = num_complex::Complex64;
