use thiserror::Error;

/// Errors produced by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole of {function} at {at}")]
    Pole { function: &'static str, at: String },

    #[error("argument outside the domain of {function}: {detail}")]
    Domain { function: &'static str, detail: String },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("{function} did not converge after {iterations} iterations")]
    NonConvergence { function: &'static str, iterations: usize },

    #[error("Re s = {re_s} lies outside the strip ({lower}, {upper})")]
    StripViolation { re_s: f64, lower: f64, upper: f64 },

    #[error("angle {angle} is within {width} of the exceptional root {root}")]
    ExceptionalAngle { angle: f64, root: f64, width: f64 },

    #[error("found {found} zeros of the Legendre factor, expected {expected}")]
    CountMismatch { found: usize, expected: usize },

    #[error("value {value} outside the admissible interval ({lower}, {upper})")]
    OutOfRange { value: f64, lower: f64, upper: f64 },

    #[error("evaluation point coincides with an atom at t = {t}")]
    Singularity { t: f64 },

    #[error("finite differences lost all significant digits: {0}")]
    StepSize(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
