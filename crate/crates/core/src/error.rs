use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    /// A denominator Pochhammer factor vanished before the series terminated.
    #[error("pole: denominator vanishes at term {index} ({context})")]
    Pole { index: usize, context: String },

    #[error("shape error: {0}")]
    Shape(String),

    #[error("{case}: not applicable, factor `{factor}` vanishes")]
    Applicability { case: String, factor: String },

    #[error("christoffel transform: p_{index}(a) vanishes")]
    ZeroAtNode { index: usize },

    #[error("christoffel transform: inexact division for index {index}")]
    Remainder { index: usize },

    #[error("quadrature did not converge: {0}")]
    NoConvergence(String),

    #[error("sampling exhausted after {attempts} rejected points")]
    SampleExhausted { attempts: usize },

    #[error("integrality error: {0}")]
    Integrality(String),

    #[error("budget exceeded: N = {n} > {max}")]
    Budget { n: usize, max: usize },

    #[error("mismatch: {0}")]
    Mismatch(String),

    #[error("parse error: {0}")]
    Parse(String),
}
