//! Exact verification of determinant evaluations arising from split
//! orthogonality measures, over the cyclotomic field Q(ζ₂₄).

pub mod error;
pub mod field;
pub mod hyper;
pub mod linalg;
pub mod ortho;
pub mod par;
pub mod catalog;
pub mod asmtool;
pub mod qseries;
pub mod numquad;
pub mod cli;

pub use error::{Error, Result};
pub use field::{FieldElement, Rational};
pub use linalg::ExactMatrix;
