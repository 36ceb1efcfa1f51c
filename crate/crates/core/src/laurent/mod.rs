//! Exact Laurent polynomial algebra.
//!
//! [`Character`] is an integer Laurent polynomial in `t1, t2, e1..er` used to
//! record torus weights. [`TPolynomial`] and [`QSeries`] hold univariate
//! Poincaré polynomials and their truncated generating series.

mod character;
mod coeff;
mod ordering;
mod qseries;
mod tpoly;

pub use character::{Character, ExponentVector};
pub use ordering::{OrderingSpec, Variable};
pub use qseries::{QExponent, QSeries};
pub use tpoly::TPolynomial;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("exponent vector has {got} e-exponents, expected {expected}")]
    BadExponentLength { expected: usize, got: usize },
    #[error("negative coefficient {coeff} at {monomial}")]
    NegativeCoefficient { coeff: String, monomial: String },
    #[error("invalid ordering: {0}")]
    InvalidOrdering(String),
    #[error("cannot shrink rank {from} to {to}")]
    RankShrink { from: usize, to: usize },
}
