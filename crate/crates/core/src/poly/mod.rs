//! Exact polynomial arithmetic in one, two and three variables, plus the
//! specific primitives the reduction algorithms need: truncation modulo
//! `x^n`, substitution `z -> s(x,z)`, Euclidean division in `z`, and
//! expansion in powers of a univariate polynomial.

mod ambient;
mod bipoly;
pub mod mpoly;
mod unipoly;

pub use ambient::{AmbientPoly, LaurentBiPoly};
pub use bipoly::BiPoly;
pub use mpoly::MPoly;
pub use unipoly::UniPoly;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("expansion base must be nonconstant")]
    ConstantBase,
    #[error("variable mismatch: expected {expected}, got {got}")]
    VariableMismatch { expected: Var, got: Var },
}

/// Degree with a dedicated bottom element for the zero polynomial, so a
/// degree never silently compares as the integer -1.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Degree {
    NegInf,
    Of(i64),
}

impl Degree {
    pub fn is_finite(&self) -> bool {
        matches!(self, Degree::Of(_))
    }

    /// The finite value; panics on the zero-polynomial sentinel.
    pub fn finite(&self) -> i64 {
        match self {
            Degree::Of(d) => *d,
            Degree::NegInf => panic!("degree of the zero polynomial"),
        }
    }
}

impl std::fmt::Display for Degree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Degree::NegInf => write!(f, "-inf"),
            Degree::Of(d) => write!(f, "{}", d),
        }
    }
}

/// Variable tags for univariate polynomials. The ambient coordinates are
/// x, y, z; t is the parameter of group actions and the second argument
/// of normal-form data.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Var {
    X,
    Y,
    Z,
    T,
}

impl std::fmt::Display for Var {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Var::X => write!(f, "x"),
            Var::Y => write!(f, "y"),
            Var::Z => write!(f, "z"),
            Var::T => write!(f, "t"),
        }
    }
}
