//! Places of Q, absolute values, heights and local Weil functions of
//! hypersurfaces in projective space.
//!
//! The local Weil function of a degree-`e` form `F` at a place `v` is
//! `λ_{F,v}(x) = log(max_i |x_i|_v^e / |F(x)|_v)`. Summed over all places it
//! gives `e·h(x)`, which every evaluation here can be checked against.

pub mod factor;
mod form;
mod log;
mod place;
mod point;
mod position;
mod weil;

pub use form::{resultant, HomogeneousForm, Hypersurface, Monomial};
pub use log::{LogCombination, LogValue};
pub use place::{abs_value, ord, Place};
pub use point::ProjectivePoint;
pub use position::general_position;
pub use weil::{canonical_height, global_weil_sum, height, local_weil, twist_height, weil_support};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithmeticError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("absolute value of zero")]
    ZeroArgument,
    #[error("all coordinates are zero")]
    ZeroPoint,
    #[error("form is identically zero")]
    ZeroForm,
    #[error("form is not homogeneous")]
    NotHomogeneous,
    #[error("form coefficients share a common factor")]
    NotPrimitive,
    #[error("expected {expected} variables, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("point {0} lies on the divisor")]
    OnDivisor(String),
    #[error("integer overflow")]
    Overflow,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
