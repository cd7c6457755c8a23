//! Degree-two lifts of theta blocks, organized by Fourier-Jacobi row.
//!
//! Two constructions produce candidate paramodular forms from a block:
//! the additive lift, whose rows are the images of the block under the
//! index-raising operators, and the product expansion attached to the
//! block's weight-zero companion.  The central computation of this crate
//! checks that the two agree row by row.  Supporting machinery extracts
//! the singular part of the companion (which controls the product's
//! divisor) and scans coefficient relations on the corresponding surfaces
//! with the deep-strip engine.

pub mod relations;
pub mod report;
pub mod sing;
pub mod tables;
pub mod verify;

use crate::fourier::SeriesError;
use crate::jacobi::JacobiError;

/// Errors from lift-table and divisor computations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LiftError {
    #[error("value must be integral here: {0}")]
    NonIntegral(String),
    #[error("unit factor at elliptic exponent {0} would need a negative power")]
    NegativeUnitExponent(i64),
    #[error("requested window {requested} exceeds available window {available}")]
    WindowExceeded { requested: i64, available: i64 },
    #[error("relation discriminant vanishes; the support is a double ray")]
    DegenerateRelation,
    #[error("surface data (n0, r0, m0) must be coprime, gcd is {0}")]
    ImprimitiveSurface(i64),
    #[error("surface discriminant {0} is not positive")]
    NonPositiveDiscriminant(i64),
    #[error("jacobi-form computation failed: {0}")]
    Jacobi(#[from] JacobiError),
    #[error("series arithmetic failed: {0}")]
    Series(#[from] SeriesError),
}
