//! Exact truncated Fourier/Laurent series arithmetic.
//!
//! Everything is integer-keyed and rational-valued: q-exponents are stored
//! in 24ths so that eta and theta factors have integer keys, elliptic
//! exponents in halves.  No floating point anywhere.

mod multi;
mod series;
mod zpoly;

pub use multi::MultiFourierSeries;
pub use series::{FourierSeries, Q_DEN, Z_DEN};
pub use zpoly::ZPoly;

/// Exact rational coefficient.
pub type Coeff = num::BigRational;

/// Errors from series arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("division by the zero series")]
    ZeroDivisor,
    #[error("lowest q-slice is not a single monomial, cannot invert")]
    NonInvertibleLeading,
    #[error("slice is not exactly divisible")]
    SliceNotDivisible,
    #[error("series are not exactly divisible at q-exponent {q_24ths}/24")]
    NotDivisible { q_24ths: i64 },
    #[error("operands have different numbers of elliptic variables")]
    RankMismatch,
    #[error("malformed serialized series")]
    BadSerialization,
}
