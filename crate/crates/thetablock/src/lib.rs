//! Exact computer algebra for Jacobi forms built from theta blocks.
//!
//! The crate expands products of eta and theta factors as truncated Fourier
//! series with exact rational coefficients, applies Hecke operators, forms
//! the leading Fourier–Jacobi data of arithmetic lifts and Borcherds-type
//! products, and carries out the rank-4 root-lattice computations needed to
//! verify the weight-two instances handled by the command-line tool.
//!
//! All arithmetic is exact; truncation bounds are tracked through every
//! operation and results are only ever compared inside the window both
//! sides are known on.

pub mod fourier;
pub mod jacobi;
pub mod lattice;
pub mod lifts;
