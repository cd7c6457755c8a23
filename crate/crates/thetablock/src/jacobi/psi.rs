//! The weight-zero companion of a theta block.
//!
//! For a weight-two block Theta of index N, the quotient
//! `Psi = -(Theta at Hecke level 2) / Theta` is a weakly holomorphic
//! Jacobi form of weight 0 and index N.  Its q^0 row is forced by the
//! block's factor structure:
//!
//! ```text
//! c(0, 0)   = 4          (twice the weight)
//! c(0, +-a) = multiplicity of the theta argument a
//! ```
//!
//! and those integers later become the exponents of the leading factors of
//! the associated product expansion, so the shape is validated here rather
//! than assumed downstream.

use num::BigRational;

use crate::fourier::Coeff;

use super::hecke::hecke_minus;
use super::{JacobiError, JacobiFormSeries, ThetaBlockDescriptor};

/// Computes Psi through integer q-order `n_order`.
///
/// `theta` must be the expansion of `desc` to window at least
/// `2 * (n_order + 1)`: the Hecke step halves the window and the division
/// by a series of order q^1 costs one more row.
pub fn psi_from_block(
    desc: &ThetaBlockDescriptor,
    theta: &JacobiFormSeries,
    n_order: i64,
) -> Result<JacobiFormSeries, JacobiError> {
    let needed = 2 * (n_order + 1);
    if theta.n_window() < needed {
        return Err(JacobiError::WindowExceeded {
            requested: needed,
            available: theta.n_window(),
        });
    }
    let t2 = hecke_minus(theta, 2)?;
    let quot = t2.series.div_exact(&theta.series)?;
    let psi = JacobiFormSeries {
        series: quot.neg().truncated(24 * n_order),
        weight: HALF_ZERO,
        index: theta.index,
    };
    validate_leading_row(desc, &psi)?;
    Ok(psi)
}

const HALF_ZERO: super::HalfInt = super::HalfInt(0);

/// Checks that the q^0 row of Psi has exactly the multiplicity profile of
/// the block, with constant term 4.
fn validate_leading_row(
    desc: &ThetaBlockDescriptor,
    psi: &JacobiFormSeries,
) -> Result<(), JacobiError> {
    let int = |v: i64| -> Coeff { BigRational::from_integer(v.into()) };
    let row = psi.series.q_slice(0);
    let mut expect: Vec<(i64, Coeff)> = Vec::new();
    for (&a, &mult) in desc.theta_exps.iter() {
        expect.push((-2 * a, int(mult as i64)));
        expect.push((2 * a, int(mult as i64)));
    }
    expect.push((0, int(desc.eta_exp + desc.theta_count())));
    expect.sort();
    let got: Vec<(i64, Coeff)> =
        row.iter().map(|(&z, c)| (z, c.clone())).collect();
    if got != expect {
        return Err(JacobiError::UnexpectedLeading(format!(
            "q^0 row {:?}, expected {:?}",
            got, expect
        )));
    }
    Ok(())
}
