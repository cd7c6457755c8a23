//! Eta and odd-theta building blocks as exact truncated series.
//!
//! Conventions, in the fixed (1/24, 1/2)-exponent units of the series
//! kernel:
//!
//! * `eta_series`: q^(1/24) prod (1 - q^n), lowest key (1, 0).
//! * `theta_series(a)`: the odd theta function evaluated at a times the
//!   elliptic variable, expanded by the triple product
//!   q^(1/8) (w^(a) - w^(-a)) prod (1 - q^n)(1 - q^n w^(2a))(1 - q^n w^(-2a))
//!   where w is the formal half-power of z, i.e. lowest keys (3, +-a).
//!
//! Exchanging the elliptic variable for its negative flips the sign of the
//! theta factor, so negative `a` is folded into an overall sign.

use num::{BigRational, One};

use crate::fourier::{Coeff, FourierSeries};

use super::JacobiError;

/// Eta as a truncated series, exact up to `qmax` (24ths), by the defining
/// product.  Independently testable against the pentagonal-number series.
pub fn eta_series(qmax: i64) -> FourierSeries {
    let one: Coeff = BigRational::one();
    let mut s = FourierSeries::monomial(1, 0, one.clone(), qmax);
    let mut n = 1i64;
    // (1 - q^n) first disturbs exponent 24n + 1; later factors are inert.
    while 24 * n + 1 <= qmax {
        let factor = FourierSeries::from_terms(
            [((0, 0), one.clone()), ((24 * n, 0), -&one)],
            qmax,
        );
        s = s.mul(&factor).truncated(qmax);
        n += 1;
    }
    s
}

/// Eta by Euler's pentagonal-number identity, used as an oracle in tests:
/// the sum over all integers k of (-1)^k q^((6k+1)^2 / 24).
pub fn eta_pentagonal_series(qmax: i64) -> FourierSeries {
    let mut s = FourierSeries::zero(qmax);
    let mut k = 0i64;
    loop {
        let mut hit = false;
        for kk in [k, -k] {
            let e = (6 * kk + 1) * (6 * kk + 1);
            if e <= qmax {
                hit = true;
                let c = if kk.rem_euclid(2) == 0 {
                    BigRational::one()
                } else {
                    -BigRational::one()
                };
                s.add_term(e, 0, &c);
            }
            if kk == 0 {
                break;
            }
        }
        if !hit {
            return s;
        }
        k += 1;
    }
}

/// The cube of eta by the Jacobi identity, used as an oracle in tests:
/// the sum over k >= 0 of (-1)^k (2k+1) q^((2k+1)^2 / 8).
pub fn eta_cube_series(qmax: i64) -> FourierSeries {
    let mut s = FourierSeries::zero(qmax);
    let mut k = 0i64;
    loop {
        let e = 3 * (2 * k + 1) * (2 * k + 1);
        if e > qmax {
            return s;
        }
        let mut c = Coeff::from_integer((2 * k + 1).into());
        if k % 2 == 1 {
            c = -c;
        }
        s.add_term(e, 0, &c);
        k += 1;
    }
}

/// Odd theta factor at `a` times the elliptic variable, by the triple
/// product.  `a = 0` gives the identically vanishing function and is
/// rejected so that block construction can flag it explicitly.
pub fn theta_series(a: i64, qmax: i64) -> Result<FourierSeries, JacobiError> {
    if a == 0 {
        return Err(JacobiError::ZeroThetaArgument);
    }
    let (a, sign) = if a < 0 { (-a, true) } else { (a, false) };
    let one: Coeff = BigRational::one();
    let mut s = FourierSeries::from_terms(
        [((3, a), one.clone()), ((3, -a), -&one)],
        qmax,
    );
    let mut n = 1i64;
    while 24 * n + 3 <= qmax {
        for za in [0i64, 2 * a, -2 * a] {
            let factor = FourierSeries::from_terms(
                [((0, 0), one.clone()), ((24 * n, za), -&one)],
                qmax,
            );
            s = s.mul(&factor).truncated(qmax);
        }
        n += 1;
    }
    Ok(if sign { s.neg() } else { s })
}

/// Odd theta factor by its defining sum, used as an oracle in tests:
/// the sum over all integers j of (-1)^j q^((2j+1)^2 / 8) w^(a (2j+1)).
pub fn theta_sum_series(a: i64, qmax: i64) -> Result<FourierSeries, JacobiError> {
    if a == 0 {
        return Err(JacobiError::ZeroThetaArgument);
    }
    let mut s = FourierSeries::zero(qmax);
    let mut j = 0i64;
    loop {
        let mut hit = false;
        for jj in [j, -j - 1] {
            let m = 2 * jj + 1;
            let e = 3 * m * m;
            if e <= qmax {
                hit = true;
                let c = if jj.rem_euclid(2) == 0 {
                    BigRational::one()
                } else {
                    -BigRational::one()
                };
                s.add_term(e, a * m, &c);
            }
        }
        if !hit {
            return Ok(s);
        }
        j += 1;
    }
}
