//! The index-raising Hecke operator on Jacobi forms.
//!
//! For a form of integral weight k and index N, the operator at level m
//! produces a form of weight k and index N m with coefficients
//!
//! ```text
//! c'(n, r) = sum over d | gcd(n, r, m) of d^(k-1) c(n m / d^2, r / d)
//! ```
//!
//! (`gcd(0, x) = |x|`, so for n = r = 0 the sum runs over all divisors of
//! m).  The production implementation fills the output forward from the
//! input's support; an independent coset-sum evaluation is provided for
//! tests.

use num::{BigInt, BigRational};

use crate::fourier::FourierSeries;

use super::{JacobiError, JacobiFormSeries};

pub(crate) fn divisors(m: i64) -> Vec<i64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= m {
        if m % d == 0 {
            out.push(d);
            if d != m / d {
                out.push(m / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

pub(crate) fn int_pow(base: i64, exp: i64) -> BigRational {
    let b = BigInt::from(base);
    if exp >= 0 {
        BigRational::from_integer(b.pow(exp as u32))
    } else {
        BigRational::new(BigInt::from(1), b.pow((-exp) as u32))
    }
}

/// Applies the index-raising operator at level `m >= 1`.
///
/// The input must be known on all integer rows up to its window W; the
/// result is exact on rows up to floor(W / m), because the d = 1 term for
/// output row n reads input row n m.
pub fn hecke_minus(
    phi: &JacobiFormSeries,
    m: i64,
) -> Result<JacobiFormSeries, JacobiError> {
    assert!(m >= 1, "operator level must be positive");
    let k = phi
        .weight
        .as_integer()
        .ok_or(JacobiError::NeedIntegralWeight(phi.weight))?;
    let out_window = phi.n_window().div_euclid(m);
    let mut out = FourierSeries::zero(24 * out_window);
    // Forward fill: the input term c(n1, r1) feeds output (n, r) exactly
    // when n1 = n m / d^2 and r1 = r / d for some d | gcd(n, r, m).
    for (&(q1, z1), c1) in phi.series.iter() {
        debug_assert!(q1 % 24 == 0 && z1 % 2 == 0);
        let (n1, r1) = (q1 / 24, z1 / 2);
        for d in divisors(m) {
            // n = n1 d^2 / m must be a nonnegative integer divisible by d.
            if (n1 * d * d) % m != 0 {
                continue;
            }
            let n = n1 * d * d / m;
            if n > out_window || n % d != 0 {
                continue;
            }
            let r = r1 * d;
            out.add_term(24 * n, 2 * r, &(c1 * int_pow(d, k - 1)));
        }
    }
    Ok(JacobiFormSeries {
        series: out,
        weight: phi.weight,
        index: phi.index * m,
    })
}

/// The same operator evaluated from the coset decomposition: summing the
/// form over `tau -> (a tau + b)/d, z -> a z` for a d = m and b mod d
/// collapses, on coefficients, to
///
/// ```text
/// sum over a d = m, d | n1 of a^(k-1) c(n1, r1) at q^(n1 a / d) w^(a r1).
/// ```
///
/// Tests compare this against [`hecke_minus`]; the two derivations share
/// no code.
pub fn hecke_minus_coset_oracle(
    phi: &JacobiFormSeries,
    m: i64,
) -> Result<JacobiFormSeries, JacobiError> {
    assert!(m >= 1, "operator level must be positive");
    let k = phi
        .weight
        .as_integer()
        .ok_or(JacobiError::NeedIntegralWeight(phi.weight))?;
    let out_window = phi.n_window().div_euclid(m);
    let mut out = FourierSeries::zero(24 * out_window);
    for a in divisors(m) {
        let d = m / a;
        let scale = int_pow(a, k - 1);
        for (&(q1, z1), c1) in phi.series.iter() {
            let (n1, r1) = (q1 / 24, z1 / 2);
            if n1 % d != 0 {
                continue;
            }
            out.add_term(24 * (n1 / d * a), 2 * (a * r1), &(c1 * &scale));
        }
    }
    Ok(JacobiFormSeries {
        series: out,
        weight: phi.weight,
        index: phi.index * m,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jacobi::{block_expand, block_from_a};

    #[test]
    fn level_one_is_identity() {
        let phi = block_expand(&block_from_a([1, 1, 1, 1]), 5).unwrap();
        let t1 = hecke_minus(&phi, 1).unwrap();
        assert_eq!(t1.series, phi.series);
        assert_eq!(t1.index, phi.index);
    }

    #[test]
    fn level_two_matches_coset_sum() {
        let phi = block_expand(&block_from_a([1, 1, 1, 1]), 8).unwrap();
        let forward = hecke_minus(&phi, 2).unwrap();
        let coset = hecke_minus_coset_oracle(&phi, 2).unwrap();
        assert_eq!(forward.series, coset.series);
        assert_eq!(forward.index, 50);
        assert_eq!(forward.n_window(), 4);
    }

    #[test]
    fn composite_level_matches_coset_sum() {
        let phi = block_expand(&block_from_a([1, 1, 1, 2]), 12).unwrap();
        for m in [2i64, 3, 4, 6] {
            let forward = hecke_minus(&phi, m).unwrap();
            let coset = hecke_minus_coset_oracle(&phi, m).unwrap();
            assert_eq!(forward.series, coset.series, "level {m}");
        }
    }

    #[test]
    fn output_respects_translation_law() {
        let phi = block_expand(&block_from_a([1, 1, 1, 1]), 8).unwrap();
        let t2 = hecke_minus(&phi, 2).unwrap();
        assert!(t2.translation_violations().is_empty());
        assert!(t2.symmetry_violations().unwrap().is_empty());
    }
}
