//! Fourier-Jacobi rows of the two lift constructions.
//!
//! Both lifts of a block of index N live on the three-variable torus with
//! coordinates q, zeta, xi; expanding along powers of xi^N leaves one
//! Fourier series in (q, zeta) per row.  [`grit_table`] fills rows with the
//! images of the block under the index-raising operators; [`borch_table`]
//! multiplies out the product expansion attached to the block's
//! weight-zero companion.  Rows are exact through the requested q-order,
//! so agreement of the two tables is a finite, exact comparison.

use num::{BigInt, BigRational, One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::LiftError;
use crate::fourier::{Coeff, FourierSeries};
use crate::jacobi::hecke::{divisors, hecke_minus};
use crate::jacobi::JacobiFormSeries;

/// Exponents `q^a zeta^b xi^c` of the leading monomial of the product
/// expansion, read off the companion's singular rows.
///
/// With `f(r)` the coefficient at `q^0 zeta^r`: `24 a` is the sum of the
/// `f(r)`, `2 b` the sum of `r f(r)` over positive `r`, and `4 c` the sum
/// of `r^2 f(r)`.  `d0` weights coefficients on negative rows by the
/// divisor count of `-n`; it vanishes exactly when the companion has no
/// principal part in q, which makes the product holomorphic in the usual
/// coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeadingExponents {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d0: i64,
}

fn ratio_to_int(value: &Coeff, den: i64, what: &str) -> Result<i64, LiftError> {
    let scaled = value / BigRational::from_integer(BigInt::from(den));
    if !scaled.is_integer() {
        return Err(LiftError::NonIntegral(format!("{what} = {scaled}")));
    }
    scaled
        .to_integer()
        .to_i64()
        .ok_or_else(|| LiftError::NonIntegral(format!("{what} out of range")))
}

/// Reads the leading exponents off a companion's Fourier expansion.
pub fn leading_exponents(psi: &JacobiFormSeries) -> Result<LeadingExponents, LiftError> {
    let row0 = psi.series.q_slice(0);
    let mut sum = Coeff::zero();
    let mut rsum = Coeff::zero();
    let mut r2sum = Coeff::zero();
    for (&z, c) in row0.iter() {
        let r = BigRational::from_integer(BigInt::from(z / 2));
        sum += c;
        if z > 0 {
            rsum += c * &r;
        }
        r2sum += c * &r * &r;
    }
    let mut d0_sum = Coeff::zero();
    for (&(q, z), c) in psi.series.iter() {
        if q < 0 && z == 0 {
            debug_assert!(q % 24 == 0);
            let n = -q / 24;
            let sigma0 = BigInt::from(divisors(n).len() as i64);
            d0_sum += c * BigRational::from_integer(sigma0);
        }
    }
    Ok(LeadingExponents {
        a: ratio_to_int(&sum, 24, "leading q-exponent")?,
        b: ratio_to_int(&rsum, 2, "leading zeta-exponent")?,
        c: ratio_to_int(&r2sum, 4, "leading xi-exponent")?,
        d0: ratio_to_int(&d0_sum, 1, "principal-part weight")?,
    })
}

/// Rows of a lift, indexed by the xi-power `m = 1, ..., m_max`, each exact
/// through q-order `n_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftTable {
    index: i64,
    n_max: i64,
    /// `rows[0]` is an unused placeholder so that `rows[m]` is row m.
    rows: Vec<FourierSeries>,
}

impl LiftTable {
    pub fn index(&self) -> i64 {
        self.index
    }

    pub fn n_max(&self) -> i64 {
        self.n_max
    }

    pub fn m_max(&self) -> i64 {
        self.rows.len() as i64 - 1
    }

    pub fn row(&self, m: i64) -> &FourierSeries {
        assert!(m >= 1 && m <= self.m_max(), "row out of range");
        &self.rows[m as usize]
    }

    /// Coefficient at `q^n zeta^r` in row `m`.
    pub fn coeff(&self, n: i64, r: i64, m: i64) -> Coeff {
        self.row(m).coeff(24 * n, 2 * r)
    }
}

/// Rows of the additive lift: row m is the image of the block under the
/// index-raising operator at level m.
pub fn grit_table(
    theta: &JacobiFormSeries,
    m_max: i64,
    n_max: i64,
) -> Result<LiftTable, LiftError> {
    assert!(m_max >= 1 && n_max >= 0);
    let qb = 24 * n_max;
    let mut rows = vec![FourierSeries::zero(qb)];
    for m in 1..=m_max {
        let image = hecke_minus(theta, m)?;
        if image.n_window() < n_max {
            return Err(LiftError::WindowExceeded {
                requested: n_max,
                available: image.n_window(),
            });
        }
        rows.push(image.series.truncated(qb));
    }
    Ok(LiftTable {
        index: theta.index,
        n_max,
        rows,
    })
}

/// Generalized binomial coefficient `k`-th of `e`, exact for any integer
/// `e` (negative included).
fn binom(e: i64, k: i64) -> Coeff {
    debug_assert!(k >= 0);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(e - i);
        den *= BigInt::from(i + 1);
    }
    BigRational::new(num, den)
}

/// Rows of the product expansion attached to a weight-zero companion.
///
/// The product is the leading monomial times one factor
/// `(1 - q^n zeta^r xi^{N m})^{C(nm, r)}` for each triple with
/// `(n, r, m) > 0` lexicographically, where `C` reads the companion's
/// coefficients.  The three kinds of factor are applied in stages:
///
/// * `m = 0, n = 0, r < 0`: polynomial unit factors; their exponents must
///   be nonnegative integers or the product leaves the power-series ring.
/// * `m = 0, n >= 1`: pure (q, zeta) factors, folded into row 1 directly
///   (negative exponents expand as geometric series).
/// * `m >= 1`: factors carrying xi; each one convolves the row vector
///   with the binomial series of `(1 - q^n zeta^r)^C` in place, walking
///   rows top-down so every read sees the previous stage.
///
/// Rows beyond the available q-budget are pruned: every surviving term
/// sits over the base order `a`, so factors with `a + nk > n_max`
/// cannot contribute.  Returns the table together with the leading
/// exponents.
pub fn borch_table(
    psi: &JacobiFormSeries,
    m_max: i64,
    n_max: i64,
) -> Result<(LiftTable, LeadingExponents), LiftError> {
    assert!(m_max >= 1 && n_max >= 0);
    let lead = leading_exponents(psi)?;
    let qb = 24 * n_max;
    let budget = (n_max - lead.a).max(0);
    let need = budget * (m_max - 1);
    if need > psi.n_window() {
        return Err(LiftError::WindowExceeded {
            requested: need,
            available: psi.n_window(),
        });
    }
    let exp_of = |c: &Coeff| -> Result<i64, LiftError> {
        if !c.is_integer() {
            return Err(LiftError::NonIntegral(format!("product exponent {c}")));
        }
        c.to_integer()
            .to_i64()
            .ok_or_else(|| LiftError::NonIntegral("product exponent out of range".into()))
    };

    let one = Coeff::one();
    let row0 = psi.series.q_slice(0);
    let mut base = FourierSeries::monomial(24 * lead.a, 2 * lead.b, one.clone(), qb);
    for (&z, c) in row0.iter() {
        let r = z / 2;
        if r >= 0 {
            continue;
        }
        let ex = exp_of(c)?;
        if ex < 0 {
            return Err(LiftError::NegativeUnitExponent(r));
        }
        if ex == 0 {
            continue;
        }
        let f = FourierSeries::from_terms(
            [((0, 0), one.clone()), ((0, z), -one.clone())],
            qb,
        );
        base = base.mul(&f.pow(ex)?);
    }
    for n in 1..=budget {
        for (&z, c) in row0.iter() {
            let ex = exp_of(c)?;
            if ex == 0 {
                continue;
            }
            let f = FourierSeries::from_terms(
                [((0, 0), one.clone()), ((24 * n, z), -one.clone())],
                qb,
            );
            base = base.mul(&f.pow(ex)?);
        }
    }

    let mut rows = vec![FourierSeries::zero(qb); (m_max + 1) as usize];
    rows[1] = base.truncated(qb);

    for m in 1..m_max {
        for n in 0..=budget {
            let slice = psi.series.q_slice(24 * n * m);
            for (&z, c) in slice.iter() {
                let ex = exp_of(c)?;
                if ex == 0 {
                    continue;
                }
                for j in (2..=m_max).rev() {
                    let mut gain = FourierSeries::zero(qb);
                    let mut k = 1i64;
                    while j - m * k >= 1 && lead.a + n * k <= n_max {
                        let src = &rows[(j - m * k) as usize];
                        if !src.is_zero() {
                            let mut coeff = binom(ex, k);
                            if k % 2 == 1 {
                                coeff = -coeff;
                            }
                            if !coeff.is_zero() {
                                let t = FourierSeries::monomial(24 * n * k, z * k, coeff, qb);
                                gain = gain.add(&src.mul(&t));
                            }
                        }
                        k += 1;
                    }
                    let j = j as usize;
                    rows[j] = rows[j].add(&gain);
                }
            }
        }
    }
    for row in rows.iter_mut() {
        *row = row.truncated(qb);
    }
    Ok((
        LiftTable {
            index: psi.index,
            n_max,
            rows,
        },
        lead,
    ))
}

// ---------------------------------------------------------------------------
// tests
// ---------------------------------------------------------------------------
