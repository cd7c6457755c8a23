//! Jacobi forms as truncated Fourier expansions, and the theta blocks that
//! produce them.
//!
//! A theta block here is a finite product of odd-theta factors and a power
//! of eta.  The blocks of central interest are the four-parameter family
//! with ten theta factors whose arguments are the consecutive partial sums
//! of `(a1, a2, a3, a4)`; these all have weight two and eta power -6.

pub mod hecke;
pub mod psi;
pub mod strip;
pub mod theta;

use std::collections::BTreeMap;

use num::BigRational;
use serde::{Deserialize, Serialize};

use crate::fourier::{Coeff, FourierSeries, SeriesError};

/// Errors from block construction and Jacobi-form operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum JacobiError {
    #[error("theta factor with argument zero vanishes identically")]
    ZeroThetaArgument,
    #[error("theta block vanishes identically (a partial sum is zero)")]
    ZeroBlock,
    #[error("operation requires integral weight, got {0}")]
    NeedIntegralWeight(HalfInt),
    #[error("requested window {requested} exceeds available window {available}")]
    WindowExceeded { requested: i64, available: i64 },
    #[error("leading Fourier coefficients do not have the expected shape: {0}")]
    UnexpectedLeading(String),
    #[error("deep expansion engine cannot handle this block: {0}")]
    Unsupported(String),
    #[error("deep expansion failed internal validation: {0}")]
    StripValidation(String),
    #[error("series arithmetic failed: {0}")]
    Series(#[from] SeriesError),
}

/// An exact half-integer, stored as twice its value.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize,
)]
pub struct HalfInt(pub i64);

impl HalfInt {
    pub fn from_integer(k: i64) -> Self {
        HalfInt(2 * k)
    }

    pub fn twice(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn as_integer(self) -> Option<i64> {
        if self.is_integer() {
            Some(self.0 / 2)
        } else {
            None
        }
    }
}

impl std::fmt::Display for HalfInt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.as_integer() {
            Some(k) => write!(f, "{k}"),
            None => write!(f, "{}/2", self.0),
        }
    }
}

/// A theta block in multiplicative normal form: a signed product of theta
/// factors with positive arguments and a power of eta.
///
/// `eta_exp` is the net eta exponent of the product (it may be negative),
/// so the weight is `(eta_exp + number of theta factors) / 2` and the index
/// is half the multiplicity-weighted sum of squared arguments.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaBlockDescriptor {
    pub eta_exp: i64,
    /// Theta arguments (positive) with multiplicities.
    pub theta_exps: BTreeMap<i64, u32>,
    /// Overall sign picked up when folding negative arguments.
    pub sign: i8,
    /// Set when some factor has argument zero; the block then vanishes
    /// identically and cannot be expanded.
    pub vanishes: bool,
}

impl ThetaBlockDescriptor {
    pub fn theta_count(&self) -> i64 {
        self.theta_exps.values().map(|&m| m as i64).sum()
    }

    pub fn weight(&self) -> HalfInt {
        HalfInt(self.eta_exp + self.theta_count())
    }

    /// Index: half the sum of squared arguments with multiplicity.  All
    /// blocks built in this crate have even square-sums, hence integer
    /// index; a fractional index is a usage error.
    pub fn index(&self) -> i64 {
        let twice: i64 = self
            .theta_exps
            .iter()
            .map(|(&a, &m)| a * a * m as i64)
            .sum();
        assert!(twice % 2 == 0, "block has non-integral index");
        twice / 2
    }

    /// Multiplicity of the argument `a > 0`, i.e. the exponent of the
    /// corresponding theta factor.
    pub fn multiplicity(&self, a: i64) -> i64 {
        self.theta_exps.get(&a).map_or(0, |&m| m as i64)
    }
}

/// The ten theta arguments of the four-parameter block attached to
/// `(a1, a2, a3, a4)`: the four entries and all sums of consecutive runs.
pub fn ten_arguments(a: [i64; 4]) -> [i64; 10] {
    let [a1, a2, a3, a4] = a;
    [
        a1,
        a2,
        a3,
        a4,
        a1 + a2,
        a2 + a3,
        a3 + a4,
        a1 + a2 + a3,
        a2 + a3 + a4,
        a1 + a2 + a3 + a4,
    ]
}

/// Builds the four-parameter block descriptor: ten theta factors over
/// eta^6, which has weight two.  Negative arguments are folded into the
/// sign; a zero argument marks the block as identically vanishing.
pub fn block_from_a(a: [i64; 4]) -> ThetaBlockDescriptor {
    let mut theta_exps: BTreeMap<i64, u32> = BTreeMap::new();
    let mut sign = 1i8;
    let mut vanishes = false;
    for arg in ten_arguments(a) {
        if arg == 0 {
            vanishes = true;
        } else {
            if arg < 0 {
                sign = -sign;
            }
            *theta_exps.entry(arg.abs()).or_insert(0) += 1;
        }
    }
    ThetaBlockDescriptor {
        eta_exp: 4 - 10,
        theta_exps,
        sign,
        vanishes,
    }
}

/// A truncated Fourier expansion together with the weight and index it
/// claims to have.  Coefficients with integer exponents `(n, r)` live at
/// series key `(24n, 2r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiFormSeries {
    pub series: FourierSeries,
    pub weight: HalfInt,
    pub index: i64,
}

impl JacobiFormSeries {
    pub fn fourier_coeff(&self, n: i64, r: i64) -> Coeff {
        self.series.coeff(24 * n, 2 * r)
    }

    /// Largest integer q-order n such that the whole coefficient row
    /// `c(n, .)` is known.
    pub fn n_window(&self) -> i64 {
        self.series.qmax().div_euclid(24)
    }

    /// Violations, inside the window, of the expected reflection symmetry
    /// `c(n, -r) = (-1)^k c(n, r)` for integral weight k.
    pub fn symmetry_violations(&self) -> Result<Vec<(i64, i64)>, JacobiError> {
        let k = self
            .weight
            .as_integer()
            .ok_or(JacobiError::NeedIntegralWeight(self.weight))?;
        let sign = if k % 2 == 0 {
            BigRational::from_integer(1.into())
        } else {
            BigRational::from_integer((-1).into())
        };
        let mut bad = Vec::new();
        for (&(q, z), c) in self.series.iter() {
            if self.series.coeff(q, -z) != c * &sign {
                bad.push((q, z));
            }
        }
        Ok(bad)
    }

    /// Violations, inside the window, of the index-N translation law
    /// `c(n, r) = c(n + lambda r + lambda^2 N, r + 2 lambda N)` for
    /// lambda = +-1.  Only pairs with both sides in the window are checked.
    pub fn translation_violations(&self) -> Vec<(i64, i64, i64)> {
        let nw = self.n_window();
        let mut bad = Vec::new();
        for (&(q, z), c) in self.series.iter() {
            if q % 24 != 0 || z % 2 != 0 {
                continue;
            }
            let (n, r) = (q / 24, z / 2);
            for lam in [-1i64, 1] {
                let n2 = n + lam * r + lam * lam * self.index;
                let r2 = r + 2 * lam * self.index;
                if (0..=nw).contains(&n2) && self.fourier_coeff(n2, r2) != *c {
                    bad.push((n, r, lam));
                }
            }
        }
        bad
    }
}

/// Expands a theta block to all integer q-orders up to and including
/// `n_order`.  The result's stored truncation is exactly `24 * n_order`.
pub fn block_expand(
    desc: &ThetaBlockDescriptor,
    n_order: i64,
) -> Result<JacobiFormSeries, JacobiError> {
    if desc.vanishes {
        return Err(JacobiError::ZeroBlock);
    }
    let qmax = 24 * n_order;
    let mut s = FourierSeries::one(qmax);
    for (&a, &mult) in desc.theta_exps.iter() {
        let th = theta::theta_series(a, qmax)?;
        s = s.mul(&th.pow(mult as i64)?);
    }
    let eta = theta::eta_series(qmax);
    s = s.mul(&eta.pow(desc.eta_exp)?);
    if desc.sign < 0 {
        s = s.neg();
    }
    Ok(JacobiFormSeries {
        series: s.truncated(qmax),
        weight: desc.weight(),
        index: desc.index(),
    })
}
