//! Laurent polynomials in the elliptic variable, used as q-slices of a
//! [`FourierSeries`](crate::fourier::FourierSeries).
//!
//! Exponents are integers in units of 1/[`Z_DEN`](crate::fourier::Z_DEN).

use std::collections::BTreeMap;

use num::{BigRational, Zero};

use super::{Coeff, SeriesError};

/// A Laurent polynomial in one variable with exact rational coefficients.
/// Keys are exponents (in halves); zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ZPoly {
    terms: BTreeMap<i64, Coeff>,
}

impl ZPoly {
    pub fn new() -> Self {
        ZPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Coeff)>>(iter: I) -> Self {
        let mut p = ZPoly::new();
        for (e, c) in iter {
            p.add_term(e, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &Coeff)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: i64) -> Coeff {
        self.terms.get(&e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Lowest term (exponent, coefficient), if any.
    pub fn min_term(&self) -> Option<(i64, &Coeff)> {
        self.terms.iter().next().map(|(e, c)| (*e, c))
    }

    pub fn add_term(&mut self, e: i64, c: &Coeff) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// `self += scale * zeta^shift * other`.
    pub fn add_scaled(&mut self, other: &ZPoly, scale: &Coeff, shift: i64) {
        if scale.is_zero() {
            return;
        }
        for (e, c) in other.terms.iter() {
            self.add_term(e + shift, &(c * scale));
        }
    }

    pub fn negated(&self) -> ZPoly {
        ZPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &ZPoly) -> ZPoly {
        let mut out = ZPoly::new();
        for (e1, c1) in self.terms.iter() {
            for (e2, c2) in other.terms.iter() {
                out.add_term(e1 + e2, &(c1 * c2));
            }
        }
        out
    }

    /// Exact division by `den` in the Laurent-polynomial ring.
    ///
    /// Peels terms from the low end against the lowest term of `den`. Since
    /// the extreme monomials of a product never cancel, an exact quotient has
    /// maximal exponent `self.max - den.max`; a candidate quotient term above
    /// that bound proves the division inexact.
    pub fn div_exact(&self, den: &ZPoly) -> Result<ZPoly, SeriesError> {
        if den.is_zero() {
            return Err(SeriesError::ZeroDivisor);
        }
        if self.is_zero() {
            return Ok(ZPoly::new());
        }
        let (d_min, d_min_c) = den.min_term().expect("nonzero");
        let d_min_c = d_min_c.clone();
        let quot_max = self.max_exp().expect("nonzero") - den.max_exp().expect("nonzero");
        let mut rem = self.clone();
        let mut quot = ZPoly::new();
        while let Some((r_min, r_c)) = rem.min_term() {
            let e = r_min - d_min;
            if e > quot_max {
                return Err(SeriesError::SliceNotDivisible);
            }
            let c = r_c / &d_min_c;
            quot.add_term(e, &c);
            rem.add_scaled(den, &(-c), e);
        }
        Ok(quot)
    }
}
