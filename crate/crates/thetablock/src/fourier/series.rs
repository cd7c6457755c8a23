//! Bivariate truncated Laurent series with exact rational coefficients.
//!
//! A [`FourierSeries`] models a finite chunk of a two-variable expansion
//! `sum c(n, r) q^(n/24) z^(r/2)` together with the bound up to which the
//! chunk is trustworthy.  The fixed denominators 24 and 2 cover every series
//! built in this crate: the eta factor lives on q^(1/24), odd theta factors
//! on q^(1/8) and z^(1/2), and all their products and quotients.

use std::collections::BTreeMap;

use num::{BigInt, BigRational, One, Zero};

use super::zpoly::ZPoly;
use super::{Coeff, SeriesError};

/// Fixed denominator of q-exponents: keys count 24ths.
pub const Q_DEN: i64 = 24;
/// Fixed denominator of elliptic-variable exponents: keys count halves.
pub const Z_DEN: i64 = 2;

/// Truncated bivariate Laurent series, exact up to and including q-exponent
/// `qmax` (in 24ths).  Coefficients beyond `qmax` are unknown, not zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourierSeries {
    /// Sparse storage keyed by `(qexp, zexp)` in units of (1/24, 1/2).
    terms: BTreeMap<(i64, i64), Coeff>,
    qmax: i64,
}

impl FourierSeries {
    // ------------------------------------------------------------------
    // constructors

    pub fn zero(qmax: i64) -> Self {
        FourierSeries {
            terms: BTreeMap::new(),
            qmax,
        }
    }

    pub fn constant(c: Coeff, qmax: i64) -> Self {
        Self::monomial(0, 0, c, qmax)
    }

    pub fn one(qmax: i64) -> Self {
        Self::constant(BigRational::one(), qmax)
    }

    pub fn monomial(qexp: i64, zexp: i64, c: Coeff, qmax: i64) -> Self {
        let mut s = Self::zero(qmax);
        s.add_term(qexp, zexp, &c);
        s
    }

    /// Builds a series from raw terms; terms beyond `qmax` are discarded
    /// (they carry no information at this truncation).
    pub fn from_terms<I>(iter: I, qmax: i64) -> Self
    where
        I: IntoIterator<Item = ((i64, i64), Coeff)>,
    {
        let mut s = Self::zero(qmax);
        for ((q, z), c) in iter {
            if q <= qmax {
                s.add_term(q, z, &c);
            }
        }
        s
    }

    // ------------------------------------------------------------------
    // accessors

    pub fn qmax(&self) -> i64 {
        self.qmax
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(i64, i64), &Coeff)> {
        self.terms.iter()
    }

    /// Lowest stored q-exponent (in 24ths), if the series is nonzero.
    pub fn min_qexp(&self) -> Option<i64> {
        self.terms.keys().next().map(|&(q, _)| q)
    }

    pub fn coeff(&self, qexp: i64, zexp: i64) -> Coeff {
        self.terms
            .get(&(qexp, zexp))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// The q-slice at exponent `qexp` as a Laurent polynomial in z.
    pub fn q_slice(&self, qexp: i64) -> ZPoly {
        ZPoly::from_terms(
            self.terms
                .range((qexp, i64::MIN)..=(qexp, i64::MAX))
                .map(|(&(_, z), c)| (z, c.clone())),
        )
    }

    /// All distinct q-exponents with a nonzero slice.
    pub fn q_support(&self) -> Vec<i64> {
        let mut out: Vec<i64> = Vec::new();
        for &(q, _) in self.terms.keys() {
            if out.last() != Some(&q) {
                out.push(q);
            }
        }
        out
    }

    // ------------------------------------------------------------------
    // mutation helpers (crate-internal)

    pub(crate) fn add_term(&mut self, qexp: i64, zexp: i64, c: &Coeff) {
        if c.is_zero() || qexp > self.qmax {
            return;
        }
        let entry = self
            .terms
            .entry((qexp, zexp))
            .or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(qexp, zexp));
        }
    }

    pub(crate) fn set_slice(&mut self, qexp: i64, slice: &ZPoly) {
        for (&z, c) in slice.iter() {
            self.add_term(qexp, z, c);
        }
    }

    /// Effective q-order used for truncation bookkeeping: for a zero series
    /// nothing is known below `qmax + 1`, which is the pessimistic choice.
    fn effective_order(&self) -> i64 {
        self.min_qexp().unwrap_or(self.qmax + 1)
    }

    // ------------------------------------------------------------------
    // ring operations

    pub fn truncated(&self, qmax: i64) -> Self {
        let qmax = qmax.min(self.qmax);
        FourierSeries {
            terms: self
                .terms
                .iter()
                .filter(|(&(q, _), _)| q <= qmax)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
            qmax,
        }
    }

    pub fn neg(&self) -> Self {
        FourierSeries {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
            qmax: self.qmax,
        }
    }

    pub fn scaled(&self, s: &Coeff) -> Self {
        if s.is_zero() {
            return Self::zero(self.qmax);
        }
        FourierSeries {
            terms: self.terms.iter().map(|(k, c)| (*k, c * s)).collect(),
            qmax: self.qmax,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let qmax = self.qmax.min(other.qmax);
        let mut out = self.truncated(qmax);
        for (&(q, z), c) in other.terms.iter() {
            out.add_term(q, z, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Cauchy product.  The result is exact up to
    /// `min(a.qmax + ord(b), b.qmax + ord(a))`: a coefficient at total
    /// exponent `n` only involves unknown terms of one factor when the other
    /// factor contributes below its order.
    pub fn mul(&self, other: &Self) -> Self {
        let qmax = (self.qmax + other.effective_order())
            .min(other.qmax + self.effective_order());
        let mut out = Self::zero(qmax);
        if self.is_zero() || other.is_zero() {
            return out;
        }
        // Iterate the sparser factor on the outside and prune by q-budget.
        let (a, b) = if self.num_terms() <= other.num_terms() {
            (self, other)
        } else {
            (other, self)
        };
        for (&(qa, za), ca) in a.terms.iter() {
            let budget = qmax - qa;
            if budget < b.effective_order() {
                continue;
            }
            for (&(qb, zb), cb) in b.terms.range(..=(budget, i64::MAX)) {
                out.add_term(qa + qb, za + zb, &(ca * cb));
            }
        }
        out
    }

    /// Integer power.  Nonnegative exponents use binary powering; negative
    /// exponents invert first, which requires the lowest q-slice to be a
    /// single monomial (as it is for eta powers).
    pub fn pow(&self, e: i64) -> Result<Self, SeriesError> {
        if e < 0 {
            return Ok(self.inverse()?.pow(-e).expect("nonnegative"));
        }
        let mut acc = Self::one(self.qmax);
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    /// Multiplicative inverse.  Writes `self = c q^a z^b (1 + u)` with
    /// `ord(u) >= 1/24` and sums the geometric series; fails unless the
    /// lowest q-slice is a single monomial.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let min_q = self.min_qexp().ok_or(SeriesError::ZeroDivisor)?;
        let lead = self.q_slice(min_q);
        if lead.num_terms() != 1 {
            return Err(SeriesError::NonInvertibleLeading);
        }
        let (lead_z, lead_c) = lead.min_term().expect("nonzero");
        let lead_c = lead_c.clone();
        // Relative precision survives inversion; in absolute terms the
        // inverse (lowest exponent -min_q) is known up to qmax - 2*min_q.
        let rel_max = self.qmax - min_q;
        let inv_lead = Self::monomial(-min_q, -lead_z, lead_c.recip(), rel_max);
        let mut u = self.mul(&inv_lead); // 1 + u, known up to rel_max
        u.add_term(0, 0, &-BigRational::one());
        debug_assert!(u.min_qexp().map_or(true, |o| o >= 1));
        // Horner form of 1 - u + u^2 - ...: acc <- 1 - u * acc.
        let steps = if u.is_zero() {
            0
        } else {
            rel_max / u.min_qexp().expect("nonzero")
        };
        let mut acc = Self::one(rel_max);
        for _ in 0..steps {
            acc = Self::one(rel_max).sub(&u.mul(&acc).truncated(rel_max));
        }
        Ok(acc.mul(&inv_lead))
    }

    /// Exact series division, slice by slice in q with exact Laurent
    /// division of each slice.  Fails loudly if any slice fails to divide.
    ///
    /// Both operands are consumed conceptually at the coarser of the two
    /// truncations; the quotient is exact up to `min(qmax) - ord(den)`.
    pub fn div_exact(&self, den: &Self) -> Result<Self, SeriesError> {
        let o = den.min_qexp().ok_or(SeriesError::ZeroDivisor)?;
        let qmax = self.qmax.min(den.qmax) - o;
        if self.is_zero() {
            return Ok(Self::zero(qmax));
        }
        let n0 = self.min_qexp().expect("nonzero") - o;
        // Both supports live on arithmetic progressions; stepping by their
        // common stride skips slices that are identically zero.
        let mut stride = 0i64;
        for q in den.q_support() {
            stride = num::integer::gcd(stride, q - o);
        }
        for q in self.q_support() {
            stride = num::integer::gcd(stride, q - o - n0);
        }
        if stride == 0 {
            stride = 1;
        }
        let den_lead = den.q_slice(o);
        let den_offsets: Vec<(i64, ZPoly)> = den
            .q_support()
            .into_iter()
            .filter(|&q| q > o)
            .map(|q| (q - o, den.q_slice(q)))
            .collect();
        let mut quot = Self::zero(qmax);
        let mut computed: BTreeMap<i64, ZPoly> = BTreeMap::new();
        let mut n = n0;
        while n <= qmax {
            let mut rhs = self.q_slice(n + o);
            for (off, dslice) in den_offsets.iter() {
                if let Some(prev) = computed.get(&(n - off)) {
                    for (&z1, c1) in dslice.iter() {
                        for (&z2, c2) in prev.iter() {
                            rhs.add_term(z1 + z2, &-(c1 * c2));
                        }
                    }
                }
            }
            if !rhs.is_zero() {
                let slice = rhs
                    .div_exact(&den_lead)
                    .map_err(|_| SeriesError::NotDivisible { q_24ths: n + o })?;
                quot.set_slice(n, &slice);
                computed.insert(n, slice);
            }
            n += stride;
        }
        Ok(quot)
    }

    // ------------------------------------------------------------------
    // serialization

    /// Flat tuple form `(qexp, zexp, numerator, denominator)` with the big
    /// integers rendered in decimal, suitable for JSON.
    pub fn to_term_tuples(&self) -> Vec<(i64, i64, String, String)> {
        self.terms
            .iter()
            .map(|(&(q, z), c)| (q, z, c.numer().to_string(), c.denom().to_string()))
            .collect()
    }

    pub fn from_term_tuples(
        tuples: &[(i64, i64, String, String)],
        qmax: i64,
    ) -> Result<Self, SeriesError> {
        let mut s = Self::zero(qmax);
        for (q, z, nu, de) in tuples {
            let nu: BigInt = nu.parse().map_err(|_| SeriesError::BadSerialization)?;
            let de: BigInt = de.parse().map_err(|_| SeriesError::BadSerialization)?;
            if de.is_zero() {
                return Err(SeriesError::BadSerialization);
            }
            s.add_term(*q, *z, &BigRational::new(nu, de));
        }
        Ok(s)
    }
}
