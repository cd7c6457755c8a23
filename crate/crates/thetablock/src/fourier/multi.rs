//! Truncated series in one modular variable q and several elliptic
//! variables, used for theta expansions attached to a positive-definite
//! lattice of rank > 1.
//!
//! Storage is slice-major: for each q-exponent (in 24ths) a map from the
//! vector of elliptic exponents to the coefficient.  Elliptic exponents are
//! integer coordinates in a fixed crate-wide scaling of the dual basis (for
//! the rank-4 root lattice used here, units of one tenth of a basis vector),
//! so all arithmetic stays on integer keys.

use std::collections::BTreeMap;

use num::{BigRational, One, Zero};

use super::series::FourierSeries;
use super::{Coeff, SeriesError};

/// Multivariate truncated series, exact up to q-exponent `qmax` (in 24ths).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiFourierSeries {
    rank: usize,
    slices: BTreeMap<i64, BTreeMap<Vec<i64>, Coeff>>,
    qmax: i64,
}

impl MultiFourierSeries {
    pub fn zero(rank: usize, qmax: i64) -> Self {
        MultiFourierSeries {
            rank,
            slices: BTreeMap::new(),
            qmax,
        }
    }

    pub fn one(rank: usize, qmax: i64) -> Self {
        let mut s = Self::zero(rank, qmax);
        s.add_term(0, vec![0; rank], &BigRational::one());
        s
    }

    pub fn monomial(rank: usize, qexp: i64, e: Vec<i64>, c: Coeff, qmax: i64) -> Self {
        let mut s = Self::zero(rank, qmax);
        s.add_term(qexp, e, &c);
        s
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn qmax(&self) -> i64 {
        self.qmax
    }

    pub fn is_zero(&self) -> bool {
        self.slices.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.slices.values().map(|s| s.len()).sum()
    }

    pub fn min_qexp(&self) -> Option<i64> {
        self.slices.keys().next().copied()
    }

    fn effective_order(&self) -> i64 {
        self.min_qexp().unwrap_or(self.qmax + 1)
    }

    pub fn coeff(&self, qexp: i64, e: &[i64]) -> Coeff {
        self.slices
            .get(&qexp)
            .and_then(|s| s.get(e))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn q_slice(&self, qexp: i64) -> BTreeMap<Vec<i64>, Coeff> {
        self.slices.get(&qexp).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &BTreeMap<Vec<i64>, Coeff>)> {
        self.slices.iter().map(|(&q, s)| (q, s))
    }

    pub fn add_term(&mut self, qexp: i64, e: Vec<i64>, c: &Coeff) {
        assert_eq!(e.len(), self.rank, "exponent vector of wrong rank");
        if c.is_zero() || qexp > self.qmax {
            return;
        }
        let slice = self.slices.entry(qexp).or_default();
        let entry = slice.entry(e.clone()).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            slice.remove(&e);
            if slice.is_empty() {
                self.slices.remove(&qexp);
            }
        }
    }

    pub fn truncated(&self, qmax: i64) -> Self {
        let qmax = qmax.min(self.qmax);
        MultiFourierSeries {
            rank: self.rank,
            slices: self
                .slices
                .range(..=qmax)
                .map(|(&q, s)| (q, s.clone()))
                .collect(),
            qmax,
        }
    }

    pub fn neg(&self) -> Self {
        MultiFourierSeries {
            rank: self.rank,
            slices: self
                .slices
                .iter()
                .map(|(&q, s)| (q, s.iter().map(|(e, c)| (e.clone(), -c)).collect()))
                .collect(),
            qmax: self.qmax,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        if self.rank != other.rank {
            return Err(SeriesError::RankMismatch);
        }
        let qmax = self.qmax.min(other.qmax);
        let mut out = self.truncated(qmax);
        for (q, slice) in other.slices.range(..=qmax) {
            for (e, c) in slice {
                out.add_term(*q, e.clone(), c);
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        if self.rank != other.rank {
            return Err(SeriesError::RankMismatch);
        }
        let qmax = (self.qmax + other.effective_order())
            .min(other.qmax + self.effective_order());
        let mut out = Self::zero(self.rank, qmax);
        for (&qa, sa) in self.slices.iter() {
            let budget = qmax - qa;
            for (&qb, sb) in other.slices.range(..=budget) {
                for (ea, ca) in sa {
                    for (eb, cb) in sb {
                        let e: Vec<i64> =
                            ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                        out.add_term(qa + qb, e, &(ca * cb));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u64) -> Result<Self, SeriesError> {
        let mut acc = Self::one(self.rank, self.qmax);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Multiplies by a univariate (pure-q) series, a common fused step when
    /// an eta power scales an entire multivariate product.
    pub fn mul_pure_q(&self, other: &FourierSeries) -> Self {
        let qmax = (self.qmax + other.min_qexp().unwrap_or(other.qmax() + 1))
            .min(other.qmax() + self.effective_order());
        let mut out = Self::zero(self.rank, qmax);
        for (&(qb, zb), cb) in other.iter() {
            assert_eq!(zb, 0, "pure-q factor has an elliptic exponent");
            for (&qa, sa) in self.slices.range(..=(qmax - qb)) {
                for (ea, ca) in sa {
                    out.add_term(qa + qb, ea.clone(), &(ca * cb));
                }
            }
        }
        out
    }

    /// Exact division, order by order in q.  `support_ok(n, e)` must return
    /// `true` for every exponent vector that can occur in the quotient's
    /// slice at (relative) q-exponent `n`; exponents outside that region are
    /// eliminated greedily, which keeps the elimination order well-founded
    /// when the caller knows a support bound (for the forms handled here, a
    /// norm ball derived from the holomorphy of the quotient).
    ///
    /// The denominator's lowest slice must be a single monomial.
    pub fn div_exact_with_support<F>(
        &self,
        den: &Self,
        support_ok: F,
    ) -> Result<Self, SeriesError>
    where
        F: Fn(i64, &[i64]) -> bool,
    {
        if self.rank != den.rank {
            return Err(SeriesError::RankMismatch);
        }
        let o = den.min_qexp().ok_or(SeriesError::ZeroDivisor)?;
        let lead = den.slices.get(&o).expect("nonzero order slice");
        if lead.len() != 1 {
            return Err(SeriesError::NonInvertibleLeading);
        }
        let (lead_e, lead_c) = lead.iter().next().expect("single term");
        let qmax = self.qmax.min(den.qmax) - o;
        let mut quot = Self::zero(self.rank, qmax);
        if self.is_zero() {
            return Ok(quot);
        }
        let den_offsets: Vec<(i64, &BTreeMap<Vec<i64>, Coeff>)> = den
            .slices
            .range(o + 1..)
            .map(|(&q, s)| (q - o, s))
            .collect();
        let n0 = self.min_qexp().expect("nonzero") - o;
        for n in n0..=qmax {
            // rhs = numerator slice minus contributions of earlier quotient
            // slices against the higher denominator slices.
            let mut rhs: BTreeMap<Vec<i64>, Coeff> =
                self.slices.get(&(n + o)).cloned().unwrap_or_default();
            for (off, dslice) in den_offsets.iter() {
                if let Some(prev) = quot.slices.get(&(n - off)) {
                    for (ed, cd) in dslice.iter() {
                        for (ep, cp) in prev.iter() {
                            let e: Vec<i64> =
                                ed.iter().zip(ep).map(|(x, y)| x + y).collect();
                            let entry = rhs.entry(e.clone()).or_insert_with(BigRational::zero);
                            *entry -= cd * cp;
                            if entry.is_zero() {
                                rhs.remove(&e);
                            }
                        }
                    }
                }
            }
            // Solve rhs = lead * slice_n by peeling terms whose exponent,
            // after subtracting the leading exponent, lies in the allowed
            // support region.
            let mut slice: BTreeMap<Vec<i64>, Coeff> = BTreeMap::new();
            loop {
                let target = rhs.iter().find_map(|(e, _)| {
                    let shifted: Vec<i64> =
                        e.iter().zip(lead_e).map(|(x, y)| x - y).collect();
                    if support_ok(n, &shifted) {
                        Some((e.clone(), shifted))
                    } else {
                        None
                    }
                });
                let Some((e_full, e_quot)) = target else {
                    break;
                };
                let c = rhs.remove(&e_full).expect("present") / lead_c;
                // Record the quotient term and cancel its full effect on rhs
                // through the *leading* slice (other slices were handled
                // above via earlier quotient slices; within one slice the
                // leading monomial is the only denominator contribution).
                slice.insert(e_quot.clone(), c);
                // Nothing else to cancel: lead has a single term and its
                // product with the new quotient term is exactly e_full.
            }
            if !rhs.is_empty() {
                return Err(SeriesError::NotDivisible { q_24ths: n + o });
            }
            for (e, c) in slice {
                quot.add_term(n, e, &c);
            }
        }
        Ok(quot)
    }

    /// Exact division by a series whose lowest q-slice is an antisymmetric
    /// pair `c z^{e1} - c z^{e2}` (the shape of an odd theta factor, whose
    /// lowest slice is `z^{a} - z^{-a}`).
    ///
    /// Within each q-slice the remainder splits into lines parallel to
    /// `g = e2 - e1`; along a line the divisor acts as `c y^{e1} (1 - y)`
    /// with `y = z^g`, so the quotient coefficients are prefix sums of the
    /// line and exactness means every line sums to zero.  Unlike
    /// [`div_exact_with_support`](Self::div_exact_with_support) this needs
    /// no a-priori support bound.
    pub fn div_exact_antisym(&self, den: &Self) -> Result<Self, SeriesError> {
        if self.rank != den.rank {
            return Err(SeriesError::RankMismatch);
        }
        let o = den.min_qexp().ok_or(SeriesError::ZeroDivisor)?;
        let lead = den.slices.get(&o).expect("nonzero order slice");
        if lead.len() != 2 {
            return Err(SeriesError::NonInvertibleLeading);
        }
        let mut lead_terms = lead.iter();
        let (e1, c1) = lead_terms.next().expect("two terms");
        let (e2, c2) = lead_terms.next().expect("two terms");
        if *c2 != -c1 {
            return Err(SeriesError::NonInvertibleLeading);
        }
        let g: Vec<i64> = e2.iter().zip(e1).map(|(x, y)| x - y).collect();
        let pivot = g
            .iter()
            .position(|&x| x != 0)
            .expect("distinct exponents");
        let qmax = self.qmax.min(den.qmax) - o;
        let mut quot = Self::zero(self.rank, qmax);
        if self.is_zero() {
            return Ok(quot);
        }
        let den_offsets: Vec<(i64, &BTreeMap<Vec<i64>, Coeff>)> = den
            .slices
            .range(o + 1..)
            .map(|(&q, s)| (q - o, s))
            .collect();
        let n0 = self.min_qexp().expect("nonzero") - o;
        for n in n0..=qmax {
            let mut rhs: BTreeMap<Vec<i64>, Coeff> =
                self.slices.get(&(n + o)).cloned().unwrap_or_default();
            for (off, dslice) in den_offsets.iter() {
                if let Some(prev) = quot.slices.get(&(n - off)) {
                    for (ed, cd) in dslice.iter() {
                        for (ep, cp) in prev.iter() {
                            let e: Vec<i64> =
                                ed.iter().zip(ep).map(|(x, y)| x + y).collect();
                            let entry =
                                rhs.entry(e.clone()).or_insert_with(BigRational::zero);
                            *entry -= cd * cp;
                            if entry.is_zero() {
                                rhs.remove(&e);
                            }
                        }
                    }
                }
            }
            if rhs.is_empty() {
                continue;
            }
            // Split the slice into lines e = rep + k g and divide each line
            // by c1 (1 - y).
            let mut lines: BTreeMap<Vec<i64>, BTreeMap<i64, Coeff>> = BTreeMap::new();
            for (e, c) in rhs {
                let k = e[pivot].div_euclid(g[pivot]);
                let rep: Vec<i64> =
                    e.iter().zip(&g).map(|(x, y)| x - k * y).collect();
                lines.entry(rep).or_default().insert(k, c);
            }
            for (rep, line) in lines {
                let (&k_min, _) = line.iter().next().expect("nonempty line");
                let (&k_max, _) = line.iter().next_back().expect("nonempty line");
                let mut acc = BigRational::zero();
                for k in k_min..=k_max {
                    if let Some(a) = line.get(&k) {
                        acc += a;
                    }
                    if k == k_max {
                        break;
                    }
                    if acc.is_zero() {
                        continue;
                    }
                    let e: Vec<i64> = rep
                        .iter()
                        .zip(e1)
                        .zip(&g)
                        .map(|((x, y), z)| x - y + k * z)
                        .collect();
                    quot.add_term(n, e, &(&acc / c1));
                }
                if !acc.is_zero() {
                    return Err(SeriesError::NotDivisible { q_24ths: n + o });
                }
            }
        }
        Ok(quot)
    }

    /// Specializes the elliptic variables along a direction `v`, collapsing
    /// every exponent vector to the single pairing `e . v`.  The result is a
    /// two-variable series whose elliptic exponent unit is inherited from
    /// the scaling baked into `e` and `v` by the caller.
    pub fn specialize(&self, v: &[i64]) -> Result<FourierSeries, SeriesError> {
        if v.len() != self.rank {
            return Err(SeriesError::RankMismatch);
        }
        let mut out = FourierSeries::zero(self.qmax);
        for (&q, slice) in self.slices.iter() {
            for (e, c) in slice {
                let z: i64 = e.iter().zip(v).map(|(x, y)| x * y).sum();
                out.add_term(q, z, c);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigInt;

    fn r(n: i64) -> Coeff {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn mul_and_specialize_commute() {
        let mut a = MultiFourierSeries::zero(2, 40);
        a.add_term(0, vec![1, 0], &r(2));
        a.add_term(3, vec![-1, 2], &r(1));
        let mut b = MultiFourierSeries::zero(2, 40);
        b.add_term(1, vec![0, 1], &r(3));
        b.add_term(2, vec![2, -1], &r(-1));
        let v = [3, 5];
        let lhs = a.mul(&b).unwrap().specialize(&v).unwrap();
        let rhs = a.specialize(&v).unwrap().mul(&b.specialize(&v).unwrap());
        assert_eq!(lhs.truncated(rhs.qmax()), rhs.truncated(lhs.qmax()));
    }

    #[test]
    fn rank_mismatch_is_rejected() {
        let a = MultiFourierSeries::one(2, 10);
        let b = MultiFourierSeries::one(3, 10);
        assert_eq!(a.mul(&b).unwrap_err(), SeriesError::RankMismatch);
    }

    #[test]
    fn div_round_trips_against_mul() {
        let mut den = MultiFourierSeries::zero(2, 60);
        den.add_term(1, vec![1, -1], &r(1));
        den.add_term(4, vec![0, 2], &r(-3));
        let mut quot = MultiFourierSeries::zero(2, 60);
        quot.add_term(0, vec![0, 0], &r(5));
        quot.add_term(2, vec![-2, 1], &r(1));
        let num = den.mul(&quot).unwrap();
        let back = num
            .div_exact_with_support(&den, |_, e| e.iter().all(|x| x.abs() <= 8))
            .unwrap();
        let qm = back.qmax().min(quot.qmax());
        assert_eq!(back.truncated(qm), quot.truncated(qm));
    }

    #[test]
    fn div_with_too_small_support_fails() {
        let mut den = MultiFourierSeries::zero(1, 30);
        den.add_term(0, vec![0], &r(1));
        let mut num = MultiFourierSeries::zero(1, 30);
        num.add_term(0, vec![9], &r(1));
        let res = num.div_exact_with_support(&den, |_, e| e[0].abs() <= 3);
        assert_eq!(res.unwrap_err(), SeriesError::NotDivisible { q_24ths: 0 });
    }

    #[test]
    fn antisym_division_round_trips() {
        // A theta-factor-shaped divisor: antisymmetric pair at the lowest
        // slice, another pair higher up.
        let mut den = MultiFourierSeries::zero(2, 80);
        den.add_term(3, vec![1, 2], &r(1));
        den.add_term(3, vec![-1, -2], &r(-1));
        den.add_term(27, vec![3, 6], &r(-1));
        den.add_term(27, vec![-3, -6], &r(1));
        let mut quot = MultiFourierSeries::zero(2, 80);
        quot.add_term(0, vec![0, 0], &r(2));
        // Two terms on the same line as the divisor direction, so the
        // quotient reconstruction must bridge the gap between them.
        quot.add_term(0, vec![2, 4], &r(1));
        quot.add_term(5, vec![1, -1], &r(-3));
        quot.add_term(24, vec![0, 1], &BigRational::new(1.into(), 2.into()));
        let num = den.mul(&quot).unwrap();
        let back = num.div_exact_antisym(&den).unwrap();
        let qm = back.qmax().min(quot.qmax());
        assert_eq!(back.truncated(qm), quot.truncated(qm));
    }

    #[test]
    fn antisym_division_divides_divisor_by_itself() {
        let mut den = MultiFourierSeries::zero(3, 100);
        den.add_term(3, vec![1, 1, 0], &r(1));
        den.add_term(3, vec![-1, -1, 0], &r(-1));
        den.add_term(27, vec![3, 3, 0], &r(-1));
        den.add_term(27, vec![-3, -3, 0], &r(1));
        let unit = den.div_exact_antisym(&den).unwrap();
        let mut expect = MultiFourierSeries::zero(3, unit.qmax());
        expect.add_term(0, vec![0, 0, 0], &r(1));
        assert_eq!(unit, expect);
    }

    #[test]
    fn antisym_division_detects_failure() {
        let mut den = MultiFourierSeries::zero(2, 40);
        den.add_term(3, vec![1, 2], &r(1));
        den.add_term(3, vec![-1, -2], &r(-1));
        // A lone monomial cannot be a multiple of the pair.
        let num = MultiFourierSeries::monomial(2, 3, vec![1, 2], r(1), 40);
        assert_eq!(
            num.div_exact_antisym(&den).unwrap_err(),
            SeriesError::NotDivisible { q_24ths: 3 }
        );
    }

    #[test]
    fn mul_pure_q_scales_slices() {
        let mut a = MultiFourierSeries::zero(2, 50);
        a.add_term(2, vec![1, 1], &r(1));
        let eta_like = FourierSeries::from_terms([((1, 0), r(1)), ((25, 0), r(-1))], 49);
        let prod = a.mul_pure_q(&eta_like);
        assert_eq!(prod.coeff(3, &[1, 1]), r(1));
        assert_eq!(prod.coeff(27, &[1, 1]), r(-1));
    }
}
