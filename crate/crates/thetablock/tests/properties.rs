//! Randomized algebraic laws for the truncated series arithmetic.
//!
//! Every comparison is exact; where truncation bounds of the two sides
//! can legitimately differ (cancellation can raise the effective order
//! of a sum), both sides are cut to the window they share before
//! comparing.

use num::{BigInt, BigRational};
use proptest::prelude::*;
use thetablock::fourier::{Coeff, FourierSeries};

fn rat(n: i64, d: i64) -> Coeff {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Random truncated series: exponents in a small box, small rational
/// coefficients, window between 24 and 72 in 24ths.
fn series() -> impl Strategy<Value = FourierSeries> {
    (
        24i64..=72,
        proptest::collection::vec(
            (0i64..=60, -5i64..=5, -6i64..=6, 1i64..=3),
            0..10,
        ),
    )
        .prop_map(|(qmax, raw)| {
            FourierSeries::from_terms(
                raw.into_iter().map(|(q, z, n, d)| ((q, z), rat(n, d))),
                qmax,
            )
        })
}

/// Random series with an invertible lead: a lone monomial strictly below
/// every other term.
fn unit_series() -> impl Strategy<Value = FourierSeries> {
    (
        0i64..=6,
        -3i64..=3,
        prop_oneof![(-5i64..=-1), (1i64..=5)],
        proptest::collection::vec((1i64..=40, -4i64..=4, -5i64..=5, 1i64..=2), 0..6),
    )
        .prop_map(|(q0, z0, c0, tail)| {
            let mut terms = vec![((q0, z0), rat(c0, 1))];
            for (dq, z, n, d) in tail {
                terms.push(((q0 + dq, z), rat(n, d)));
            }
            FourierSeries::from_terms(terms, q0 + 48)
        })
}

fn common_window(a: &FourierSeries, b: &FourierSeries) -> i64 {
    a.qmax().min(b.qmax())
}

proptest! {
    #[test]
    fn addition_commutes(a in series(), b in series()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
    }

    #[test]
    fn addition_associates(a in series(), b in series(), c in series()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
    }

    #[test]
    fn negation_cancels(a in series()) {
        let zero = FourierSeries::zero(a.qmax());
        prop_assert_eq!(a.add(&a.neg()), zero);
        prop_assert_eq!(a.neg().neg(), a);
    }

    #[test]
    fn multiplication_commutes(a in series(), b in series()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn multiplication_associates_on_the_common_window(
        a in series(), b in series(), c in series()
    ) {
        let lhs = a.mul(&b).mul(&c);
        let rhs = a.mul(&b.mul(&c));
        let w = common_window(&lhs, &rhs);
        prop_assert_eq!(lhs.truncated(w), rhs.truncated(w));
    }

    #[test]
    fn multiplication_distributes_on_the_common_window(
        a in series(), b in series(), c in series()
    ) {
        let lhs = a.mul(&b.add(&c));
        let rhs = a.mul(&b).add(&a.mul(&c));
        let w = common_window(&lhs, &rhs);
        prop_assert_eq!(lhs.truncated(w), rhs.truncated(w));
    }

    #[test]
    fn one_is_a_multiplicative_identity(a in series()) {
        let one = FourierSeries::one(a.qmax());
        prop_assert_eq!(a.mul(&one), a);
    }

    #[test]
    fn truncation_is_monotone_and_idempotent(a in series(), k1 in 0i64..=72, k2 in 0i64..=72) {
        let k = k1.min(k2);
        prop_assert_eq!(a.truncated(k1).truncated(k2), a.truncated(k));
        prop_assert_eq!(a.truncated(k1).truncated(k1), a.truncated(k1));
    }

    #[test]
    fn division_undoes_multiplication(a in series(), b in unit_series()) {
        let p = a.mul(&b);
        let q = p.div_exact(&b).expect("product divides");
        let w = common_window(&q, &a);
        prop_assert_eq!(q.truncated(w), a.truncated(w));
    }

    #[test]
    fn inverse_multiplies_to_one(u in unit_series()) {
        let v = u.inverse().expect("unit lead");
        let p = u.mul(&v);
        let w = p.qmax();
        prop_assert_eq!(p, FourierSeries::one(w));
    }

    #[test]
    fn powers_split_additively(u in unit_series(), e1 in -2i64..=3, e2 in -2i64..=3) {
        let lhs = u.pow(e1 + e2).expect("power");
        let rhs = u.pow(e1).expect("power").mul(&u.pow(e2).expect("power"));
        let w = common_window(&lhs, &rhs);
        prop_assert_eq!(lhs.truncated(w), rhs.truncated(w));
    }

    #[test]
    fn term_tuples_round_trip(a in series()) {
        let tuples = a.to_term_tuples();
        let back = FourierSeries::from_term_tuples(&tuples, a.qmax()).expect("well formed");
        prop_assert_eq!(back, a);
    }
}
