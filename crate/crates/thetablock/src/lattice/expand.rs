//! Fourier expansion of lattice theta blocks and the operators needed to
//! form their weight-zero quotient.
//!
//! Exponent conventions: a term at q-key `24 n` with exponent vector `e`
//! stands for `q^n zeta^{(e . z) / 2}` in the basis of the index lattice,
//! so `e / 2` is the Fourier index in dual-basis coordinates and `e` is
//! always even for the blocks built here.

use num::{BigRational, One};

use crate::fourier::{Coeff, MultiFourierSeries};
use crate::jacobi::hecke::{divisors, int_pow};
use crate::jacobi::{theta, HalfInt, JacobiError};

use super::block::LatticeBlockDescriptor;

/// One odd theta factor for the pairing vector `c`: the sum over odd `u`
/// of `(-1)^((u-1)/2) q^(u^2/8) zeta^(u (c . z) / 2)`, truncated at `qmax`
/// (in 24ths, so the q-exponent key is `3 u^2`).
pub fn theta_factor(c: &[i64], qmax: i64) -> MultiFourierSeries {
    let one: Coeff = BigRational::one();
    let mut s = MultiFourierSeries::zero(c.len(), qmax);
    let mut u = 1i64;
    while 3 * u * u <= qmax {
        for uu in [u, -u] {
            let j = (uu - 1).div_euclid(2);
            let coeff = if j.rem_euclid(2) == 0 {
                one.clone()
            } else {
                -&one
            };
            let e: Vec<i64> = c.iter().map(|x| x * uu).collect();
            s.add_term(3 * uu * uu, e, &coeff);
        }
        u += 2;
    }
    s
}

/// Expands a lattice theta block to all integer q-orders up to and
/// including `n_order`; the stored truncation is exactly `24 * n_order`.
pub fn lattice_theta_expand(
    desc: &LatticeBlockDescriptor,
    n_order: i64,
) -> Result<MultiFourierSeries, JacobiError> {
    let rank = desc.rank();
    let qmax = 24 * n_order;
    // Lowest q-order of the block in 24ths; below it the result is zero
    // and the eta expansion could degenerate, so short-circuit.
    let order = 3 * desc.forms.len() as i64 + desc.eta_exp;
    if qmax < order {
        return Ok(MultiFourierSeries::zero(rank, qmax));
    }
    let mut s = MultiFourierSeries::one(rank, qmax);
    for c in desc.forms.iter() {
        if c.iter().all(|&x| x == 0) {
            return Err(JacobiError::ZeroThetaArgument);
        }
        s = s.mul(&theta_factor(c, qmax))?;
    }
    let eta_pow = theta::eta_series(qmax).pow(desc.eta_exp)?;
    let mut s = s.mul_pure_q(&eta_pow);
    if desc.sign < 0 {
        s = s.neg();
    }
    Ok(s.truncated(qmax))
}

/// The index-raising operator at level `m` on a lattice-index form: with
/// `l = e / 2` the output coefficient at `(n, l)` is the sum over
/// `d | gcd(n, l, m)` of `d^(k-1) c(n m / d^2, l / d)`.
///
/// The input must hold all integer rows up to its window W; the output is
/// exact on rows up to floor(W / m).  The index Gram matrix scales by m.
pub fn lattice_hecke_minus(
    series: &MultiFourierSeries,
    weight: HalfInt,
    m: i64,
) -> Result<MultiFourierSeries, JacobiError> {
    assert!(m >= 1, "operator level must be positive");
    let k = weight
        .as_integer()
        .ok_or(JacobiError::NeedIntegralWeight(weight))?;
    let in_window = series.qmax().div_euclid(24);
    let out_window = in_window.div_euclid(m);
    let mut out = MultiFourierSeries::zero(series.rank(), 24 * out_window);
    for (q1, slice) in series.iter() {
        if q1 % 24 != 0 {
            return Err(JacobiError::Unsupported(
                "index-raising needs integer q-orders".into(),
            ));
        }
        let n1 = q1 / 24;
        for d in divisors(m) {
            if (n1 * d * d) % m != 0 {
                continue;
            }
            let n = n1 * d * d / m;
            if n > out_window || n % d != 0 {
                continue;
            }
            let scale = int_pow(d, k - 1);
            for (e, c1) in slice {
                let e_out: Vec<i64> = e.iter().map(|x| x * d).collect();
                out.add_term(24 * n, e_out, &(c1 * &scale));
            }
        }
    }
    Ok(out)
}

/// The weight-zero quotient `-(Theta | T_-(2)) / Theta` of a lattice
/// block, exact to q-order `n_order`.  The division runs factor by factor
/// (each odd theta factor has an antisymmetric leading pair), so no
/// support bound on the quotient is needed.
pub fn lattice_psi(
    desc: &LatticeBlockDescriptor,
    n_order: i64,
) -> Result<MultiFourierSeries, JacobiError> {
    let theta_series = lattice_theta_expand(desc, 2 * (n_order + 1))?;
    let t2 = lattice_hecke_minus(&theta_series, desc.weight(), 2)?;
    let mut s = t2;
    for c in desc.forms.iter() {
        let den = theta_factor(c, theta_series.qmax());
        s = s.div_exact_antisym(&den)?;
    }
    let eta_pow = theta::eta_series(theta_series.qmax()).pow(-desc.eta_exp)?;
    let mut s = s.mul_pure_q(&eta_pow).neg();
    if desc.sign < 0 {
        // The factor product reconstructs the block only up to its sign,
        // and the sign appears once in the numerator and once in the
        // denominator of the quotient; restore the leftover flip.
        s = s.neg();
    }
    Ok(s.truncated(24 * n_order))
}

/// The q^0 slice of the weight-zero quotient, as a map from exponent
/// vectors to coefficients.  For the rank-4 root block this is the
/// constant 4 plus one unit term at +-2c for each of the ten pairing
/// vectors c.
pub fn lattice_psi_q0(
    desc: &LatticeBlockDescriptor,
) -> Result<std::collections::BTreeMap<Vec<i64>, Coeff>, JacobiError> {
    Ok(lattice_psi(desc, 0)?.q_slice(0))
}
