//! Theta blocks attached to a lattice: a product of theta factors indexed
//! by linear forms in several elliptic variables, times a power of eta.
//!
//! Specializing all variables along one direction turns such a block into
//! a scalar theta block; restricting to a sublattice (and trading each
//! factor that dies for eta^3) is the quasi-pullback.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{GramLattice, LatticeError};
use crate::jacobi::{HalfInt, ThetaBlockDescriptor};

/// A lattice theta block: theta factors given by pairing vectors in the
/// basis of the index lattice, a net eta power, and a sign.
///
/// Form vectors are kept sign-canonical (first nonzero coordinate
/// positive); flips are folded into `sign`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeBlockDescriptor {
    pub eta_exp: i64,
    pub forms: Vec<Vec<i64>>,
    pub sign: i8,
    pub gram: Vec<Vec<i64>>,
}

impl LatticeBlockDescriptor {
    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn weight(&self) -> HalfInt {
        HalfInt(self.eta_exp + self.forms.len() as i64)
    }

    pub fn index_lattice(&self) -> Result<GramLattice, LatticeError> {
        GramLattice::new(self.gram.clone())
    }

    /// Multiset of forms with multiplicities, for structural comparisons.
    pub fn form_multiset(&self) -> BTreeMap<Vec<i64>, u32> {
        let mut m = BTreeMap::new();
        for f in self.forms.iter() {
            *m.entry(f.clone()).or_insert(0) += 1;
        }
        m
    }
}

fn canonical_form(mut c: Vec<i64>, sign: &mut i8) -> Option<Vec<i64>> {
    match c.iter().find(|&&v| v != 0) {
        None => None,
        Some(&first) => {
            if first < 0 {
                for v in c.iter_mut() {
                    *v = -*v;
                }
                *sign = -*sign;
            }
            Some(c)
        }
    }
}

/// The block whose ten theta factors are the positive-root pairing vectors
/// of the rank-4 lattice, over eta^6.  Its specializations along integer
/// directions are exactly the four-parameter scalar blocks.
pub fn a4_weyl_block() -> LatticeBlockDescriptor {
    LatticeBlockDescriptor {
        eta_exp: -6,
        forms: super::a4::positive_root_forms()
            .iter()
            .map(|c| c.to_vec())
            .collect(),
        sign: 1,
        gram: super::a4::gram5().iter().map(|r| r.to_vec()).collect(),
    }
}

/// Specializes all elliptic variables along the direction `a`, producing
/// the scalar block whose theta arguments are the pairings `form . a`.
pub fn specialize_block(
    desc: &LatticeBlockDescriptor,
    a: &[i64],
) -> ThetaBlockDescriptor {
    assert_eq!(a.len(), desc.rank(), "direction of wrong rank");
    let mut theta_exps: BTreeMap<i64, u32> = BTreeMap::new();
    let mut sign = desc.sign;
    let mut vanishes = false;
    for c in desc.forms.iter() {
        let arg: i64 = c.iter().zip(a).map(|(x, y)| x * y).sum();
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
        eta_exp: desc.eta_exp,
        theta_exps,
        sign,
        vanishes,
    }
}

/// Greatest common divisor of all maximal minors of a k' x k integer
/// matrix (rows = sublattice basis in the ambient basis); the embedding is
/// primitive exactly when this is 1.
fn maximal_minor_gcd(rows: &[Vec<i64>]) -> i64 {
    let k_sub = rows.len();
    let k = rows[0].len();
    let mut cols: Vec<usize> = (0..k_sub).collect();
    let mut g = 0i64;
    loop {
        let m: Vec<Vec<i64>> = rows
            .iter()
            .map(|r| cols.iter().map(|&c| r[c]).collect())
            .collect();
        g = gcd(g, det_small(&m));
        // Next combination of columns in lexicographic order.
        let mut i = k_sub;
        loop {
            if i == 0 {
                return g.abs();
            }
            i -= 1;
            if cols[i] + (k_sub - i) < k {
                cols[i] += 1;
                for j in i + 1..k_sub {
                    cols[j] = cols[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Determinant of a small integer matrix by cofactor expansion (ranks
/// here are at most 4).
fn det_small(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 1 {
        return m[0][0];
    }
    let mut acc = 0i64;
    for j in 0..n {
        if m[0][j] == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> = (1..n)
            .map(|r| {
                (0..n)
                    .filter(|&c| c != j)
                    .map(|c| m[r][c])
                    .collect()
            })
            .collect();
        let s = if j % 2 == 0 { 1 } else { -1 };
        acc += s * m[0][j] * det_small(&minor);
    }
    acc
}

/// Quasi-pullback of a lattice block to the sublattice spanned by the
/// given rows (coordinates in the ambient basis).
///
/// Each form restricts by the matrix action; forms that restrict to zero
/// are dropped and traded for eta^3 apiece.  The sublattice must be
/// primitively embedded, or the resulting index data would be wrong.
pub fn quasi_pullback(
    desc: &LatticeBlockDescriptor,
    rows: &[Vec<i64>],
) -> Result<LatticeBlockDescriptor, LatticeError> {
    let k = desc.rank();
    let k_sub = rows.len();
    if k_sub == 0 || k_sub > k || rows.iter().any(|r| r.len() != k) {
        return Err(LatticeError::BadShape);
    }
    let minor_gcd = maximal_minor_gcd(rows);
    if minor_gcd != 1 {
        return Err(LatticeError::NotPrimitive(minor_gcd));
    }
    // Sub-Gram: U G U^T.
    let mut sub_gram = vec![vec![0i64; k_sub]; k_sub];
    for i in 0..k_sub {
        for j in 0..k_sub {
            let mut acc = 0i64;
            for p in 0..k {
                for q in 0..k {
                    acc += rows[i][p] * desc.gram[p][q] * rows[j][q];
                }
            }
            sub_gram[i][j] = acc;
        }
    }
    let mut sign = desc.sign;
    let mut forms = Vec::new();
    let mut removed = 0i64;
    for c in desc.forms.iter() {
        let restricted: Vec<i64> = rows
            .iter()
            .map(|u| u.iter().zip(c).map(|(x, y)| x * y).sum())
            .collect();
        match canonical_form(restricted, &mut sign) {
            None => removed += 1,
            Some(f) => forms.push(f),
        }
    }
    Ok(LatticeBlockDescriptor {
        eta_exp: desc.eta_exp + 3 * removed,
        forms,
        sign,
        gram: sub_gram,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jacobi::block_from_a;

    fn unit_rows(idx: &[usize]) -> Vec<Vec<i64>> {
        idx.iter()
            .map(|&i| {
                let mut r = vec![0i64; 4];
                r[i] = 1;
                r
            })
            .collect()
    }

    #[test]
    fn weyl_block_shape() {
        let b = a4_weyl_block();
        assert_eq!(b.weight(), HalfInt::from_integer(2));
        assert_eq!(b.forms.len(), 10);
        assert_eq!(b.eta_exp, -6);
        b.index_lattice().unwrap();
    }

    #[test]
    fn specialization_matches_scalar_descriptor() {
        let b = a4_weyl_block();
        for a in [
            [1i64, 1, 1, 1],
            [1, 1, 1, 2],
            [-1, 5, -1, -2],
            [2, -1, -3, 6],
            [1, -6, 3, 1],
            [0, 2, -1, 4],
        ] {
            assert_eq!(specialize_block(&b, &a), block_from_a(a), "{a:?}");
        }
    }

    #[test]
    fn pullback_to_first_three_coordinates() {
        let b = a4_weyl_block();
        let sub = quasi_pullback(&b, &unit_rows(&[0, 1, 2])).unwrap();
        assert_eq!(sub.forms.len(), 9);
        assert_eq!(sub.eta_exp, -3);
        assert_eq!(sub.weight(), HalfInt::from_integer(3));
        assert_eq!(
            sub.gram,
            vec![vec![4, 3, 2], vec![3, 6, 4], vec![2, 4, 6]]
        );
        let det = sub.index_lattice().unwrap().det();
        assert_eq!(det, num::BigRational::from_integer(50.into()));
    }

    #[test]
    fn pullback_to_outer_pair() {
        let b = a4_weyl_block();
        let sub = quasi_pullback(&b, &unit_rows(&[0, 2])).unwrap();
        assert_eq!(sub.forms.len(), 8);
        assert_eq!(sub.eta_exp, 0);
        assert_eq!(sub.weight(), HalfInt::from_integer(4));
        assert_eq!(sub.gram, vec![vec![4, 2], vec![2, 6]]);
        let counts = sub.form_multiset();
        assert_eq!(counts[&vec![1, 0]], 2);
        assert_eq!(counts[&vec![0, 1]], 4);
        assert_eq!(counts[&vec![1, 1]], 2);
    }

    #[test]
    fn pullback_along_cartan_rows() {
        let b = a4_weyl_block();
        let rows: Vec<Vec<i64>> = super::super::a4::cartan()[..3]
            .iter()
            .map(|r| r.to_vec())
            .collect();
        let sub = quasi_pullback(&b, &rows).unwrap();
        // No form is orthogonal to this sublattice, so all ten survive.
        assert_eq!(sub.forms.len(), 10);
        assert_eq!(sub.eta_exp, -6);
        assert_eq!(sub.weight(), HalfInt::from_integer(2));
        assert_eq!(
            sub.gram,
            vec![vec![10, -5, 0], vec![-5, 10, -5], vec![0, -5, 10]]
        );
        assert!(sub.forms.contains(&vec![2, -1, 0]));
        assert!(sub.forms.contains(&vec![1, 1, -1]));
    }

    #[test]
    fn imprimitive_sublattice_is_rejected() {
        let b = a4_weyl_block();
        let rows = vec![vec![2, 0, 0, 0], vec![0, 2, 0, 0]];
        assert!(matches!(
            quasi_pullback(&b, &rows),
            Err(LatticeError::NotPrimitive(4))
        ));
    }
}
