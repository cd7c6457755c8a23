//! Exact integral-lattice computations: Gram matrices, discriminant
//! groups, and minimal-norm data for discriminant classes.
//!
//! Everything is exact: determinants and dual Gram matrices are rational,
//! class representatives are integer vectors, and minimal norms are found
//! by a rational closest-vector enumeration with no floating point in any
//! decision.

pub mod a4;
pub mod block;
pub mod expand;

use std::collections::BTreeMap;

use num::{BigRational, One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::fourier::Coeff;

/// Errors from lattice computations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("Gram matrix is not square or is empty")]
    BadShape,
    #[error("Gram matrix is not symmetric")]
    NotSymmetric,
    #[error("Gram matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("Gram matrix is not even (odd diagonal entry)")]
    NotEven,
    #[error("enumeration exceeded the candidate cap, form too large")]
    EnumerationCap,
    #[error("sublattice basis is not primitive (maximal-minor gcd {0})")]
    NotPrimitive(i64),
    #[error("unknown lattice name: {0}")]
    UnknownName(String),
}

fn rat(n: i64) -> Coeff {
    BigRational::from_integer(n.into())
}

/// A positive-definite even lattice given by the Gram matrix of a basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramLattice {
    gram: Vec<Vec<i64>>,
}

impl GramLattice {
    /// Validates shape, symmetry, evenness, and positive definiteness.
    pub fn new(gram: Vec<Vec<i64>>) -> Result<Self, LatticeError> {
        let k = gram.len();
        if k == 0 || gram.iter().any(|row| row.len() != k) {
            return Err(LatticeError::BadShape);
        }
        for i in 0..k {
            for j in 0..k {
                if gram[i][j] != gram[j][i] {
                    return Err(LatticeError::NotSymmetric);
                }
            }
            if gram[i][i] % 2 != 0 {
                return Err(LatticeError::NotEven);
            }
        }
        let l = GramLattice { gram };
        // Positive definiteness: all leading principal minors positive.
        for m in 1..=k {
            if l.minor_det(m) <= BigRational::zero() {
                return Err(LatticeError::NotPositiveDefinite);
            }
        }
        Ok(l)
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &Vec<Vec<i64>> {
        &self.gram
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.gram[i][j]
    }

    fn minor_det(&self, m: usize) -> Coeff {
        let a: Vec<Vec<Coeff>> = (0..m)
            .map(|i| (0..m).map(|j| rat(self.gram[i][j])).collect())
            .collect();
        det_rational(a)
    }

    /// Determinant of the Gram matrix (order of the discriminant group).
    pub fn det(&self) -> Coeff {
        self.minor_det(self.rank())
    }

    /// Inverse Gram matrix: the Gram matrix of the dual basis.
    pub fn dual_gram(&self) -> Vec<Vec<Coeff>> {
        let k = self.rank();
        // Gauss-Jordan on [G | I].
        let mut a: Vec<Vec<Coeff>> = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| rat(self.gram[i][j]))
                    .chain((0..k).map(|j| if i == j { rat(1) } else { rat(0) }))
                    .collect()
            })
            .collect();
        for col in 0..k {
            let pivot = (col..k)
                .find(|&r| !a[r][col].is_zero())
                .expect("nonsingular by construction");
            a.swap(col, pivot);
            let p = a[col][col].clone();
            for x in a[col].iter_mut() {
                *x /= &p;
            }
            for r in 0..k {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for c in 0..2 * k {
                        let sub = &a[col][c] * &f;
                        a[r][c] -= sub;
                    }
                }
            }
        }
        a.into_iter().map(|row| row[k..].to_vec()).collect()
    }

    /// Norm (x, x) of a dual vector given by its coordinates in the dual
    /// basis: c^T G^{-1} c.
    pub fn dual_norm(&self, c: &[i64]) -> Coeff {
        let inv = self.dual_gram();
        quadratic_value(&inv, c)
    }

    /// A triangular column basis of the sublattice spanned by the columns
    /// of the Gram matrix, used to reduce discriminant-class coordinates.
    /// Column i has zeros above the diagonal and a positive diagonal.
    fn triangular_column_basis(&self) -> Vec<Vec<i64>> {
        let k = self.rank();
        // cols[j] is a column vector.
        let mut cols: Vec<Vec<i64>> = (0..k)
            .map(|j| (0..k).map(|i| self.gram[i][j]).collect())
            .collect();
        for i in 0..k {
            // Clear row i of all columns j > i by gcd steps.
            loop {
                let mut nz: Vec<usize> =
                    (i..k).filter(|&j| cols[j][i] != 0).collect();
                if nz.is_empty() {
                    unreachable!("Gram matrix is nonsingular");
                }
                nz.sort_by_key(|&j| cols[j][i].abs());
                let jmin = nz[0];
                cols.swap(i, jmin.max(i));
                if nz.len() == 1 {
                    break;
                }
                for j in i + 1..k {
                    if cols[j][i] != 0 {
                        let q = cols[j][i].div_euclid(cols[i][i]);
                        for r in 0..k {
                            cols[j][r] -= q * cols[i][r];
                        }
                    }
                }
                if (i + 1..k).all(|j| cols[j][i] == 0) {
                    break;
                }
            }
            if cols[i][i] < 0 {
                for r in 0..k {
                    cols[i][r] = -cols[i][r];
                }
            }
        }
        cols
    }

    /// Reduces dual-basis coordinates to the canonical representative of
    /// their discriminant class (the unique one in the fundamental box of
    /// the triangular basis).
    pub fn reduce_class(&self, c: &[i64]) -> Vec<i64> {
        let basis = self.triangular_column_basis();
        let mut x: Vec<i64> = c.to_vec();
        for i in 0..self.rank() {
            let q = x[i].div_euclid(basis[i][i]);
            for r in 0..self.rank() {
                x[r] -= q * basis[i][r];
            }
        }
        x
    }

    /// All discriminant-class representatives, in the canonical box.
    pub fn class_representatives(&self) -> Vec<Vec<i64>> {
        let basis = self.triangular_column_basis();
        let bounds: Vec<i64> = (0..self.rank()).map(|i| basis[i][i]).collect();
        let mut reps: Vec<Vec<i64>> = vec![vec![]];
        for &b in bounds.iter() {
            let mut next = Vec::with_capacity(reps.len() * b as usize);
            for rep in reps.iter() {
                for v in 0..b {
                    let mut r = rep.clone();
                    r.push(v);
                    next.push(r);
                }
            }
            reps = next;
        }
        // The box enumerates coordinates in basis order, but reduction can
        // still move a raw box point; normalize each through reduce_class
        // for safety (a no-op for genuinely triangular bases).
        reps.into_iter().map(|r| self.reduce_class(&r)).collect()
    }

    /// Minimal norm over a discriminant class `c + G Z^k`, together with
    /// the number of dual vectors attaining it.
    pub fn class_minimum(&self, c: &[i64]) -> Result<(Coeff, u64), LatticeError> {
        // Minimize (c + G y)^T G^{-1} (c + G y) = (y + t)^T G (y + t)
        // over integer y, with t = G^{-1} c.
        let inv = self.dual_gram();
        let k = self.rank();
        let t: Vec<Coeff> = (0..k)
            .map(|i| (0..k).map(|j| &inv[i][j] * rat(c[j])).sum())
            .collect();
        let (d, u) = ldl(&self.gram);
        let mut state = CvpState {
            gram: self,
            d,
            u,
            t,
            best: None,
            count: 0,
            visited: 0,
        };
        // Initial bound: the value at the componentwise rounding of -t.
        let y0: Vec<i64> = state.t.iter().map(|ti| round_rational(&-ti)).collect();
        let f0 = {
            let x: Vec<Coeff> = (0..k).map(|i| rat(y0[i]) + &state.t[i]).collect();
            quadratic_value_rat(&self.gram, &x)
        };
        state.best = Some(f0);
        state.count = 0;
        let mut x = vec![BigRational::zero(); k];
        state.descend(k, &mut x, BigRational::zero())?;
        let best = state.best.expect("at least the seed candidate");
        Ok((best, state.count))
    }

    /// Full discriminant-class survey: minimal norm and minimal-vector
    /// count for every class, grouped into a histogram.
    pub fn discriminant_classes(&self) -> Result<DualClassReport, LatticeError> {
        let mut classes = Vec::new();
        let mut histogram: BTreeMap<(Coeff, u64), u64> = BTreeMap::new();
        for rep in self.class_representatives() {
            let (norm, count) = self.class_minimum(&rep)?;
            *histogram.entry((norm.clone(), count)).or_insert(0) += 1;
            classes.push(ClassInfo {
                rep,
                min_norm: norm.to_string(),
                min_count: count,
            });
        }
        let two = rat(2);
        let norm2 = classes_norm_ok(&histogram, &two);
        let report = DualClassReport {
            rank: self.rank(),
            det: self.det().to_string(),
            class_count: classes.len() as u64,
            histogram: histogram
                .into_iter()
                .map(|((norm, mc), cc)| HistogramRow {
                    min_norm: norm.to_string(),
                    classes: cc,
                    min_vectors: mc,
                })
                .collect(),
            norm2_ok: norm2,
            classes,
        };
        Ok(report)
    }
}

fn classes_norm_ok(histogram: &BTreeMap<(Coeff, u64), u64>, bound: &Coeff) -> bool {
    histogram.keys().all(|(norm, _)| norm <= bound)
}

/// Minimal-norm data for one discriminant class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassInfo {
    pub rep: Vec<i64>,
    pub min_norm: String,
    pub min_count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistogramRow {
    pub min_norm: String,
    pub classes: u64,
    pub min_vectors: u64,
}

/// Survey of all discriminant classes of a lattice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualClassReport {
    pub rank: usize,
    pub det: String,
    pub class_count: u64,
    pub histogram: Vec<HistogramRow>,
    /// True when every class has a representative of norm at most 2.
    pub norm2_ok: bool,
    pub classes: Vec<ClassInfo>,
}

// ----------------------------------------------------------------------
// exact linear algebra helpers

fn det_rational(mut a: Vec<Vec<Coeff>>) -> Coeff {
    let k = a.len();
    let mut det = BigRational::one();
    for col in 0..k {
        let Some(pivot) = (col..k).find(|&r| !a[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if pivot != col {
            a.swap(col, pivot);
            det = -det;
        }
        det *= &a[col][col];
        let p = a[col][col].clone();
        for r in col + 1..k {
            if !a[r][col].is_zero() {
                let f = &a[r][col] / &p;
                for c in col..k {
                    let sub = &a[col][c] * &f;
                    a[r][c] -= sub;
                }
            }
        }
    }
    det
}

fn quadratic_value(m: &[Vec<Coeff>], x: &[i64]) -> Coeff {
    let mut acc = BigRational::zero();
    for (i, row) in m.iter().enumerate() {
        for (j, mij) in row.iter().enumerate() {
            acc += mij * rat(x[i]) * rat(x[j]);
        }
    }
    acc
}

fn quadratic_value_rat(g: &[Vec<i64>], x: &[Coeff]) -> Coeff {
    let mut acc = BigRational::zero();
    for i in 0..g.len() {
        for j in 0..g.len() {
            acc += rat(g[i][j]) * &x[i] * &x[j];
        }
    }
    acc
}

/// LDL decomposition of a positive-definite integer matrix:
/// x^T G x = sum over i of d[i] * (x_i + sum over j > i of u[i][j] x_j)^2.
fn ldl(g: &[Vec<i64>]) -> (Vec<Coeff>, Vec<Vec<Coeff>>) {
    let k = g.len();
    let mut a: Vec<Vec<Coeff>> = (0..k)
        .map(|i| (0..k).map(|j| rat(g[i][j])).collect())
        .collect();
    let mut d = vec![BigRational::zero(); k];
    let mut u = vec![vec![BigRational::zero(); k]; k];
    for i in 0..k {
        d[i] = a[i][i].clone();
        for j in i + 1..k {
            u[i][j] = &a[i][j] / &d[i];
        }
        for r in i + 1..k {
            for c in i + 1..k {
                let sub = &u[i][r] * &a[i][c];
                a[r][c] -= sub;
            }
        }
    }
    (d, u)
}

fn round_rational(x: &Coeff) -> i64 {
    // Nearest integer (ties toward floor), exactly.
    let fl = x.floor().to_integer();
    let frac = x - BigRational::from_integer(fl.clone());
    let fl_i64 = fl.to_i64().expect("class coordinates are small");
    if frac > BigRational::new(1.into(), 2.into()) {
        fl_i64 + 1
    } else {
        fl_i64
    }
}

struct CvpState<'a> {
    gram: &'a GramLattice,
    d: Vec<Coeff>,
    u: Vec<Vec<Coeff>>,
    t: Vec<Coeff>,
    best: Option<Coeff>,
    count: u64,
    visited: u64,
}

const CVP_CAP: u64 = 20_000_000;

impl CvpState<'_> {
    /// Depth-first enumeration over levels k-1 .. 0; `x` holds the fixed
    /// values x_j = y_j + t_j for j >= level.
    fn descend(
        &mut self,
        level: usize,
        x: &mut Vec<Coeff>,
        partial: BigRational,
    ) -> Result<(), LatticeError> {
        self.visited += 1;
        if self.visited > CVP_CAP {
            return Err(LatticeError::EnumerationCap);
        }
        if level == 0 {
            let best = self.best.as_ref().expect("seeded");
            if &partial < best {
                self.best = Some(partial);
                self.count = 1;
            } else if &partial == best {
                self.count += 1;
            }
            return Ok(());
        }
        let i = level - 1;
        let k = self.gram.rank();
        // Center of the level-i square: x_i = y_i + t_i + sum u[i][j] x_j.
        let mut offset = self.t[i].clone();
        for j in i + 1..k {
            offset += &self.u[i][j] * &x[j];
        }
        let y_center = round_rational(&-&offset);
        for direction in [1i64, -1] {
            let mut y = if direction == 1 { y_center } else { y_center - 1 };
            loop {
                // Distance contribution of this level uses the completed
                // square; recursion below needs the plain coordinate.
                let xi = rat(y) + &offset;
                let term = &self.d[i] * &xi * &xi;
                let total = &partial + &term;
                let best = self.best.as_ref().expect("seeded");
                if &total > best {
                    break;
                }
                x[i] = rat(y) + &self.t[i];
                self.descend(i, x, total)?;
                y += direction;
            }
        }
        Ok(())
    }
}

/// Registry of the named Gram matrices used by the command-line tool and
/// the tests: the rank-4 root lattice, its rescaled dual, the rescaled
/// rank-3 root lattice, a rescaled pair of orthogonal vectors, the two
/// sublattice Gram matrices arising from pullbacks, and the rank-1
/// lattice of norm 14 (whose discriminant group fails the norm-2
/// condition, unlike all the others).
pub fn named_lattice(name: &str) -> Result<GramLattice, LatticeError> {
    let gram: Vec<Vec<i64>> = match name {
        "A4" => vec![
            vec![2, -1, 0, 0],
            vec![-1, 2, -1, 0],
            vec![0, -1, 2, -1],
            vec![0, 0, -1, 2],
        ],
        "A4v5" => a4::gram5().iter().map(|r| r.to_vec()).collect(),
        "A3_5" => vec![vec![10, -5, 0], vec![-5, 10, -5], vec![0, -5, 10]],
        "2A1_5" => vec![vec![10, 0], vec![0, 10]],
        "A0" => vec![vec![4, 3, 2], vec![3, 6, 4], vec![2, 4, 6]],
        "B0" => vec![vec![4, 2], vec![2, 6]],
        "A1_7" => vec![vec![14]],
        other => return Err(LatticeError::UnknownName(other.to_string())),
    };
    GramLattice::new(gram)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_gram_matrices() {
        assert!(matches!(
            GramLattice::new(vec![vec![2, 1], vec![0, 2]]),
            Err(LatticeError::NotSymmetric)
        ));
        assert!(matches!(
            GramLattice::new(vec![vec![1]]),
            Err(LatticeError::NotEven)
        ));
        assert!(matches!(
            GramLattice::new(vec![vec![2, 3], vec![3, 2]]),
            Err(LatticeError::NotPositiveDefinite)
        ));
    }

    #[test]
    fn det_and_dual_of_rank_one() {
        let l = GramLattice::new(vec![vec![14]]).unwrap();
        assert_eq!(l.det(), rat(14));
        assert_eq!(l.dual_gram()[0][0], BigRational::new(1.into(), 14.into()));
        assert_eq!(l.dual_norm(&[3]), BigRational::new(9.into(), 14.into()));
    }

    #[test]
    fn rank_one_class_minima() {
        let l = GramLattice::new(vec![vec![14]]).unwrap();
        let reps = l.class_representatives();
        assert_eq!(reps.len(), 14);
        // Class 5: minimum of (5 + 14y)^2 / 14 is 25/14 at y = 0.
        let (norm, count) = l.class_minimum(&[5]).unwrap();
        assert_eq!(norm, BigRational::new(25.into(), 14.into()));
        assert_eq!(count, 1);
        // Class 7: (+-7)^2 / 14 = 7/2, attained twice.
        let (norm, count) = l.class_minimum(&[7]).unwrap();
        assert_eq!(norm, BigRational::new(7.into(), 2.into()));
        assert_eq!(count, 2);
    }

    #[test]
    fn rank_one_norm_two_fails_at_fourteen() {
        let l = GramLattice::new(vec![vec![14]]).unwrap();
        let report = l.discriminant_classes().unwrap();
        assert!(!report.norm2_ok);
        let ok: u64 = report
            .histogram
            .iter()
            .filter(|row| {
                row.min_norm.parse::<BigRational>().map_or(false, |n| n <= rat(2))
            })
            .map(|row| row.classes)
            .sum();
        assert_eq!(ok, 11);
    }

    #[test]
    fn root_lattice_classes() {
        let l = named_lattice("A4").unwrap();
        assert_eq!(l.det(), rat(5));
        let report = l.discriminant_classes().unwrap();
        assert_eq!(report.class_count, 5);
        assert!(report.norm2_ok);
        // Nonzero classes have minima 4/5 (weights) and 6/5, two each.
        let norms: Vec<(String, u64)> = report
            .histogram
            .iter()
            .map(|r| (r.min_norm.clone(), r.classes))
            .collect();
        assert_eq!(
            norms,
            vec![
                ("0".to_string(), 1),
                ("4/5".to_string(), 2),
                ("6/5".to_string(), 2)
            ]
        );
    }

    #[test]
    fn class_reduction_is_stable() {
        let l = named_lattice("A4v5").unwrap();
        for rep in l.class_representatives() {
            assert_eq!(l.reduce_class(&rep), rep);
            // Shifting by Gram columns must not change the class.
            let mut shifted = rep.clone();
            for r in 0..4 {
                shifted[r] += l.entry(r, 2) - 3 * l.entry(r, 0);
            }
            assert_eq!(l.reduce_class(&shifted), rep);
        }
    }
}
