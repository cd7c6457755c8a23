//! The rank-4 root lattice behind the four-parameter blocks.
//!
//! Fixed data: the Cartan matrix, the Gram matrix `G5 = 5 * Cartan^{-1}`
//! of the rescaled dual lattice, the ten positive-root pairing vectors
//! (interval indicator vectors, so that specializing along `(a1..a4)`
//! reproduces the ten scalar theta arguments), and the symmetric-group
//! action on discriminant classes through the 5-coordinate realization
//! `alpha_i = e_i - e_{i+1}`.

use std::collections::{BTreeMap, BTreeSet};


use super::{named_lattice, LatticeError};
use crate::fourier::Coeff;

pub fn cartan() -> [[i64; 4]; 4] {
    [
        [2, -1, 0, 0],
        [-1, 2, -1, 0],
        [0, -1, 2, -1],
        [0, 0, -1, 2],
    ]
}

/// Gram matrix of the rescaled dual lattice: entry (i, j) = (i+1)(4-j) for
/// i <= j, which is five times the inverse Cartan matrix.
pub fn gram5() -> [[i64; 4]; 4] {
    let mut g = [[0i64; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
            g[i][j] = (lo as i64 + 1) * (4 - hi as i64);
        }
    }
    g
}

/// Pairing vectors of the ten positive roots with the standard basis, in
/// the coordinates used by the multivariate expansions: the indicator
/// vector of a consecutive interval.  The order matches the scalar ten
/// argument order: four singletons, three pairs, two triples, the full
/// interval.
pub fn positive_root_forms() -> Vec<[i64; 4]> {
    let mut forms = Vec::with_capacity(10);
    for len in 1..=4usize {
        for start in 0..=(4 - len) {
            let mut c = [0i64; 4];
            for k in start..start + len {
                c[k] = 1;
            }
            forms.push(c);
        }
    }
    forms
}

/// Index of the block specialized along `a`: half of a^T G5 a.
pub fn block_index(a: [i64; 4]) -> i64 {
    let g = gram5();
    let mut twice = 0i64;
    for i in 0..4 {
        for j in 0..4 {
            twice += a[i] * g[i][j] * a[j];
        }
    }
    assert!(twice % 2 == 0);
    twice / 2
}

/// Root-basis coordinates to the sum-zero 5-coordinate realization.
pub fn alpha_to_five(m: &[i64]) -> [i64; 5] {
    assert_eq!(m.len(), 4);
    [m[0], m[1] - m[0], m[2] - m[1], m[3] - m[2], -m[3]]
}

/// Inverse of [`alpha_to_five`]; the input must sum to zero.
pub fn five_to_alpha(x: &[i64; 5]) -> [i64; 4] {
    assert_eq!(x.iter().sum::<i64>(), 0, "not in the sum-zero hyperplane");
    let mut m = [0i64; 4];
    let mut acc = 0;
    for i in 0..4 {
        acc += x[i];
        m[i] = acc;
    }
    m
}

/// Applies a permutation of the five coordinates to a vector in root-basis
/// coordinates.
pub fn permute_alpha(perm: &[usize; 5], m: &[i64]) -> [i64; 4] {
    let x = alpha_to_five(m);
    let mut y = [0i64; 5];
    for i in 0..5 {
        y[i] = x[perm[i]];
    }
    five_to_alpha(&y)
}

/// All 120 permutations of {0..4}, generated by Heap's algorithm in a
/// deterministic order.
pub fn permutations5() -> Vec<[usize; 5]> {
    let mut out = Vec::with_capacity(120);
    let mut a = [0usize, 1, 2, 3, 4];
    fn heap(k: usize, a: &mut [usize; 5], out: &mut Vec<[usize; 5]>) {
        if k == 1 {
            out.push(*a);
            return;
        }
        for i in 0..k {
            heap(k - 1, a, out);
            if k % 2 == 0 {
                a.swap(i, k - 1);
            } else {
                a.swap(0, k - 1);
            }
        }
    }
    heap(5, &mut a, &mut out);
    out
}

/// Checks that the coordinate permutations together with negation act
/// transitively on the discriminant classes of each minimal-norm level of
/// the rescaled dual lattice.
pub fn weyl_orbit_transitivity() -> Result<bool, LatticeError> {
    let l = named_lattice("A4v5")?;
    let mut by_norm: BTreeMap<Coeff, BTreeSet<Vec<i64>>> = BTreeMap::new();
    for rep in l.class_representatives() {
        let (norm, _) = l.class_minimum(&rep)?;
        by_norm.entry(norm).or_default().insert(rep);
    }
    let perms = permutations5();
    for group in by_norm.values() {
        let seed = group.iter().next().expect("nonempty level");
        let mut orbit: BTreeSet<Vec<i64>> = BTreeSet::new();
        for p in perms.iter() {
            let image = permute_alpha(p, seed);
            for sgn in [1i64, -1] {
                let v: Vec<i64> = image.iter().map(|&c| sgn * c).collect();
                orbit.insert(l.reduce_class(&v));
            }
        }
        if &orbit != group {
            return Ok(false);
        }
    }
    Ok(true)
}
