//! The singular part of a weight-zero companion and the divisor it cuts.
//!
//! A coefficient `c(n, r)` is singular when its discriminant
//! `r^2 - 4 N n` is strictly positive; only those carry zeros of the
//! product expansion.  Folded into the fundamental domain
//! `0 <= r <= N`, singular coefficients form a finite set independent of
//! the expansion depth (beyond a small threshold).  The container also
//! keeps the full `q^0` row — its discriminant-zero part carries no
//! divisor but fixes the leading monomial of the product.  The divisor is a sum of surfaces indexed by pairs
//! (discriminant, class); multiplicities come from summing singular
//! coefficients along the ray through the pair.

use std::collections::BTreeMap;

use num::Zero;

use super::LiftError;
use crate::fourier::Coeff;
use crate::jacobi::JacobiFormSeries;

/// Singular coefficients of a companion, stored in the fundamental domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularPart {
    index: i64,
    window: i64,
    complete: bool,
    /// Keys `(n, r)` with `0 <= r <= index` and nonzero value: the whole
    /// `q^0` row, and the rows `n >= 1` where `r^2 > 4 N n`.
    terms: BTreeMap<(i64, i64), Coeff>,
}

impl SingularPart {
    /// Collects the positive-discriminant coefficients of `psi`.
    ///
    /// Every singular coefficient has a representative with
    /// `0 <= r <= N` and then `n <= r^2 / 4N <= N/4`, so a window of
    /// `(N + 3) / 4` rows already sees all of them; `complete` records
    /// whether the given expansion is that deep.
    pub fn from_psi(psi: &JacobiFormSeries) -> Self {
        let index = psi.index;
        let window = psi.n_window();
        let mut terms = BTreeMap::new();
        for (&(q, z), c) in psi.series.iter() {
            debug_assert!(q % 24 == 0 && z % 2 == 0);
            let (n, r) = (q / 24, z / 2);
            if (0..=index).contains(&r) && (n == 0 || r * r > 4 * index * n) && !c.is_zero() {
                terms.insert((n, r), c.clone());
            }
        }
        SingularPart {
            index,
            window,
            complete: window >= (index + 3) / 4,
            terms,
        }
    }

    pub fn index(&self) -> i64 {
        self.index
    }

    pub fn window(&self) -> i64 {
        self.window
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn terms(&self) -> &BTreeMap<(i64, i64), Coeff> {
        &self.terms
    }

    /// The coefficient at positive discriminant `disc` and class
    /// `class mod 2N`.
    ///
    /// Folds the class into `0 <= r <= N` and solves
    /// `disc = r^2 - 4 N n` for the row; discriminants not congruent to a
    /// square of the class, or rows below zero, carry no coefficient.
    pub fn lookup(&self, disc: i64, class: i64) -> Coeff {
        debug_assert!(disc > 0);
        let two_n = 2 * self.index;
        let mut r = class.rem_euclid(two_n);
        if r > self.index {
            r = two_n - r;
        }
        let num = r * r - disc;
        if num < 0 || num % (4 * self.index) != 0 {
            return Coeff::zero();
        }
        let n = num / (4 * self.index);
        self.terms.get(&(n, r)).cloned().unwrap_or_else(Coeff::zero)
    }

    /// Multiplicity of the surface attached to the primitive triple
    /// `(n0, r0, m0)` with positive discriminant `r0^2 - 4 N n0 m0`.
    ///
    /// The multiplicity sums `lookup(a^2 D, a r0)` over `a >= 1`; terms
    /// with `a^2 D > N^2` vanish because their row representative would be
    /// negative, so the sum is finite and needs the complete singular
    /// part only.
    pub fn surface_multiplicity(&self, n0: i64, r0: i64, m0: i64) -> Result<Coeff, LiftError> {
        if !self.complete {
            return Err(LiftError::WindowExceeded {
                requested: (self.index + 3) / 4,
                available: self.window,
            });
        }
        let g = gcd(gcd(n0.abs(), r0.abs()), m0.abs());
        if g != 1 {
            return Err(LiftError::ImprimitiveSurface(g));
        }
        let disc = r0 * r0 - 4 * self.index * n0 * m0;
        if disc <= 0 {
            return Err(LiftError::NonPositiveDiscriminant(disc));
        }
        let mut total = Coeff::zero();
        let mut a = 1i64;
        while a * a * disc <= self.index * self.index {
            total += self.lookup(a * a * disc, a * r0);
            a += 1;
        }
        Ok(total)
    }

    /// All surfaces of positive multiplicity in normal form `m0 = 1`,
    /// as `(n0, r0, multiplicity)` sorted by `(n0, r0)`.
    ///
    /// Surfaces in the divisor of the product all arise this way: the
    /// triple can be transformed to have `m0 = 1`, `1 <= r0 <= N` and
    /// `0 <= n0`, and distinct such triples give distinct surfaces.
    pub fn divisor_entries(&self) -> Result<Vec<(i64, i64, Coeff)>, LiftError> {
        let mut out = Vec::new();
        for n0 in 0..=(self.index / 4) {
            for r0 in 1..=self.index {
                if r0 * r0 <= 4 * self.index * n0 {
                    continue;
                }
                let mult = self.surface_multiplicity(n0, r0, 1)?;
                if !mult.is_zero() {
                    out.push((n0, r0, mult));
                }
            }
        }
        Ok(out)
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

// ---------------------------------------------------------------------------
// tests
// ---------------------------------------------------------------------------
