//! Coefficient relations forced by a surface in the divisor.
//!
//! When the surface attached to `(alpha, beta, 1)` lies in the divisor of
//! a weight-two lift, the lift's coefficients satisfy one linear relation
//! per lattice point `(n, r)`:
//!
//! ```text
//! R(n, r) = sum over a of c(alpha a^2 + n a, beta a + r) = 0,
//! ```
//!
//! with `c` the block's coefficients.  A summand survives only when its
//! discriminant `E(a) = D a^2 - P a + r^2` is nonpositive, where
//! `D = beta^2 - 4 N alpha` and `P = 4 N n - 2 beta r`.  For `D > 0` the
//! support is a finite integer interval around the vertex of `E` and the
//! scan is exact.  For `D < 0` the support is infinite; the scan then
//! keeps the summands whose reduced row stays inside the strip depth,
//! which bounds `E` from below, and reports the result as truncated.
//! Such scans serve as negative controls: relations that hold for no
//! structural reason should fail visibly.

use serde::Serialize;

use super::LiftError;
use crate::jacobi::strip::ThetaStrip;

/// One nonzero relation value found by a scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationHit {
    pub n: i64,
    pub r: i64,
    pub value: String,
}

/// Result of scanning `R(n, r)` over a rectangle of lattice points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationScan {
    pub index: i64,
    pub alpha: i64,
    pub beta: i64,
    /// `beta^2 - 4 N alpha`; positive means the scan was exact.
    pub disc: i64,
    pub n_range: (i64, i64),
    pub r_range: (i64, i64),
    pub depth: i64,
    pub truncated: bool,
    /// Number of `(n, r)` pairs evaluated.
    pub checked: u64,
    pub nonzero: Vec<RelationHit>,
}

impl RelationScan {
    pub fn all_zero(&self) -> bool {
        self.nonzero.is_empty()
    }
}

/// Folds `(n, r)` into the strip's fundamental domain `-N < r <= N`.
fn reduce(index: i64, n: i64, r: i64) -> (i64, i64) {
    let mut rc = r.rem_euclid(2 * index);
    if rc > index {
        rc -= 2 * index;
    }
    (n + (rc * rc - r * r) / (4 * index), rc)
}

/// Integer interval where the convex quadratic `d a^2 - p a + r2` is
/// nonpositive, or `None` if it never is.
fn convex_support(d: i64, p: i64, r2: i64) -> Option<(i64, i64)> {
    debug_assert!(d > 0);
    let e = |a: i64| d * a * a - p * a + r2;
    let v = p.div_euclid(2 * d);
    let seed = if e(v) <= 0 {
        v
    } else if e(v + 1) <= 0 {
        v + 1
    } else {
        return None;
    };
    let (mut lo, mut hi) = (seed, seed);
    while e(lo - 1) <= 0 {
        lo -= 1;
    }
    while e(hi + 1) <= 0 {
        hi += 1;
    }
    Some((lo, hi))
}

/// Integer interval where the concave quadratic `d a^2 - p a + r2` stays
/// at or above `bound`, or `None` if its maximum is below.
fn concave_support(d: i64, p: i64, r2: i64, bound: i64) -> Option<(i64, i64)> {
    debug_assert!(d < 0);
    let e = |a: i64| d * a * a - p * a + r2;
    let mut top = p.div_euclid(2 * d);
    for cand in [top - 1, top + 1] {
        if e(cand) > e(top) {
            top = cand;
        }
    }
    if e(top) < bound {
        return None;
    }
    let (mut lo, mut hi) = (top, top);
    while e(lo - 1) >= bound {
        lo -= 1;
    }
    while e(hi + 1) >= bound {
        hi += 1;
    }
    Some((lo, hi))
}

/// Strip depth needed to evaluate every summand of an exact scan.
///
/// Dry-runs the support intervals for `disc > 0` without touching any
/// coefficients and returns the largest reduced row that will be read.
pub fn relation_depth(
    index: i64,
    alpha: i64,
    beta: i64,
    n_range: (i64, i64),
    r_range: (i64, i64),
) -> Result<i64, LiftError> {
    let disc = beta * beta - 4 * index * alpha;
    if disc == 0 {
        return Err(LiftError::DegenerateRelation);
    }
    if disc < 0 {
        return Err(LiftError::NonPositiveDiscriminant(disc));
    }
    let mut depth = 1i64;
    for n in n_range.0..=n_range.1 {
        for r in r_range.0..=r_range.1 {
            let p = 4 * index * n - 2 * beta * r;
            if let Some((lo, hi)) = convex_support(disc, p, r * r) {
                for a in lo..=hi {
                    let (nc, _) = reduce(index, alpha * a * a + n * a, beta * a + r);
                    depth = depth.max(nc);
                }
            }
        }
    }
    Ok(depth)
}

/// Evaluates `R(n, r)` over the given rectangle against a prebuilt strip.
///
/// The strip must be at least [`relation_depth`] deep when `disc > 0`;
/// for `disc < 0` any depth works and the scan is truncated to the
/// summands the strip can see.
pub fn scan_relation(
    strip: &ThetaStrip,
    alpha: i64,
    beta: i64,
    n_range: (i64, i64),
    r_range: (i64, i64),
) -> Result<RelationScan, LiftError> {
    let index = strip.index();
    let depth = strip.depth();
    let disc = beta * beta - 4 * index * alpha;
    if disc == 0 {
        return Err(LiftError::DegenerateRelation);
    }
    let truncated = disc < 0;
    // Rows at depth <= strip depth have discriminant at least
    // N^2 - 4 N depth over the fundamental domain.
    let bound = index * index - 4 * index * depth;
    let mut nonzero = Vec::new();
    let mut checked = 0u64;
    for n in n_range.0..=n_range.1 {
        for r in r_range.0..=r_range.1 {
            let p = 4 * index * n - 2 * beta * r;
            let support = if disc > 0 {
                convex_support(disc, p, r * r)
            } else {
                concave_support(disc, p, r * r, bound)
            };
            let mut sum: i128 = 0;
            if let Some((lo, hi)) = support {
                for a in lo..=hi {
                    let na = alpha * a * a + n * a;
                    let ra = beta * a + r;
                    if ra * ra - 4 * index * na > 0 {
                        continue;
                    }
                    sum += strip.coeff(na, ra)?;
                }
            }
            checked += 1;
            if sum != 0 {
                nonzero.push(RelationHit {
                    n,
                    r,
                    value: sum.to_string(),
                });
            }
        }
    }
    Ok(RelationScan {
        index,
        alpha,
        beta,
        disc,
        n_range,
        r_range,
        depth,
        truncated,
        checked,
        nonzero,
    })
}

// ---------------------------------------------------------------------------
// tests
// ---------------------------------------------------------------------------
