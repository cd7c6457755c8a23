//! Deep coefficient strips for theta blocks.
//!
//! The general series arithmetic keeps every elliptic exponent that can
//! occur and is limited to modest q-orders.  Coefficient-sum identities,
//! however, need single coefficients `c(n, r)` at q-orders in the
//! thousands.  Two observations make that feasible:
//!
//! * every coefficient of a holomorphic Jacobi form of index N is
//!   determined by one with `|r| <= N` (shift r by multiples of 2N, which
//!   preserves the discriminant `r^2 - 4Nn`), and coefficients with
//!   positive discriminant vanish; so a strip of columns `|r| <= N` to
//!   depth n suffices;
//! * a block is a product of ten theta factors and a (negative) power of
//!   eta, and in the sum representation each theta factor is extremely
//!   sparse, so the strip can be accumulated densely in machine integers.
//!
//! All arithmetic is in `i128`.  The l1 norm of the ten-factor product is
//! at most (number of sum terms per factor)^10, far below the i128 range,
//! and the profile enables overflow checks in every build, so any
//! conceivable overflow panics instead of wrapping.
//!
//! Internal layout: exponents in eighths of a q-power.  A product of t
//! theta factors lives on `q8 = t + 8s`, `s = 0, 1, 2, ...`; each division
//! by eta^3 = q^(1/8) (1 - 3q + 5q^3 - ...) lowers the offset by one and
//! acts slice-wise per column.  Ten factors and two divisions land on
//! integer q-orders, as required.

use std::collections::BTreeMap;

use super::{JacobiError, ThetaBlockDescriptor};

/// One dense q8-slice: coefficient of `z2 = min_z2 + 2 idx` at `vals[idx]`.
struct Row {
    min_z2: i64,
    vals: Vec<i128>,
}

impl Row {
    /// A zeroed row covering `|z2| <= bound` with `z2` of the given parity.
    fn with_bound(bound: i64, parity: i64) -> Row {
        if bound < parity {
            return Row {
                min_z2: 0,
                vals: Vec::new(),
            };
        }
        let max_z2 = bound - (bound - parity).rem_euclid(2);
        Row {
            min_z2: -max_z2,
            vals: vec![0; (max_z2 + 1) as usize],
        }
    }

    #[inline]
    fn add(&mut self, z2: i64, v: i128) {
        debug_assert_eq!((z2 - self.min_z2).rem_euclid(2), 0);
        let idx = (z2 - self.min_z2) / 2;
        // Out-of-range cells are provably irrelevant to the requested strip
        // (see the width bound in `build`), so they are dropped.
        if idx >= 0 {
            if let Some(slot) = self.vals.get_mut(idx as usize) {
                *slot += v;
            }
        }
    }

    fn get(&self, z2: i64) -> i128 {
        if (z2 - self.min_z2).rem_euclid(2) != 0 {
            return 0;
        }
        let idx = (z2 - self.min_z2) / 2;
        if idx < 0 {
            0
        } else {
            self.vals.get(idx as usize).copied().unwrap_or(0)
        }
    }
}

fn triangular(k: i64) -> i64 {
    k * (k + 1) / 2
}

/// Fourier coefficients of a theta block on the strip `|r| <= index`,
/// integer q-orders 1..=depth, with out-of-strip coefficients recovered by
/// discriminant-preserving shifts.
pub struct ThetaStrip {
    index: i64,
    depth: i64,
    /// `cols[r][n - 1]` = c(n, r), for -index <= r <= index.
    cols: BTreeMap<i64, Vec<i128>>,
}

impl ThetaStrip {
    pub fn index(&self) -> i64 {
        self.index
    }

    pub fn depth(&self) -> i64 {
        self.depth
    }

    /// Builds the strip for `desc` to the given depth.
    ///
    /// Supports blocks whose eta power is a nonpositive multiple of -3 and
    /// whose factor count works out to integer q-orders starting at q^1,
    /// which covers every ten-factor block handled by this crate.
    pub fn build(desc: &ThetaBlockDescriptor, depth: i64) -> Result<ThetaStrip, JacobiError> {
        if desc.vanishes {
            return Err(JacobiError::ZeroBlock);
        }
        let unsupported = |msg: &str| JacobiError::Unsupported(msg.to_string());
        if desc.eta_exp > 0 || desc.eta_exp % 3 != 0 {
            return Err(unsupported("eta power is not a nonpositive multiple of 3"));
        }
        let divisions = -desc.eta_exp / 3;
        let t_count = desc.theta_count();
        if t_count - divisions != 8 {
            return Err(unsupported("block does not start at integer q-order 1"));
        }
        let mut args: Vec<i64> = Vec::new();
        for (&a, &m) in desc.theta_exps.iter() {
            for _ in 0..m {
                args.push(a);
            }
        }
        let g_total: i64 = args.iter().map(|a| a * a).sum();
        debug_assert_eq!(g_total, 2 * desc.index());
        let n_cap = 2 * desc.index();
        let s_work = 8 * depth + divisions;
        let slice_count = |offset: i64| (s_work - offset) / 8 + 1;

        // Stage 0: the empty product, a single 1 at q8 = 0, z2 = 0.
        let mut cur: Vec<Row> = (0..slice_count(0))
            .map(|_| Row {
                min_z2: 0,
                vals: vec![0],
            })
            .collect();
        cur[0].vals[0] = 1;

        let mut g_so_far = 0i64;
        let mut parity = 0i64;
        for (step, &a) in args.iter().enumerate() {
            let offset = step as i64 + 1;
            g_so_far += a * a;
            let g_rest = g_total - g_so_far;
            parity = (parity + a).rem_euclid(2);
            // Width of the new slice at q8: the Cauchy-Schwarz bound
            // sqrt(g_so_far * q8) always holds, and a cell can only reach a
            // kept final cell (|z2| <= n_cap) if the remaining factors can
            // bridge the gap, which they cannot beyond
            // n_cap + sqrt(g_rest * (s_work - q8)).
            let mut next: Vec<Row> = (0..slice_count(offset))
                .map(|s| {
                    let q8 = offset + 8 * s;
                    let bound = ((g_so_far as i128 * q8 as i128) as f64).sqrt() as i64 + 2;
                    let reach = n_cap
                        + (((g_rest as i128 * (s_work - q8) as i128) as f64).sqrt() as i64 + 2);
                    Row::with_bound(exact_sqrt_cap(bound, g_so_far as i128 * q8 as i128)
                        .min(exact_reach_cap(reach, n_cap, g_rest as i128, (s_work - q8) as i128)),
                        parity)
                })
                .collect();
            let max_slice = slice_count(offset) - 1;
            for (s_src, row) in cur.iter().enumerate() {
                if row.vals.iter().all(|&v| v == 0) {
                    continue;
                }
                let mut j = 0i64;
                loop {
                    let s_tgt = s_src as i64 + triangular(j);
                    if s_tgt > max_slice {
                        break;
                    }
                    let m = 2 * j + 1;
                    let sgn: i128 = if j % 2 == 0 { 1 } else { -1 };
                    let tgt = &mut next[s_tgt as usize];
                    for (idx, &v) in row.vals.iter().enumerate() {
                        if v != 0 {
                            let z2 = row.min_z2 + 2 * idx as i64;
                            tgt.add(z2 + a * m, sgn * v);
                            tgt.add(z2 - a * m, -sgn * v);
                        }
                    }
                    j += 1;
                }
            }
            cur = next;
        }

        if parity != 0 {
            return Err(unsupported("block has half-integer elliptic exponents"));
        }

        // Transpose the kept columns (|z2| <= 2 index, z2 even) and divide
        // each column `divisions` times by eta^3, whose slice form is
        // sum over k of (-1)^k (2k+1) x^(k(k+1)/2) with unit leading term.
        let index = desc.index();
        let rows = slice_count(10) as usize;
        let sign = desc.sign as i128;
        let mut cols: BTreeMap<i64, Vec<i128>> = BTreeMap::new();
        for r in -index..=index {
            let z2 = 2 * r;
            let mut col: Vec<i128> = (0..rows).map(|s| sign * cur[s].get(z2)).collect();
            for _ in 0..divisions {
                for s in 0..rows {
                    let mut k = 1i64;
                    loop {
                        let t = triangular(k);
                        if t > s as i64 {
                            break;
                        }
                        let h: i128 = if k % 2 == 0 {
                            (2 * k + 1) as i128
                        } else {
                            -((2 * k + 1) as i128)
                        };
                        col[s] -= h * col[s - t as usize];
                        k += 1;
                    }
                }
            }
            cols.insert(r, col);
        }
        drop(cur);

        let strip = ThetaStrip { index, depth, cols };
        strip.validate()?;
        Ok(strip)
    }

    /// Build-time self-checks: coefficients with positive discriminant must
    /// vanish (the block is holomorphic) and rows must be symmetric in r
    /// (the weight is even).  Either failing would mean the engine itself
    /// is wrong, so both are hard errors.
    fn validate(&self) -> Result<(), JacobiError> {
        let bad = |msg: String| JacobiError::StripValidation(msg);
        for (&r, col) in self.cols.iter() {
            for (s, &v) in col.iter().enumerate() {
                let n = s as i64 + 1;
                if r * r > 4 * self.index * n && v != 0 {
                    return Err(bad(format!(
                        "nonzero coefficient at (n, r) = ({n}, {r}) with positive discriminant"
                    )));
                }
            }
            let mirror = &self.cols[&-r];
            if mirror != col {
                return Err(bad(format!("rows not symmetric at r = {r}")));
            }
        }
        Ok(())
    }

    /// The coefficient c(n, r), for any integers n, r, as long as the
    /// discriminant-reduced representative lies within the depth.
    pub fn coeff(&self, n: i64, r: i64) -> Result<i128, JacobiError> {
        let nn = self.index;
        let disc = r * r - 4 * nn * n;
        if disc > 0 {
            return Ok(0);
        }
        let mut rc = r.rem_euclid(2 * nn);
        if rc > nn {
            rc -= 2 * nn;
        }
        let nc = n + (rc * rc - r * r) / (4 * nn);
        debug_assert!(nc >= 0);
        if nc == 0 {
            return Ok(0);
        }
        if nc > self.depth {
            return Err(JacobiError::WindowExceeded {
                requested: nc,
                available: self.depth,
            });
        }
        Ok(self.cols[&rc][(nc - 1) as usize])
    }
}

/// Largest v with v^2 <= cap, started from a float estimate and corrected
/// exactly, so the row bound never depends on floating-point rounding.
fn exact_sqrt_cap(est: i64, cap: i128) -> i64 {
    let mut v = est.max(0);
    while (v as i128) * (v as i128) > cap {
        v -= 1;
    }
    while ((v + 1) as i128) * ((v + 1) as i128) <= cap {
        v += 1;
    }
    v
}

/// Largest v with (v - base)^2 <= g * span (and at least base), likewise
/// corrected exactly.
fn exact_reach_cap(est: i64, base: i64, g: i128, span: i128) -> i64 {
    let cap = g * span;
    let mut v = est.max(base);
    while {
        let d = (v - base) as i128;
        d * d > cap
    } {
        v -= 1;
    }
    while {
        let d = (v + 1 - base) as i128;
        d * d <= cap
    } {
        v += 1;
    }
    v
}
