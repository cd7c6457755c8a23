//! Optional on-disk cache for block expansions.
//!
//! Expanding a block to a deep window dominates the run time of most
//! subcommands, and the result depends only on the block and the window.
//! When a cache directory is given (`--cache-dir` or `THETABLOCK_CACHE`),
//! expansions are stored there as JSON term lists keyed by the block's
//! normal form and the window; later runs reload instead of recomputing.
//! Without a directory every call computes from scratch.  A corrupt or
//! unwritable cache never fails a run — the expansion is simply redone.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thetablock::fourier::FourierSeries;
use thetablock::jacobi::{block_expand, JacobiError, JacobiFormSeries, ThetaBlockDescriptor};

#[derive(Serialize, Deserialize)]
struct Entry {
    qmax: i64,
    terms: Vec<(i64, i64, String, String)>,
}

fn cache_key(desc: &ThetaBlockDescriptor, n_order: i64) -> String {
    let args: Vec<String> = desc
        .theta_exps
        .iter()
        .map(|(a, m)| format!("{a}x{m}"))
        .collect();
    format!(
        "theta_e{}_s{}_{}_w{}.json",
        desc.eta_exp,
        desc.sign,
        args.join("-"),
        n_order
    )
}

fn load(path: &Path, desc: &ThetaBlockDescriptor, n_order: i64) -> Option<JacobiFormSeries> {
    let raw = fs::read_to_string(path).ok()?;
    let entry: Entry = serde_json::from_str(&raw).ok()?;
    if entry.qmax != 24 * n_order {
        return None;
    }
    let series = FourierSeries::from_term_tuples(&entry.terms, entry.qmax).ok()?;
    Some(JacobiFormSeries {
        series,
        weight: desc.weight(),
        index: desc.index(),
    })
}

fn store(path: &Path, theta: &JacobiFormSeries) {
    let entry = Entry {
        qmax: theta.series.qmax(),
        terms: theta.series.to_term_tuples(),
    };
    if let Ok(json) = serde_json::to_string(&entry) {
        if let Some(parent) = path.parent() {
            let _ = fs::create_dir_all(parent);
        }
        let _ = fs::write(path, json);
    }
}

/// Loads or computes the expansion of `desc` through `n_order` rows.
pub fn expand_cached(
    desc: &ThetaBlockDescriptor,
    n_order: i64,
    dir: Option<&Path>,
) -> Result<JacobiFormSeries, JacobiError> {
    let Some(dir) = dir else {
        return block_expand(desc, n_order);
    };
    let path = dir.join(cache_key(desc, n_order));
    if let Some(theta) = load(&path, desc, n_order) {
        return Ok(theta);
    }
    let fresh = block_expand(desc, n_order)?;
    store(&path, &fresh);
    Ok(fresh)
}
