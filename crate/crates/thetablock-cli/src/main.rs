//! Command-line front end for the theta-block computations.
//!
//! Exit codes: 0 when the requested check succeeds (or the command is
//! purely informational), 1 when an exact comparison fails — lift rows
//! that differ from product rows, a relation scan with nonzero values,
//! a lattice that misses the norm-2 condition — and 2 for usage errors,
//! vanishing blocks, and windows too shallow for the request.

mod cache;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use thetablock::jacobi::psi::psi_from_block;
use thetablock::jacobi::strip::ThetaStrip;
use thetablock::jacobi::{block_from_a, ThetaBlockDescriptor};
use thetablock::lattice::block::{a4_weyl_block, quasi_pullback, LatticeBlockDescriptor};
use thetablock::lattice::named_lattice;
use thetablock::lifts::relations::{relation_depth, scan_relation, RelationScan};
use thetablock::lifts::report::{render_sing, render_surface};
use thetablock::lifts::sing::SingularPart;
use thetablock::lifts::verify::{required_orders, verify_from_expansion};

#[derive(Parser)]
#[command(
    name = "thetablock",
    version,
    about = "Exact theta-block computations: lift verification, singular parts, divisor surfaces, coefficient relations, and lattice reports"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Print wall-clock timings of the expensive stages to stderr.
    #[arg(long, global = true)]
    timings: bool,
    /// Cache directory for block expansions.
    #[arg(long, global = true, env = "THETABLOCK_CACHE")]
    cache_dir: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check that the additive lift of a block equals its product expansion
    Verify {
        /// Four generating integers, comma separated (e.g. 1,1,1,2)
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        a: Vec<i64>,
        /// Compare coefficients up to this q-order
        #[arg(long, default_value_t = 3)]
        nmax: i64,
        /// Compare Fourier-Jacobi rows up to this index
        #[arg(long, default_value_t = 3)]
        mmax: i64,
    },
    /// Print the singular part and divisor data of the block's companion
    Sing {
        /// Four generating integers, comma separated
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        a: Vec<i64>,
    },
    /// Multiplicity of one Humbert surface in the product's divisor
    Humbert {
        /// Four generating integers, comma separated
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        a: Vec<i64>,
        /// Surface data n0,r0,m0 (must be coprime with positive discriminant)
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        surface: Vec<i64>,
    },
    /// Scan the linear coefficient relations forced by a divisor surface
    Relations {
        /// Four generating integers, comma separated
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        a: Vec<i64>,
        /// Surface row parameter alpha
        #[arg(long)]
        alpha: i64,
        /// Surface class parameter beta
        #[arg(long, allow_hyphen_values = true)]
        beta: i64,
        /// Scanned row range, min,max
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = vec![0, 3])]
        nbox: Vec<i64>,
        /// Scanned class range, min,max
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = vec![-10, 10])]
        rbox: Vec<i64>,
        /// Strip depth (required when beta^2 - 4 N alpha is negative;
        /// otherwise computed automatically)
        #[arg(long)]
        depth: Option<i64>,
    },
    /// Check that every discriminant class of a named lattice has norm at most 2
    Norm2 {
        /// Lattice name (e.g. A4, A4v5, A3_5, 2A1_5, A0, B0)
        name: String,
    },
    /// Full discriminant-class survey of a named lattice
    LatticeReport {
        /// Lattice name (e.g. A4, A4v5, A3_5, 2A1_5, A0, B0)
        name: String,
    },
    /// Quasi pull-back of the rank-four block to a primitive sublattice
    Pullback {
        /// One sublattice basis row, comma separated; repeat per row
        #[arg(long = "row", value_delimiter = ',', allow_hyphen_values = true, action = clap::ArgAction::Append)]
        rows: Vec<i64>,
        /// Number of entries per row
        #[arg(long, default_value_t = 4)]
        rank: usize,
    },
}

/// A command outcome: the rendered report plus the exit status.
struct Outcome {
    text: String,
    json: String,
    failed_check: bool,
}

impl Outcome {
    fn new<T: Serialize>(text: String, value: &T, failed_check: bool) -> Result<Self, CliError> {
        let json = serde_json::to_string_pretty(value)
            .map_err(|e| CliError(format!("serialization failed: {e}")))?;
        Ok(Outcome {
            text,
            json,
            failed_check,
        })
    }
}

/// Usage-level failure: printed to stderr, exit code 2.
struct CliError(String);

impl<E: std::error::Error> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

struct Timer {
    enabled: bool,
}

impl Timer {
    fn stage<T>(&self, label: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let value = f();
        if self.enabled {
            eprintln!("timing: {label} {:?}", start.elapsed());
        }
        value
    }
}

fn four(v: &[i64]) -> Result<[i64; 4], CliError> {
    <[i64; 4]>::try_from(v)
        .map_err(|_| CliError(format!("expected four comma-separated integers, got {v:?}")))
}

fn pair(v: &[i64], what: &str) -> Result<(i64, i64), CliError> {
    match v {
        [lo, hi] if lo <= hi => Ok((*lo, *hi)),
        _ => Err(CliError(format!(
            "{what} must be min,max with min <= max, got {v:?}"
        ))),
    }
}

fn descriptor(a: [i64; 4]) -> Result<ThetaBlockDescriptor, CliError> {
    let desc = block_from_a(a);
    if desc.vanishes {
        return Err(CliError(format!(
            "the block attached to {a:?} vanishes identically"
        )));
    }
    Ok(desc)
}

/// Builds the companion to full singular depth, via the cache if one is
/// configured.
fn singular_part(
    desc: &ThetaBlockDescriptor,
    common: &Common,
    timer: &Timer,
) -> Result<SingularPart, CliError> {
    let order = (desc.index() + 3) / 4;
    let theta = timer.stage("block expansion", || {
        cache::expand_cached(desc, 2 * (order + 1), common.cache_dir.as_deref())
    })?;
    let psi = timer.stage("companion", || psi_from_block(desc, &theta, order))?;
    Ok(SingularPart::from_psi(&psi))
}

fn cmd_verify(
    a: [i64; 4],
    nmax: i64,
    mmax: i64,
    common: &Common,
    timer: &Timer,
) -> Result<Outcome, CliError> {
    if nmax < 1 || mmax < 1 {
        return Err(CliError("nmax and mmax must be at least 1".into()));
    }
    let desc = descriptor(a)?;
    let (_, theta_order) = required_orders(desc.index(), nmax, mmax);
    let theta = timer.stage("block expansion", || {
        cache::expand_cached(&desc, theta_order, common.cache_dir.as_deref())
    })?;
    let report = timer.stage("lift comparison", || {
        verify_from_expansion(a, &theta, nmax, mmax)
    })?;
    let text = thetablock::lifts::report::render_report_text(&report);
    Outcome::new(text, &report, !report.rows_equal)
}

#[derive(Serialize)]
struct SingReport {
    a: [i64; 4],
    index: i64,
    sing: String,
    complete: bool,
    divisors: Vec<String>,
    theta_block_divisors_only: bool,
}

fn cmd_sing(a: [i64; 4], common: &Common, timer: &Timer) -> Result<Outcome, CliError> {
    let desc = descriptor(a)?;
    let sing = singular_part(&desc, common, timer)?;
    let entries = sing.divisor_entries()?;
    let divisors: Vec<String> = entries
        .iter()
        .map(|(n0, r0, mult)| render_surface(sing.index(), *n0, *r0, 1, mult))
        .collect();
    let theta_only = entries.iter().all(|(n0, _, _)| *n0 == 0);
    let report = SingReport {
        a,
        index: sing.index(),
        sing: render_sing(&sing),
        complete: sing.is_complete(),
        divisors,
        theta_block_divisors_only: theta_only,
    };
    let mut text = format!("Sing psi = {}\n", report.sing);
    text.push_str("divisor:\n");
    for line in &report.divisors {
        text.push_str(&format!("  {line}\n"));
    }
    if theta_only {
        text.push_str("  (theta-block divisors only)\n");
    }
    Outcome::new(text, &report, false)
}

#[derive(Serialize)]
struct SurfaceReport {
    a: [i64; 4],
    index: i64,
    surface: [i64; 3],
    disc: i64,
    multiplicity: String,
}

fn cmd_humbert(
    a: [i64; 4],
    surface: &[i64],
    common: &Common,
    timer: &Timer,
) -> Result<Outcome, CliError> {
    let [n0, r0, m0] = <[i64; 3]>::try_from(surface)
        .map_err(|_| CliError(format!("expected a surface n0,r0,m0, got {surface:?}")))?;
    let desc = descriptor(a)?;
    let sing = singular_part(&desc, common, timer)?;
    let mult = sing.surface_multiplicity(n0, r0, m0)?;
    let report = SurfaceReport {
        a,
        index: sing.index(),
        surface: [n0, r0, m0],
        disc: r0 * r0 - 4 * sing.index() * n0 * m0,
        multiplicity: mult.to_string(),
    };
    let text = format!(
        "{}\n",
        render_surface(sing.index(), n0, r0, m0, &mult)
    );
    Outcome::new(text, &report, false)
}

fn relation_text(scan: &RelationScan) -> String {
    let mut text = format!(
        "relation scan: index {}, surface parameters ({}, {})\n",
        scan.index, scan.alpha, scan.beta
    );
    text.push_str(&format!(
        "disc {}, strip depth {}, {}\n",
        scan.disc,
        scan.depth,
        if scan.truncated { "truncated" } else { "exact" }
    ));
    text.push_str(&format!(
        "checked {} lattice points over n in [{}, {}], r in [{}, {}]\n",
        scan.checked, scan.n_range.0, scan.n_range.1, scan.r_range.0, scan.r_range.1
    ));
    if scan.nonzero.is_empty() {
        text.push_str("all relations hold\n");
    } else {
        text.push_str(&format!("{} nonzero values:\n", scan.nonzero.len()));
        for hit in &scan.nonzero {
            text.push_str(&format!("  R({}, {}) = {}\n", hit.n, hit.r, hit.value));
        }
    }
    text
}

#[allow(clippy::too_many_arguments)]
fn cmd_relations(
    a: [i64; 4],
    alpha: i64,
    beta: i64,
    nbox: &[i64],
    rbox: &[i64],
    depth: Option<i64>,
    _common: &Common,
    timer: &Timer,
) -> Result<Outcome, CliError> {
    let n_range = pair(nbox, "nbox")?;
    let r_range = pair(rbox, "rbox")?;
    let desc = descriptor(a)?;
    let index = desc.index();
    let disc = beta * beta - 4 * index * alpha;
    if disc == 0 {
        return Err(CliError(
            "surface discriminant vanishes; nothing to scan".into(),
        ));
    }
    let depth = match (depth, disc > 0) {
        (Some(d), _) if d >= 1 => d,
        (Some(_), _) => return Err(CliError("depth must be at least 1".into())),
        (None, true) => timer.stage("depth scan", || {
            relation_depth(index, alpha, beta, n_range, r_range)
        })?,
        (None, false) => {
            return Err(CliError(
                "negative discriminant: pass --depth to bound the truncated scan".into(),
            ))
        }
    };
    let strip = timer.stage("strip", || ThetaStrip::build(&desc, depth))?;
    let scan = timer.stage("scan", || {
        scan_relation(&strip, alpha, beta, n_range, r_range)
    })?;
    let failed = !scan.truncated && !scan.nonzero.is_empty();
    Outcome::new(relation_text(&scan), &scan, failed)
}

#[derive(Serialize)]
struct Norm2Report {
    name: String,
    norm2_ok: bool,
    class_count: u64,
}

fn cmd_norm2(name: &str, timer: &Timer) -> Result<Outcome, CliError> {
    let lattice = named_lattice(name)?;
    let classes = timer.stage("class survey", || lattice.discriminant_classes())?;
    let report = Norm2Report {
        name: name.to_string(),
        norm2_ok: classes.norm2_ok,
        class_count: classes.class_count,
    };
    let text = format!(
        "norm-2 condition for {name}: {} ({} discriminant classes)\n",
        if classes.norm2_ok { "holds" } else { "FAILS" },
        classes.class_count
    );
    Outcome::new(text, &report, !classes.norm2_ok)
}

fn cmd_lattice_report(name: &str, timer: &Timer) -> Result<Outcome, CliError> {
    let lattice = named_lattice(name)?;
    let classes = timer.stage("class survey", || lattice.discriminant_classes())?;
    let mut text = format!(
        "lattice {name}: rank {}, det {}, {} discriminant classes\n",
        classes.rank, classes.det, classes.class_count
    );
    for row in &classes.histogram {
        text.push_str(&format!(
            "  min norm {:>4}: {} classes, {} minimal vectors each\n",
            row.min_norm, row.classes, row.min_vectors
        ));
    }
    text.push_str(&format!(
        "norm-2 condition: {}\n",
        if classes.norm2_ok { "holds" } else { "fails" }
    ));
    Outcome::new(text, &classes, false)
}

#[derive(Serialize)]
struct PullbackReport {
    rows: Vec<Vec<i64>>,
    descriptor: LatticeBlockDescriptor,
    weight: String,
}

fn cmd_pullback(rows_flat: &[i64], rank: usize) -> Result<Outcome, CliError> {
    if rank == 0 || rows_flat.is_empty() || rows_flat.len() % rank != 0 {
        return Err(CliError(format!(
            "need rows of {rank} comma-separated integers, got {} values",
            rows_flat.len()
        )));
    }
    let rows: Vec<Vec<i64>> = rows_flat.chunks(rank).map(|c| c.to_vec()).collect();
    let ambient = a4_weyl_block();
    if rank != ambient.rank() {
        return Err(CliError(format!(
            "rows must have {} entries to pair with the ambient block",
            ambient.rank()
        )));
    }
    let pulled = quasi_pullback(&ambient, &rows)?;
    let report = PullbackReport {
        rows: rows.clone(),
        weight: pulled.weight().to_string(),
        descriptor: pulled,
    };
    let mut text = format!(
        "pull-back to a rank-{} sublattice: weight {}, eta exponent {}\n",
        report.descriptor.rank(),
        report.weight,
        report.descriptor.eta_exp
    );
    text.push_str("forms:\n");
    for form in &report.descriptor.forms {
        text.push_str(&format!("  {form:?}\n"));
    }
    text.push_str("gram matrix:\n");
    for row in &report.descriptor.gram {
        text.push_str(&format!("  {row:?}\n"));
    }
    Outcome::new(text, &report, false)
}

fn dispatch(cli: &Cli, timer: &Timer) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Verify { a, nmax, mmax } => {
            cmd_verify(four(a)?, *nmax, *mmax, &cli.common, timer)
        }
        Command::Sing { a } => cmd_sing(four(a)?, &cli.common, timer),
        Command::Humbert { a, surface } => cmd_humbert(four(a)?, surface, &cli.common, timer),
        Command::Relations {
            a,
            alpha,
            beta,
            nbox,
            rbox,
            depth,
        } => cmd_relations(
            four(a)?,
            *alpha,
            *beta,
            nbox,
            rbox,
            *depth,
            &cli.common,
            timer,
        ),
        Command::Norm2 { name } => cmd_norm2(name, timer),
        Command::LatticeReport { name } => cmd_lattice_report(name, timer),
        Command::Pullback { rows, rank } => cmd_pullback(rows, *rank),
    }
}

fn emit(common: &Common, body: &str) -> Result<(), CliError> {
    match &common.out {
        Some(path) => fs::write(path, body)
            .map_err(|e| CliError(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(body.as_bytes())
                .map_err(|e| CliError(format!("cannot write to stdout: {e}")))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let timer = Timer {
        enabled: cli.common.timings,
    };
    match dispatch(&cli, &timer) {
        Ok(outcome) => {
            let body = match cli.common.format {
                Format::Text => outcome.text.clone(),
                Format::Json => format!("{}\n", outcome.json),
            };
            if let Err(CliError(msg)) = emit(&cli.common, &body) {
                eprintln!("error: {msg}");
                return ExitCode::from(2);
            }
            if outcome.failed_check {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(CliError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
