//! `repfun`: compute representation tables and run the analyzers from the shell.
//!
//! Exit codes: 0 success or pass, 1 a verified violation or failed inequality,
//! 2 usage, parse or precondition errors.

mod output;

use std::error::Error as StdError;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use repfun_core::analysis::{
    self, ef_dyadic_report, estimate_c, partial_sums, MomentParams, ResidueViolation, SumConstant,
    Verdict,
};
use repfun_core::engine::rep_series;
use repfun_core::{Configuration, SequenceSpec};

use output::{emit, fmt_g, json, Csv};

type Fallible<T> = Result<T, Box<dyn StdError>>;

#[derive(Parser)]
#[command(
    name = "repfun",
    version,
    about = "Exact representation functions r(n, A) of multilinear forms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the table n,r for 0 <= n <= limit as CSV.
    Compute {
        #[command(flatten)]
        table: TableArgs,
        /// Output path, `-` for stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a window check and write a JSON report.
    Verify {
        #[command(subcommand)]
        check: Check,
    },
    /// Dyadic growth of the partial sums Σ (r(j) − c).
    Ef {
        #[command(flatten)]
        table: TableArgs,
        /// `auto`, an integer or `p/q` (exact), or a decimal (floating).
        #[arg(long, default_value = "auto")]
        c: ConstantArg,
        /// Block exponent slack, 0 < ε < 1/4.
        #[arg(long)]
        epsilon: f64,
        /// CSV output path, `-` for stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// JSON summary path; standard error when omitted.
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Write a sequence file.
    Generate {
        /// Sequence to enumerate.
        #[arg(long)]
        seq: SequenceSpec,
        /// Largest element to include.
        #[arg(long)]
        limit: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Evaluate the circle-moment inequality chain and write a JSON report.
    Moments {
        /// Configuration of degree at least 2.
        #[arg(long)]
        config: Configuration,
        /// Sequence, as for `compute`.
        #[arg(long)]
        seq: SequenceSpec,
        /// Truncation order; defaults to the smallest N with r^(2N) < 1e-12.
        #[arg(long)]
        limit: Option<usize>,
        /// Kernel length M.
        #[arg(long = "M", alias = "kernel-len")]
        kernel_len: usize,
        /// Block exponent slack, 0 < ε < 1/4.
        #[arg(long)]
        epsilon: f64,
        /// Overrides r^2 = 1 − M^(−(2+8ε)).
        #[arg(long)]
        r2: Option<f64>,
        /// Constant for the partial sums; estimated from the table when omitted.
        #[arg(long)]
        c: Option<f64>,
        /// JSON output path, `-` for stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Check {
    /// r(n) ≡ [p | n, n/p ∈ A] (mod p) for the configuration {(1, p)}.
    Parity {
        /// A prime.
        #[arg(long)]
        p: u64,
        /// Sequence, as for `compute`.
        #[arg(long)]
        seq: SequenceSpec,
        /// Last n checked.
        #[arg(long)]
        limit: usize,
        /// JSON output path, `-` for stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search the window [W, N] for a polynomial fit of degree <= d.
    PolyTail {
        #[command(flatten)]
        table: TableArgs,
        /// Largest polynomial degree d tried.
        #[arg(long)]
        max_degree: usize,
        /// Window start W.
        #[arg(long)]
        window: usize,
        /// JSON output path, `-` for stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct TableArgs {
    /// Configuration, e.g. `1:2,3:2`.
    #[arg(long)]
    config: Configuration,
    /// naturals, primes, squares, moser:<k>, mianchowla or file:<path>.
    #[arg(long)]
    seq: SequenceSpec,
    /// Largest n in the table.
    #[arg(long)]
    limit: usize,
}

#[derive(Clone, Debug)]
enum ConstantArg {
    Auto,
    Exact(BigRational),
    Float(f64),
}

impl FromStr for ConstantArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "auto" {
            return Ok(ConstantArg::Auto);
        }
        if let Some((p, q)) = s.split_once('/') {
            let p: BigInt = p
                .trim()
                .parse()
                .map_err(|_| format!("bad numerator in {s:?}"))?;
            let q: BigInt = q
                .trim()
                .parse()
                .map_err(|_| format!("bad denominator in {s:?}"))?;
            if q.is_zero() {
                return Err(format!("zero denominator in {s:?}"));
            }
            return Ok(ConstantArg::Exact(BigRational::new(p, q)));
        }
        if let Ok(n) = s.parse::<BigInt>() {
            return Ok(ConstantArg::Exact(BigRational::from_integer(n)));
        }
        s.parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .map(ConstantArg::Float)
            .ok_or_else(|| format!("expected auto, p/q or a number, got {s:?}"))
    }
}

enum Outcome {
    Pass,
    Violation,
}

fn usage(msg: impl Into<String>) -> Box<dyn StdError> {
    msg.into().into()
}

fn compute(table: &TableArgs, out: Option<&PathBuf>) -> Fallible<Outcome> {
    let seq = table.seq.materialize(table.limit as u64)?;
    let t = rep_series(&seq, &table.config, table.limit)?;
    let mut csv = Csv::new(&["n", "r"]);
    for (n, r) in t.values().iter().enumerate() {
        csv.row(&[&n, r]);
    }
    emit(out.map(|p| p.as_path()), &csv.into_string())?;
    Ok(Outcome::Pass)
}

#[derive(Serialize)]
struct ParityReport<'a> {
    check: &'static str,
    seq: String,
    p: u64,
    limit: usize,
    verdict: Verdict,
    witnesses: &'a [ResidueViolation],
}

#[derive(Serialize)]
struct PolyTailOut<'a> {
    check: &'static str,
    seq: String,
    #[serde(flatten)]
    report: &'a analysis::PolyTailReport,
}

fn verify(check: &Check) -> Fallible<Outcome> {
    match check {
        Check::Parity { p, seq, limit, out } => {
            let a = seq.materialize(*limit as u64)?;
            let violations = analysis::mod_p_residue_check(&a, *p, *limit)?;
            let verdict = if violations.is_empty() {
                Verdict::Pass
            } else {
                Verdict::Fail
            };
            let report = ParityReport {
                check: "residue",
                seq: seq.to_string(),
                p: *p,
                limit: *limit,
                verdict,
                witnesses: &violations,
            };
            emit(out.as_deref(), &json(&report))?;
            Ok(if violations.is_empty() {
                Outcome::Pass
            } else {
                Outcome::Violation
            })
        }
        Check::PolyTail {
            table,
            max_degree,
            window,
            out,
        } => {
            let a = table.seq.materialize(table.limit as u64)?;
            let t = rep_series(&a, &table.config, table.limit)?;
            let report = analysis::poly_tail_check(&t, *max_degree, *window)?;
            emit(
                out.as_deref(),
                &json(&PolyTailOut {
                    check: "poly-tail",
                    seq: table.seq.to_string(),
                    report: &report,
                }),
            )?;
            Ok(match report.verdict {
                Verdict::Pass => Outcome::Pass,
                Verdict::Fail => Outcome::Violation,
            })
        }
    }
}

#[derive(Serialize)]
struct EfSummary {
    config: String,
    seq: String,
    limit: usize,
    c: f64,
    c_mode: &'static str,
    epsilon: f64,
    blocks: usize,
    trend: analysis::Trend,
}

fn ef(
    table: &TableArgs,
    c: &ConstantArg,
    epsilon: f64,
    out: Option<&PathBuf>,
    summary: Option<&PathBuf>,
) -> Fallible<Outcome> {
    let s = table.config.degree();
    if s <= 1 {
        return Err(usage(format!(
            "configuration {} has degree {s}; the partial-sum report needs degree > 1",
            table.config
        )));
    }
    if !(epsilon > 0.0 && epsilon < 0.25) {
        return Err(usage(format!("epsilon {epsilon} is outside (0, 0.25)")));
    }
    let seq = table.seq.materialize(table.limit as u64)?;
    let t = rep_series(&seq, &table.config, table.limit)?;
    let (constant, mode) = match c {
        ConstantArg::Auto => (SumConstant::Approx(estimate_c(&t)?), "auto"),
        ConstantArg::Exact(q) => (SumConstant::Exact(q.clone()), "exact"),
        ConstantArg::Float(x) => (SumConstant::Approx(*x), "float"),
    };
    let c_value = constant.to_f64();
    let a = partial_sums(&t, constant)?;
    drop(t);
    let report = ef_dyadic_report(&a, epsilon)?;
    let mut csv = Csv::new(&["k", "block_lo", "block_hi", "S_k", "rho_k"]);
    for b in &report.blocks {
        csv.row(&[
            &b.k,
            &b.block_lo,
            &b.block_hi,
            &fmt_g(b.max_abs),
            &fmt_g(b.ratio),
        ]);
    }
    emit(out.map(|p| p.as_path()), &csv.into_string())?;
    let text = json(&EfSummary {
        config: table.config.to_string(),
        seq: table.seq.to_string(),
        limit: table.limit,
        c: c_value,
        c_mode: mode,
        epsilon,
        blocks: report.blocks.len(),
        trend: report.trend,
    });
    match summary {
        Some(p) => emit(Some(p), &text)?,
        None => eprint!("{text}"),
    }
    Ok(Outcome::Pass)
}

fn generate(seq: &SequenceSpec, limit: u64, out: &Path) -> Fallible<Outcome> {
    let a = seq.materialize(limit)?;
    emit(Some(out), &a.to_text())?;
    Ok(Outcome::Pass)
}

#[derive(Serialize)]
struct MomentsOut<'a> {
    seq: String,
    #[serde(flatten)]
    report: &'a analysis::CircleMomentReport,
}

#[allow(clippy::too_many_arguments)]
fn moments(
    config: &Configuration,
    seq: &SequenceSpec,
    limit: Option<usize>,
    kernel_len: usize,
    epsilon: f64,
    r2: Option<f64>,
    c: Option<f64>,
    out: Option<&PathBuf>,
) -> Fallible<Outcome> {
    if r2.is_none() && kernel_len == 1 {
        return Err(usage(
            "the default radius 1 - M^-(2+8ε) is 0 for M = 1; pass --r2 to choose one",
        ));
    }
    let params = MomentParams {
        kernel_len,
        epsilon,
        r2,
        order: limit,
        c,
    };
    let order = match limit {
        Some(n) => n,
        None => analysis::required_order(params.r2())?,
    };
    let a = seq.materialize(order as u64)?;
    let report = analysis::circle_moments(&a, config, &params)?;
    emit(
        out.map(|p| p.as_path()),
        &json(&MomentsOut {
            seq: seq.to_string(),
            report: &report,
        }),
    )?;
    Ok(if report.all_ok {
        Outcome::Pass
    } else {
        Outcome::Violation
    })
}

fn run(cli: Cli) -> Fallible<Outcome> {
    match &cli.command {
        Command::Compute { table, out } => compute(table, out.as_ref()),
        Command::Verify { check } => verify(check),
        Command::Ef {
            table,
            c,
            epsilon,
            out,
            summary,
        } => ef(table, c, *epsilon, out.as_ref(), summary.as_ref()),
        Command::Generate { seq, limit, out } => generate(seq, *limit, out),
        Command::Moments {
            config,
            seq,
            limit,
            kernel_len,
            epsilon,
            r2,
            c,
            out,
        } => moments(
            config,
            seq,
            *limit,
            *kernel_len,
            *epsilon,
            *r2,
            *c,
            out.as_ref(),
        ),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Violation) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
