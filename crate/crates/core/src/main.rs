use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use cline_lab::cline::{check_hypothesis, cline_transfer, jacobson_inverse, Direction, Triple};
use cline_lab::drazin::{inverse_of_kind, InverseKind};
use cline_lab::explorer::{find_separation, sweep, verify_example_29, SweepMode, Theorem};
use cline_lab::ring::unit_inverse;
use cline_lab::spectra::{char_poly, drazin_spectrum_matrix, example_report};
use cline_lab::{Budget, Error, Execution, RingContext, RingElem};

const EXIT_NO_INVERSE: u8 = 3;
const EXIT_VIOLATION: u8 = 4;

/// Drazin and g-Drazin inverses, Cline-type transfer formulas and
/// exhaustive checks over small finite rings.
#[derive(Parser)]
#[command(name = "cline-lab", version)]
struct Cli {
    /// Element enumeration budget (default 2^20, or CLINE_LAB_BUDGET).
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Triple budget for exhaustive sweeps (default 2^24, or CLINE_LAB_BUDGET).
    #[arg(long, global = true)]
    triple_budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Drazin inverses of single elements.
    #[command(subcommand)]
    Drazin(DrazinCmd),
    /// Hypothesis checks and transfer formulas on a triple {"a", "b", "c"}.
    #[command(subcommand)]
    Cline(ClineCmd),
    /// Characteristic polynomials and nonzero spectra.
    #[command(subcommand)]
    Spectra(SpectraCmd),
    /// Sweeps over finite rings.
    #[command(subcommand)]
    Explore(ExploreCmd),
}

#[derive(Subcommand)]
enum DrazinCmd {
    Compute {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = KindArg::Drazin)]
        kind: KindArg,
    },
}

#[derive(Subcommand)]
enum ClineCmd {
    Check {
        #[arg(long)]
        input: PathBuf,
    },
    Transfer {
        #[arg(long, value_enum)]
        dir: DirArg,
        #[arg(long, value_enum, default_value_t = KindArg::Drazin)]
        mode: KindArg,
        #[arg(long)]
        input: PathBuf,
    },
    /// Inverts 1 - ba from the inverse of 1 - ac.
    Jacobson {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Subcommand)]
enum SpectraCmd {
    /// The truncated operator triple of size n.
    Example {
        #[arg(long, default_value_t = 16)]
        n: usize,
    },
    Compare {
        #[arg(long)]
        m1: PathBuf,
        #[arg(long)]
        m2: PathBuf,
    },
    /// Drazin spectrum of a rational matrix, with shift certificates.
    Drazin {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Subcommand)]
enum ExploreCmd {
    Sweep(SweepArgs),
    Separations {
        #[arg(long)]
        ring: RingContext,
        #[arg(long, default_value_t = 10)]
        limit: usize,
    },
    /// Checks the 6x6 separating triple over Z/2.
    Example29,
}

#[derive(Args)]
struct SweepArgs {
    /// `z<n>` or `mat<m>z<n>`.
    #[arg(long)]
    ring: RingContext,
    #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
    mode: ModeArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    count: u64,
    /// `all` or a list such as `t22,l31`.
    #[arg(long, default_value = "all")]
    theorems: String,
    /// Worker threads; 1 runs sequentially.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Drazin,
    Gdrazin,
}

impl From<KindArg> for InverseKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Drazin => InverseKind::Drazin,
            KindArg::Gdrazin => InverseKind::GDrazin,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum DirArg {
    Forward,
    Backward,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Sample,
}

enum Failure {
    NoInverse(String),
    Lib(Error),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type CmdResult = Result<(), Failure>;

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Other(format!("{}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text).map_err(Error::from)?)
}

fn emit<T: Serialize>(value: &T) -> CmdResult {
    println!("{}", serde_json::to_string_pretty(value).map_err(Error::from)?);
    Ok(())
}

fn run(cli: Cli) -> CmdResult {
    let mut budget = Budget::from_env();
    if let Some(b) = cli.budget {
        budget.elements = b;
    }
    if let Some(b) = cli.triple_budget {
        budget.triples = b;
    }
    match cli.command {
        Command::Drazin(DrazinCmd::Compute { input, kind }) => {
            let a: RingElem = read_json(&input)?;
            match inverse_of_kind(&a, kind.into(), &budget)? {
                Some(cert) => emit(&cert),
                None => Err(Failure::NoInverse(format!("{a} has no inverse of the requested kind"))),
            }
        }
        Command::Cline(cmd) => run_cline(cmd, &budget),
        Command::Spectra(cmd) => run_spectra(cmd, &budget),
        Command::Explore(cmd) => run_explore(cmd, &budget),
    }
}

fn run_cline(cmd: ClineCmd, budget: &Budget) -> CmdResult {
    match cmd {
        ClineCmd::Check { input } => {
            let t: Triple = read_json(&input)?;
            emit(&check_hypothesis(&t.a, &t.b, &t.c)?)
        }
        ClineCmd::Transfer { dir, mode, input } => {
            let t: Triple = read_json(&input)?;
            let dir = match dir {
                DirArg::Forward => Direction::Forward,
                DirArg::Backward => Direction::Backward,
            };
            match cline_transfer(&t, dir, mode.into(), budget) {
                Err(Error::MissingInverse(what)) => {
                    Err(Failure::NoInverse(format!("{what} has no inverse of the requested kind")))
                }
                other => emit(&other?),
            }
        }
        ClineCmd::Jacobson { input } => {
            let t: Triple = read_json(&input)?;
            let one = RingElem::one(t.context());
            let Some(s) = unit_inverse(&(&one - &t.ac())) else {
                return Err(Failure::NoInverse("1 - ac is not a unit".into()));
            };
            let inverse = jacobson_inverse(&t, &s)?;
            emit(&json!({ "inverse_one_minus_ac": s, "inverse_one_minus_ba": inverse, "certified": true }))
        }
    }
}

fn run_spectra(cmd: SpectraCmd, budget: &Budget) -> CmdResult {
    match cmd {
        SpectraCmd::Example { n } => emit(&example_report(n, budget)?),
        SpectraCmd::Compare { m1, m2 } => {
            let (m1, m2): (RingElem, RingElem) = (read_json(&m1)?, read_json(&m2)?);
            let (d1, d2) = (char_poly(&m1)?, char_poly(&m2)?);
            emit(&json!({ "nonzero_equal": d1.reduced == d2.reduced, "m1": d1, "m2": d2 }))
        }
        SpectraCmd::Drazin { input } => {
            let m: RingElem = read_json(&input)?;
            emit(&drazin_spectrum_matrix(&m, budget)?)
        }
    }
}

fn run_explore(cmd: ExploreCmd, budget: &Budget) -> CmdResult {
    match cmd {
        ExploreCmd::Sweep(args) => {
            let theorems = Theorem::parse_selection(&args.theorems)?;
            let mode = match args.mode {
                ModeArg::Exhaustive => SweepMode::Exhaustive,
                ModeArg::Sample => SweepMode::Sample { seed: args.seed, count: args.count },
            };
            let exec = if args.jobs == Some(1) { Execution::Sequential } else { Execution::Parallel };
            let go = || sweep(args.ring, &theorems, mode, exec, budget);
            let report = match args.jobs.filter(|&j| j > 1) {
                #[cfg(feature = "parallel")]
                Some(j) => rayon::ThreadPoolBuilder::new()
                    .num_threads(j)
                    .build()
                    .map_err(|e| Failure::Other(e.to_string()))?
                    .install(go),
                _ => go(),
            }?;
            eprintln!("swept {} triples in {:.2?}", report.triples_total, report.elapsed);
            emit(&report)
        }
        ExploreCmd::Separations { ring, limit } => emit(&find_separation(ring, limit, budget)?),
        ExploreCmd::Example29 => emit(&verify_example_29(budget)?),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::NoInverse(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(EXIT_NO_INVERSE)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::Counterexample { theorem, index, triple, message } => {
                    let triple: serde_json::Value = serde_json::from_str(&triple).unwrap_or_default();
                    let v = json!({ "violation": { "theorem": theorem, "index": index, "triple": triple, "message": message } });
                    println!("{}", serde_json::to_string_pretty(&v).unwrap_or_default());
                    ExitCode::from(EXIT_VIOLATION)
                }
                Error::TheoremViolation(_) | Error::CertificationFailed(_) => ExitCode::from(EXIT_VIOLATION),
                _ => ExitCode::FAILURE,
            }
        }
        Err(Failure::Other(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
