//! Command layer behind the `qw2d` binary.
//!
//! Arguments are parsed with clap into [`Cli`], validated into a [`RunConfig`]
//! before any computation, then executed by [`run`]. Exit codes: 0 success,
//! 2 precondition or guard failure, 3 a pass/fail check failed, 1 I/O.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::coin::{build_walk_operators, coin_hadamard, coin_identity, coin_random, make_coin, Coin, CoinJson};
use crate::error::{Error, Result};
use crate::format::Sci;
use crate::fourier::{evolve_fourier, invert, transform};
use crate::ito::sweep::{run_suites, sweep_conjecture6, LabeledCoin, Suite, DEFAULT_STATE_SEED};
use crate::ito::{lookup, path_integral_sigma, suite_passed, write_reports, IdentityReport, LatticeFunction};
use crate::linalg::C64;
use crate::position::{distribution, evolve, init_state, LatticeState, Qubit4};

pub const EXIT_IO: u8 = 1;
pub const EXIT_PRECONDITION: u8 = 2;
pub const EXIT_CHECK_FAILED: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "qw2d",
    version,
    about = "Two-dimensional coined quantum walk and discrete Itô identity checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evolve a walker and write its position distribution.
    Dist(DistArgs),
    /// Run verification suites and write a JSON report array.
    Verify(VerifyArgs),
    /// Sweep the conjectured two-index formula and write its counterexamples.
    Conjecture6(Conjecture6Args),
    /// Write the path-sum operator of a registry function as JSON.
    Sigma(SigmaArgs),
}

#[derive(Debug, Args)]
pub struct DistArgs {
    /// hadamard | identity | seed:N | a_re,a_im,b_re,b_im,delta_re,delta_im
    #[arg(long, default_value = "hadamard")]
    pub coin: String,
    /// Number of steps.
    #[arg(long, allow_negative_numbers = true)]
    pub n: i64,
    /// Initial chirality state as 8 reals: re/im pairs for L, R, D, U.
    #[arg(long, default_value = "1,0,0,0,0,0,0,0", allow_hyphen_values = true)]
    pub init: String,
    /// Evolve in momentum space on an M×M grid and invert, instead of stepping in position space.
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long, default_value = "distribution.csv")]
    pub output: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// `x,y,p` rows.
    Csv,
    /// Amplitude rows `{x, y, re:[4], im:[4]}`.
    Json,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// prop2 | thm3 | tanaka | cor5 | lemma1 | xi-oracle | classical | all
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long, default_value = "hadamard")]
    pub coin: String,
    /// Override the largest path length of the selected suites.
    #[arg(long, allow_negative_numbers = true)]
    pub n: Option<i64>,
    /// Seed of the initial state used by the evolution checks.
    #[arg(long, default_value_t = DEFAULT_STATE_SEED)]
    pub state_seed: u64,
    #[arg(long, default_value = "report.json")]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct Conjecture6Args {
    #[arg(long, default_value_t = 4, allow_negative_numbers = true)]
    pub n: i64,
    /// Second path length; defaults to `n`.
    #[arg(long = "n-prime", allow_negative_numbers = true)]
    pub n_prime: Option<i64>,
    #[arg(long, default_value = "conjecture6.json")]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct SigmaArgs {
    /// Registry function name, e.g. `one`, `x`, `exp_pi3_2`.
    #[arg(long)]
    pub function: String,
    #[arg(long, default_value = "hadamard")]
    pub coin: String,
    #[arg(long, allow_negative_numbers = true)]
    pub n: i64,
    /// Second path length; defaults to `n`.
    #[arg(long = "n-prime", allow_negative_numbers = true)]
    pub n_prime: Option<i64>,
    #[arg(long, default_value = "sigma.json")]
    pub output: PathBuf,
}

/// A coin given on the command line.
#[derive(Clone, Debug, PartialEq)]
pub enum CoinSpec {
    Hadamard,
    Identity,
    Seed(u64),
    Explicit { a: C64, b: C64, delta: C64 },
}

impl CoinSpec {
    pub fn build(&self) -> Result<Coin> {
        match *self {
            CoinSpec::Hadamard => Ok(coin_hadamard()),
            CoinSpec::Identity => Ok(coin_identity()),
            CoinSpec::Seed(seed) => Ok(coin_random(seed)),
            CoinSpec::Explicit { a, b, delta } => make_coin(a, b, delta),
        }
    }

    pub fn label(&self) -> String {
        match self {
            CoinSpec::Hadamard => "hadamard".into(),
            CoinSpec::Identity => "identity".into(),
            CoinSpec::Seed(seed) => format!("seed:{seed}"),
            CoinSpec::Explicit { .. } => "explicit".into(),
        }
    }
}

impl FromStr for CoinSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hadamard" => return Ok(CoinSpec::Hadamard),
            "identity" => return Ok(CoinSpec::Identity),
            _ => {}
        }
        if let Some(seed) = s.strip_prefix("seed:") {
            return seed
                .parse()
                .map(CoinSpec::Seed)
                .map_err(|_| Error::Config(format!("coin seed {seed:?} is not a non-negative integer")));
        }
        let parts = parse_reals(s, "coin")?;
        if parts.len() != 6 {
            return Err(Error::Config(format!(
                "coin {s:?}: expected hadamard, identity, seed:N or six reals a_re,a_im,b_re,b_im,delta_re,delta_im"
            )));
        }
        Ok(CoinSpec::Explicit {
            a: C64::new(parts[0], parts[1]),
            b: C64::new(parts[2], parts[3]),
            delta: C64::new(parts[4], parts[5]),
        })
    }
}

fn parse_reals(s: &str, what: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::Config(format!("{what}: {t:?} is not a finite real number")))
        })
        .collect()
}

fn non_negative(name: &str, v: i64) -> Result<usize> {
    usize::try_from(v).map_err(|_| Error::Config(format!("{name} must be non-negative, got {v}")))
}

/// A validated command, ready to run.
#[derive(Clone, Debug)]
pub enum RunConfig {
    Dist {
        coin: LabeledCoin,
        n: usize,
        init: Qubit4,
        grid: Option<usize>,
        format: Format,
        output: PathBuf,
    },
    Verify {
        suites: Vec<Suite>,
        coin: LabeledCoin,
        max_n: Option<usize>,
        state_seed: u64,
        output: PathBuf,
    },
    Conjecture6 {
        n: usize,
        n_prime: usize,
        output: PathBuf,
    },
    Sigma {
        function: LatticeFunction,
        coin: LabeledCoin,
        n: usize,
        n_prime: usize,
        output: PathBuf,
    },
}

fn labeled_coin(spec: &str) -> Result<LabeledCoin> {
    let spec: CoinSpec = spec.parse()?;
    Ok(LabeledCoin::new(spec.label(), spec.build()?))
}

impl RunConfig {
    /// Checks every precondition the command will rely on.
    pub fn from_command(command: Command) -> Result<RunConfig> {
        match command {
            Command::Dist(a) => {
                let n = non_negative("n", a.n)?;
                let init = Qubit4::from_reals(&parse_reals(&a.init, "init")?)?;
                if let Some(size) = a.grid {
                    crate::fourier::check_grid(size, n)?;
                }
                Ok(RunConfig::Dist {
                    coin: labeled_coin(&a.coin)?,
                    n,
                    init,
                    grid: a.grid,
                    format: a.format,
                    output: a.output,
                })
            }
            Command::Verify(a) => Ok(RunConfig::Verify {
                suites: Suite::parse_selection(&a.suite)?,
                coin: labeled_coin(&a.coin)?,
                max_n: a.n.map(|n| non_negative("n", n)).transpose()?,
                state_seed: a.state_seed,
                output: a.output,
            }),
            Command::Conjecture6(a) => {
                let n = non_negative("n", a.n)?;
                let n_prime = non_negative("n'", a.n_prime.unwrap_or(a.n))?;
                Ok(RunConfig::Conjecture6 {
                    n,
                    n_prime,
                    output: a.output,
                })
            }
            Command::Sigma(a) => {
                let n = non_negative("n", a.n)?;
                let n_prime = non_negative("n'", a.n_prime.unwrap_or(a.n))?;
                crate::paths::check_pair_guard(n, n_prime)?;
                Ok(RunConfig::Sigma {
                    function: lookup(&a.function)?,
                    coin: labeled_coin(&a.coin)?,
                    n,
                    n_prime,
                    output: a.output,
                })
            }
        }
    }
}

/// What a successful run produced.
#[derive(Debug)]
pub enum Outcome {
    Done,
    /// The suite ran to completion but some pass/fail check failed.
    ChecksFailed {
        failed: usize,
    },
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

fn finish(mut out: BufWriter<File>) -> Result<()> {
    out.flush()?;
    Ok(())
}

/// Evolves the walker and writes the distribution (CSV) or amplitudes (JSON).
/// Prints the moment summary as JSON to `stdout`.
pub fn cmd_dist(
    coin: &Coin,
    n: usize,
    init: &Qubit4,
    grid: Option<usize>,
    format: Format,
    output: &Path,
    stdout: &mut dyn Write,
) -> Result<()> {
    let start = init_state(init);
    let state: LatticeState = match grid {
        Some(size) => invert(&evolve_fourier(&transform(&start, size)?, coin, n))?,
        None => evolve(&start, &build_walk_operators(coin), n),
    };
    let dist = distribution(&state);
    let mut out = create(output)?;
    match format {
        Format::Csv => dist.write_csv(&mut out)?,
        Format::Json => state.write_amplitudes_json(&mut out)?,
    }
    finish(out)?;
    serde_json::to_writer(&mut *stdout, &dist.summary())?;
    writeln!(stdout)?;
    Ok(())
}

/// Runs the suites and writes the report array.
pub fn cmd_verify(
    suites: &[Suite],
    coin: &LabeledCoin,
    max_n: Option<usize>,
    state_seed: u64,
    output: &Path,
    stdout: &mut dyn Write,
) -> Result<Vec<IdentityReport>> {
    let reports = run_suites(suites, coin, max_n, state_seed)?;
    let mut out = create(output)?;
    write_reports(&reports, &mut out)?;
    finish(out)?;
    for r in &reports {
        let verdict = serde_json::to_value(r.verdict)?;
        writeln!(
            stdout,
            "{:<22} {:<16} residual {:.3e}",
            r.check_name,
            verdict.as_str().unwrap_or_default(),
            r.residual
        )?;
    }
    Ok(reports)
}

/// Runs the conjecture sweep and writes its single report as a JSON array.
pub fn cmd_conjecture6(n: usize, n_prime: usize, output: &Path, stdout: &mut dyn Write) -> Result<IdentityReport> {
    let report = sweep_conjecture6(n, n_prime)?;
    let mut out = create(output)?;
    write_reports(std::slice::from_ref(&report), &mut out)?;
    finish(out)?;
    writeln!(
        stdout,
        "conjecture6 n={n} n'={n_prime}: {} counterexamples, max residual {:.3e}",
        report.counterexamples.len(),
        report.residual
    )?;
    Ok(report)
}

#[derive(Serialize)]
struct SigmaJson<'a> {
    function: &'a str,
    coin: CoinJson,
    n: usize,
    n_prime: usize,
    re: Vec<Sci>,
    im: Vec<Sci>,
}

/// Writes `σ_{n,n′}(f)` as `{function, coin, n, n_prime, re:[16], im:[16]}`.
pub fn cmd_sigma(f: &LatticeFunction, coin: &Coin, n: usize, n_prime: usize, output: &Path) -> Result<()> {
    let sigma = path_integral_sigma(f, coin, n, n_prime)?;
    let json = SigmaJson {
        function: f.name(),
        coin: coin.to_json(),
        n,
        n_prime,
        re: sigma.entries().iter().map(|z| Sci(z.re)).collect(),
        im: sigma.entries().iter().map(|z| Sci(z.im)).collect(),
    };
    let mut out = create(output)?;
    serde_json::to_writer_pretty(&mut out, &json)?;
    writeln!(out)?;
    finish(out)
}

/// Executes a validated configuration.
pub fn run(config: &RunConfig, stdout: &mut dyn Write) -> Result<Outcome> {
    match config {
        RunConfig::Dist {
            coin,
            n,
            init,
            grid,
            format,
            output,
        } => {
            cmd_dist(&coin.coin, *n, init, *grid, *format, output, stdout)?;
        }
        RunConfig::Verify {
            suites,
            coin,
            max_n,
            state_seed,
            output,
        } => {
            let reports = cmd_verify(suites, coin, *max_n, *state_seed, output, stdout)?;
            if !suite_passed(&reports) {
                let failed = reports.iter().filter(|r| r.failed()).count();
                return Ok(Outcome::ChecksFailed { failed });
            }
        }
        RunConfig::Conjecture6 { n, n_prime, output } => {
            cmd_conjecture6(*n, *n_prime, output, stdout)?;
        }
        RunConfig::Sigma {
            function,
            coin,
            n,
            n_prime,
            output,
        } => {
            cmd_sigma(function, &coin.coin, *n, *n_prime, output)?;
        }
    }
    Ok(Outcome::Done)
}

fn error_exit(err: &Error) -> ExitCode {
    eprintln!("error: {err}");
    ExitCode::from(if err.is_precondition() {
        EXIT_PRECONDITION
    } else {
        EXIT_IO
    })
}

/// Validates and runs a parsed command line, mapping the result to an exit code.
pub fn main_with(cli: Cli) -> ExitCode {
    let config = match RunConfig::from_command(cli.command) {
        Ok(c) => c,
        Err(e) => return error_exit(&e),
    };
    let stdout = std::io::stdout();
    match run(&config, &mut stdout.lock()) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::ChecksFailed { failed }) => {
            eprintln!("error: {failed} pass/fail check(s) failed");
            ExitCode::from(EXIT_CHECK_FAILED)
        }
        Err(e) => error_exit(&e),
    }
}
