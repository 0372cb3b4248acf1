//! Command-line front end for `lattice-opoly`.

mod commands;
mod input;
mod verify;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lattice_opoly::GaussianRational;

/// Exact classification, recurrences, moments and atomic solutions of Pearson pairs on
/// linear lattices.
#[derive(Debug, Parser)]
#[command(name = "lattice-opoly", version)]
struct Cli {
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Depth {
    /// Number of coefficients or moments to compute.
    #[arg(short = 'n', long = "nmax", env = "LATTICE_OPOLY_NMAX_DEFAULT", default_value_t = 32)]
    nmax: usize,
}

#[derive(Debug, Subcommand)]
#[allow(clippy::large_enum_variant)]
enum Command {
    /// Reduce a pair to its canonical class.
    Classify {
        /// Pair or classification JSON; `-` reads standard input.
        input: PathBuf,
    },
    /// Recurrence coefficients and the regularity report.
    Recurrence {
        input: PathBuf,
        #[command(flatten)]
        depth: Depth,
        /// Keep the slope symbolic and report `b_n` as polynomials in `t = c²`.
        #[arg(long)]
        symbolic: bool,
    },
    /// Moments as polynomials in `t = c²`.
    Moments {
        input: PathBuf,
        #[command(flatten)]
        depth: Depth,
    },
    /// Moments of the `c → 0` limit and the continuous Pearson residual.
    Limit {
        input: PathBuf,
        #[command(flatten)]
        depth: Depth,
    },
    /// Atomic representation on the unit lattice.
    Atoms {
        input: PathBuf,
        /// Maximum number of steps along each string.
        #[arg(long, default_value_t = lattice_opoly::atomic::DEFAULT_MAX_STEPS)]
        max_steps: usize,
    },
    /// Non-regularity points in the slope plane, as CSV.
    Locus(LocusArgs),
    /// Runs the moment, Hankel and residual oracles.
    Verify {
        /// Pair files to check.
        inputs: Vec<PathBuf>,
        /// Also check this many random admissible pairs.
        #[arg(long, default_value_t = 0)]
        random: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        depth: Depth,
    },
    /// Imports the backward-difference parameters `e, f, g, ε, γ`.
    Kls {
        #[arg(long, value_parser = parse_scalar, default_value = "0", allow_hyphen_values = true)]
        e: GaussianRational,
        #[arg(long, value_parser = parse_scalar, default_value = "0", allow_hyphen_values = true)]
        f: GaussianRational,
        #[arg(long, value_parser = parse_scalar, default_value = "0", allow_hyphen_values = true)]
        g: GaussianRational,
        #[arg(long, value_parser = parse_scalar, default_value = "0", allow_hyphen_values = true)]
        epsilon: GaussianRational,
        #[arg(long, value_parser = parse_scalar, default_value = "0", allow_hyphen_values = true)]
        gamma: GaussianRational,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Hermite,
    Laguerre,
    Bessel,
    Jacobi,
}

#[derive(Debug, Args)]
struct LocusArgs {
    /// Pair JSON; required unless `--family` is given.
    input: Option<PathBuf>,
    #[arg(long, value_enum, conflicts_with = "input")]
    family: Option<Family>,
    #[arg(long, value_parser = parse_scalar, default_value = "0", allow_hyphen_values = true)]
    alpha: GaussianRational,
    #[arg(long, value_parser = parse_scalar, default_value = "0", allow_hyphen_values = true)]
    beta: GaussianRational,
    #[arg(long, default_value_t = 1)]
    nmin: usize,
    #[arg(long, env = "LATTICE_OPOLY_NMAX_DEFAULT", default_value_t = 32)]
    nmax: usize,
}

fn parse_scalar(text: &str) -> Result<GaussianRational, String> {
    GaussianRational::parse(text).map_err(|e| e.to_string())
}

/// Command output, flagged when it reports a mathematical finding rather than a clean result.
pub struct Outcome {
    pub body: String,
    pub finding: bool,
}

fn run(cli: &Cli) -> Result<Outcome, String> {
    match &cli.command {
        Command::Classify { input } => commands::classify(&input::load_pair(input)?),
        Command::Recurrence { input, depth, symbolic } => {
            commands::recurrence(&input::load_pair(input)?, depth.nmax, *symbolic)
        }
        Command::Moments { input, depth } => commands::moments(&input::load_pair(input)?, depth.nmax),
        Command::Limit { input, depth } => commands::limit(&input::load_pair(input)?, depth.nmax),
        Command::Atoms { input, max_steps } => commands::atoms(&input::load_pair(input)?, *max_steps),
        Command::Locus(args) => {
            let constants = match (&args.input, args.family) {
                (Some(path), _) => input::constants_of(&input::load_pair(path)?)?,
                (None, Some(family)) => commands::family(family, &args.alpha, &args.beta).constants(),
                (None, None) => return Err("locus needs an input pair or --family".into()),
            };
            commands::locus(&constants, args.nmin, args.nmax)
        }
        Command::Verify { inputs, random, seed, depth } => {
            let mut pairs = Vec::new();
            for path in inputs {
                pairs.push((path.display().to_string(), input::load_pair(path)?));
            }
            verify::run(pairs, *random, *seed, depth.nmax)
        }
        Command::Kls { e, f, g, epsilon, gamma } => commands::kls(lattice_opoly::pearson::KlsParameters {
            e: e.clone(),
            f: f.clone(),
            g: g.clone(),
            epsilon: epsilon.clone(),
            gamma: gamma.clone(),
        }),
    }
}

fn emit(cli: &Cli, body: &str) -> Result<(), String> {
    match &cli.out {
        Some(path) => std::fs::write(path, body).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout().write_all(body.as_bytes()).map_err(|e| e.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::FAILURE } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli).and_then(|outcome| emit(&cli, &outcome.body).map(|_| outcome.finding)) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(2),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::FAILURE
        }
    }
}
