mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use sclosure::{Error, ErrorClass};

/// Exact s-closures, rational powers and s-multiplicities of monomial ideals.
#[derive(Parser, Debug)]
#[command(name = "sclosure", version)]
pub struct Cli {
    #[command(flatten)]
    pub session: Session,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Session {
    /// Number of variables; inferred from the ideal text when omitted.
    #[arg(long, global = true)]
    pub nvars: Option<usize>,
    /// Comma-separated variable names, e.g. "a,b,c".
    #[arg(long, global = true)]
    pub vars: Option<String>,
    /// Characteristic of the base field.
    #[arg(long, global = true, default_value_t = 2)]
    pub p: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    pub output: Format,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the output to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Plain,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct IdealArg {
    /// Generators, e.g. "x^3, y^3".
    #[arg(long)]
    pub ideal: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Weak s-closure I + I_s.
    Closure {
        #[command(flatten)]
        ideal: IdealArg,
        #[arg(long)]
        s: String,
    },
    /// s-closure: the weak s-closure iterated to a fixed point.
    SClosure {
        #[command(flatten)]
        ideal: IdealArg,
        #[arg(long)]
        s: String,
    },
    IntegralClosure {
        #[command(flatten)]
        ideal: IdealArg,
    },
    /// Rational power I_alpha.
    RationalPower {
        #[command(flatten)]
        ideal: IdealArg,
        #[arg(long)]
        alpha: String,
    },
    /// Mixed power I^(s,q) = I^ceil(sq) + I^[q].
    MixedPower {
        #[command(flatten)]
        ideal: IdealArg,
        #[arg(long)]
        s: String,
        #[arg(long)]
        q: u64,
    },
    /// s-jumping numbers in [from, to).
    JumpingNumbers {
        #[command(flatten)]
        ideal: IdealArg,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Checks wsc_t(I^{n+r}) ⊆ wsc_s(I^n) for n = 1..nmax.
    BsCheck {
        #[command(flatten)]
        ideal: IdealArg,
        #[arg(long)]
        t: String,
        #[arg(long)]
        s: String,
        #[arg(long, default_value_t = 4)]
        nmax: u64,
    },
    /// Least n with wsc_s(I^n) = I^n.
    Collapse {
        #[command(flatten)]
        ideal: IdealArg,
        #[arg(long)]
        s: String,
    },
    /// Lower and upper degree bounds for wsc_s(I).
    DegreeCheck {
        #[command(flatten)]
        ideal: IdealArg,
        #[arg(long)]
        s: String,
    },
    /// Normalized colengths of I^(s,q) for q = p..p^kmax.
    Multiplicity {
        #[command(flatten)]
        ideal: IdealArg,
        #[arg(long)]
        s: String,
        #[arg(long, default_value_t = 4)]
        kmax: u32,
        /// Also compare with I + (g) for a new closure generator g.
        #[arg(long)]
        consistency: bool,
    },
    /// Finite-q evidence for a monomial lying in wsc_s(I).
    Oracle {
        #[command(flatten)]
        ideal: IdealArg,
        #[arg(long)]
        s: String,
        /// The monomial to test, e.g. "x^2*y^2".
        #[arg(long)]
        monomial: String,
        #[arg(long, default_value_t = 4)]
        kmax: u32,
        /// Multiplier box side; defaults to twice the largest generator exponent.
        #[arg(long)]
        cbound: Option<u64>,
    },
    /// Runs structural checks over a seeded random suite.
    Verify {
        /// "all" or one check name.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Number of random ideals.
        #[arg(long, default_value_t = 20)]
        size: usize,
    },
}

/// A failure with its exit code.
pub enum Failure {
    Lib(Error),
    Usage(String),
    /// A property check did not hold; the report has already been printed.
    Suite,
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("SCLOSURE_THREADS").ok().and_then(|v| v.trim().parse::<usize>().ok()) {
        // A second initialization only fails if a pool already exists.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    configure_threads();
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Lib(e)) => {
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(match e.class() {
                ErrorClass::Usage => 1,
                ErrorClass::Precondition => 2,
            })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error[usage]: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Suite) => {
            eprintln!("error[property-failure]: at least one check failed");
            ExitCode::from(3)
        }
        Err(Failure::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error[io]: {e}");
            ExitCode::from(1)
        }
    }
}
