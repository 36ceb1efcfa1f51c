use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use framed_moduli::localization::Rational;

mod cache;
mod commands;
mod sweep;

use commands::{CliError, Envelope};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(name = "framed-moduli", version, about = "Fixed points, tangent characters and Poincaré polynomials of framed sheaves on Hirzebruch surfaces")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Directory of cached result envelopes.
    #[arg(long, global = true, env = "FRAMED_MODULI_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Report wall-clock time on stderr.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OrderingChoice {
    /// t1 + t2 first, then e1 > ... > er.
    Main,
    /// t2 >> e1 > ... > er >> t1.
    Ale,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SeriesMethod {
    Closed,
    Direct,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum IndexMethod {
    Closed,
    Characters,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SweepMode {
    Poincare,
    Check,
    Crosscheck,
}

#[derive(Args, Debug, Clone)]
pub struct ModuliArgs {
    /// Hirzebruch index p ≥ 1.
    #[arg(long)]
    pub p: u32,
    /// Rank r ≥ 1.
    #[arg(long)]
    pub r: usize,
    /// First Chern class coefficient: c1 = kC.
    #[arg(long, allow_negative_numbers = true)]
    pub k: i64,
    /// Discriminant, "a" or "a/b".
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub n: Rational,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List torus fixed points.
    FixedPoints {
        #[command(flatten)]
        moduli: ModuliArgs,
        /// List fixed components of the one-parameter subgroup with indexes.
        #[arg(long)]
        reduced: bool,
    },
    /// Tangent characters at fixed points.
    Tangent {
        #[command(flatten)]
        moduli: ModuliArgs,
        /// Use reduced fixed points.
        #[arg(long)]
        reduced: bool,
        /// Fixed-point records to evaluate ("-" for stdin) instead of enumerating.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Ordering used to count negative weights.
        #[arg(long, value_enum, default_value_t = OrderingChoice::Main)]
        ordering: OrderingChoice,
    },
    /// Poincaré polynomial.
    Poincare {
        #[command(flatten)]
        moduli: ModuliArgs,
        #[arg(long, value_enum, default_value_t = IndexMethod::Closed)]
        method: IndexMethod,
    },
    /// Rank-2, k = 0 generating series.
    Series {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 5)]
        max_order: u32,
        #[arg(long, value_enum, default_value_t = SeriesMethod::Closed)]
        method: SeriesMethod,
    },
    /// Rank-1 generating series (Hilbert schemes of points).
    Hilbert {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 5)]
        max_order: u32,
    },
    /// Poincaré polynomial on the A1 ALE space from 2-colored diagrams.
    Ale {
        #[arg(long)]
        r: usize,
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        n: Rational,
        #[arg(long, value_enum, default_value_t = OrderingChoice::Ale)]
        ordering: OrderingChoice,
    },
    /// Nonemptiness test.
    Check {
        #[command(flatten)]
        moduli: ModuliArgs,
    },
    /// Evaluate a grid of parameters.
    Sweep {
        #[arg(long, value_enum)]
        mode: SweepMode,
        /// Values of p: "1,2,3" or "1..3".
        #[arg(long, default_value = "")]
        p: String,
        #[arg(long, default_value = "")]
        r: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        k: String,
        /// Values of n: comma list of rationals or an integer range "a..b".
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        n: String,
    },
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.trim()
        .parse::<Rational>()
        .map_err(|e| format!("expected an integer or a/b rational, got {s:?}: {e}"))
}

fn render(env: &Envelope, format: Format) -> String {
    match format {
        Format::Json => {
            let mut text = serde_json::to_string_pretty(&env.json()).expect("envelope serializes");
            text.push('\n');
            text
        }
        Format::Text => {
            let mut text = env.text.clone();
            if !text.is_empty() && !text.ends_with('\n') {
                text.push('\n');
            }
            text
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: cannot start worker pool: {e}");
            return ExitCode::from(3);
        }
    };
    let result = pool.install(|| commands::run(&cli));
    if cli.timing {
        eprintln!("elapsed: {:.3} ms", start.elapsed().as_secs_f64() * 1e3);
    }
    match result {
        Ok(env) => {
            let out = render(&env, cli.format);
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(3);
            }
            ExitCode::SUCCESS
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
    }
}
