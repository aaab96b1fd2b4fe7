//! `weylgate`: runs the flag-building, product, obstruction and embed-check
//! scenarios and prints a report.
//!
//! Exit codes: 0 when every verdict passes, 2 when one fails, 3 on input or
//! size-limit errors.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use weylgate::scenario::{self, MapSpec, Report};
use weylgate::DEFAULT_SEED;

const EXIT_INPUT: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "weylgate", version, about = "Weyl groups, Galois correspondences and finite flag buildings")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Seed for randomized checks.
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    seed: u64,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Record wall-clock time in `timing_ms` (output is then not reproducible).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Complete flags of F_q^n, Bruhat orbits and the closed lattice.
    FlagBuilding {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u32,
    },
    /// Product boundary B_1 x B_2 with W = (Z/2)^2.
    Product {
        #[arg(long)]
        m1: usize,
        #[arg(long)]
        m2: usize,
    },
    /// Homomorphisms sending the flip to the long element.
    Obstruct {
        /// S<n> or Z2^<r>
        #[arg(long)]
        source: String,
        /// S<n> or Z2^<r>
        #[arg(long)]
        target: String,
    },
    /// Opposition, equivariance and face-map checks for a chamber map.
    EmbedCheck {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u32,
        /// identity | matrix:<row-major entries> | random:<seed>
        #[arg(long)]
        map: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

fn run(cli: &Cli) -> weylgate::Result<Report> {
    match &cli.command {
        Command::FlagBuilding { n, q } => scenario::run_flag_building(*n, *q, cli.seed),
        Command::Product { m1, m2 } => scenario::run_product(*m1, *m2, cli.seed),
        Command::Obstruct { source, target } => scenario::run_obstruction(source, target),
        Command::EmbedCheck { n, q, map } => {
            scenario::run_embed_check(*n, *q, &MapSpec::parse(map)?, cli.seed)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_INPUT) } else { ExitCode::SUCCESS };
        }
    };
    let start = Instant::now();
    let mut report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INPUT);
        }
    };
    if cli.timing {
        report.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    let rendered = match cli.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
        Format::Dot => match report.to_dot() {
            Ok(dot) => dot,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(EXIT_INPUT);
            }
        },
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, rendered) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_INPUT);
            }
        }
        None => print!("{rendered}"),
    }
    ExitCode::from(report.exit_code() as u8)
}
