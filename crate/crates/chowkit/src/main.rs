use std::path::PathBuf;
use std::process::ExitCode;

use chowkit::{run, CliError, Command, Options, PolymatroidOp};
use clap::{Parser, Subcommand, ValueEnum};

/// Exact resultants, Chow forms, Hurwitz forms and polymatroid calculus.
#[derive(Parser)]
#[command(name = "chowkit", version)]
struct Cli {
    /// Seed for every random choice (overrides the file's `seed`).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Retry budget for Monte Carlo decisions (overrides the file's `retries`).
    #[arg(long, global = true)]
    retries: Option<usize>,
    /// Emit metadata as one JSON object on standard error.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Chow form of a projective variety.
    Chow {
        file: PathBuf,
        /// Print the degree and size bounds instead of computing.
        #[arg(long)]
        bounds_only: bool,
    },
    /// Chow form of a complete intersection (exactly n - r equations).
    ChowCi { file: PathBuf },
    /// Hurwitz form of a complete intersection of degree at least 2.
    Hurwitz {
        file: PathBuf,
        #[arg(long)]
        bounds_only: bool,
    },
    /// Multigraded Chow form of the format given in the file.
    Multichow {
        file: PathBuf,
        #[arg(long)]
        bounds_only: bool,
    },
    /// Support of a multiprojective variety.
    Support {
        file: PathBuf,
        /// Projection dimensions by bitmask, e.g. `0,1,1,2`.
        #[arg(long, value_delimiter = ',')]
        dim_table: Option<Vec<usize>>,
    },
    /// Support, multidegrees, Chow and Hurwitz hypersurface formats.
    Formats {
        file: PathBuf,
        #[arg(long, value_delimiter = ',')]
        dim_table: Option<Vec<usize>>,
    },
    /// Resultant eliminating the variable blocks (coefficients in `params`).
    Resultant { file: PathBuf },
    /// Determinant of the matrix given by `row` lines.
    Det { file: PathBuf },
    /// Chow (or, with `format`, multigraded Chow) bounds.
    Bounds { file: PathBuf },
    /// Polymatroid operations on a JSON table `{"n": [...], "delta": [...]}`.
    Polymatroid { op: Op, file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Check,
    Dual,
    Truncate,
    Elongate,
    Bases,
    Points,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut opts = Options { seed: cli.seed, retries: cli.retries, ..Options::default() };
    let (command, file) = match cli.command {
        Cmd::Chow { file, bounds_only } => {
            opts.bounds_only = bounds_only;
            (Command::Chow, file)
        }
        Cmd::ChowCi { file } => (Command::ChowCi, file),
        Cmd::Hurwitz { file, bounds_only } => {
            opts.bounds_only = bounds_only;
            (Command::Hurwitz, file)
        }
        Cmd::Multichow { file, bounds_only } => {
            opts.bounds_only = bounds_only;
            (Command::Multichow, file)
        }
        Cmd::Support { file, dim_table } => {
            opts.dim_table = dim_table;
            (Command::Support, file)
        }
        Cmd::Formats { file, dim_table } => {
            opts.dim_table = dim_table;
            (Command::Formats, file)
        }
        Cmd::Resultant { file } => (Command::Resultant, file),
        Cmd::Det { file } => (Command::Det, file),
        Cmd::Bounds { file } => (Command::Bounds, file),
        Cmd::Polymatroid { op, file } => {
            let op = match op {
                Op::Check => PolymatroidOp::Check,
                Op::Dual => PolymatroidOp::Dual,
                Op::Truncate => PolymatroidOp::Truncate,
                Op::Elongate => PolymatroidOp::Elongate,
                Op::Bases => PolymatroidOp::Bases,
                Op::Points => PolymatroidOp::Points,
            };
            (Command::Polymatroid(op), file)
        }
    };
    let result = std::fs::read_to_string(&file)
        .map_err(|e| CliError::Input(format!("{}: {e}", file.display())))
        .and_then(|text| run(command, &text, &opts));
    match result {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            if cli.json {
                eprintln!("{}", outcome.meta.to_json());
            } else {
                eprint!("{}", outcome.meta.to_text());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("chowkit: {}: {e}", file.display());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
