mod commands;
mod expr;
mod problem;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::{CmdResult, Output};
use problem::{LoadError, Problem};

/// Exact Zariski decompositions, psef thresholds and Green's functions of
/// divisorial valuations on surfaces.
#[derive(Parser)]
#[command(name = "zariski", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Problem file (TOML).
    #[arg(long)]
    input: PathBuf,
}

#[derive(Args)]
struct CsvOut {
    /// Also write machine-readable CSV to this path.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the lattice declarations.
    Validate {
        #[command(flatten)]
        input: Input,
    },
    /// Zariski decomposition of a class.
    Decompose {
        #[command(flatten)]
        input: Input,
        /// Class name or linear expression, e.g. `H + E`.
        #[arg(long)]
        class: String,
    },
    /// Pseudoeffective threshold of `omega - lambda D`.
    Threshold {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        omega: String,
        #[arg(long)]
        direction: String,
    },
    /// Piecewise linear family `lambda -> N(omega - lambda D)`.
    Family {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        omega: String,
        #[arg(long)]
        direction: String,
        #[command(flatten)]
        csv: CsvOut,
    },
    /// Green's function of the file's valuation set.
    Green {
        #[command(flatten)]
        input: Input,
        /// Defaults to the class named `omega`, else the ample class.
        #[arg(long)]
        omega: Option<String>,
        #[command(flatten)]
        csv: CsvOut,
        /// Comma-separated scales for the evaluation profile.
        #[arg(long)]
        grid: Option<String>,
    },
    /// Evaluate the Green's function at `t * ord_E`.
    Eval {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        omega: Option<String>,
        #[arg(long)]
        divisor: String,
        #[arg(long)]
        t: String,
    },
    /// Green's function of a flag `Z < S < X`.
    Flag {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        csv: CsvOut,
        #[arg(long)]
        grid: Option<String>,
    },
    /// Green's function of points on a curve.
    Curve {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        csv: CsvOut,
        #[arg(long)]
        grid: Option<String>,
    },
    /// Run the built-in reference instances.
    Selftest,
}

fn load(input: &Input) -> Result<Problem, LoadError> {
    let text = fs::read_to_string(&input.input)
        .map_err(|e| LoadError::Parse(format!("{}: {e}", input.input.display())))?;
    Problem::parse(&text)
}

fn run(command: Command) -> (CmdResult, Option<PathBuf>) {
    match command {
        Command::Validate { input } => (load(&input).and_then(|p| commands::validate(&p)), None),
        Command::Decompose { input, class } => (
            load(&input).and_then(|p| commands::decompose(&p, &class)),
            None,
        ),
        Command::Threshold {
            input,
            omega,
            direction,
        } => (
            load(&input).and_then(|p| commands::threshold(&p, &omega, &direction)),
            None,
        ),
        Command::Family {
            input,
            omega,
            direction,
            csv,
        } => (
            load(&input).and_then(|p| commands::family(&p, &omega, &direction)),
            csv.csv,
        ),
        Command::Green {
            input,
            omega,
            csv,
            grid,
        } => (
            load(&input).and_then(|p| commands::green(&p, omega.as_deref(), grid.as_deref())),
            csv.csv,
        ),
        Command::Eval {
            input,
            omega,
            divisor,
            t,
        } => (
            load(&input).and_then(|p| commands::eval(&p, omega.as_deref(), &divisor, &t)),
            None,
        ),
        Command::Flag { input, csv, grid } => (
            load(&input).and_then(|p| commands::flag(&p, grid.as_deref())),
            csv.csv,
        ),
        Command::Curve { input, csv, grid } => (
            load(&input).and_then(|p| commands::curve(&p, grid.as_deref())),
            csv.csv,
        ),
        Command::Selftest => unreachable!("handled in main"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Command::Selftest = cli.command {
        let (text, ok) = commands::selftest();
        print!("{text}");
        return if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE };
    }
    let (result, csv_path) = run(cli.command);
    match result {
        Ok(Output { text, csv, failure }) => {
            print!("{text}");
            if let (Some(path), Some(csv)) = (csv_path, csv) {
                if let Err(e) = fs::write(&path, csv) {
                    eprintln!("E100: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            match failure {
                Some(e) => {
                    eprintln!("E{}: {e}", e.code());
                    ExitCode::FAILURE
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(LoadError::Engine(e)) => {
            eprintln!("E{}: {e}", e.code());
            ExitCode::FAILURE
        }
        Err(LoadError::Parse(msg)) => {
            eprintln!("E100: {msg}");
            ExitCode::from(2)
        }
    }
}
