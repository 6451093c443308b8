use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;

use commands::{Failure, Output};

/// Siegel upper half space: symplectic checks, Möbius actions, distances and property suites.
#[derive(Debug, Parser)]
#[command(name = "siegel", version)]
struct Cli {
    /// Uniform tolerance for symmetry, definiteness and equality tests.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Is a 2n×2n matrix symplectic, antisymplectic or neither?
    Check {
        /// Symplectic document, or `-` for stdin.
        input: PathBuf,
    },
    /// Sufficient conditions for where the action sends the upper space.
    Classify { input: PathBuf },
    /// Apply Φ_S(Z) = (AZ + B)(CZ + D)⁻¹; the result document goes to stdout.
    Act { s: PathBuf, z: PathBuf },
    /// Closed-form distance between two points.
    Dist {
        z1: PathBuf,
        z2: PathBuf,
        /// Points are in the lower half space.
        #[arg(long)]
        lower: bool,
        /// Also report the length of the straight segment sampled at k steps.
        #[arg(long, value_name = "K")]
        path: Option<usize>,
    },
    /// Run a seeded property suite.
    Propcheck {
        /// Suite name, or `list`.
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        trials: Option<usize>,
        /// Restrict to a single dimension.
        #[arg(long)]
        n: Option<usize>,
        /// Write the full report here (`-` for stdout).
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = commands::tolerance(cli.tol).and_then(|tol| match &cli.command {
        Command::Check { input } => commands::check(input, &tol),
        Command::Classify { input } => commands::classify(input, &tol),
        Command::Act { s, z } => commands::act(s, z, &tol),
        Command::Dist { z1, z2, lower, path } => commands::dist(z1, z2, *lower, *path, &tol),
        Command::Propcheck {
            suite,
            seed,
            trials,
            n,
            json,
        } => commands::propcheck(suite, *seed, *trials, *n, json.as_deref(), &tol),
    });
    match result {
        Ok(Output { stdout, stderr, code }) => {
            print!("{stdout}");
            eprint!("{stderr}");
            ExitCode::from(code)
        }
        Err(Failure { message, code }) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
