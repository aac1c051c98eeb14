use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod format;

#[derive(Parser)]
#[command(name = "tpass", version, about = "Equilibria of additively-separable sum games")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Row-bound program; p is read from its multipliers.
    Lp1,
    /// Joint program over (p, q, alpha, beta).
    Prop3,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Compute one equilibrium of a game file.
    Solve {
        path: PathBuf,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Method::Lp1)]
        method: Method,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check a strategy pair by best response and both LP certificates.
    Verify {
        path: PathBuf,
        /// Row strategy as a comma list, e.g. 1,0 or 1/3,2/3
        #[arg(long = "p", allow_hyphen_values = true)]
        p: String,
        /// Column strategy as a comma list
        #[arg(long = "q", allow_hyphen_values = true)]
        q: String,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Test a bimatrix game for separable payoff sums and extract (A, pi, rho).
    Decompose {
        path: PathBuf,
        /// Absolute tetrad tolerance [default: 1e-9 * max(1, max |B + C|)]
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List all equilibria found by support enumeration (games up to 5x5).
    Enumerate {
        path: PathBuf,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Print a built-in example game and its analysis.
    Demo {
        /// Demo name; `pd` is the prisoner's dilemma
        name: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Write a random game file with entries uniform on [lo, hi].
    Random {
        #[arg(short = 'm')]
        m: usize,
        #[arg(short = 'n')]
        n: usize,
        #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
        lo: f64,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        hi: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output path; stdout when omitted
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve {
            path,
            tol,
            method,
            format,
        } => commands::solve(&path, tol, method, format),
        Command::Verify { path, p, q, tol } => commands::verify(&path, &p, &q, tol),
        Command::Decompose { path, tol, format } => commands::decompose(&path, tol, format),
        Command::Enumerate { path, tol } => commands::enumerate(&path, tol),
        Command::Demo { name, format } => commands::demo(&name, format),
        Command::Random {
            m,
            n,
            lo,
            hi,
            seed,
            output,
        } => commands::random(m, n, lo, hi, seed, output.as_deref()),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
