use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod properties;

pub const DEFAULT_SEED: u64 = 20_240_917;

#[derive(Parser, Debug)]
#[command(name = "vtl", version, about = "Exact checks for virtual Temperley-Lieb relations")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Seed for randomized property sampling.
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algebra {
    Vtl,
    Wtl,
    Utl,
    Brauer,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum RepKind {
    Diagram,
    Matrix,
}

/// Representation and parameter flags shared by `verify`, `eval` and `trace`.
#[derive(clap::Args, Debug, Clone)]
pub struct RepArgs {
    /// Loop value λ (`p/q`); for the matrix model this is the local dimension d.
    #[arg(long, visible_alias = "dim", default_value = "2", allow_hyphen_values = true)]
    pub lambda: String,

    /// Coefficient a of ρ = a + bE + cv.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub a: String,

    /// Coefficient b: a rational, `b_plus` or `b_minus`.
    #[arg(long, default_value = "b_plus", allow_hyphen_values = true)]
    pub b: String,

    /// Coefficient c.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub c: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check every relation of an algebra in a representation.
    Verify {
        #[arg(long, value_enum)]
        algebra: Algebra,
        #[arg(long, value_enum, default_value_t = RepKind::Diagram)]
        rep: RepKind,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[command(flatten)]
        params: RepArgs,
        /// Number of seeded samples per property spot-check.
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Roots b± of b² + λb + 1 = 0.
    Solve {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Evaluate a word such as "v1 e2 v1".
    Eval {
        word: String,
        #[arg(long, value_enum, default_value_t = RepKind::Diagram)]
        rep: RepKind,
        /// Strand count; defaults to the smallest that fits the word.
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        params: RepArgs,
    },
    /// Closure trace of a word in the diagram algebra.
    Trace {
        word: String,
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        params: RepArgs,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::run(&cli) {
        Ok(output) => {
            print!("{}", output.text);
            ExitCode::from(output.status)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
