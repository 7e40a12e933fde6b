use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use intval_cli::commands::{self, CheckOptions, Outcome};
use serde_json::json;

/// Exact integer-valued valuations on convex bodies of the line and plane.
///
/// Reports are JSON on stdout. Exit status: 0 when every requested check
/// holds, 1 when one fails, 2 on bad input.
#[derive(Parser)]
#[command(name = "intval", version)]
struct Cli {
    /// Append wall-clock time to the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a spec on each body of a JSON list.
    Eval { spec: String, bodies: String },
    /// Admissibility, monotonicity, and randomized falsification.
    Check {
        spec: String,
        #[arg(long)]
        admissible: bool,
        #[arg(long)]
        monotone: bool,
        /// Random nested pairs to try after the cone-failure construction.
        #[arg(long, value_name = "BUDGET")]
        falsify: Option<u32>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Whether two specs define the same valuation.
    Equal { a: String, b: String },
    /// Interval decomposition of a monotone integer-valued valuation of the line.
    Decompose1d {
        spec: String,
        /// Also produce the form with closed intervals only.
        #[arg(long)]
        closed: bool,
    },
    /// Write the product of two planar specs to OUT.
    Product { a: String, b: String, out: String },
    /// Support, singleton values and a convex cover.
    Support {
        spec: String,
        /// Body literal (inline JSON or a file) bounding the arrangement.
        #[arg(long)]
        window: Option<String>,
        /// Write a representation with weights +1 and -1 to this path.
        #[arg(long, value_name = "OUT")]
        canonicalize: Option<String>,
    },
}

fn run(command: &Command) -> Result<Outcome, commands::InputError> {
    match command {
        Command::Eval { spec, bodies } => commands::eval(spec, bodies),
        Command::Check {
            spec,
            admissible,
            monotone,
            falsify,
            seed,
        } => commands::check(
            spec,
            &CheckOptions {
                admissible: *admissible,
                monotone: *monotone,
                falsify: *falsify,
                seed: *seed,
            },
        ),
        Command::Equal { a, b } => commands::equal_cmd(a, b),
        Command::Decompose1d { spec, closed } => commands::decompose1d(spec, *closed),
        Command::Product { a, b, out } => commands::product(a, b, out),
        Command::Support {
            spec,
            window,
            canonicalize,
        } => commands::support_cmd(spec, window.as_deref(), canonicalize.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli.command) {
        Ok(Outcome { mut report, passed }) => {
            if cli.timing {
                report["timing"] = json!({"microseconds": start.elapsed().as_micros().to_string()});
            }
            let text = serde_json::to_string_pretty(&report).expect("json");
            // a closed pipe on stdout is not worth a panic
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
