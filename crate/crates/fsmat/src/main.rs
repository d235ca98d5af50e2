//! Thin CLI over the library commands. Reads input files, dispatches to
//! [`fsmat::commands`], prints text or JSON, and maps errors to exit codes:
//! 0 success, 2 parse/validation error, 3 search budget exhausted.

use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use fsmat::commands::{
    cmd_compress, cmd_contributions, cmd_exponents, cmd_fs_search, cmd_pipeline, cmd_shatter,
    parse_k_range, CommandError, CommandOutput, CompressTarget, ExponentsScope,
};
use fsmat::exponents::{RecurrenceMode, DEFAULT_ITERATION_TOL};
use fsmat::extremal::{SearchError, SearchOptions};

#[derive(Parser)]
#[command(
    name = "fsmat",
    version,
    about = "Simple (0,1)-matrix toolkit: compressions, shattering, contributions, exact search, exponent recurrences"
)]
struct Cli {
    /// Emit the JSON report instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized components (echoed in reports)
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (used by fs-search)
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply one compression C_i or iterate all of them to the down family
    Compress {
        /// Family file (m=<int> header, one set per line)
        family: PathBuf,
        /// Element index to compress, or "all" for full down-closure
        #[arg(long)]
        element: String,
    },
    /// List shattered k-sets and check the forcing threshold
    Shatter {
        family: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Matrix -> family -> down family -> shattered sets -> contributions
    Pipeline {
        /// Matrix file (m=<int> n=<int> header, one 0/1 row per line)
        matrix: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Count contribution windows of a simple matrix
    Contributions {
        matrix: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Exact maximum width of a simple matrix avoiding a pattern
    FsSearch {
        /// Number of matrix rows
        #[arg(long)]
        m: usize,
        /// Pattern file (k=<int> l=<int> header)
        #[arg(long)]
        pattern: PathBuf,
        /// Node budget for the search tree
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
        /// Prune row-permutation duplicates (patterns with equal rows only)
        #[arg(long)]
        canonicalize: bool,
    },
    /// Iterate an exponent recurrence to its fixed point
    Exponents {
        /// Single k to solve
        #[arg(long)]
        k: Option<usize>,
        /// Recurrence: k2, quadratic, or exact
        #[arg(long, default_value = "exact")]
        mode: String,
        /// Convergence tolerance on successive gamma values
        #[arg(long, default_value_t = DEFAULT_ITERATION_TOL)]
        tol: f64,
        /// Inclusive range kmin..kmax to tabulate (alternative to --k)
        #[arg(long)]
        table: Option<String>,
    },
}

fn read_input(path: &Path) -> Result<String, CommandError> {
    std::fs::read_to_string(path)
        .map_err(|e| CommandError::Validation(format!("cannot read {}: {e}", path.display())))
}

fn run(cli: &Cli) -> Result<CommandOutput, CommandError> {
    match &cli.command {
        Command::Compress { family, element } => {
            let target: CompressTarget = element.parse().map_err(CommandError::Validation)?;
            cmd_compress(&read_input(family)?, target)
        }
        Command::Shatter { family, k } => cmd_shatter(&read_input(family)?, *k),
        Command::Pipeline { matrix, k } => cmd_pipeline(&read_input(matrix)?, *k),
        Command::Contributions { matrix, k } => cmd_contributions(&read_input(matrix)?, *k),
        Command::FsSearch {
            m,
            pattern,
            budget,
            canonicalize,
        } => {
            let options = SearchOptions {
                budget: *budget,
                threads: cli.threads,
                canonicalize: *canonicalize,
                seed: cli.seed,
            };
            cmd_fs_search(&read_input(pattern)?, *m, &options)
        }
        Command::Exponents { k, mode, tol, table } => {
            let mode: RecurrenceMode = mode.parse().map_err(CommandError::Validation)?;
            let scope = match (k, table) {
                (Some(k), None) => ExponentsScope::Single(*k),
                (None, Some(range)) => {
                    let (lo, hi) = parse_k_range(range)?;
                    ExponentsScope::Table(lo, hi)
                }
                _ => {
                    return Err(CommandError::Validation(
                        "pass exactly one of --k or --table".to_string(),
                    ))
                }
            };
            cmd_exponents(scope, mode, *tol)
        }
    }
}

// Exiting cleanly on BrokenPipe lets `fsmat --json ... | head` work; any
// other write failure still surfaces as an error.
fn emit(text: &str) -> Option<ExitCode> {
    let mut out = io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Ok(()) => None,
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Some(ExitCode::SUCCESS),
        Err(e) => {
            eprintln!("error: cannot write output: {e}");
            Some(ExitCode::from(2))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let text = if cli.json {
                let report =
                    serde_json::to_string_pretty(&out.report).expect("report serializes");
                format!("{report}\n")
            } else {
                out.text
            };
            emit(&text).unwrap_or(ExitCode::SUCCESS)
        }
        Err(e) => {
            eprintln!("error: {e}");
            let code = ExitCode::from(u8::try_from(e.exit_code()).expect("small exit code"));
            if cli.json {
                let mut payload = json!({ "error": e.to_string() });
                if let CommandError::Search(SearchError::BudgetExhausted {
                    budget,
                    nodes_explored,
                    lower_bound,
                    upper_bound,
                }) = &e
                {
                    payload["budget"] = json!(budget);
                    payload["nodes_explored"] = json!(nodes_explored);
                    payload["lower_bound"] = json!(lower_bound);
                    payload["upper_bound"] = json!(upper_bound);
                }
                let text = format!(
                    "{}\n",
                    serde_json::to_string_pretty(&payload).expect("payload serializes")
                );
                // keep the command's own exit code even if the pipe closed
                let _ = emit(&text);
            }
            code
        }
    }
}
