//! Command implementations behind the CLI: pure functions from input text
//! and parameters to a [`CommandReport`] (JSON) plus a human-readable
//! rendering. File reading, flag parsing, and exit codes live in the binary.

use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::contributions::count_contributions;
use crate::exponents::{iterate_to_limit, ExponentError, RecurrenceMode, DEFAULT_MAX_ITER};
use crate::extremal::{fs_exact, SearchError, SearchOptions};
use crate::family::sauer_shelah_threshold;
use crate::io::{parse_family, parse_matrix, parse_pattern, ParseError};
use crate::matrix::{ColumnMatrix, SimpleMatrix};
use crate::subset::Subset;

#[derive(Debug, Error)]
pub enum CommandError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Validation(String),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Exponent(#[from] ExponentError),
}

impl CommandError {
    /// Exit code contract: 2 for parse/validation trouble, 3 for an
    /// exhausted search budget.
    pub fn exit_code(&self) -> i32 {
        match self {
            CommandError::Search(SearchError::BudgetExhausted { .. }) => 3,
            _ => 2,
        }
    }
}

/// Envelope shared by every command; serializes to the stable JSON schema.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CommandReport {
    pub command: String,
    pub inputs: Value,
    pub result: Value,
    pub timing_ms: f64,
    pub version: String,
}

/// A report plus its text rendering; the binary picks one.
#[derive(Debug, Clone)]
pub struct CommandOutput {
    pub report: CommandReport,
    pub text: String,
}

fn finish(command: &str, inputs: Value, result: Value, started: Instant, text: String) -> CommandOutput {
    CommandOutput {
        report: CommandReport {
            command: command.to_string(),
            inputs,
            result,
            timing_ms: started.elapsed().as_secs_f64() * 1000.0,
            version: env!("CARGO_PKG_VERSION").to_string(),
        },
        text,
    }
}

fn sets_json(sets: &[Subset]) -> Value {
    Value::from(
        sets.iter()
            .map(|s| s.elements().collect::<Vec<usize>>())
            .collect::<Vec<_>>(),
    )
}

fn row_strings(matrix: &ColumnMatrix) -> Vec<String> {
    (1..=matrix.rows())
        .map(|i| {
            matrix
                .columns()
                .iter()
                .map(|c| if c.contains(i) { '1' } else { '0' })
                .collect()
        })
        .collect()
}

/// Target of the compress command: one element index or the full
/// down-closure sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompressTarget {
    Element(usize),
    All,
}

impl FromStr for CompressTarget {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "all" {
            return Ok(CompressTarget::All);
        }
        s.parse::<usize>()
            .map(CompressTarget::Element)
            .map_err(|_| format!("expected an element index or \"all\", got {s:?}"))
    }
}

pub fn cmd_compress(family_text: &str, target: CompressTarget) -> Result<CommandOutput, CommandError> {
    let started = Instant::now();
    let family = parse_family(family_text)?;
    let measure_before = family.measure();
    let (compressed, target_json) = match target {
        CompressTarget::Element(i) => {
            let out = family
                .compress(i)
                .map_err(|e| CommandError::Validation(e.to_string()))?;
            (out, json!(i))
        }
        CompressTarget::All => (family.down_close(), json!("all")),
    };
    let measure_after = compressed.measure();
    let emitted = compressed.to_string();
    let text = format!(
        "family size {} on m={}; measure {} -> {}\n{}",
        compressed.len(),
        compressed.ground_size(),
        measure_before,
        measure_after,
        emitted
    );
    let result = json!({
        "m": compressed.ground_size(),
        "size": compressed.len(),
        "measure_before": measure_before,
        "measure_after": measure_after,
        "sets": sets_json(compressed.members()),
    });
    Ok(finish(
        "compress",
        json!({ "element": target_json }),
        result,
        started,
        text,
    ))
}

pub fn cmd_shatter(family_text: &str, k: usize) -> Result<CommandOutput, CommandError> {
    let started = Instant::now();
    let family = parse_family(family_text)?;
    let m = family.ground_size();
    if k > m {
        return Err(CommandError::Validation(format!(
            "k={k} exceeds the ground size m={m}"
        )));
    }
    let threshold = sauer_shelah_threshold(m, k);
    let threshold_met = family.len() as u64 >= threshold;
    let shattered = family.shattered_sets(k);
    let mut text = format!(
        "family size {} on m={}; k={}\nforcing threshold {}: {}\nshattered {}-sets ({}):",
        family.len(),
        m,
        k,
        threshold,
        if threshold_met { "met" } else { "not met" },
        k,
        shattered.len()
    );
    for s in &shattered {
        write!(text, " {{{s}}}").expect("write to string");
    }
    text.push('\n');
    let result = json!({
        "m": m,
        "k": k,
        "family_size": family.len(),
        "threshold": threshold,
        "threshold_met": threshold_met,
        "count": shattered.len(),
        "shattered": sets_json(&shattered),
    });
    Ok(finish("shatter", json!({ "k": k }), result, started, text))
}

fn parse_simple(matrix_text: &str) -> Result<SimpleMatrix, CommandError> {
    parse_matrix(matrix_text)?
        .into_simple()
        .map_err(|e| CommandError::Validation(format!("not a simple matrix: {e}")))
}

fn check_window_height(k: usize, m: usize) -> Result<(), CommandError> {
    if k < 1 || k > m {
        return Err(CommandError::Validation(format!(
            "k must satisfy 1 <= k <= m; got k={k}, m={m}"
        )));
    }
    Ok(())
}

pub fn cmd_pipeline(matrix_text: &str, k: usize) -> Result<CommandOutput, CommandError> {
    let started = Instant::now();
    let matrix = parse_simple(matrix_text)?;
    check_window_height(k, matrix.rows())?;

    let family = matrix.associated_family();
    let measure_before = family.measure();
    let down = family.down_close();
    let measure_after = down.measure();
    let shattered = down.shattered_sets(k);
    // shattering transfer: every set shattered after down-closure was
    // already shattered before
    for s in &shattered {
        assert!(
            family.shatters(s),
            "down-closure produced a newly shattered set; trace monotonicity is broken"
        );
    }
    let (total, witness) = count_contributions(&matrix, k);
    assert!(
        total >= shattered.len() as u64,
        "fewer contribution windows than shattered sets"
    );
    let contributions = witness.report();

    let mut text = format!(
        "matrix m={} n={}; k={}\nassociated family size {}; down-closure measure {} -> {}\nshattered {}-sets of the down family ({}):",
        matrix.rows(),
        matrix.width(),
        k,
        family.len(),
        measure_before,
        measure_after,
        k,
        shattered.len()
    );
    for s in &shattered {
        write!(text, " {{{s}}}").expect("write to string");
    }
    let _ = writeln!(text);
    let _ = writeln!(text, "contribution windows: {total}");
    let result = json!({
        "m": matrix.rows(),
        "n": matrix.width(),
        "k": k,
        "family_size": family.len(),
        "down_family_size": down.len(),
        "measure_before": measure_before,
        "measure_after": measure_after,
        "shattered_count": shattered.len(),
        "shattered": sets_json(&shattered),
        "transfer_checked": true,
        "contributions": serde_json::to_value(&contributions).expect("report serializes"),
    });
    Ok(finish("pipeline", json!({ "k": k }), result, started, text))
}

// Unlike pipeline, this accepts non-simple matrices: windows only need
// distinct restrictions locally, so repeated columns are fine.
pub fn cmd_contributions(matrix_text: &str, k: usize) -> Result<CommandOutput, CommandError> {
    let started = Instant::now();
    let matrix = parse_matrix(matrix_text)?;
    check_window_height(k, matrix.rows())?;
    let (total, witness) = count_contributions(&matrix, k);
    debug_assert!(witness.verify(&matrix));
    let report = witness.report();

    let mut text = format!(
        "matrix m={} n={}; k={}\ncontribution windows: {}\n",
        matrix.rows(),
        matrix.width(),
        k,
        total
    );
    for entry in &report.per_row_set {
        let rows = entry
            .rows
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",");
        let windows = entry
            .windows
            .iter()
            .map(|w| format!("{w:?}"))
            .collect::<Vec<_>>()
            .join(" ");
        let _ = writeln!(text, "rows {{{rows}}}: {} window(s) {windows}", entry.count);
    }
    let mut result = serde_json::to_value(&report).expect("report serializes");
    result["m"] = json!(matrix.rows());
    result["n"] = json!(matrix.width());
    Ok(finish(
        "contributions",
        json!({ "k": k }),
        result,
        started,
        text,
    ))
}

pub fn cmd_fs_search(
    pattern_text: &str,
    m: usize,
    options: &SearchOptions,
) -> Result<CommandOutput, CommandError> {
    let started = Instant::now();
    let pattern = parse_pattern(pattern_text)?;
    let outcome = fs_exact(m, &pattern, options)?;
    let witness_rows = row_strings(&outcome.witness);
    let text = format!(
        "fs({m}, F) = {} for the {}x{} pattern (nodes {}, {:.3} ms)\nwitness:\n{}",
        outcome.value,
        pattern.rows(),
        pattern.width(),
        outcome.nodes_explored,
        outcome.wall_time.as_secs_f64() * 1000.0,
        outcome.witness
    );
    let result = json!({
        "m": m,
        "k": pattern.rows(),
        "l": pattern.width(),
        "pattern": pattern_row_strings(&pattern),
        "value": outcome.value,
        "witness": witness_rows,
        "nodes_explored": outcome.nodes_explored,
        "wall_time_ms": outcome.wall_time.as_secs_f64() * 1000.0,
    });
    let inputs = json!({
        "m": m,
        "budget": options.budget,
        "threads": options.threads,
        "canonicalize": options.canonicalize,
        "seed": options.seed,
    });
    Ok(finish("fs-search", inputs, result, started, text))
}

fn pattern_row_strings(pattern: &crate::matrix::Pattern) -> Vec<String> {
    (1..=pattern.rows())
        .map(|i| {
            (1..=pattern.width())
                .map(|j| if pattern.entry(i, j) { '1' } else { '0' })
                .collect()
        })
        .collect()
}

/// Which k values to tabulate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExponentsScope {
    Single(usize),
    Table(usize, usize),
}

/// Parses an inclusive `kmin..kmax` range.
pub fn parse_k_range(s: &str) -> Result<(usize, usize), CommandError> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| CommandError::Validation(format!("expected kmin..kmax, got {s:?}")))?;
    let lo = lo
        .parse::<usize>()
        .map_err(|_| CommandError::Validation(format!("invalid kmin {lo:?}")))?;
    let hi = hi
        .parse::<usize>()
        .map_err(|_| CommandError::Validation(format!("invalid kmax {hi:?}")))?;
    if lo > hi {
        return Err(CommandError::Validation(format!(
            "empty range {lo}..{hi}"
        )));
    }
    Ok((lo, hi))
}

pub fn cmd_exponents(
    scope: ExponentsScope,
    mode: RecurrenceMode,
    tol: f64,
) -> Result<CommandOutput, CommandError> {
    let started = Instant::now();
    let (lo, hi) = match scope {
        ExponentsScope::Single(k) => (k, k),
        ExponentsScope::Table(lo, hi) => (lo, hi),
    };
    let mut rows = Vec::new();
    let mut text = format!("mode {mode} tol {tol:e}\nk  gamma_limit         fs_exponent         iterations\n");
    for k in lo..=hi {
        let state = iterate_to_limit(k, mode, tol, DEFAULT_MAX_ITER)?;
        let _ = writeln!(
            text,
            "{k}  {:<18.15}  {:<18.15}  {}",
            state.limit,
            state.fs_exponent,
            state.iterations()
        );
        rows.push(json!({
            "k": k,
            "mode": mode.name(),
            "gamma_limit": state.limit,
            "fs_exponent": state.fs_exponent,
            "alpha": state.alpha,
            "iterations": state.iterations(),
        }));
    }
    let inputs = match scope {
        ExponentsScope::Single(k) => json!({ "k": k, "mode": mode.name(), "tol": tol }),
        ExponentsScope::Table(lo, hi) => {
            json!({ "table": format!("{lo}..{hi}"), "mode": mode.name(), "tol": tol })
        }
    };
    Ok(finish(
        "exponents",
        inputs,
        json!({ "rows": rows }),
        started,
        text,
    ))
}
