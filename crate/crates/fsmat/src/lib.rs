//! Algebra and search tools for simple (0,1)-matrices: set-family
//! compressions and shattering, contribution counting, exact
//! forbidden-pattern search, and the exponent recurrences that bound how
//! fast pattern-avoiding matrices can grow.
//!
//! A simple matrix (pairwise-distinct columns) over m rows corresponds to a
//! family of subsets of [m]. This crate implements both views and the
//! machinery connecting them:
//!
//! * [`subset`] / [`family`]: bitmask subsets, traces, shattered sets,
//!   compressions, down-closure, support-cover peeling, nested-pair counts.
//! * [`matrix`]: column matrices, induced-submatrix containment,
//!   concatenation, the family correspondence.
//! * [`contributions`]: maximum sets of disjoint all-patterns windows, with
//!   an exhaustive oracle and the pigeonhole forcing bound.
//! * [`extremal`]: exact maximum width of a pattern-avoiding simple matrix,
//!   by branch-and-bound with greedy incumbents.
//! * [`exponents`]: the γ-recurrences (k2, quadratic, exact) whose fixed
//!   points give growth-exponent bounds such as 5.618… at k = 4.
//! * [`io`] / [`commands`]: text formats and the batch commands behind the
//!   `fsmat` binary.
//!
//! The examples directory is the front door; each one exercises a major
//! capability end to end:
//!
//! ```text
//! cargo run --example compressions     # C_i maps, down-closure, trace monotonicity
//! cargo run --example shattering      # traces, shattered sets, the forcing threshold
//! cargo run --example peeling         # support-cover peeling transcripts
//! cargo run --example contributions   # window counting with witnesses
//! cargo run --example fs_search       # exact pattern-avoidance search
//! cargo run --example exponent_table  # recurrence fixed points per mode
//! ```
//!
//! The same functionality is scriptable through the `fsmat` binary:
//! `fsmat compress`, `shatter`, `pipeline`, `contributions`, `fs-search`,
//! and `exponents`, each with `--json` output.

pub mod commands;
pub mod contributions;
pub mod exponents;
pub mod extremal;
pub mod family;
pub mod io;
pub mod matrix;
pub mod subset;

pub use contributions::{
    count_contributions, count_contributions_oracle, pigeonhole_containment_bound,
    ContributionSet, ContributionsReport,
};
pub use exponents::{
    fs_exponent_bound, gamma_step_exact, gamma_step_k2, gamma_step_quadratic, iterate_to_limit,
    ExponentState, RecurrenceMode, DEFAULT_ITERATION_TOL, DEFAULT_MAX_ITER,
};
pub use extremal::{fs_exact, fs_lower_bound_greedy, fs_naive, ExtremalResult, SearchOptions};
pub use family::{binomial, sauer_shelah_threshold, PeelingTranscript, SetFamily};
pub use matrix::{concatenate, ColumnMatrix, Concatenation, Pattern, SimpleMatrix};
pub use subset::Subset;
