//! Exact computation of the largest number of columns a simple m-row matrix
//! can have while avoiding a pattern, by branch-and-bound over ordered
//! sequences of distinct columns.
//!
//! The search state for one prefix is, per row subset of size k, the length
//! of the longest pattern-column prefix matched greedily so far. Greedy
//! prefix length is exact for subsequence containment, and it only grows as
//! columns are appended. A column that would complete the pattern now
//! ("deadly") therefore stays deadly in every descendant, which makes the
//! remaining-capacity prune sound: no descendant can be longer than the
//! current length plus the number of currently non-deadly unused columns.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::matrix::{restrict_bits, Pattern, SimpleMatrix};
use crate::subset::Subset;

/// Exact search and greedy both enumerate all 2^m columns and track the used
/// set in a u64, so m is capped here.
pub const MAX_SEARCH_ROWS: usize = 6;

/// Cap for the naive full-enumeration oracle.
pub const MAX_NAIVE_ROWS: usize = 3;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("instance too large: m={m} exceeds the cap m <= {max}")]
    InstanceTooLarge { m: usize, max: usize },
    #[error("budget must be positive")]
    ZeroBudget,
    #[error(
        "budget of {budget} nodes exhausted after {nodes_explored}: value in [{lower_bound}, {upper_bound}]"
    )]
    BudgetExhausted {
        budget: u64,
        nodes_explored: u64,
        lower_bound: usize,
        upper_bound: usize,
    },
    #[error("row canonicalization requires a pattern whose rows are all equal")]
    CanonicalizeUnsupported,
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    /// Node limit for the branch-and-bound tree.
    pub budget: u64,
    /// Worker threads; subtrees under the root are distributed dynamically.
    pub threads: usize,
    /// Prune prefixes that are not lexicographically minimal over row
    /// permutations. Only valid for patterns with all rows equal.
    pub canonicalize: bool,
    /// Seed for the randomized greedy incumbent.
    pub seed: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: 10_000_000,
            threads: 1,
            canonicalize: false,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ExtremalResult {
    pub m: usize,
    pub pattern: Pattern,
    pub value: usize,
    pub witness: SimpleMatrix,
    pub nodes_explored: u64,
    pub wall_time: Duration,
}

/// Per-prefix search state: one greedy prefix length per row subset.
type Progress = Vec<u16>;

/// Static data shared by all workers of one search.
struct SearchContext {
    universe: usize,
    l: u16,
    /// restrict[r][c]: column value c packed onto row subset r.
    restrict: Vec<Vec<u64>>,
    targets: Vec<u64>,
    /// Column value remap tables for the non-identity row permutations;
    /// empty unless canonicalization is on.
    perms: Vec<Vec<u64>>,
    budget: u64,
    nodes: AtomicU64,
    aborted: AtomicBool,
    incumbent: AtomicUsize,
    witness: Mutex<Vec<u64>>,
}

impl SearchContext {
    fn offer(&self, chain: &[u64]) {
        if chain.len() <= self.incumbent.load(Ordering::Acquire) {
            return;
        }
        let mut w = self.witness.lock().expect("witness lock");
        // re-check under the lock; incumbent only moves up
        if chain.len() > self.incumbent.load(Ordering::Acquire) {
            *w = chain.to_vec();
            self.incumbent.store(chain.len(), Ordering::Release);
        }
    }

    /// Non-deadly unused columns in ascending value order, paired with the
    /// progress vector they lead to.
    fn candidates(&self, used: u64, progress: &Progress) -> Vec<(u64, Progress)> {
        let mut out = Vec::new();
        'cols: for c in 0..self.universe {
            if used & (1u64 << c) != 0 {
                continue;
            }
            let mut next = progress.clone();
            for (r, p) in next.iter_mut().enumerate() {
                if self.restrict[r][c] == self.targets[*p as usize] {
                    *p += 1;
                    if *p == self.l {
                        continue 'cols;
                    }
                }
            }
            out.push((c as u64, next));
        }
        out
    }

    /// True when no row permutation maps the chain to a lexicographically
    /// smaller column-value sequence.
    fn is_canonical(&self, chain: &[u64]) -> bool {
        'perms: for remap in &self.perms {
            for &c in chain {
                let image = remap[c as usize];
                if image < c {
                    return false;
                }
                if image > c {
                    continue 'perms;
                }
            }
        }
        true
    }

    fn dfs(&self, chain: &mut Vec<u64>, used: u64, progress: &Progress) {
        let visited = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if visited > self.budget {
            self.aborted.store(true, Ordering::Release);
            return;
        }
        self.offer(chain);
        let cands = self.candidates(used, progress);
        if chain.len() + cands.len() <= self.incumbent.load(Ordering::Acquire) {
            return;
        }
        for (c, next) in cands {
            if self.aborted.load(Ordering::Acquire) {
                return;
            }
            chain.push(c);
            if self.perms.is_empty() || self.is_canonical(chain) {
                self.dfs(chain, used | (1u64 << c), &next);
            }
            chain.pop();
        }
    }
}

fn check_rows_cap(m: usize) -> Result<(), SearchError> {
    if m > MAX_SEARCH_ROWS {
        return Err(SearchError::InstanceTooLarge {
            m,
            max: MAX_SEARCH_ROWS,
        });
    }
    Ok(())
}

fn row_lists(m: usize, k: usize) -> Vec<Vec<usize>> {
    (1..=m).combinations(k).collect()
}

fn restriction_table(m: usize, rows: &[Vec<usize>]) -> Vec<Vec<u64>> {
    let universe = 1usize << m;
    rows.iter()
        .map(|row_list| {
            (0..universe as u64)
                .map(|v| {
                    let col = Subset::from_bits(m, v).expect("value below 2^m");
                    restrict_bits(&col, row_list)
                })
                .collect()
        })
        .collect()
}

fn witness_matrix(m: usize, values: &[u64]) -> SimpleMatrix {
    let columns = values
        .iter()
        .map(|&v| Subset::from_bits(m, v).expect("column value below 2^m"))
        .collect();
    SimpleMatrix::new(m, columns).expect("chain columns are distinct")
}

/// Remap table per non-identity row permutation: where each column value
/// goes when the rows are permuted.
fn permutation_tables(m: usize) -> Vec<Vec<u64>> {
    let universe = 1usize << m;
    (1..=m)
        .permutations(m)
        .filter(|p| p.iter().enumerate().any(|(i, &r)| r != i + 1))
        .map(|p| {
            (0..universe as u64)
                .map(|v| {
                    let mut out = 0u64;
                    for (i, &r) in p.iter().enumerate() {
                        if v & (1u64 << i) != 0 {
                            out |= 1u64 << (r - 1);
                        }
                    }
                    out
                })
                .collect()
        })
        .collect()
}

/// Exact maximum width of a simple m-row matrix avoiding the pattern, with a
/// witness. Patterns taller than m are never contained, so the full column
/// universe is returned directly.
pub fn fs_exact(
    m: usize,
    pattern: &Pattern,
    options: &SearchOptions,
) -> Result<ExtremalResult, SearchError> {
    let start = Instant::now();
    check_rows_cap(m)?;
    if options.budget == 0 {
        return Err(SearchError::ZeroBudget);
    }
    if options.canonicalize && !pattern.rows_all_equal() {
        return Err(SearchError::CanonicalizeUnsupported);
    }
    let k = pattern.rows();
    let universe = 1usize << m;
    if k > m {
        return Ok(ExtremalResult {
            m,
            pattern: pattern.clone(),
            value: universe,
            witness: SimpleMatrix::all_columns(m).expect("m within cap"),
            nodes_explored: 0,
            wall_time: start.elapsed(),
        });
    }

    let rows = row_lists(m, k);
    let ctx = SearchContext {
        universe,
        l: u16::try_from(pattern.width()).expect("pattern width fits u16"),
        restrict: restriction_table(m, &rows),
        targets: pattern.column_bits(),
        perms: if options.canonicalize {
            permutation_tables(m)
        } else {
            Vec::new()
        },
        budget: options.budget,
        nodes: AtomicU64::new(0),
        aborted: AtomicBool::new(false),
        incumbent: AtomicUsize::new(0),
        witness: Mutex::new(Vec::new()),
    };

    let greedy = greedy_chain(m, pattern, options.seed);
    ctx.offer(&greedy);

    // root node: empty chain
    let root_progress: Progress = vec![0; rows.len()];
    ctx.nodes.fetch_add(1, Ordering::Relaxed);
    ctx.offer(&[]);
    let root_cands = ctx.candidates(0, &root_progress);
    if root_cands.len() > ctx.incumbent.load(Ordering::Acquire) {
        let threads = options.threads.max(1);
        if threads == 1 {
            let mut chain = Vec::new();
            for (c, next) in &root_cands {
                if ctx.aborted.load(Ordering::Acquire) {
                    break;
                }
                chain.push(*c);
                if ctx.perms.is_empty() || ctx.is_canonical(&chain) {
                    ctx.dfs(&mut chain, 1u64 << c, next);
                }
                chain.pop();
            }
        } else {
            let next_child = AtomicUsize::new(0);
            std::thread::scope(|scope| {
                for _ in 0..threads {
                    scope.spawn(|| loop {
                        let i = next_child.fetch_add(1, Ordering::Relaxed);
                        if i >= root_cands.len() || ctx.aborted.load(Ordering::Acquire) {
                            break;
                        }
                        let (c, next) = &root_cands[i];
                        let mut chain = vec![*c];
                        if ctx.perms.is_empty() || ctx.is_canonical(&chain) {
                            ctx.dfs(&mut chain, 1u64 << c, next);
                        }
                    });
                }
            });
        }
    }

    let nodes_explored = ctx.nodes.load(Ordering::Relaxed).min(ctx.budget);
    let value = ctx.incumbent.load(Ordering::Acquire);
    if ctx.aborted.load(Ordering::Acquire) {
        return Err(SearchError::BudgetExhausted {
            budget: options.budget,
            nodes_explored,
            lower_bound: value,
            upper_bound: universe,
        });
    }
    let witness = witness_matrix(m, &ctx.witness.lock().expect("witness lock"));
    debug_assert!(!witness.contains(pattern));
    Ok(ExtremalResult {
        m,
        pattern: pattern.clone(),
        value,
        witness,
        nodes_explored,
        wall_time: start.elapsed(),
    })
}

/// Greedy chain in shuffled column order, kept as raw column values.
fn greedy_chain(m: usize, pattern: &Pattern, seed: u64) -> Vec<u64> {
    let k = pattern.rows();
    let universe = 1usize << m;
    let mut order: Vec<u64> = (0..universe as u64).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    order.shuffle(&mut rng);
    if k > m {
        return order;
    }
    let rows = row_lists(m, k);
    let restrict = restriction_table(m, &rows);
    let targets = pattern.column_bits();
    let l = pattern.width() as u16;
    let mut progress: Progress = vec![0; rows.len()];
    let mut chain = Vec::new();
    'cols: for c in order {
        let mut next = progress.clone();
        for (r, p) in next.iter_mut().enumerate() {
            if restrict[r][c as usize] == targets[*p as usize] {
                *p += 1;
                if *p == l {
                    continue 'cols;
                }
            }
        }
        progress = next;
        chain.push(c);
    }
    chain
}

/// F-avoiding simple matrix built by randomized greedy appending; its width
/// is a lower bound on the exact value.
pub fn fs_lower_bound_greedy(
    m: usize,
    pattern: &Pattern,
    seed: u64,
) -> Result<SimpleMatrix, SearchError> {
    check_rows_cap(m)?;
    let chain = greedy_chain(m, pattern, seed);
    let witness = witness_matrix(m, &chain);
    debug_assert!(!witness.contains(pattern));
    Ok(witness)
}

/// Oracle: enumerates every ordered sequence of distinct columns in
/// decreasing length and returns the first length admitting an avoider.
pub fn fs_naive(m: usize, pattern: &Pattern) -> Result<usize, SearchError> {
    if m > MAX_NAIVE_ROWS {
        return Err(SearchError::InstanceTooLarge {
            m,
            max: MAX_NAIVE_ROWS,
        });
    }
    let universe = 1usize << m;
    let values: Vec<u64> = (0..universe as u64).collect();
    for n in (1..=universe).rev() {
        for seq in values.iter().copied().permutations(n) {
            let candidate = witness_matrix(m, &seq);
            if !candidate.contains(pattern) {
                return Ok(n);
            }
        }
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pat(rows: &[&str]) -> Pattern {
        Pattern::from_rows(rows).unwrap()
    }

    #[test]
    fn single_one_forces_single_column() {
        for m in 1..=4 {
            let r = fs_exact(m, &pat(&["1"]), &SearchOptions::default()).unwrap();
            assert_eq!(r.value, 1);
            assert_eq!(r.witness.width(), 1);
            assert!(r.witness.columns()[0].is_empty());
        }
    }

    #[test]
    fn zero_one_pair_on_one_row() {
        let f = pat(&["01"]);
        let r = fs_exact(1, &f, &SearchOptions::default()).unwrap();
        assert_eq!(r.value, 2);
        assert_eq!(fs_naive(1, &f).unwrap(), 2);
        assert!(!r.witness.contains(&f));
    }

    #[test]
    fn double_zero_gives_m_plus_one() {
        let f = pat(&["00"]);
        for m in 2..=3 {
            let r = fs_exact(m, &f, &SearchOptions::default()).unwrap();
            assert_eq!(r.value, m + 1);
            assert_eq!(fs_naive(m, &f).unwrap(), m + 1);
        }
    }

    #[test]
    fn pattern_taller_than_matrix_admits_all_columns() {
        let f = pat(&["1", "0", "1"]);
        let r = fs_exact(2, &f, &SearchOptions::default()).unwrap();
        assert_eq!(r.value, 4);
        assert_eq!(r.witness.width(), 4);
    }

    #[test]
    fn naive_rejects_large_m() {
        assert_eq!(
            fs_naive(4, &pat(&["1"])).unwrap_err(),
            SearchError::InstanceTooLarge { m: 4, max: 3 }
        );
        assert!(matches!(
            fs_exact(7, &pat(&["1"]), &SearchOptions::default()),
            Err(SearchError::InstanceTooLarge { m: 7, max: 6 })
        ));
    }

    #[test]
    fn greedy_is_a_sound_lower_bound() {
        let patterns = [pat(&["1"]), pat(&["00"]), pat(&["01"]), pat(&["0", "1"])];
        for f in &patterns {
            for m in 1..=3 {
                let exact = fs_exact(m, f, &SearchOptions::default()).unwrap().value;
                for seed in 0..10 {
                    let g = fs_lower_bound_greedy(m, f, seed).unwrap();
                    assert!(!g.contains(f));
                    assert!(g.width() <= exact);
                }
            }
        }
    }

    #[test]
    fn greedy_examples() {
        let g = fs_lower_bound_greedy(3, &pat(&["1"]), 7).unwrap();
        assert_eq!(g.width(), 1);
        assert!(g.columns()[0].is_empty());
        for seed in 0..10 {
            let g = fs_lower_bound_greedy(2, &pat(&["00"]), seed).unwrap();
            assert!(g.width() >= 2);
        }
    }

    #[test]
    fn tiny_budget_reports_bounds() {
        let opts = SearchOptions {
            budget: 2,
            ..SearchOptions::default()
        };
        match fs_exact(3, &pat(&["01"]), &opts) {
            Err(SearchError::BudgetExhausted {
                budget,
                lower_bound,
                upper_bound,
                nodes_explored,
            }) => {
                assert_eq!(budget, 2);
                assert!(lower_bound >= 1);
                assert_eq!(upper_bound, 8);
                assert_eq!(nodes_explored, 2);
            }
            other => panic!("expected budget exhaustion, got {other:?}"),
        }
        assert!(matches!(
            fs_exact(
                3,
                &pat(&["01"]),
                &SearchOptions {
                    budget: 0,
                    ..Default::default()
                }
            ),
            Err(SearchError::ZeroBudget)
        ));
    }

    #[test]
    fn canonicalization_agrees_and_validates() {
        let f = pat(&["0", "0"]); // rows equal, so canonicalization is sound
        let base = fs_exact(3, &f, &SearchOptions::default()).unwrap();
        let canon = fs_exact(
            3,
            &f,
            &SearchOptions {
                canonicalize: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(base.value, canon.value);
        assert!(canon.nodes_explored <= base.nodes_explored);

        let asym = pat(&["01", "10"]);
        assert!(matches!(
            fs_exact(
                2,
                &asym,
                &SearchOptions {
                    canonicalize: true,
                    ..Default::default()
                }
            ),
            Err(SearchError::CanonicalizeUnsupported)
        ));
    }

    #[test]
    fn threaded_search_matches_single_threaded() {
        let f = pat(&["01"]);
        let single = fs_exact(3, &f, &SearchOptions::default()).unwrap();
        let multi = fs_exact(
            3,
            &f,
            &SearchOptions {
                threads: 4,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(single.value, multi.value);
        assert_eq!(single.witness.width(), multi.witness.width());
        assert!(!multi.witness.contains(&f));
    }

    #[test]
    fn exact_matches_naive_on_two_row_patterns() {
        let patterns = [pat(&["0", "0"]), pat(&["0", "1"]), pat(&["1", "0"]), pat(&["1", "1"])];
        for f in &patterns {
            for m in 2..=3 {
                assert_eq!(
                    fs_exact(m, f, &SearchOptions::default()).unwrap().value,
                    fs_naive(m, f).unwrap(),
                );
            }
        }
    }
}
