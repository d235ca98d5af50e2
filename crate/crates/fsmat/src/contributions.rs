//! Contribution counting: windows of 2^k columns that, restricted to a fixed
//! set of k rows, show all 2^k patterns. Windows on the same row set must
//! occupy disjoint column intervals; windows on different row sets are
//! unconstrained, so the total decomposes as a sum of per-row-set maxima.
//!
//! The per-row-set maximum is computed by an earliest-finish greedy: scan
//! columns left to right, cut a window as soon as every pattern has appeared
//! since the last cut. Optimality is asserted against the exhaustive oracle
//! in the test suite rather than assumed.

use std::collections::HashMap;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::family::binomial;
use crate::matrix::{restrict_bits, ColumnMatrix};
use crate::subset::Subset;

/// Oracle instance caps: beyond these the window enumeration blows up.
pub const ORACLE_MAX_COLUMNS: usize = 12;
pub const ORACLE_MAX_ROWS: usize = 5;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ContributionError {
    #[error(
        "oracle handles n <= {ORACLE_MAX_COLUMNS}, m <= {ORACLE_MAX_ROWS}; got n={n}, m={m}"
    )]
    InstanceTooLarge { n: usize, m: usize },
}

/// One window: a row set of size k and the 2^k column indices (1-based,
/// ascending) whose restrictions to those rows are pairwise distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContributionWindow {
    pub rows: Subset,
    pub columns: Vec<usize>,
}

/// A witness set of contributions; one window per counted contribution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContributionSet {
    k: usize,
    items: Vec<ContributionWindow>,
}

impl ContributionSet {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn count(&self) -> u64 {
        self.items.len() as u64
    }

    /// Windows grouped by row set in lexicographic order; within a row set,
    /// windows appear left to right.
    pub fn items(&self) -> &[ContributionWindow] {
        &self.items
    }

    /// Checks every invariant against the source matrix: window shape,
    /// distinct restrictions, and interval separation on equal row sets.
    pub fn verify(&self, m: &ColumnMatrix) -> bool {
        let expected = 1usize << self.k;
        for w in &self.items {
            if w.rows.len() != self.k || w.columns.len() != expected {
                return false;
            }
            if w.columns.windows(2).any(|p| p[0] >= p[1]) {
                return false;
            }
            if w.columns.iter().any(|&c| c == 0 || c > m.width()) {
                return false;
            }
            let row_list: Vec<usize> = w.rows.elements().collect();
            let mut vals: Vec<u64> = w
                .columns
                .iter()
                .map(|&c| restrict_bits(&m.columns()[c - 1], &row_list))
                .collect();
            vals.sort_unstable();
            vals.dedup();
            if vals.len() != expected {
                return false;
            }
        }
        for (i, a) in self.items.iter().enumerate() {
            for b in &self.items[i + 1..] {
                if a.rows == b.rows {
                    let (amin, amax) = (a.columns[0], *a.columns.last().unwrap());
                    let (bmin, bmax) = (b.columns[0], *b.columns.last().unwrap());
                    if !(amax < bmin || bmax < amin) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The CLI-facing report: total plus per-row-set counts and windows.
    /// Row sets contributing zero windows are omitted.
    pub fn report(&self) -> ContributionsReport {
        let mut per_row_set: Vec<RowSetWindows> = Vec::new();
        for w in &self.items {
            let rows: Vec<usize> = w.rows.elements().collect();
            match per_row_set.last_mut() {
                Some(entry) if entry.rows == rows => {
                    entry.count += 1;
                    entry.windows.push(w.columns.clone());
                }
                _ => per_row_set.push(RowSetWindows {
                    rows,
                    count: 1,
                    windows: vec![w.columns.clone()],
                }),
            }
        }
        ContributionsReport {
            k: self.k,
            total: self.count(),
            per_row_set,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContributionsReport {
    pub k: usize,
    pub total: u64,
    pub per_row_set: Vec<RowSetWindows>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowSetWindows {
    pub rows: Vec<usize>,
    pub count: u64,
    pub windows: Vec<Vec<usize>>,
}

/// Maximum number of contributions `m` makes at window height `k`, with a
/// witness achieving it. Witness windows record the first occurrence of each
/// pattern, so output is deterministic. The matrix itself need not be simple;
/// each window only needs distinct restrictions to its own row set.
pub fn count_contributions(m: &ColumnMatrix, k: usize) -> (u64, ContributionSet) {
    assert!(
        1 <= k && k <= m.rows(),
        "need 1 <= k <= m, got k={k}, m={}",
        m.rows()
    );
    let mut items = Vec::new();
    let needed = 1usize << k;
    if needed <= m.width() {
        for rows in Subset::all_of_size(m.rows(), k).expect("k validated against m") {
            let row_list: Vec<usize> = rows.elements().collect();
            let mut first_seen: HashMap<u64, usize> = HashMap::new();
            for (j, col) in m.columns().iter().enumerate() {
                let v = restrict_bits(col, &row_list);
                first_seen.entry(v).or_insert(j + 1);
                if first_seen.len() == needed {
                    let mut columns: Vec<usize> = first_seen.drain().map(|(_, j)| j).collect();
                    columns.sort_unstable();
                    items.push(ContributionWindow { rows, columns });
                }
            }
        }
    }
    let set = ContributionSet { k, items };
    (set.count(), set)
}

/// Exact maximum by enumerating, per row set, every family of pairwise
/// separated windows (suffix dynamic program over the leftmost window).
pub fn count_contributions_oracle(m: &ColumnMatrix, k: usize) -> Result<u64, ContributionError> {
    if m.width() > ORACLE_MAX_COLUMNS || m.rows() > ORACLE_MAX_ROWS {
        return Err(ContributionError::InstanceTooLarge {
            n: m.width(),
            m: m.rows(),
        });
    }
    assert!(1 <= k && k <= m.rows());
    let mut total = 0u64;
    for rows in Subset::all_of_size(m.rows(), k).expect("k validated against m") {
        let row_list: Vec<usize> = rows.elements().collect();
        let vals: Vec<u64> = m
            .columns()
            .iter()
            .map(|c| restrict_bits(c, &row_list))
            .collect();
        total += max_separated_windows(&vals, 1usize << k);
    }
    Ok(total)
}

/// Most pairwise-separated windows in `vals`, where a window is any `width`
/// positions with pairwise-distinct values. `f[s]` is the best count using
/// positions `s..`; windows are enumerated by their leftmost position.
fn max_separated_windows(vals: &[u64], width: usize) -> u64 {
    let n = vals.len();
    if width > n {
        return 0;
    }
    let mut f = vec![0u64; n + 1];
    for s in (0..=n - width).rev() {
        f[s] = f[s + 1];
        for rest in (s + 1..n).combinations(width - 1) {
            let mut window: Vec<u64> = rest.iter().map(|&j| vals[j]).collect();
            window.push(vals[s]);
            window.sort_unstable();
            window.dedup();
            if window.len() == width {
                let last = rest.last().copied().unwrap_or(s);
                f[s] = f[s].max(1 + f[last + 1]);
            }
        }
    }
    f[0]
}

/// `l * C(m, k)`: a contribution count at height k that forces containment
/// of every k-row, l-column pattern.
pub fn pigeonhole_containment_bound(m: usize, k: usize, l: usize) -> u64 {
    assert!(k <= m, "need k <= m");
    l as u64 * binomial(m, k)
}
