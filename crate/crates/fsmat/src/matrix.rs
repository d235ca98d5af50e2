//! (0,1)-matrices as ordered column sequences, the matrix/family
//! correspondence, induced-submatrix containment, and concatenation.
//!
//! Containment is order-preserving in both directions and exact on entries:
//! `M` contains the pattern `F` when rows `r_1 < … < r_k` and columns
//! `c_1 < … < c_l` of `M` reproduce `F` entry for entry. No permutations, no
//! entry flips.

use std::fmt;
use std::ops::Deref;

use thiserror::Error;

use crate::family::SetFamily;
use crate::subset::{Subset, SubsetError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error(transparent)]
    Subset(#[from] SubsetError),
    #[error("column {index} has ground size {found}, expected {rows} rows")]
    WrongColumnGround {
        index: usize,
        found: usize,
        rows: usize,
    },
    #[error("columns {first} and {second} are equal; a simple matrix needs pairwise-distinct columns")]
    DuplicateColumn { first: usize, second: usize },
    #[error("column index {index} outside [1, {n}]")]
    ColumnIndexOutOfRange { index: usize, n: usize },
    #[error("column index {index} appears twice in the index set")]
    DuplicateColumnIndex { index: usize },
    #[error("row set has ground size {found}, matrix has {rows} rows")]
    WrongRowGround { found: usize, rows: usize },
    #[error("row counts differ: {left} vs {right}")]
    RowCountMismatch { left: usize, right: usize },
    #[error("pattern needs at least one row and one column")]
    EmptyPattern,
    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("row {row}, column {col}: invalid entry {ch:?}, expected '0' or '1'")]
    InvalidEntry { row: usize, col: usize, ch: char },
}

/// An m-row (0,1)-matrix stored column-wise; duplicate columns are allowed.
/// Column `j` holds the set of rows carrying a 1 in position `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnMatrix {
    rows: usize,
    columns: Vec<Subset>,
}

impl ColumnMatrix {
    pub fn new(rows: usize, columns: Vec<Subset>) -> Result<Self, MatrixError> {
        Subset::empty(rows)?;
        for (j, c) in columns.iter().enumerate() {
            if c.ground_size() != rows {
                return Err(MatrixError::WrongColumnGround {
                    index: j + 1,
                    found: c.ground_size(),
                    rows,
                });
            }
        }
        Ok(ColumnMatrix { rows, columns })
    }

    /// Parses rows of '0'/'1' characters; all rows must have equal length.
    pub fn from_rows(rows: &[&str]) -> Result<Self, MatrixError> {
        let m = rows.len();
        Subset::empty(m)?;
        let n = rows.first().map_or(0, |r| r.len());
        let mut columns = vec![Subset::empty(m)?; n];
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(MatrixError::RaggedRow {
                    row: i + 1,
                    expected: n,
                    found: row.len(),
                });
            }
            for (j, ch) in row.chars().enumerate() {
                match ch {
                    '1' => columns[j] = columns[j].insert(i + 1).expect("row index in range"),
                    '0' => {}
                    _ => {
                        return Err(MatrixError::InvalidEntry {
                            row: i + 1,
                            col: j + 1,
                            ch,
                        })
                    }
                }
            }
        }
        Ok(ColumnMatrix { rows: m, columns })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns, n.
    pub fn width(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[Subset] {
        &self.columns
    }

    /// Column `j`, 1-based.
    pub fn column(&self, j: usize) -> Option<&Subset> {
        (1..=self.width()).contains(&j).then(|| &self.columns[j - 1])
    }

    /// Entry at row `i`, column `j`, both 1-based.
    pub fn entry(&self, i: usize, j: usize) -> bool {
        self.columns[j - 1].contains(i)
    }

    pub fn is_simple(&self) -> bool {
        let mut seen: Vec<u64> = self.columns.iter().map(|c| c.bits()).collect();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }

    /// `M[R, C]`: rows restricted to `rows` (re-indexed ascending), columns
    /// restricted to the index set `cols` in the matrix's column order. The
    /// result need not be simple.
    pub fn submatrix(&self, rows: &Subset, cols: &[usize]) -> Result<ColumnMatrix, MatrixError> {
        if rows.ground_size() != self.rows {
            return Err(MatrixError::WrongRowGround {
                found: rows.ground_size(),
                rows: self.rows,
            });
        }
        let mut picked: Vec<usize> = cols.to_vec();
        picked.sort_unstable();
        for w in picked.windows(2) {
            if w[0] == w[1] {
                return Err(MatrixError::DuplicateColumnIndex { index: w[0] });
            }
        }
        if let Some(&bad) = picked.iter().find(|&&j| j == 0 || j > self.width()) {
            return Err(MatrixError::ColumnIndexOutOfRange {
                index: bad,
                n: self.width(),
            });
        }
        let row_list: Vec<usize> = rows.elements().collect();
        let s = row_list.len();
        let columns = picked
            .iter()
            .map(|&j| {
                Subset::from_bits(s, restrict_bits(&self.columns[j - 1], &row_list))
                    .expect("restriction fits the new ground")
            })
            .collect();
        Ok(ColumnMatrix { rows: s, columns })
    }

    /// True when the pattern appears as an induced submatrix: some
    /// row subset, in order, reads the pattern's columns as a subsequence.
    pub fn contains(&self, pattern: &Pattern) -> bool {
        let k = pattern.rows();
        if k > self.rows {
            return false;
        }
        let targets = pattern.column_bits();
        for row_set in Subset::all_of_size(self.rows, k).expect("rows already validated") {
            let row_list: Vec<usize> = row_set.elements().collect();
            if self.matches_on_rows(&row_list, &targets) {
                return true;
            }
        }
        false
    }

    /// Greedy subsequence test on one fixed row set: scanning left to right
    /// and taking the earliest match for each pattern column is exact.
    fn matches_on_rows(&self, row_list: &[usize], targets: &[u64]) -> bool {
        let mut next = 0;
        for col in &self.columns {
            if next == targets.len() {
                break;
            }
            if restrict_bits(col, row_list) == targets[next] {
                next += 1;
            }
        }
        next == targets.len()
    }
}

impl fmt::Display for ColumnMatrix {
    /// Matrix text format: `m=<int> n=<int>` header, then one string of
    /// '0'/'1' per row.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "m={} n={}", self.rows, self.width())?;
        for i in 1..=self.rows {
            for c in &self.columns {
                write!(f, "{}", if c.contains(i) { '1' } else { '0' })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Packs the entries of `col` at the ascending 1-based positions in
/// `row_list` into the low bits of a u64 (first listed row is bit 0).
pub(crate) fn restrict_bits(col: &Subset, row_list: &[usize]) -> u64 {
    let mut out = 0u64;
    for (j, &r) in row_list.iter().enumerate() {
        if col.contains(r) {
            out |= 1u64 << j;
        }
    }
    out
}

/// A matrix with pairwise-distinct columns. Dereferences to [`ColumnMatrix`]
/// for all read-only operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleMatrix {
    inner: ColumnMatrix,
}

impl SimpleMatrix {
    pub fn new(rows: usize, columns: Vec<Subset>) -> Result<Self, MatrixError> {
        ColumnMatrix::new(rows, columns)?.into_simple()
    }

    pub fn from_rows(rows: &[&str]) -> Result<Self, MatrixError> {
        ColumnMatrix::from_rows(rows)?.into_simple()
    }

    /// All `2^m` columns in binary counting order (column `j` is the bit
    /// pattern of `j-1`, row 1 least significant).
    pub fn all_columns(m: usize) -> Result<Self, MatrixError> {
        let columns: Vec<Subset> = Subset::power_set(m)?.collect();
        Ok(SimpleMatrix {
            inner: ColumnMatrix { rows: m, columns },
        })
    }

    /// The members of a family as columns, in lexicographic element order.
    pub fn from_family(family: &SetFamily) -> SimpleMatrix {
        SimpleMatrix {
            inner: ColumnMatrix {
                rows: family.ground_size(),
                columns: family.members().to_vec(),
            },
        }
    }

    /// The columns as a family, order discarded.
    pub fn associated_family(&self) -> SetFamily {
        SetFamily::new(self.inner.rows, self.inner.columns.iter().copied())
            .expect("simple matrix columns are distinct with uniform ground")
    }

    pub fn as_column_matrix(&self) -> &ColumnMatrix {
        &self.inner
    }
}

impl ColumnMatrix {
    /// Validates distinctness and upgrades to a [`SimpleMatrix`].
    pub fn into_simple(self) -> Result<SimpleMatrix, MatrixError> {
        let mut indexed: Vec<(u64, usize)> = self
            .columns
            .iter()
            .enumerate()
            .map(|(j, c)| (c.bits(), j + 1))
            .collect();
        indexed.sort_unstable();
        if let Some(w) = indexed.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(MatrixError::DuplicateColumn {
                first: w[0].1.min(w[1].1),
                second: w[0].1.max(w[1].1),
            });
        }
        Ok(SimpleMatrix { inner: self })
    }
}

impl Deref for SimpleMatrix {
    type Target = ColumnMatrix;
    fn deref(&self) -> &ColumnMatrix {
        &self.inner
    }
}

impl fmt::Display for SimpleMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.inner.fmt(f)
    }
}

/// A forbidden k×l pattern. Duplicate columns are allowed and column order
/// is significant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    inner: ColumnMatrix,
}

impl Pattern {
    pub fn new(rows: usize, columns: Vec<Subset>) -> Result<Self, MatrixError> {
        if rows == 0 || columns.is_empty() {
            return Err(MatrixError::EmptyPattern);
        }
        Ok(Pattern {
            inner: ColumnMatrix::new(rows, columns)?,
        })
    }

    pub fn from_rows(rows: &[&str]) -> Result<Self, MatrixError> {
        let inner = ColumnMatrix::from_rows(rows)?;
        if inner.rows() == 0 || inner.width() == 0 {
            return Err(MatrixError::EmptyPattern);
        }
        Ok(Pattern { inner })
    }

    /// k, the number of pattern rows.
    pub fn rows(&self) -> usize {
        self.inner.rows
    }

    /// l, the number of pattern columns.
    pub fn width(&self) -> usize {
        self.inner.width()
    }

    pub fn columns(&self) -> &[Subset] {
        self.inner.columns()
    }

    pub fn entry(&self, i: usize, j: usize) -> bool {
        self.inner.entry(i, j)
    }

    /// Column bit values in order; pattern row `i` occupies bit `i-1`.
    pub fn column_bits(&self) -> Vec<u64> {
        self.inner.columns.iter().map(|c| c.bits()).collect()
    }

    /// True when all rows are identical, in which case containment is
    /// invariant under row permutations of the host matrix.
    pub fn rows_all_equal(&self) -> bool {
        (2..=self.rows()).all(|i| {
            self.inner
                .columns
                .iter()
                .all(|c| c.contains(i) == c.contains(1))
        })
    }
}

impl fmt::Display for Pattern {
    /// Pattern text format: `k=<int> l=<int>` header, then one row per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "k={} l={}", self.rows(), self.width())?;
        for i in 1..=self.rows() {
            for c in self.inner.columns() {
                write!(f, "{}", if c.contains(i) { '1' } else { '0' })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Result of concatenating two simple matrices: the combined matrix and
/// whether it is still simple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Concatenation {
    pub matrix: ColumnMatrix,
    pub simple: bool,
}

impl Concatenation {
    pub fn into_simple(self) -> Option<SimpleMatrix> {
        self.simple.then(|| {
            self.matrix
                .into_simple()
                .expect("flag certified distinct columns")
        })
    }
}

/// Columns of `a` followed by columns of `b`; flags whether the result is
/// simple.
pub fn concatenate(a: &SimpleMatrix, b: &SimpleMatrix) -> Result<Concatenation, MatrixError> {
    if a.rows() != b.rows() {
        return Err(MatrixError::RowCountMismatch {
            left: a.rows(),
            right: b.rows(),
        });
    }
    let mut columns = a.columns().to_vec();
    columns.extend_from_slice(b.columns());
    let matrix = ColumnMatrix {
        rows: a.rows(),
        columns,
    };
    let simple = matrix.is_simple();
    Ok(Concatenation { matrix, simple })
}
