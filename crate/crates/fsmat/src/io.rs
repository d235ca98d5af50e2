//! Text formats for families, matrices, and patterns.
//!
//! Family files: a `m=<int>` header, then one set per line as ascending
//! comma-separated elements, `-` for the empty set. Matrix files: a
//! `m=<int> n=<int>` header, then m rows of n characters from {0,1}; column
//! j is the j-th character of each row. Pattern files are matrices with a
//! `k=<int> l=<int>` header. Emission is canonical and `parse(emit(x)) == x`.

use std::collections::HashSet;

use thiserror::Error;

use crate::family::{FamilyError, SetFamily};
use crate::matrix::{ColumnMatrix, MatrixError, Pattern, SimpleMatrix};
use crate::subset::Subset;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: expected header {expected:?}")]
    BadHeader { line: usize, expected: &'static str },
    #[error("line {line}: invalid integer {token:?}")]
    BadInteger { line: usize, token: String },
    #[error("line {line}: {source}")]
    BadSet { line: usize, source: FamilyError },
    #[error("line {line}: element {element} repeated within the set")]
    DuplicateElement { line: usize, element: usize },
    #[error("line {line}: set already appeared earlier in the file")]
    RepeatedSet { line: usize },
    #[error("line {line}: empty line inside the body")]
    EmptyLine { line: usize },
    #[error("line {line}: expected {expected} characters, found {found}")]
    RowLengthMismatch {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}, column {col}: invalid character {ch:?}, expected '0' or '1'")]
    BadEntry { line: usize, col: usize, ch: char },
    #[error("expected {expected} row line(s), found {found}")]
    MissingRows { expected: usize, found: usize },
    #[error("line {line}: unexpected content after the last row")]
    TrailingContent { line: usize },
    #[error("{source}")]
    BadShape { source: MatrixError },
}

/// Lines with 1-based numbers, trailing `\r` stripped, one trailing blank
/// line tolerated.
fn numbered_lines(text: &str) -> Vec<(usize, &str)> {
    let mut lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l)))
        .collect();
    while lines.last().is_some_and(|(_, l)| l.is_empty()) {
        lines.pop();
    }
    lines
}

fn parse_usize(line: usize, token: &str) -> Result<usize, ParseError> {
    token.parse::<usize>().map_err(|_| ParseError::BadInteger {
        line,
        token: token.to_string(),
    })
}

fn parse_labeled(line: usize, text: &str, label: &str, expected: &'static str) -> Result<usize, ParseError> {
    let value = text
        .strip_prefix(label)
        .ok_or(ParseError::BadHeader { line, expected })?;
    parse_usize(line, value)
}

pub fn parse_family(text: &str) -> Result<SetFamily, ParseError> {
    let lines = numbered_lines(text);
    let (header_no, header) = lines.first().copied().unwrap_or((1, ""));
    let m = parse_labeled(header_no, header, "m=", "m=<int>")?;
    Subset::empty(m).map_err(|e| ParseError::BadSet {
        line: header_no,
        source: e.into(),
    })?;

    let mut sets: Vec<Subset> = Vec::new();
    let mut seen: HashSet<u64> = HashSet::new();
    for &(no, line) in &lines[1..] {
        if line.is_empty() {
            return Err(ParseError::EmptyLine { line: no });
        }
        let set = if line == "-" {
            Subset::empty(m).expect("m already validated")
        } else {
            let mut s = Subset::empty(m).expect("m already validated");
            for token in line.split(',') {
                let e = parse_usize(no, token)?;
                if s.contains(e) {
                    return Err(ParseError::DuplicateElement {
                        line: no,
                        element: e,
                    });
                }
                s = s.insert(e).map_err(|e| ParseError::BadSet {
                    line: no,
                    source: e.into(),
                })?;
            }
            s
        };
        if !seen.insert(set.bits()) {
            return Err(ParseError::RepeatedSet { line: no });
        }
        sets.push(set);
    }
    SetFamily::new(m, sets).map_err(|source| ParseError::BadSet {
        line: header_no,
        source,
    })
}

/// Canonical family text: lex-sorted sets, ascending elements.
pub fn emit_family(family: &SetFamily) -> String {
    family.to_string()
}

fn parse_grid(
    text: &str,
    row_label: &str,
    col_label: &str,
    expected_header: &'static str,
) -> Result<ColumnMatrix, ParseError> {
    let lines = numbered_lines(text);
    let (header_no, header) = lines.first().copied().unwrap_or((1, ""));
    let mut parts = header.splitn(2, ' ');
    let rows_part = parts.next().unwrap_or("");
    let cols_part = parts.next().ok_or(ParseError::BadHeader {
        line: header_no,
        expected: expected_header,
    })?;
    let m = parse_labeled(header_no, rows_part, row_label, expected_header)?;
    let n = parse_labeled(header_no, cols_part, col_label, expected_header)?;
    Subset::empty(m).map_err(|e| ParseError::BadSet {
        line: header_no,
        source: e.into(),
    })?;

    let body = &lines[1..];
    if body.len() < m {
        return Err(ParseError::MissingRows {
            expected: m,
            found: body.len(),
        });
    }
    if body.len() > m {
        return Err(ParseError::TrailingContent {
            line: body[m].0,
        });
    }
    let mut columns = vec![Subset::empty(m).expect("m already validated"); n];
    for (i, &(no, line)) in body.iter().enumerate() {
        if line.chars().count() != n {
            return Err(ParseError::RowLengthMismatch {
                line: no,
                expected: n,
                found: line.chars().count(),
            });
        }
        for (j, ch) in line.chars().enumerate() {
            match ch {
                '1' => {
                    columns[j] = columns[j].insert(i + 1).expect("row index in range");
                }
                '0' => {}
                _ => {
                    return Err(ParseError::BadEntry {
                        line: no,
                        col: j + 1,
                        ch,
                    })
                }
            }
        }
    }
    ColumnMatrix::new(m, columns).map_err(|source| ParseError::BadShape { source })
}

/// Parses a matrix file; the result may have duplicate columns. Use
/// [`ColumnMatrix::into_simple`] when simplicity is required.
pub fn parse_matrix(text: &str) -> Result<ColumnMatrix, ParseError> {
    parse_grid(text, "m=", "n=", "m=<int> n=<int>")
}

pub fn emit_matrix(matrix: &ColumnMatrix) -> String {
    matrix.to_string()
}

pub fn emit_simple_matrix(matrix: &SimpleMatrix) -> String {
    matrix.to_string()
}

pub fn parse_pattern(text: &str) -> Result<Pattern, ParseError> {
    let grid = parse_grid(text, "k=", "l=", "k=<int> l=<int>")?;
    Pattern::new(grid.rows(), grid.columns().to_vec())
        .map_err(|source| ParseError::BadShape { source })
}

pub fn emit_pattern(pattern: &Pattern) -> String {
    pattern.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_round_trip() {
        let text = "m=3\n-\n1,3\n2\n";
        let f = parse_family(text).unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(emit_family(&f), text);
        // unordered input normalizes to canonical order
        let g = parse_family("m=3\n3,1\n2\n-\n").unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn family_errors_carry_lines() {
        assert_eq!(
            parse_family("m=x\n").unwrap_err(),
            ParseError::BadInteger {
                line: 1,
                token: "x".into()
            }
        );
        assert_eq!(
            parse_family("rows=3\n").unwrap_err(),
            ParseError::BadHeader {
                line: 1,
                expected: "m=<int>"
            }
        );
        assert!(matches!(
            parse_family("m=2\n1,5\n").unwrap_err(),
            ParseError::BadSet { line: 2, .. }
        ));
        assert_eq!(
            parse_family("m=2\n1\n\n2\n").unwrap_err(),
            ParseError::EmptyLine { line: 3 }
        );
        assert_eq!(
            parse_family("m=2\n1\n1\n").unwrap_err(),
            ParseError::RepeatedSet { line: 3 }
        );
        assert_eq!(
            parse_family("m=2\n1,1\n").unwrap_err(),
            ParseError::DuplicateElement { line: 2, element: 1 }
        );
    }

    #[test]
    fn matrix_round_trip() {
        let text = "m=2 n=3\n101\n011\n";
        let m = parse_matrix(text).unwrap();
        assert_eq!(m.rows(), 2);
        assert_eq!(m.width(), 3);
        assert!(m.entry(1, 1));
        assert!(!m.entry(1, 2));
        assert_eq!(emit_matrix(&m), text);
    }

    #[test]
    fn matrix_errors_carry_lines() {
        assert_eq!(
            parse_matrix("m=2 n=2\n10\n1\n").unwrap_err(),
            ParseError::RowLengthMismatch {
                line: 3,
                expected: 2,
                found: 1
            }
        );
        assert_eq!(
            parse_matrix("m=2 n=2\n10\n1x\n").unwrap_err(),
            ParseError::BadEntry {
                line: 3,
                col: 2,
                ch: 'x'
            }
        );
        assert_eq!(
            parse_matrix("m=2 n=2\n10\n").unwrap_err(),
            ParseError::MissingRows {
                expected: 2,
                found: 1
            }
        );
        assert_eq!(
            parse_matrix("m=1 n=2\n10\n11\n").unwrap_err(),
            ParseError::TrailingContent { line: 3 }
        );
        assert_eq!(
            parse_matrix("m=2\n10\n01\n").unwrap_err(),
            ParseError::BadHeader {
                line: 1,
                expected: "m=<int> n=<int>"
            }
        );
    }

    #[test]
    fn pattern_round_trip_and_shape() {
        let text = "k=2 l=2\n01\n10\n";
        let p = parse_pattern(text).unwrap();
        assert_eq!(p.rows(), 2);
        assert_eq!(p.width(), 2);
        assert_eq!(emit_pattern(&p), text);

        assert!(matches!(
            parse_pattern("k=0 l=2\n").unwrap_err(),
            ParseError::BadShape {
                source: MatrixError::EmptyPattern
            }
        ));
    }

    #[test]
    fn duplicate_columns_parse_but_do_not_upgrade() {
        let m = parse_matrix("m=2 n=2\n11\n00\n").unwrap();
        assert!(!m.is_simple());
        assert!(m.into_simple().is_err());
    }
}
