//! TSV count tables: `n<TAB>value` rows with n contiguous from 1.

use crate::enumerate::Family;
use crate::table::{CountTable, Provenance, TableError, TableKind};
use num_bigint::BigUint;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableFileError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: expected index {expected}{}", found_note(.found))]
    NonContiguousIndex {
        line: usize,
        expected: usize,
        found: Option<usize>,
    },
    #[error(transparent)]
    Shape(#[from] TableError),
}

fn found_note(found: &Option<usize>) -> String {
    match found {
        Some(n) => format!(", found {n}"),
        None => ", found end of table".into(),
    }
}

/// Parses a TSV table into a CountTable with the stated family, kind,
/// and provenance.
pub fn parse_count_table(
    src: &str,
    family: Family,
    kind: TableKind,
    provenance: Provenance,
) -> Result<CountTable, TableFileError> {
    let mut values: Vec<BigUint> = Vec::new();
    let mut lines = src.split('\n').enumerate().peekable();
    while let Some((idx, line)) = lines.next() {
        let line_no = idx + 1;
        if line.is_empty() {
            if lines.peek().is_none() {
                break;
            }
            return Err(TableFileError::Syntax {
                line: line_no,
                msg: "blank line inside table".into(),
            });
        }
        let (n_str, v_str) = line.split_once('\t').ok_or(TableFileError::Syntax {
            line: line_no,
            msg: "expected two tab-separated columns".into(),
        })?;
        if v_str.contains('\t') {
            return Err(TableFileError::Syntax {
                line: line_no,
                msg: "expected two tab-separated columns".into(),
            });
        }
        let n: usize = n_str.parse().map_err(|_| TableFileError::Syntax {
            line: line_no,
            msg: format!("bad index '{n_str}'"),
        })?;
        if n != values.len() + 1 {
            return Err(TableFileError::NonContiguousIndex {
                line: line_no,
                expected: values.len() + 1,
                found: Some(n),
            });
        }
        let v = BigUint::from_str(v_str).map_err(|_| TableFileError::Syntax {
            line: line_no,
            msg: format!("bad count '{v_str}'"),
        })?;
        values.push(v);
    }
    if values.is_empty() {
        return Err(TableFileError::NonContiguousIndex {
            line: 1,
            expected: 1,
            found: None,
        });
    }
    Ok(CountTable::new(family, kind, provenance, values)?)
}

/// Loads a user-supplied table, marking where it came from.
pub fn ingest_external(
    src: &str,
    family: Family,
    kind: TableKind,
) -> Result<CountTable, TableFileError> {
    parse_count_table(src, family, kind, Provenance::ExternalFile)
}

pub fn render_count_table(table: &CountTable) -> String {
    let mut out = String::new();
    for (i, v) in table.values().iter().enumerate() {
        out.push_str(&format!("{}\t{v}\n", i + 1));
    }
    out
}
