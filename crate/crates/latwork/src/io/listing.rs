//! LATF 1 lattice listings.
//!
//! A listing starts with the header line `LATF 1`; each following line
//! is one lattice, written `n;C0;C1;...;C(n-1)` where Ci is the
//! comma-separated ascending list of element i's upper covers and the
//! top's field is empty. Elements are indexed in the linear-extension
//! convention, bottom first. Rendering sorts records by canonical
//! code, so listings diff cleanly across machines.

use crate::canon::canonical_code;
use crate::lattice::{as_lattice, Lattice};
use crate::poset::build_poset;
use thiserror::Error;

pub const LISTING_HEADER: &str = "LATF 1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ListingError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: record is not a lattice: {reason}")]
    Validation { line: usize, reason: String },
}

fn syntax(line: usize, msg: impl Into<String>) -> ListingError {
    ListingError::Syntax {
        line,
        msg: msg.into(),
    }
}

fn parse_record(line_no: usize, line: &str) -> Result<Lattice, ListingError> {
    let fields: Vec<&str> = line.split(';').collect();
    let n: usize = fields[0]
        .parse()
        .map_err(|_| syntax(line_no, format!("bad element count '{}'", fields[0])))?;
    if fields.len() != n + 1 {
        return Err(syntax(
            line_no,
            format!("expected {n} cover fields, found {}", fields.len() - 1),
        ));
    }
    let mut covers = Vec::new();
    for (i, field) in fields[1..].iter().enumerate() {
        if field.is_empty() {
            continue;
        }
        let mut prev = None;
        for item in field.split(',') {
            let j: usize = item
                .parse()
                .map_err(|_| syntax(line_no, format!("bad cover entry '{item}'")))?;
            if prev.is_some_and(|p| p >= j) {
                return Err(syntax(
                    line_no,
                    format!("covers of element {i} are not strictly ascending"),
                ));
            }
            prev = Some(j);
            covers.push((i, j));
        }
    }
    let poset = build_poset(n, &covers).map_err(|e| ListingError::Validation {
        line: line_no,
        reason: e.to_string(),
    })?;
    as_lattice(poset).map_err(|e| ListingError::Validation {
        line: line_no,
        reason: e.to_string(),
    })
}

/// Reads a whole listing. Line numbers in errors are 1-based over the
/// input, header included.
pub fn parse_listing(src: &str) -> Result<Vec<Lattice>, ListingError> {
    let mut lattices = Vec::new();
    let mut lines = src.split('\n').enumerate().peekable();
    match lines.next() {
        Some((_, LISTING_HEADER)) => {}
        Some((_, other)) => {
            return Err(syntax(1, format!("expected header '{LISTING_HEADER}', found '{other}'")))
        }
        None => return Err(syntax(1, "empty input")),
    }
    while let Some((idx, line)) = lines.next() {
        if line.is_empty() {
            if lines.peek().is_none() {
                break; // the final newline
            }
            return Err(syntax(idx + 1, "blank line inside listing"));
        }
        lattices.push(parse_record(idx + 1, line)?);
    }
    Ok(lattices)
}

fn render_record(l: &Lattice) -> String {
    let n = l.n();
    let mut out = n.to_string();
    for i in 0..n {
        out.push(';');
        let mut ups: Vec<usize> = l.poset().upper_covers(i).to_vec();
        ups.sort_unstable();
        let strs: Vec<String> = ups.iter().map(|j| j.to_string()).collect();
        out.push_str(&strs.join(","));
    }
    out
}

/// Writes a listing with records sorted by canonical code, so the
/// bytes depend only on the set of isomorphism classes.
pub fn render_listing(lattices: &[Lattice]) -> String {
    let mut keyed: Vec<(Vec<u8>, String)> = lattices
        .iter()
        .map(|l| {
            (
                canonical_code(l.poset()).as_bytes().to_vec(),
                render_record(l),
            )
        })
        .collect();
    keyed.sort();
    let mut out = String::from(LISTING_HEADER);
    out.push('\n');
    for (_, rec) in keyed {
        out.push_str(&rec);
        out.push('\n');
    }
    out
}
