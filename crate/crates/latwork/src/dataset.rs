//! Bundled reference values backing the reproduction suite.
//!
//! Every published number the suite checks against lives in one data
//! file embedded at compile time; none are scattered through code. The
//! file is checksummed, so an accidental edit fails loudly instead of
//! silently moving the goalposts.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::BigRational;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::enumerate::Family;
use crate::ratio::parse_rational;
use crate::table::{CountTable, Provenance, TableError, TableKind};

/// The embedded data file, exactly as shipped.
pub(crate) const RAW: &str = include_str!("../data/reference.txt");

/// SHA-256 of [`RAW`], frozen when the file was written.
const RAW_SHA256: &str = "356ddef1f4e1dfc11aef347f4e73ccc02b9517d379653523406ff46a92674865";

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("reference data fails its checksum: expected {expected}, found {found}")]
    ChecksumMismatch { expected: String, found: String },
    #[error("reference data line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("reference data is missing {0}")]
    Missing(&'static str),
    #[error(transparent)]
    Shape(#[from] TableError),
}

fn syntax(line: usize, msg: impl Into<String>) -> DatasetError {
    DatasetError::Syntax {
        line,
        msg: msg.into(),
    }
}

/// Expected outcome of one bound-reproduction chain: the dominant root
/// of the recurrence to six decimals, the four-decimal rate to certify
/// at, and a window base known to suffice for that rate.
#[derive(Debug, Clone)]
pub struct BoundTarget {
    pub root: BigRational,
    pub rate: BigRational,
    pub base: usize,
}

/// The published counts and constants the suite reproduces.
#[derive(Debug, Clone)]
pub struct ReferenceDataset {
    pub modular_vi: CountTable,
    pub modular_piece: CountTable,
    pub semimodular_piece: CountTable,
    /// Total count of modular lattices at the vi table's last size;
    /// the convolution identity must rebuild it from `modular_vi`.
    pub modular_total: BigUint,
    /// Total count of semimodular lattices at size 25. Its vi table is
    /// not bundled, so this value is an input to the one-term bound,
    /// not a reproducible check.
    pub semimodular_total: BigUint,
    pub vsum_modular: BoundTarget,
    pub v2sum_modular: BoundTarget,
    pub v2sum_semimodular: BoundTarget,
    /// Four-decimal floors the one-term bound must reproduce.
    pub simple_rate_modular: BigRational,
    pub simple_rate_semimodular: BigRational,
    /// Rates whose input tables are not bundled, listed by name so the
    /// suite reports them as skipped rather than forgotten.
    pub external_rates: Vec<(String, BigRational)>,
}

impl ReferenceDataset {
    /// Checks the embedded file against its frozen checksum, then
    /// parses it.
    pub fn load() -> Result<Self, DatasetError> {
        verify_checksum(RAW)?;
        parse(RAW)
    }
}

pub(crate) fn verify_checksum(text: &str) -> Result<(), DatasetError> {
    let found = sha256_hex(text);
    if found != RAW_SHA256 {
        return Err(DatasetError::ChecksumMismatch {
            expected: RAW_SHA256.to_string(),
            found,
        });
    }
    Ok(())
}

fn sha256_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

type Targets = BTreeMap<String, (usize, String)>;

fn take_target(targets: &mut Targets, name: &'static str) -> Result<(usize, String), DatasetError> {
    targets.remove(name).ok_or(DatasetError::Missing(name))
}

fn take_rational(targets: &mut Targets, name: &'static str) -> Result<BigRational, DatasetError> {
    let (ln, v) = take_target(targets, name)?;
    parse_rational(&v).map_err(|e| syntax(ln, format!("bad value for {name}: {e}")))
}

fn take_biguint(targets: &mut Targets, name: &'static str) -> Result<BigUint, DatasetError> {
    let (ln, v) = take_target(targets, name)?;
    BigUint::from_str(&v).map_err(|_| syntax(ln, format!("bad value for {name}: '{v}'")))
}

fn take_bound(
    targets: &mut Targets,
    root: &'static str,
    rate: &'static str,
    base: &'static str,
) -> Result<BoundTarget, DatasetError> {
    let root = take_rational(targets, root)?;
    let rate = take_rational(targets, rate)?;
    let (ln, v) = take_target(targets, base)?;
    let base = v
        .parse()
        .map_err(|_| syntax(ln, format!("bad value for {base}: '{v}'")))?;
    Ok(BoundTarget { root, rate, base })
}

pub(crate) fn parse(text: &str) -> Result<ReferenceDataset, DatasetError> {
    let mut lines = text.lines().enumerate().map(|(i, s)| (i + 1, s));

    match lines.next() {
        Some((_, "LATREF 1")) => {}
        Some((ln, other)) => {
            return Err(syntax(ln, format!("expected header LATREF 1, found '{other}'")));
        }
        None => return Err(syntax(1, "empty file")),
    }

    let mut tables: Vec<(usize, CountTable)> = Vec::new();
    let mut targets: BTreeMap<String, (usize, String)> = BTreeMap::new();
    let mut last_ln = 1;
    let mut ended = false;

    while let Some((ln, line)) = lines.next() {
        last_ln = ln;
        if line == "end" {
            ended = true;
            if let Some((ln, _)) = lines.next() {
                return Err(syntax(ln, "content after the end line"));
            }
            break;
        }
        if let Some(rest) = line.strip_prefix("table ") {
            let parts: Vec<&str> = rest.split(' ').collect();
            let [family, kind, rows] = parts.as_slice() else {
                return Err(syntax(ln, "expected 'table FAMILY KIND ROWS'"));
            };
            let family = Family::from_str(family).map_err(|e| syntax(ln, e))?;
            let kind = TableKind::from_name(kind)
                .ok_or_else(|| syntax(ln, format!("unknown table kind '{kind}'")))?;
            let rows: usize = rows
                .parse()
                .map_err(|_| syntax(ln, format!("bad row count '{rows}'")))?;
            let mut values = Vec::with_capacity(rows);
            for expected in 1..=rows {
                let (ln, row) = lines
                    .next()
                    .ok_or_else(|| syntax(last_ln + 1, "table cut short"))?;
                last_ln = ln;
                let (idx, val) = row
                    .split_once('\t')
                    .ok_or_else(|| syntax(ln, "expected 'N<TAB>VALUE'"))?;
                if idx.parse::<usize>().ok() != Some(expected) {
                    return Err(syntax(ln, format!("expected row {expected}, found '{idx}'")));
                }
                values.push(
                    BigUint::from_str(val)
                        .map_err(|_| syntax(ln, format!("bad count '{val}'")))?,
                );
            }
            if tables
                .iter()
                .any(|(_, t)| t.family == family && t.kind == kind)
            {
                return Err(syntax(ln, format!("duplicate table {family} {}", kind.name())));
            }
            tables.push((
                ln,
                CountTable::new(family, kind, Provenance::Reference, values)?,
            ));
        } else if let Some(rest) = line.strip_prefix("target ") {
            let (name, value) = rest
                .split_once(' ')
                .ok_or_else(|| syntax(ln, "expected 'target NAME VALUE'"))?;
            if targets
                .insert(name.to_string(), (ln, value.to_string()))
                .is_some()
            {
                return Err(syntax(ln, format!("duplicate target {name}")));
            }
        } else {
            return Err(syntax(ln, format!("unrecognized line '{line}'")));
        }
    }
    if !ended {
        return Err(syntax(last_ln, "missing end line"));
    }

    let mut take_table = |family: Family, kind: TableKind| -> Result<CountTable, DatasetError> {
        let pos = tables
            .iter()
            .position(|(_, t)| t.family == family && t.kind == kind);
        match pos {
            Some(i) => Ok(tables.remove(i).1),
            None => Err(DatasetError::Missing(match (family, kind) {
                (Family::Modular, TableKind::Vi) => "the modular vi table",
                (Family::Modular, TableKind::Piece) => "the modular piece table",
                _ => "the semimodular piece table",
            })),
        }
    };
    let modular_vi = take_table(Family::Modular, TableKind::Vi)?;
    let modular_piece = take_table(Family::Modular, TableKind::Piece)?;
    let semimodular_piece = take_table(Family::Semimodular, TableKind::Piece)?;
    if let Some((ln, t)) = tables.first() {
        return Err(syntax(*ln, format!("unexpected table {} {}", t.family, t.kind.name())));
    }

    let vsum_modular = take_bound(
        &mut targets,
        "root-vsum-modular",
        "rate-vsum-modular",
        "base-vsum-modular",
    )?;
    let v2sum_modular = take_bound(
        &mut targets,
        "root-v2sum-modular",
        "rate-v2sum-modular",
        "base-v2sum-modular",
    )?;
    let v2sum_semimodular = take_bound(
        &mut targets,
        "root-v2sum-semimodular",
        "rate-v2sum-semimodular",
        "base-v2sum-semimodular",
    )?;
    let simple_rate_modular = take_rational(&mut targets, "simple-rate-modular")?;
    let simple_rate_semimodular = take_rational(&mut targets, "simple-rate-semimodular")?;
    let modular_total = take_biguint(&mut targets, "modular-total-30")?;
    let semimodular_total = take_biguint(&mut targets, "semimodular-total-25")?;

    let mut external_rates = Vec::new();
    for (name, (ln, v)) in targets {
        let Some(short) = name.strip_prefix("external-rate-") else {
            return Err(syntax(ln, format!("unknown target {name}")));
        };
        let rate =
            parse_rational(&v).map_err(|e| syntax(ln, format!("bad value for {name}: {e}")))?;
        external_rates.push((short.to_string(), rate));
    }

    Ok(ReferenceDataset {
        modular_vi,
        modular_piece,
        semimodular_piece,
        modular_total,
        semimodular_total,
        vsum_modular,
        v2sum_modular,
        v2sum_semimodular,
        simple_rate_modular,
        simple_rate_semimodular,
        external_rates,
    })
}
