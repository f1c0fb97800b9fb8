//! LATCERT 1 certificate files.
//!
//! A certificate is stored fully expanded: the source count table, the
//! recurrence it induces, the rate, and the exact window values, all
//! as decimal integers, one datum per line. The parser rebuilds the
//! recurrence from the stored table and refuses the file if the stored
//! coefficients or initial values disagree, so a certificate cannot be
//! internally inconsistent; whether its claim holds is then
//! [`crate::certify::verify_certificate`]'s job.

use crate::certify::BoundCertificate;
use crate::enumerate::Family;
use crate::ratio::{format_fraction, parse_rational};
use crate::recurrence::{build_recurrence_v2sum, build_recurrence_vsum, Shape};
use crate::table::{CountTable, Provenance, TableKind};
use num_bigint::BigUint;
use std::fmt::Write as _;
use std::str::FromStr;
use thiserror::Error;

pub const CERTIFICATE_HEADER: &str = "LATCERT 1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateFileError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("inconsistent certificate: {msg}")]
    Inconsistent { msg: String },
}

fn inconsistent(msg: impl Into<String>) -> CertificateFileError {
    CertificateFileError::Inconsistent { msg: msg.into() }
}

struct Reader<'a> {
    lines: Vec<&'a str>,
    pos: usize,
}

impl<'a> Reader<'a> {
    fn new(src: &'a str) -> Self {
        Reader {
            lines: src.split('\n').collect(),
            pos: 0,
        }
    }

    fn line_no(&self) -> usize {
        self.pos + 1
    }

    fn syntax(&self, msg: impl Into<String>) -> CertificateFileError {
        CertificateFileError::Syntax {
            line: self.line_no(),
            msg: msg.into(),
        }
    }

    fn next_line(&mut self) -> Result<&'a str, CertificateFileError> {
        let line = self
            .lines
            .get(self.pos)
            .copied()
            .filter(|l| !l.is_empty())
            .ok_or_else(|| self.syntax("unexpected end of certificate"))?;
        self.pos += 1;
        Ok(line)
    }

    /// Reads `key value`, returning the value.
    fn keyed(&mut self, key: &str) -> Result<&'a str, CertificateFileError> {
        let line = self.next_line()?;
        line.strip_prefix(key)
            .and_then(|rest| rest.strip_prefix(' '))
            .filter(|v| !v.is_empty())
            .ok_or_else(|| CertificateFileError::Syntax {
                line: self.pos,
                msg: format!("expected '{key} <value>', found '{line}'"),
            })
    }

    /// Reads `key index value` where index must equal `expect`.
    fn indexed(&mut self, key: &str, expect: usize) -> Result<BigUint, CertificateFileError> {
        let v = self.keyed(key)?;
        let line_no = self.pos;
        let (idx, val) = v.split_once(' ').ok_or(CertificateFileError::Syntax {
            line: line_no,
            msg: format!("expected '{key} <index> <value>'"),
        })?;
        let idx: usize = idx.parse().map_err(|_| CertificateFileError::Syntax {
            line: line_no,
            msg: format!("bad index '{idx}'"),
        })?;
        if idx != expect {
            return Err(CertificateFileError::Syntax {
                line: line_no,
                msg: format!("expected {key} index {expect}, found {idx}"),
            });
        }
        BigUint::from_str(val).map_err(|_| CertificateFileError::Syntax {
            line: line_no,
            msg: format!("bad value '{val}'"),
        })
    }

    fn parsed<T: FromStr>(&mut self, key: &str, what: &str) -> Result<T, CertificateFileError> {
        let v = self.keyed(key)?;
        v.parse().map_err(|_| CertificateFileError::Syntax {
            line: self.pos,
            msg: format!("bad {what} '{v}'"),
        })
    }
}

/// Parses and consistency-checks a certificate file.
pub fn parse_certificate(src: &str) -> Result<BoundCertificate, CertificateFileError> {
    let mut r = Reader::new(src);
    let header = r.next_line()?;
    if header != CERTIFICATE_HEADER {
        return Err(CertificateFileError::Syntax {
            line: 1,
            msg: format!("expected header '{CERTIFICATE_HEADER}', found '{header}'"),
        });
    }
    let shape: Shape = r.parsed("shape", "shape")?;
    let family: Family = r.parsed("family", "family")?;
    let kind = {
        let v = r.keyed("kind")?;
        TableKind::from_name(v).ok_or_else(|| CertificateFileError::Syntax {
            line: r.pos,
            msg: format!("bad kind '{v}'"),
        })?
    };
    let provenance = {
        let v = r.keyed("provenance")?;
        Provenance::from_name(v).ok_or_else(|| CertificateFileError::Syntax {
            line: r.pos,
            msg: format!("bad provenance '{v}'"),
        })?
    };
    let order: usize = r.parsed("order", "order")?;
    let horizon: usize = r.parsed("horizon", "horizon")?;
    let table_rows: usize = r.parsed("table-rows", "row count")?;
    let rate = {
        let v = r.keyed("rate")?;
        parse_rational(v).map_err(|e| CertificateFileError::Syntax {
            line: r.pos,
            msg: e.to_string(),
        })?
    };
    let window_start: usize = r.parsed("window-start", "window start")?;

    let mut coeffs = Vec::with_capacity(order);
    for i in 1..=order {
        coeffs.push(r.indexed("coeff", i)?);
    }
    let mut initial = Vec::with_capacity(horizon);
    for n in 1..=horizon {
        initial.push(r.indexed("initial", n)?);
    }
    let mut table = Vec::with_capacity(table_rows);
    for n in 1..=table_rows {
        table.push(r.indexed("table", n)?);
    }
    let mut window = Vec::with_capacity(order);
    for k in 0..order {
        window.push(r.indexed("window", window_start + k)?);
    }
    let end = r.next_line()?;
    if end != "end" {
        return Err(CertificateFileError::Syntax {
            line: r.pos,
            msg: format!("expected 'end', found '{end}'"),
        });
    }
    if r.lines[r.pos..].iter().any(|l| !l.is_empty()) {
        return Err(CertificateFileError::Syntax {
            line: r.pos + 1,
            msg: "content after 'end'".into(),
        });
    }

    // Rebuild the recurrence from the stored table and insist the
    // stored copy matches.
    let expected_kind = match shape {
        Shape::VSum => TableKind::Vi,
        Shape::V2Sum => TableKind::Piece,
    };
    if kind != expected_kind {
        return Err(inconsistent(format!(
            "{shape} recurrences are built from {} tables, not {} tables",
            expected_kind.name(),
            kind.name()
        )));
    }
    let source = CountTable::new(family, kind, provenance, table)
        .map_err(|e| inconsistent(e.to_string()))?;
    let min_horizon = match shape {
        Shape::VSum => 2,
        Shape::V2Sum => 6,
    };
    if horizon < min_horizon || horizon > source.max_n() {
        return Err(inconsistent(format!(
            "horizon {horizon} outside the usable range for a {shape} recurrence over {} table rows",
            source.max_n()
        )));
    }
    let rebuilt = match shape {
        Shape::VSum => build_recurrence_vsum(&source, horizon),
        Shape::V2Sum => build_recurrence_v2sum(&source, horizon),
    };
    if rebuilt.coeffs != coeffs {
        return Err(inconsistent(
            "stored coefficients disagree with the stored table",
        ));
    }
    if rebuilt.initial != initial {
        return Err(inconsistent(
            "stored initial values disagree with the stored table",
        ));
    }
    Ok(BoundCertificate {
        recurrence: rebuilt,
        c: rate,
        window_start,
        window,
    })
}

/// Writes a certificate in the LATCERT 1 format. Inverse of
/// [`parse_certificate`] byte for byte.
pub fn render_certificate(cert: &BoundCertificate) -> String {
    let rec = &cert.recurrence;
    let src = &rec.source;
    let mut out = String::new();
    let w = &mut out;
    let _ = writeln!(w, "{CERTIFICATE_HEADER}");
    let _ = writeln!(w, "shape {}", rec.shape);
    let _ = writeln!(w, "family {}", src.family);
    let _ = writeln!(w, "kind {}", src.kind.name());
    let _ = writeln!(w, "provenance {}", src.provenance.name());
    let _ = writeln!(w, "order {}", rec.order());
    let _ = writeln!(w, "horizon {}", rec.horizon());
    let _ = writeln!(w, "table-rows {}", src.max_n());
    let _ = writeln!(w, "rate {}", format_fraction(&cert.c));
    let _ = writeln!(w, "window-start {}", cert.window_start);
    for (i, a) in rec.coeffs.iter().enumerate() {
        let _ = writeln!(w, "coeff {} {a}", i + 1);
    }
    for (i, v) in rec.initial.iter().enumerate() {
        let _ = writeln!(w, "initial {} {v}", i + 1);
    }
    for (i, v) in src.values().iter().enumerate() {
        let _ = writeln!(w, "table {} {v}", i + 1);
    }
    for (k, v) in cert.window.iter().enumerate() {
        let _ = writeln!(w, "window {} {v}", cert.window_start + k);
    }
    let _ = writeln!(w, "end");
    out
}
