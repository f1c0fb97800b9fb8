//! Count tables indexed by lattice size, and the convolution identity
//! linking a family's total counts to its vertically-indecomposable
//! counts.
//!
//! For a family closed under vertical composition and decomposition,
//! the totals satisfy f(1) = 1 and, for n >= 2,
//! f(n) = sum over k = 2..n of f_vi(k) * f(n - k + 1),
//! because cutting at the lowest knot splits every lattice uniquely
//! into an indecomposable bottom part and an arbitrary rest.

use crate::enumerate::Family;
use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TableKind {
    /// f(n): all members of the family with n elements.
    Total,
    /// f_vi(n): the vertically indecomposable members.
    Vi,
    /// f_pc(n): the gluing pieces.
    Piece,
}

impl TableKind {
    pub fn name(self) -> &'static str {
        match self {
            TableKind::Total => "total",
            TableKind::Vi => "vi",
            TableKind::Piece => "piece",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "total" => Some(TableKind::Total),
            "vi" => Some(TableKind::Vi),
            "piece" => Some(TableKind::Piece),
            _ => None,
        }
    }
}

/// Where a table's numbers came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    /// Counted by this crate's own exhaustive enumeration.
    Enumerated,
    /// Shipped with the crate as published reference values.
    Reference,
    /// Loaded from a user-supplied file.
    ExternalFile,
}

impl Provenance {
    pub fn name(self) -> &'static str {
        match self {
            Provenance::Enumerated => "enumerated",
            Provenance::Reference => "reference",
            Provenance::ExternalFile => "external-file",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "enumerated" => Some(Provenance::Enumerated),
            "reference" => Some(Provenance::Reference),
            "external-file" => Some(Provenance::ExternalFile),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    /// Deconvolution produced a negative coefficient at size `n`; the
    /// totals cannot come from any vi table.
    #[error("deconvolution yields a negative vi count at n = {n}")]
    NegativeDeconvolution { n: usize },
    #[error("table must start at n = 1 with a nonempty value list")]
    EmptyTable,
    #[error("a total table must have f(1) = 1, got {got}")]
    BadUnit { got: BigUint },
    #[error("a piece table must vanish for n <= 5, got a nonzero entry at n = {n}")]
    EarlyPiece { n: usize },
}

/// Counts per size for one family, `values[i]` holding size i + 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    pub family: Family,
    pub kind: TableKind,
    pub provenance: Provenance,
    values: Vec<BigUint>,
}

impl CountTable {
    pub fn new(
        family: Family,
        kind: TableKind,
        provenance: Provenance,
        values: Vec<BigUint>,
    ) -> Result<Self, TableError> {
        if values.is_empty() {
            return Err(TableError::EmptyTable);
        }
        if kind == TableKind::Total && !values[0].is_one() {
            return Err(TableError::BadUnit {
                got: values[0].clone(),
            });
        }
        if kind == TableKind::Piece {
            if let Some(i) = values.iter().take(5).position(|v| !v.is_zero()) {
                return Err(TableError::EarlyPiece { n: i + 1 });
            }
        }
        Ok(CountTable {
            family,
            kind,
            provenance,
            values,
        })
    }

    /// Largest size the table covers.
    pub fn max_n(&self) -> usize {
        self.values.len()
    }

    /// Count at size `n` (1-indexed), or None past the end.
    pub fn get(&self, n: usize) -> Option<&BigUint> {
        if n == 0 {
            return None;
        }
        self.values.get(n - 1)
    }

    pub fn values(&self) -> &[BigUint] {
        &self.values
    }
}

/// Totals from vi counts via the convolution identity. `vi[0]` is the
/// size-1 entry (by convention 1, for the empty stack) and is not used.
pub(crate) fn totals_by_convolution(vi: &[BigUint]) -> Vec<BigUint> {
    let n_max = vi.len();
    let mut f: Vec<BigUint> = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        if n == 1 {
            f.push(BigUint::one());
            continue;
        }
        let mut acc = BigUint::zero();
        for k in 2..=n {
            acc += &vi[k - 1] * &f[n - k];
        }
        f.push(acc);
    }
    f
}

pub fn total_from_vi(vi: &CountTable) -> CountTable {
    assert_eq!(vi.kind, TableKind::Vi, "input table must hold vi counts");
    CountTable {
        family: vi.family,
        kind: TableKind::Total,
        provenance: vi.provenance,
        values: totals_by_convolution(&vi.values),
    }
}

/// Inverts the convolution: recovers vi counts from totals. Fails when
/// the totals are not realizable by any nonnegative vi table.
pub fn vi_from_total(total: &CountTable) -> Result<CountTable, TableError> {
    assert_eq!(
        total.kind,
        TableKind::Total,
        "input table must hold total counts"
    );
    let f = &total.values;
    let mut vi: Vec<BigUint> = vec![BigUint::one()];
    for n in 2..=f.len() {
        let mut acc = BigUint::zero();
        for k in 2..n {
            acc += &vi[k - 1] * &f[n - k];
        }
        let target = &f[n - 1];
        if *target < acc {
            return Err(TableError::NegativeDeconvolution { n });
        }
        vi.push(target - acc);
    }
    Ok(CountTable {
        family: total.family,
        kind: TableKind::Vi,
        provenance: total.provenance,
        values: vi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(values: &[u64]) -> Vec<BigUint> {
        values.iter().map(|&v| BigUint::from(v)).collect()
    }

    fn table(kind: TableKind, values: &[u64]) -> CountTable {
        CountTable::new(Family::Modular, kind, Provenance::Enumerated, big(values)).unwrap()
    }

    #[test]
    fn convolution_reproduces_chain_counts() {
        // A family whose only vi members are the singleton and the
        // two-element chain stacks into exactly one lattice per size.
        let vi = table(TableKind::Vi, &[1, 1, 0, 0, 0, 0]);
        let total = total_from_vi(&vi);
        assert_eq!(total.values(), big(&[1, 1, 1, 1, 1, 1]));
    }

    #[test]
    fn convolution_matches_small_modular_counts() {
        let vi = table(TableKind::Vi, &[1, 1, 0, 1, 1, 2, 3, 7]);
        let total = total_from_vi(&vi);
        assert_eq!(total.values(), big(&[1, 1, 1, 2, 4, 8, 16, 34]));
        assert_eq!(total.kind, TableKind::Total);
    }

    #[test]
    fn deconvolution_inverts_convolution() {
        let vi = table(TableKind::Vi, &[1, 1, 0, 1, 1, 2, 3, 7]);
        let total = total_from_vi(&vi);
        let back = vi_from_total(&total).unwrap();
        assert_eq!(back.values(), vi.values());
    }

    #[test]
    fn unrealizable_totals_are_rejected() {
        let total = table(TableKind::Total, &[1, 2, 1]);
        assert_eq!(
            vi_from_total(&total),
            Err(TableError::NegativeDeconvolution { n: 3 })
        );
    }

    #[test]
    fn constructor_enforces_shape() {
        assert_eq!(
            CountTable::new(
                Family::All,
                TableKind::Total,
                Provenance::Enumerated,
                vec![]
            ),
            Err(TableError::EmptyTable)
        );
        assert_eq!(
            CountTable::new(
                Family::All,
                TableKind::Total,
                Provenance::Enumerated,
                big(&[2, 1])
            ),
            Err(TableError::BadUnit {
                got: BigUint::from(2u32)
            })
        );
        assert_eq!(
            CountTable::new(
                Family::All,
                TableKind::Piece,
                Provenance::Enumerated,
                big(&[0, 0, 1])
            ),
            Err(TableError::EarlyPiece { n: 3 })
        );
        let ok = table(TableKind::Piece, &[0, 0, 0, 0, 0, 1, 0]);
        assert_eq!(ok.get(6), Some(&BigUint::one()));
        assert_eq!(ok.get(0), None);
        assert_eq!(ok.get(8), None);
        assert_eq!(ok.max_n(), 7);
    }
}
