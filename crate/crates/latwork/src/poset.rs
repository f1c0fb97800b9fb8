//! Finite posets given by their cover relation (Hasse diagram).
//!
//! Elements are `0..n`. The indexing is always a linear extension: every
//! cover pair `(i, j)` with `i` below `j` satisfies `i < j`. Constructors
//! elsewhere in the crate reindex their results to keep this invariant,
//! so "element 0 is the bottom" and "element n-1 is the top" hold for
//! every lattice the crate hands out.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PosetError {
    /// A cover pair mentions an element outside `0..n`.
    #[error("cover pair ({i}, {j}) references an element outside 0..{n}")]
    IndexOutOfRange { i: usize, j: usize, n: usize },
    /// A pair is not consistent with any linear extension. Edges must
    /// point from the smaller index to the strictly larger one; a pair
    /// with `i >= j` would close a cycle under the declared order.
    #[error("cover pair ({i}, {j}) is not ascending; the input order is not acyclic")]
    NotAcyclic { i: usize, j: usize },
    /// A pair is implied by the others (or repeated), so the input is
    /// not a transitive reduction. Inputs are rejected, never repaired.
    #[error("cover pair ({i}, {j}) is implied by the remaining pairs; input is not reduced")]
    NotReduced { i: usize, j: usize },
    /// The empty poset is not representable.
    #[error("a poset needs at least one element")]
    Empty,
}

/// An immutable finite poset.
///
/// Stores both the cover lists and the full order relation. `leq` is a
/// flat row-major boolean matrix; for desk-scale inputs (up to a few
/// hundred elements) this is compact and keeps every query branch-free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    n: usize,
    /// `up_covers[i]` lists the j with i covered by j, ascending.
    up_covers: Vec<Vec<usize>>,
    /// `low_covers[j]` lists the i with i covered by j, ascending.
    low_covers: Vec<Vec<usize>>,
    /// Row-major reflexive order matrix: `leq[i * n + j]` iff i <= j.
    leq: Vec<bool>,
}

/// Builds a poset from its cover pairs.
///
/// Preconditions: `n >= 1`; every pair `(i, j)` means "i is covered by
/// j" and must satisfy `i < j < n`; no duplicates; the pair set must be
/// its own transitive reduction.
pub fn build_poset(n: usize, covers: &[(usize, usize)]) -> Result<Poset, PosetError> {
    if n == 0 {
        return Err(PosetError::Empty);
    }
    let mut up: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(i, j) in covers {
        if i >= n || j >= n {
            return Err(PosetError::IndexOutOfRange { i, j, n });
        }
        if i >= j {
            return Err(PosetError::NotAcyclic { i, j });
        }
        if up[i].contains(&j) {
            return Err(PosetError::NotReduced { i, j });
        }
        up[i].push(j);
    }
    for list in &mut up {
        list.sort_unstable();
    }

    // Reflexive-transitive closure. Indices are a linear extension, so a
    // single descending sweep suffices.
    let mut leq = vec![false; n * n];
    for i in (0..n).rev() {
        leq[i * n + i] = true;
        for &j in &up[i] {
            for k in j..n {
                if leq[j * n + k] {
                    leq[i * n + k] = true;
                }
            }
        }
    }

    // Reject pairs implied by transitivity through an intermediate k.
    for &(i, j) in covers {
        for k in 0..n {
            if k != i && k != j && leq[i * n + k] && leq[k * n + j] {
                return Err(PosetError::NotReduced { i, j });
            }
        }
    }

    let mut low: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, list) in up.iter().enumerate() {
        for &j in list {
            low[j].push(i);
        }
    }

    Ok(Poset {
        n,
        up_covers: up,
        low_covers: low,
        leq,
    })
}

impl Poset {
    pub fn n(&self) -> usize {
        self.n
    }

    /// True iff `x <= y` in the order.
    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.n + y]
    }

    #[inline]
    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// Elements covering `x`, ascending.
    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.up_covers[x]
    }

    /// Elements covered by `x`, ascending.
    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.low_covers[x]
    }

    /// All cover pairs `(i, j)` with i covered by j, lexicographic.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, list) in self.up_covers.iter().enumerate() {
            for &j in list {
                out.push((i, j));
            }
        }
        out
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.n).filter(|&x| self.low_covers[x].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.n).filter(|&x| self.up_covers[x].is_empty()).collect()
    }

    /// Recomputes the cover pairs from the order matrix alone: `(i, j)`
    /// is a cover iff `i < j` with nothing strictly between. Used to
    /// check that the stored Hasse diagram is the transitive reduction
    /// of the stored order.
    pub fn covers_from_order(&self) -> Vec<(usize, usize)> {
        let n = self.n;
        let mut out = Vec::new();
        for i in 0..n {
            'next: for j in (i + 1)..n {
                if !self.leq(i, j) {
                    continue;
                }
                for k in (i + 1)..j {
                    if self.leq(i, k) && self.leq(k, j) {
                        continue 'next;
                    }
                }
                out.push((i, j));
            }
        }
        out
    }

    /// Number of true entries in the order matrix (reflexive included).
    pub fn relation_size(&self) -> usize {
        self.leq.iter().filter(|&&b| b).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_chain() {
        let p = build_poset(2, &[(0, 1)]).unwrap();
        assert!(p.leq(0, 1));
        assert!(!p.leq(1, 0));
        assert_eq!(p.upper_covers(0), &[1]);
        assert_eq!(p.lower_covers(1), &[0]);
        assert_eq!(p.minimal_elements(), vec![0]);
        assert_eq!(p.maximal_elements(), vec![1]);
    }

    #[test]
    fn singleton() {
        let p = build_poset(1, &[]).unwrap();
        assert!(p.leq(0, 0));
        assert_eq!(p.relation_size(), 1);
    }

    #[test]
    fn transitive_pair_rejected() {
        let err = build_poset(3, &[(0, 1), (1, 2), (0, 2)]).unwrap_err();
        assert_eq!(err, PosetError::NotReduced { i: 0, j: 2 });
    }

    #[test]
    fn duplicate_pair_rejected() {
        let err = build_poset(2, &[(0, 1), (0, 1)]).unwrap_err();
        assert_eq!(err, PosetError::NotReduced { i: 0, j: 1 });
    }

    #[test]
    fn out_of_range_rejected() {
        let err = build_poset(2, &[(0, 2)]).unwrap_err();
        assert_eq!(err, PosetError::IndexOutOfRange { i: 0, j: 2, n: 2 });
    }

    #[test]
    fn descending_pair_rejected() {
        let err = build_poset(3, &[(2, 1)]).unwrap_err();
        assert_eq!(err, PosetError::NotAcyclic { i: 2, j: 1 });
    }

    #[test]
    fn empty_rejected() {
        assert_eq!(build_poset(0, &[]).unwrap_err(), PosetError::Empty);
    }

    /// Two parallel chains 0<1<3<5 and 0<2<4<5 (a hexagon ring). The
    /// closure has 6 reflexive + 6 cover + 5 transitive entries.
    #[test]
    fn hexagon_closure_size() {
        let p = build_poset(6, &[(0, 1), (0, 2), (1, 3), (2, 4), (3, 5), (4, 5)]).unwrap();
        assert_eq!(p.relation_size(), 17);
        assert!(p.leq(0, 5));
        assert!(p.leq(1, 5));
        assert!(!p.comparable(1, 2));
        assert!(!p.comparable(3, 4));
    }

    #[test]
    fn covers_round_trip_through_order() {
        let covers = vec![(0, 1), (0, 2), (1, 3), (2, 4), (3, 5), (4, 5)];
        let p = build_poset(6, &covers).unwrap();
        assert_eq!(p.covers_from_order(), p.cover_pairs());
    }
}
