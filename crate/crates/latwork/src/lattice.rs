//! Lattices: posets in which every pair has a join and a meet.
//!
//! [`as_lattice`] validates a poset and precomputes the full join and
//! meet tables, so all later queries are table lookups. With the linear
//! extension invariant the bottom is element 0 and the top is n-1.

use thiserror::Error;

use crate::poset::{build_poset, Poset};

/// Why a pair has no join or meet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeFailure {
    /// The upper bounds of the witness pair have no least element.
    NoLeastUpperBound,
    /// The lower bounds of the witness pair have no greatest element.
    NoGreatestLowerBound,
}

impl std::fmt::Display for LatticeFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LatticeFailure::NoLeastUpperBound => write!(f, "no least upper bound"),
            LatticeFailure::NoGreatestLowerBound => write!(f, "no greatest lower bound"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("poset has {0} minimal elements, a lattice needs exactly one")]
    NoUniqueBottom(usize),
    #[error("poset has {0} maximal elements, a lattice needs exactly one")]
    NoUniqueTop(usize),
    #[error("elements {x} and {y} have {reason}")]
    NotALattice {
        x: usize,
        y: usize,
        reason: LatticeFailure,
    },
    #[error("element index {0} is out of range for a lattice on {1} elements")]
    IndexOutOfRange(usize, usize),
}

/// A finite lattice with precomputed join and meet tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    poset: Poset,
    join: Vec<usize>,
    meet: Vec<usize>,
}

/// Validates that `poset` is a lattice and attaches its operation tables.
///
/// The check reports the first offending pair: a unique bottom and top
/// are required first, then every pair must have a least upper bound and
/// a greatest lower bound.
pub fn as_lattice(poset: Poset) -> Result<Lattice, LatticeError> {
    let n = poset.n();
    let mins = poset.minimal_elements();
    if mins.len() != 1 {
        return Err(LatticeError::NoUniqueBottom(mins.len()));
    }
    let maxs = poset.maximal_elements();
    if maxs.len() != 1 {
        return Err(LatticeError::NoUniqueTop(maxs.len()));
    }

    let mut join = vec![0usize; n * n];
    let mut meet = vec![0usize; n * n];
    let mut bounds = Vec::with_capacity(n);
    for x in 0..n {
        for y in x..n {
            // Upper bounds of {x, y}. In a linear extension a least
            // element, if any, is the member with the smallest index.
            bounds.clear();
            for z in 0..n {
                if poset.leq(x, z) && poset.leq(y, z) {
                    bounds.push(z);
                }
            }
            let lub = bounds[0];
            if bounds.iter().any(|&z| !poset.leq(lub, z)) {
                return Err(LatticeError::NotALattice {
                    x,
                    y,
                    reason: LatticeFailure::NoLeastUpperBound,
                });
            }
            join[x * n + y] = lub;
            join[y * n + x] = lub;

            bounds.clear();
            for z in 0..n {
                if poset.leq(z, x) && poset.leq(z, y) {
                    bounds.push(z);
                }
            }
            let glb = *bounds.last().expect("bottom is a common lower bound");
            if bounds.iter().any(|&z| !poset.leq(z, glb)) {
                return Err(LatticeError::NotALattice {
                    x,
                    y,
                    reason: LatticeFailure::NoGreatestLowerBound,
                });
            }
            meet[x * n + y] = glb;
            meet[y * n + x] = glb;
        }
    }

    Ok(Lattice { poset, join, meet })
}

impl Lattice {
    pub fn n(&self) -> usize {
        self.poset.n()
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.poset.n() - 1
    }

    pub fn join(&self, x: usize, y: usize) -> Result<usize, LatticeError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.join[x * self.n() + y])
    }

    pub fn meet(&self, x: usize, y: usize) -> Result<usize, LatticeError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.meet[x * self.n() + y])
    }

    fn check(&self, x: usize) -> Result<(), LatticeError> {
        if x < self.n() {
            Ok(())
        } else {
            Err(LatticeError::IndexOutOfRange(x, self.n()))
        }
    }

    /// Unchecked join lookup for internal hot paths.
    #[inline]
    pub(crate) fn jn(&self, x: usize, y: usize) -> usize {
        self.join[x * self.poset.n() + y]
    }

    /// Unchecked meet lookup for internal hot paths.
    #[inline]
    pub(crate) fn mt(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.poset.n() + y]
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.poset.leq(x, y)
    }

    /// Covers of the bottom.
    pub fn atoms(&self) -> Vec<usize> {
        self.poset.upper_covers(0).to_vec()
    }

    /// Elements covered by the top.
    pub fn coatoms(&self) -> Vec<usize> {
        self.poset.lower_covers(self.top()).to_vec()
    }

    /// The order-dual lattice, reindexed so the result again has its
    /// bottom at 0: element x maps to n-1-x.
    pub fn dual(&self) -> Lattice {
        let n = self.n();
        let mut covers: Vec<(usize, usize)> = self
            .poset
            .cover_pairs()
            .into_iter()
            .map(|(i, j)| (n - 1 - j, n - 1 - i))
            .collect();
        covers.sort_unstable();
        let poset = build_poset(n, &covers).expect("dual of a valid Hasse diagram is valid");
        as_lattice(poset).expect("dual of a lattice is a lattice")
    }
}
