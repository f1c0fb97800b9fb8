//! Exhaustive generation of unlabeled lattices within a family.
//!
//! The generator grows join-closed orders downward from the top. A
//! partial structure is an order with a greatest element in which
//! every pair has a join; adjoining a fresh bottom to such an order
//! always yields a lattice, and stripping the bottom inverts this, so
//! partial structures on k elements correspond exactly to unlabeled
//! lattices on k + 1. New elements arrive level by level (never
//! shallower than the current deepest level), each attached below a
//! cover antichain; a candidate is rejected unless every join it needs
//! exists. Isomorphic duplicates are cut off by canonical codes, one
//! set per size, so each unlabeled structure is expanded exactly once.
//!
//! Family-specific pruning rejects partial structures whose defect can
//! no longer be repaired: cover ranks that already jump for graded
//! families, and cover pairs whose join sits too high for semimodular
//! ones. Both facts are preserved by every later addition (new
//! elements only appear below existing ones), so pruning never loses a
//! lattice; a final predicate filter keeps the output exact.

use crate::canon::{canonical_code, CanonicalCode};
use crate::lattice::{as_lattice, Lattice};
use crate::poset::{build_poset, Poset};
use crate::props;
use crate::props::PropertyReport;
use crate::table::{total_from_vi, CountTable, Provenance, TableKind};
use num_bigint::BigUint;
use std::collections::HashSet;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    All,
    Graded,
    Modular,
    Semimodular,
    Distributive,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::All,
        Family::Graded,
        Family::Modular,
        Family::Semimodular,
        Family::Distributive,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::All => "all",
            Family::Graded => "graded",
            Family::Modular => "modular",
            Family::Semimodular => "semimodular",
            Family::Distributive => "distributive",
        }
    }

    pub fn contains(self, l: &Lattice) -> bool {
        match self {
            Family::All => true,
            Family::Graded => props::is_graded(l),
            Family::Modular => props::is_modular(l),
            Family::Semimodular => props::is_semimodular(l),
            Family::Distributive => props::is_distributive(l),
        }
    }

    /// Default size cap. The unrestricted families blow up fastest, so
    /// they stop earlier. Caps are budgets, not correctness limits;
    /// see [`CAP_ENV_VAR`].
    pub fn default_cap(self) -> usize {
        match self {
            Family::All | Family::Graded => 10,
            Family::Modular | Family::Semimodular | Family::Distributive => 13,
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" => Ok(Family::All),
            "graded" => Ok(Family::Graded),
            "modular" => Ok(Family::Modular),
            "semimodular" => Ok(Family::Semimodular),
            "distributive" => Ok(Family::Distributive),
            other => Err(format!(
                "unknown family '{other}', expected one of: all, graded, modular, semimodular, distributive"
            )),
        }
    }
}

/// Environment variable overriding the per-family size caps.
pub const CAP_ENV_VAR: &str = "LATWORK_ENUM_CAP";

/// Partial structures use 64-bit element masks, so sizes beyond this
/// are unrepresentable regardless of the configured budget.
const HARD_SIZE_CAP: usize = 60;

/// Effective size cap for a family: the override from [`CAP_ENV_VAR`]
/// when set to a positive integer, else the family default, clamped to
/// the representation limit.
pub fn size_cap(family: Family) -> usize {
    let configured = std::env::var(CAP_ENV_VAR)
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&v| v >= 1)
        .unwrap_or_else(|| family.default_cap());
    configured.min(HARD_SIZE_CAP)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error(
        "n = {n} exceeds the size cap {cap} for the {family} family; set {CAP_ENV_VAR} to raise it"
    )]
    ResourceCap {
        n: usize,
        cap: usize,
        family: Family,
    },
}

/// Iterator over the set bit positions of a mask.
struct Bits(u64);

impl Iterator for Bits {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let i = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(i)
        }
    }
}

/// A join-closed order with greatest element 0, grown downward.
/// Indices follow addition order, so x < y in the order implies
/// idx(x) > idx(y); in particular the least member of any joinable set
/// is its highest-index member.
#[derive(Clone)]
struct State {
    n: usize,
    maxdep: u8,
    /// Longest chain from the top, per element. Stable under growth.
    depth: Vec<u8>,
    /// Strict up-sets as bit masks.
    up: Vec<u64>,
    /// Strict down-sets as bit masks.
    down: Vec<u64>,
    /// Upper covers as bit masks; fixed at addition time.
    covers_up: Vec<u64>,
    /// Row-major n-by-n join table.
    join: Vec<u8>,
}

impl State {
    fn root() -> State {
        State {
            n: 1,
            maxdep: 0,
            depth: vec![0],
            up: vec![0],
            down: vec![0],
            covers_up: vec![0],
            join: vec![0],
        }
    }

    fn jn(&self, a: usize, b: usize) -> usize {
        self.join[a * self.n + b] as usize
    }

    /// Attempts to add one element below the cover antichain `a_mask`.
    /// Returns None when the antichain is invalid, the levelized order
    /// would break, a family prune fires, or some join would stop
    /// existing.
    fn child(&self, a_mask: u64, prune_graded: bool, prune_semi: bool) -> Option<State> {
        let mut max_d = 0u8;
        let mut min_d = u8::MAX;
        for a in Bits(a_mask) {
            if (self.up[a] | self.down[a]) & a_mask != 0 {
                return None;
            }
            max_d = max_d.max(self.depth[a]);
            min_d = min_d.min(self.depth[a]);
        }
        // New elements may never be shallower than the deepest level.
        if usize::from(max_d) + 1 < usize::from(self.maxdep) {
            return None;
        }
        // A graded lattice ranks all covers of an element equally.
        if prune_graded && max_d != min_d {
            return None;
        }
        // Semimodularity forces the join of two elements over a common
        // lower cover to cover both; the pairs in the antichain gain
        // such a lower cover now, and the fact never changes later.
        if prune_semi {
            let mut rest = a_mask;
            for a in Bits(a_mask) {
                rest &= rest - 1;
                for b in Bits(rest) {
                    let j = 1u64 << self.jn(a, b);
                    if self.covers_up[a] & j == 0 || self.covers_up[b] & j == 0 {
                        return None;
                    }
                }
            }
        }

        let z = self.n;
        let mut ups = a_mask;
        for a in Bits(a_mask) {
            ups |= self.up[a];
        }
        // Joins of the new element: v itself when v is above, else the
        // least of the joins of v with the covers. Everything above
        // the new element is above one of its covers, so that set of
        // joins is exactly the relevant upper bounds.
        let mut row = vec![0u8; z];
        for v in 0..z {
            if ups & (1u64 << v) != 0 {
                row[v] = v as u8;
                continue;
            }
            let mut jm: u64 = 0;
            for a in Bits(a_mask) {
                jm |= 1u64 << self.jn(a, v);
            }
            let j0 = 63 - jm.leading_zeros() as usize;
            if jm & !(self.up[j0] | (1u64 << j0)) != 0 {
                return None;
            }
            row[v] = j0 as u8;
        }

        let n = z + 1;
        let mut depth = self.depth.clone();
        depth.push(max_d + 1);
        let mut up = self.up.clone();
        up.push(ups);
        let mut down = self.down.clone();
        down.push(0);
        for w in Bits(ups) {
            down[w] |= 1u64 << z;
        }
        let mut covers_up = self.covers_up.clone();
        covers_up.push(a_mask);
        let mut join = vec![0u8; n * n];
        for i in 0..z {
            join[i * n..i * n + z].copy_from_slice(&self.join[i * z..(i + 1) * z]);
        }
        for v in 0..z {
            join[z * n + v] = row[v];
            join[v * n + z] = row[v];
        }
        join[z * n + z] = z as u8;
        Some(State {
            n,
            maxdep: self.maxdep.max(max_d + 1),
            depth,
            up,
            down,
            covers_up,
            join,
        })
    }

    /// The partial structure as a poset, reindexed bottom-up.
    fn state_poset(&self) -> Poset {
        let k = self.n;
        let mut covers = Vec::new();
        for i in 0..k {
            for j in Bits(self.covers_up[i]) {
                covers.push((k - 1 - i, k - 1 - j));
            }
        }
        build_poset(k, &covers).expect("generator covers form a poset")
    }

    /// The lattice this structure stands for: itself plus a bottom.
    fn to_lattice(&self) -> Lattice {
        let k = self.n;
        let mut covers = Vec::new();
        for i in 0..k {
            if self.down[i] == 0 {
                covers.push((0, k - i));
            }
            for j in Bits(self.covers_up[i]) {
                covers.push((k - i, k - j));
            }
        }
        let p = build_poset(k + 1, &covers).expect("generator covers form a poset");
        as_lattice(p).expect("a join-closed order with top plus a bottom is a lattice")
    }
}

struct Driver<'a> {
    max_n: usize,
    family: Family,
    prune_graded: bool,
    prune_semi: bool,
    seen: Vec<HashSet<CanonicalCode>>,
    visit: &'a mut dyn FnMut(&Lattice),
}

impl Driver<'_> {
    fn dfs(&mut self, s: &State) {
        if !self.seen[s.n].insert(canonical_code(&s.state_poset())) {
            return;
        }
        let lat = s.to_lattice();
        if self.family.contains(&lat) {
            (self.visit)(&lat);
        }
        if s.n + 1 >= self.max_n {
            return;
        }
        let full = (1u64 << s.n) - 1;
        for a_mask in 1..=full {
            if let Some(child) = s.child(a_mask, self.prune_graded, self.prune_semi) {
                self.dfs(&child);
            }
        }
    }
}

fn singleton() -> Lattice {
    as_lattice(build_poset(1, &[]).expect("a point is a poset")).expect("a point is a lattice")
}

/// Visits every unlabeled lattice of the family with at most `max_n`
/// elements, each exactly once, in a deterministic order.
pub fn enumerate_up_to(
    max_n: usize,
    family: Family,
    visit: &mut dyn FnMut(&Lattice),
) -> Result<(), EnumError> {
    let cap = size_cap(family);
    if max_n > cap {
        return Err(EnumError::ResourceCap {
            n: max_n,
            cap,
            family,
        });
    }
    if max_n == 0 {
        return Ok(());
    }
    visit(&singleton());
    if max_n == 1 {
        return Ok(());
    }
    let mut driver = Driver {
        max_n,
        family,
        prune_graded: family != Family::All,
        prune_semi: matches!(
            family,
            Family::Modular | Family::Semimodular | Family::Distributive
        ),
        seen: vec![HashSet::new(); max_n],
        visit,
    };
    driver.dfs(&State::root());
    Ok(())
}

/// All unlabeled n-element lattices of the family, sorted by canonical
/// code.
pub fn enumerate(n: usize, family: Family) -> Result<Vec<Lattice>, EnumError> {
    let mut out = Vec::new();
    enumerate_up_to(n, family, &mut |l| {
        if l.n() == n {
            out.push(l.clone());
        }
    })?;
    out.sort_by_cached_key(|l| canonical_code(l.poset()));
    Ok(out)
}

/// Counts the family's lattices, its vertically indecomposable ones,
/// and its pieces, for every size up to `max_n`. The totals are also
/// recomputed from the vi counts through the convolution identity and
/// the two ways must agree; a mismatch is a defect and panics.
pub fn count_tables(
    max_n: usize,
    family: Family,
) -> Result<(CountTable, CountTable, CountTable), EnumError> {
    let mut total = vec![BigUint::ZERO; max_n];
    let mut vi = vec![BigUint::ZERO; max_n];
    let mut piece = vec![BigUint::ZERO; max_n];
    enumerate_up_to(max_n, family, &mut |l| {
        let i = l.n() - 1;
        total[i] += 1u32;
        if props::is_vertically_indecomposable(l) {
            vi[i] += 1u32;
        }
        if props::is_piece(l) {
            piece[i] += 1u32;
        }
    })?;
    let total = CountTable::new(family, TableKind::Total, Provenance::Enumerated, total)
        .expect("enumerated totals are well-formed");
    let vi = CountTable::new(family, TableKind::Vi, Provenance::Enumerated, vi)
        .expect("enumerated vi counts are well-formed");
    let piece = CountTable::new(family, TableKind::Piece, Provenance::Enumerated, piece)
        .expect("enumerated piece counts are well-formed");
    let by_convolution = total_from_vi(&vi);
    assert_eq!(
        total.values(),
        by_convolution.values(),
        "enumerated totals disagree with the convolution identity for {family}"
    );
    Ok((total, vi, piece))
}

/// Per-lattice reports plus aggregate membership counts, in input
/// order.
#[derive(Debug, Clone)]
pub struct Classification {
    pub reports: Vec<PropertyReport>,
    pub total: usize,
    pub graded: usize,
    pub modular: usize,
    pub semimodular: usize,
    pub distributive: usize,
    pub vi: usize,
    pub piece: usize,
}

pub fn classify_listing<'a, I>(items: I) -> Classification
where
    I: IntoIterator<Item = &'a Lattice>,
{
    let mut c = Classification {
        reports: Vec::new(),
        total: 0,
        graded: 0,
        modular: 0,
        semimodular: 0,
        distributive: 0,
        vi: 0,
        piece: 0,
    };
    for l in items {
        let rep = props::property_report(l);
        c.total += 1;
        c.graded += usize::from(rep.rank.is_ok());
        c.modular += usize::from(rep.modular_violation.is_none());
        c.semimodular += usize::from(rep.semimodular_violation.is_none());
        c.distributive += usize::from(rep.distributive_violation.is_none());
        c.vi += usize::from(rep.knots.is_empty());
        c.piece += usize::from(rep.piece_failure.is_none());
        c.reports.push(rep);
    }
    c
}
