//! Structural predicates on finite lattices: grading, semimodularity,
//! modularity, distributivity, vertical indecomposability, and the
//! gluing-piece test used by the two-coatom composition machinery.
//!
//! Every negative answer comes with a witness (a cover pair or a triple
//! of elements violating the defining law) so callers can print useful
//! diagnostics instead of a bare boolean.

use crate::lattice::Lattice;
use crate::poset::Poset;

/// Longest-chain ranks measured from the bottom element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankFunction {
    ranks: Vec<usize>,
    height: usize,
}

impl RankFunction {
    pub fn rank(&self, x: usize) -> usize {
        self.ranks[x]
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Number of elements at each rank, indexed by rank.
    pub fn level_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0usize; self.height + 1];
        for &r in &self.ranks {
            sizes[r] += 1;
        }
        sizes
    }
}

/// Computes the rank function if the lattice is graded, i.e. every
/// cover relation raises the longest-chain rank by exactly one.
/// Otherwise returns the first cover pair (in index order) that jumps.
pub fn rank_function(l: &Lattice) -> Result<RankFunction, (usize, usize)> {
    let p = l.poset();
    let n = p.n();
    let mut ranks = vec![0usize; n];
    for j in 0..n {
        for &i in p.lower_covers(j) {
            ranks[j] = ranks[j].max(ranks[i] + 1);
        }
    }
    for i in 0..n {
        for &j in p.upper_covers(i) {
            if ranks[j] != ranks[i] + 1 {
                return Err((i, j));
            }
        }
    }
    let height = ranks[n - 1];
    Ok(RankFunction { ranks, height })
}

pub fn is_graded(l: &Lattice) -> bool {
    rank_function(l).is_ok()
}

fn covers(p: &Poset, lo: usize, hi: usize) -> bool {
    p.upper_covers(lo).contains(&hi)
}

/// First pair (s, t) that covers its meet without the join covering
/// both, or None when the lattice is (upper) semimodular.
pub fn semimodular_violation(l: &Lattice) -> Option<(usize, usize)> {
    let p = l.poset();
    let n = p.n();
    for s in 0..n {
        for t in (s + 1)..n {
            if p.comparable(s, t) {
                continue;
            }
            let m = l.mt(s, t);
            if !covers(p, m, s) || !covers(p, m, t) {
                continue;
            }
            let j = l.jn(s, t);
            if !covers(p, s, j) || !covers(p, t, j) {
                return Some((s, t));
            }
        }
    }
    None
}

pub fn is_semimodular(l: &Lattice) -> bool {
    semimodular_violation(l).is_none()
}

/// First triple (x, y, z) with x <= z violating
/// x v (y ^ z) = (x v y) ^ z, or None when the lattice is modular.
pub fn modular_violation(l: &Lattice) -> Option<(usize, usize, usize)> {
    let p = l.poset();
    let n = p.n();
    for x in 0..n {
        for z in x..n {
            if !p.leq(x, z) {
                continue;
            }
            for y in 0..n {
                if l.jn(x, l.mt(y, z)) != l.mt(l.jn(x, y), z) {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

pub fn is_modular(l: &Lattice) -> bool {
    modular_violation(l).is_none()
}

/// First triple (x, y, z) violating x ^ (y v z) = (x ^ y) v (x ^ z),
/// or None when the lattice is distributive.
pub fn distributive_violation(l: &Lattice) -> Option<(usize, usize, usize)> {
    let n = l.n();
    for x in 0..n {
        for y in 0..n {
            for z in y..n {
                if l.mt(x, l.jn(y, z)) != l.jn(l.mt(x, y), l.mt(x, z)) {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

pub fn is_distributive(l: &Lattice) -> bool {
    distributive_violation(l).is_none()
}

/// Elements other than bottom and top that are comparable to every
/// element. These are exactly the places a vertical decomposition cuts.
pub fn knots(l: &Lattice) -> Vec<usize> {
    let p = l.poset();
    let n = p.n();
    (1..n.saturating_sub(1))
        .filter(|&x| (0..n).all(|y| p.comparable(x, y)))
        .collect()
}

/// A lattice is vertically indecomposable when it has no knot.
pub fn is_vertically_indecomposable(l: &Lattice) -> bool {
    knots(l).is_empty()
}

/// Ranks strictly between the atom and coatom levels holding exactly
/// two elements. Meaningful for graded lattices, where such a level
/// separates the lattice into an upper and a lower part that overlap
/// only in those two elements.
pub fn necks(l: &Lattice, rank: &RankFunction) -> Vec<usize> {
    debug_assert_eq!(rank.rank(l.top()), rank.height(), "rank function mismatch");
    let h = rank.height();
    if h < 4 {
        return Vec::new();
    }
    let sizes = rank.level_sizes();
    (2..=h - 2).filter(|&r| sizes[r] == 2).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PieceFailure {
    /// Witness cover pair whose ranks differ by more than one.
    NotGraded { lower: usize, upper: usize },
    /// A knot makes the lattice vertically decomposable.
    Knot(usize),
    AtomCount(usize),
    CoatomCount(usize),
    HeightTooSmall(usize),
    /// Rank of a two-element level strictly inside the lattice.
    Neck(usize),
}

impl std::fmt::Display for PieceFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PieceFailure::NotGraded { lower, upper } => {
                write!(f, "not graded: cover {lower} < {upper} jumps ranks")
            }
            PieceFailure::Knot(x) => write!(f, "vertically decomposable at knot {x}"),
            PieceFailure::AtomCount(k) => write!(f, "has {k} atoms, needs exactly 2"),
            PieceFailure::CoatomCount(k) => write!(f, "has {k} coatoms, needs exactly 2"),
            PieceFailure::HeightTooSmall(h) => write!(f, "height {h} is below 3"),
            PieceFailure::Neck(r) => write!(f, "neck at rank {r}"),
        }
    }
}

/// Why the lattice fails to be a gluing piece, or None when it is one:
/// graded, vertically indecomposable, exactly two atoms and two
/// coatoms, height at least 3, and no neck.
pub fn piece_failure(l: &Lattice) -> Option<PieceFailure> {
    let rank = match rank_function(l) {
        Ok(r) => r,
        Err((lower, upper)) => return Some(PieceFailure::NotGraded { lower, upper }),
    };
    if let Some(&x) = knots(l).first() {
        return Some(PieceFailure::Knot(x));
    }
    let atoms = l.atoms().len();
    if atoms != 2 {
        return Some(PieceFailure::AtomCount(atoms));
    }
    let coatoms = l.coatoms().len();
    if coatoms != 2 {
        return Some(PieceFailure::CoatomCount(coatoms));
    }
    if rank.height() < 3 {
        return Some(PieceFailure::HeightTooSmall(rank.height()));
    }
    if let Some(&r) = necks(l, &rank).first() {
        return Some(PieceFailure::Neck(r));
    }
    None
}

pub fn is_piece(l: &Lattice) -> bool {
    piece_failure(l).is_none()
}

/// Everything the classifier reports about one lattice, with witnesses.
#[derive(Debug, Clone)]
pub struct PropertyReport {
    pub n: usize,
    pub rank: Result<RankFunction, (usize, usize)>,
    pub semimodular_violation: Option<(usize, usize)>,
    pub modular_violation: Option<(usize, usize, usize)>,
    pub distributive_violation: Option<(usize, usize, usize)>,
    pub knots: Vec<usize>,
    pub atom_count: usize,
    pub coatom_count: usize,
    pub necks: Vec<usize>,
    pub piece_failure: Option<PieceFailure>,
}

pub fn property_report(l: &Lattice) -> PropertyReport {
    let rank = rank_function(l);
    let necks = rank.as_ref().map(|r| necks(l, r)).unwrap_or_default();
    PropertyReport {
        n: l.n(),
        rank: rank.clone(),
        semimodular_violation: semimodular_violation(l),
        modular_violation: modular_violation(l),
        distributive_violation: distributive_violation(l),
        knots: knots(l),
        atom_count: l.atoms().len(),
        coatom_count: l.coatoms().len(),
        necks,
        piece_failure: piece_failure(l),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{b3, chain, diamond, hexagon, pentagon, ten_glued, zigzag6};

    #[test]
    fn chain_ranks_and_height() {
        let c = chain(4);
        let r = rank_function(&c).unwrap();
        assert_eq!(r.height(), 3);
        assert_eq!((0..4).map(|x| r.rank(x)).collect::<Vec<_>>(), [0, 1, 2, 3]);
        assert_eq!(r.level_sizes(), [1, 1, 1, 1]);
    }

    #[test]
    fn pentagon_is_not_graded() {
        assert_eq!(rank_function(&pentagon()), Err((2, 4)));
        assert!(!is_graded(&pentagon()));
    }

    #[test]
    fn hexagon_ring_is_graded_but_not_semimodular() {
        // The two atoms cover their meet, yet their join is the top,
        // two ranks up. This is the smallest such graded example.
        let h = hexagon();
        assert!(is_graded(&h));
        assert_eq!(semimodular_violation(&h), Some((1, 2)));
        assert!(!is_modular(&h));
    }

    #[test]
    fn zigzag_is_modular_and_semimodular() {
        let z = zigzag6();
        assert!(is_semimodular(&z));
        assert!(is_modular(&z));
        // Its widest antichain has two elements, so it even avoids both
        // of the five-element non-distributive configurations.
        assert!(is_distributive(&z));
    }

    #[test]
    fn cube_is_distributive() {
        let c = b3();
        assert!(is_distributive(&c));
        assert!(is_modular(&c));
        assert!(is_semimodular(&c));
    }

    #[test]
    fn diamond_is_modular_but_not_distributive() {
        let m3 = diamond(3);
        assert!(is_modular(&m3));
        assert_eq!(distributive_violation(&m3), Some((1, 2, 3)));
    }

    #[test]
    fn pentagon_is_not_modular() {
        assert_eq!(modular_violation(&pentagon()), Some((1, 2, 3)));
        assert!(!is_semimodular(&pentagon()));
    }

    #[test]
    fn knots_mark_vertical_cut_points() {
        assert_eq!(knots(&chain(3)), [1]);
        assert_eq!(knots(&chain(5)), [1, 2, 3]);
        assert!(knots(&diamond(3)).is_empty());
        assert!(!is_vertically_indecomposable(&chain(3)));
        assert!(is_vertically_indecomposable(&chain(2)));
        assert!(is_vertically_indecomposable(&chain(1)));
        assert!(is_vertically_indecomposable(&hexagon()));
    }

    #[test]
    fn glued_ten_element_lattice_has_one_neck() {
        let g = ten_glued();
        let r = rank_function(&g).unwrap();
        assert_eq!(r.height(), 4);
        assert_eq!(r.level_sizes(), [1, 3, 2, 3, 1]);
        assert_eq!(necks(&g, &r), [2]);
    }

    #[test]
    fn zigzag_and_hexagon_are_pieces() {
        assert!(is_piece(&zigzag6()));
        assert!(is_piece(&hexagon()));
    }

    #[test]
    fn piece_failures_carry_reasons() {
        assert_eq!(piece_failure(&chain(1)), Some(PieceFailure::AtomCount(0)));
        assert_eq!(piece_failure(&chain(2)), Some(PieceFailure::AtomCount(1)));
        assert_eq!(piece_failure(&chain(3)), Some(PieceFailure::Knot(1)));
        assert_eq!(piece_failure(&b3()), Some(PieceFailure::AtomCount(3)));
        assert_eq!(
            piece_failure(&pentagon()),
            Some(PieceFailure::NotGraded { lower: 2, upper: 4 })
        );
        // Two zigzags overlapping in a two-element level: the level is
        // a neck, so the stack is not a piece.
        let necked = crate::testutil::lat(
            8,
            &[
                (0, 1),
                (0, 2),
                (1, 3),
                (1, 4),
                (2, 4),
                (3, 5),
                (3, 6),
                (4, 6),
                (5, 7),
                (6, 7),
            ],
        );
        assert_eq!(piece_failure(&necked), Some(PieceFailure::Neck(2)));
    }

    #[test]
    fn modularity_matches_two_sided_semimodularity_on_samples() {
        for l in [
            chain(4),
            diamond(3),
            pentagon(),
            hexagon(),
            zigzag6(),
            b3(),
            ten_glued(),
        ] {
            let via_duality = is_semimodular(&l) && is_semimodular(&l.dual());
            assert_eq!(is_modular(&l), via_duality);
        }
    }

    #[test]
    fn report_collects_witnesses() {
        let rep = property_report(&hexagon());
        assert_eq!(rep.n, 6);
        assert!(rep.rank.is_ok());
        assert_eq!(rep.semimodular_violation, Some((1, 2)));
        assert!(rep.modular_violation.is_some());
        assert!(rep.knots.is_empty());
        assert_eq!(rep.atom_count, 2);
        assert_eq!(rep.coatom_count, 2);
        assert!(rep.piece_failure.is_none());
    }
}
