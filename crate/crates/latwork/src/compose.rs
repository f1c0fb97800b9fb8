//! Vertical composition and decomposition of lattices.
//!
//! Stacking glues the top of one lattice to the bottom of the next;
//! the two-coatom sum removes both extremes and welds a coatom pair to
//! an atom pair. Decomposition inverts stacking by cutting at knots,
//! and `split_at_neck` inverts the two-coatom sum on graded lattices.

use crate::canon::canonical_code;
use crate::lattice::{as_lattice, Lattice};
use crate::poset::{build_poset, Poset};
use crate::props::{knots, necks, rank_function};
use thiserror::Error;

/// Which coatom of the lower summand is identified with which atom of
/// the upper one, relative to the stored element order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Matching2 {
    Parallel,
    Crossed,
}

impl Matching2 {
    fn permutation(self) -> [usize; 2] {
        match self {
            Matching2::Parallel => [0, 1],
            Matching2::Crossed => [1, 0],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComposeError {
    /// The one-element lattice is the empty stack; it has no component
    /// list to return.
    #[error("a one-element lattice has no vertical decomposition")]
    SingletonInput,
    #[error("precondition violated: {0}")]
    PreconditionViolated(Precondition),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Precondition {
    LowerCoatomCount { have: usize, need: usize },
    UpperAtomCount { have: usize, need: usize },
    SummandTooSmall { n: usize },
    MatchingNotBijective { k: usize },
    NotGraded,
    NoNeckAtRank { rank: usize },
}

impl std::fmt::Display for Precondition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Precondition::LowerCoatomCount { have, need } => {
                write!(f, "lower summand has {have} coatoms, need exactly {need}")
            }
            Precondition::UpperAtomCount { have, need } => {
                write!(f, "upper summand has {have} atoms, need exactly {need}")
            }
            Precondition::SummandTooSmall { n } => {
                write!(f, "summand with {n} elements is too small")
            }
            Precondition::MatchingNotBijective { k } => {
                write!(f, "matching must be a permutation of 0..{k}")
            }
            Precondition::NotGraded => write!(f, "input lattice is not graded"),
            Precondition::NoNeckAtRank { rank } => {
                write!(f, "no neck at rank {rank}")
            }
        }
    }
}

/// Glues `u` on top of `l`, identifying the top of `l` with the bottom
/// of `u`. The lower summand keeps its indices; the upper one is
/// shifted so its bottom lands on the lower top.
pub fn vertical_sum(l: &Lattice, u: &Lattice) -> Lattice {
    let nl = l.n();
    let mut covers = l.poset().cover_pairs();
    for (i, j) in u.poset().cover_pairs() {
        covers.push((i + nl - 1, j + nl - 1));
    }
    let p = build_poset(nl + u.n() - 1, &covers).expect("stacked covers form a poset");
    as_lattice(p).expect("a stack of two lattices is a lattice")
}

/// Cuts the lattice at its knots and returns the resulting components,
/// bottom-up. Each component is vertically indecomposable and has at
/// least two elements; re-stacking them reproduces the input.
pub fn vertical_decompose(l: &Lattice) -> Result<Vec<Lattice>, ComposeError> {
    let n = l.n();
    if n == 1 {
        return Err(ComposeError::SingletonInput);
    }
    // Knots are comparable to everything, so in the stored linear
    // extension each component occupies a contiguous index range.
    let mut cuts = vec![0];
    cuts.extend(knots(l));
    cuts.push(n - 1);
    let pairs = l.poset().cover_pairs();
    let mut out = Vec::with_capacity(cuts.len() - 1);
    for w in cuts.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let covers: Vec<(usize, usize)> = pairs
            .iter()
            .filter(|&&(i, j)| i >= lo && j <= hi)
            .map(|&(i, j)| (i - lo, j - lo))
            .collect();
        let p = build_poset(hi - lo + 1, &covers).expect("interval covers form a poset");
        out.push(as_lattice(p).expect("an interval of a lattice is a lattice"));
    }
    Ok(out)
}

/// Generalized k-fold gluing: removes the top of `l` and the bottom of
/// `u`, then identifies the i-th coatom of `l` with the m[i]-th atom
/// of `u`. Returns the glued order without asserting it is a lattice;
/// for k above 2 it often is not, so the caller decides.
pub fn vertical_ksum(
    l: &Lattice,
    u: &Lattice,
    k: usize,
    m: &[usize],
) -> Result<Poset, ComposeError> {
    if l.n() < 2 {
        return Err(ComposeError::PreconditionViolated(
            Precondition::SummandTooSmall { n: l.n() },
        ));
    }
    if u.n() < 2 {
        return Err(ComposeError::PreconditionViolated(
            Precondition::SummandTooSmall { n: u.n() },
        ));
    }
    let coatoms = l.coatoms();
    if coatoms.len() != k {
        return Err(ComposeError::PreconditionViolated(
            Precondition::LowerCoatomCount {
                have: coatoms.len(),
                need: k,
            },
        ));
    }
    let atoms = u.atoms();
    if atoms.len() != k {
        return Err(ComposeError::PreconditionViolated(
            Precondition::UpperAtomCount {
                have: atoms.len(),
                need: k,
            },
        ));
    }
    let mut seen = vec![false; k];
    let bijective = m.len() == k
        && m.iter()
            .all(|&x| x < k && !std::mem::replace(&mut seen[x], true));
    if !bijective {
        return Err(ComposeError::PreconditionViolated(
            Precondition::MatchingNotBijective { k },
        ));
    }

    let nl = l.n();
    let nu = u.n();
    // Glued index of each upper element: atoms land on their matched
    // coatoms, the rest fill in after the lower part (whose top is
    // gone, freeing index nl - 1).
    let mut map = vec![usize::MAX; nu];
    for (i, &c) in coatoms.iter().enumerate() {
        map[atoms[m[i]]] = c;
    }
    let mut next = nl - 1;
    for slot in map.iter_mut().skip(1) {
        if *slot == usize::MAX {
            *slot = next;
            next += 1;
        }
    }
    let n = next;
    let mut covers: Vec<(usize, usize)> = Vec::new();
    for (i, j) in l.poset().cover_pairs() {
        if j != nl - 1 {
            covers.push((i, j));
        }
    }
    for (i, j) in u.poset().cover_pairs() {
        if i != 0 {
            covers.push((map[i], map[j]));
        }
    }
    Ok(build_poset(n, &covers).expect("glued covers form a poset"))
}

/// Two-coatom vertical sum: requires exactly two coatoms below and two
/// atoms above, with both summands of size at least 4. The result is
/// always a lattice, with the identified pair incomparable in it.
pub fn vertical_2sum(l: &Lattice, u: &Lattice, m: Matching2) -> Result<Lattice, ComposeError> {
    for n in [l.n(), u.n()] {
        if n < 4 {
            return Err(ComposeError::PreconditionViolated(
                Precondition::SummandTooSmall { n },
            ));
        }
    }
    let p = vertical_ksum(l, u, 2, &m.permutation())?;
    Ok(as_lattice(p).expect("a two-coatom vertical sum of lattices is always a lattice"))
}

/// Both matchings of the two-coatom sum, deduplicated up to
/// isomorphism. Always 1 or 2 lattices, parallel first.
pub fn vertical_2sums_all(l: &Lattice, u: &Lattice) -> Result<Vec<Lattice>, ComposeError> {
    let a = vertical_2sum(l, u, Matching2::Parallel)?;
    let b = vertical_2sum(l, u, Matching2::Crossed)?;
    if canonical_code(a.poset()) == canonical_code(b.poset()) {
        Ok(vec![a])
    } else {
        Ok(vec![a, b])
    }
}

/// Inverse of the two-coatom sum on graded lattices: cuts at a
/// two-element level strictly inside the lattice, returning the part
/// below it (with a fresh top) and the part above it (with a fresh
/// bottom). Splitting a built sum at its gluing rank recovers the
/// summands.
pub fn split_at_neck(x: &Lattice, rank: usize) -> Result<(Lattice, Lattice), ComposeError> {
    let rf = rank_function(x)
        .map_err(|_| ComposeError::PreconditionViolated(Precondition::NotGraded))?;
    if !necks(x, &rf).contains(&rank) {
        return Err(ComposeError::PreconditionViolated(
            Precondition::NoNeckAtRank { rank },
        ));
    }
    let n = x.n();
    let p = x.poset();
    let pairs = p.cover_pairs();
    let neck: Vec<usize> = (0..n).filter(|&e| rf.rank(e) == rank).collect();

    // Lower part: everything at or below the neck level, plus a top.
    let keep: Vec<usize> = (0..n).filter(|&e| rf.rank(e) <= rank).collect();
    let mut pos = vec![usize::MAX; n];
    for (q, &e) in keep.iter().enumerate() {
        pos[e] = q;
    }
    let mut covers: Vec<(usize, usize)> = pairs
        .iter()
        .filter(|&&(i, j)| pos[i] != usize::MAX && pos[j] != usize::MAX)
        .map(|&(i, j)| (pos[i], pos[j]))
        .collect();
    for &e in &neck {
        covers.push((pos[e], keep.len()));
    }
    let lower = build_poset(keep.len() + 1, &covers).expect("lower split covers form a poset");
    let lower = as_lattice(lower).expect("the part below a neck, capped, is a lattice");

    // Upper part: the neck level and everything above, plus a bottom.
    let keep: Vec<usize> = (0..n).filter(|&e| rf.rank(e) >= rank).collect();
    let mut pos = vec![usize::MAX; n];
    for (q, &e) in keep.iter().enumerate() {
        pos[e] = q + 1;
    }
    let mut covers: Vec<(usize, usize)> = pairs
        .iter()
        .filter(|&&(i, j)| pos[i] != usize::MAX && pos[j] != usize::MAX)
        .map(|&(i, j)| (pos[i], pos[j]))
        .collect();
    for &e in &neck {
        covers.push((0, pos[e]));
    }
    let upper = build_poset(keep.len() + 1, &covers).expect("upper split covers form a poset");
    let upper = as_lattice(upper).expect("the part above a neck, grounded, is a lattice");

    Ok((lower, upper))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::is_isomorphic;
    use crate::lattice::{LatticeError, LatticeFailure};
    use crate::testutil::{
        b3, chain, diamond, hexagon, lat, pentagon, seven_left, seven_right, ten_glued, zigzag6,
    };

    #[test]
    fn two_chains_stack_to_a_three_chain() {
        let s = vertical_sum(&chain(2), &chain(2));
        assert_eq!(s.poset().cover_pairs(), [(0, 1), (1, 2)]);
        assert!(is_isomorphic(s.poset(), chain(3).poset()));
    }

    #[test]
    fn singleton_is_the_neutral_element() {
        let one = chain(1);
        for x in [diamond(3), hexagon(), pentagon()] {
            assert!(is_isomorphic(vertical_sum(&x, &one).poset(), x.poset()));
            assert!(is_isomorphic(vertical_sum(&one, &x).poset(), x.poset()));
        }
        assert_eq!(vertical_sum(&one, &one).n(), 1);
    }

    #[test]
    fn stacked_diamonds_have_one_knot_and_split_back() {
        let s = vertical_sum(&diamond(3), &diamond(3));
        assert_eq!(s.n(), 9);
        assert_eq!(knots(&s), [4]);
        let parts = vertical_decompose(&s).unwrap();
        assert_eq!(parts.len(), 2);
        for part in &parts {
            assert!(is_isomorphic(part.poset(), diamond(3).poset()));
        }
    }

    #[test]
    fn stacking_is_associative_on_samples() {
        let (a, b, c) = (diamond(3), pentagon(), hexagon());
        let left = vertical_sum(&vertical_sum(&a, &b), &c);
        let right = vertical_sum(&a, &vertical_sum(&b, &c));
        assert_eq!(left.n(), a.n() + b.n() + c.n() - 2);
        assert!(is_isomorphic(left.poset(), right.poset()));
    }

    #[test]
    fn chain_decomposes_into_edges() {
        let parts = vertical_decompose(&chain(4)).unwrap();
        assert_eq!(parts.len(), 3);
        for part in &parts {
            assert_eq!(part.n(), 2);
        }
    }

    #[test]
    fn indecomposable_input_comes_back_whole() {
        let parts = vertical_decompose(&hexagon()).unwrap();
        assert_eq!(parts.len(), 1);
        assert!(is_isomorphic(parts[0].poset(), hexagon().poset()));
    }

    #[test]
    fn singleton_has_no_decomposition() {
        assert_eq!(
            vertical_decompose(&chain(1)),
            Err(ComposeError::SingletonInput)
        );
    }

    #[test]
    fn decomposition_concatenates_over_stacks() {
        let s = vertical_sum(&hexagon(), &zigzag6());
        let parts = vertical_decompose(&s).unwrap();
        assert_eq!(parts.len(), 2);
        assert!(is_isomorphic(parts[0].poset(), hexagon().poset()));
        assert!(is_isomorphic(parts[1].poset(), zigzag6().poset()));
    }

    #[test]
    fn seven_element_pair_glues_to_the_ten_element_lattice() {
        let x = vertical_2sum(&seven_left(), &seven_right(), Matching2::Parallel).unwrap();
        assert_eq!(x.n(), 7 + 7 - 4);
        assert_eq!(x.poset().cover_pairs(), ten_glued().poset().cover_pairs());
        // The welded pair stays incomparable.
        assert!(!x.poset().comparable(4, 5));
    }

    #[test]
    fn both_matchings_of_the_seven_element_pair_coincide() {
        // The upper summand has an automorphism swapping its atoms, so
        // the two matchings give isomorphic results.
        let all = vertical_2sums_all(&seven_left(), &seven_right()).unwrap();
        assert_eq!(all.len(), 1);
    }

    #[test]
    fn asymmetric_summands_give_two_distinct_sums() {
        // Coatoms of the lower summand have cover-degrees 1 and 3, and
        // so do the atoms of the upper one; swapping the weld pairs the
        // degrees differently and the results cannot be isomorphic.
        let l = seven_left();
        let u = l.dual();
        let all = vertical_2sums_all(&l, &u).unwrap();
        assert_eq!(all.len(), 2);
        assert!(!is_isomorphic(all[0].poset(), all[1].poset()));
    }

    #[test]
    fn square_is_idempotent_under_the_two_coatom_sum() {
        let b2 = lat(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]);
        let x = vertical_2sum(&b2, &b2, Matching2::Parallel).unwrap();
        assert_eq!(x.n(), 4);
        assert!(is_isomorphic(x.poset(), b2.poset()));
        assert_eq!(vertical_2sums_all(&b2, &b2).unwrap().len(), 1);
    }

    #[test]
    fn zigzag_self_sum_has_a_neck_and_splits_back() {
        let z = zigzag6();
        let x = vertical_2sum(&z, &z, Matching2::Parallel).unwrap();
        assert_eq!(x.n(), 8);
        let rf = rank_function(&x).unwrap();
        assert_eq!(necks(&x, &rf), [2]);
        let (lo, hi) = split_at_neck(&x, 2).unwrap();
        assert!(is_isomorphic(lo.poset(), z.poset()));
        assert!(is_isomorphic(hi.poset(), z.poset()));
    }

    #[test]
    fn splitting_the_glued_lattice_recovers_the_summands() {
        let x = ten_glued();
        let (lo, hi) = split_at_neck(&x, 2).unwrap();
        assert!(is_isomorphic(lo.poset(), seven_left().poset()));
        assert!(is_isomorphic(hi.poset(), seven_right().poset()));
    }

    #[test]
    fn split_rejects_missing_necks() {
        assert_eq!(
            split_at_neck(&b3(), 2),
            Err(ComposeError::PreconditionViolated(
                Precondition::NoNeckAtRank { rank: 2 }
            ))
        );
        assert_eq!(
            split_at_neck(&pentagon(), 2),
            Err(ComposeError::PreconditionViolated(Precondition::NotGraded))
        );
    }

    #[test]
    fn two_coatom_sum_rejects_bad_shapes() {
        let b2 = lat(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]);
        assert_eq!(
            vertical_2sum(&diamond(3), &b2, Matching2::Parallel),
            Err(ComposeError::PreconditionViolated(
                Precondition::LowerCoatomCount { have: 3, need: 2 }
            ))
        );
        assert_eq!(
            vertical_2sum(&b2, &diamond(3), Matching2::Parallel),
            Err(ComposeError::PreconditionViolated(
                Precondition::UpperAtomCount { have: 3, need: 2 }
            ))
        );
        assert_eq!(
            vertical_2sum(&chain(3), &b2, Matching2::Parallel),
            Err(ComposeError::PreconditionViolated(
                Precondition::SummandTooSmall { n: 3 }
            ))
        );
    }

    #[test]
    fn ksum_with_k_two_matches_the_two_coatom_sum() {
        let p = vertical_ksum(&seven_left(), &seven_right(), 2, &[0, 1]).unwrap();
        let x = vertical_2sum(&seven_left(), &seven_right(), Matching2::Parallel).unwrap();
        assert_eq!(p.cover_pairs(), x.poset().cover_pairs());
    }

    #[test]
    fn threefold_cube_gluing_is_not_a_lattice() {
        let p = vertical_ksum(&b3(), &b3(), 3, &[0, 1, 2]).unwrap();
        assert_eq!(p.n(), 8 + 8 - 2 - 3);
        match as_lattice(p) {
            Err(LatticeError::NotALattice { reason, .. }) => {
                assert_eq!(reason, LatticeFailure::NoLeastUpperBound);
            }
            other => panic!("expected a join failure, got {other:?}"),
        }
    }

    #[test]
    fn ksum_rejects_bad_matchings() {
        let err = vertical_ksum(&b3(), &b3(), 3, &[0, 0, 1]);
        assert_eq!(
            err,
            Err(ComposeError::PreconditionViolated(
                Precondition::MatchingNotBijective { k: 3 }
            ))
        );
        let err = vertical_ksum(&b3(), &b3(), 3, &[0, 1]);
        assert_eq!(
            err,
            Err(ComposeError::PreconditionViolated(
                Precondition::MatchingNotBijective { k: 3 }
            ))
        );
        let err = vertical_ksum(&b3(), &hexagon(), 3, &[0, 1, 2]);
        assert_eq!(
            err,
            Err(ComposeError::PreconditionViolated(
                Precondition::UpperAtomCount { have: 2, need: 3 }
            ))
        );
    }
}
