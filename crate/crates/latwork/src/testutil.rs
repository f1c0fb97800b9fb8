//! Small constructors shared by the unit tests.

use crate::lattice::{as_lattice, Lattice};
use crate::poset::build_poset;

pub(crate) fn lat(n: usize, covers: &[(usize, usize)]) -> Lattice {
    as_lattice(build_poset(n, covers).unwrap()).unwrap()
}

/// Chain on n elements.
pub(crate) fn chain(n: usize) -> Lattice {
    let covers: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
    lat(n, &covers)
}

/// Bottom, k pairwise incomparable middles, top. `diamond(3)` is M3.
pub(crate) fn diamond(k: usize) -> Lattice {
    let n = k + 2;
    let mut covers = Vec::new();
    for m in 1..=k {
        covers.push((0, m));
        covers.push((m, n - 1));
    }
    lat(n, &covers)
}

/// The pentagon: 0 < 1 < 3 < 4 and 0 < 2 < 4.
pub(crate) fn pentagon() -> Lattice {
    lat(5, &[(0, 1), (0, 2), (1, 3), (2, 4), (3, 4)])
}

/// Two parallel 3-step chains sharing endpoints: 0<1<3<5, 0<2<4<5.
pub(crate) fn hexagon() -> Lattice {
    lat(6, &[(0, 1), (0, 2), (1, 3), (2, 4), (3, 5), (4, 5)])
}

/// Boolean cube on 8 elements: atoms 1,2,3; coatoms 4,5,6.
pub(crate) fn b3() -> Lattice {
    lat(
        8,
        &[
            (0, 1),
            (0, 2),
            (0, 3),
            (1, 4),
            (1, 5),
            (2, 4),
            (2, 6),
            (3, 5),
            (3, 6),
            (4, 7),
            (5, 7),
            (6, 7),
        ],
    )
}

/// The 6-element lattice with atoms {1,2}, coatoms {3,4} and mid edges
/// 1-3, 1-4, 2-4. This is the smallest piece.
pub(crate) fn zigzag6() -> Lattice {
    lat(6, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 4), (3, 5), (4, 5)])
}

/// 7-element lattice with 3 atoms {1,2,3} and 2 coatoms {4,5}:
/// 1 < 4,5; 2 < 5; 3 < 5.
pub(crate) fn seven_left() -> Lattice {
    lat(
        7,
        &[
            (0, 1),
            (0, 2),
            (0, 3),
            (1, 4),
            (1, 5),
            (2, 5),
            (3, 5),
            (4, 6),
            (5, 6),
        ],
    )
}

/// 7-element lattice with 2 atoms {1,2} and 3 coatoms {3,4,5}:
/// 1 < 3,4; 2 < 4,5.
pub(crate) fn seven_right() -> Lattice {
    lat(
        7,
        &[
            (0, 1),
            (0, 2),
            (1, 3),
            (1, 4),
            (2, 4),
            (2, 5),
            (3, 6),
            (4, 6),
            (5, 6),
        ],
    )
}

/// The 10-element vertical 2-sum of `seven_left` below `seven_right`:
/// atoms {1,2,3}, identified pair {4,5}, coatoms {6,7,8}.
pub(crate) fn ten_glued() -> Lattice {
    lat(
        10,
        &[
            (0, 1),
            (0, 2),
            (0, 3),
            (1, 4),
            (1, 5),
            (2, 5),
            (3, 5),
            (4, 6),
            (4, 7),
            (5, 7),
            (5, 8),
            (6, 9),
            (7, 9),
            (8, 9),
        ],
    )
}
