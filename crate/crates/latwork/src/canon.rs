//! Canonical forms for unlabeled posets.
//!
//! The canonical code of a poset is a byte string that is equal for two
//! posets exactly when they are isomorphic. It is computed by iterated
//! partition refinement (colors grow from degree and chain-length
//! invariants, then absorb neighbor color multisets) followed by a
//! backtracking search over individualizations; the code is the minimal
//! relabeled order matrix over all leaves of that search. Discovered
//! automorphisms prune sibling branches, which keeps highly symmetric
//! inputs (long antichains, Boolean cubes) cheap.

use crate::poset::Poset;

/// Isomorphism-class identifier. Codes order lexicographically, which
/// gives listings and enumeration output a stable, label-free order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

pub fn is_isomorphic(a: &Poset, b: &Poset) -> bool {
    a.n() == b.n() && canonical_code(a) == canonical_code(b)
}

pub fn canonical_code(p: &Poset) -> CanonicalCode {
    let n = p.n();
    let mut colors = initial_colors(p);
    refine(p, &mut colors);
    let mut search = Search {
        p,
        best: None,
        parent: (0..n).collect(),
    };
    search.node(&colors);
    CanonicalCode(search.best.expect("search visits at least one leaf").0)
}

/// Ranks elements by (longest chain up to a maximal element, longest
/// chain down to a minimal element, cover degrees). All four are
/// isomorphism invariants, so the seed partition is too.
fn initial_colors(p: &Poset) -> Vec<u32> {
    let n = p.n();
    let mut up_len = vec![0u32; n];
    for i in (0..n).rev() {
        for &j in p.upper_covers(i) {
            up_len[i] = up_len[i].max(up_len[j] + 1);
        }
    }
    let mut down_len = vec![0u32; n];
    for i in 0..n {
        for &j in p.lower_covers(i) {
            down_len[i] = down_len[i].max(down_len[j] + 1);
        }
    }
    let keys: Vec<[u32; 4]> = (0..n)
        .map(|i| {
            [
                up_len[i],
                down_len[i],
                p.upper_covers(i).len() as u32,
                p.lower_covers(i).len() as u32,
            ]
        })
        .collect();
    dense_ranks(&keys)
}

fn dense_ranks<K: Ord>(keys: &[K]) -> Vec<u32> {
    let n = keys.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
    let mut out = vec![0u32; n];
    let mut next = 0u32;
    for w in 0..n {
        if w > 0 && keys[order[w]] != keys[order[w - 1]] {
            next += 1;
        }
        out[order[w]] = next;
    }
    out
}

/// Refines `colors` to the coarsest stable partition at least as fine:
/// each round rekeys an element by its own color plus the sorted color
/// multisets of its upper and lower covers. Colors stay dense ranks, so
/// a round that changes nothing terminates the loop.
fn refine(p: &Poset, colors: &mut Vec<u32>) {
    let n = p.n();
    loop {
        let keys: Vec<(u32, Vec<u32>, Vec<u32>)> = (0..n)
            .map(|i| {
                let mut up: Vec<u32> = p.upper_covers(i).iter().map(|&j| colors[j]).collect();
                up.sort_unstable();
                let mut dn: Vec<u32> = p.lower_covers(i).iter().map(|&j| colors[j]).collect();
                dn.sort_unstable();
                (colors[i], up, dn)
            })
            .collect();
        let new_colors = dense_ranks(&keys);
        if new_colors == *colors {
            return;
        }
        *colors = new_colors;
    }
}

struct Search<'a> {
    p: &'a Poset,
    /// Minimal code seen so far and the relabeling that produced it
    /// (element -> canonical position).
    best: Option<(Vec<u8>, Vec<u32>)>,
    /// Union-find over discovered automorphism orbits.
    parent: Vec<usize>,
}

impl Search<'_> {
    fn node(&mut self, colors: &[u32]) {
        let n = self.p.n();
        // A discrete coloring is a relabeling; emit the leaf.
        if colors.iter().max().map_or(true, |&m| m as usize == n - 1) {
            self.leaf(colors);
            return;
        }
        // Target the first color class with more than one element.
        let target = (0..n as u32)
            .find(|c| colors.iter().filter(|&&x| x == *c).count() > 1)
            .expect("non-discrete coloring has a repeated color");
        let cell: Vec<usize> = (0..n).filter(|&i| colors[i] == target).collect();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cell {
            if tried.iter().any(|&u| self.find(u) == self.find(v)) {
                continue;
            }
            tried.push(v);
            let mut child: Vec<u32> = colors.iter().map(|&c| c * 2).collect();
            child[v] += 1;
            refine(self.p, &mut child);
            self.node(&child);
        }
    }

    fn leaf(&mut self, pi: &[u32]) {
        let code = encode(self.p, pi);
        match &self.best {
            None => self.best = Some((code, pi.to_vec())),
            Some((best_code, best_pi)) => {
                if code < *best_code {
                    self.best = Some((code, pi.to_vec()));
                } else if code == *best_code {
                    // Equal codes mean two relabelings agree, i.e. an
                    // automorphism: sigma sends i to the element that
                    // occupies position pi(i) under the stored best.
                    let n = self.p.n();
                    let mut inv_best = vec![0usize; n];
                    for i in 0..n {
                        inv_best[best_pi[i] as usize] = i;
                    }
                    let sigma: Vec<usize> = (0..n).map(|i| inv_best[pi[i] as usize]).collect();
                    for (i, &s) in sigma.iter().enumerate() {
                        self.union(i, s);
                    }
                }
            }
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// Header (element count) plus the bit-packed order matrix under the
/// relabeling `pi`.
fn encode(p: &Poset, pi: &[u32]) -> Vec<u8> {
    let n = p.n();
    let mut inv = vec![0usize; n];
    for i in 0..n {
        inv[pi[i] as usize] = i;
    }
    let mut bytes = Vec::with_capacity(4 + (n * n + 7) / 8);
    bytes.extend_from_slice(&(n as u32).to_le_bytes());
    let mut acc = 0u8;
    let mut filled = 0;
    for a in 0..n {
        for b in 0..n {
            acc = (acc << 1) | u8::from(p.leq(inv[a], inv[b]));
            filled += 1;
            if filled == 8 {
                bytes.push(acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        bytes.push(acc << (8 - filled));
    }
    bytes
}
