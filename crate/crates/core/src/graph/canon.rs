//! Canonical labelling by individualization and colour refinement.
//!
//! The canonical form is the lexicographically smallest adjacency bit string
//! (graph6 bit order) over all leaves of the search tree. Both the refinement
//! and the choice of target cell depend only on colour data, never on vertex
//! names, so the set of leaves is an isomorphism invariant and so is its
//! minimum.

use super::Graph;

/// Adjacency bit string of a graph in its canonical labelling.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CanonicalForm {
    n: usize,
    bits: Vec<u64>,
}

impl CanonicalForm {
    pub fn n(&self) -> usize {
        self.n
    }

    /// The canonical representative as a graph.
    pub fn to_graph(&self) -> Graph {
        let mut edges = Vec::new();
        let mut k = 0usize;
        for j in 1..self.n {
            for i in 0..j {
                if self.bits[k / 64] >> (63 - k % 64) & 1 == 1 {
                    edges.push((i, j));
                }
                k += 1;
            }
        }
        Graph::from_edges(self.n, &edges).expect("canonical form encodes a simple graph")
    }
}

/// Canonical form and the labelling (`perm[v]` = canonical label of `v`).
pub fn canonical_labeling(g: &Graph) -> (CanonicalForm, Vec<usize>) {
    let n = g.n();
    let rows = adjacency_rows(g);
    let mut best: Option<(Vec<u64>, Vec<usize>)> = None;
    let colors = vec![0usize; n];
    search(&rows, colors, &mut best);
    let (bits, perm) = best.unwrap_or_default();
    (CanonicalForm { n, bits }, perm)
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canonical_labeling(g).0
}

/// The graph relabelled canonically.
pub fn canonical_graph(g: &Graph) -> Graph {
    let (_, perm) = canonical_labeling(g);
    g.relabel(&perm)
}

type Rows = Vec<Vec<u64>>;

fn adjacency_rows(g: &Graph) -> Rows {
    let words = g.n().div_ceil(64).max(1);
    (0..g.n())
        .map(|v| {
            let mut row = vec![0u64; words];
            for &w in g.neighbors(v) {
                row[w / 64] |= 1 << (w % 64);
            }
            row
        })
        .collect()
}

fn adjacent(rows: &Rows, u: usize, v: usize) -> bool {
    rows[u][v / 64] >> (v % 64) & 1 == 1
}

/// Replace colours by the rank of their refinement signature until stable.
fn refine(rows: &Rows, colors: &mut [usize]) {
    let n = colors.len();
    let mut count = distinct(colors);
    loop {
        let mut sigs: Vec<(usize, Vec<usize>, usize)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = (0..n).filter(|&w| adjacent(rows, v, w)).map(|w| colors[w]).collect();
                nb.sort_unstable();
                (colors[v], nb, v)
            })
            .collect();
        sigs.sort();
        let mut rank = 0;
        for i in 0..n {
            if i > 0 && (sigs[i].0 != sigs[i - 1].0 || sigs[i].1 != sigs[i - 1].1) {
                rank += 1;
            }
            colors[sigs[i].2] = rank;
        }
        let new_count = if n == 0 { 0 } else { rank + 1 };
        if new_count == count {
            return;
        }
        count = new_count;
    }
}

fn distinct(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Every cell is a clique or an independent set and every pair of cells is
/// completely joined or not joined at all; then all consistent labellings
/// give the same bit string.
fn homogeneous(rows: &Rows, colors: &[usize]) -> bool {
    let n = colors.len();
    let k = distinct(colors);
    let mut rel: Vec<Option<bool>> = vec![None; k * k];
    for u in 0..n {
        for v in 0..n {
            if u == v {
                continue;
            }
            let idx = colors[u] * k + colors[v];
            let a = adjacent(rows, u, v);
            match rel[idx] {
                None => rel[idx] = Some(a),
                Some(b) if b != a => return false,
                _ => {}
            }
        }
    }
    true
}

fn leaf_bits(rows: &Rows, perm: &[usize]) -> Vec<u64> {
    let n = perm.len();
    let mut inv = vec![0; n];
    for (v, &p) in perm.iter().enumerate() {
        inv[p] = v;
    }
    let total = n * n.saturating_sub(1) / 2;
    let mut bits = vec![0u64; total.div_ceil(64)];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if adjacent(rows, inv[i], inv[j]) {
                bits[k / 64] |= 1 << (63 - k % 64);
            }
            k += 1;
        }
    }
    bits
}

/// Colours are ranks `0..k`; turn them into a permutation by numbering each
/// cell's members consecutively in vertex order.
fn discrete_from(colors: &[usize]) -> Vec<usize> {
    let n = colors.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (colors[v], v));
    let mut perm = vec![0; n];
    for (pos, &v) in order.iter().enumerate() {
        perm[v] = pos;
    }
    perm
}

fn offer(rows: &Rows, perm: Vec<usize>, best: &mut Option<(Vec<u64>, Vec<usize>)>) {
    let bits = leaf_bits(rows, &perm);
    match best {
        Some((b, _)) if *b <= bits => {}
        _ => *best = Some((bits, perm)),
    }
}

fn search(rows: &Rows, mut colors: Vec<usize>, best: &mut Option<(Vec<u64>, Vec<usize>)>) {
    let n = colors.len();
    refine(rows, &mut colors);
    let k = distinct(&colors);
    if k == n || homogeneous(rows, &colors) {
        offer(rows, discrete_from(&colors), best);
        return;
    }
    // target: smallest non-singleton cell, ties by colour
    let mut sizes = vec![0usize; k];
    for &c in &colors {
        sizes[c] += 1;
    }
    let target = (0..k)
        .filter(|&c| sizes[c] > 1)
        .min_by_key(|&c| (sizes[c], c))
        .unwrap();
    for v in (0..n).filter(|&v| colors[v] == target) {
        let child: Vec<usize> = (0..n)
            .map(|x| 2 * colors[x] + usize::from(x != v))
            .collect();
        search(rows, child, best);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Lexicographically smallest bit string over all `n!` labellings.
    fn brute_force_form(g: &Graph) -> Vec<u64> {
        let rows = adjacency_rows(g);
        let n = g.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best = leaf_bits(&rows, &perm);
        // Heap's algorithm
        let mut c = vec![0; n];
        let mut i = 0;
        while i < n {
            if c[i] < i {
                if i % 2 == 0 {
                    perm.swap(0, i);
                } else {
                    perm.swap(c[i], i);
                }
                best = best.min(leaf_bits(&rows, &perm));
                c[i] += 1;
                i = 0;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
        best
    }

    fn isomorphic_brute(a: &Graph, b: &Graph) -> bool {
        a.n() == b.n() && brute_force_form(a) == brute_force_form(b)
    }

    fn random_graph(n: usize, bits: &[bool]) -> Graph {
        let mut edges = Vec::new();
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                if bits[k] {
                    edges.push((i, j));
                }
                k += 1;
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn known_pairs() {
        let k33 = Graph::complete_bipartite(3, 3);
        let prism = Graph::prism();
        assert_ne!(canonical_form(&k33), canonical_form(&prism));
        let c6 = Graph::cycle(6);
        let relabelled = c6.relabel(&[3, 0, 5, 1, 4, 2]);
        assert_eq!(canonical_form(&c6), canonical_form(&relabelled));
        assert_eq!(canonical_form(&Graph::complete(7)).to_graph(), Graph::complete(7));
    }

    #[test]
    fn canonical_graph_is_fixed_point() {
        let g = Graph::petersen();
        let c = canonical_graph(&g);
        assert_eq!(canonical_graph(&c), c);
        assert_eq!(canonical_form(&g).to_graph(), c);
    }

    proptest! {
        #[test]
        fn relabelling_invariant(n in 1usize..10, bits in proptest::collection::vec(any::<bool>(), 45), seed in any::<u64>()) {
            let g = random_graph(n, &bits);
            let mut perm: Vec<usize> = (0..n).collect();
            let mut s = seed;
            for i in (1..n).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                perm.swap(i, (s >> 33) as usize % (i + 1));
            }
            prop_assert_eq!(canonical_form(&g), canonical_form(&g.relabel(&perm)));
        }

        #[test]
        fn distinguishes_exactly_like_brute_force(
            n in 1usize..7,
            a in proptest::collection::vec(any::<bool>(), 15),
            b in proptest::collection::vec(any::<bool>(), 15),
        ) {
            let (ga, gb) = (random_graph(n, &a), random_graph(n, &b));
            prop_assert_eq!(canonical_form(&ga) == canonical_form(&gb), isomorphic_brute(&ga, &gb));
        }
    }
}
