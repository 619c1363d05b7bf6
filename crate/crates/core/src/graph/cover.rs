//! k-fold covers (lifts) of a base graph.
//!
//! The cover has vertex set `V(G) x {0..k}`, with `(x, i)` stored at index
//! `x + n*i`. Each base edge `(a, b)` with `a < b` carries a permutation `p`
//! of `0..k` and lifts to the edges `(a, i) ~ (b, p[i])`.

use std::collections::BTreeMap;

use super::Graph;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverSpec {
    base: Graph,
    k: usize,
    marked: Option<(usize, usize)>,
    perms: BTreeMap<(usize, usize), Vec<usize>>,
}

impl CoverSpec {
    /// General cover; edges missing from `perms` get the identity.
    pub fn new(base: Graph, k: usize, perms: BTreeMap<(usize, usize), Vec<usize>>) -> Result<Self> {
        if k < 1 {
            return Err(Error::Precondition("cover fold must be at least 1".into()));
        }
        let mut normalized = BTreeMap::new();
        for ((a, b), p) in perms {
            if !base.has_edge(a, b) {
                return Err(Error::NotAnEdge(a, b));
            }
            let mut sorted = p.clone();
            sorted.sort_unstable();
            if sorted != (0..k).collect::<Vec<_>>() {
                return Err(Error::Precondition(format!("assignment on ({a}, {b}) is not a permutation of 0..{k}")));
            }
            if a < b {
                normalized.insert((a, b), p);
            } else {
                let mut inv = vec![0; k];
                for (i, &j) in p.iter().enumerate() {
                    inv[j] = i;
                }
                normalized.insert((b, a), inv);
            }
        }
        Ok(CoverSpec {
            base,
            k,
            marked: None,
            perms: normalized,
        })
    }

    /// Necklace k-cover along `(u, v)`: `(u, i) ~ (v, i+1 mod k)`, identity
    /// on every other edge.
    pub fn necklace(base: Graph, u: usize, v: usize, k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::Precondition("necklace fold must be at least 2".into()));
        }
        if !base.has_edge(u, v) {
            return Err(Error::NotAnEdge(u, v));
        }
        let shift: Vec<usize> = (0..k).map(|i| (i + 1) % k).collect();
        let mut spec = CoverSpec::new(base, k, BTreeMap::from([((u, v), shift)]))?;
        spec.marked = Some((u, v));
        Ok(spec)
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn fold(&self) -> usize {
        self.k
    }

    pub fn marked(&self) -> Option<(usize, usize)> {
        self.marked
    }
}

pub fn build_cover(spec: &CoverSpec) -> Graph {
    let n = spec.base.n();
    let k = spec.k;
    let mut edges = Vec::with_capacity(k * spec.base.edge_count());
    for (a, b) in spec.base.edges() {
        match spec.perms.get(&(a, b)) {
            Some(p) => edges.extend((0..k).map(|i| (a + n * i, b + n * p[i]))),
            None => edges.extend((0..k).map(|i| (a + n * i, b + n * i))),
        }
    }
    Graph::from_edges(n * k, &edges).expect("a lift of a simple graph is simple")
}

/// Necklace cover of `g` along `(u, v)`.
pub fn necklace(g: &Graph, u: usize, v: usize, k: usize) -> Result<Graph> {
    Ok(build_cover(&CoverSpec::necklace(g.clone(), u, v, k)?))
}

/// The diamond necklace `DN_k`.
pub fn diamond_necklace(k: usize) -> Graph {
    necklace(&Graph::complete(4), 0, 1, k).expect("K4 has the edge (0, 1)")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::canon::canonical_form;

    #[test]
    fn diamond_necklace_two() {
        let g = diamond_necklace(2);
        assert_eq!((g.n(), g.edge_count()), (8, 12));
        assert_eq!(g.regular_degree(), Some(3));
        assert!(g.is_connected());
    }

    #[test]
    fn diamond_necklace_four_is_four_diamonds() {
        let g = diamond_necklace(4);
        assert_eq!((g.n(), g.edge_count()), (16, 24));
        assert!(g.is_connected());
        let mut h = g.clone();
        for i in 0..4 {
            h = h.remove_edge(4 * i, 1 + 4 * ((i + 1) % 4)).unwrap();
        }
        let comps = h.components();
        assert_eq!(comps.len(), 4);
        let diamond = canonical_form(&Graph::complete_minus_edge(4));
        for c in comps {
            assert_eq!(canonical_form(&h.induced(&c)), diamond);
        }
    }

    #[test]
    fn triangle_necklace_is_nine_cycle() {
        let g = necklace(&Graph::cycle(3), 0, 1, 3).unwrap();
        assert_eq!(canonical_form(&g), canonical_form(&Graph::cycle(9)));
    }

    #[test]
    fn single_edge_necklace_is_a_matching() {
        let g = necklace(&Graph::complete(2), 0, 1, 3).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.components().len(), 3);
    }

    #[test]
    fn reversed_orientation() {
        let a = necklace(&Graph::complete(4), 1, 0, 3).unwrap();
        let b = necklace(&Graph::complete(4), 0, 1, 3).unwrap();
        assert_eq!(canonical_form(&a), canonical_form(&b));
        assert!(a.has_edge(1, 4) && b.has_edge(0, 5));
    }

    #[test]
    fn rejects_non_edges() {
        let g = Graph::cycle(4);
        assert_eq!(CoverSpec::necklace(g.clone(), 0, 2, 2).unwrap_err(), Error::NotAnEdge(0, 2));
        assert!(CoverSpec::necklace(g, 0, 1, 1).is_err());
    }

    #[test]
    fn covers_preserve_counts_and_regularity() {
        let base = Graph::petersen();
        let mut perms = BTreeMap::new();
        perms.insert((0, 1), vec![2, 0, 1]);
        perms.insert((5, 0), vec![1, 2, 0]);
        let g = build_cover(&CoverSpec::new(base.clone(), 3, perms).unwrap());
        assert_eq!(g.n(), 3 * base.n());
        assert_eq!(g.edge_count(), 3 * base.edge_count());
        assert_eq!(g.regular_degree(), Some(3));
    }
}
