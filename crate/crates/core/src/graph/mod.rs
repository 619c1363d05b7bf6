//! Simple undirected graphs and the small-graph machinery built on them.

pub mod canon;
pub mod cover;
pub mod generate;
pub mod graph6;
pub mod matching;
pub mod subgraphs;

use std::fmt;

use crate::error::{Error, Result};

pub use canon::{canonical_form, CanonicalForm};
pub use cover::{build_cover, diamond_necklace, necklace, CoverSpec};
pub use generate::generate_connected_regular;
pub use graph6::{parse_graph6, to_graph6};
pub use matching::max_matching;
pub use subgraphs::{count_subgraphs, SubgraphCounts};

/// Simple undirected graph on vertices `0..n`.
///
/// Immutable after construction. Neighbor lists are sorted, and the uniform
/// degree is recorded when the graph is regular.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    degree: Option<usize>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph::from_adjacency(vec![Vec::new(); n])
    }

    fn from_adjacency(mut adj: Vec<Vec<usize>>) -> Self {
        for list in adj.iter_mut() {
            list.sort_unstable();
        }
        let degree = match adj.first() {
            None => Some(0),
            Some(first) => {
                let d = first.len();
                adj.iter().all(|l| l.len() == d).then_some(d)
            }
        };
        Graph { adj, degree }
    }

    /// Build from an edge list, rejecting loops and repeated edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("edge ({u}, {v}) out of range for n = {n}")));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
            }
            if adj[u].contains(&v) {
                return Err(Error::InvalidGraph(format!("repeated edge ({u}, {v})")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        Ok(Graph::from_adjacency(adj))
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree_of(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// The common degree if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        self.degree
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, l)| l.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Adjacency rows as bitmasks; `None` when `n > 64`.
    pub fn bitmasks(&self) -> Option<Vec<u64>> {
        if self.n() > 64 {
            return None;
        }
        Some(
            self.adj
                .iter()
                .map(|l| l.iter().fold(0u64, |m, &v| m | (1 << v)))
                .collect(),
        )
    }

    /// Subgraph induced by `keep` (in the given order), relabelled `0..keep.len()`.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let adj = keep
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter_map(|&w| (index[w] != usize::MAX).then_some(index[w]))
                    .collect()
            })
            .collect();
        Graph::from_adjacency(adj)
    }

    /// `G - S`: delete the listed vertices and relabel the rest in order.
    pub fn remove_vertices(&self, removed: &[usize]) -> Graph {
        let keep: Vec<usize> = (0..self.n()).filter(|v| !removed.contains(v)).collect();
        self.induced(&keep)
    }

    /// `G - e`, keeping all vertices.
    pub fn remove_edge(&self, u: usize, v: usize) -> Result<Graph> {
        if !self.has_edge(u, v) {
            return Err(Error::NotAnEdge(u, v));
        }
        let mut adj = self.adj.clone();
        adj[u].retain(|&w| w != v);
        adj[v].retain(|&w| w != u);
        Ok(Graph::from_adjacency(adj))
    }

    /// Relabel: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let mut adj = vec![Vec::new(); self.n()];
        for (v, l) in self.adj.iter().enumerate() {
            adj[perm[v]] = l.iter().map(|&w| perm[w]).collect();
        }
        Graph::from_adjacency(adj)
    }

    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n();
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|l| l.iter().map(|&w| w + off).collect()));
        Graph::from_adjacency(adj)
    }

    /// `k` disjoint copies.
    pub fn copies(&self, k: usize) -> Graph {
        (1..k).fold(self.clone(), |acc, _| acc.disjoint_union(self))
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Error unless the graph is `d`-regular.
    pub fn require_regular(&self, d: usize) -> Result<()> {
        if self.n() > 0 && self.degree != Some(d) {
            return Err(Error::NotRegular(d));
        }
        Ok(())
    }

    /// True if some connected component is isomorphic to `K_{m}`.
    pub fn has_complete_component(&self, m: usize) -> bool {
        self.components().iter().any(|c| {
            c.len() == m && c.iter().all(|&v| self.adj[v].len() == m - 1)
        })
    }
}

/// Named graphs used throughout the tests and tables.
impl Graph {
    pub fn complete(n: usize) -> Graph {
        let adj = (0..n).map(|v| (0..n).filter(|&w| w != v).collect()).collect();
        Graph::from_adjacency(adj)
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3);
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let edges: Vec<_> = (0..a).flat_map(|i| (0..b).map(move |j| (i, a + j))).collect();
        Graph::from_edges(a + b, &edges).unwrap()
    }

    /// Circulant graph: `i ~ i ± s (mod n)` for each jump `s`.
    pub fn circulant(n: usize, jumps: &[usize]) -> Graph {
        let mut adj = vec![Vec::new(); n];
        for i in 0..n {
            for &s in jumps {
                for j in [(i + s) % n, (i + n - s % n) % n] {
                    if j != i && !adj[i].contains(&j) {
                        adj[i].push(j);
                    }
                }
            }
        }
        Graph::from_adjacency(adj)
    }

    /// Triangular prism `C_3 x K_2`.
    pub fn prism() -> Graph {
        Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]).unwrap()
    }

    pub fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, &edges).unwrap()
    }

    /// `K_n` minus one edge.
    pub fn complete_minus_edge(n: usize) -> Graph {
        Graph::complete(n).remove_edge(0, 1).unwrap()
    }

    /// The `d`-dimensional hypercube.
    pub fn hypercube(d: usize) -> Graph {
        let n = 1usize << d;
        let adj = (0..n).map(|v| (0..d).map(|b| v ^ (1 << b)).collect()).collect();
        Graph::from_adjacency(adj)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges().collect::<Vec<_>>())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_rejects_non_simple() {
        assert!(Graph::from_edges(3, &[(0, 0)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 3)]).is_err());
    }

    #[test]
    fn named_graphs_are_regular() {
        assert_eq!(Graph::complete(4).regular_degree(), Some(3));
        assert_eq!(Graph::petersen().regular_degree(), Some(3));
        assert_eq!(Graph::prism().regular_degree(), Some(3));
        assert_eq!(Graph::complete_bipartite(3, 3).regular_degree(), Some(3));
        assert_eq!(Graph::circulant(8, &[1, 2]).regular_degree(), Some(4));
        assert_eq!(Graph::hypercube(4).regular_degree(), Some(4));
        assert_eq!(Graph::path(3).regular_degree(), None);
        for g in [Graph::petersen(), Graph::hypercube(4)] {
            let d = g.regular_degree().unwrap();
            assert_eq!(2 * g.edge_count(), g.n() * d);
        }
    }

    #[test]
    fn deletions_and_components() {
        let k4 = Graph::complete(4);
        let g = k4.remove_vertices(&[0]);
        assert_eq!(g, Graph::complete(3));
        let two = k4.disjoint_union(&k4);
        assert_eq!(two.components().len(), 2);
        assert!(two.has_complete_component(4));
        assert!(!Graph::prism().has_complete_component(4));
        assert_eq!(k4.remove_edge(0, 1).unwrap().edge_count(), 5);
        assert_eq!(k4.remove_edge(0, 1).unwrap().remove_edge(0, 1), Err(Error::NotAnEdge(0, 1)));
    }
}
