//! Exhaustive generation of connected d-regular graphs up to isomorphism.
//!
//! Candidates are built in breadth-first labelled form: vertices are
//! expanded in label order, and expanding `v` joins it to some of the
//! discovered but unexpanded vertices above it plus a number of fresh
//! vertices that receive the next labels. Every connected graph has such a
//! labelling, so the candidates cover every isomorphism class. Unexpanded
//! vertices with identical neighbourhoods are interchangeable, so only the
//! lowest-labelled members of each such class are ever chosen. Duplicates
//! are then removed by canonical form.

use std::collections::BTreeMap;
use std::sync::{Mutex, OnceLock};

use rayon::prelude::*;

use super::canon::{canonical_form, CanonicalForm};
use super::Graph;
use crate::error::{Error, Result};

/// Largest `n` accepted for degree `d`.
pub fn generation_cap(d: usize) -> usize {
    match d {
        0..=3 => 14,
        4 => 11,
        5 => 10,
        _ => 10,
    }
}

/// All connected `d`-regular graphs on `n` vertices, one per isomorphism
/// class, in canonical labelling and sorted by canonical form.
pub fn generate_connected_regular(n: usize, d: usize) -> Result<Vec<Graph>> {
    Ok(corpus(n, d)?.iter().map(|(_, g)| g.clone()).collect())
}

type Corpus = Vec<(CanonicalForm, Graph)>;

/// Cached corpus with canonical keys.
pub fn corpus(n: usize, d: usize) -> Result<&'static Corpus> {
    if n == 0 || d >= n || (n * d) % 2 == 1 {
        return Err(Error::NoGraphsExist { n, d });
    }
    let cap = generation_cap(d);
    if n > cap {
        return Err(Error::Capacity {
            what: format!("generation of {d}-regular graphs on {n} vertices"),
            limit: cap,
        });
    }
    static CACHE: OnceLock<Mutex<BTreeMap<(usize, usize), &'static Corpus>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    if let Some(c) = cache.lock().unwrap().get(&(n, d)) {
        return Ok(c);
    }
    let built: &'static Corpus = Box::leak(Box::new(build(n, d)));
    Ok(cache.lock().unwrap().entry((n, d)).or_insert(built))
}

/// Connected d-regular graphs on at most `nmax` vertices, smallest first.
pub fn corpus_up_to(nmax: usize, d: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for n in d + 1..=nmax {
        if (n * d) % 2 == 0 {
            out.extend(generate_connected_regular(n, d)?);
        }
    }
    Ok(out)
}

fn build(n: usize, d: usize) -> Corpus {
    let mut st = State::new(n, d);
    // vertex 0 takes d fresh neighbours; split the search on its first expansion
    st.labeled = 1 + d;
    for w in 1..=d {
        st.add_edge(0, w);
    }
    let mut seeds = Vec::new();
    st.children(1, &mut |s| seeds.push(s.clone()));
    let found: Vec<BTreeMap<CanonicalForm, ()>> = seeds
        .into_par_iter()
        .map(|mut s| {
            let mut local = BTreeMap::new();
            s.expand(2, &mut |g| {
                local.insert(canonical_form(&g), ());
            });
            local
        })
        .collect();
    let mut all = BTreeMap::new();
    for m in found {
        all.extend(m);
    }
    all.into_keys()
        .map(|cf| {
            let g = cf.to_graph();
            (cf, g)
        })
        .collect()
}

#[derive(Clone)]
struct State {
    n: usize,
    d: usize,
    adj: Vec<u64>,
    deg: Vec<usize>,
    labeled: usize,
}

impl State {
    fn new(n: usize, d: usize) -> Self {
        assert!(n <= 64);
        State {
            n,
            d,
            adj: vec![0; n],
            deg: vec![0; n],
            labeled: 0,
        }
    }

    fn add_edge(&mut self, a: usize, b: usize) {
        self.adj[a] |= 1 << b;
        self.adj[b] |= 1 << a;
        self.deg[a] += 1;
        self.deg[b] += 1;
    }

    fn remove_edge(&mut self, a: usize, b: usize) {
        self.adj[a] &= !(1 << b);
        self.adj[b] &= !(1 << a);
        self.deg[a] -= 1;
        self.deg[b] -= 1;
    }

    fn graph(&self) -> Graph {
        let mut edges = Vec::new();
        for a in 0..self.n {
            for b in a + 1..self.n {
                if self.adj[a] >> b & 1 == 1 {
                    edges.push((a, b));
                }
            }
        }
        Graph::from_edges(self.n, &edges).unwrap()
    }

    fn expand(&mut self, v: usize, emit: &mut dyn FnMut(Graph)) {
        if v == self.labeled {
            if self.labeled == self.n && self.deg.iter().all(|&x| x == self.d) {
                emit(self.graph());
            }
            return;
        }
        self.children(v, &mut |s: &mut State| s.expand(v + 1, emit));
    }

    /// Apply every admissible completion of vertex `v` and call `f` on the
    /// resulting state.
    fn children(&mut self, v: usize, f: &mut dyn FnMut(&mut State)) {
        let need = self.d - self.deg[v];
        // candidate classes: unexpanded, non-full, not adjacent to v, grouped by neighbourhood
        let mut classes: Vec<(u64, Vec<usize>)> = Vec::new();
        for w in v + 1..self.labeled {
            if self.deg[w] < self.d && self.adj[v] >> w & 1 == 0 {
                match classes.iter_mut().find(|(m, _)| *m == self.adj[w]) {
                    Some((_, members)) => members.push(w),
                    None => classes.push((self.adj[w], vec![w])),
                }
            }
        }
        let mut picks = Vec::new();
        self.choose(v, need, &classes, 0, &mut picks, f);
    }

    fn choose(
        &mut self,
        v: usize,
        need: usize,
        classes: &[(u64, Vec<usize>)],
        ci: usize,
        picks: &mut Vec<usize>,
        f: &mut dyn FnMut(&mut State),
    ) {
        if ci == classes.len() {
            let fresh = need;
            if self.labeled + fresh > self.n {
                return;
            }
            let start = self.labeled;
            for w in start..start + fresh {
                self.add_edge(v, w);
            }
            self.labeled += fresh;
            f(self);
            self.labeled -= fresh;
            for w in start..start + fresh {
                self.remove_edge(v, w);
            }
            return;
        }
        let members = &classes[ci].1;
        for take in 0..=members.len().min(need) {
            for &w in &members[..take] {
                self.add_edge(v, w);
            }
            self.choose(v, need - take, classes, ci + 1, picks, f);
            for &w in &members[..take] {
                self.remove_edge(v, w);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    /// All labelled d-regular graphs on n vertices: fill the lowest vertex
    /// that still needs a neighbour, trying each admissible partner above it.
    fn labelled_regular(n: usize, d: usize, emit: &mut dyn FnMut(&[u64])) {
        fn rec(adj: &mut [u64], deg: &mut [usize], d: usize, emit: &mut dyn FnMut(&[u64])) {
            let n = adj.len();
            let Some(v) = (0..n).find(|&v| deg[v] < d) else {
                emit(adj);
                return;
            };
            let last = (0..n).filter(|&w| adj[v] >> w & 1 == 1 && w > v).max();
            for w in v + 1..n {
                if deg[w] < d && adj[v] >> w & 1 == 0 && last.map_or(true, |l| w > l) {
                    adj[v] |= 1 << w;
                    adj[w] |= 1 << v;
                    deg[v] += 1;
                    deg[w] += 1;
                    rec(adj, deg, d, emit);
                    adj[v] &= !(1 << w);
                    adj[w] &= !(1 << v);
                    deg[v] -= 1;
                    deg[w] -= 1;
                }
            }
        }
        rec(&mut vec![0; n], &mut vec![0; n], d, emit);
    }

    fn from_masks(adj: &[u64]) -> Graph {
        let n = adj.len();
        let edges: Vec<_> = (0..n)
            .flat_map(|a| (a + 1..n).filter(move |&b| adj[a] >> b & 1 == 1).map(move |b| (a, b)))
            .collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    /// Brute-force oracle: labelled enumeration plus isomorphism rejection.
    fn oracle(n: usize, d: usize) -> BTreeSet<CanonicalForm> {
        let mut out = BTreeSet::new();
        labelled_regular(n, d, &mut |adj| {
            let g = from_masks(adj);
            if g.is_connected() {
                out.insert(canonical_form(&g));
            }
        });
        out
    }

    fn automorphisms(g: &Graph) -> u64 {
        let n = g.n();
        let adj = g.bitmasks().unwrap();
        fn rec(adj: &[u64], img: &mut Vec<usize>, used: u64) -> u64 {
            let v = img.len();
            if v == adj.len() {
                return 1;
            }
            let mut total = 0;
            for w in 0..adj.len() {
                if used >> w & 1 == 1 || adj[v].count_ones() != adj[w].count_ones() {
                    continue;
                }
                let ok = (0..v).all(|u| (adj[v] >> u & 1) == (adj[w] >> img[u] & 1));
                if ok {
                    img.push(w);
                    total += rec(adj, img, used | 1 << w);
                    img.pop();
                }
            }
            total
        }
        let _ = n;
        rec(&adj, &mut Vec::new(), 0)
    }

    #[test]
    fn known_counts_cubic() {
        for (n, count) in [(4, 1), (6, 2), (8, 5), (10, 19), (12, 85)] {
            assert_eq!(generate_connected_regular(n, 3).unwrap().len(), count, "n = {n}");
        }
    }

    #[test]
    fn known_counts_quartic_and_quintic() {
        for (n, count) in [(5, 1), (6, 1), (7, 2), (8, 6), (9, 16), (10, 59)] {
            assert_eq!(generate_connected_regular(n, 4).unwrap().len(), count, "n = {n}");
        }
        for (n, count) in [(6, 1), (8, 3)] {
            assert_eq!(generate_connected_regular(n, 5).unwrap().len(), count, "n = {n}");
        }
    }

    #[test]
    fn agrees_with_labelled_oracle() {
        for (n, d) in [(4, 3), (6, 3), (8, 3), (5, 4), (6, 4), (7, 4), (8, 4), (6, 5), (7, 2), (8, 2)] {
            let got: BTreeSet<CanonicalForm> = corpus(n, d).unwrap().iter().map(|(c, _)| c.clone()).collect();
            assert_eq!(got, oracle(n, d), "(n, d) = ({n}, {d})");
        }
    }

    #[test]
    fn orbit_count_cubic_ten() {
        // labelled connected cubic graphs on 10 vertices, counted directly
        let mut labelled = 0u64;
        labelled_regular(10, 3, &mut |adj| {
            if from_masks(adj).is_connected() {
                labelled += 1;
            }
        });
        let fact: u64 = (1..=10).product();
        let by_orbits: u64 = generate_connected_regular(10, 3)
            .unwrap()
            .iter()
            .map(|g| fact / automorphisms(g))
            .sum();
        assert_eq!(by_orbits, labelled);
    }

    #[test]
    fn output_is_regular_connected_and_sorted() {
        let gs = corpus(10, 3).unwrap();
        for w in gs.windows(2) {
            assert!(w[0].0 < w[1].0);
        }
        for (_, g) in gs {
            assert_eq!(g.regular_degree(), Some(3));
            assert!(g.is_connected());
            assert_eq!(2 * g.edge_count(), g.n() * 3);
        }
        let k4 = generate_connected_regular(4, 3).unwrap();
        assert_eq!(k4, vec![Graph::complete(4)]);
    }

    #[test]
    fn errors() {
        assert_eq!(generate_connected_regular(5, 3).unwrap_err(), Error::NoGraphsExist { n: 5, d: 3 });
        assert_eq!(generate_connected_regular(3, 3).unwrap_err(), Error::NoGraphsExist { n: 3, d: 3 });
        assert!(matches!(generate_connected_regular(40, 3), Err(Error::Capacity { .. })));
    }
}
