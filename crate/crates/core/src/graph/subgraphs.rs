//! Counts of (not necessarily induced) subgraphs isomorphic to small
//! cycles and the diamond.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::Graph;

/// Subgraph counts of a graph on `n` vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SubgraphCounts {
    pub n: usize,
    pub c3: u64,
    pub c4: u64,
    pub c5: u64,
    pub diamond: u64,
}

impl SubgraphCounts {
    fn density(&self, count: u64) -> BigRational {
        assert!(self.n > 0, "density of the empty graph");
        BigRational::new(BigInt::from(count), BigInt::from(self.n))
    }

    pub fn rho3(&self) -> BigRational {
        self.density(self.c3)
    }

    pub fn rho4(&self) -> BigRational {
        self.density(self.c4)
    }

    pub fn rho5(&self) -> BigRational {
        self.density(self.c5)
    }

    pub fn rho_diamond(&self) -> BigRational {
        self.density(self.diamond)
    }
}

fn choose2(x: u64) -> u64 {
    x * x.saturating_sub(1) / 2
}

pub fn count_subgraphs(g: &Graph) -> SubgraphCounts {
    let n = g.n();
    let common = |u: usize, w: usize| -> u64 {
        let (a, b) = (g.neighbors(u), g.neighbors(w));
        let (mut i, mut j, mut c) = (0, 0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    c += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        c
    };

    let mut c3 = 0;
    let mut diamond = 0;
    for (u, v) in g.edges() {
        let t = common(u, v);
        c3 += t;
        diamond += choose2(t);
    }
    c3 /= 3;

    let mut c4 = 0;
    for u in 0..n {
        for w in u + 1..n {
            c4 += choose2(common(u, w));
        }
    }
    c4 /= 2;

    // each 5-cycle is found twice from its smallest vertex
    let mut c5 = 0u64;
    for s in 0..n {
        for &a in g.neighbors(s).iter().filter(|&&a| a > s) {
            for &b in g.neighbors(a).iter().filter(|&&b| b > s && b != a) {
                for &c in g.neighbors(b).iter().filter(|&&c| c > s && c != a) {
                    for &e in g.neighbors(c).iter().filter(|&&e| e > s && e != a && e != b) {
                        if g.has_edge(e, s) {
                            c5 += 1;
                        }
                    }
                }
            }
        }
    }
    c5 /= 2;

    SubgraphCounts { n, c3, c4, c5, diamond }
}
