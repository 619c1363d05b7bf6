//! Path-trees, tree-like walks and power sums of the `γ_i`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{count_subgraphs, Graph};
use crate::numeric::IntPoly;

/// Default limit on the number of path-tree nodes.
pub const PATH_TREE_CAP: usize = 2_000_000;

/// The tree of simple paths starting at a root vertex; node 0 is the root
/// and every other node's parent is its one-step truncation.
#[derive(Clone, Debug)]
pub struct PathTree {
    /// `(parent, end vertex)` per node; the root's parent is itself.
    nodes: Vec<(usize, usize)>,
    children: Vec<Vec<usize>>,
}

impl PathTree {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn parent(&self, node: usize) -> Option<usize> {
        (node != 0).then(|| self.nodes[node].0)
    }

    pub fn children(&self, node: usize) -> &[usize] {
        &self.children[node]
    }

    /// The path represented by `node`, root first.
    pub fn path(&self, mut node: usize) -> Vec<usize> {
        let mut out = vec![self.nodes[node].1];
        while node != 0 {
            node = self.nodes[node].0;
            out.push(self.nodes[node].1);
        }
        out.reverse();
        out
    }

    /// Closed walks of length `ℓ` from the root.
    pub fn closed_walks(&self, len: usize) -> BigInt {
        let mut cur = vec![BigInt::zero(); self.len()];
        cur[0] = BigInt::one();
        for _ in 0..len {
            let mut next = vec![BigInt::zero(); self.len()];
            for (v, c) in cur.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if v != 0 {
                    next[self.nodes[v].0] += c;
                }
                for &w in &self.children[v] {
                    next[w] += c;
                }
            }
            cur = next;
        }
        cur.swap_remove(0)
    }
}

pub fn build_path_tree(g: &Graph, u: usize) -> Result<PathTree> {
    build_path_tree_capped(g, u, PATH_TREE_CAP)
}

pub fn build_path_tree_capped(g: &Graph, u: usize, cap: usize) -> Result<PathTree> {
    if u >= g.n() {
        return Err(Error::Precondition(format!("vertex {u} out of range")));
    }
    let mut tree = PathTree {
        nodes: vec![(0, u)],
        children: vec![Vec::new()],
    };
    let mut on_path = vec![false; g.n()];
    on_path[u] = true;
    grow(g, &mut tree, 0, &mut on_path, cap)?;
    Ok(tree)
}

fn grow(g: &Graph, tree: &mut PathTree, node: usize, on_path: &mut [bool], cap: usize) -> Result<()> {
    let end = tree.nodes[node].1;
    for &w in g.neighbors(end) {
        if on_path[w] {
            continue;
        }
        if tree.nodes.len() >= cap {
            return Err(Error::Capacity {
                what: "path-tree node count".into(),
                limit: cap,
            });
        }
        let child = tree.nodes.len();
        tree.nodes.push((node, w));
        tree.children.push(Vec::new());
        tree.children[node].push(child);
        on_path[w] = true;
        grow(g, tree, child, on_path, cap)?;
        on_path[w] = false;
    }
    Ok(())
}

/// Truncated power series in `t = z²` with integer coefficients.
type Series = Vec<BigInt>;

/// `1 / (1 − t·s)` truncated at degree `m`.
fn series_recip_one_minus_t(s: &Series, m: usize) -> Series {
    // f = 1 + t·s·f
    let mut f = vec![BigInt::zero(); m + 1];
    f[0] = BigInt::one();
    for k in 1..=m {
        let mut acc = BigInt::zero();
        for j in 0..k {
            acc += &s[j] * &f[k - 1 - j];
        }
        f[k] = acc;
    }
    f
}

/// Generating function of closed walks from the head of the current path
/// that stay among its extensions, truncated at `t^m`, where the depth
/// budget `m` is what remains of the half-length.
fn excursions(g: &Graph, end: usize, on_path: &mut [bool], m: usize, nodes: &mut usize, cap: usize) -> Result<Series> {
    let mut sum = vec![BigInt::zero(); m + 1];
    if m > 0 {
        for &w in g.neighbors(end) {
            if on_path[w] {
                continue;
            }
            *nodes += 1;
            if *nodes > cap {
                return Err(Error::Capacity {
                    what: "path-tree node count".into(),
                    limit: cap,
                });
            }
            on_path[w] = true;
            let child = excursions(g, w, on_path, m - 1, nodes, cap)?;
            on_path[w] = false;
            for (k, c) in child.into_iter().enumerate() {
                sum[k] += c;
            }
        }
    }
    Ok(series_recip_one_minus_t(&sum, m))
}

/// Total number of closed tree-like walks of even length `ℓ` over all roots:
/// `Σ_u (closed walks of length ℓ from the root of T(G, u))`.
pub fn tree_like_walk_total(g: &Graph, len: usize) -> Result<BigInt> {
    if len == 0 || len % 2 == 1 {
        return Err(Error::Precondition(format!("walk length {len} must be even and positive")));
    }
    let m = len / 2;
    let mut total = BigInt::zero();
    let mut on_path = vec![false; g.n()];
    for u in 0..g.n() {
        let mut nodes = 1;
        on_path[u] = true;
        let f = excursions(g, u, &mut on_path, m, &mut nodes, PATH_TREE_CAP)?;
        on_path[u] = false;
        total += &f[m];
    }
    Ok(total)
}

/// Per-vertex power sums `a_k = (1/n) Σ γ_i^k` for `k = 1..=K`.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSums {
    values: Vec<BigRational>,
}

impl PowerSums {
    pub fn new(values: Vec<BigRational>) -> Self {
        PowerSums { values }
    }

    /// `a_k`, 1-based.
    pub fn a(&self, k: usize) -> &BigRational {
        &self.values[k - 1]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    /// `2a_1, ..., 2a_K`.
    pub fn doubled(&self) -> Vec<BigRational> {
        self.values.iter().map(|v| v * BigInt::from(2)).collect()
    }
}

/// Newton's identities on `M(λ) = Π (1 + γ_i λ)`, whose coefficients are the
/// elementary symmetric functions of the `γ_i`. Returns the raw power sums
/// `p_k = Σ γ_i^k`.
pub fn newton_power_sums(p: &IntPoly, k_max: usize) -> Vec<BigInt> {
    let e = |k: usize| p.coeff(k);
    let mut ps: Vec<BigInt> = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let mut acc = BigInt::zero();
        for i in 1..k {
            let term = e(i) * &ps[k - i - 1];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        let last = e(k) * BigInt::from(k);
        if k % 2 == 1 {
            acc += last;
        } else {
            acc -= last;
        }
        ps.push(acc);
    }
    ps
}

pub fn power_sums_newton(p: &IntPoly, n: usize, k_max: usize) -> PowerSums {
    let n = BigInt::from(n);
    PowerSums::new(
        newton_power_sums(p, k_max)
            .into_iter()
            .map(|s| BigRational::new(s, n.clone()))
            .collect(),
    )
}

/// `2a_k(𝕋_d)`: closed walks of length `2k` from the root of the infinite
/// d-regular tree, by dynamic programming over the depth.
pub fn infinite_tree_doubled(d: usize, k_max: usize) -> Vec<BigInt> {
    let depth = k_max + 1;
    let mut cur = vec![BigInt::zero(); depth + 1];
    cur[0] = BigInt::one();
    let mut out = Vec::with_capacity(k_max);
    let (d_big, down) = (BigInt::from(d), BigInt::from(d.saturating_sub(1)));
    for step in 1..=2 * k_max {
        let mut next = vec![BigInt::zero(); depth + 1];
        for h in 0..depth {
            if cur[h].is_zero() {
                continue;
            }
            let c = cur[h].clone();
            if h == 0 {
                next[1] += &c * &d_big;
            } else {
                next[h - 1] += &c;
                next[h + 1] += &c * &down;
            }
        }
        cur = next;
        if step % 2 == 0 {
            out.push(cur[0].clone());
        }
    }
    out
}

pub fn infinite_tree_power_sums(d: usize, k_max: usize) -> PowerSums {
    let half = BigInt::from(2);
    PowerSums::new(
        infinite_tree_doubled(d, k_max)
            .into_iter()
            .map(|s| BigRational::new(s, half.clone()))
            .collect(),
    )
}

/// `a_1..a_5` of a d-regular graph predicted from its subgraph densities,
/// `a_k(𝕋_d)` minus the cycle and diamond corrections.
pub fn density_prediction(g: &Graph, d: usize) -> Vec<BigRational> {
    let c = count_subgraphs(g);
    let t = infinite_tree_power_sums(d, 5);
    let int = |v: i64| BigRational::from_integer(BigInt::from(v));
    let dm1 = int(d as i64 - 1);
    let (r3, r4, r5, rd) = (c.rho3(), c.rho4(), c.rho5(), c.rho_diamond());
    vec![
        t.a(1).clone(),
        t.a(2).clone(),
        t.a(3) - int(3) * &r3,
        t.a(4) - int(24) * &dm1 * &r3 - int(4) * &r4,
        t.a(5) - int(135) * &dm1 * &dm1 * &r3 - int(40) * &dm1 * &r4 - int(5) * &r5 + int(20) * &rd,
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::cover::diamond_necklace;
    use crate::matchpoly::{matching_gen_poly, matching_poly_mu};

    fn ints(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
    }

    fn doubled(g: &Graph, k: usize) -> Vec<BigRational> {
        power_sums_newton(&matching_gen_poly(g), g.n(), k).doubled()
    }

    #[test]
    fn path_tree_sizes() {
        assert_eq!(build_path_tree(&Graph::complete(3), 0).unwrap().len(), 5);
        assert_eq!(build_path_tree(&Graph::complete(2), 1).unwrap().len(), 2);
        let t = build_path_tree(&Graph::complete(4), 2).unwrap();
        assert_eq!(t.len(), 16);
        let leaves = (0..t.len()).filter(|&v| t.children(v).is_empty()).count();
        assert_eq!(leaves, 6);
        assert_eq!(t.path(15).len(), 4);
        assert!(matches!(
            build_path_tree_capped(&Graph::complete(6), 0, 50),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn walk_totals() {
        assert_eq!(tree_like_walk_total(&Graph::complete(4), 2).unwrap(), BigInt::from(12));
        assert_eq!(tree_like_walk_total(&Graph::complete(4), 6).unwrap(), BigInt::from(324));
        assert!(tree_like_walk_total(&Graph::complete(4), 3).is_err());
        // explicit tree walk agrees with the series recursion
        let g = Graph::petersen();
        let direct: BigInt = (0..g.n())
            .map(|u| build_path_tree(&g, u).unwrap().closed_walks(8))
            .sum();
        assert_eq!(direct, tree_like_walk_total(&g, 8).unwrap());
    }

    #[test]
    fn cycle_four_against_root_power_sums() {
        // μ(C_4, x) = x^4 − 4x^2 + 2; Σ α^4 = 2 Σ γ^2 over the roots of y² − 4y + 2
        assert_eq!(matching_poly_mu(&Graph::cycle(4)), IntPoly::from_i64s(&[2, 0, -4, 0, 1]));
        let p = newton_power_sums(&matching_gen_poly(&Graph::cycle(4)), 2);
        assert_eq!(p[1], BigInt::from(12));
        assert_eq!(tree_like_walk_total(&Graph::cycle(4), 4).unwrap(), BigInt::from(2) * &p[1]);
    }

    #[test]
    fn reference_power_sums() {
        assert_eq!(doubled(&Graph::complete(4), 4), ints(&[3, 15, 81, 441]));
        assert_eq!(doubled(&diamond_necklace(2), 10)[9], BigRational::from_integer(28422175.into()));
        let half = BigRational::new(1.into(), 2.into());
        assert!(power_sums_newton(&IntPoly::from_i64s(&[1, 1]), 2, 6).values().iter().all(|v| *v == half));
    }

    #[test]
    fn tree_values() {
        let t = infinite_tree_doubled(3, 10);
        assert_eq!(&t[..5], &[3, 15, 87, 543, 3543].map(BigInt::from));
        assert_eq!(t[9], BigInt::from(57959535));
        for d in 2..8 {
            assert_eq!(infinite_tree_doubled(d, 1)[0], BigInt::from(d));
        }
    }

    #[test]
    fn density_anchor() {
        let k4 = Graph::complete(4);
        let pred = density_prediction(&k4, 3);
        assert_eq!(&pred[4] * BigInt::from(2), BigRational::from_integer(2403.into()));
        assert_eq!(pred, power_sums_newton(&matching_gen_poly(&k4), 4, 5).values());
    }
}
