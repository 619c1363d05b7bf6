//! Matching generating polynomials `M_G(λ) = Σ m_k λ^k` and the matching
//! polynomial `μ(G, x)`.

use std::collections::HashMap;
use std::sync::OnceLock;

use dashmap::DashMap;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{canonical_form, CanonicalForm, Graph};
use crate::numeric::sturm::{count_real_roots, is_real_rooted, Point};
use crate::numeric::{IntPoly, Interval};

fn memo() -> &'static DashMap<CanonicalForm, IntPoly> {
    static MEMO: OnceLock<DashMap<CanonicalForm, IntPoly>> = OnceLock::new();
    MEMO.get_or_init(DashMap::new)
}

/// `M_G(λ)`, as a product over connected components.
pub fn matching_gen_poly(g: &Graph) -> IntPoly {
    let mut out = IntPoly::one();
    for comp in g.components() {
        if comp.len() == 1 {
            continue;
        }
        let h = g.induced(&comp);
        out = &out * &component_poly(&h);
    }
    out
}

fn component_poly(h: &Graph) -> IntPoly {
    if h.n() == 2 {
        return IntPoly::from_i64s(&[1, 1]);
    }
    let key = canonical_form(h);
    if let Some(p) = memo().get(&key) {
        return p.clone();
    }
    let p = match h.bitmasks() {
        Some(adj) => {
            let full = if h.n() == 64 { u64::MAX } else { (1u64 << h.n()) - 1 };
            BitRecursion { adj: &adj, memo: HashMap::new() }.poly(full)
        }
        None => {
            let u = (0..h.n()).max_by_key(|&v| (h.degree_of(v), std::cmp::Reverse(v))).unwrap();
            let mut p = matching_gen_poly(&h.remove_vertices(&[u]));
            let mut tail = IntPoly::zero();
            for &v in h.neighbors(u) {
                tail += &matching_gen_poly(&h.remove_vertices(&[u, v]));
            }
            p += &tail.shift(1);
            p
        }
    };
    memo().entry(key).or_insert(p).clone()
}

/// Vertex-deletion recursion on induced subgraphs given as vertex bitmasks.
struct BitRecursion<'a> {
    adj: &'a [u64],
    memo: HashMap<u64, IntPoly>,
}

impl BitRecursion<'_> {
    fn component_of(&self, set: u64) -> u64 {
        let start = set & set.wrapping_neg();
        let mut comp = start;
        let mut frontier = start;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = self.adj[v] & set & !comp;
            comp |= new;
            frontier |= new;
        }
        comp
    }

    fn poly(&mut self, set: u64) -> IntPoly {
        if set.count_ones() < 2 {
            return IntPoly::one();
        }
        if let Some(p) = self.memo.get(&set) {
            return p.clone();
        }
        let comp = self.component_of(set);
        let p = if comp != set {
            let a = self.poly(comp);
            let b = self.poly(set & !comp);
            &a * &b
        } else {
            let mut best = (0, 0);
            let mut rest = set;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let d = (self.adj[v] & set).count_ones();
                if d > best.0 {
                    best = (d, v);
                }
            }
            let u = best.1;
            let without_u = set & !(1 << u);
            let mut p = self.poly(without_u);
            let mut tail = IntPoly::zero();
            let mut nb = self.adj[u] & set;
            while nb != 0 {
                let v = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                tail += &self.poly(without_u & !(1 << v));
            }
            p += &tail.shift(1);
            p
        };
        self.memo.insert(set, p.clone());
        p
    }
}

/// `μ(G, x) = Σ (−1)^k m_k x^{n−2k}`.
pub fn matching_poly_mu(g: &Graph) -> IntPoly {
    let m = matching_gen_poly(g);
    let n = g.n();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    for (k, c) in m.coeffs().iter().enumerate() {
        coeffs[n - 2 * k] = if k % 2 == 0 { c.clone() } else { -c };
    }
    IntPoly::new(coeffs)
}

/// `R(y) = Σ (−1)^k m_k y^{ν−k}`, so that `μ(G, x) = x^{n−2ν} R(x²)`.
/// Its roots are the `γ_i`.
pub fn gamma_poly(g: &Graph) -> IntPoly {
    let m = matching_gen_poly(g);
    let nu = m.degree().unwrap_or(0);
    let coeffs = (0..=nu)
        .map(|j| {
            let k = nu - j;
            let c = m.coeff(k);
            if k % 2 == 0 { c } else { -c }
        })
        .collect();
    IntPoly::new(coeffs)
}

/// `q_n = M(K_n, λ)` via `q_n = q_{n−1} + (n−1) λ q_{n−2}`.
pub fn q_complete(n: usize) -> IntPoly {
    q_complete_table(n).pop().unwrap()
}

/// `[q_0, q_1, ..., q_n]`.
pub fn q_complete_table(n: usize) -> Vec<IntPoly> {
    let mut qs = vec![IntPoly::one(), IntPoly::one()];
    for m in 2..=n {
        let next = &qs[m - 1] + &qs[m - 2].scale(&BigInt::from(m - 1)).shift(1);
        qs.push(next);
    }
    qs.truncate(n + 1);
    qs
}

/// Exact value `M_G(λ)`.
pub fn eval_at(g: &Graph, lambda: &BigRational) -> BigRational {
    matching_gen_poly(g).eval_rational(lambda)
}

/// Certified enclosure of `(1/n) ln M_G(λ)`; the radius is below
/// `2^-(precision - 4)`.
pub fn log_per_vertex(g: &Graph, lambda: &BigRational, precision: u32) -> Result<Interval> {
    if g.n() == 0 {
        return Err(Error::Precondition("log per vertex of the empty graph".into()));
    }
    let value = eval_at(g, lambda);
    log_per_vertex_of_value(&value, g.n(), precision)
}

/// `(1/n) ln value` for a known exact value of `M`.
pub fn log_per_vertex_of_value(value: &BigRational, n: usize, precision: u32) -> Result<Interval> {
    if !value.is_positive() {
        return Err(Error::Domain(format!("M(λ) = {value} is not positive")));
    }
    let work = precision + 8;
    Ok(Interval::from_rational(value, work).ln().div_int(n as i64))
}

/// Every zero of `μ(G, x)` is real (Sturm count with multiplicity).
pub fn mu_is_real_rooted(g: &Graph) -> bool {
    is_real_rooted(&matching_poly_mu(g))
}

/// All zeros of `μ(G, x)` lie strictly inside `(−2√(Δ−1), 2√(Δ−1))`.
/// Checked on `R(y)` with `y = x²`: every root of `R` is below `4(Δ−1)`.
/// Requires `Δ ≥ 2`.
pub fn mu_roots_within_bound(g: &Graph) -> Result<bool> {
    let delta = g.max_degree();
    if delta < 2 {
        return Err(Error::Precondition("root bound needs maximum degree at least 2".into()));
    }
    let r = gamma_poly(g);
    let bound = BigRational::from_integer(BigInt::from(4 * (delta - 1)));
    if r.eval_rational(&bound).is_zero() {
        return Ok(false);
    }
    let deg = r.degree().unwrap_or(0);
    // roots of R are nonnegative when μ is real-rooted; count below the bound
    let below = count_real_roots(&r, &Point::NegInf, &Point::At(bound));
    Ok(below == deg)
}

/// True when `M_G(λ)^{n_H} = M_H(λ)^{n_G}`, i.e. the per-vertex logarithms
/// coincide exactly.
pub fn per_vertex_tie(mg: &BigRational, ng: usize, mh: &BigRational, nh: usize) -> bool {
    num_traits::pow(mg.clone(), nh) == num_traits::pow(mh.clone(), ng)
}
