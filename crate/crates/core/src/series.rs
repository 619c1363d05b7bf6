//! Truncated Taylor series of the per-vertex free energy, certified
//! comparisons against `K_{d+1}` and the infinite tree, and the small-λ
//! certificate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{count_subgraphs, Graph};
use crate::matchpoly::{eval_at, log_per_vertex_of_value, matching_gen_poly, per_vertex_tie, q_complete};
use crate::numeric::Interval;
use crate::walks::{infinite_tree_power_sums, power_sums_newton, PowerSums};

/// Highest working precision tried before giving up on a comparison.
pub const MAX_PRECISION: u32 = 1024;

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// `Σ_{k=1}^{t} a_k (−1)^{k−1} λ^k / k`, exactly.
pub fn truncated_log_series(a: &PowerSums, lambda: &BigRational, t: usize) -> Result<BigRational> {
    if t > a.len() {
        return Err(Error::Precondition(format!("truncation {t} exceeds the {} known power sums", a.len())));
    }
    let mut sum = BigRational::zero();
    let mut pow = BigRational::one();
    for k in 1..=t {
        pow *= lambda;
        let term = a.a(k) * &pow / int(k as i64);
        if k % 2 == 1 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Ok(sum)
}

/// Bound `(4(d−1)λ)^t / t` on the omitted tail.
#[derive(Clone, Debug, PartialEq)]
pub struct TailBound {
    pub d: usize,
    pub lambda: BigRational,
    pub t: usize,
    pub value: BigRational,
}

pub fn tail_bound(d: usize, lambda: &BigRational, t: usize) -> Result<TailBound> {
    if lambda.is_negative() {
        return Err(Error::Domain("tail bound is stated for λ ≥ 0".into()));
    }
    if t == 0 {
        return Err(Error::Precondition("truncation index must be positive".into()));
    }
    let x = int(4 * (d as i64 - 1)) * lambda;
    if x >= BigRational::one() {
        return Err(Error::Domain(format!("4(d−1)λ = {x} is not below 1")));
    }
    Ok(TailBound {
        d,
        lambda: lambda.clone(),
        t,
        value: num_traits::pow(x, t) / int(t as i64),
    })
}

/// Triangle and four-cycle density deficits against `K_{d+1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct DeficitPair {
    pub delta3: BigRational,
    pub delta4: BigRational,
    /// `Σ_v t_v` with `t_v = C(d,2) − e(N(v))`.
    pub sum_t: u64,
}

pub fn deficits(g: &Graph, d: usize) -> Result<DeficitPair> {
    g.require_regular(d)?;
    if g.n() == 0 {
        return Err(Error::Precondition("deficits of the empty graph".into()));
    }
    let c = count_subgraphs(g);
    let di = d as i64;
    let rho3_k = BigRational::new(BigInt::from(di * (di - 1)), BigInt::from(6));
    let rho4_k = BigRational::new(BigInt::from(di * (di - 1) * (di - 2)), BigInt::from(8));
    let pairs = (d * d.saturating_sub(1) / 2) as u64;
    let sum_t = (0..g.n())
        .map(|v| {
            let nb = g.neighbors(v);
            let inside = nb.iter().map(|&a| nb.iter().filter(|&&b| b > a && g.has_edge(a, b)).count()).sum::<usize>();
            pairs - inside as u64
        })
        .sum();
    Ok(DeficitPair {
        delta3: rho3_k - c.rho3(),
        delta4: rho4_k - c.rho4(),
        sum_t,
    })
}

/// `(1/6)(2λ³ − 15dλ⁴ − (4dλ)⁶)`.
pub fn main_certificate(d: usize, lambda: &BigRational) -> BigRational {
    let l = lambda;
    let l3 = l * l * l;
    let l4 = &l3 * l;
    let x6 = num_traits::pow(int(4 * d as i64) * l, 6);
    (int(2) * l3 - int(15 * d as i64) * l4 - x6) / int(6)
}

/// Lower bounds on `(1/n) ln M_G(λ) − (1/(d+1)) ln M_{K_{d+1}}(λ)`, one per
/// step of the small-λ argument, from the sharpest to the closed form.
#[derive(Clone, Debug, PartialEq)]
pub struct CertificateChain {
    /// `(a_3(G)−a_3(K))λ³/3 − (a_4(G)−a_4(K))λ⁴/4 − (4(d−1)λ)⁶/6`.
    pub from_power_sums: BigRational,
    /// Same bound written with the deficits.
    pub from_deficits: BigRational,
    /// After bounding `Δ₄` by `(3(d−2)/2)Δ₃`.
    pub after_four_cycle_bound: BigRational,
    /// After `Δ₃ ≥ 1/3`.
    pub after_triangle_bound: BigRational,
    /// `main_certificate(d, λ)`.
    pub closed_form: BigRational,
}

impl CertificateChain {
    pub fn steps(&self) -> [&BigRational; 5] {
        [
            &self.from_power_sums,
            &self.from_deficits,
            &self.after_four_cycle_bound,
            &self.after_triangle_bound,
            &self.closed_form,
        ]
    }

    /// Each step is at most the previous one.
    pub fn is_monotone(&self) -> bool {
        self.steps().windows(2).all(|w| w[1] <= w[0])
    }
}

pub fn certificate_chain(g: &Graph, d: usize, lambda: &BigRational) -> Result<CertificateChain> {
    let def = deficits(g, d)?;
    let l = lambda;
    let l3 = l * l * l;
    let l4 = &l3 * l;
    let tail = num_traits::pow(int(4 * (d as i64 - 1)) * l, 6) / int(6);

    let a_g = power_sums_newton(&matching_gen_poly(g), g.n(), 4);
    let a_k = power_sums_newton(&q_complete(d + 1), d + 1, 4);
    let from_power_sums =
        (a_g.a(3) - a_k.a(3)) * &l3 / int(3) - (a_g.a(4) - a_k.a(4)) * &l4 / int(4) - &tail;

    let bracket = &l3 - int(6 * (d as i64 - 1)) * &l4;
    let from_deficits = &def.delta3 * &bracket - &def.delta4 * &l4 - &tail;
    let four = BigRational::new(BigInt::from(3 * (d as i64 - 2)), BigInt::from(2));
    let reduced = &bracket - four * &l4;
    let after_four_cycle_bound = &def.delta3 * &reduced - &tail;
    let after_triangle_bound = &reduced / int(3) - &tail;
    Ok(CertificateChain {
        from_power_sums,
        from_deficits,
        after_four_cycle_bound,
        after_triangle_bound,
        closed_form: main_certificate(d, lambda),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    Holds,
    Fails,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "HOLDS",
            Verdict::Fails => "FAILS",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// Certified sign of `left − right`.
#[derive(Clone, Debug)]
pub struct Comparison {
    pub verdict: Verdict,
    /// Enclosure of `left − right`.
    pub margin: Interval,
    /// The two sides are equal as exact numbers.
    pub exact_tie: bool,
    /// Working precision at which the verdict was reached.
    pub precision: u32,
}

impl Comparison {
    fn tie(precision: u32) -> Self {
        Comparison {
            verdict: Verdict::Holds,
            margin: Interval::from_int(0, precision),
            exact_tie: true,
            precision,
        }
    }
}

/// Sign of `left(p) − right(p)`, doubling `p` from `precision` up to
/// [`MAX_PRECISION`] while the enclosure straddles zero.
fn certify(precision: u32, mut eval: impl FnMut(u32) -> Result<Interval>) -> Result<Comparison> {
    let mut p = precision.max(16);
    loop {
        let margin = eval(p)?;
        let verdict = if margin.is_positive() {
            Verdict::Holds
        } else if margin.is_negative() {
            Verdict::Fails
        } else {
            Verdict::Inconclusive
        };
        if verdict != Verdict::Inconclusive || p >= MAX_PRECISION {
            return Ok(Comparison {
                verdict,
                margin,
                exact_tie: false,
                precision: p,
            });
        }
        p = (2 * p).min(MAX_PRECISION);
    }
}

/// Compare `(1/n_g) ln m_g` with `(1/n_h) ln m_h` for exact positive values.
pub fn compare_per_vertex_logs(m_g: &BigRational, n_g: usize, m_h: &BigRational, n_h: usize, precision: u32) -> Result<Comparison> {
    if per_vertex_tie(m_g, n_g, m_h, n_h) {
        return Ok(Comparison::tie(precision));
    }
    certify(precision, |p| {
        Ok(log_per_vertex_of_value(m_g, n_g, p)?.sub(&log_per_vertex_of_value(m_h, n_h, p)?))
    })
}

/// Certified check of `(1/n) ln M_G(λ) ≥ (1/(d+1)) ln M_{K_{d+1}}(λ)`.
pub fn verify_inequality(g: &Graph, d: usize, lambda: &BigRational, precision: u32) -> Result<Comparison> {
    g.require_regular(d)?;
    if lambda.is_negative() {
        return Err(Error::Domain("verify_inequality needs λ ≥ 0".into()));
    }
    if g.n() == 0 {
        return Err(Error::Precondition("empty graph".into()));
    }
    let m_g = eval_at(g, lambda);
    let m_k = q_complete(d + 1).eval_rational(lambda);
    compare_per_vertex_logs(&m_g, g.n(), &m_k, d + 1, precision)
}

/// `η_λ = (√(1+4(d−1)λ) − 1) / (2(d−1)λ)` and `½ ln S_d(λ)` with
/// `S_d = η^{-2} ((d−1)/(d−η))^{d−2}`, the per-vertex free energy of the
/// infinite d-regular tree. Valid for `λ ≥ −1/(4(d−1))`.
pub fn tree_closed_form(d: usize, lambda: &BigRational, precision: u32) -> Result<Interval> {
    if d < 2 {
        return Err(Error::Precondition("tree closed form needs d ≥ 2".into()));
    }
    if lambda.is_zero() {
        return Ok(Interval::from_int(0, precision));
    }
    let dm1 = d as i64 - 1;
    let disc = int(1) + int(4 * dm1) * lambda;
    if disc.is_negative() {
        return Err(Error::Domain(format!("λ = {lambda} is below −1/(4(d−1))")));
    }
    let work = precision + 32;
    let s = Interval::from_rational(&disc, work).sqrt();
    let one = Interval::from_int(1, work);
    let denom = Interval::from_rational(&(int(2 * dm1) * lambda), work);
    let eta = s.sub(&one).div(&denom);
    let ratio = Interval::from_int(dm1, work).div(&Interval::from_int(d as i64, work).sub(&eta));
    let big_s = ratio.powi(d as u32 - 2).div(&eta.mul(&eta));
    Ok(big_s.ln().mul_pow2(-1).with_prec(precision))
}

/// Enclosure of the tree's per-vertex free energy at `λ < 0` from the
/// first `t − 1` series terms plus a geometric tail, using
/// `a_k(𝕋_d) ≤ (4(d−1))^k / 2`. Needs `4(d−1)|λ| < 1`.
pub fn tree_series_enclosure(d: usize, lambda: &BigRational, t: usize, precision: u32) -> Result<Interval> {
    if !lambda.is_negative() {
        return Err(Error::Domain("series enclosure is for λ < 0".into()));
    }
    let y = int(4 * (d as i64 - 1)) * lambda.abs();
    if y >= BigRational::one() {
        return Err(Error::Domain(format!("4(d−1)|λ| = {y} is not below 1")));
    }
    let a = infinite_tree_power_sums(d, t - 1);
    let partial = truncated_log_series(&a, lambda, t - 1)?;
    // all omitted terms are negative
    let tail = num_traits::pow(y.clone(), t) / (int(2 * t as i64) * (int(1) - y));
    let lo = Interval::from_rational(&(&partial - tail), precision + 8);
    let hi = Interval::from_rational(&partial, precision + 8);
    Ok(lo.join(&hi))
}

/// Both sides of `tree ≤ G ≤ K_{d+1}` at a non-positive λ.
#[derive(Clone, Debug)]
pub struct Sandwich {
    /// `(1/n) ln M_G − tree value`.
    pub lower: Comparison,
    /// `(1/(d+1)) ln M_{K_{d+1}} − (1/n) ln M_G`.
    pub upper: Comparison,
}

impl Sandwich {
    pub fn holds(&self) -> bool {
        self.lower.verdict == Verdict::Holds && self.upper.verdict == Verdict::Holds
    }
}

pub fn negative_lambda_sandwich(g: &Graph, d: usize, lambda: &BigRational, precision: u32) -> Result<Sandwich> {
    g.require_regular(d)?;
    let floor = -BigRational::new(BigInt::one(), BigInt::from(4 * (d as i64 - 1)));
    if lambda.is_positive() || *lambda < floor {
        return Err(Error::Domain(format!("λ = {lambda} is outside [−1/(4(d−1)), 0]")));
    }
    if lambda.is_zero() {
        return Ok(Sandwich {
            lower: Comparison::tie(precision),
            upper: Comparison::tie(precision),
        });
    }
    let m_g = eval_at(g, lambda);
    let m_k = q_complete(d + 1).eval_rational(lambda);
    for (name, v) in [("G", &m_g), ("K_{d+1}", &m_k)] {
        if !v.is_positive() {
            return Err(Error::Domain(format!("M_{name}(λ) = {v} is not positive")));
        }
    }
    let upper = compare_per_vertex_logs(&m_k, d + 1, &m_g, g.n(), precision)?;
    let lower = certify(precision, |p| {
        Ok(log_per_vertex_of_value(&m_g, g.n(), p)?.sub(&tree_closed_form(d, lambda, p)?))
    })?;
    Ok(Sandwich { lower, upper })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::cover::diamond_necklace;
    use crate::matchpoly::log_per_vertex;
    use crate::walks::power_sums_newton;

    fn r(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn series_basics() {
        let k4 = Graph::complete(4);
        let a = power_sums_newton(&matching_gen_poly(&k4), 4, 6);
        assert_eq!(truncated_log_series(&a, &BigRational::zero(), 5).unwrap(), BigRational::zero());
        let lam = r(1, 100);
        let s = truncated_log_series(&a, &lam, 5).unwrap();
        let exact = log_per_vertex(&k4, &lam, 128).unwrap();
        let bound = tail_bound(3, &lam, 6).unwrap().value;
        let diff = exact.sub(&Interval::from_rational(&s, 128));
        assert!(diff.hi().to_rational() <= bound && -diff.lo().to_rational() <= bound);
        assert!(truncated_log_series(&a, &lam, 7).is_err());
    }

    #[test]
    fn tail_bounds() {
        assert_eq!(tail_bound(3, &r(1, 16), 6).unwrap().value, r(1, 384));
        assert!(matches!(tail_bound(3, &r(1, 8), 6), Err(Error::Domain(_))));
        assert_eq!(tail_bound(5, &BigRational::zero(), 6).unwrap().value, BigRational::zero());
    }

    #[test]
    fn deficit_examples() {
        let k4 = deficits(&Graph::complete(4), 3).unwrap();
        assert_eq!((k4.delta3.clone(), k4.delta4.clone()), (BigRational::zero(), BigRational::zero()));
        let k33 = deficits(&Graph::complete_bipartite(3, 3), 3).unwrap();
        assert_eq!(k33.delta3, int(1));
        assert_eq!(k33.delta4, r(-3, 4));
        let prism = deficits(&Graph::prism(), 3).unwrap();
        assert_eq!(prism.delta3, r(2, 3));
        assert!(prism.delta4 <= r(3, 2) * &prism.delta3);
        assert_eq!(prism.delta3, r(prism.sum_t as i64, 3 * 6));
        assert!(deficits(&Graph::path(4), 3).is_err());
    }

    #[test]
    fn certificate_values() {
        assert!(main_certificate(3, &r(1, 145)).is_positive());
        // 1/100 is above (4d)^-2: evaluate and record the sign
        assert!(main_certificate(3, &r(1, 100)).is_negative());
        let tiny = r(1, 1_000_000);
        let ratio = main_certificate(4, &tiny) / (&tiny * &tiny * &tiny / int(3));
        assert!((ratio - int(1)).abs() < r(1, 1000));
    }

    #[test]
    fn chain_is_monotone_and_exact() {
        for g in [Graph::prism(), Graph::complete_bipartite(3, 3), Graph::petersen()] {
            let lam = r(1, 200);
            let c = certificate_chain(&g, 3, &lam).unwrap();
            assert_eq!(c.from_power_sums, c.from_deficits);
            assert!(c.is_monotone(), "{c:?}");
            let truth = verify_inequality(&g, 3, &lam, 128).unwrap();
            assert!(truth.margin.lo().to_rational() >= c.from_power_sums);
        }
    }

    #[test]
    fn comparisons() {
        let v = verify_inequality(&Graph::complete_bipartite(3, 3), 3, &r(1, 20), 64).unwrap();
        assert_eq!(v.verdict, Verdict::Holds);
        assert!(v.margin.is_positive());
        for lam in [r(1, 3), int(1), int(7)] {
            let v = verify_inequality(&Graph::complete(4), 3, &lam, 64).unwrap();
            assert!(v.exact_tie);
        }
        let v = verify_inequality(&diamond_necklace(2), 3, &int(1), 64).unwrap();
        assert!(v.exact_tie && v.verdict == Verdict::Holds);
        // above c_3 = 1 the necklace beats K_4 ... from below
        let v = verify_inequality(&diamond_necklace(2), 3, &int(2), 64).unwrap();
        assert_eq!(v.verdict, Verdict::Fails);
    }

    #[test]
    fn tree_forms() {
        let v = tree_closed_form(3, &r(-1, 8), 128).unwrap();
        assert!((v.to_f64() - 0.5f64.ln() / 2.0).abs() < 1e-15);
        assert!(tree_closed_form(3, &BigRational::zero(), 64).unwrap().contains(&BigRational::zero()));
        // d = 2 is the infinite path: ln((1 + √(1+4λ))/2)
        let d2 = tree_closed_form(2, &int(2), 64).unwrap();
        assert!((d2.to_f64() - 2f64.ln()).abs() < 1e-15);
        assert!(d2.is_positive());
        let d3 = tree_closed_form(3, &int(2), 64).unwrap();
        let eta = (17f64.sqrt() - 1.0) / 8.0;
        let s = (2.0 / (3.0 - eta)) / (eta * eta);
        assert!((d3.to_f64() - s.ln() / 2.0).abs() < 1e-14);
        // series cross-checks on both sides of zero
        let lam = r(1, 100);
        let a = infinite_tree_power_sums(3, 6);
        let s = truncated_log_series(&a, &lam, 5).unwrap();
        let bound = tail_bound(3, &lam, 6).unwrap().value;
        let c = tree_closed_form(3, &lam, 128).unwrap();
        assert!((c.mid().to_rational() - s).abs() <= bound);
        let neg = r(-1, 32);
        let series = tree_series_enclosure(3, &neg, 40, 128).unwrap();
        let closed = tree_closed_form(3, &neg, 128).unwrap();
        assert!(series.lo() <= closed.lo() && closed.hi() <= series.hi());
    }

    #[test]
    fn sandwich() {
        let s = negative_lambda_sandwich(&Graph::complete_bipartite(3, 3), 3, &r(-1, 8), 128).unwrap();
        assert!(s.holds());
        let s = negative_lambda_sandwich(&Graph::complete(4), 3, &r(-1, 8), 128).unwrap();
        assert!(s.upper.exact_tie);
        let s = negative_lambda_sandwich(&Graph::petersen(), 3, &BigRational::zero(), 64).unwrap();
        assert!(s.lower.exact_tie && s.upper.exact_tie);
        assert!(negative_lambda_sandwich(&Graph::petersen(), 3, &r(-1, 7), 64).is_err());
    }
}
