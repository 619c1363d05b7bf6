//! Transfer matrices of necklace covers, the discriminant `d(G_uv)`, the
//! polynomials `P_d` and `Q_d`, and certified critical constants `c_d`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matchpoly::{matching_gen_poly, q_complete_table};
use crate::numeric::sturm::{count_real_roots, Point};
use crate::numeric::IntPoly;

/// `B = [[M(G−e), M(G−u)], [λM(G−v), λM(G−{u,v})]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct TransferMatrix {
    pub entries: [[IntPoly; 2]; 2],
}

impl TransferMatrix {
    pub fn trace(&self) -> IntPoly {
        &self.entries[0][0] + &self.entries[1][1]
    }

    pub fn det(&self) -> IntPoly {
        let e = &self.entries;
        &(&e[0][0] * &e[1][1]) - &(&e[0][1] * &e[1][0])
    }

    fn mul(&self, other: &TransferMatrix) -> TransferMatrix {
        let (a, b) = (&self.entries, &other.entries);
        let cell = |i: usize, j: usize| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
        TransferMatrix {
            entries: [[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]],
        }
    }

    fn identity() -> TransferMatrix {
        TransferMatrix {
            entries: [[IntPoly::one(), IntPoly::zero()], [IntPoly::zero(), IntPoly::one()]],
        }
    }

    pub fn pow(&self, mut k: usize) -> TransferMatrix {
        let mut base = self.clone();
        let mut acc = TransferMatrix::identity();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

pub fn transfer_matrix(g: &Graph, u: usize, v: usize) -> Result<TransferMatrix> {
    let without_edge = g.remove_edge(u, v)?;
    let lambda = |p: IntPoly| p.shift(1);
    Ok(TransferMatrix {
        entries: [
            [matching_gen_poly(&without_edge), matching_gen_poly(&g.remove_vertices(&[u]))],
            [
                lambda(matching_gen_poly(&g.remove_vertices(&[v]))),
                lambda(matching_gen_poly(&g.remove_vertices(&[u, v]))),
            ],
        ],
    })
}

/// `M` of the necklace k-cover as `trace(B^k)`.
pub fn necklace_partition_via_trace(tm: &TransferMatrix, k: usize) -> Result<IntPoly> {
    if k < 2 {
        return Err(Error::Precondition("necklace fold must be at least 2".into()));
    }
    Ok(tm.pow(k).trace())
}

/// `d(G_uv) = M(G−e)M(G−{u,v}) − M(G−u)M(G−v)`; `det(B) = λ·d(G_uv)`.
pub fn discriminant(g: &Graph, u: usize, v: usize) -> Result<IntPoly> {
    let without_edge = g.remove_edge(u, v)?;
    let m = |h: &Graph| matching_gen_poly(h);
    Ok(&(&m(&without_edge) * &m(&g.remove_vertices(&[u, v])))
        - &(&m(&g.remove_vertices(&[u])) * &m(&g.remove_vertices(&[v]))))
}

/// Order of `M(necklace_k)` against `M(G)^k` at `λ ≥ 0`, read off the sign
/// of the discriminant.
pub fn predicted_order(g: &Graph, u: usize, v: usize, lambda: &BigRational) -> Result<Ordering> {
    if lambda.is_negative() {
        return Err(Error::Domain("λ must be nonnegative".into()));
    }
    let d = discriminant(g, u, v)?.eval_rational(lambda);
    Ok(BigRational::zero().cmp(&d))
}

fn q_table(d: usize) -> Vec<IntPoly> {
    q_complete_table(d.max(1))
}

/// `P_d = M(K_{d+1}−e)·q_{d−1} − q_d²` with `M(K_{d+1}−e) = q_d + (d−1)λq_{d−1}`.
pub fn pd_direct(d: usize) -> Result<IntPoly> {
    if d < 2 {
        return Err(Error::Precondition("P_d needs d ≥ 2".into()));
    }
    let q = q_table(d);
    let minus_edge = &q[d] + &q[d - 1].scale(&BigInt::from(d - 1)).shift(1);
    Ok(&(&minus_edge * &q[d - 1]) - &(&q[d] * &q[d]))
}

/// `Q_d = q_d q_{d−2} − q_{d−1}²`.
pub fn qd_direct(d: usize) -> Result<IntPoly> {
    if d < 2 {
        return Err(Error::Precondition("Q_d needs d ≥ 2".into()));
    }
    let q = q_table(d);
    Ok(&(&q[d] * &q[d - 2]) - &(&q[d - 1] * &q[d - 1]))
}

/// Which of the two recursions for `Q_d` to unfold.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QRecursion {
    /// `λq_{d−2}(q_{d−3} − λq_{d−4}) + (d−2)²λ²Q_{d−2}`
    First,
    /// `λq_{d−3}(q_{d−2} − λq_{d−3}) + (d−1)(d−3)λ²Q_{d−2}`
    Second,
}

/// `Q_d` by recursion from the direct values at `d = 3, 4`.
pub fn qd_recursive(d: usize, form: QRecursion) -> Result<IntPoly> {
    if d < 3 {
        return Err(Error::Precondition("the Q_d recursion starts at d = 3".into()));
    }
    if d <= 4 {
        return qd_direct(d);
    }
    let q = q_table(d);
    let mut prev = qd_direct(if d % 2 == 1 { 3 } else { 4 })?;
    let mut m = if d % 2 == 1 { 5 } else { 6 };
    while m <= d {
        let head = match form {
            QRecursion::First => &q[m - 2] * &(&q[m - 3] - &q[m - 4].shift(1)),
            QRecursion::Second => &q[m - 3] * &(&q[m - 2] - &q[m - 3].shift(1)),
        };
        let factor = match form {
            QRecursion::First => BigInt::from((m - 2) * (m - 2)),
            QRecursion::Second => BigInt::from((m - 1) * (m - 3)),
        };
        prev = &head.shift(1) + &prev.scale(&factor).shift(2);
        m += 2;
    }
    Ok(prev)
}

/// `(d−2)!! = (d−2)(d−4)⋯3·1` for odd `d`.
fn double_factorial(n: usize) -> BigInt {
    (1..=n).rev().step_by(2).map(BigInt::from).product()
}

/// Top three coefficients of `Q_d` for odd `d ≥ 5` against their closed forms.
#[derive(Clone, Debug)]
pub struct CoefficientReport {
    pub d: usize,
    pub top: (BigInt, BigInt),
    pub next: (BigInt, BigInt),
    pub third: (BigRational, BigRational),
    /// Signs of all other coefficients are positive.
    pub lower_positive: bool,
}

impl CoefficientReport {
    pub fn holds(&self) -> bool {
        self.top.0 == self.top.1 && self.next.0 == self.next.1 && self.third.0 == self.third.1 && self.lower_positive
    }
}

pub fn qd_coefficient_checks(d: usize) -> Result<CoefficientReport> {
    if d < 5 || d % 2 == 0 {
        return Err(Error::Precondition("coefficient checks need odd d ≥ 5".into()));
    }
    let qd = qd_recursive(d, QRecursion::First)?;
    let sq = {
        let f = double_factorial(d - 2);
        &f * &f
    };
    let third_expected = BigRational::new(BigInt::from(d - 3), BigInt::from(6)) * BigRational::from_integer(sq.clone());
    let lower_positive = (1..d - 1).all(|k| qd.coeff(k).is_positive()) && qd.coeff(0).is_zero();
    Ok(CoefficientReport {
        d,
        top: (qd.coeff(d - 1), -sq.clone()),
        next: (qd.coeff(d - 2), sq),
        third: (BigRational::from_integer(qd.coeff(d - 3)), third_expected),
        lower_positive,
    })
}

/// Bracket `[lo, hi]` of the unique positive root of `Q_d` with
/// `Q_d(lo) > 0 > Q_d(hi)`.
#[derive(Clone, Debug)]
pub struct CriticalConstant {
    pub d: usize,
    pub lo: BigRational,
    pub hi: BigRational,
    /// Set when bisection landed on the root exactly.
    pub exact: Option<BigRational>,
}

impl CriticalConstant {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint_f64(&self) -> f64 {
        let mid = (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2));
        rational_to_f64(&mid)
    }

    /// Re-evaluates the sign certificate.
    pub fn certified(&self) -> bool {
        let qd = match qd_recursive(self.d, QRecursion::First) {
            Ok(q) => q,
            Err(_) => return false,
        };
        qd.eval_rational(&self.lo).is_positive() && qd.eval_rational(&self.hi).is_negative()
    }
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// `c_d` to within `width` by exact bisection on `Q_d`.
pub fn critical_constant(d: usize, width: &BigRational) -> Result<CriticalConstant> {
    if d < 3 || d % 2 == 0 {
        return Err(Error::Precondition("c_d is defined for odd d ≥ 3".into()));
    }
    if !width.is_positive() {
        return Err(Error::Precondition("bracket width must be positive".into()));
    }
    let qd = qd_recursive(d, QRecursion::First)?;
    let positive_roots = count_real_roots(&qd, &Point::int(0), &Point::PosInf);
    if positive_roots != 1 {
        return Err(Error::Precondition(format!("Q_{d} has {positive_roots} positive roots")));
    }
    // Q_d = λ·R with R(0) > 0
    let r = IntPoly::new(qd.coeffs()[1..].to_vec());
    let sign = |x: &BigRational| r.eval_rational(x).signum();
    let two = BigRational::from_integer(BigInt::from(2));
    let mut lo = BigRational::zero();
    let mut hi = BigRational::from_integer(BigInt::from(d.next_power_of_two()));
    while sign(&hi).is_positive() {
        hi = &hi * &two;
    }
    while &(&hi - &lo) > width {
        let mid = (&lo + &hi) / &two;
        let s = sign(&mid);
        if s.is_zero() {
            let quarter = width / BigRational::from_integer(BigInt::from(4));
            return Ok(CriticalConstant {
                d,
                lo: &mid - &quarter,
                hi: &mid + &quarter,
                exact: Some(mid),
            });
        }
        if s.is_positive() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(CriticalConstant { d, lo, hi, exact: None })
}

/// `c_d` for the odd `d` in `3..=dmax`, computed in parallel.
pub fn critical_constants(dmax: usize, width: &BigRational) -> Result<Vec<CriticalConstant>> {
    (3..=dmax).step_by(2).collect::<Vec<_>>().into_par_iter().map(|d| critical_constant(d, width)).collect()
}

/// `10^{-10}`.
pub fn default_width() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10u64).pow(10))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{diamond_necklace, necklace, Graph};

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn matrices() {
        let k4 = transfer_matrix(&Graph::complete(4), 0, 1).unwrap();
        assert_eq!(k4.entries[0][0], p(&[1, 5, 2]));
        assert_eq!(k4.entries[0][1], p(&[1, 3]));
        assert_eq!(k4.entries[1][0], p(&[0, 1, 3]));
        assert_eq!(k4.entries[1][1], p(&[0, 1, 1]));
        let k2 = transfer_matrix(&Graph::complete(2), 0, 1).unwrap();
        assert_eq!(k2.entries, [[p(&[1]), p(&[1])], [p(&[0, 1]), p(&[0, 1])]]);
        let c3 = transfer_matrix(&Graph::cycle(3), 0, 1).unwrap();
        assert_eq!(c3.entries, [[p(&[1, 2]), p(&[1, 1])], [p(&[0, 1, 1]), p(&[0, 1])]]);
        assert!(matches!(transfer_matrix(&Graph::cycle(4), 0, 2), Err(Error::NotAnEdge(0, 2))));
    }

    #[test]
    fn discriminants() {
        let k4 = discriminant(&Graph::complete(4), 0, 1).unwrap();
        assert_eq!(k4, p(&[0, 0, -2, 2]));
        assert_eq!(transfer_matrix(&Graph::complete(4), 0, 1).unwrap().det(), p(&[0, 0, 0, -2, 2]));
        assert!(discriminant(&Graph::complete(2), 0, 1).unwrap().is_zero());
        assert_eq!(transfer_matrix(&Graph::cycle(3), 0, 1).unwrap().det(), p(&[0, 0, 0, -1]));
        assert_eq!(discriminant(&Graph::cycle(3), 0, 1).unwrap(), p(&[0, 0, -1]));
    }

    #[test]
    fn trace_matches_cover() {
        let family = [
            Graph::complete(2),
            Graph::cycle(3),
            Graph::cycle(4),
            Graph::complete(4),
            Graph::complete(5),
            Graph::prism(),
        ];
        for g in &family {
            let (u, v) = g.edges().next().unwrap();
            let tm = transfer_matrix(g, u, v).unwrap();
            for k in 2..=4 {
                let direct = matching_gen_poly(&necklace(g, u, v, k).unwrap());
                assert_eq!(necklace_partition_via_trace(&tm, k).unwrap(), direct);
            }
            let t = tm.trace();
            assert_eq!(t, matching_gen_poly(g));
            let two = &tm.det().scale(&BigInt::from(2));
            assert_eq!(necklace_partition_via_trace(&tm, 2).unwrap(), &(&t * &t) - two);
        }
        let k2 = transfer_matrix(&Graph::complete(2), 0, 1).unwrap();
        assert_eq!(necklace_partition_via_trace(&k2, 3).unwrap(), p(&[1, 3, 3, 1]));
        assert!(necklace_partition_via_trace(&k2, 1).is_err());
    }

    #[test]
    fn trichotomy() {
        let family = [Graph::complete(2), Graph::cycle(3), Graph::cycle(4), Graph::complete(4), Graph::complete(5), Graph::prism()];
        let lambdas = [rat(1, 3), rat(1, 1), rat(3, 2), rat(4, 1), rat(3, 4)];
        for g in &family {
            let (u, v) = g.edges().next().unwrap();
            for k in 2..=4 {
                let cover = matching_gen_poly(&necklace(g, u, v, k).unwrap());
                let base = matching_gen_poly(g).pow(k as u32);
                for l in &lambdas {
                    let actual = cover.eval_rational(l).cmp(&base.eval_rational(l));
                    assert_eq!(actual, predicted_order(g, u, v, l).unwrap());
                }
            }
        }
    }

    #[test]
    fn diamond_necklace_tie_at_one() {
        let k4 = matching_gen_poly(&Graph::complete(4)).eval_rational(&rat(1, 1));
        for k in 2..=5 {
            let dn = matching_gen_poly(&diamond_necklace(k)).eval_rational(&rat(1, 1));
            assert_eq!(dn, num_traits::pow(k4.clone(), k));
        }
    }

    #[test]
    fn pd_table() {
        let lam2 = |c: i64, inner: &[i64]| p(&[0, 0, 1]).scale(&BigInt::from(c)) * p(inner);
        assert_eq!(pd_direct(3).unwrap(), lam2(-2, &[1, -1]));
        assert_eq!(pd_direct(4).unwrap(), lam2(-3, &[1, 0, 3]));
        assert_eq!(pd_direct(5).unwrap(), lam2(-4, &[1, 3, 9, -9]));
        assert_eq!(pd_direct(6).unwrap(), lam2(-5, &[1, 8, 30, 0, 45]));
        assert_eq!(pd_direct(7).unwrap(), lam2(-6, &[1, 15, 90, 150, 225, -225]));
        assert_eq!(pd_direct(8).unwrap(), lam2(-7, &[1, 24, 225, 840, 1575, 0, 1575]));
        assert_eq!(pd_direct(9).unwrap(), lam2(-8, &[1, 35, 483, 3045, 9555, 11025, 11025, -11025]));
        assert_eq!(pd_direct(2).unwrap(), p(&[0, 0, -1]));
    }

    #[test]
    fn q_relations() {
        assert_eq!(qd_direct(3).unwrap(), p(&[0, 1, -1]));
        for d in 2..=15 {
            let lhs = pd_direct(d).unwrap();
            let rhs = qd_direct(d).unwrap().scale(&BigInt::from(d - 1)).shift(1);
            assert_eq!(lhs, -rhs, "d = {d}");
        }
        for d in 5..=15 {
            let direct = qd_direct(d).unwrap();
            assert_eq!(qd_recursive(d, QRecursion::First).unwrap(), direct, "d = {d}");
            assert_eq!(qd_recursive(d, QRecursion::Second).unwrap(), direct, "d = {d}");
        }
    }

    #[test]
    fn sign_structure() {
        for d in 3..=15 {
            let q = qd_direct(d).unwrap();
            let top = q.degree().unwrap();
            // even d has vanishing coefficients, e.g. Q_4 = λ + 3λ³
            let rest_ok = (1..top).all(|k| if d % 2 == 1 { q.coeff(k).is_positive() } else { !q.coeff(k).is_negative() });
            assert!(rest_ok, "d = {d}");
            assert_eq!(q.coeff(top).is_negative(), d % 2 == 1, "d = {d}");
        }
        for d in (5..=15).step_by(2) {
            assert!(qd_coefficient_checks(d).unwrap().holds(), "d = {d}");
        }
        let r5 = qd_coefficient_checks(5).unwrap();
        assert_eq!(r5.top.0, BigInt::from(-9));
        assert_eq!(r5.third.0, BigRational::from_integer(BigInt::from(3)));
        assert_eq!(qd_coefficient_checks(9).unwrap().third.0, BigRational::from_integer(BigInt::from(11025)));
        assert!(qd_coefficient_checks(6).is_err());
    }

    #[test]
    fn constants() {
        let w = default_width();
        let c3 = critical_constant(3, &w).unwrap();
        assert_eq!(c3.exact, Some(BigRational::one()));
        assert!(c3.certified());
        let all = critical_constants(15, &w).unwrap();
        for (c, expected) in all.iter().skip(1).zip([1.317124345, 1.593204592, 1.844705431]) {
            assert!((c.midpoint_f64() - expected).abs() < 5e-9, "d = {}", c.d);
        }
        for c in &all {
            assert!(c.width() <= w && c.certified());
            let bound = ((c.d as f64 - 3.0) / 6.0).sqrt();
            assert!(rational_to_f64(&c.hi) >= bound);
        }
        for pair in all.windows(2) {
            assert!(pair[0].hi < pair[1].lo);
        }
        assert!(critical_constant(4, &w).is_err());
    }
}
