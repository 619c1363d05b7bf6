//! Best uniform polynomial approximation of `ln(1+x)` on `[0, A]` by the
//! Remez exchange algorithm, the λ-intervals it certifies for cubic graphs,
//! and coverage of a ladder of such intervals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{count_subgraphs, Graph};
use crate::numeric::{Dyadic, Real};
use crate::series::{verify_inequality, Comparison};

/// Working precision of the exchange, in bits.
pub const REMEZ_PRECISION: u32 = 200;
/// Dense grid used to locate local extrema of the error.
const GRID: usize = 4000;
const MAX_ITERATIONS: usize = 60;

#[derive(Clone, Debug)]
pub struct RemezResult {
    pub a: BigRational,
    pub degree: usize,
    /// `c_0..c_degree`.
    pub coeffs: Vec<Real>,
    /// Levelled error `|E|` of the final reference.
    pub epsilon: Real,
    /// `degree + 2` abscissae where the error alternates.
    pub reference: Vec<Real>,
    pub iterations: usize,
}

impl RemezResult {
    pub fn coeffs_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(Real::to_f64).collect()
    }

    pub fn eval(&self, x: &Real) -> Real {
        horner(&self.coeffs, x)
    }

    /// `ln(1+x) − P(x)`.
    pub fn error_at(&self, x: &Real) -> Real {
        error_at(&self.coeffs, x)
    }

    /// Relative spread `(max|e| − min|e|)/max|e|` over the reference, and
    /// whether the signs alternate.
    pub fn equioscillation(&self) -> (f64, bool) {
        let errs: Vec<Real> = self.reference.iter().map(|x| self.error_at(x)).collect();
        let alternates = errs.windows(2).all(|w| w[0].signum() == -w[1].signum() && w[0].signum() != 0);
        let mags: Vec<f64> = errs.iter().map(|e| e.abs().to_f64()).collect();
        let max = mags.iter().cloned().fold(0.0, f64::max);
        let min = mags.iter().cloned().fold(f64::INFINITY, f64::min);
        ((max - min) / max, alternates)
    }

    /// Sup-norm error sampled on `points` equally spaced abscissae, in f64.
    pub fn sampled_sup_error(&self, points: usize) -> f64 {
        sampled_sup_error(&self.coeffs_f64(), self.a_f64(), points)
    }

    pub fn a_f64(&self) -> f64 {
        rat_to_f64(&self.a)
    }
}

fn rat_to_f64(r: &BigRational) -> f64 {
    Dyadic::from_rational(r, 64, crate::numeric::Round::Nearest).to_f64()
}

/// Sup of `|ln(1+x) − P(x)|` over an equally spaced grid on `[0, a]`.
pub fn sampled_sup_error(coeffs: &[f64], a: f64, points: usize) -> f64 {
    (0..=points)
        .map(|i| {
            let x = a * i as f64 / points as f64;
            let p = coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c);
            (x.ln_1p() - p).abs()
        })
        .fold(0.0, f64::max)
}

fn horner(coeffs: &[Real], x: &Real) -> Real {
    let prec = x.prec();
    coeffs.iter().rev().fold(Real::zero(prec), |acc, c| &(&acc * x) + c)
}

fn one_plus_ln(x: &Real) -> Real {
    (x + &Real::from_int(1, x.prec())).ln()
}

fn error_at(coeffs: &[Real], x: &Real) -> Real {
    &one_plus_ln(x) - &horner(coeffs, x)
}

/// `d/dx (ln(1+x) − P(x)) = 1/(1+x) − P'(x)`.
fn error_slope(coeffs: &[Real], x: &Real) -> Real {
    let prec = x.prec();
    let one = Real::from_int(1, prec);
    let mut dp = Real::zero(prec);
    for (j, c) in coeffs.iter().enumerate().skip(1).rev() {
        dp = &(&dp * x) + &(c * &Real::from_int(j as i64, prec));
    }
    &(&one / &(x + &one)) - &dp
}

/// Solve `Σ_j c_j x_i^j + (−1)^i E = ln(1+x_i)` for `c` and `E`.
fn solve_reference(reference: &[Real], degree: usize, prec: u32) -> Result<(Vec<Real>, Real)> {
    let m = degree + 2;
    let mut rows: Vec<Vec<Real>> = reference
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let mut row = Vec::with_capacity(m + 1);
            let mut p = Real::from_int(1, prec);
            for _ in 0..=degree {
                row.push(p.clone());
                p = &p * x;
            }
            row.push(Real::from_int(if i % 2 == 0 { 1 } else { -1 }, prec));
            row.push(one_plus_ln(x));
            row
        })
        .collect();
    for col in 0..m {
        let pivot = (col..m)
            .max_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()))
            .unwrap();
        if rows[pivot][col].signum() == 0 {
            return Err(Error::NonConvergence {
                iterations: 0,
                reference: reference.iter().map(Real::to_f64).collect(),
            });
        }
        rows.swap(col, pivot);
        for r in 0..m {
            if r == col {
                continue;
            }
            let factor = &rows[r][col] / &rows[col][col];
            if factor.signum() == 0 {
                continue;
            }
            for k in col..=m {
                let delta = &factor * &rows[col][k];
                rows[r][k] = &rows[r][k] - &delta;
            }
        }
    }
    let sol: Vec<Real> = (0..m).map(|i| &rows[i][m] / &rows[i][i]).collect();
    let e = sol[degree + 1].clone();
    Ok((sol[..=degree].to_vec(), e))
}

/// Local extrema of the error on `[0, a]`: both endpoints plus every sign
/// change of the slope on a dense grid, refined by bisection.
fn error_extrema(coeffs: &[Real], a: &Real, prec: u32) -> Vec<Real> {
    let zero = Real::zero(prec);
    let step = a / &Real::from_int(GRID as i64, prec);
    let xs: Vec<Real> = (0..=GRID).map(|i| &step * &Real::from_int(i as i64, prec)).collect();
    let slopes: Vec<i8> = xs.iter().map(|x| error_slope(coeffs, x).signum()).collect();
    let mut out = vec![zero];
    for i in 0..GRID {
        if slopes[i] != 0 && slopes[i + 1] != 0 && slopes[i] != slopes[i + 1] {
            let (mut lo, mut hi) = (xs[i].clone(), xs[i + 1].clone());
            for _ in 0..(prec / 2) {
                let mid = (&lo + &hi).mul_pow2(-1);
                if error_slope(coeffs, &mid).signum() == slopes[i] {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            out.push((&lo + &hi).mul_pow2(-1));
        } else if slopes[i + 1] == 0 && i + 1 < GRID {
            out.push(xs[i + 1].clone());
        }
    }
    out.push(a.clone());
    out
}

/// Pick `count` points with alternating error signs and the largest
/// magnitudes, in the usual multi-point exchange manner.
fn select_alternating(points: Vec<Real>, coeffs: &[Real], count: usize) -> Option<Vec<Real>> {
    let mut cand: Vec<(Real, Real)> = Vec::new();
    for x in points {
        let e = error_at(coeffs, &x);
        if e.signum() == 0 {
            continue;
        }
        match cand.last_mut() {
            Some(last) if last.1.signum() == e.signum() => {
                if e.abs() > last.1.abs() {
                    *last = (x, e);
                }
            }
            _ => cand.push((x, e)),
        }
    }
    while cand.len() > count {
        let (first, last) = (cand[0].1.abs(), cand[cand.len() - 1].1.abs());
        if first < last {
            cand.remove(0);
        } else {
            cand.pop();
        }
    }
    (cand.len() == count).then(|| cand.into_iter().map(|(x, _)| x).collect())
}

/// Minimax polynomial of the given degree for `ln(1+x)` on `[0, a]`.
/// Converged when the reference errors agree to `tol` relative.
pub fn remez_best_approx(a: &BigRational, degree: usize, tol: f64) -> Result<RemezResult> {
    if !a.is_positive() {
        return Err(Error::Precondition("interval endpoint A must be positive".into()));
    }
    let prec = REMEZ_PRECISION;
    let a_real = Real::from_rational(a, prec);
    let m = degree + 1;
    // Chebyshev extrema mapped to [0, A]
    let mut reference: Vec<Real> = (0..=m)
        .map(|i| {
            let c = (std::f64::consts::PI * i as f64 / m as f64).cos();
            let t = Real::from_f64((1.0 - c) / 2.0, prec);
            &a_real * &t
        })
        .collect();
    reference[0] = Real::zero(prec);
    reference[m] = a_real.clone();

    for iteration in 1..=MAX_ITERATIONS {
        let (coeffs, e) = solve_reference(&reference, degree, prec)?;
        let extrema = error_extrema(&coeffs, &a_real, prec);
        let next = select_alternating(extrema, &coeffs, degree + 2).ok_or_else(|| Error::NonConvergence {
            iterations: iteration,
            reference: reference.iter().map(Real::to_f64).collect(),
        })?;
        let mags: Vec<Real> = next.iter().map(|x| error_at(&coeffs, x).abs()).collect();
        let max = mags.iter().max().unwrap().clone();
        let min = mags.iter().min().unwrap().clone();
        let spread = (&(&max - &min) / &max).to_f64();
        if spread <= tol {
            let result = RemezResult {
                a: a.clone(),
                degree,
                coeffs,
                epsilon: e.abs(),
                reference: next,
                iterations: iteration,
            };
            return Ok(result);
        }
        reference = next;
    }
    Err(Error::NonConvergence {
        iterations: MAX_ITERATIONS,
        reference: reference.iter().map(Real::to_f64).collect(),
    })
}

/// `λ_min(A) < λ < λ_max(A)` where `(3/2)c_3λ³ + 27c_4λ⁴ − ε > 0`, and the
/// usable right end `min(A/8, λ_max)`.
#[derive(Clone, Debug)]
pub struct LambdaInterval {
    pub lambda_min: Dyadic,
    pub lambda_max: Dyadic,
    pub a_over_8: BigRational,
}

impl LambdaInterval {
    pub fn usable_hi(&self) -> BigRational {
        let max = self.lambda_max.to_rational();
        if self.a_over_8 < max {
            self.a_over_8.clone()
        } else {
            max
        }
    }

    pub fn contains(&self, lambda: &BigRational) -> bool {
        &self.lambda_min.to_rational() < lambda && lambda < &self.lambda_max.to_rational()
    }
}

/// Sign of `(3/2)c_3λ³ + 27c_4λ⁴ − ε`, exactly.
fn interval_poly_sign(c3: &Dyadic, c4: &Dyadic, eps: &Dyadic, l: &Dyadic) -> i8 {
    let l3 = &(l * l) * l;
    let l4 = &l3 * l;
    // 2 × value = 3c_3λ³ + 54c_4λ⁴ − 2ε
    let v = &(&(&Dyadic::from_int(3) * c3) * &l3) + &(&(&Dyadic::from_int(54) * c4) * &l4);
    (&v - &eps.mul_pow2(1)).signum()
}

/// Both positive roots of `(3/2)c_3λ³ + 27c_4λ⁴ = ε`, bisected to `bits`
/// bits with exact dyadic sign evaluation.
pub fn lambda_interval_from(c3: &Dyadic, c4: &Dyadic, eps: &Dyadic, a_over_8: BigRational, bits: u32) -> Result<LambdaInterval> {
    if !c3.is_positive() || !c4.is_negative() || !eps.is_positive() {
        return Err(Error::Precondition("need c_3 > 0, c_4 < 0 and ε > 0".into()));
    }
    let prec = bits + 16;
    // maximum of the quartic part at λ* = −c_3/(24c_4); zero at −c_3/(18c_4)
    let peak = Dyadic::div_round(&-c3, &(&Dyadic::from_int(24) * c4), prec, crate::numeric::Round::Nearest);
    if interval_poly_sign(c3, c4, eps, &peak) <= 0 {
        return Err(Error::EmptyInterval(format!(
            "(3/2)c_3λ³ + 27c_4λ⁴ − ε ≤ 0 at its maximum λ* = {}",
            peak.to_decimal(12)
        )));
    }
    let far = Dyadic::div_round(&-c3, &(&Dyadic::from_int(18) * c4), prec, crate::numeric::Round::Ceil);
    let bisect = |mut lo: Dyadic, mut hi: Dyadic, rising: bool| {
        let span = hi.to_f64().abs().max(1.0).log2().ceil() as u32;
        for _ in 0..bits + span + 8 {
            let mid = (&lo + &hi).mul_pow2(-1).round(prec, crate::numeric::Round::Nearest);
            let positive = interval_poly_sign(c3, c4, eps, &mid) > 0;
            if positive == rising {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        (&lo + &hi).mul_pow2(-1)
    };
    let lambda_min = bisect(Dyadic::zero(), peak.clone(), true);
    let lambda_max = bisect(peak, far, false);
    Ok(LambdaInterval {
        lambda_min,
        lambda_max,
        a_over_8,
    })
}

pub fn lambda_interval(r: &RemezResult) -> Result<LambdaInterval> {
    lambda_interval_of(&r.coeffs, &r.epsilon, &r.a)
}

/// λ-interval of an arbitrary approximation `P` of `ln(1+x)` on `[0, a]`
/// with uniform error at most `eps`.
pub fn lambda_interval_of(coeffs: &[Real], eps: &Real, a: &BigRational) -> Result<LambdaInterval> {
    if coeffs.len() < 5 {
        return Err(Error::Precondition("λ-interval needs a degree-4 approximation".into()));
    }
    lambda_interval_from(
        coeffs[3].dyadic(),
        coeffs[4].dyadic(),
        eps.dyadic(),
        a / BigRational::from_integer(BigInt::from(8)),
        96,
    )
}

/// `max |ln(1+x) − P(x)|` over `[0, a]`, located like the exchange extrema.
pub fn sup_error(coeffs: &[Real], a: &BigRational) -> Real {
    let prec = coeffs.first().map_or(REMEZ_PRECISION, Real::prec);
    let a_real = Real::from_rational(a, prec);
    error_extrema(coeffs, &a_real, prec)
        .iter()
        .map(|x| error_at(coeffs, x).abs())
        .max()
        .unwrap_or_else(|| Real::zero(prec))
}

/// Uncovered piece of `(0, target]`, closed at both ends because the
/// covering intervals are open.
#[derive(Clone, Debug, PartialEq)]
pub struct Gap {
    pub lo: BigRational,
    pub hi: BigRational,
}

#[derive(Clone, Debug)]
pub struct LadderRow {
    pub result: RemezResult,
    pub interval: LambdaInterval,
}

#[derive(Clone, Debug)]
pub struct LadderReport {
    pub base_cap: BigRational,
    pub target: BigRational,
    pub rows: Vec<LadderRow>,
    pub gaps: Vec<Gap>,
    /// Consecutive usable intervals overlap strictly.
    pub chained: bool,
}

impl LadderReport {
    pub fn covered(&self) -> bool {
        self.gaps.is_empty()
    }
}

/// Uncovered parts of `(0, target]` by `(0, base_cap)` and the open
/// intervals `(lo_i, hi_i)`.
pub fn coverage_gaps(base_cap: &BigRational, intervals: &[(BigRational, BigRational)], target: &BigRational) -> Vec<Gap> {
    let mut sorted = intervals.to_vec();
    sorted.sort();
    let mut reach = base_cap.clone();
    let mut gaps = Vec::new();
    for (lo, hi) in sorted {
        if &reach > target {
            break;
        }
        if lo >= reach {
            gaps.push(Gap {
                lo: reach.clone(),
                hi: if &lo > target { target.clone() } else { lo.clone() },
            });
        }
        if hi > reach {
            reach = hi;
        }
    }
    if &reach <= target {
        gaps.push(Gap {
            lo: reach,
            hi: target.clone(),
        });
    }
    gaps
}

/// Run the exchange for every `A` in the ladder and check that the base
/// interval and the usable intervals chain up to cover `(0, target]`.
pub fn ladder_verify(ladder: &[BigRational], base_cap: &BigRational, target: &BigRational, tol: f64) -> Result<LadderReport> {
    if ladder.is_empty() {
        return Err(Error::Precondition("empty ladder".into()));
    }
    let rows: Vec<LadderRow> = ladder
        .par_iter()
        .map(|a| {
            let result = remez_best_approx(a, 4, tol)?;
            let interval = lambda_interval(&result)?;
            Ok(LadderRow { result, interval })
        })
        .collect::<Result<_>>()?;
    let intervals: Vec<(BigRational, BigRational)> = rows
        .iter()
        .map(|r| (r.interval.lambda_min.to_rational(), r.interval.usable_hi()))
        .collect();
    let mut chain = intervals.clone();
    chain.sort();
    let mut chained = chain.first().is_some_and(|f| &f.0 < base_cap);
    for w in chain.windows(2) {
        chained &= w[1].0 < w[0].1;
    }
    Ok(LadderReport {
        base_cap: base_cap.clone(),
        target: target.clone(),
        gaps: coverage_gaps(base_cap, &intervals, target),
        rows,
        chained,
    })
}

/// The ladder `0.2, 0.5, 0.9, 1.4, 1.8, 2.3, 2.6, 2.8, 2.87`.
pub fn standard_ladder() -> Vec<BigRational> {
    [20, 50, 90, 140, 180, 230, 260, 280, 287]
        .iter()
        .map(|&v| BigRational::new(BigInt::from(v), BigInt::from(100)))
        .collect()
}

/// Outcome of the cubic-graph bound at one λ.
#[derive(Clone, Debug)]
pub struct CubicCheck {
    /// `c_3(3−3ρ_3)λ³ + c_4(51−48ρ_3−4ρ_4)λ⁴ − ε`.
    pub bound: BigRational,
    pub margin: Comparison,
    /// The bound is certified to be at most the true margin.
    pub bound_below_margin: bool,
    /// `ρ_3 ≤ 1/2` and `λ < −c_3/(16c_4)`.
    pub positivity_expected: bool,
    pub bound_positive: bool,
}

pub fn cubic_theorem_check(g: &Graph, r: &RemezResult, lambda: &BigRational, precision: u32) -> Result<CubicCheck> {
    g.require_regular(3)?;
    let interval = lambda_interval(r)?;
    if lambda > &interval.a_over_8 {
        return Err(Error::Precondition(format!("λ = {lambda} exceeds A/8")));
    }
    if !interval.contains(lambda) {
        return Err(Error::Precondition(format!("λ = {lambda} is outside (λ_min, λ_max)")));
    }
    let counts = count_subgraphs(g);
    let (r3, r4) = (counts.rho3(), counts.rho4());
    let int = |v: i64| BigRational::from_integer(BigInt::from(v));
    let c3 = r.coeffs[3].dyadic().to_rational();
    let c4 = r.coeffs[4].dyadic().to_rational();
    let eps = r.epsilon.dyadic().to_rational();
    let l3 = lambda * lambda * lambda;
    let l4 = &l3 * lambda;
    let bound = &c3 * (int(3) - int(3) * &r3) * &l3 + &c4 * (int(51) - int(48) * &r3 - int(4) * &r4) * &l4 - &eps;
    let margin = verify_inequality(g, 3, lambda, precision)?;
    let bound_below_margin = if margin.exact_tie {
        bound <= BigRational::zero()
    } else {
        margin.margin.lo().to_rational() >= bound
    };
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let positivity_expected = r3 <= half && lambda < &(-&c3 / (int(16) * &c4));
    Ok(CubicCheck {
        bound_positive: bound.is_positive(),
        bound,
        margin,
        bound_below_margin,
        positivity_expected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dec(s: &str) -> BigRational {
        let (int_part, frac) = s.split_once('.').unwrap_or((s, ""));
        let den = BigInt::from(10).pow(frac.len() as u32);
        let num: BigInt = format!("{int_part}{frac}").parse().unwrap();
        BigRational::new(num, den)
    }

    #[test]
    fn constant_approximation_is_midrange() {
        let a = dec("1.5");
        let r = remez_best_approx(&a, 0, 1e-12).unwrap();
        let half_log = 2.5f64.ln() / 2.0;
        assert!((r.coeffs[0].to_f64() - half_log).abs() < 1e-15);
        assert!((r.epsilon.to_f64() - half_log).abs() < 1e-15);
    }

    #[test]
    fn degree_four_equioscillates() {
        let r = remez_best_approx(&dec("0.2"), 4, 1e-20).unwrap();
        let (spread, alternates) = r.equioscillation();
        assert!(alternates);
        assert!(spread < 1e-12);
        assert_eq!(r.reference.len(), 6);
        let c = r.coeffs_f64();
        assert!((c[1] - 0.9999797421).abs() < 1e-7);
        assert!(c[3] > 0.0 && c[4] < 0.0);
        // the error at 0 is −c_0, so c_0 is the levelled error
        assert!((c[0] - r.epsilon.to_f64()).abs() < 1e-20);
        assert!((sup_error(&r.coeffs, &r.a).to_f64() - r.epsilon.to_f64()).abs() < 1e-18);
    }

    #[test]
    fn endpoints_from_printed_coefficients() {
        let a = dec("0.2");
        let coeffs: Vec<Real> = ["0.00000007846422", "0.9999797421", "-0.4991602677", "0.3209653251", "-0.1724127778"]
            .iter()
            .map(|s| Real::from_rational(&dec(s), REMEZ_PRECISION))
            .collect();
        let eps = sup_error(&coeffs, &a);
        let li = lambda_interval_of(&coeffs, &eps, &a).unwrap();
        assert!((li.lambda_min.to_f64() - 0.005568811878).abs() < 1e-6);
        assert!((li.lambda_max.to_f64() - 0.1034074863).abs() < 1e-6);
    }

    #[test]
    fn cubic_checks() {
        let r18 = remez_best_approx(&dec("1.8"), 4, 1e-20).unwrap();
        let k33 = cubic_theorem_check(&Graph::complete_bipartite(3, 3), &r18, &dec("0.2"), 64).unwrap();
        assert!(k33.bound_positive && k33.bound_below_margin && k33.positivity_expected);
        let r09 = remez_best_approx(&dec("0.9"), 4, 1e-20).unwrap();
        let prism = cubic_theorem_check(&Graph::prism(), &r09, &dec("0.11"), 64).unwrap();
        assert!(prism.bound_positive && prism.bound_below_margin);
        let k4 = cubic_theorem_check(&Graph::complete(4), &r18, &dec("0.2"), 64).unwrap();
        assert_eq!(k4.bound, -r18.epsilon.dyadic().to_rational());
        assert!(k4.margin.exact_tie && k4.bound_below_margin);
        assert!(cubic_theorem_check(&Graph::complete(4), &r18, &dec("0.3"), 64).is_err());
        assert!(cubic_theorem_check(&Graph::complete(5), &r18, &dec("0.2"), 64).is_err());
    }

    #[test]
    fn perturbation_increases_error() {
        let r = remez_best_approx(&dec("0.9"), 4, 1e-20).unwrap();
        let c = r.coeffs_f64();
        let base = sampled_sup_error(&c, 0.9, 10_000);
        for j in 0..c.len() {
            for s in [-1e-6, 1e-6] {
                let mut p = c.clone();
                p[j] += s;
                assert!(sampled_sup_error(&p, 0.9, 10_000) > base);
            }
        }
    }

    #[test]
    fn cubic_only_limit() {
        // c_4 → 0⁻ with ε = (3/2)λ*³ puts λ_min at λ*
        let c3 = Dyadic::from_int(1);
        let c4 = Dyadic::new(BigInt::from(-1), -80);
        let eps = Dyadic::new(BigInt::from(3), -1 - 30);
        let li = lambda_interval_from(&c3, &c4, &eps, BigRational::one(), 60).unwrap();
        assert!((li.lambda_min.to_f64() - 2f64.powi(-10)).abs() < 1e-12);
        assert!(li.lambda_max.to_f64() > 1e20);
        let big_eps = Dyadic::from_int(1);
        let c4 = Dyadic::from_int(-1);
        assert!(matches!(
            lambda_interval_from(&c3, &c4, &big_eps, BigRational::one(), 60),
            Err(Error::EmptyInterval(_))
        ));
    }

    #[test]
    fn coverage_examples() {
        let base = BigRational::new(1.into(), 144.into());
        let target = dec("0.3575");
        let rows = [
            ("0.005568811878", "0.025"),
            ("0.02277925697", "0.0625"),
            ("0.05462386679", "0.1125"),
        ];
        let all: Vec<_> = rows.iter().map(|(a, b)| (dec(a), dec(b))).collect();
        let gaps = coverage_gaps(&base, &all, &dec("0.1"));
        assert!(gaps.is_empty());
        let missing = vec![all[0].clone(), all[2].clone()];
        let gaps = coverage_gaps(&base, &missing, &target);
        assert_eq!(gaps[0], Gap { lo: dec("0.025"), hi: dec("0.05462386679") });
        let single = vec![all[0].clone()];
        assert_eq!(coverage_gaps(&base, &single, &target), vec![Gap { lo: dec("0.025"), hi: target.clone() }]);
    }
}
