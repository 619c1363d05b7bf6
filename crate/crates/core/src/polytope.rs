//! Even degree: a uniform fractional point of the matching polytope, the
//! matching-size bound it implies, and the large-λ threshold in log form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::graph::{max_matching, Graph};
use crate::numeric::Interval;

/// Largest `n` for exhaustive odd-set enumeration.
pub const ODD_SET_CAP: usize = 16;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `x_e = (d+2)/(d(d+3))`.
pub fn uniform_edge_value(d: usize) -> BigRational {
    let d = d as i64;
    rat(d + 2, d * (d + 3))
}

/// How condition (iii) was settled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OddSetMethod {
    Exhaustive { sets_checked: u64 },
    CaseSplit,
}

/// The case bound on `|E(S)|` for odd `|S| = s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OddSetCase {
    /// `s ≤ d−1`: `C(s,2)`.
    Small,
    /// `s = d+1`: `C(d+1,2) − 1`.
    Critical,
    /// `s ≥ d+3`: `ds/2`.
    Large,
}

pub fn odd_set_case(d: usize, s: usize) -> OddSetCase {
    if s < d {
        OddSetCase::Small
    } else if s == d + 1 {
        OddSetCase::Critical
    } else {
        OddSetCase::Large
    }
}

/// Upper bound on the edges induced by an odd set of size `s` in a
/// `d`-regular graph with no `K_{d+1}` component.
pub fn case_edge_bound(d: usize, s: usize) -> u64 {
    let (d, s) = (d as u64, s as u64);
    match odd_set_case(d as usize, s as usize) {
        OddSetCase::Small => s * (s - 1) / 2,
        OddSetCase::Critical => (d + 1) * d / 2 - 1,
        OddSetCase::Large => d * s / 2,
    }
}

/// `e·x_e ≤ (s−1)/2` exactly.
fn odd_condition(d: usize, s: usize, edges: u64) -> bool {
    let (d, s, e) = (d as u128, s as u128, edges as u128);
    2 * e * (d + 2) <= (s - 1) * d * (d + 3)
}

#[derive(Clone, Debug)]
pub struct FractionalWitness {
    pub d: usize,
    pub x_e: BigRational,
    /// (i) `x_e ≥ 0`.
    pub nonnegative: bool,
    /// (ii) `Σ_{e∋v} x_e = d·x_e ≤ 1`.
    pub vertex: bool,
    /// (iii) `Σ_{e⊆S} x_e ≤ (|S|−1)/2` for odd `S`.
    pub odd_sets: bool,
    pub method: OddSetMethod,
    /// Every enumerated odd set respects its case bound, and the case bound
    /// itself satisfies (iii).
    pub case_split_consistent: bool,
}

impl FractionalWitness {
    pub fn holds(&self) -> bool {
        self.nonnegative && self.vertex && self.odd_sets
    }
}

fn require_even_regular(g: &Graph, d: usize) -> Result<()> {
    if d < 2 || d % 2 == 1 {
        return Err(Error::Precondition(format!("d = {d} must be even and at least 2")));
    }
    g.require_regular(d)
}

/// Checks Edmonds' conditions for the uniform vector `x_e`, exhaustively
/// over odd sets when `n ≤ 16` and by the case bounds otherwise.
pub fn edmonds_check(g: &Graph, d: usize) -> Result<FractionalWitness> {
    require_even_regular(g, d)?;
    if g.has_complete_component(d + 1) {
        return Err(Error::Precondition(format!("graph has a K_{} component", d + 1)));
    }
    let x = uniform_edge_value(d);
    let n = g.n();
    let case_bounds_hold = (1..=n).step_by(2).all(|s| odd_condition(d, s, case_edge_bound(d, s)));
    let (odd_sets, method, observed_within_cases) = if n <= ODD_SET_CAP {
        let adj = g.bitmasks().expect("n ≤ 16 fits a bitmask");
        let mut ok = true;
        let mut within = true;
        let mut checked = 0u64;
        for mask in 1u32..(1 << n) {
            let s = mask.count_ones() as usize;
            if s % 2 == 0 {
                continue;
            }
            checked += 1;
            let twice: u32 = (0..n).filter(|&v| mask >> v & 1 == 1).map(|v| (adj[v] as u32 & mask).count_ones()).sum();
            let edges = (twice / 2) as u64;
            ok &= odd_condition(d, s, edges);
            within &= edges <= case_edge_bound(d, s);
        }
        (ok, OddSetMethod::Exhaustive { sets_checked: checked }, within)
    } else {
        (case_bounds_hold, OddSetMethod::CaseSplit, true)
    };
    Ok(FractionalWitness {
        d,
        nonnegative: !x.is_negative(),
        vertex: &x * int(d as i64) <= BigRational::one(),
        x_e: x,
        odd_sets,
        method,
        case_split_consistent: case_bounds_hold && observed_within_cases,
    })
}

#[derive(Clone, Debug)]
pub struct MatchingBound {
    pub nu: usize,
    pub n: usize,
    /// `(d+2)n/(2(d+3))`.
    pub bound: BigRational,
    pub holds: bool,
}

/// `ν(G) ≥ (d+2)n/(2(d+3))`, compared exactly.
pub fn matching_lower_bound_check(g: &Graph, d: usize) -> Result<MatchingBound> {
    require_even_regular(g, d)?;
    let nu = max_matching(g);
    let n = g.n();
    let bound = rat(((d + 2) * n) as i64, (2 * (d + 3)) as i64);
    Ok(MatchingBound {
        holds: int(nu as i64) >= bound,
        nu,
        n,
        bound,
    })
}

/// `ln λ ≥ T(d) = (d+1)(d+3)·ln(d+1)`, with the comparator
/// `(d+2)/(2(d+3))·ln λ − ln(d+1) − d/(2(d+1))·ln λ`.
#[derive(Clone, Debug)]
pub struct EvenThreshold {
    pub d: usize,
    /// `T(d)` in units of `ln(d+1)`.
    pub units: u64,
}

impl EvenThreshold {
    /// Certified enclosure of `T(d)`.
    pub fn value(&self, precision: u32) -> Interval {
        Interval::from_int(self.d as i64 + 1, precision).ln().mul_int(self.units as i64)
    }

    /// Coefficient of `ln λ` in the comparator, `1/((d+1)(d+3))`.
    pub fn slope(&self) -> BigRational {
        let d = self.d as i64;
        rat(d + 2, 2 * (d + 3)) - rat(d, 2 * (d + 1))
    }

    /// Comparator margin at `ln λ = s·ln(d+1)`, in units of `ln(d+1)`.
    pub fn margin_in_units(&self, s: &BigRational) -> BigRational {
        self.slope() * s - BigRational::one()
    }

    /// Certified comparator margin at an enclosure of `ln λ`.
    pub fn margin(&self, ln_lambda: &Interval) -> Interval {
        let prec = ln_lambda.prec();
        let slope = Interval::from_rational(&self.slope(), prec);
        let ln_d1 = Interval::from_int(self.d as i64 + 1, prec).ln();
        slope.mul(ln_lambda).sub(&ln_d1)
    }
}

pub fn even_d_threshold(d: usize) -> Result<EvenThreshold> {
    if d < 2 || d % 2 == 1 {
        return Err(Error::Precondition(format!("d = {d} must be even and at least 2")));
    }
    Ok(EvenThreshold {
        d,
        units: ((d + 1) * (d + 3)) as u64,
    })
}

/// Per-vertex bounds at `ln λ = s·ln(d+1)`, in units of `ln(d+1)`: the
/// lower bound `ν/n·s` for `G` against the upper bound `1 + d/(2(d+1))·s`
/// for `K_{d+1}`.
#[derive(Clone, Debug)]
pub struct LogBounds {
    pub lower_g: BigRational,
    pub upper_complete: BigRational,
}

impl LogBounds {
    pub fn separated(&self) -> bool {
        self.lower_g >= self.upper_complete
    }
}

pub fn log_bounds(g: &Graph, d: usize, s: &BigRational) -> Result<LogBounds> {
    require_even_regular(g, d)?;
    let nu = max_matching(g);
    let lower_g = rat(nu as i64, g.n() as i64) * s;
    let upper_complete = BigRational::one() + rat(d as i64, 2 * (d as i64 + 1)) * s;
    Ok(LogBounds { lower_g, upper_complete })
}

/// `M_{K_{d+1}}(1) ≤ (d+1)^{d+1}`.
pub fn complete_value_bound(d: usize) -> (BigInt, BigInt) {
    let value = crate::matchpoly::q_complete(d + 1).eval_int(&BigInt::one());
    let cap = num_traits::pow(BigInt::from(d + 1), d + 1);
    (value, cap)
}
