//! Sturm sequences over the integers and real-root counting with multiplicity.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::poly::IntPoly;

/// A point on the extended real line at which a Sturm sequence is evaluated.
#[derive(Clone, Debug)]
pub enum Point {
    NegInf,
    PosInf,
    At(BigRational),
}

impl Point {
    pub fn int(v: i64) -> Self {
        Point::At(BigRational::from_integer(BigInt::from(v)))
    }
}

/// Sturm sequence of a nonzero polynomial, every member made primitive.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<IntPoly>,
}

impl SturmChain {
    pub fn new(f: &IntPoly) -> Self {
        assert!(!f.is_zero(), "Sturm chain of the zero polynomial");
        let mut chain = vec![f.primitive()];
        let d = f.derivative();
        if !d.is_zero() {
            chain.push(d.primitive());
        }
        while chain.len() >= 2 {
            let n = chain.len();
            let r = chain[n - 2].signed_pseudo_rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push((-r).primitive());
        }
        SturmChain { chain }
    }

    /// The last member: a scalar multiple of gcd(f, f').
    pub fn gcd_with_derivative(&self) -> &IntPoly {
        self.chain.last().unwrap()
    }

    fn sign_at(p: &IntPoly, at: &Point) -> i8 {
        let sign_of = |v: &BigInt| -> i8 {
            if v.is_zero() {
                0
            } else if v.is_positive() {
                1
            } else {
                -1
            }
        };
        match at {
            Point::PosInf => sign_of(p.leading().unwrap()),
            Point::NegInf => {
                let s = sign_of(p.leading().unwrap());
                if p.degree().unwrap() % 2 == 0 {
                    s
                } else {
                    -s
                }
            }
            Point::At(x) => {
                let v = p.eval_rational(x);
                if v.is_zero() {
                    0
                } else if v.is_positive() {
                    1
                } else {
                    -1
                }
            }
        }
    }

    /// Number of sign changes in the chain at `at`, zeros skipped.
    pub fn variations(&self, at: &Point) -> usize {
        let mut prev = 0i8;
        let mut count = 0;
        for p in &self.chain {
            let s = Self::sign_at(p, at);
            if s == 0 {
                continue;
            }
            if prev != 0 && s != prev {
                count += 1;
            }
            prev = s;
        }
        count
    }

    /// Distinct real roots in `(a, b]`.
    pub fn count_distinct(&self, a: &Point, b: &Point) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }
}

/// Real roots of `f` in `(a, b]`, counted with multiplicity.
///
/// The endpoints must not be multiple roots of `f`: there every member of the
/// chain vanishes and the variation count is meaningless.
///
/// Uses the fact that the roots of gcd(f, f') are exactly the multiple roots
/// of `f`, each with multiplicity reduced by one.
pub fn count_real_roots(f: &IntPoly, a: &Point, b: &Point) -> usize {
    let mut total = 0;
    let mut cur = f.clone();
    while cur.degree().is_some_and(|d| d > 0) {
        let chain = SturmChain::new(&cur);
        total += chain.count_distinct(a, b);
        cur = chain.gcd_with_derivative().clone();
    }
    total
}

/// True if every complex root of `f` is real.
pub fn is_real_rooted(f: &IntPoly) -> bool {
    match f.degree() {
        None => false,
        Some(d) => count_real_roots(f, &Point::NegInf, &Point::PosInf) == d,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn counts_simple_roots() {
        // (x-1)(x-2)(x+3)
        let f = &(&p(&[-1, 1]) * &p(&[-2, 1])) * &p(&[3, 1]);
        assert_eq!(count_real_roots(&f, &Point::NegInf, &Point::PosInf), 3);
        assert_eq!(count_real_roots(&f, &Point::int(0), &Point::PosInf), 2);
        assert_eq!(count_real_roots(&f, &Point::int(1), &Point::int(2)), 1);
    }

    #[test]
    fn counts_multiplicity() {
        // x^3 (x^2 - 2)^2 (x^2 + 1)
        let f = &(&p(&[0, 0, 0, 1]) * &p(&[-2, 0, 1]).pow(2)) * &p(&[1, 0, 1]);
        assert_eq!(count_real_roots(&f, &Point::NegInf, &Point::PosInf), 7);
        assert!(!is_real_rooted(&f));
        let g = &p(&[0, 0, 0, 1]) * &p(&[-2, 0, 1]).pow(2);
        assert!(is_real_rooted(&g));
        let half = Point::At(BigRational::new(1.into(), 2.into()));
        assert_eq!(count_real_roots(&g, &half, &Point::int(2)), 2);
    }

    #[test]
    fn no_real_roots() {
        assert_eq!(count_real_roots(&p(&[1, 0, 1]), &Point::NegInf, &Point::PosInf), 0);
        assert!(is_real_rooted(&p(&[5])));
        assert!(!is_real_rooted(&IntPoly::zero()));
    }
}
