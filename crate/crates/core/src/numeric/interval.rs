//! Outward-rounded interval arithmetic over dyadic endpoints.
//!
//! Every operation returns an interval that contains the exact result of the
//! operation applied to any points of the operands; `ln` and `sqrt` include
//! their truncation error. This is what certified margins are built on.

use std::fmt;

use num_rational::BigRational;

use super::dyadic::{rational_to_decimal, Dyadic, Round};

#[derive(Clone, PartialEq, Eq)]
pub struct Interval {
    lo: Dyadic,
    hi: Dyadic,
    prec: u32,
}

impl Interval {
    pub fn new(lo: Dyadic, hi: Dyadic, prec: u32) -> Self {
        assert!(lo <= hi, "inverted interval");
        Interval {
            lo: lo.round(prec, Round::Floor),
            hi: hi.round(prec, Round::Ceil),
            prec,
        }
    }

    pub fn exact(v: Dyadic, prec: u32) -> Self {
        Interval::new(v.clone(), v, prec)
    }

    pub fn from_int(v: i64, prec: u32) -> Self {
        Interval::exact(Dyadic::from_int(v), prec)
    }

    pub fn from_rational(r: &BigRational, prec: u32) -> Self {
        Interval {
            lo: Dyadic::from_rational(r, prec, Round::Floor),
            hi: Dyadic::from_rational(r, prec, Round::Ceil),
            prec,
        }
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn mid(&self) -> Dyadic {
        (&self.lo + &self.hi).mul_pow2(-1)
    }

    /// Half-width.
    pub fn rad(&self) -> Dyadic {
        (&self.hi - &self.lo).mul_pow2(-1)
    }

    pub fn width(&self) -> Dyadic {
        &self.hi - &self.lo
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn contains_zero(&self) -> bool {
        !self.is_positive() && !self.is_negative()
    }

    pub fn contains(&self, r: &BigRational) -> bool {
        &self.lo.to_rational() <= r && r <= &self.hi.to_rational()
    }

    pub fn with_prec(&self, prec: u32) -> Interval {
        Interval::new(self.lo.clone(), self.hi.clone(), prec)
    }

    fn hull(cands: &[Dyadic], prec: u32) -> Interval {
        let lo = cands.iter().min().unwrap().round(prec, Round::Floor);
        let hi = cands.iter().max().unwrap().round(prec, Round::Ceil);
        Interval { lo, hi, prec }
    }

    pub fn add(&self, o: &Interval) -> Interval {
        let prec = self.prec.max(o.prec);
        Interval {
            lo: (&self.lo + &o.lo).round(prec, Round::Floor),
            hi: (&self.hi + &o.hi).round(prec, Round::Ceil),
            prec,
        }
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Interval {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
            prec: self.prec,
        }
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let prec = self.prec.max(o.prec);
        let c = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        Self::hull(&c, prec)
    }

    pub fn div(&self, o: &Interval) -> Interval {
        assert!(!o.contains_zero(), "interval division by an interval containing zero");
        let prec = self.prec.max(o.prec);
        let mut lo = Vec::with_capacity(4);
        let mut hi = Vec::with_capacity(4);
        for a in [&self.lo, &self.hi] {
            for b in [&o.lo, &o.hi] {
                lo.push(Dyadic::div_round(a, b, prec, Round::Floor));
                hi.push(Dyadic::div_round(a, b, prec, Round::Ceil));
            }
        }
        Interval {
            lo: lo.into_iter().min().unwrap(),
            hi: hi.into_iter().max().unwrap(),
            prec,
        }
    }

    pub fn mul_pow2(&self, k: i64) -> Interval {
        Interval {
            lo: self.lo.mul_pow2(k),
            hi: self.hi.mul_pow2(k),
            prec: self.prec,
        }
    }

    pub fn mul_int(&self, k: i64) -> Interval {
        self.mul(&Interval::from_int(k, self.prec))
    }

    pub fn div_int(&self, k: i64) -> Interval {
        self.div(&Interval::from_int(k, self.prec))
    }

    pub fn powi(&self, k: u32) -> Interval {
        let mut acc = Interval::from_int(1, self.prec);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Hull of two intervals.
    pub fn join(&self, o: &Interval) -> Interval {
        Interval {
            lo: self.lo.clone().min(o.lo.clone()),
            hi: self.hi.clone().max(o.hi.clone()),
            prec: self.prec.max(o.prec),
        }
    }

    pub fn sqrt(&self) -> Interval {
        assert!(!self.lo.is_negative(), "square root of an interval with negative part");
        Interval {
            lo: self.lo.sqrt_round(self.prec, Round::Floor),
            hi: self.hi.sqrt_round(self.prec, Round::Ceil),
            prec: self.prec,
        }
    }

    /// Natural logarithm of a strictly positive interval.
    pub fn ln(&self) -> Interval {
        assert!(self.is_positive(), "logarithm of a non-positive interval");
        let lo = ln_dyadic(&self.lo, self.prec);
        let hi = if self.lo == self.hi {
            lo.clone()
        } else {
            ln_dyadic(&self.hi, self.prec)
        };
        Interval {
            lo: lo.lo,
            hi: hi.hi,
            prec: self.prec,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.mid().to_f64()
    }

    /// `mid ± rad` in decimal.
    pub fn to_decimal(&self, digits: usize) -> String {
        format!(
            "{} ± {}",
            rational_to_decimal(&self.mid().to_rational(), digits),
            rational_to_decimal(&self.rad().to_rational(), 3)
        )
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo.to_decimal(25), self.hi.to_decimal(25))
    }
}

/// `2 * atanh(z) = ln((1+z)/(1-z))` for `0 <= z <= 1/3`, with tail bound.
fn two_atanh(z: &Interval, prec: u32) -> Interval {
    let z2 = z.mul(z);
    let mut term = z.clone();
    let mut sum = Interval::from_int(0, prec);
    // z <= 1/3, so each pair of terms gains log2(9) > 3 bits
    let terms = (prec as u64 + 8) / 3 + 2;
    for j in 0..terms {
        sum = sum.add(&term.div_int(2 * j as i64 + 1));
        term = term.mul(&z2);
    }
    // remaining sum <= term.hi / (1 - z^2) <= (9/8) term.hi < 2 term.hi
    let tail = Interval::new(Dyadic::zero(), term.hi.mul_pow2(1), prec);
    sum.add(&tail).mul_pow2(1)
}

fn ln2(prec: u32) -> Interval {
    let third = Interval::from_int(1, prec).div_int(3);
    two_atanh(&third, prec)
}

/// Enclosure of `ln x` for a positive dyadic `x`.
fn ln_dyadic(x: &Dyadic, prec: u32) -> Interval {
    let work = prec + 24;
    let msb = x.msb().unwrap();
    // x = m * 2^msb with m in [1, 2)
    let m = Interval::exact(x.mul_pow2(-msb), work);
    let one = Interval::from_int(1, work);
    let z = m.sub(&one).div(&m.add(&one));
    let mut out = two_atanh(&z, work);
    if msb != 0 {
        out = out.add(&ln2(work).mul_int(msb));
    }
    Interval::new(out.lo, out.hi, prec)
}
