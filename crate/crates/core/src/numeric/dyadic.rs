//! Binary floating-point numbers `m * 2^e` with arbitrary-size mantissa and
//! explicit rounding direction.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    Floor,
    Ceil,
    Nearest,
}

/// Exact value `man * 2^exp`, kept with an odd mantissa (or zero).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    man: BigInt,
    exp: i64,
}

fn pow2(k: u64) -> BigInt {
    BigInt::one() << k
}

/// Floor division by `2^k`.
fn shr_floor(x: &BigInt, k: u64) -> BigInt {
    if k == 0 {
        return x.clone();
    }
    x.div_floor(&pow2(k))
}

impl Dyadic {
    pub fn new(man: BigInt, exp: i64) -> Self {
        if man.is_zero() {
            return Dyadic { man, exp: 0 };
        }
        let tz = man.trailing_zeros().unwrap_or(0);
        if tz == 0 {
            Dyadic { man, exp }
        } else {
            Dyadic {
                man: man >> tz,
                exp: exp + tz as i64,
            }
        }
    }

    pub fn zero() -> Self {
        Dyadic {
            man: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn from_int(v: impl Into<BigInt>) -> Self {
        Self::new(v.into(), 0)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.man
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.man.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.man.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.man.is_positive()
    }

    pub fn signum(&self) -> i8 {
        match self.man.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            man: self.man.abs(),
            exp: self.exp,
        }
    }

    /// Multiply by `2^k`, exact.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic {
            man: self.man.clone(),
            exp: self.exp + k,
        }
    }

    /// Position of the most significant bit: `2^(msb) <= |x| < 2^(msb+1)`.
    pub fn msb(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.man.bits() as i64 - 1 + self.exp)
        }
    }

    /// Round to at most `prec` significant bits.
    pub fn round(&self, prec: u32, mode: Round) -> Self {
        let bits = self.man.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let shift = bits - prec as u64;
        let man = match mode {
            Round::Floor => shr_floor(&self.man, shift),
            Round::Ceil => -shr_floor(&-&self.man, shift),
            Round::Nearest => shr_floor(&(&self.man + pow2(shift - 1)), shift),
        };
        Dyadic::new(man, self.exp + shift as i64)
    }

    /// Round to a multiple of `2^exp` (fixed-point rounding).
    pub fn round_to_exp(&self, exp: i64, mode: Round) -> Self {
        if self.is_zero() || self.exp >= exp {
            return self.clone();
        }
        let shift = (exp - self.exp) as u64;
        let man = match mode {
            Round::Floor => shr_floor(&self.man, shift),
            Round::Ceil => -shr_floor(&-&self.man, shift),
            Round::Nearest => shr_floor(&(&self.man + pow2(shift - 1)), shift),
        };
        Dyadic::new(man, exp)
    }

    /// `a / b` rounded to `prec` significant bits.
    pub fn div_round(a: &Dyadic, b: &Dyadic, prec: u32, mode: Round) -> Dyadic {
        assert!(!b.is_zero(), "division by zero");
        if a.is_zero() {
            return Dyadic::zero();
        }
        let mut num = a.man.clone();
        let mut den = b.man.clone();
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        let k = prec as i64 + 2 + den.bits() as i64 - num.bits() as i64;
        let k = k.max(0);
        let scaled = num << k as u64;
        let (q, r) = scaled.div_mod_floor(&den);
        let exp = a.exp - b.exp - k;
        let q = match mode {
            Round::Ceil if !r.is_zero() => q + 1,
            Round::Nearest if (&r << 1u32) >= den => q + 1,
            _ => q,
        };
        Dyadic::new(q, exp).round(prec, mode)
    }

    pub fn from_rational(r: &BigRational, prec: u32, mode: Round) -> Dyadic {
        Self::div_round(
            &Dyadic::from_int(r.numer().clone()),
            &Dyadic::from_int(r.denom().clone()),
            prec,
            mode,
        )
    }

    /// Square root of a nonnegative value, rounded to `prec` bits.
    pub fn sqrt_round(&self, prec: u32, mode: Round) -> Dyadic {
        assert!(!self.is_negative(), "square root of a negative number");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let want = 2 * (prec as i64 + 2);
        let mut t = (want - self.man.bits() as i64).max(0);
        if (self.exp - t).rem_euclid(2) != 0 {
            t += 1;
        }
        let scaled = &self.man << t as u64;
        let s = scaled.sqrt();
        let exact = &s * &s == scaled;
        let s = match mode {
            Round::Ceil if !exact => s + 1,
            Round::Nearest => {
                // compare scaled with (s + 1/2)^2 = s^2 + s + 1/4
                let four = BigInt::from(4);
                if &scaled * &four >= (&s * &s + &s) * &four + 1 {
                    s + 1
                } else {
                    s
                }
            }
            _ => s,
        };
        Dyadic::new(s, (self.exp - t) / 2).round(prec, mode)
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.man << self.exp as u64)
        } else {
            BigRational::new(self.man.clone(), pow2((-self.exp) as u64))
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let r = self.round(60, Round::Nearest);
        let m = r.man.to_f64().unwrap();
        let mut e = r.exp;
        let mut v = m;
        while e > 0 {
            let step = e.min(1000);
            v *= 2f64.powi(step as i32);
            e -= step;
        }
        while e < 0 {
            let step = (-e).min(1000);
            v /= 2f64.powi(step as i32);
            e += step;
        }
        v
    }

    /// Nearest dyadic to an `f64` (exact: every finite double is dyadic).
    pub fn from_f64(v: f64) -> Dyadic {
        assert!(v.is_finite());
        if v == 0.0 {
            return Dyadic::zero();
        }
        let bits = v.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let exp_bits = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (man, exp) = if exp_bits == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), exp_bits - 1075)
        };
        Dyadic::new(BigInt::from(man) * sign, exp)
    }

    /// Decimal rendering with `digits` significant digits (for display only).
    pub fn to_decimal(&self, digits: usize) -> String {
        rational_to_decimal(&self.to_rational(), digits)
    }
}

/// Decimal scientific-free rendering of a rational rounded to `digits`
/// significant digits.
pub fn rational_to_decimal(r: &BigRational, digits: usize) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let neg = r.is_negative();
    let a = r.abs();
    // find power of ten p with 10^p <= a < 10^(p+1)
    let ten = BigInt::from(10);
    let mut p: i64 = 0;
    let mut scaled = a.clone();
    let one = BigRational::one();
    let tenr = BigRational::from_integer(ten.clone());
    while scaled >= tenr {
        scaled /= &tenr;
        p += 1;
    }
    while scaled < one {
        scaled *= &tenr;
        p -= 1;
    }
    let shift = digits as i64 - 1 - p;
    let factor = if shift >= 0 {
        BigRational::from_integer(ten.pow(shift as u32))
    } else {
        BigRational::new(BigInt::one(), ten.pow((-shift) as u32))
    };
    let v = (&a * factor).round().to_integer();
    let mut s = v.to_string();
    // place the decimal point: value = v * 10^(-shift)
    let out = if shift <= 0 {
        s.push_str(&"0".repeat((-shift) as usize));
        s
    } else {
        let shift = shift as usize;
        if s.len() <= shift {
            let zeros = "0".repeat(shift - s.len());
            format!("0.{zeros}{s}")
        } else {
            let (int, frac) = s.split_at(s.len() - shift);
            format!("{int}.{frac}")
        }
    };
    if neg {
        format!("-{out}")
    } else {
        out
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let e = self.exp.min(other.exp);
        let a = &self.man << (self.exp - e) as u64;
        let b = &other.man << (other.exp - e) as u64;
        a.cmp(&b)
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{}", self.man, self.exp)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(20))
    }
}

impl std::ops::Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(rhs.exp);
        let a = &self.man << (self.exp - e) as u64;
        let b = &rhs.man << (rhs.exp - e) as u64;
        Dyadic::new(a + b, e)
    }
}

impl std::ops::Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        self + &(-rhs)
    }
}

impl std::ops::Mul for &Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        Dyadic::new(&self.man * &rhs.man, self.exp + rhs.exp)
    }
}

impl std::ops::Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            man: -&self.man,
            exp: self.exp,
        }
    }
}

impl std::ops::Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        -&self
    }
}

/// Round-to-nearest working-precision real, a thin wrapper used where
/// certified bounds are not needed (minimax fitting).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Real {
    v: Dyadic,
    prec: u32,
}

impl Real {
    pub fn new(v: Dyadic, prec: u32) -> Self {
        Real {
            v: v.round(prec, Round::Nearest),
            prec,
        }
    }

    pub fn from_int(v: i64, prec: u32) -> Self {
        Real::new(Dyadic::from_int(v), prec)
    }

    pub fn from_f64(v: f64, prec: u32) -> Self {
        Real::new(Dyadic::from_f64(v), prec)
    }

    pub fn from_rational(r: &BigRational, prec: u32) -> Self {
        Real {
            v: Dyadic::from_rational(r, prec, Round::Nearest),
            prec,
        }
    }

    pub fn zero(prec: u32) -> Self {
        Real {
            v: Dyadic::zero(),
            prec,
        }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn dyadic(&self) -> &Dyadic {
        &self.v
    }

    pub fn to_f64(&self) -> f64 {
        self.v.to_f64()
    }

    pub fn abs(&self) -> Real {
        Real {
            v: self.v.abs(),
            prec: self.prec,
        }
    }

    pub fn is_negative(&self) -> bool {
        self.v.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.v.is_positive()
    }

    pub fn signum(&self) -> i8 {
        self.v.signum()
    }

    pub fn mul_pow2(&self, k: i64) -> Real {
        Real {
            v: self.v.mul_pow2(k),
            prec: self.prec,
        }
    }

    pub fn sqrt(&self) -> Real {
        Real {
            v: self.v.sqrt_round(self.prec, Round::Nearest),
            prec: self.prec,
        }
    }

    /// Natural logarithm (positive argument), correct to about `prec` bits.
    pub fn ln(&self) -> Real {
        let iv = super::interval::Interval::exact(self.v.clone(), self.prec + 16).ln();
        Real::new(iv.mid(), self.prec)
    }

    pub fn to_decimal(&self, digits: usize) -> String {
        self.v.to_decimal(digits)
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.v.to_decimal(25))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.v.to_decimal(25))
    }
}

macro_rules! real_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl std::ops::$tr<&Real> for &Real {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real {
                let prec = self.prec.max(rhs.prec);
                let f: fn(&Dyadic, &Dyadic, u32) -> Dyadic = $body;
                Real {
                    v: f(&self.v, &rhs.v, prec),
                    prec,
                }
            }
        }
        impl std::ops::$tr<Real> for Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                std::ops::$tr::$m(&self, &rhs)
            }
        }
        impl std::ops::$tr<&Real> for Real {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real {
                std::ops::$tr::$m(&self, rhs)
            }
        }
        impl std::ops::$tr<Real> for &Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                std::ops::$tr::$m(self, &rhs)
            }
        }
    };
}

real_binop!(Add, add, |a, b, p| (a + b).round(p, Round::Nearest));
real_binop!(Sub, sub, |a, b, p| (a - b).round(p, Round::Nearest));
real_binop!(Mul, mul, |a, b, p| (a * b).round(p, Round::Nearest));
real_binop!(Div, div, |a, b, p| Dyadic::div_round(a, b, p, Round::Nearest));

impl std::ops::Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real {
            v: -&self.v,
            prec: self.prec,
        }
    }
}

impl std::ops::Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn rounding_directions() {
        let third = rat(1, 3);
        let lo = Dyadic::from_rational(&third, 20, Round::Floor);
        let hi = Dyadic::from_rational(&third, 20, Round::Ceil);
        assert!(lo.to_rational() < third && third < hi.to_rational());
        let neg = Dyadic::from_rational(&-third.clone(), 20, Round::Floor);
        assert_eq!(neg, -hi.clone());
        assert!(hi.to_rational() - lo.to_rational() <= rat(1, 1 << 20));
    }

    #[test]
    fn negative_round_floor() {
        let x = Dyadic::new(BigInt::from(-7), 0); // -7 -> 2 bits floor: -8
        assert_eq!(x.round(2, Round::Floor).to_rational(), rat(-8, 1));
        assert_eq!(x.round(2, Round::Ceil).to_rational(), rat(-6, 1));
    }

    #[test]
    fn square_roots() {
        let two = Dyadic::from_int(2);
        let lo = two.sqrt_round(64, Round::Floor);
        let hi = two.sqrt_round(64, Round::Ceil);
        assert!((&lo * &lo).to_rational() < rat(2, 1));
        assert!((&hi * &hi).to_rational() > rat(2, 1));
        assert_eq!(Dyadic::from_int(16).sqrt_round(10, Round::Ceil), Dyadic::from_int(4));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(rational_to_decimal(&rat(1, 8), 3), "0.125");
        assert_eq!(rational_to_decimal(&rat(-2, 3), 4), "-0.6667");
        assert_eq!(rational_to_decimal(&rat(12345, 1), 3), "12300");
    }

    #[test]
    fn f64_roundtrip() {
        for v in [0.1, -3.75, 1e-300, 12345.678] {
            assert_eq!(Dyadic::from_f64(v).to_f64(), v);
        }
    }

    proptest! {
        #[test]
        fn division_brackets(p in -1000i64..1000, q in 1i64..1000, prec in 4u32..80) {
            let r = rat(p, q);
            let lo = Dyadic::from_rational(&r, prec, Round::Floor).to_rational();
            let hi = Dyadic::from_rational(&r, prec, Round::Ceil).to_rational();
            prop_assert!(lo <= r && r <= hi);
        }
    }
}
