//! Exact coefficient arithmetic: rationals and Gaussian rationals.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational literal {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

/// Exact `k`-th root of a non-negative integer, if it is a perfect power.
fn exact_int_root(v: &BigInt, k: u32) -> Option<BigInt> {
    if v.is_negative() {
        return None;
    }
    let r = v.nth_root(k);
    (num_traits::pow(r.clone(), k as usize) == *v).then_some(r)
}

/// Exact square root of a non-negative rational, if it is rational.
pub fn rational_sqrt(v: &Rational) -> Option<Rational> {
    rational_root(v, 2)
}

pub fn rational_root(v: &Rational, k: u32) -> Option<Rational> {
    let n = exact_int_root(v.numer(), k)?;
    let d = exact_int_root(v.denom(), k)?;
    Some(Rational::new(n, d))
}

/// `base^exponent` for a positive rational base and rational exponent, when the result is rational.
pub fn rational_pow(base: &Rational, exponent: &Rational) -> Option<Rational> {
    if !base.is_positive() {
        return None;
    }
    let p: i64 = exponent.numer().try_into().ok()?;
    let q: u32 = exponent.denom().try_into().ok()?;
    let powered = if p >= 0 {
        num_traits::pow(base.clone(), p as usize)
    } else {
        num_traits::pow(base.recip(), (-p) as usize)
    };
    rational_root(&powered, q)
}

/// Gaussian rational `re + i·im`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Cx {
    pub re: Rational,
    pub im: Rational,
}

impl Cx {
    pub fn new(re: Rational, im: Rational) -> Self {
        Cx { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Cx { re, im: Rational::zero() }
    }

    pub fn from_int(v: i64) -> Self {
        Cx::real(int(v))
    }

    pub fn zero() -> Self {
        Cx::default()
    }

    pub fn one() -> Self {
        Cx::from_int(1)
    }

    pub fn i() -> Self {
        Cx { re: Rational::zero(), im: Rational::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Cx { re: self.re.clone(), im: -self.im.clone() }
    }

    /// `|z|²`
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Cx { re: &self.re * k, im: &self.im * k }
    }

    pub fn inv(&self) -> Option<Self> {
        let d = self.norm_sqr();
        if d.is_zero() {
            return None;
        }
        Some(Cx { re: &self.re / &d, im: -(&self.im / &d) })
    }

    /// Multiplies by `i`.
    pub fn mul_i(&self) -> Self {
        Cx { re: -self.im.clone(), im: self.re.clone() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Cx::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }
}

impl fmt::Debug for Cx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) if self.im.is_negative() => write!(f, "({}-{}i)", self.re, -self.im.clone()),
            (false, false) => write!(f, "({}+{}i)", self.re, self.im),
        }
    }
}

impl From<Rational> for Cx {
    fn from(r: Rational) -> Self {
        Cx::real(r)
    }
}

impl From<i64> for Cx {
    fn from(v: i64) -> Self {
        Cx::from_int(v)
    }
}

impl<'a> Add<&'a Cx> for &'a Cx {
    type Output = Cx;
    fn add(self, o: &Cx) -> Cx {
        Cx { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl<'a> Sub<&'a Cx> for &'a Cx {
    type Output = Cx;
    fn sub(self, o: &Cx) -> Cx {
        Cx { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl<'a> Mul<&'a Cx> for &'a Cx {
    type Output = Cx;
    fn mul(self, o: &Cx) -> Cx {
        if self.im.is_zero() && o.im.is_zero() {
            return Cx::real(&self.re * &o.re);
        }
        Cx {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl<'a> Div<&'a Cx> for &'a Cx {
    type Output = Cx;
    fn div(self, o: &Cx) -> Cx {
        self * &o.inv().expect("division by zero Gaussian rational")
    }
}

impl Neg for &Cx {
    type Output = Cx;
    fn neg(self) -> Cx {
        Cx { re: -self.re.clone(), im: -self.im.clone() }
    }
}

impl Neg for Cx {
    type Output = Cx;
    fn neg(self) -> Cx {
        Cx { re: -self.re, im: -self.im }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Cx> for Cx {
            type Output = Cx;
            fn $m(self, o: Cx) -> Cx {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Cx> for Cx {
            type Output = Cx;
            fn $m(self, o: &Cx) -> Cx {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Cx> for Cx {
    fn add_assign(&mut self, o: &Cx) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl SubAssign<&Cx> for Cx {
    fn sub_assign(&mut self, o: &Cx) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl MulAssign<&Cx> for Cx {
    fn mul_assign(&mut self, o: &Cx) {
        *self = &*self * o;
    }
}
