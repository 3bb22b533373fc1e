//! Coefficient fields: arbitrary-precision rationals and Gaussian rationals.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Exact field arithmetic used by the generic matrix code.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
{
    fn conj(&self) -> Self;
    fn from_rational(q: Rational) -> Self;
}

impl Scalar for Rational {
    fn conj(&self) -> Self {
        self.clone()
    }

    fn from_rational(q: Rational) -> Self {
        q
    }
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses the exact text form `p/q` or `p`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("`{s}` is not an exact rational"));
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n = BigInt::from_str(n).map_err(|_| bad())?;
    let d = BigInt::from_str(d).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// Exact square root, if the rational is a perfect square.
pub fn sqrt_rational(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().magnitude();
    let d = q.denom().magnitude();
    let sn = n.sqrt();
    let sd = d.sqrt();
    if &(&sn * &sn) == n && &(&sd * &sd) == d {
        Some(Rational::new(BigInt::from(sn), BigInt::from(sd)))
    } else {
        None
    }
}

/// An element `re + im*i` of Q(i).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn i() -> Self {
        GaussianRational::new(Rational::zero(), Rational::one())
    }

    /// `i^k` for any integer exponent.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Self::one(),
            1 => Self::i(),
            2 => -Self::one(),
            _ => -Self::i(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    fn norm_sq(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_negative() {
            write!(f, "{}-{}*i", self.re, -self.im.clone())
        } else {
            write!(f, "{}+{}*i", self.re, self.im)
        }
    }
}

impl FromStr for GaussianRational {
    type Err = Error;

    /// Accepts `p/q+r/s*i`, `p/q-r/s*i`, or a bare rational.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let Some(body) = t.strip_suffix("*i") else {
            return Ok(GaussianRational::new(parse_rational(t)?, Rational::zero()));
        };
        // the real part carries at most a leading sign
        let split = body
            .char_indices()
            .skip(1)
            .find(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .ok_or_else(|| Error::Parse(format!("`{s}` is not a Gaussian rational")))?;
        let re = parse_rational(&body[..split])?;
        let im_txt = &body[split..];
        let im = parse_rational(im_txt.strip_prefix('+').unwrap_or(im_txt))?;
        Ok(GaussianRational::new(re, im))
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        GaussianRational::new(Rational::zero(), Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        GaussianRational::new(Rational::one(), Rational::zero())
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        GaussianRational::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        GaussianRational::new(self.re - o.re, self.im - o.im)
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        GaussianRational::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Div for GaussianRational {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let n = o.norm_sq();
        assert!(!n.is_zero(), "division by zero");
        let c = o.conj();
        let p = self * c;
        GaussianRational::new(p.re / &n, p.im / n)
    }
}

impl Scalar for GaussianRational {
    fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }

    fn from_rational(q: Rational) -> Self {
        GaussianRational::new(q, Rational::zero())
    }
}
