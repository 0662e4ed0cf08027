//! Gaussian rationals: complex numbers with exact rational parts.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use rug::ops::Pow;
use rug::{Integer, Rational};

use crate::error::Error;

/// An exact complex number `re + im·i` with rational parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GaussRat {
    pub re: Rational,
    pub im: Rational,
}

impl GaussRat {
    pub fn new(re: impl Into<Rational>, im: impl Into<Rational>) -> Self {
        Self {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn real(re: impl Into<Rational>) -> Self {
        Self::new(re, 0)
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::real(1)
    }

    pub fn i() -> Self {
        Self::new(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.im.is_zero() && self.re == 1
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// Squared modulus, exact.
    pub fn norm_sqr(&self) -> Rational {
        Rational::from(&self.re * &self.re) + Rational::from(&self.im * &self.im)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Self::new(
            Rational::from(&self.re / &n),
            -Rational::from(&self.im / &n),
        ))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc *= &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(Rational::from(&self.re * s), Rational::from(&self.im * s))
    }

    pub fn scale_int(&self, s: &Integer) -> Self {
        Self::new(Rational::from(&self.re * s), Rational::from(&self.im * s))
    }

    /// Modulus rounded to `f64`.
    pub fn abs_f64(&self) -> f64 {
        self.re.to_f64().hypot(self.im.to_f64())
    }
}

impl From<i64> for GaussRat {
    fn from(v: i64) -> Self {
        Self::real(v)
    }
}

impl From<Rational> for GaussRat {
    fn from(v: Rational) -> Self {
        Self::real(v)
    }
}

impl From<Integer> for GaussRat {
    fn from(v: Integer) -> Self {
        Self::real(v)
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat::new(-self.re, -self.im)
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat::new(-self.re.clone(), -self.im.clone())
    }
}

impl Add<&GaussRat> for &GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: &GaussRat) -> GaussRat {
        GaussRat::new(
            Rational::from(&self.re + &rhs.re),
            Rational::from(&self.im + &rhs.im),
        )
    }
}

impl Sub<&GaussRat> for &GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: &GaussRat) -> GaussRat {
        GaussRat::new(
            Rational::from(&self.re - &rhs.re),
            Rational::from(&self.im - &rhs.im),
        )
    }
}

impl Mul<&GaussRat> for &GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: &GaussRat) -> GaussRat {
        // real operands are the common case; skip the cross terms
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussRat::real(Rational::from(&self.re * &rhs.re));
        }
        let re = Rational::from(&self.re * &rhs.re) - Rational::from(&self.im * &rhs.im);
        let im = Rational::from(&self.re * &rhs.im) + Rational::from(&self.im * &rhs.re);
        GaussRat::new(re, im)
    }
}

impl Div<&GaussRat> for &GaussRat {
    type Output = GaussRat;
    /// Panics on division by zero.
    fn div(self, rhs: &GaussRat) -> GaussRat {
        let inv = rhs.recip().expect("division by zero Gaussian rational");
        self * &inv
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<GaussRat> for GaussRat {
            type Output = GaussRat;
            fn $m(self, rhs: GaussRat) -> GaussRat { (&self).$m(&rhs) }
        }
        impl $tr<&GaussRat> for GaussRat {
            type Output = GaussRat;
            fn $m(self, rhs: &GaussRat) -> GaussRat { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&GaussRat> for GaussRat {
    fn add_assign(&mut self, rhs: &GaussRat) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussRat> for GaussRat {
    fn sub_assign(&mut self, rhs: &GaussRat) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GaussRat> for GaussRat {
    fn mul_assign(&mut self, rhs: &GaussRat) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for GaussRat {
    /// `p/q`, `p/q+r/si`, or `r/si`; integers print without a denominator.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if !self.re.is_zero() {
            write!(f, "{}", self.re)?;
            if self.im > 0 {
                write!(f, "+")?;
            }
        }
        write!(f, "{}i", self.im)
    }
}

/// Parses an unsigned real token: integer, `p/q`, or decimal with optional exponent.
fn parse_real(tok: &str) -> Option<Rational> {
    if tok.is_empty() {
        return None;
    }
    if let Ok(q) = Rational::from_str(tok) {
        return Some(q);
    }
    let (mantissa, exp) = match tok.find(['e', 'E']) {
        Some(pos) => (&tok[..pos], tok[pos + 1..].parse::<i32>().ok()?),
        None => (tok, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((a, b)) => (a, b),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let num = Integer::from_str(if digits.is_empty() { "0" } else { &digits }).ok()?;
    let shift = exp - frac_part.len() as i32;
    let ten = Integer::from(10);
    let q = if shift >= 0 {
        Rational::from(num * ten.clone().pow(shift as u32))
    } else {
        Rational::from((num, ten.pow((-shift) as u32)))
    };
    Some(q)
}

/// Parses a signed term; returns (value, is_imaginary).
fn parse_term(sign: bool, body: &str) -> Option<(Rational, bool)> {
    let (body, imag) = match body.strip_suffix('i') {
        Some(b) => (b, true),
        None => (body, false),
    };
    let body = body.strip_suffix('*').unwrap_or(body);
    let v = if imag && body.is_empty() {
        Rational::from(1)
    } else {
        parse_real(body)?
    };
    Some((if sign { -v } else { v }, imag))
}

impl FromStr for GaussRat {
    type Err = Error;

    /// Accepts `3`, `-1/3`, `0.2`, `1e-3`, `i`, `-i`, `1/2i`, `2-0.5i`, `1/2+3/4i`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let err = || Error::Parse {
            what: "Gaussian rational",
            input: s.to_owned(),
        };
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(err());
        }
        // split into at most two signed terms; a sign right after an exponent marker is not a split point
        let bytes = t.as_bytes();
        let mut split = None;
        for k in 1..bytes.len() {
            if (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E') {
                split = Some(k);
            }
        }
        let mut out = GaussRat::zero();
        let mut seen_re = false;
        let mut seen_im = false;
        let parts: Vec<&str> = match split {
            Some(k) => vec![&t[..k], &t[k..]],
            None => vec![&t[..]],
        };
        for part in parts {
            let (sign, body) = match part.as_bytes()[0] {
                b'-' => (true, &part[1..]),
                b'+' => (false, &part[1..]),
                _ => (false, part),
            };
            let (v, imag) = parse_term(sign, body).ok_or_else(err)?;
            if imag {
                if seen_im {
                    return Err(err());
                }
                seen_im = true;
                out.im = v;
            } else {
                if seen_re {
                    return Err(err());
                }
                seen_re = true;
                out.re = v;
            }
        }
        Ok(out)
    }
}
