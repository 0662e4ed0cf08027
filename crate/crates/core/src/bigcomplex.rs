//! Arbitrary-precision complex numbers with an explicit working precision.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float};

use crate::gauss::GaussRat;

/// Smallest working precision accepted, in bits.
pub const MIN_PREC: u32 = 64;

/// A complex number backed by MPFR floats. Both parts share one precision;
/// binary operations return the smaller precision of the two operands.
#[derive(Clone, Debug, PartialEq)]
pub struct BigComplex(Complex);

impl BigComplex {
    fn clamp(prec: u32) -> u32 {
        prec.max(MIN_PREC)
    }

    pub fn zero(prec: u32) -> Self {
        Self(Complex::new(Self::clamp(prec)))
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        Self(Complex::with_val(Self::clamp(prec), (re, im)))
    }

    pub fn from_real(re: &Float, prec: u32) -> Self {
        Self(Complex::with_val(Self::clamp(prec), (re, 0)))
    }

    pub fn from_parts(re: &Float, im: &Float, prec: u32) -> Self {
        Self(Complex::with_val(Self::clamp(prec), (re, im)))
    }

    /// Correctly rounded image of an exact Gaussian rational.
    pub fn from_gauss(g: &GaussRat, prec: u32) -> Self {
        Self(Complex::with_val(Self::clamp(prec), (&g.re, &g.im)))
    }

    /// `e^{iθ}` at the given precision.
    pub fn cis(theta: &Float, prec: u32) -> Self {
        let p = Self::clamp(prec);
        let (s, c) = Float::with_val(p, theta).sin_cos(Float::new(p));
        Self(Complex::with_val(p, (c, s)))
    }

    pub fn inner(&self) -> &Complex {
        &self.0
    }

    pub fn into_inner(self) -> Complex {
        self.0
    }

    pub fn from_inner(c: Complex) -> Self {
        let p = c.prec().0.max(c.prec().1);
        Self(Complex::with_val(Self::clamp(p), c))
    }

    pub fn prec(&self) -> u32 {
        self.0.prec().0
    }

    /// Same value re-rounded to `prec` bits.
    pub fn with_prec(&self, prec: u32) -> Self {
        Self(Complex::with_val(Self::clamp(prec), &self.0))
    }

    pub fn re(&self) -> &Float {
        self.0.real()
    }

    pub fn im(&self) -> &Float {
        self.0.imag()
    }

    pub fn re_f64(&self) -> f64 {
        self.0.real().to_f64()
    }

    pub fn im_f64(&self) -> f64 {
        self.0.imag().to_f64()
    }

    pub fn is_zero(&self) -> bool {
        self.0.real().is_zero() && self.0.imag().is_zero()
    }

    pub fn conj(&self) -> Self {
        Self(self.0.clone().conj())
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.0.abs_ref())
    }

    pub fn abs_f64(&self) -> f64 {
        self.abs().to_f64()
    }

    /// `log|z|` as an `f64`; finite even when `|z|` overflows `f64`.
    pub fn ln_abs_f64(&self) -> f64 {
        self.abs().ln().to_f64()
    }

    pub fn arg_f64(&self) -> f64 {
        Float::with_val(self.prec(), self.0.arg_ref()).to_f64()
    }

    pub fn sqr(&self) -> Self {
        Self(self.0.clone().square())
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Self {
        Self(self.0.clone().sqrt())
    }

    /// Principal logarithm.
    pub fn ln(&self) -> Self {
        Self(self.0.clone().ln())
    }

    pub fn exp(&self) -> Self {
        Self(self.0.clone().exp())
    }

    pub fn powu(&self, k: u32) -> Self {
        Self(self.0.clone().pow(k))
    }

    pub fn powi(&self, k: i32) -> Self {
        Self(self.0.clone().pow(k))
    }

    pub fn recip(&self) -> Self {
        Self(self.0.clone().recip())
    }

    pub fn scale_f64(&self, s: f64) -> Self {
        Self(self.0.clone() * s)
    }

    pub fn scale(&self, s: &Float) -> Self {
        Self(Complex::with_val(self.prec(), &self.0 * s))
    }

    pub fn add_f64(&self, s: f64) -> Self {
        Self(self.0.clone() + s)
    }

    /// `|a - b|` as an `f64`.
    pub fn dist_f64(&self, other: &Self) -> f64 {
        (self - other).abs_f64()
    }

    /// Compares moduli without rounding to `f64`.
    pub fn cmp_abs(&self, other: &Self) -> Ordering {
        self.abs()
            .partial_cmp(&other.abs())
            .unwrap_or(Ordering::Equal)
    }

    /// Decimal rendering of both parts with enough digits for the precision.
    pub fn to_decimal_strings(&self) -> (String, String) {
        let digits = decimal_digits(self.prec());
        (
            self.0.real().to_string_radix(10, Some(digits)),
            self.0.imag().to_string_radix(10, Some(digits)),
        )
    }
}

/// Decimal digits that round-trip a binary mantissa of `prec` bits.
pub fn decimal_digits(prec: u32) -> usize {
    (f64::from(prec) * std::f64::consts::LOG10_2).ceil() as usize + 1
}

/// π at the given precision.
pub fn pi(prec: u32) -> Float {
    Float::with_val(prec.max(MIN_PREC), Constant::Pi)
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_decimal_strings();
        write!(f, "({re}, {im})")
    }
}

impl Neg for &BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex(-self.0.clone())
    }
}

impl Neg for BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex(-self.0)
    }
}

macro_rules! binop {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<&BigComplex> for &BigComplex {
            type Output = BigComplex;
            fn $m(self, rhs: &BigComplex) -> BigComplex {
                let p = self.prec().min(rhs.prec());
                BigComplex(Complex::with_val(p, (&self.0).$m(&rhs.0)))
            }
        }
        impl $tr<BigComplex> for BigComplex {
            type Output = BigComplex;
            fn $m(self, rhs: BigComplex) -> BigComplex { (&self).$m(&rhs) }
        }
        impl $tr<&BigComplex> for BigComplex {
            type Output = BigComplex;
            fn $m(self, rhs: &BigComplex) -> BigComplex { (&self).$m(rhs) }
        }
        impl $tr<BigComplex> for &BigComplex {
            type Output = BigComplex;
            fn $m(self, rhs: BigComplex) -> BigComplex { self.$m(&rhs) }
        }
    )*};
}
binop!(Add add, Sub sub, Mul mul, Div div);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precision_floor_and_min_rule() {
        let a = BigComplex::from_f64(1.0, 2.0, 10);
        assert_eq!(a.prec(), MIN_PREC);
        let b = BigComplex::from_f64(3.0, -1.0, 200);
        assert_eq!((&a * &b).prec(), MIN_PREC);
        assert_eq!((&b + &b).prec(), 200);
    }

    #[test]
    fn gauss_rounding_is_correct() {
        let g: GaussRat = "1/3+2/7i".parse().unwrap();
        let z = BigComplex::from_gauss(&g, 256);
        let three = BigComplex::from_f64(3.0, 0.0, 256);
        let back = &z * &three;
        assert!((back.re_f64() - 1.0).abs() < 1e-70);
    }

    #[test]
    fn cis_has_unit_modulus() {
        let prec = 300;
        let theta = Float::with_val(prec, 1.234);
        let u = BigComplex::cis(&theta, prec);
        let err = (u.abs() - 1u32).abs().to_f64();
        assert!(err < 1e-85, "{err}");
    }

    #[test]
    fn ln_abs_survives_overflow() {
        let z = BigComplex::from_f64(10.0, 0.0, 128).powu(400);
        assert!((z.ln_abs_f64() - 400.0 * 10f64.ln()).abs() < 1e-9);
    }
}
