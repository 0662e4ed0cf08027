//! Dense polynomials with exact Gaussian-rational coefficients and the
//! normalized m-fold integral operator.
//!
//! For a monic `p` of degree `n`, `I_{m,λ}(p)` is the unique polynomial of
//! degree `n + m` whose derivatives of order `0..m` vanish at `λ` and whose
//! `m`-th derivative equals `(n+m)!/n! · p`. It is again monic.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::{Complex, Integer, Rational};

use crate::bigcomplex::BigComplex;
use crate::error::{Error, Result};
use crate::gauss::GaussRat;

/// `(n+m)!/n!` as an exact rising product.
pub fn rising_factorial_ratio(n: usize, m: usize) -> Integer {
    let mut acc = Integer::from(1);
    for k in n + 1..=n + m {
        acc *= k as u64;
    }
    acc
}

pub fn binomial(n: usize, k: usize) -> Integer {
    if k > n {
        return Integer::new();
    }
    Integer::from(n as u64).binomial(k as u32)
}

/// Polynomial with coefficient `k` multiplying `z^k`. The zero polynomial has
/// no coefficients; otherwise the last coefficient is nonzero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RatPoly {
    coeffs: Vec<GaussRat>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<GaussRat>) -> Self {
        while coeffs.last().is_some_and(GaussRat::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_rationals(coeffs: impl IntoIterator<Item = Rational>) -> Self {
        Self::new(coeffs.into_iter().map(GaussRat::real).collect())
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| GaussRat::real(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: GaussRat) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(GaussRat::one())
    }

    /// `z^k`.
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![GaussRat::zero(); k + 1];
        c[k] = GaussRat::one();
        Self::new(c)
    }

    /// `z - a`.
    pub fn linear_root(a: &GaussRat) -> Self {
        Self::new(vec![-a, GaussRat::one()])
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots<'a>(roots: impl IntoIterator<Item = &'a GaussRat>) -> Self {
        roots
            .into_iter()
            .fold(Self::one(), |acc, r| &acc * &Self::linear_root(r))
    }

    pub fn coeffs(&self) -> &[GaussRat] {
        &self.coeffs
    }

    /// Coefficient of `z^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> GaussRat {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Option<&GaussRat> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(GaussRat::is_one)
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(GaussRat::is_real)
    }

    /// Number of trailing zero coefficients, i.e. the order of vanishing at 0.
    pub fn low_order(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn scale(&self, s: &GaussRat) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn scale_int(&self, s: &Integer) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.scale_int(s)).collect())
    }

    /// `z^k · p`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![GaussRat::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        Self::new(c)
    }

    /// `p / z^k`; `None` unless `z^k` divides `p`.
    pub fn shift_down(&self, k: usize) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.low_order() < k {
            return None;
        }
        Some(Self::new(self.coeffs[k..].to_vec()))
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// `p(q(z))` by Horner's scheme.
    pub fn compose(&self, inner: &RatPoly) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * inner) + &Self::constant(c.clone()))
    }

    /// Exact evaluation at a Gaussian rational.
    pub fn eval_exact(&self, z: &GaussRat) -> GaussRat {
        let mut acc = GaussRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * z) + c;
        }
        acc
    }

    /// Horner evaluation at `z`, rounding each exact coefficient to `z`'s
    /// precision as it is used.
    pub fn eval(&self, z: &BigComplex) -> BigComplex {
        let prec = z.prec();
        let zc = z.inner();
        let mut acc = Complex::new(prec);
        for c in self.coeffs.iter().rev() {
            acc *= zc;
            acc += Complex::with_val(prec, (&c.re, &c.im));
        }
        BigComplex::from_inner(acc)
    }

    /// Exact `j`-th derivative.
    pub fn derivative(&self, j: usize) -> Self {
        if j > self.degree() || self.is_zero() {
            return Self::zero();
        }
        let out = self.coeffs[j..]
            .iter()
            .enumerate()
            .map(|(k, c)| c.scale_int(&rising_factorial_ratio(k, j)))
            .collect();
        Self::new(out)
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(GaussRat::zero());
        for (k, c) in self.coeffs.iter().enumerate() {
            let d = Rational::from((1, k as u64 + 1));
            out.push(c.scale(&d));
        }
        Self::new(out)
    }

    /// Normalized m-fold integral `I_{m,λ}(p)` of a monic polynomial.
    pub fn iterated_integral(&self, m: usize, lambda: &GaussRat) -> Result<Self> {
        if !self.is_monic() {
            return Err(Error::NotMonic);
        }
        Ok(self.iterated_integral_any(m, lambda))
    }

    /// Same normalization `(n+m)!/n!` with `n = deg p`, without requiring a
    /// monic input. The result is monic only when `p` is.
    pub fn iterated_integral_any(&self, m: usize, lambda: &GaussRat) -> Self {
        if m == 0 || self.is_zero() {
            return self.clone();
        }
        let n = self.degree();
        if lambda.is_zero() {
            // z^k -> k!/(k+m)! z^{k+m}, scaled by (n+m)!/n!
            let scale = rising_factorial_ratio(n, m);
            let mut out = vec![GaussRat::zero(); m];
            for (k, c) in self.coeffs.iter().enumerate() {
                let r = Rational::from((scale.clone(), rising_factorial_ratio(k, m)));
                out.push(c.scale(&r));
            }
            return Self::new(out);
        }
        let mut acc = self.clone();
        for _ in 0..m {
            let mut f = acc.antiderivative();
            let at = f.eval_exact(lambda);
            f = &f - &Self::constant(at);
            acc = f;
        }
        acc.scale_int(&rising_factorial_ratio(n, m))
    }

    /// Coordinates `a_k` in the scaled basis: `p = Σ binom(n,k) a_k z^k`.
    pub fn binomial_coords(&self) -> Vec<GaussRat> {
        let n = self.degree();
        (0..=n)
            .map(|k| {
                let b = Rational::from((1, binomial(n, k)));
                self.coeff(k).scale(&b)
            })
            .collect()
    }

    /// Coefficients `c_j = p^{(j)}(λ)/j!` of the expansion in powers of `z-λ`.
    pub fn taylor_coeffs(&self, lambda: &GaussRat) -> Vec<GaussRat> {
        // repeated synthetic division by (z - λ)
        let mut work: Vec<GaussRat> = self.coeffs.clone();
        let mut out = Vec::with_capacity(work.len());
        while !work.is_empty() {
            let mut carry = GaussRat::zero();
            let mut quotient = Vec::with_capacity(work.len());
            for c in work.iter().rev() {
                carry = &(&carry * lambda) + c;
                quotient.push(carry.clone());
            }
            let rem = quotient.pop().unwrap();
            out.push(rem);
            quotient.reverse();
            work = quotient;
        }
        out
    }

    /// Degree-`d` truncation of the Taylor expansion about `λ`, returned in
    /// the monomial basis.
    pub fn taylor_polynomial(&self, lambda: &GaussRat, d: usize) -> Self {
        if d >= self.degree() {
            return self.clone();
        }
        let shift = Self::linear_root(lambda);
        let c = self.taylor_coeffs(lambda);
        let mut acc = Self::zero();
        let mut basis = Self::one();
        for cj in c.iter().take(d + 1) {
            acc = &acc + &basis.scale(cj);
            basis = &basis * &shift;
        }
        acc
    }

    /// Exact coefficients rendered one per entry, lowest degree first.
    pub fn to_strings(&self) -> Vec<String> {
        if self.is_zero() {
            return vec!["0".into()];
        }
        self.coeffs.iter().map(ToString::to_string).collect()
    }

    pub fn parse_coeffs<S: AsRef<str>>(items: &[S]) -> Result<Self> {
        let coeffs = items
            .iter()
            .map(|s| s.as_ref().parse::<GaussRat>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(coeffs))
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.to_strings().join(", "))
    }
}

impl Add<&RatPoly> for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..len).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl Sub<&RatPoly> for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..len).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }
}

impl Mul<&RatPoly> for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![GaussRat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        RatPoly::new(out)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Coefficients of a polynomial rounded once to a fixed precision, for
/// repeated evaluation of `p` and `p'` inside iterative solvers.
#[derive(Clone, Debug)]
pub struct RoundedPoly {
    coeffs: Vec<Complex>,
    prec: u32,
}

impl RoundedPoly {
    pub fn new(p: &RatPoly, prec: u32) -> Self {
        let coeffs = p
            .coeffs()
            .iter()
            .map(|c| Complex::with_val(prec, (&c.re, &c.im)))
            .collect();
        Self { coeffs, prec }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    pub fn eval(&self, z: &Complex) -> Complex {
        let mut acc = Complex::new(self.prec);
        for c in self.coeffs.iter().rev() {
            acc *= z;
            acc += c;
        }
        acc
    }

    /// `(p(z), p'(z))` in one Horner pass.
    pub fn eval_with_derivative(&self, z: &Complex) -> (Complex, Complex) {
        let mut p = Complex::new(self.prec);
        let mut dp = Complex::new(self.prec);
        for c in self.coeffs.iter().rev() {
            dp *= z;
            dp += &p;
            p *= z;
            p += c;
        }
        (p, dp)
    }
}
