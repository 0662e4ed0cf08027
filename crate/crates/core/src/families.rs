//! Generators for the polynomial families and the exact scalars `G_n(w)`
//! and `P_{n,m}(z)`.

use std::fmt;

use rug::{Integer, Rational};

use crate::error::{Error, Result};
use crate::exactpoly::{binomial, rising_factorial_ratio, RatPoly};
use crate::gauss::GaussRat;

/// A named polynomial family member.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    /// Borwein–Chen–Dilcher polynomial `Q_{n,m}`.
    Bcd { n: usize, m: usize },
    /// `(1+z)^n`.
    BinomPow { n: usize },
    LegendreMonic { n: usize },
    /// Monic ultraspherical polynomial with parameter `α + 1/2`.
    UltraMonic { n: usize, alpha: usize },
    /// `2^{1-n} T_n`.
    ChebyshevMonic { n: usize },
}

impl FamilySpec {
    pub fn generate(&self) -> RatPoly {
        match *self {
            FamilySpec::Bcd { n, m } => bcd(n, m),
            FamilySpec::BinomPow { n } => binom_pow(n),
            FamilySpec::LegendreMonic { n } => legendre_monic(n),
            FamilySpec::UltraMonic { n, alpha } => ultra_monic(n, alpha),
            FamilySpec::ChebyshevMonic { n } => chebyshev_monic(n),
        }
    }

    pub fn degree(&self) -> usize {
        match *self {
            FamilySpec::Bcd { n, .. }
            | FamilySpec::BinomPow { n }
            | FamilySpec::LegendreMonic { n }
            | FamilySpec::UltraMonic { n, .. }
            | FamilySpec::ChebyshevMonic { n } => n,
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Bcd { n, m } => write!(f, "bcd(n={n},m={m})"),
            FamilySpec::BinomPow { n } => write!(f, "binom(n={n})"),
            FamilySpec::LegendreMonic { n } => write!(f, "legendre(n={n})"),
            FamilySpec::UltraMonic { n, alpha } => write!(f, "ultra(n={n},alpha={alpha})"),
            FamilySpec::ChebyshevMonic { n } => write!(f, "chebyshev(n={n})"),
        }
    }
}

/// `Q_{n,m}(z) = Σ_{k=0}^{n} binom(n+m, k+m) z^k`.
pub fn bcd(n: usize, m: usize) -> RatPoly {
    RatPoly::new(
        (0..=n)
            .map(|k| GaussRat::from(binomial(n + m, k + m)))
            .collect(),
    )
}

/// `(1+z)^n`.
pub fn binom_pow(n: usize) -> RatPoly {
    bcd(n, 0)
}

/// Monic Legendre polynomial from Rodrigues' formula,
/// `(-1)^n n!/(2n)! · dⁿ/dzⁿ (1-z²)^n`.
pub fn legendre_monic(n: usize) -> RatPoly {
    // (1 - z^2)^n = Σ_j binom(n,j) (-1)^j z^{2j}
    let mut c = vec![GaussRat::zero(); 2 * n + 1];
    for j in 0..=n {
        let mut b = binomial(n, j);
        if j % 2 == 1 {
            b = -b;
        }
        c[2 * j] = GaussRat::from(b);
    }
    let dn = RatPoly::new(c).derivative(n);
    let mut s = Rational::from((Integer::from(1), rising_factorial_ratio(n, n)));
    if n % 2 == 1 {
        s = -s;
    }
    dn.scale(&GaussRat::real(s))
}

/// Coefficient `c_k` of the monic recurrence `P_{k+1} = z P_k - c_k P_{k-1}`
/// for parameter `α + 1/2`: `k(k+2α) / (4(k+α+1/2)(k+α-1/2))`.
pub fn ultra_recurrence_coeff(k: usize, alpha: usize) -> Rational {
    let k = k as i64;
    let a = alpha as i64;
    // 4(k+α+1/2)(k+α-1/2) = (2k+2α+1)(2k+2α-1)
    Rational::from((k * (k + 2 * a), (2 * k + 2 * a + 1) * (2 * k + 2 * a - 1)))
}

/// Monic ultraspherical polynomial with parameter `α + 1/2`.
pub fn ultra_monic(n: usize, alpha: usize) -> RatPoly {
    monic_recurrence(n, |k| ultra_recurrence_coeff(k, alpha))
}

/// `2^{1-n} T_n` for `n ≥ 1`, and `1` for `n = 0`.
pub fn chebyshev_monic(n: usize) -> RatPoly {
    monic_recurrence(n, |k| {
        if k == 1 {
            Rational::from((1, 2))
        } else {
            Rational::from((1, 4))
        }
    })
}

fn monic_recurrence(n: usize, coeff: impl Fn(usize) -> Rational) -> RatPoly {
    let z = RatPoly::monomial(1);
    let mut prev = RatPoly::one();
    if n == 0 {
        return prev;
    }
    let mut cur = z.clone();
    for k in 1..n {
        let next = &(&z * &cur) - &prev.scale(&GaussRat::real(coeff(k)));
        prev = cur;
        cur = next;
    }
    cur
}

/// `G_n(w) = ∫_w^1 (1-x²)^n dx`, exact by termwise integration.
pub fn gn_exact(n: usize, w: &GaussRat) -> GaussRat {
    let w2 = w * w;
    let mut wpow = w.clone(); // w^{2k+1}
    let mut acc = GaussRat::zero();
    for k in 0..=n {
        let mut b = binomial(n, k);
        if k % 2 == 1 {
            b = -b;
        }
        let term = &GaussRat::one() - &wpow;
        acc += &term.scale(&Rational::from((b, 2 * k as u64 + 1)));
        wpow = &wpow * &w2;
    }
    acc
}

/// `P_{n,m}(z) = ∫_0^1 (1-t)^{m-1}(1+zt)^n dt = n!(m-1)!/(n+m)! · Q_{n,m}(z)`.
pub fn pnm_exact(n: usize, m: usize, z: &GaussRat) -> Result<GaussRat> {
    if m == 0 {
        return Err(Error::InvalidParameter("P_{n,m} needs m >= 1".into()));
    }
    // n!(m-1)!/(n+m)! = 1 / (m · binom(n+m, m))
    let denom = binomial(n + m, m) * Integer::from(m as u64);
    let s = Rational::from((Integer::from(1), denom));
    Ok(bcd(n, m).eval_exact(z).scale(&s))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> GaussRat {
        GaussRat::real(Rational::from((n, d)))
    }

    #[test]
    fn bcd_examples() {
        assert_eq!(bcd(2, 1), RatPoly::from_ints(&[3, 3, 1]));
        for n in 0..8 {
            assert_eq!(bcd(n, 0), RatPoly::from_ints(&[1, 1]).pow(n as u32));
            assert!(bcd(n, 3).is_monic());
        }
    }

    #[test]
    fn bcd_matches_truncated_binomial_expansion() {
        for n in 0..12 {
            for m in 0..12 {
                let full = binom_pow(n + m);
                let head = RatPoly::new((0..m).map(|k| full.coeff(k)).collect());
                let q = (&full - &head).shift_down(m).unwrap();
                assert_eq!(q, bcd(n, m), "n={n} m={m}");
            }
        }
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre_monic(0), RatPoly::one());
        assert_eq!(
            legendre_monic(2),
            RatPoly::new(vec![q(-1, 3), GaussRat::zero(), GaussRat::one()])
        );
        for n in (1..20).step_by(2) {
            assert!(legendre_monic(n).coeff(0).is_zero());
        }
    }

    #[test]
    fn ultra_examples() {
        for n in 0..=30 {
            assert_eq!(ultra_monic(n, 0), legendre_monic(n), "n={n}");
        }
        for a in 0..4 {
            assert_eq!(ultra_monic(1, a), RatPoly::monomial(1));
        }
    }

    #[test]
    fn ultra_parity() {
        let neg_z = RatPoly::from_ints(&[0, -1]);
        for a in 0..4 {
            for n in 0..15 {
                let p = ultra_monic(n, a);
                let flipped = p.compose(&neg_z);
                let want = if n % 2 == 0 { p.clone() } else { -&p };
                assert_eq!(flipped, want);
            }
        }
    }

    #[test]
    fn chebyshev_examples() {
        assert_eq!(chebyshev_monic(1), RatPoly::monomial(1));
        assert_eq!(chebyshev_monic(2), RatPoly::new(vec![q(-1, 2), GaussRat::zero(), GaussRat::one()]));
        assert_eq!(
            chebyshev_monic(3),
            RatPoly::new(vec![GaussRat::zero(), q(-3, 4), GaussRat::zero(), GaussRat::one()])
        );
    }

    #[test]
    fn gn_examples() {
        assert_eq!(gn_exact(1, &GaussRat::zero()), q(2, 3));
        for n in 0..10 {
            assert!(gn_exact(n, &GaussRat::one()).is_zero());
        }
    }

    #[test]
    fn gn_reflection() {
        for n in 0..12 {
            for w in ["1/3", "-2/5", "1/2+1/4i", "3i"] {
                let w: GaussRat = w.parse().unwrap();
                let lhs = &gn_exact(n, &w) + &gn_exact(n, &-&w);
                let rhs = gn_exact(n, &GaussRat::zero()).scale(&Rational::from(2));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn pnm_examples() {
        let z: GaussRat = "2/3-1/5i".parse().unwrap();
        assert!(pnm_exact(0, 1, &z).unwrap().is_one());
        for n in 0..6 {
            for m in 1..6 {
                assert_eq!(pnm_exact(n, m, &GaussRat::zero()).unwrap(), q(1, m as i64));
            }
        }
        assert!(pnm_exact(3, 0, &z).is_err());
    }

    #[test]
    fn pnm_normalization_recovers_q() {
        let z: GaussRat = "-1/7+2i".parse().unwrap();
        for n in 1..10 {
            let scale = Rational::from((rising_factorial_ratio(n, n), rising_factorial_ratio(0, n - 1)));
            let lhs = pnm_exact(n, n, &z).unwrap().scale(&scale);
            assert_eq!(lhs, bcd(n, n).eval_exact(&z));
        }
    }

    #[test]
    fn pnm_change_of_variables() {
        for z in ["1/2", "3", "-3/5+1/2i", "2i"] {
            let z: GaussRat = z.parse().unwrap();
            let one = GaussRat::one();
            let w = &(&one - &z) / &(&one + &z);
            for n in 1..10 {
                let lhs = pnm_exact(n, n, &z).unwrap();
                let pref = &(&one + &z).pow(2 * n as u32)
                    / &(&GaussRat::real(Integer::from(1) << (2 * n as u32)) * &z.pow(n as u32));
                let tail = (&one - &(&w * &w))
                    .pow(n as u32)
                    .scale(&Rational::from((1, 2 * n as u64)));
                let rhs = &pref * &(&gn_exact(n - 1, &w) + &tail);
                assert_eq!(lhs, rhs, "n={n}");
            }
        }
    }
}
