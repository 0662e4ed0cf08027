//! Asymptotic models for iterated integrals and the statistics used to
//! compare them with exact values: ratio errors, n-th roots, logarithmic
//! potentials of zero counting measures and angular equidistribution.

use rug::ops::Pow;
use rug::{Float, Integer};

use crate::bigcomplex::{pi, BigComplex};
use crate::error::{Error, Result};
use crate::exactpoly::RatPoly;
use crate::families::{bcd, chebyshev_monic, ultra_monic};
use crate::gauss::GaussRat;
use crate::regions::{
    classify_disc, classify_e, classify_f, classify_level, default_tol, phi, psi_interval,
    tau_interval, Region, RegionLabel,
};
use crate::rootfind::default_precision;

/// Fixed evaluation points in `E1` (outside `Γ`, `|z| > 1`).
pub const GRID_E1: [&str; 10] = [
    "2", "3+i", "5", "4-3i", "-7", "2-2i", "6i", "-3+5i", "1+4i", "-8-3i",
];

/// Fixed evaluation points in `E2`.
pub const GRID_E2: [&str; 10] = [
    "1/5", "-3/10", "1/2i", "0", "-1", "3/10+3/10i", "-2", "3i", "-2+3i", "1/2",
];

/// The two grids as exact points, `E1` first.
pub fn strong_asymptotic_grid() -> Vec<GaussRat> {
    GRID_E1
        .iter()
        .chain(GRID_E2.iter())
        .map(|s| s.parse().expect("grid literal"))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModelFamily {
    /// `Q_{n,n}`.
    Qnn,
    /// `Q_{n,n+1}`.
    Qnn1,
    /// `I_{2n}` of the monic ultraspherical polynomial of degree `2n`,
    /// parameter `α + 1/2`.
    UltraEven(usize),
    /// `I_{2n+1}` of the degree `2n+1` one.
    UltraOdd(usize),
    /// `Q_{n,m} / n^{m-1}` for fixed `m ≥ 1`.
    FixedM(usize),
}

impl std::fmt::Display for ModelFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Qnn => write!(f, "qnn"),
            Self::Qnn1 => write!(f, "qnn1"),
            Self::UltraEven(a) => write!(f, "ultra_even({a})"),
            Self::UltraOdd(a) => write!(f, "ultra_odd({a})"),
            Self::FixedM(m) => write!(f, "fixed_m({m})"),
        }
    }
}

/// A model family together with the region of the evaluation point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AsymptoticModel {
    pub family: ModelFamily,
    pub region: RegionLabel,
}

impl AsymptoticModel {
    /// Classifies `z` with the split relevant to `family`.
    pub fn at(family: ModelFamily, z: &BigComplex) -> Self {
        let tol = default_tol(z.prec());
        let region = match family {
            ModelFamily::Qnn | ModelFamily::Qnn1 => classify_e(z, tol),
            ModelFamily::UltraEven(_) | ModelFamily::UltraOdd(_) => classify_f(z, tol),
            ModelFamily::FixedM(_) => classify_disc(z, tol),
        };
        Self { family, region }
    }
}

/// Working precision for degree-`d` evaluations.
pub fn eval_precision(degree: usize) -> u32 {
    default_precision(degree) + 64
}

fn pole(what: &'static str) -> Error {
    Error::Pole(what)
}

/// `√(πn)`.
fn sqrt_pi_n(n: usize, prec: u32) -> Float {
    (pi(prec) * n as u32).sqrt()
}

fn pow2(e: i64, prec: u32) -> Float {
    Float::with_val(prec, 1u32) << e as i32
}

/// Right-hand side of the asymptotic formula for `family` at `z`.
pub fn model_value(family: ModelFamily, n: usize, z: &BigComplex) -> Result<BigComplex> {
    if n == 0 {
        return Err(Error::InvalidParameter("model needs n >= 1".into()));
    }
    let model = AsymptoticModel::at(family, z);
    if model.region.on_boundary {
        return Err(Error::AmbiguousRegion);
    }
    let prec = z.prec();
    let one_minus = |z: &BigComplex| -> Result<BigComplex> {
        let d = (-z).add_f64(1.0);
        if d.is_zero() {
            Err(pole("z = 1"))
        } else {
            Ok(d)
        }
    };
    let one_plus_sq = |z: &BigComplex| -> Result<BigComplex> {
        let d = z.sqr().add_f64(1.0);
        if d.is_zero() {
            Err(pole("z = ±i"))
        } else {
            Ok(d)
        }
    };
    let k = n as u32;
    let out = match (family, model.region.region) {
        (ModelFamily::Qnn, Region::E1) | (ModelFamily::Qnn1, Region::E1) => {
            if z.is_zero() {
                return Err(pole("z = 0"));
            }
            let extra = u32::from(family == ModelFamily::Qnn1);
            &z.add_f64(1.0).powu(2 * k + extra) / &z.powu(k + extra)
        }
        (ModelFamily::Qnn, Region::E2) | (ModelFamily::Qnn1, Region::E2) => {
            let mut c = pow2(2 * n as i64, prec) / sqrt_pi_n(n, prec);
            if family == ModelFamily::Qnn1 {
                c *= 2u32;
            }
            one_minus(z)?.recip().scale(&c)
        }
        (ModelFamily::UltraEven(a), Region::F1) | (ModelFamily::UltraOdd(a), Region::F1) => {
            let odd = u32::from(matches!(family, ModelFamily::UltraOdd(_)));
            let e = (2 * k + odd) as i32 - a as i32;
            &z.sqr().add_f64(-1.0).powi(e) * &z.powu(2 * a as u32)
        }
        (ModelFamily::UltraEven(a), Region::F2) | (ModelFamily::UltraOdd(a), Region::F2) => {
            let odd = matches!(family, ModelFamily::UltraOdd(_));
            let e = 2 * n as i64 + i64::from(odd) - a as i64;
            let mut c = pow2(e, prec) / sqrt_pi_n(n, prec);
            if n % 2 == 1 {
                c = -c;
            }
            let zp = z.powu(2 * k + if odd { 2 } else { 0 });
            (&zp / &one_plus_sq(z)?).scale(&c)
        }
        (ModelFamily::FixedM(m), Region::OutsideDisc) => {
            if z.is_zero() {
                return Err(pole("z = 0"));
            }
            let m32 = m as u32;
            let denom = z.powu(m32).scale(&Float::with_val(prec, n).pow(m32 - 1));
            &z.add_f64(1.0).powu(k + m32) / &denom
        }
        (ModelFamily::FixedM(m), Region::InsideDisc) => {
            if z.is_zero() {
                return Err(pole("z = 0"));
            }
            let fact = Float::with_val(prec, Integer::from(Integer::factorial(m as u32 - 1)));
            -z.scale(&fact).recip()
        }
        _ => unreachable!("classifier returns a region of the family"),
    };
    Ok(out)
}

/// Exact polynomial whose value the model describes, with the extra
/// normalising divisor (`n^{m-1}` for `FixedM`, else 1).
pub fn exact_actual(family: ModelFamily, n: usize) -> Result<(RatPoly, Integer)> {
    let zero = GaussRat::zero();
    Ok(match family {
        ModelFamily::Qnn => (bcd(n, n), Integer::from(1)),
        ModelFamily::Qnn1 => (bcd(n, n + 1), Integer::from(1)),
        ModelFamily::UltraEven(a) => (
            ultra_monic(2 * n, a).iterated_integral(2 * n, &zero)?,
            Integer::from(1),
        ),
        ModelFamily::UltraOdd(a) => (
            ultra_monic(2 * n + 1, a).iterated_integral(2 * n + 1, &zero)?,
            Integer::from(1),
        ),
        ModelFamily::FixedM(m) => {
            if m == 0 {
                return Err(Error::InvalidParameter("fixed m must be >= 1".into()));
            }
            (bcd(n, m), Integer::from(n).pow(m as u32 - 1))
        }
    })
}

/// `|actual(n, z) / model(n, z) - 1|`.
pub fn ratio_error(family: ModelFamily, n: usize, z: &GaussRat) -> Result<f64> {
    let (p, div) = exact_actual(family, n)?;
    let prec = eval_precision(p.degree());
    let zc = BigComplex::from_gauss(z, prec);
    let model = model_value(family, n, &zc)?;
    let actual = p.eval(&zc).scale(&Float::with_val(prec, div).recip());
    let q = &actual / &model;
    Ok(q.add_f64(-1.0).abs_f64())
}

/// `|p(z)|^{1/deg}` via `exp(log|p(z)| / deg)`.
pub fn nth_root(p: &RatPoly, z: &GaussRat) -> Result<f64> {
    if p.is_zero() || p.degree() == 0 {
        return Err(Error::InvalidParameter("nth_root needs degree >= 1".into()));
    }
    let prec = eval_precision(p.degree());
    let v = p.eval(&BigComplex::from_gauss(z, prec));
    if v.is_zero() {
        return Err(Error::ZeroValue);
    }
    Ok((v.ln_abs_f64() / p.degree() as f64).exp())
}

/// Uniform probability measure on finitely many points.
#[derive(Clone, Debug, PartialEq)]
pub struct EmpiricalMeasure {
    pub support: Vec<BigComplex>,
}

impl EmpiricalMeasure {
    pub fn new(support: Vec<BigComplex>) -> Self {
        Self { support }
    }

    pub fn weight(&self) -> f64 {
        1.0 / self.support.len() as f64
    }

    /// `U(z) = Σ w_i log|z - x_i|`.
    pub fn log_potential(&self, z: &BigComplex) -> Result<f64> {
        if self.support.is_empty() {
            return Err(Error::InvalidParameter("empty measure".into()));
        }
        let mut acc = 0.0;
        for x in &self.support {
            let d = z - x;
            if d.is_zero() {
                return Err(Error::ZeroValue);
            }
            acc += d.ln_abs_f64();
        }
        Ok(acc * self.weight())
    }
}

impl From<&crate::rootfind::RootSet> for EmpiricalMeasure {
    fn from(rs: &crate::rootfind::RootSet) -> Self {
        Self::new(rs.roots.clone())
    }
}

/// `sup_j |#{i : arg φ(z_i) ∈ bin_j} / N - 1/bins|` over `bins` equal arcs
/// of `(-π, π]`.
pub fn equidist_discrepancy(points: &[BigComplex], bins: usize) -> Result<f64> {
    if bins < 2 {
        return Err(Error::InvalidParameter("need at least 2 bins".into()));
    }
    if points.is_empty() {
        return Err(Error::InvalidParameter("no points".into()));
    }
    let mut counts = vec![0usize; bins];
    for z in points {
        let a = phi(z)?.arg_f64();
        let t = (a + std::f64::consts::PI) / (2.0 * std::f64::consts::PI);
        let j = ((t * bins as f64).floor() as usize).min(bins - 1);
        counts[j] += 1;
    }
    let n = points.len() as f64;
    Ok(counts
        .iter()
        .map(|&c| (c as f64 / n - 1.0 / bins as f64).abs())
        .fold(0.0, f64::max))
}

/// `φ_n(z) / I_{m,λ}(φ_n)(z)` for a monic `φ_n`.
pub fn integral_ratio(phi_n: &RatPoly, m: usize, lambda: &GaussRat, z: &BigComplex) -> Result<BigComplex> {
    let den = phi_n.iterated_integral(m, lambda)?.eval(z);
    if den.is_zero() {
        return Err(Error::ZeroValue);
    }
    Ok(&phi_n.eval(z) / &den)
}

fn check_interval_lambda(lambda: &GaussRat) -> Result<bool> {
    if !lambda.is_real() {
        return Ok(false);
    }
    let one = rug::Rational::from(1);
    Ok(lambda.re.clone().abs() <= one)
}

/// `φ_n(z)/I_{m,λ}(φ_n)(z)` with `φ_n` the monic Chebyshev polynomial and
/// `λ ∈ [-1, 1]`; tends to `ψ(z)^m`.
pub fn ratio_theorem3_i(n: usize, m: usize, lambda: &GaussRat, z: &GaussRat) -> Result<BigComplex> {
    if !check_interval_lambda(lambda)? {
        return Err(Error::InvalidParameter("λ must lie in [-1, 1]".into()));
    }
    let prec = eval_precision(n + m);
    let zc = BigComplex::from_gauss(z, prec);
    tau_interval(&zc)?;
    integral_ratio(&chebyshev_monic(n), m, lambda, &zc)
}

/// Which side of the level curve through `λ` the point lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LevelSide {
    Inside,
    Outside,
}

/// Measured ratio and its predicted limit for `λ ∉ [-1, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelRatio {
    pub side: LevelSide,
    pub value: BigComplex,
    pub limit: BigComplex,
}

/// Predicted limit: `ψ^m` outside, `-(m-1)! ψ^m / (z-λ)^{m-1}` inside.
pub fn theorem3_limit(m: usize, lambda: &BigComplex, z: &BigComplex, side: LevelSide) -> Result<BigComplex> {
    let psi_m = psi_interval(z)?.powu(m as u32);
    Ok(match side {
        LevelSide::Outside => psi_m,
        LevelSide::Inside => {
            let fact = Float::with_val(z.prec(), Integer::from(Integer::factorial(m as u32 - 1)));
            let d = (z - lambda).powu(m as u32 - 1);
            -(&psi_m / &d).scale(&fact)
        }
    })
}

/// `n^{m-1}φ_n(z)/I_{m,λ}(φ_n)(z)` inside the level curve through `λ`,
/// `φ_n(z)/I_{m,λ}(φ_n)(z)` outside; `φ_n` is monic Chebyshev.
pub fn ratio_theorem3_ii(n: usize, m: usize, lambda: &GaussRat, z: &GaussRat) -> Result<LevelRatio> {
    if m == 0 {
        return Err(Error::InvalidParameter("m must be >= 1".into()));
    }
    if check_interval_lambda(lambda)? {
        return Err(Error::InvalidParameter("λ must lie off [-1, 1]".into()));
    }
    let prec = eval_precision(n + m);
    let zc = BigComplex::from_gauss(z, prec);
    let lc = BigComplex::from_gauss(lambda, prec);
    let label = classify_level(&zc, &lc, default_tol(prec))?;
    if label.on_boundary || z == lambda {
        return Err(Error::AmbiguousRegion);
    }
    let side = if label.region == Region::InsideLevel {
        LevelSide::Inside
    } else {
        LevelSide::Outside
    };
    let mut value = integral_ratio(&chebyshev_monic(n), m, lambda, &zc)?;
    if side == LevelSide::Inside {
        value = value.scale(&Float::with_val(prec, n).pow(m as u32 - 1));
    }
    let limit = theorem3_limit(m, &lc, &zc, side)?;
    Ok(LevelRatio { side, value, limit })
}

/// Chebyshev–Gauss quadrature of the Markov function of the arcsine
/// measure, compared with `ψ(z)`.
pub fn markov_check(z: &GaussRat, nodes: usize) -> Result<f64> {
    if nodes == 0 {
        return Err(Error::InvalidParameter("need at least one node".into()));
    }
    let prec = 128;
    let zc = BigComplex::from_gauss(z, prec);
    let psi = psi_interval(&zc)?;
    let pi_val = pi(prec);
    let mut acc = BigComplex::zero(prec);
    for k in 1..=nodes {
        let t = Float::with_val(prec, &pi_val) * (2 * k - 1) as u32 / (2 * nodes) as u32;
        let x = BigComplex::from_real(&t.cos(), prec);
        acc = &acc + &(&zc - &x).recip();
    }
    let quad = acc.scale(&Float::with_val(prec, nodes).recip());
    Ok((&quad - &psi).abs_f64())
}

/// `∫_{z1}^{z2} φ_n(s) ds` for monic Chebyshev `φ_n`, from the exact
/// antiderivative (path independent).
pub fn path_integral(n: usize, z1: &GaussRat, z2: &GaussRat) -> BigComplex {
    let anti = chebyshev_monic(n).antiderivative();
    let prec = eval_precision(n + 1);
    let a = anti.eval(&BigComplex::from_gauss(z1, prec));
    let b = anti.eval(&BigComplex::from_gauss(z2, prec));
    &b - &a
}

/// `|∫_{z1}^{z2} φ_n|^{1/n}`; requires `|τ(z1)| < |τ(z2)|`.
pub fn path_integral_nthroot(n: usize, z1: &GaussRat, z2: &GaussRat) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be >= 1".into()));
    }
    let prec = eval_precision(n);
    let t1 = tau_interval(&BigComplex::from_gauss(z1, prec))?.abs_f64();
    let t2 = tau_interval(&BigComplex::from_gauss(z2, prec))?.abs_f64();
    if t1 >= t2 {
        return Err(Error::InvalidParameter("need |τ(z1)| < |τ(z2)|".into()));
    }
    let v = path_integral(n, z1, z2);
    if v.is_zero() {
        return Err(Error::ZeroValue);
    }
    Ok((v.ln_abs_f64() / n as f64).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::binom_pow;
    use crate::regions::gamma_samples;
    use crate::rootfind::{roots, RootOptions};

    fn g(s: &str) -> GaussRat {
        s.parse().unwrap()
    }

    fn c(s: &str) -> BigComplex {
        BigComplex::from_gauss(&g(s), 256)
    }

    fn decreasing(v: &[f64]) -> bool {
        v.windows(2).all(|w| w[1] < w[0])
    }

    #[test]
    fn grids_lie_in_their_regions() {
        for s in GRID_E1 {
            assert_eq!(classify_e(&c(s), 1e-30).region, Region::E1, "{s}");
        }
        for s in GRID_E2 {
            assert_eq!(classify_e(&c(s), 1e-30).region, Region::E2, "{s}");
        }
        assert_eq!(strong_asymptotic_grid().len(), 20);
    }

    #[test]
    fn qnn_e2_at_origin() {
        let n = 10;
        let v = model_value(ModelFamily::Qnn, n, &c("0")).unwrap();
        let want = 4f64.powi(10) / (std::f64::consts::PI * 10.0).sqrt();
        assert!((v.re_f64() / want - 1.0).abs() < 1e-14);
        assert_eq!(v.im_f64(), 0.0);
    }

    #[test]
    fn ultra_even_zero_is_legendre_display() {
        let z = c("2i");
        let v = model_value(ModelFamily::UltraEven(0), 7, &z).unwrap();
        let want = z.sqr().add_f64(-1.0).powu(14);
        assert!((&v / &want).add_f64(-1.0).abs_f64() < 1e-60);
    }

    #[test]
    fn fixed_m1_inside() {
        let z = c("-1/2+1/5i");
        let v = model_value(ModelFamily::FixedM(1), 30, &z).unwrap();
        assert!((&v + &z.recip()).abs_f64() < 1e-60);
    }

    #[test]
    fn excluded_points_signal() {
        assert!(model_value(ModelFamily::Qnn, 5, &c("1")).is_err());
        assert!(model_value(ModelFamily::UltraEven(1), 5, &c("i")).is_err());
        assert!(model_value(ModelFamily::UltraOdd(1), 5, &c("-i")).is_err());
        assert!(model_value(ModelFamily::FixedM(2), 5, &c("0")).is_err());
        assert!(model_value(ModelFamily::FixedM(2), 5, &c("-2")).is_err());
    }

    #[test]
    fn strong_asymptotics_converge_on_grid() {
        for z in ["2", "1/5"] {
            let errs: Vec<f64> = [25, 50, 100, 200]
                .iter()
                .map(|&n| ratio_error(ModelFamily::Qnn, n, &g(z)).unwrap())
                .collect();
            assert!(decreasing(&errs), "{z}: {errs:?}");
            assert!(errs[3] < 0.05);
        }
    }

    #[test]
    fn ultra_models_converge() {
        for (fam, z) in [
            (ModelFamily::UltraEven(1), "2i"),
            (ModelFamily::UltraEven(1), "1/2"),
            (ModelFamily::UltraOdd(1), "3"),
            (ModelFamily::UltraOdd(2), "1/5i"),
        ] {
            let errs: Vec<f64> = [10, 20, 40, 80]
                .iter()
                .map(|&n| ratio_error(fam, n, &g(z)).unwrap())
                .collect();
            assert!(decreasing(&errs), "{fam} {z}: {errs:?}");
        }
    }

    #[test]
    fn fixed_m3_converges_and_zeros_approach_circle() {
        for z in ["1", "-7/10"] {
            let errs: Vec<f64> = [25, 50, 100, 200]
                .iter()
                .map(|&n| ratio_error(ModelFamily::FixedM(3), n, &g(z)).unwrap())
                .collect();
            assert!(decreasing(&errs), "{z}: {errs:?}");
        }
        let spread: Vec<f64> = [20, 40, 80]
            .iter()
            .map(|&n| {
                let rs = roots(&bcd(n, 3), &RootOptions::for_degree(n)).unwrap();
                rs.roots
                    .iter()
                    .map(|z| (z.add_f64(1.0).abs_f64() - 1.0).abs())
                    .fold(0.0, f64::max)
            })
            .collect();
        assert!(decreasing(&spread), "{spread:?}");
    }

    #[test]
    fn nth_root_of_binomial_power() {
        let v = nth_root(&binom_pow(37), &g("1")).unwrap();
        assert!((v - 2.0).abs() < 1e-14);
        assert!(nth_root(&binom_pow(3), &g("-1")).is_err());
    }

    #[test]
    fn potential_of_point_mass() {
        let mu = EmpiricalMeasure::new(vec![BigComplex::zero(128)]);
        let e = BigComplex::from_f64(std::f64::consts::E, 0.0, 128);
        assert!((mu.log_potential(&e).unwrap() - 1.0).abs() < 1e-15);
        assert!(mu.log_potential(&BigComplex::zero(128)).is_err());
    }

    #[test]
    fn potential_matches_monic_identity() {
        let n = 30;
        let rs = roots(&bcd(n, n), &RootOptions::for_degree(n)).unwrap();
        let mu = EmpiricalMeasure::from(&rs);
        for z in ["1/5", "2", "-1+i"] {
            let u = mu.log_potential(&c(z)).unwrap();
            let direct = nth_root(&bcd(n, n), &g(z)).unwrap().ln();
            assert!((u - direct).abs() < 1e-12, "{z}");
        }
    }

    #[test]
    fn discrepancy_of_curve_samples() {
        let n = 96;
        let pts = gamma_samples(n, 128).unwrap().points;
        assert!(equidist_discrepancy(&pts, 8).unwrap() <= 1.0 / n as f64 + 1e-12);
        assert!(equidist_discrepancy(&pts, 1).is_err());
    }

    #[test]
    fn theorem3_interval_lambda() {
        let r1 = ratio_theorem3_i(200, 1, &GaussRat::zero(), &g("2")).unwrap();
        assert!((&r1 - &BigComplex::from_f64(1.0 / 3f64.sqrt(), 0.0, 64)).abs_f64() <= 0.02);
        let r2 = ratio_theorem3_i(200, 2, &GaussRat::zero(), &g("2")).unwrap();
        assert!((r2.re_f64() - 1.0 / 3.0).abs() <= 0.04);
        let psi5 = psi_interval(&c("5")).unwrap();
        let errs: Vec<f64> = [25, 50, 100]
            .iter()
            .map(|&n| (&ratio_theorem3_i(n, 1, &GaussRat::zero(), &g("5")).unwrap() - &psi5).abs_f64())
            .collect();
        assert!(decreasing(&errs));
        assert!(ratio_theorem3_i(10, 1, &g("2"), &g("3")).is_err());
    }

    #[test]
    fn theorem3_exterior_lambda() {
        let out = ratio_theorem3_ii(200, 1, &g("3"), &g("10")).unwrap();
        assert_eq!(out.side, LevelSide::Outside);
        assert!((&out.value - &out.limit).abs_f64() <= 0.02);
        let out2 = ratio_theorem3_ii(200, 2, &g("3"), &g("10")).unwrap();
        assert!((&out2.value / &out2.limit).add_f64(-1.0).abs_f64() <= 0.05);
        assert!(ratio_theorem3_ii(50, 1, &g("3"), &g("3")).is_err());
        assert!(ratio_theorem3_ii(50, 1, &g("1/2"), &g("3")).is_err());
    }

    #[test]
    fn theorem3_inside_ratio_decays() {
        let vals: Vec<f64> = [25, 50, 100]
            .iter()
            .map(|&n| {
                let r = ratio_theorem3_ii(n, 1, &g("3"), &g("3/2+1/5i")).unwrap();
                assert_eq!(r.side, LevelSide::Inside);
                r.value.abs_f64()
            })
            .collect();
        assert!(decreasing(&vals) && vals[2] < 1e-30, "{vals:?}");
    }

    #[test]
    fn markov_quadrature() {
        assert!(markov_check(&g("2"), 64).unwrap() <= 1e-10);
        assert!(markov_check(&g("1001/1000"), 2048).unwrap() <= 1e-4);
        assert!(markov_check(&g("1000000"), 4).unwrap() <= 1e-12);
        assert!(markov_check(&g("1/2"), 8).is_err());
    }

    #[test]
    fn path_integral_limit_and_symmetry() {
        let v = path_integral_nthroot(200, &g("3/2"), &g("3")).unwrap();
        let want = (3.0 + 8f64.sqrt()) / 2.0;
        assert!((v / want - 1.0).abs() <= 0.03);
        let a = path_integral(40, &g("3/2"), &g("-2+i"));
        let b = path_integral(40, &g("-2+i"), &g("3/2"));
        assert!((&a + &b).abs_f64() <= 1e-30 * a.abs_f64());
        assert!(path_integral_nthroot(20, &g("3"), &g("3/2")).is_err());
    }
}
