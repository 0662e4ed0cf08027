//! Curves and regions: the map `φ(z) = (z+1)²/(4z)` and the curve Γ, its
//! pre-image under `z ↦ -z²`, the exterior map of `[-1, 1]` with its level
//! curves, and the cardioid and disc bounds for zeros of integrals.

use std::fmt;

use rug::Float;

use crate::bigcomplex::{pi, BigComplex};
use crate::error::{Error, Result};

/// Extra bits used internally when sampling curves.
pub const GUARD_BITS: u32 = 64;

/// Slack added to the unit-disc test in [`cardioid_contains`].
pub const CARDIOID_SLACK: f64 = 1e-12;

/// Default boundary tolerance `2^{-prec/2}`.
pub fn default_tol(prec: u32) -> f64 {
    (-(f64::from(prec) / 2.0)).exp2()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Region {
    /// `|φ(z)| > 1, |z| > 1`.
    E1,
    /// `|φ(z)| < 1`, or `|φ(z)| > 1` with `|z| < 1`.
    E2,
    /// `|(z²-1)/(2z)| > 1, |z| > 1`.
    F1,
    /// `|(z²-1)/(2z)| < 1`, or `> 1` with `|z| < 1`.
    F2,
    /// `|τ(z)| < |τ(λ)|` for the exterior map of `[-1, 1]`.
    InsideLevel,
    OutsideLevel,
    /// `|z+1| > 1`.
    OutsideDisc,
    /// `|z+1| < 1`.
    InsideDisc,
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Region::E1 => "E1",
            Region::E2 => "E2",
            Region::F1 => "F1",
            Region::F2 => "F2",
            Region::InsideLevel => "inside_level",
            Region::OutsideLevel => "outside_level",
            Region::OutsideDisc => "outside_disc",
            Region::InsideDisc => "inside_disc",
        };
        f.write_str(s)
    }
}

/// Region of a point plus its distance proxy to the separating curve.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RegionLabel {
    pub region: Region,
    pub boundary_dist: f64,
    pub on_boundary: bool,
}

impl RegionLabel {
    fn new(region: Region, boundary_dist: f64, tol: f64) -> Self {
        Self {
            region,
            boundary_dist,
            on_boundary: boundary_dist <= tol,
        }
    }
}

/// `(z+1)² / (4z)`.
pub fn phi(z: &BigComplex) -> Result<BigComplex> {
    if z.is_zero() {
        return Err(Error::Pole("phi at z = 0"));
    }
    let w = z.add_f64(1.0).sqr();
    Ok(&w / &z.scale_f64(4.0))
}

/// `(z²-1) / (2z)`; `|·|` of this equals `|φ(-z²)|^{1/2}`.
fn joukowski_half(z: &BigComplex) -> BigComplex {
    let num = z.sqr().add_f64(-1.0);
    &num / &z.scale_f64(2.0)
}

/// Shared rule for the two "inside/outside Γ" style splits.
fn split_label(level: f64, modulus: f64, tol: f64, outer: Region, inner: Region) -> RegionLabel {
    let mut dist = (level - 1.0).abs();
    if level > 1.0 {
        dist = dist.min((modulus - 1.0).abs());
    }
    let region = if level > 1.0 && modulus > 1.0 { outer } else { inner };
    RegionLabel::new(region, dist, tol)
}

/// Classifies `z` into `E1` or `E2`. `z = 0` is put in `E2`.
pub fn classify_e(z: &BigComplex, tol: f64) -> RegionLabel {
    match phi(z) {
        Ok(p) => split_label(p.abs_f64(), z.abs_f64(), tol, Region::E1, Region::E2),
        Err(_) => RegionLabel::new(Region::E2, f64::INFINITY, tol),
    }
}

/// Classifies `z` into `F1` or `F2` by the explicit inequalities on
/// `|(z²-1)/(2z)|` and `|z|`.
pub fn classify_f(z: &BigComplex, tol: f64) -> RegionLabel {
    if z.is_zero() {
        return RegionLabel::new(Region::F2, f64::INFINITY, tol);
    }
    let level = joukowski_half(z).abs_f64();
    split_label(level, z.abs_f64(), tol, Region::F1, Region::F2)
}

/// Classifies `z` relative to the disc `|z+1| < 1`.
pub fn classify_disc(z: &BigComplex, tol: f64) -> RegionLabel {
    let d = z.add_f64(1.0).abs_f64();
    let region = if d > 1.0 {
        Region::OutsideDisc
    } else {
        Region::InsideDisc
    };
    RegionLabel::new(region, (d - 1.0).abs(), tol)
}

/// Classifies `z` relative to the level curve `|τ(z)| = |τ(λ)|` of the
/// exterior map of `[-1, 1]`. Points on the interval count as inside.
pub fn classify_level(z: &BigComplex, lambda: &BigComplex, tol: f64) -> Result<RegionLabel> {
    let r_lambda = tau_interval(lambda)?.abs_f64();
    let r_z = match tau_interval(z) {
        Ok(t) => t.abs_f64(),
        Err(Error::OnArc) => 1.0,
        Err(e) => return Err(e),
    };
    let region = if r_z < r_lambda {
        Region::InsideLevel
    } else {
        Region::OutsideLevel
    };
    Ok(RegionLabel::new(region, (r_z - r_lambda).abs(), tol))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CurveKind {
    /// Γ: `|φ(z)| = 1, |z| ≥ 1`.
    Gamma,
    /// Pre-image of Γ under `z ↦ -z²`.
    GammaPreimage,
    /// `F_r(∂D₁)`.
    Cardioid,
    /// `|τ(z)| = |τ(λ)|` for `[-1, 1]`.
    Level,
}

impl fmt::Display for CurveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CurveKind::Gamma => "gamma",
            CurveKind::GammaPreimage => "gamma_pre",
            CurveKind::Cardioid => "cardioid",
            CurveKind::Level => "level",
        };
        f.write_str(s)
    }
}

/// Ordered samples of a closed curve with the angle parameter of each point.
#[derive(Clone, Debug)]
pub struct CurveSamples {
    pub kind: CurveKind,
    pub points: Vec<BigComplex>,
    pub parameter: Vec<f64>,
    pub prec: u32,
}

fn angle(j: usize, n: usize, prec: u32) -> Float {
    let mut t = pi(prec) * 2u32;
    t *= j as u32;
    t /= n as u32;
    t
}

/// Both roots of `z² + b z + c = 0`.
fn quadratic_roots(b: &BigComplex, c: &BigComplex) -> (BigComplex, BigComplex) {
    let disc = (&b.sqr() - &c.scale_f64(4.0)).sqrt();
    let minus_b = -b;
    let r1 = (&minus_b + &disc).scale_f64(0.5);
    let r2 = (&minus_b - &disc).scale_f64(0.5);
    (r1, r2)
}

fn outer_root(b: &BigComplex, c: &BigComplex) -> BigComplex {
    let (r1, r2) = quadratic_roots(b, c);
    if r1.cmp_abs(&r2).is_ge() {
        r1
    } else {
        r2
    }
}

fn sample_unit_circle(
    n: usize,
    prec: u32,
    kind: CurveKind,
    point: impl Fn(&BigComplex) -> BigComplex,
) -> CurveSamples {
    let work = prec + GUARD_BITS;
    let (points, parameter) = (0..n)
        .map(|j| {
            let t = angle(j, n, work);
            let u = BigComplex::cis(&t, work);
            (point(&u).with_prec(prec), t.to_f64())
        })
        .unzip();
    CurveSamples {
        kind,
        points,
        parameter,
        prec,
    }
}

/// `n` points of Γ with `φ(z_j) = e^{iθ_j}`, `θ_j = 2πj/n`.
pub fn gamma_samples(n: usize, prec: u32) -> Result<CurveSamples> {
    if n < 2 {
        return Err(Error::InvalidParameter("gamma_samples needs n >= 2".into()));
    }
    Ok(sample_unit_circle(n, prec, CurveKind::Gamma, |u| {
        // (z+1)^2 = 4 u z  <=>  z^2 + (2 - 4u) z + 1 = 0
        let b = u.scale_f64(-4.0).add_f64(2.0);
        let one = BigComplex::from_f64(1.0, 0.0, u.prec());
        outer_root(&b, &one)
    }))
}

/// `n` points of `{|(z²-1)/(2z)| = 1, |z| ≥ 1}`, i.e. `z² - 2uz - 1 = 0`
/// with `u = e^{iθ_j}`, keeping the root outside the unit disc.
pub fn gamma_preimage_samples(n: usize, prec: u32) -> Result<CurveSamples> {
    if n < 2 {
        return Err(Error::InvalidParameter("gamma_preimage_samples needs n >= 2".into()));
    }
    Ok(sample_unit_circle(n, prec, CurveKind::GammaPreimage, |u| {
        let b = u.scale_f64(-2.0);
        let minus_one = BigComplex::from_f64(-1.0, 0.0, u.prec());
        outer_root(&b, &minus_one)
    }))
}

/// `F_r(w) = 2rw - λ̄w²`.
pub fn cardioid_map(w: &BigComplex, lambda: &BigComplex, r: f64) -> BigComplex {
    &w.scale_f64(2.0 * r) - &(&lambda.conj() * &w.sqr())
}

/// Whether `z ∈ F_r(D̄₁)`, by solving `-λ̄w² + 2rw - z = 0` for `w`.
pub fn cardioid_contains(z: &BigComplex, lambda: &BigComplex, r: f64) -> bool {
    let prec = z.prec().min(lambda.prec());
    let lb = lambda.conj().with_prec(prec);
    let rr = BigComplex::from_f64(r, 0.0, prec);
    // roots w = (r ± s)/λ̄ with s² = r² - λ̄z; their product is z/λ̄
    let s = (&rr.sqr() - &(&lb * z)).sqrt();
    let plus = &rr + &s;
    let minus = &rr - &s;
    let q = if plus.cmp_abs(&minus).is_ge() { plus } else { minus };
    let small = (z / &q).abs_f64();
    let large = if lb.is_zero() {
        f64::INFINITY
    } else {
        (&q / &lb).abs_f64()
    };
    small.min(large) <= 1.0 + CARDIOID_SLACK
}

/// `F_r(e^{iθ_j})` for `θ_j = 2πj/n`.
pub fn cardioid_boundary(lambda: &BigComplex, r: f64, n: usize) -> Result<CurveSamples> {
    if n < 3 || r <= 0.0 {
        return Err(Error::InvalidParameter("cardioid_boundary needs n >= 3, r > 0".into()));
    }
    let prec = lambda.prec();
    let mut c = sample_unit_circle(n, prec, CurveKind::Cardioid, |u| {
        cardioid_map(u, &lambda.with_prec(u.prec()), r)
    });
    c.prec = prec;
    Ok(c)
}

/// `ρ = 2^m (|λ| + r) - |λ|`.
pub fn disc_bound(m: u32, lambda_abs: f64, r: f64) -> f64 {
    (m as f64).exp2() * (lambda_abs + r) - lambda_abs
}

fn on_interval(z: &BigComplex) -> bool {
    let tol = default_tol(z.prec());
    z.im_f64().abs() <= tol && z.re_f64().abs() <= 1.0 + tol
}

/// `√(z²-1)` on the branch with `|z + √(z²-1)| > 1`.
fn exterior_sqrt(z: &BigComplex) -> Result<BigComplex> {
    if on_interval(z) {
        return Err(Error::OnArc);
    }
    let s = z.sqr().add_f64(-1.0).sqrt();
    if (z + &s).abs() < 1u32 {
        Ok(-s)
    } else {
        Ok(s)
    }
}

/// Exterior conformal map of `[-1, 1]`: `τ(z) = z + √(z²-1)`, `|τ| > 1`.
pub fn tau_interval(z: &BigComplex) -> Result<BigComplex> {
    Ok(z + &exterior_sqrt(z)?)
}

/// `ψ = τ'/τ = 1/√(z²-1)` on the matching branch.
pub fn psi_interval(z: &BigComplex) -> Result<BigComplex> {
    Ok(exterior_sqrt(z)?.recip())
}

/// Points `(u + 1/u)/2`, `u = |τ(λ)| e^{iθ_j}`: the Bernstein ellipse through `λ`.
pub fn level_curve_interval(lambda: &BigComplex, n: usize) -> Result<CurveSamples> {
    if n < 3 {
        return Err(Error::InvalidParameter("level_curve_interval needs n >= 3".into()));
    }
    let prec = lambda.prec();
    let radius = tau_interval(&lambda.with_prec(prec + GUARD_BITS))?.abs();
    Ok(sample_unit_circle(n, prec, CurveKind::Level, |u| {
        let w = u.scale(&radius);
        (&w + &w.recip()).scale_f64(0.5)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 256;

    fn c(re: f64, im: f64) -> BigComplex {
        BigComplex::from_f64(re, im, P)
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(&c(1.0, 0.0)).unwrap().re_f64(), 1.0);
        assert!(phi(&c(-1.0, 0.0)).unwrap().is_zero());
        assert_eq!(phi(&c(2.0, 0.0)).unwrap().re_f64(), 9.0 / 8.0);
        assert!(matches!(phi(&c(0.0, 0.0)), Err(Error::Pole(_))));
    }

    #[test]
    fn classify_e_examples() {
        let tol = default_tol(P);
        assert_eq!(classify_e(&c(2.0, 0.0), tol).region, Region::E1);
        assert_eq!(classify_e(&c(0.2, 0.0), tol).region, Region::E2);
        assert_eq!(classify_e(&c(-0.3, 0.0), tol).region, Region::E2);
        assert_eq!(classify_e(&c(0.0, 0.0), tol).region, Region::E2);
        assert!(classify_e(&c(1.0, 0.0), tol).on_boundary);
    }

    #[test]
    fn classify_f_examples() {
        let tol = default_tol(P);
        // |(4-1)/4| = 3/4 < 1
        assert_eq!(classify_f(&c(2.0, 0.0), tol).region, Region::F2);
        // |(-9-1)/(6i)| = 5/3 > 1, |z| = 3
        assert_eq!(classify_f(&c(0.0, 3.0), tol).region, Region::F1);
        assert!(classify_f(&c(0.0, 1.0), tol).on_boundary);
    }

    #[test]
    fn f_regions_are_preimages_of_e_regions() {
        let tol = 1e-12;
        for k in 0..400 {
            let t = k as f64 * 0.37;
            let r = 0.05 + (k % 23) as f64 * 0.2;
            let z = c(r * t.cos(), r * t.sin());
            let lf = classify_f(&z, tol);
            let le = classify_e(&(-&z.sqr()), tol);
            if lf.on_boundary || le.on_boundary {
                continue;
            }
            let mapped = if le.region == Region::E1 { Region::F1 } else { Region::F2 };
            assert_eq!(lf.region, mapped, "z = {z}");
        }
    }

    #[test]
    fn gamma_samples_examples() {
        let g = gamma_samples(8, P).unwrap();
        assert!(g.points[0].dist_f64(&c(1.0, 0.0)) < 1e-30);
        let want = -3.0 - 2.0 * 2f64.sqrt();
        assert!((g.points[4].re_f64() - want).abs() < 1e-14);
        assert!(g.points[4].im_f64().abs() < 1e-60);
    }

    #[test]
    fn gamma_samples_satisfy_curve_equation() {
        for prec in [64, 128, 300] {
            let g = gamma_samples(360, prec).unwrap();
            let bound = 10.0 * (-(prec as f64)).exp2();
            for (z, _) in g.points.iter().zip(&g.parameter) {
                let z = z.with_prec(prec + 64);
                let err = (phi(&z).unwrap().abs() - 1u32).abs().to_f64();
                assert!(err <= bound, "prec {prec}: {err} at {z}");
                assert!(z.abs_f64() >= 1.0 - 1e-15);
            }
        }
    }

    #[test]
    fn gamma_roots_multiply_to_one() {
        let u = BigComplex::cis(&Float::with_val(P, 0.9), P);
        let b = u.scale_f64(-4.0).add_f64(2.0);
        let (r1, r2) = quadratic_roots(&b, &c(1.0, 0.0));
        assert!((&r1 * &r2).dist_f64(&c(1.0, 0.0)) < 1e-70);
    }

    #[test]
    fn gamma_preimage_satisfies_curve_equation() {
        let prec = 160;
        let g = gamma_preimage_samples(400, prec).unwrap();
        for z in &g.points {
            let z = z.with_prec(prec + 64);
            let err = (joukowski_half(&z).abs() - 1u32).abs().to_f64();
            assert!(err <= 10.0 * (-(prec as f64)).exp2(), "{err}");
            assert!(z.abs_f64() >= 1.0 - 1e-15);
        }
    }

    #[test]
    fn cardioid_examples() {
        let zero = c(0.0, 0.0);
        assert!(cardioid_contains(&c(3.0, 0.0), &zero, 1.5));
        assert!(!cardioid_contains(&c(3.1, 0.0), &zero, 1.5));
        let lam = c(2.0, 1.0);
        assert!(!cardioid_contains(&c(6.0, 0.0), &lam, 0.5));
        assert!(!cardioid_contains(&c(-1.0, 3.0), &lam, 0.5));
        // w = 0 maps to z = 0 even though ||0| - |λ|| > 2r here
        assert!(cardioid_contains(&zero, &lam, 0.5));
        // w = 1 gives 2r - λ̄
        assert!(cardioid_contains(&zero, &lam, 0.7));
        assert!(cardioid_contains(&cardioid_map(&c(1.0, 0.0), &lam, 0.7), &lam, 0.7));
    }

    #[test]
    fn cardioid_boundary_examples() {
        let r = 0.75;
        let circ = cardioid_boundary(&c(0.0, 0.0), r, 16).unwrap();
        for z in &circ.points {
            assert!((z.abs_f64() - 2.0 * r).abs() < 1e-60);
        }
        let lam = c(r, 0.0);
        let card = cardioid_boundary(&lam, r, 16).unwrap();
        assert!(card.points[0].dist_f64(&c(r, 0.0)) < 1e-60);
        for z in &card.points {
            assert!(z.abs_f64() <= 2.0 * r + r + 1e-12);
        }
    }

    #[test]
    fn disc_bound_examples() {
        assert_eq!(disc_bound(1, 0.0, 1.5), 3.0);
        assert_eq!(disc_bound(2, 0.0, 1.5), 6.0);
        assert_eq!(disc_bound(1, 1.5, 1.5), 4.5);
        for m in 1..8 {
            let (l, r) = (0.7, 1.3);
            let step = disc_bound(m + 1, l, r) - (2.0 * disc_bound(m, l, r) + l);
            assert!(step.abs() < 1e-12);
        }
    }

    #[test]
    fn tau_psi_examples() {
        let t = tau_interval(&c(2.0, 0.0)).unwrap();
        assert!((t.re_f64() - (2.0 + 3f64.sqrt())).abs() < 1e-15);
        let p = psi_interval(&c(2.0, 0.0)).unwrap();
        assert!((p.re_f64() - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        let big = tau_interval(&c(1e12, 0.0)).unwrap();
        assert!((big.re_f64() / 1e12 - 2.0).abs() < 1e-12);
        let z = c(0.3, -0.8);
        let a = tau_interval(&z).unwrap();
        let b = tau_interval(&z.conj()).unwrap();
        assert!(a.conj().dist_f64(&b) < 1e-60);
        assert!(matches!(tau_interval(&c(0.5, 0.0)), Err(Error::OnArc)));
    }

    #[test]
    fn tau_is_exterior_everywhere() {
        for k in 0..200 {
            let t = k as f64 * 0.61;
            let r = 0.01 + (k % 13) as f64 * 0.4;
            let z = c(r * t.cos(), r * t.sin() + 1e-3);
            assert!(tau_interval(&z).unwrap().abs_f64() > 1.0);
        }
    }

    #[test]
    fn psi_is_log_derivative_of_tau() {
        let z = c(0.4, 0.9);
        let psi = psi_interval(&z).unwrap();
        let tau = tau_interval(&z).unwrap();
        let mut last = f64::INFINITY;
        for k in 2..6 {
            let h = 10f64.powi(-k);
            let hp = c(h, 0.0);
            let fd = &(&tau_interval(&(&z + &hp)).unwrap() - &tau_interval(&(&z - &hp)).unwrap())
                / &tau.scale_f64(2.0 * h);
            let err = fd.dist_f64(&psi);
            assert!(err < last);
            assert!(err < 10.0 * h * h, "h={h} err={err}");
            last = err;
        }
    }

    #[test]
    fn level_curve_examples() {
        let lam = c(3.0, 0.0);
        let curve = level_curve_interval(&lam, 64).unwrap();
        let r = 3.0 + 8f64.sqrt();
        let a = (r + 1.0 / r) / 2.0;
        let b = (r - 1.0 / r) / 2.0;
        assert!((curve.points[0].re_f64() - 3.0).abs() < 1e-14);
        assert!((curve.points[32].re_f64() + 3.0).abs() < 1e-14);
        for z in &curve.points {
            let (x, y) = (z.re_f64(), z.im_f64());
            assert!(((x / a).powi(2) + (y / b).powi(2) - 1.0).abs() < 1e-13);
            let t = tau_interval(z).unwrap().abs_f64();
            assert!((t - r).abs() < 1e-13);
        }
        let thin = level_curve_interval(&c(1.0 + 1e-10, 0.0), 16).unwrap();
        for z in &thin.points {
            assert!(z.im_f64().abs() < 1e-4 && z.re_f64().abs() <= 1.0 + 1e-9);
        }
    }

    #[test]
    fn classify_level_examples() {
        let lam = c(3.0, 0.0);
        let tol = 1e-12;
        let inside = classify_level(&c(1.5, 0.2), &lam, tol).unwrap();
        assert_eq!(inside.region, Region::InsideLevel);
        let outside = classify_level(&c(10.0, 0.0), &lam, tol).unwrap();
        assert_eq!(outside.region, Region::OutsideLevel);
        assert!(classify_level(&lam, &lam, tol).unwrap().on_boundary);
        assert_eq!(classify_level(&c(0.0, 0.0), &lam, tol).unwrap().region, Region::InsideLevel);
    }
}
