//! Simultaneous (Ehrlich–Aberth) root finding at arbitrary precision.
//!
//! Zeros of the exact polynomial at the origin are read off from vanishing
//! low-order coefficients and returned as exact zeros; the remaining factor
//! is solved iteratively. Updates are Jacobi-style: every sweep computes all
//! corrections from the previous iterate, so the result does not depend on
//! how the sweep is scheduled across threads.
//!
//! A root of multiplicity `k` is returned as a cluster of `k` approximations
//! whose spread is of order `tol^{1/k}`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rug::{Complex, Float};

use crate::bigcomplex::{pi, BigComplex};
use crate::error::{Error, Result};
use crate::exactpoly::{RatPoly, RoundedPoly};
use crate::regions::GUARD_BITS;

/// Sweeps without halving the backward error after which an iterate that
/// already meets `tol` is accepted although above the rounding floor.
const STALL_SWEEPS: usize = 8;

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 0;

/// `max(128, 4·degree)` bits: coefficient sizes of the families of interest
/// grow like `4^n`.
pub fn default_precision(degree: usize) -> u32 {
    (4 * degree as u32).max(128)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InitialGuess {
    /// Perturbed equispaced points on the circle of radius
    /// `1 + max_k |a_k / a_n|`.
    CauchyCircle,
    /// Perturbed points on the circles given by the upper convex hull of
    /// `(k, log|a_k|)`, one circle per hull edge.
    NewtonPolygon,
}

#[derive(Clone, Debug)]
pub struct RootOptions {
    pub prec: u32,
    /// Bound on the relative residual `|p(z)| / (‖p‖_∞ max(1,|z|)^n)`.
    pub tol: f64,
    pub max_iter: usize,
    pub seed: u64,
    pub initial: InitialGuess,
}

impl RootOptions {
    pub fn new(prec: u32, tol: f64) -> Self {
        Self {
            prec,
            tol,
            ..Self::default()
        }
    }

    /// Options with the default precision for `degree`.
    pub fn for_degree(degree: usize) -> Self {
        Self {
            prec: default_precision(degree),
            ..Self::default()
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_max_iter(mut self, max_iter: usize) -> Self {
        self.max_iter = max_iter;
        self
    }

    pub fn with_initial(mut self, initial: InitialGuess) -> Self {
        self.initial = initial;
        self
    }
}

impl Default for RootOptions {
    fn default() -> Self {
        Self {
            prec: 128,
            tol: 1e-30,
            max_iter: 2000,
            seed: DEFAULT_SEED,
            initial: InitialGuess::NewtonPolygon,
        }
    }
}

/// Computed zeros with their relative residuals.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSet {
    pub roots: Vec<BigComplex>,
    pub residuals: Vec<f64>,
    pub degree: usize,
    pub converged: bool,
    pub iterations: usize,
}

impl RootSet {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }
}

/// `‖p‖_∞` over the rounded coefficients.
fn coeff_norm(p: &RoundedPoly) -> Float {
    let mut best = Float::new(p.prec());
    for c in p.coeffs() {
        let a = Float::with_val(p.prec(), c.abs_ref());
        if a > best {
            best = a;
        }
    }
    best
}

/// Relative residual `|p(z)| / (‖p‖_∞ max(1,|z|)^n)`.
fn relative_residual(value: &Complex, z: &Complex, norm: &Float, degree: usize) -> f64 {
    let prec = norm.prec();
    let mut scale = Float::with_val(prec, z.abs_ref());
    if scale < 1u32 {
        scale = Float::with_val(prec, 1u32);
    }
    scale.pow_assign_u(degree);
    scale *= norm;
    let v = Float::with_val(prec, value.abs_ref());
    (v / scale).to_f64()
}

/// Componentwise backward error `|p(z)| / Σ|a_k||z|^k`. Unlike the
/// normalised residual it stays near 1 for `|z| ≫ 1` when `|a_n| ≪ ‖p‖_∞`.
fn backward_error(value: &Complex, z: &Complex, abs_coeffs: &[Float]) -> f64 {
    let prec = abs_coeffs[0].prec();
    let r = Float::with_val(prec, z.abs_ref());
    let mut acc = Float::new(prec);
    for a in abs_coeffs.iter().rev() {
        acc *= &r;
        acc += a;
    }
    let v = Float::with_val(prec, value.abs_ref());
    (v / acc).to_f64()
}

trait PowU {
    fn pow_assign_u(&mut self, k: usize);
}

impl PowU for Float {
    fn pow_assign_u(&mut self, k: usize) {
        use rug::ops::PowAssign;
        PowAssign::pow_assign(self, k as u32);
    }
}

fn initial_guesses(p: &RoundedPoly, kind: InitialGuess, seed: u64) -> Vec<Complex> {
    let prec = p.prec();
    let n = p.degree();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let two_pi = pi(prec) * 2u32;
    let circle = |radius: f64, count: usize, offset: usize, rng: &mut ChaCha8Rng| {
        let phase: f64 = rng.random_range(0.0..1.0);
        (0..count)
            .map(|j| {
                let jitter: f64 = rng.random_range(-0.05..0.05);
                let frac = (j as f64 + jitter) / count as f64
                    + offset as f64 / n as f64
                    + phase / n as f64;
                let mut t = Float::with_val(prec, &two_pi);
                t *= frac;
                let (s, c) = t.sin_cos(Float::new(prec));
                Complex::with_val(prec, (c * radius, s * radius))
            })
            .collect::<Vec<_>>()
    };
    let logs: Vec<f64> = p
        .coeffs()
        .iter()
        .map(|c| {
            let a = Float::with_val(prec, c.abs_ref());
            if a.is_zero() {
                f64::NEG_INFINITY
            } else {
                a.ln().to_f64()
            }
        })
        .collect();
    match kind {
        InitialGuess::CauchyCircle => {
            let lead = logs[n];
            let max_ratio = logs[..n]
                .iter()
                .map(|l| (l - lead).exp())
                .fold(0.0, f64::max);
            circle(1.0 + max_ratio, n, 0, &mut rng)
        }
        InitialGuess::NewtonPolygon => {
            // upper convex hull of (k, log|a_k|) over nonzero coefficients
            let pts: Vec<(usize, f64)> = logs
                .iter()
                .enumerate()
                .filter(|(_, l)| l.is_finite())
                .map(|(k, &l)| (k, l))
                .collect();
            let mut hull: Vec<(usize, f64)> = Vec::new();
            for &pt in &pts {
                while hull.len() >= 2 {
                    let (k1, l1) = hull[hull.len() - 2];
                    let (k2, l2) = hull[hull.len() - 1];
                    let cross = (k2 as f64 - k1 as f64) * (pt.1 - l1)
                        - (l2 - l1) * (pt.0 as f64 - k1 as f64);
                    if cross >= 0.0 {
                        hull.pop();
                    } else {
                        break;
                    }
                }
                hull.push(pt);
            }
            let mut out = Vec::with_capacity(n);
            for w in hull.windows(2) {
                let ((k1, l1), (k2, l2)) = (w[0], w[1]);
                let count = k2 - k1;
                let radius = ((l1 - l2) / count as f64).exp();
                out.extend(circle(radius, count, k1, &mut rng));
            }
            out
        }
    }
}

/// All zeros of `p` with residual certificates.
pub fn roots(p: &RatPoly, opts: &RootOptions) -> Result<RootSet> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let degree = p.degree();
    if degree == 0 {
        return Err(Error::InvalidParameter("root finding needs degree >= 1".into()));
    }
    let prec = opts.prec.max(crate::bigcomplex::MIN_PREC);
    let zeros_at_origin = p.low_order();
    let reduced = p.shift_down(zeros_at_origin).expect("low order divides");
    let q = RoundedPoly::new(&reduced, prec);
    let qdeg = q.degree();
    let qnorm = coeff_norm(&q);
    let qabs: Vec<Float> = q
        .coeffs()
        .iter()
        .map(|c| Float::with_val(prec, c.abs_ref()))
        .collect();

    let mut z = if qdeg > 0 {
        initial_guesses(&q, opts.initial, opts.seed)
    } else {
        Vec::new()
    };
    // Horner rounding noise in backward-error terms
    let floor = 4.0 * (qdeg as f64 + 1.0) * (-(prec as f64)).exp2();
    let mut frozen = vec![false; qdeg];
    let mut last = vec![f64::INFINITY; qdeg];
    let mut stalls = vec![0usize; qdeg];
    let mut iterations = 0;
    while iterations < opts.max_iter && frozen.iter().any(|f| !f) {
        iterations += 1;
        let updates: Vec<(Complex, bool, f64, usize)> = (0..qdeg)
            .into_par_iter()
            .map(|i| {
                let zi = &z[i];
                if frozen[i] {
                    return (zi.clone(), true, last[i], stalls[i]);
                }
                let (v, dv) = q.eval_with_derivative(zi);
                if v.is_zero() {
                    return (zi.clone(), true, 0.0, 0);
                }
                let be = backward_error(&v, zi, &qabs);
                let stall = if be > 0.5 * last[i] { stalls[i] + 1 } else { 0 };
                let settled = be <= floor
                    || (stall >= STALL_SWEEPS
                        && be <= opts.tol
                        && relative_residual(&v, zi, &qnorm, qdeg) <= opts.tol);
                if settled {
                    return (zi.clone(), true, be, stall);
                }
                let mut s = Complex::new(prec);
                for (j, zj) in z.iter().enumerate() {
                    if j != i {
                        let d = Complex::with_val(prec, zi - zj);
                        if !d.is_zero() {
                            s += d.recip();
                        }
                    }
                }
                let ratio = Complex::with_val(prec, &dv / &v);
                let denom = ratio - s;
                if denom.is_zero() || !denom.real().is_finite() || !denom.imag().is_finite() {
                    return (zi.clone(), false, be, stall);
                }
                let w = denom.recip();
                (Complex::with_val(prec, zi - &w), false, be, stall)
            })
            .collect();
        for (i, (zn, done, be, stall)) in updates.into_iter().enumerate() {
            z[i] = zn;
            frozen[i] = done;
            last[i] = be;
            stalls[i] = stall;
        }
    }

    // Certificates against the original polynomial, evaluated with enough
    // extra bits that rounding stays far below the iteration floor. Root
    // coordinates are exact at the higher precision.
    let cert_prec = 2 * prec + GUARD_BITS;
    let full = RoundedPoly::new(p, cert_prec);
    let norm = coeff_norm(&full);
    let mut roots = Vec::with_capacity(degree);
    let mut residuals = Vec::with_capacity(degree);
    for _ in 0..zeros_at_origin {
        roots.push(BigComplex::zero(prec));
        residuals.push(0.0);
    }
    let z_backward: Vec<f64> = z
        .iter()
        .map(|zi| backward_error(&q.eval(zi), zi, &qabs))
        .collect();
    for zi in z {
        let wide = Complex::with_val(cert_prec, &zi);
        let v = full.eval(&wide);
        residuals.push(relative_residual(&v, &wide, &norm, degree));
        roots.push(BigComplex::from_inner(zi));
    }
    let converged = residuals.iter().all(|&r| r <= opts.tol)
        && z_backward.iter().all(|&b| b <= opts.tol);
    Ok(RootSet {
        roots,
        residuals,
        degree,
        converged,
        iterations,
    })
}

/// Drops roots with `|z| ≤ tol`, e.g. the zero of multiplicity `m` that
/// `I_{m,0}` places at the origin.
pub fn strip_origin(rs: &RootSet, tol: f64) -> RootSet {
    let (roots, residuals): (Vec<_>, Vec<_>) = rs
        .roots
        .iter()
        .zip(&rs.residuals)
        .filter(|(z, _)| z.abs_f64() > tol)
        .map(|(z, r)| (z.clone(), *r))
        .unzip();
    RootSet {
        degree: roots.len(),
        roots,
        residuals,
        converged: rs.converged,
        iterations: rs.iterations,
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::bcd;
    use crate::gauss::GaussRat;
    use crate::regions::{gamma_samples, phi};

    fn exact_point(z: &BigComplex) -> GaussRat {
        GaussRat::new(
            z.re().to_rational().unwrap(),
            z.im().to_rational().unwrap(),
        )
    }

    fn exact_residual(p: &RatPoly, z: &BigComplex) -> f64 {
        let v = p.eval_exact(&exact_point(z));
        let norm = p
            .coeffs()
            .iter()
            .map(|c| c.abs_f64())
            .fold(0.0, f64::max);
        let s = z.abs_f64().max(1.0).powi(p.degree() as i32);
        v.abs_f64() / (norm * s)
    }

    #[test]
    fn quadratic() {
        let p = RatPoly::from_ints(&[-1, 0, 1]);
        let rs = roots(&p, &RootOptions::default()).unwrap();
        assert!(rs.converged);
        let mut re: Vec<f64> = rs.roots.iter().map(|z| z.re_f64()).collect();
        re.sort_by(f64::total_cmp);
        assert!((re[0] + 1.0).abs() < 1e-30 && (re[1] - 1.0).abs() < 1e-30);
        assert!(rs.roots.iter().all(|z| z.im_f64().abs() < 1e-30));
    }

    #[test]
    fn zero_polynomial_is_error() {
        assert!(roots(&RatPoly::zero(), &RootOptions::default()).is_err());
    }

    #[test]
    fn triple_root_cluster() {
        let p = RatPoly::from_ints(&[1, 3, 3, 1]);
        let rs = roots(&p, &RootOptions::default()).unwrap();
        assert!(rs.converged);
        for z in &rs.roots {
            assert!(z.add_f64(1.0).abs_f64() < 1e-9, "{z}");
        }
    }

    #[test]
    fn origin_roots_exact() {
        let p = bcd(3, 4).iterated_integral(2, &GaussRat::zero()).unwrap();
        let rs = roots(&p, &RootOptions::default()).unwrap();
        assert_eq!(rs.degree, p.degree());
        let at_origin = rs.roots.iter().filter(|z| z.is_zero()).count();
        assert_eq!(at_origin, p.low_order());
        let stripped = strip_origin(&rs, 1e-40);
        assert_eq!(stripped.degree, p.degree() - p.low_order());
    }

    #[test]
    fn vieta_and_certificate() {
        let p = bcd(12, 5);
        let rs = roots(&p, &RootOptions::for_degree(12)).unwrap();
        assert!(rs.converged);
        // monic: product of (z - r_i) reproduces the coefficients
        let prec = 256;
        let mut prod = vec![Complex::with_val(prec, 1)];
        for r in &rs.roots {
            let mut next = vec![Complex::new(prec); prod.len() + 1];
            for (k, c) in prod.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= Complex::with_val(prec, c * r.inner());
            }
            prod = next;
        }
        for (k, c) in p.coeffs().iter().enumerate() {
            let want = c.re.to_f64();
            let got = prod[k].real().to_f64();
            assert!((want - got).abs() <= 1e-25 * want.abs().max(1.0), "k={k}");
            assert!(prod[k].imag().to_f64().abs() <= 1e-25 * want.abs().max(1.0));
        }
        for (z, &r) in rs.roots.iter().zip(&rs.residuals) {
            let e = exact_residual(&p, z);
            assert!(e <= 4.0 * r.max(1e-300) && r <= 4.0 * e.max(1e-300), "{e} vs {r}");
        }
    }

    #[test]
    fn conjugate_symmetry() {
        let p = bcd(15, 3);
        let rs = roots(&p, &RootOptions::default()).unwrap();
        for z in &rs.roots {
            let c = z.conj();
            let d = rs
                .roots
                .iter()
                .map(|w| w.dist_f64(&c))
                .fold(f64::INFINITY, f64::min);
            assert!(d < 1e-25);
        }
    }

    #[test]
    fn deterministic() {
        let p = bcd(10, 10);
        let a = roots(&p, &RootOptions::default().with_seed(7)).unwrap();
        let b = roots(&p, &RootOptions::default().with_seed(7)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn cauchy_start_agrees() {
        let p = bcd(8, 8);
        let a = roots(&p, &RootOptions::default()).unwrap();
        let b = roots(&p, &RootOptions::default().with_initial(InitialGuess::CauchyCircle)).unwrap();
        assert!(a.converged && b.converged);
        for z in &b.roots {
            let d = a.roots.iter().map(|w| w.dist_f64(z)).fold(f64::INFINITY, f64::min);
            assert!(d < 1e-25);
        }
    }

    #[test]
    fn q20_inside_gamma() {
        let p = bcd(20, 20);
        let rs = roots(&p, &RootOptions::for_degree(20)).unwrap();
        assert!(rs.converged);
        assert_eq!(rs.len(), 20);
        let gamma = gamma_samples(400, 64).unwrap();
        let gpts: Vec<(f64, f64)> = gamma.points.iter().map(|g| (g.re_f64(), g.im_f64())).collect();
        for z in &rs.roots {
            assert!((phi(z).unwrap().abs_f64() - 1.0).abs() <= 0.2, "{z}");
            assert!(winding(&gpts, z.re_f64(), z.im_f64()) != 0, "{z} outside");
        }
    }

    fn winding(poly: &[(f64, f64)], x: f64, y: f64) -> i32 {
        let mut w = 0;
        for k in 0..poly.len() {
            let (x0, y0) = poly[k];
            let (x1, y1) = poly[(k + 1) % poly.len()];
            let cross = (x1 - x0) * (y - y0) - (x - x0) * (y1 - y0);
            if y0 <= y && y1 > y && cross > 0.0 {
                w += 1;
            } else if y0 > y && y1 <= y && cross < 0.0 {
                w -= 1;
            }
        }
        w
    }
}
