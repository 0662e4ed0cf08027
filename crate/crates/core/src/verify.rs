//! Named numerical checks grouped into suites. Each check recomputes its
//! quantities from scratch and compares them with fixed thresholds; the
//! command-line `check` command and the acceptance test both run these.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rug::{Integer, Rational};

use crate::asympt::{
    equidist_discrepancy, markov_check, nth_root, ratio_error, ratio_theorem3_i,
    ratio_theorem3_ii, strong_asymptotic_grid, ModelFamily,
};
use crate::bigcomplex::BigComplex;
use crate::error::Error;
use crate::exactpoly::{binomial, rising_factorial_ratio, RatPoly};
use crate::families::{bcd, binom_pow, gn_exact, legendre_monic, ultra_monic};
use crate::gauss::GaussRat;
use crate::regions::{cardioid_contains, classify_e, disc_bound, phi, Region};
use crate::rootfind::{roots, strip_origin, RootOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Exact,
    Asympt,
    Zeros,
    Bounds,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Exact, Suite::Asympt, Suite::Zeros, Suite::Bounds];
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Exact => "exact",
            Suite::Asympt => "asympt",
            Suite::Zeros => "zeros",
            Suite::Bounds => "bounds",
        })
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "exact" => Ok(Suite::Exact),
            "asympt" => Ok(Suite::Asympt),
            "zeros" => Ok(Suite::Zeros),
            "bounds" => Ok(Suite::Bounds),
            _ => Err(Error::Parse {
                what: "suite",
                input: s.to_string(),
            }),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckConfig {
    pub seed: u64,
    /// Largest degree parameter used by the asymptotic checks; the nominal
    /// sweeps are truncated to it, thresholds are not changed.
    pub n_max: usize,
    pub cardioid_instances: usize,
    pub schur_instances: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            n_max: 400,
            cardioid_instances: 1000,
            schur_instances: 100,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Measurement {
    pub name: String,
    pub value: f64,
}

fn meas(name: impl Into<String>, value: f64) -> Measurement {
    Measurement {
        name: name.into(),
        value,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Criterion {
    pub id: &'static str,
    pub suite: Suite,
    pub title: &'static str,
    pub passed: bool,
    pub measured: Vec<Measurement>,
    pub threshold: String,
    /// Reason a failure of this check is expected, when it is.
    pub known_failure: Option<&'static str>,
}

impl Criterion {
    /// Passed, or failed for the recorded reason.
    pub fn acceptable(&self) -> bool {
        self.passed || self.known_failure.is_some()
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match (self.passed, self.known_failure) {
            (true, _) => "PASS",
            (false, None) => "FAIL",
            (false, Some(_)) => "FAIL (known)",
        };
        write!(f, "[{status}] {} {}:", self.id, self.title)?;
        for m in &self.measured {
            write!(f, " {}={:.6e}", m.name, m.value)?;
        }
        write!(f, " | threshold: {}", self.threshold)
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub criteria: Vec<Criterion>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.criteria.iter().all(|c| c.passed)
    }
}

/// Runs the given suites in order.
pub fn run(suites: &[Suite], cfg: &CheckConfig) -> Report {
    let mut criteria = Vec::new();
    for suite in suites {
        criteria.extend(run_suite(*suite, cfg));
    }
    Report { criteria }
}

pub fn run_suite(suite: Suite, cfg: &CheckConfig) -> Vec<Criterion> {
    match suite {
        Suite::Exact => vec![
            bcd_integral_identity(),
            bcd_expansion(),
            integral_contracts(),
            legendre_bridge(),
            ultra_derivative(),
            gn_closed_form(),
        ],
        Suite::Asympt => vec![
            strong_points_check(cfg),
            strong_grid_check(cfg),
            nth_roots(cfg),
            theorem3_values(cfg),
        ],
        Suite::Zeros => zero_checks(cfg),
        Suite::Bounds => vec![cardioid_law(cfg), szego_schur(cfg)],
    }
}

fn count_pass(id: &'static str, suite: Suite, title: &'static str, total: usize, bad: usize) -> Criterion {
    Criterion {
        id,
        suite,
        title,
        passed: bad == 0,
        measured: vec![meas("cases", total as f64), meas("mismatches", bad as f64)],
        threshold: "0 mismatches (exact)".into(),
        known_failure: None,
    }
}

fn pairs(max: usize, m_min: usize) -> Vec<(usize, usize)> {
    (0..=max)
        .flat_map(|n| (m_min..=max).map(move |m| (n, m)))
        .collect()
}

/// `z^m Q_{n,m} = ((n+m)!/n!) ∫_0 ... ∫_0 (1+z)^n`, plain antiderivatives.
fn bcd_integral_identity() -> Criterion {
    let cases = pairs(40, 0);
    let bad = cases
        .par_iter()
        .filter(|&&(n, m)| {
            let mut raw = binom_pow(n);
            for _ in 0..m {
                raw = raw.antiderivative();
            }
            let rhs = raw.scale_int(&rising_factorial_ratio(n, m));
            let lhs = bcd(n, m).shift_up(m);
            lhs != rhs || binom_pow(n).iterated_integral(m, &GaussRat::zero()).ok() != Some(lhs)
        })
        .count();
    count_pass("1a", Suite::Exact, "z^m Q_{n,m} equals the scaled m-fold integral of (1+z)^n, n,m <= 40", cases.len(), bad)
}

/// `z^m Q_{n,m} = (1+z)^{n+m} - Σ_{k<m} binom(n+m,k) z^k`.
fn bcd_expansion() -> Criterion {
    let cases = pairs(40, 0);
    let bad = cases
        .par_iter()
        .filter(|&&(n, m)| {
            let mut head = vec![GaussRat::zero(); m];
            for (k, h) in head.iter_mut().enumerate() {
                *h = GaussRat::from(binomial(n + m, k));
            }
            let rhs = &binom_pow(n + m) - &RatPoly::new(head);
            bcd(n, m).shift_up(m) != rhs
        })
        .count();
    count_pass("1b", Suite::Exact, "Q_{n,m} equals the truncated binomial expansion over z^m, n,m <= 40", cases.len(), bad)
}

/// Monic, `I^{(m)} = ((n+m)!/n!) p`, `I^{(j)}(λ) = 0` for `j < m`.
fn integral_contracts() -> Criterion {
    let lambdas: Vec<GaussRat> = ["0", "1", "1/2i"].iter().map(|s| s.parse().unwrap()).collect();
    let cases: Vec<(usize, usize, usize)> = pairs(40, 1)
        .into_iter()
        .flat_map(|(n, m)| (0..3).map(move |l| (n, m, l)))
        .collect();
    let bad = cases
        .par_iter()
        .filter(|&&(n, m, l)| {
            let lambda = &lambdas[l];
            let p = binom_pow(n);
            let int = match p.iterated_integral(m, lambda) {
                Ok(i) => i,
                Err(_) => return true,
            };
            let taylor = int.taylor_coeffs(lambda);
            !int.is_monic()
                || int.degree() != n + m
                || int.derivative(m) != p.scale_int(&rising_factorial_ratio(n, m))
                || taylor[..m].iter().any(|c| !c.is_zero())
        })
        .count();
    count_pass("1c", Suite::Exact, "derivative and vanishing contracts of I_{m,λ}, λ in {0, 1, i/2}", cases.len(), bad)
}

/// `q(-z²)` for a polynomial `q`.
fn at_minus_z2(q: &RatPoly) -> RatPoly {
    q.compose(&RatPoly::from_ints(&[0, 0, -1]))
}

fn legendre_bridge() -> Criterion {
    let ns: Vec<usize> = (0..=20).collect();
    let bad = ns
        .par_iter()
        .map(|&n| {
            let mut bad = 0;
            let minus_z2_pow = |k: usize| at_minus_z2(&RatPoly::monomial(k));
            let even = legendre_monic(2 * n)
                .iterated_integral(2 * n, &GaussRat::zero())
                .unwrap();
            if even != &minus_z2_pow(n) * &at_minus_z2(&bcd(n, n)) {
                bad += 1;
            }
            let odd = legendre_monic(2 * n + 1)
                .iterated_integral(2 * n + 1, &GaussRat::zero())
                .unwrap();
            if odd != -&(&minus_z2_pow(n + 1) * &at_minus_z2(&bcd(n, n + 1))) {
                bad += 1;
            }
            bad
        })
        .sum();
    count_pass("2", Suite::Exact, "iterated integrals of monic Legendre polynomials against Q_{n,n}, Q_{n,n+1} at -z^2, n <= 20", 2 * ns.len(), bad)
}

fn ultra_derivative() -> Criterion {
    let cases: Vec<(usize, usize)> = (1..=30)
        .flat_map(|n| (0..=5).map(move |a| (n, a)))
        .collect();
    let bad = cases
        .par_iter()
        .filter(|&&(n, a)| {
            ultra_monic(n, a).derivative(1)
                != ultra_monic(n - 1, a + 1).scale_int(&Integer::from(n))
        })
        .count();
    count_pass("3", Suite::Exact, "derivative of monic ultraspherical (n, α) is n times (n-1, α+1), n <= 30, α <= 5", cases.len(), bad)
}

/// `Γ(n+1)Γ(1/2)/(2Γ(n+3/2)) = Π_{k=1}^n 2k/(2k+1)`.
fn gn_closed_form() -> Criterion {
    let mut expected = Vec::with_capacity(501);
    let mut acc = Rational::from(1);
    expected.push(acc.clone());
    for k in 1..=500u64 {
        acc *= Rational::from((2 * k, 2 * k + 1));
        expected.push(acc.clone());
    }
    let bad = (0..=500usize)
        .into_par_iter()
        .filter(|&n| gn_exact(n, &GaussRat::zero()) != GaussRat::real(expected[n].clone()))
        .count();
    count_pass("4", Suite::Exact, "G_n(0) equals the Gamma-function closed form, n <= 500", 501, bad)
}

/// Indices where a sequence goes up.
fn increases(v: &[f64]) -> usize {
    v.windows(2).filter(|w| w[1] > w[0]).count()
}

fn sweep(cfg: &CheckConfig, nominal: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = nominal.iter().map(|&n| n.min(cfg.n_max)).collect();
    out.dedup();
    out
}

fn ratio_sequences(points: &[GaussRat], ns: &[usize], family: ModelFamily) -> Vec<Vec<f64>> {
    points
        .par_iter()
        .map(|z| {
            ns.par_iter()
                .map(|&n| ratio_error(family, n, z).unwrap_or(f64::INFINITY))
                .collect()
        })
        .collect()
}

fn strong_points_check(cfg: &CheckConfig) -> Criterion {
    let ns = sweep(cfg, &[50, 100, 200, 400]);
    let at = 200.min(cfg.n_max);
    let idx = ns.iter().position(|&n| n == at).unwrap();
    let pts: Vec<GaussRat> = ["2", "3+i", "1/5", "-3/10", "1/2i"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    let seqs = ratio_sequences(&pts, &ns, ModelFamily::Qnn);
    let mut measured = Vec::new();
    let mut passed = true;
    for (z, seq) in pts.iter().zip(&seqs) {
        let ups = increases(seq);
        passed &= seq[idx] < 0.05 && ups <= 1;
        measured.push(meas(format!("err(n={at},z={z})"), seq[idx]));
        measured.push(meas(format!("increases(z={z})"), ups as f64));
    }
    Criterion {
        id: "5",
        suite: Suite::Asympt,
        title: "ratio error of Q_{n,n} against its regional model",
        passed,
        measured,
        threshold: format!("< 0.05 at n={at}; at most 1 increase over n in {ns:?}"),
        known_failure: None,
    }
}

fn strong_grid_check(cfg: &CheckConfig) -> Criterion {
    let ns = sweep(cfg, &[50, 100, 200, 400]);
    let grid = strong_asymptotic_grid();
    let mut worst_last: f64 = 0.0;
    let mut worst_ups = 0;
    for family in [ModelFamily::Qnn, ModelFamily::Qnn1] {
        for seq in ratio_sequences(&grid, &ns, family) {
            worst_last = worst_last.max(*seq.last().unwrap());
            worst_ups = worst_ups.max(increases(&seq));
        }
    }
    Criterion {
        id: "5g",
        suite: Suite::Asympt,
        title: "ratio errors of Q_{n,n} and Q_{n,n+1} on the fixed 20-point grid",
        passed: worst_ups <= 1 && worst_last < 0.05,
        measured: vec![meas("max_final_err", worst_last), meas("max_increases", worst_ups as f64)],
        threshold: format!("< 0.05 at n={}; at most 1 increase over n in {ns:?}", ns.last().unwrap()),
        known_failure: None,
    }
}

fn nth_roots(cfg: &CheckConfig) -> Criterion {
    let n = 400.min(cfg.n_max);
    let q = bcd(n, n);
    let a = nth_root(&q, &"1/5".parse().unwrap()).unwrap_or(f64::NAN);
    let b = nth_root(&q, &"2".parse().unwrap()).unwrap_or(f64::NAN);
    let (da, db) = ((a - 4.0).abs(), (b - 4.5).abs());
    Criterion {
        id: "6",
        suite: Suite::Asympt,
        title: "n-th roots of |Q_{n,n}| at 1/5 and 2",
        passed: da <= 0.08 && db <= 0.09,
        measured: vec![meas(format!("root(n={n},1/5)"), a), meas(format!("root(n={n},2)"), b)],
        threshold: "|root - 4| <= 0.08, |root - 4.5| <= 0.09".into(),
        known_failure: None,
    }
}

fn theorem3_values(cfg: &CheckConfig) -> Criterion {
    let n = 200.min(cfg.n_max);
    let g = |s: &str| -> GaussRat { s.parse().unwrap() };
    let r1 = ratio_theorem3_i(n, 1, &GaussRat::zero(), &g("2"))
        .map(|v| (&v - &BigComplex::from_f64(1.0 / 3f64.sqrt(), 0.0, 128)).abs_f64())
        .unwrap_or(f64::INFINITY);
    let r2 = ratio_theorem3_ii(n, 1, &g("3"), &g("10"))
        .map(|r| (&r.value - &r.limit).abs_f64())
        .unwrap_or(f64::INFINITY);
    let mk = markov_check(&g("2"), 64).unwrap_or(f64::INFINITY);
    Criterion {
        id: "8",
        suite: Suite::Asympt,
        title: "ratio limits for Chebyshev integrals and the Markov function",
        passed: r1 <= 0.02 && r2 <= 0.02 && mk <= 1e-10,
        measured: vec![
            meas(format!("interval_err(n={n})"), r1),
            meas(format!("exterior_err(n={n})"), r2),
            meas("markov_err", mk),
        ],
        threshold: "<= 0.02, <= 0.02, <= 1e-10".into(),
        known_failure: None,
    }
}

const DISCREPANCY_LATTICE: &str = "n=40 is a multiple of 8 bins and reaches discrepancy 0; 100 points in 8 bins cannot go below 0.005";

fn zero_checks(cfg: &CheckConfig) -> Vec<Criterion> {
    let n = 100.min(cfg.n_max);
    let n0 = 40.min(n);
    let rs = roots(&bcd(n, n), &RootOptions::for_degree(n));
    let rs0 = roots(&bcd(n0, n0), &RootOptions::for_degree(n0));
    let (rs, rs0) = match (rs, rs0) {
        (Ok(a), Ok(b)) => (a, b),
        _ => {
            return vec![Criterion {
                id: "7",
                suite: Suite::Zeros,
                title: "zeros of Q_{n,n}",
                passed: false,
                measured: vec![],
                threshold: "root finding succeeds".into(),
                known_failure: None,
            }]
        }
    };
    let mut max_phi: f64 = 0.0;
    let mut outside = 0;
    for z in &rs.roots {
        max_phi = max_phi.max(phi(z).map(|p| p.abs_f64()).unwrap_or(f64::INFINITY));
        if classify_e(z, 0.0).region == Region::E1 {
            outside += 1;
        }
    }
    let d = equidist_discrepancy(&rs.roots, 8).unwrap_or(f64::INFINITY);
    let d0 = equidist_discrepancy(&rs0.roots, 8).unwrap_or(f64::INFINITY);
    vec![
        Criterion {
            id: "7a",
            suite: Suite::Zeros,
            title: "zeros of Q_{n,n} lie inside Γ",
            passed: rs.converged && max_phi <= 1.05 && outside == 0,
            measured: vec![
                meas(format!("max|phi|(n={n})"), max_phi),
                meas("outside_gamma", outside as f64),
                meas("max_residual", rs.max_residual()),
            ],
            threshold: "|phi| <= 1.05, none outside Γ".into(),
            known_failure: None,
        },
        Criterion {
            id: "7b",
            suite: Suite::Zeros,
            title: "angular equidistribution of zeros of Q_{n,n} under phi",
            passed: d <= 0.08,
            measured: vec![meas(format!("discrepancy(n={n},bins=8)"), d)],
            threshold: "<= 0.08".into(),
            known_failure: None,
        },
        Criterion {
            id: "7c",
            suite: Suite::Zeros,
            title: "equidistribution discrepancy non-increasing in n",
            passed: d <= d0,
            measured: vec![
                meas(format!("discrepancy(n={n0})"), d0),
                meas(format!("discrepancy(n={n})"), d),
            ],
            threshold: format!("discrepancy(n={n}) <= discrepancy(n={n0})"),
            known_failure: Some(DISCREPANCY_LATTICE),
        },
    ]
}

/// Uniform Gaussian rational in the closed disc of radius `r`.
fn point_in_disc(rng: &mut ChaCha8Rng, r: &Rational) -> GaussRat {
    const D: i64 = 4096;
    loop {
        let a: i64 = rng.random_range(-D..=D);
        let b: i64 = rng.random_range(-D..=D);
        if a * a + b * b <= D * D {
            let s = Rational::from((1, D)) * r;
            return GaussRat::new(Rational::from(a) * &s, Rational::from(b) * &s);
        }
    }
}

fn random_radius(rng: &mut ChaCha8Rng) -> Rational {
    Rational::from((rng.random_range(16..=128i64), 64))
}

struct CardioidInstance {
    p: RatPoly,
    lambda: GaussRat,
    r: f64,
}

fn cardioid_law(cfg: &CheckConfig) -> Criterion {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0xC4D1_0D);
    let instances: Vec<CardioidInstance> = (0..cfg.cardioid_instances)
        .map(|_| {
            let r = random_radius(&mut rng);
            let n = rng.random_range(2..=10usize);
            let crit: Vec<GaussRat> = (0..n - 1).map(|_| point_in_disc(&mut rng, &r)).collect();
            let lambda = GaussRat::new(
                Rational::from((rng.random_range(-192..=192i64), 64)),
                Rational::from((rng.random_range(-192..=192i64), 64)),
            );
            let p = RatPoly::from_roots(&crit).iterated_integral_any(1, &lambda);
            CardioidInstance { p, lambda, r: r.to_f64() }
        })
        .collect();
    let results: Vec<(usize, usize, f64)> = instances
        .par_iter()
        .map(|inst| {
            let Ok(rs) = roots(&inst.p, &RootOptions::default()) else {
                return (0, 1, f64::INFINITY);
            };
            let lam = BigComplex::from_gauss(&inst.lambda, 128);
            let lam_abs = lam.abs_f64();
            let mut bad = usize::from(!rs.converged);
            let mut margin = f64::NEG_INFINITY;
            for z in &rs.roots {
                let gap = (z.abs_f64() - lam_abs).abs() - 2.0 * inst.r;
                margin = margin.max(gap);
                if !cardioid_contains(z, &lam, inst.r) || gap > 1e-8 {
                    bad += 1;
                }
            }
            (rs.len(), bad, margin)
        })
        .collect();
    let zeros: usize = results.iter().map(|r| r.0).sum();
    let bad: usize = results.iter().map(|r| r.1).sum();
    let margin = results.iter().map(|r| r.2).fold(f64::NEG_INFINITY, f64::max);
    Criterion {
        id: "9a",
        suite: Suite::Bounds,
        title: "zeros of polynomials with critical points in a disc lie in the cardioid region",
        passed: bad == 0,
        measured: vec![
            meas("instances", instances.len() as f64),
            meas("zeros", zeros as f64),
            meas("violations", bad as f64),
            meas("max(||z|-|λ|| - 2r)", margin),
        ],
        threshold: "0 violations of F_r membership and ||z|-|λ|| <= 2r + 1e-8".into(),
        known_failure: None,
    }
}

fn szego_schur(cfg: &CheckConfig) -> Criterion {
    const N: usize = 50;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5C_4E);
    let instances: Vec<(RatPoly, usize, f64)> = (0..cfg.schur_instances)
        .map(|i| {
            let r = random_radius(&mut rng);
            let zs: Vec<GaussRat> = (0..N).map(|_| point_in_disc(&mut rng, &r)).collect();
            let m = 1 + i % 3;
            let int = RatPoly::from_roots(&zs)
                .iterated_integral(m, &GaussRat::zero())
                .expect("monic");
            (int, m, r.to_f64())
        })
        .collect();
    let results: Vec<(f64, usize)> = instances
        .par_iter()
        .map(|(p, m, r)| {
            let Ok(rs) = roots(p, &RootOptions::for_degree(p.degree())) else {
                return (f64::INFINITY, 1);
            };
            let rs = strip_origin(&rs, 0.0);
            let max_abs = rs.roots.iter().map(|z| z.abs_f64()).fold(0.0, f64::max);
            let bad = usize::from(
                !rs.converged || max_abs > 2.5 * r || max_abs > disc_bound(*m as u32, 0.0, *r),
            );
            (max_abs / r, bad)
        })
        .collect();
    let worst = results.iter().map(|r| r.0).fold(0.0, f64::max);
    let bad: usize = results.iter().map(|r| r.1).sum();
    Criterion {
        id: "9b",
        suite: Suite::Bounds,
        title: "zeros of I_{m,0}(p), deg p = 50, zeros of p in a disc of radius r, m in {1,2,3}",
        passed: bad == 0,
        measured: vec![
            meas("instances", instances.len() as f64),
            meas("violations", bad as f64),
            meas("max|z|/r", worst),
        ],
        threshold: "max|z| <= 2.5r and <= disc_bound(m, 0, r)".into(),
        known_failure: None,
    }
}
