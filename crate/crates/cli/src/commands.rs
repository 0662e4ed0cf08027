use std::fs;
use std::io;
use std::path::Path;

use polyint::asympt::{
    equidist_discrepancy, markov_check, nth_root, path_integral_nthroot, ratio_error,
    ratio_theorem3_i, ratio_theorem3_ii, AsymptoticModel, EmpiricalMeasure, LevelSide,
    ModelFamily,
};
use polyint::families::{bcd, binom_pow, chebyshev_monic, legendre_monic, ultra_monic};
use polyint::regions::{
    cardioid_boundary, cardioid_contains, classify_disc, classify_e, classify_f, classify_level,
    default_tol, gamma_preimage_samples, gamma_samples, level_curve_interval, tau_interval,
    CurveSamples, RegionLabel,
};
use polyint::rootfind::{roots, strip_origin, RootOptions, RootSet};
use polyint::verify::{self, CheckConfig, Suite};
use polyint::{BigComplex, FamilySpec, GaussRat, RatPoly};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::args::{
    AsymptCommand, CheckArgs, Cli, Command, CurveArgs, CurveName, FamilyName, GenArgs,
    IntegrateArgs, MRule, ModelName, RegionArgs, Split, SuiteName, ZerosArgs,
};
use crate::output::{complex, num, Output, Table};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Math(polyint::Error),
    Io(io::Error),
    Json(serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Math(_) => 2,
            CliError::Io(_) | CliError::Json(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(s) => f.write_str(s),
            CliError::Math(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
            CliError::Json(e) => write!(f, "invalid JSON input: {e}"),
        }
    }
}

impl From<polyint::Error> for CliError {
    fn from(e: polyint::Error) -> Self {
        CliError::Math(e)
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    NonConvergence,
    Failed,
}

pub struct Outcome {
    pub output: Output,
    pub status: Status,
}

impl From<Output> for Outcome {
    fn from(output: Output) -> Self {
        Outcome {
            output,
            status: Status::Ok,
        }
    }
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let g = &cli.global;
    match &cli.command {
        Command::Gen(a) => gen(a).map(Into::into),
        Command::Integrate(a) => integrate(a).map(Into::into),
        Command::Zeros(a) => zeros(a, g.prec_bits, g.tol, g.seed),
        Command::Curve(a) => curve(a, g.prec_bits).map(Into::into),
        Command::Asympt(a) => asympt(a, g.prec_bits, g.tol, g.seed).map(Into::into),
        Command::Region(a) => region(a, g.prec_bits).map(Into::into),
        Command::Check(a) => Ok(check(a, g.seed)),
    }
}

fn family_name(f: FamilyName) -> &'static str {
    match f {
        FamilyName::Bcd => "bcd",
        FamilyName::BinomPow => "binom-pow",
        FamilyName::Legendre => "legendre",
        FamilyName::Ultra => "ultra",
        FamilyName::Chebyshev => "chebyshev",
    }
}

fn family_spec(f: FamilyName, n: usize, m: Option<usize>, alpha: Option<usize>) -> Result<FamilySpec, CliError> {
    Ok(match f {
        FamilyName::Bcd => FamilySpec::Bcd {
            n,
            m: m.ok_or_else(|| usage("bcd needs --m"))?,
        },
        FamilyName::BinomPow => FamilySpec::BinomPow { n },
        FamilyName::Legendre => FamilySpec::LegendreMonic { n },
        FamilyName::Ultra => FamilySpec::UltraMonic {
            n,
            alpha: alpha.ok_or_else(|| usage("ultra needs --alpha"))?,
        },
        FamilyName::Chebyshev => FamilySpec::ChebyshevMonic { n },
    })
}

fn coeff_table(p: &RatPoly) -> Table {
    let mut t = Table::new(&["k", "re", "im"]);
    if p.is_zero() {
        t.push(vec!["0".into(), "0".into(), "0".into()]);
    }
    for (k, c) in p.coeffs().iter().enumerate() {
        t.push(vec![k.to_string(), c.re.to_string(), c.im.to_string()]);
    }
    t
}

fn poly_output(command: &str, label: Value, p: &RatPoly) -> Output {
    Output {
        json: json!({
            "command": command,
            "polynomial": label,
            "degree": p.degree(),
            "coeffs": p.to_strings(),
        }),
        table: coeff_table(p),
    }
}

fn gen(a: &GenArgs) -> Result<Output, CliError> {
    let spec = family_spec(a.family, a.n, a.m, a.alpha)?;
    Ok(poly_output("gen", json!(spec.to_string()), &spec.generate()))
}

fn read_coeffs(path: &Path) -> Result<Vec<String>, CliError> {
    let text = fs::read_to_string(path).map_err(CliError::Io)?;
    let v: Value = serde_json::from_str(&text).map_err(CliError::Json)?;
    v.get("coeffs")
        .and_then(Value::as_array)
        .ok_or_else(|| usage(format!("{}: no \"coeffs\" array", path.display())))?
        .iter()
        .map(|c| {
            c.as_str()
                .map(str::to_owned)
                .ok_or_else(|| usage("coefficients must be strings"))
        })
        .collect()
}

fn integrate(a: &IntegrateArgs) -> Result<Output, CliError> {
    let items = match &a.input {
        Some(path) => read_coeffs(path)?,
        None => a.coeffs.clone(),
    };
    let p = RatPoly::parse_coeffs(&items)?;
    let int = p.iterated_integral(a.m, &a.lambda)?;
    let label = json!({ "m": a.m, "lambda": a.lambda.to_string() });
    Ok(poly_output("integrate", label, &int))
}

fn m_for(rule: MRule, n: usize, m: Option<usize>) -> Result<usize, CliError> {
    match rule {
        MRule::Same => Ok(n),
        MRule::Next => Ok(n + 1),
        MRule::Fixed => m.ok_or_else(|| usage("--m-rule fixed needs --m")),
    }
}

/// Degree-dependent working precision: at least `4·deg` bits.
fn working_prec(prec_bits: u32, degree: usize) -> u32 {
    prec_bits.max(4 * degree as u32)
}

enum Labeler {
    E,
    F,
    Disc,
    Level(GaussRat),
    Unlabelled,
}

impl Labeler {
    fn label(&self, z: &BigComplex) -> Option<RegionLabel> {
        let tol = default_tol(z.prec());
        match self {
            Labeler::E => Some(classify_e(z, tol)),
            Labeler::F => Some(classify_f(z, tol)),
            Labeler::Disc => Some(classify_disc(z, tol)),
            Labeler::Level(l) => {
                classify_level(z, &BigComplex::from_gauss(l, z.prec()), tol).ok()
            }
            Labeler::Unlabelled => None,
        }
    }
}

fn is_interval_point(l: &GaussRat) -> bool {
    l.is_real() && l.re.clone().abs() <= 1
}

fn zeros(a: &ZerosArgs, prec_bits: u32, tol: f64, seed: u64) -> Result<Outcome, CliError> {
    let alpha = match a.family {
        FamilyName::Ultra => Some(a.alpha.ok_or_else(|| usage("ultra needs --alpha"))?),
        _ => a.alpha,
    };
    if a.family == FamilyName::Bcd && !a.lambda.is_zero() {
        return Err(usage("--lambda does not apply to bcd"));
    }
    let labeler = match (a.family, a.m_rule) {
        (FamilyName::Bcd | FamilyName::BinomPow, MRule::Fixed) => Labeler::Disc,
        (FamilyName::Bcd | FamilyName::BinomPow, _) => Labeler::E,
        (FamilyName::Legendre | FamilyName::Ultra, _) => Labeler::F,
        (FamilyName::Chebyshev, _) if !is_interval_point(&a.lambda) => Labeler::Level(a.lambda.clone()),
        (FamilyName::Chebyshev, _) => Labeler::Unlabelled,
    };
    let jobs: Vec<(usize, usize)> = a
        .n
        .0
        .iter()
        .map(|&n| Ok((n, m_for(a.m_rule, n, a.m)?)))
        .collect::<Result<_, CliError>>()?;
    let results: Vec<Result<(usize, usize, RootSet), CliError>> = jobs
        .par_iter()
        .map(|&(n, m)| {
            let p = match a.family {
                FamilyName::Bcd => bcd(n, m),
                FamilyName::BinomPow => binom_pow(n).iterated_integral(m, &a.lambda)?,
                FamilyName::Legendre => legendre_monic(n).iterated_integral(m, &a.lambda)?,
                FamilyName::Ultra => {
                    ultra_monic(n, alpha.unwrap_or(0)).iterated_integral(m, &a.lambda)?
                }
                FamilyName::Chebyshev => chebyshev_monic(n).iterated_integral(m, &a.lambda)?,
            };
            let opts = RootOptions::new(working_prec(prec_bits, p.degree()), tol)
                .with_seed(seed)
                .with_max_iter(a.max_iter);
            let mut rs = roots(&p, &opts)?;
            if a.strip_origin {
                rs = strip_origin(&rs, 0.0);
            }
            Ok((n, m, rs))
        })
        .collect();

    let mut records = Vec::new();
    let mut table = Table::new(&[
        "family", "n", "m", "degree", "converged", "index", "re", "im", "residual", "region",
    ]);
    let mut all_converged = true;
    for r in results {
        let (n, m, rs) = r?;
        all_converged &= rs.converged;
        let mut pts = Vec::with_capacity(rs.len());
        for (i, (z, res)) in rs.roots.iter().zip(&rs.residuals).enumerate() {
            let (re, im) = complex(z);
            let region = labeler.label(z).map(|l| l.region.to_string());
            table.push(vec![
                family_name(a.family).into(),
                n.to_string(),
                m.to_string(),
                rs.degree.to_string(),
                rs.converged.to_string(),
                i.to_string(),
                re.clone(),
                im.clone(),
                num(*res),
                region.clone().unwrap_or_default(),
            ]);
            pts.push(json!({ "re": re, "im": im, "residual": num(*res), "region": region }));
        }
        records.push(json!({
            "family": family_name(a.family),
            "n": n,
            "m": m,
            "degree": rs.degree,
            "prec_bits": rs.roots.first().map(|z| z.prec()),
            "converged": rs.converged,
            "iterations": rs.iterations,
            "max_residual": num(rs.max_residual()),
            "roots": pts,
        }));
    }
    Ok(Outcome {
        output: Output {
            json: json!({ "command": "zeros", "tol": num(tol), "seed": seed, "records": records }),
            table,
        },
        status: if all_converged {
            Status::Ok
        } else {
            Status::NonConvergence
        },
    })
}

fn curve(a: &CurveArgs, prec: u32) -> Result<Output, CliError> {
    let need_lambda = || {
        a.lambda
            .as_ref()
            .map(|l| BigComplex::from_gauss(l, prec))
            .ok_or_else(|| usage("this curve needs --lambda"))
    };
    let samples: CurveSamples = match a.name {
        CurveName::Gamma => gamma_samples(a.points, prec)?,
        CurveName::GammaPre => gamma_preimage_samples(a.points, prec)?,
        CurveName::Cardioid => {
            let r = a.r.ok_or_else(|| usage("cardioid needs --r"))?;
            cardioid_boundary(&need_lambda()?, r, a.points)?
        }
        CurveName::Level => level_curve_interval(&need_lambda()?, a.points)?,
    };
    let mut table = Table::new(&["index", "t", "re", "im"]);
    let mut pts = Vec::with_capacity(samples.points.len());
    for (i, (z, t)) in samples.points.iter().zip(&samples.parameter).enumerate() {
        let (re, im) = complex(z);
        table.push(vec![i.to_string(), num(*t), re.clone(), im.clone()]);
        pts.push(json!({ "t": num(*t), "re": re, "im": im }));
    }
    Ok(Output {
        json: json!({
            "command": "curve",
            "kind": samples.kind.to_string(),
            "prec_bits": samples.prec,
            "points": pts,
        }),
        table,
    })
}

/// Flat records shared by the JSON and CSV forms.
struct Records {
    command: &'static str,
    header: &'static [&'static str],
    rows: Vec<Vec<String>>,
}

impl Records {
    fn new(command: &'static str, header: &'static [&'static str]) -> Self {
        Self {
            command,
            header,
            rows: Vec::new(),
        }
    }

    fn into_output(self) -> Output {
        let records: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj = self
                    .header
                    .iter()
                    .zip(row)
                    .map(|(k, v)| ((*k).to_owned(), Value::String(v.clone())))
                    .collect::<serde_json::Map<_, _>>();
                Value::Object(obj)
            })
            .collect();
        let mut table = Table::new(self.header);
        table.rows = self.rows;
        Output {
            json: json!({ "command": self.command, "records": records }),
            table,
        }
    }
}

fn model_family(model: ModelName, alpha: usize, m: Option<usize>) -> Result<ModelFamily, CliError> {
    Ok(match model {
        ModelName::Qnn => ModelFamily::Qnn,
        ModelName::Qnn1 => ModelFamily::Qnn1,
        ModelName::UltraEven => ModelFamily::UltraEven(alpha),
        ModelName::UltraOdd => ModelFamily::UltraOdd(alpha),
        ModelName::FixedM => ModelFamily::FixedM(m.ok_or_else(|| usage("fixed-m needs --m"))?),
    })
}

fn asympt(a: &AsymptCommand, prec: u32, tol: f64, seed: u64) -> Result<Output, CliError> {
    let out = match a {
        AsymptCommand::Ratio { model, alpha, m, n, z } => {
            let family = model_family(*model, *alpha, *m)?;
            let mut rec = Records::new("asympt-ratio", &["model", "n", "z", "region", "ratio_error"]);
            for zi in z {
                let region = AsymptoticModel::at(family, &BigComplex::from_gauss(zi, prec)).region.region;
                let errs: Vec<Result<f64, polyint::Error>> =
                    n.0.par_iter().map(|&k| ratio_error(family, k, zi)).collect();
                for (&k, e) in n.0.iter().zip(errs) {
                    rec.rows.push(vec![family.to_string(), k.to_string(), zi.to_string(), region.to_string(), num(e?)]);
                }
            }
            rec
        }
        AsymptCommand::NthRoot { n, m_rule, m, z } => {
            let mut rec = Records::new("asympt-nth-root", &["n", "m", "z", "nth_root"]);
            for &k in &n.0 {
                let mk = m_for(*m_rule, k, *m)?;
                let p = bcd(k, mk);
                for zi in z {
                    rec.rows.push(vec![k.to_string(), mk.to_string(), zi.to_string(), num(nth_root(&p, zi)?)]);
                }
            }
            rec
        }
        AsymptCommand::Potential { n, z } => {
            let mut rec = Records::new("asympt-potential", &["n", "z", "log_potential", "log_nth_root"]);
            for &k in &n.0 {
                let p = bcd(k, k);
                let rs = roots(&p, &RootOptions::new(working_prec(prec, k), tol).with_seed(seed))?;
                let mu = EmpiricalMeasure::from(&rs);
                for zi in z {
                    let u = mu.log_potential(&BigComplex::from_gauss(zi, working_prec(prec, k)))?;
                    let direct = nth_root(&p, zi)?.ln();
                    rec.rows.push(vec![k.to_string(), zi.to_string(), num(u), num(direct)]);
                }
            }
            rec
        }
        AsymptCommand::Discrepancy { n, bins } => {
            let mut rec = Records::new("asympt-discrepancy", &["n", "bins", "discrepancy", "converged"]);
            let sets: Vec<Result<RootSet, polyint::Error>> = n
                .0
                .par_iter()
                .map(|&k| roots(&bcd(k, k), &RootOptions::new(working_prec(prec, k), tol).with_seed(seed)))
                .collect();
            for (&k, rs) in n.0.iter().zip(sets) {
                let rs = rs?;
                let d = equidist_discrepancy(&rs.roots, *bins)?;
                rec.rows.push(vec![k.to_string(), bins.to_string(), num(d), rs.converged.to_string()]);
            }
            rec
        }
        AsymptCommand::ChebyshevRatio { n, m, lambda, z } => {
            let mut rec = Records::new(
                "asympt-chebyshev-ratio",
                &["n", "m", "lambda", "z", "side", "value_re", "value_im", "limit_re", "limit_im", "abs_error"],
            );
            let interval = is_interval_point(lambda);
            for zi in z {
                for &k in &n.0 {
                    let (side, value, limit) = if interval {
                        let v = ratio_theorem3_i(k, *m, lambda, zi)?;
                        let zc = BigComplex::from_gauss(zi, v.prec());
                        let psi = polyint::regions::psi_interval(&zc)?.powu(*m as u32);
                        ("interval", v, psi)
                    } else {
                        let r = ratio_theorem3_ii(k, *m, lambda, zi)?;
                        let side = match r.side {
                            LevelSide::Inside => "inside",
                            LevelSide::Outside => "outside",
                        };
                        (side, r.value, r.limit)
                    };
                    let err = (&value - &limit).abs_f64();
                    let (vr, vi) = (num(value.re_f64()), num(value.im_f64()));
                    let (lr, li) = (num(limit.re_f64()), num(limit.im_f64()));
                    rec.rows.push(vec![
                        k.to_string(), m.to_string(), lambda.to_string(), zi.to_string(),
                        side.into(), vr, vi, lr, li, num(err),
                    ]);
                }
            }
            rec
        }
        AsymptCommand::Markov { z, nodes } => {
            let mut rec = Records::new("asympt-markov", &["z", "nodes", "abs_error"]);
            for zi in z {
                rec.rows.push(vec![zi.to_string(), nodes.to_string(), num(markov_check(zi, *nodes)?)]);
            }
            rec
        }
        AsymptCommand::Path { n, z1, z2 } => {
            let mut rec = Records::new("asympt-path", &["n", "z1", "z2", "nth_root", "limit"]);
            let limit = tau_interval(&BigComplex::from_gauss(z2, prec))?.abs_f64() / 2.0;
            for &k in &n.0 {
                let v = path_integral_nthroot(k, z1, z2)?;
                rec.rows.push(vec![k.to_string(), z1.to_string(), z2.to_string(), num(v), num(limit)]);
            }
            rec
        }
    };
    Ok(out.into_output())
}

fn region(a: &RegionArgs, prec: u32) -> Result<Output, CliError> {
    let lambda = a.lambda.as_ref().map(|l| BigComplex::from_gauss(l, prec));
    let need_lambda = || lambda.clone().ok_or_else(|| usage("this split needs --lambda"));
    let mut rec = Records::new("region", &["z", "region", "boundary_dist", "on_boundary"]);
    for zi in &a.z {
        let z = BigComplex::from_gauss(zi, prec);
        let tol = default_tol(prec);
        let row = match a.split {
            Split::E => label_row(classify_e(&z, tol)),
            Split::F => label_row(classify_f(&z, tol)),
            Split::Disc => label_row(classify_disc(&z, tol)),
            Split::Level => label_row(classify_level(&z, &need_lambda()?, tol)?),
            Split::Cardioid => {
                let r = a.r.ok_or_else(|| usage("cardioid needs --r"))?;
                let inside = cardioid_contains(&z, &need_lambda()?, r);
                let name = if inside { "inside_cardioid" } else { "outside_cardioid" };
                [name.to_string(), String::new(), String::new()]
            }
        };
        let [r, d, b] = row;
        rec.rows.push(vec![zi.to_string(), r, d, b]);
    }
    Ok(rec.into_output())
}

fn label_row(l: RegionLabel) -> [String; 3] {
    [l.region.to_string(), num(l.boundary_dist), l.on_boundary.to_string()]
}

fn check(a: &CheckArgs, seed: u64) -> Outcome {
    let suites: Vec<Suite> = match a.suite {
        SuiteName::Exact => vec![Suite::Exact],
        SuiteName::Asympt => vec![Suite::Asympt],
        SuiteName::Zeros => vec![Suite::Zeros],
        SuiteName::Bounds => vec![Suite::Bounds],
        SuiteName::All => Suite::ALL.to_vec(),
    };
    let cfg = CheckConfig {
        seed,
        n_max: a.n_max,
        cardioid_instances: a.cardioid_instances,
        schur_instances: a.schur_instances,
    };
    let report = verify::run(&suites, &cfg);
    let mut table = Table::new(&[
        "id", "suite", "passed", "known_failure", "threshold", "measurement", "value",
    ]);
    let mut criteria = Vec::new();
    for c in &report.criteria {
        for m in &c.measured {
            table.push(vec![
                c.id.into(),
                c.suite.to_string(),
                c.passed.to_string(),
                c.known_failure.unwrap_or_default().into(),
                c.threshold.clone(),
                m.name.clone(),
                num(m.value),
            ]);
        }
        let measured: Vec<Value> = c
            .measured
            .iter()
            .map(|m| json!({ "name": m.name, "value": num(m.value) }))
            .collect();
        criteria.push(json!({
            "id": c.id,
            "suite": c.suite.to_string(),
            "title": c.title,
            "passed": c.passed,
            "known_failure": c.known_failure,
            "threshold": c.threshold,
            "measured": measured,
        }));
    }
    let suite_names: Vec<String> = suites.iter().map(ToString::to_string).collect();
    Outcome {
        output: Output {
            json: json!({
                "command": "check",
                "suites": suite_names,
                "seed": seed,
                "n_max": a.n_max,
                "passed": report.all_passed(),
                "criteria": criteria,
            }),
            table,
        },
        status: if report.all_passed() {
            Status::Ok
        } else {
            Status::Failed
        },
    }
}
