use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use polyint::GaussRat;

#[derive(Parser, Debug)]
#[command(
    name = "polyint",
    version,
    about = "Iterated integrals of polynomials: exact families, zeros, curves and asymptotic checks"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Working precision in bits for floating-point stages
    #[arg(long, global = true, default_value_t = 256,
          value_parser = clap::value_parser!(u32).range(64..))]
    pub prec_bits: u32,
    /// Relative residual tolerance for root finding
    #[arg(long, global = true, default_value_t = 1e-30, value_parser = positive_f64)]
    pub tol: f64,
    /// Seed for every randomised stage
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write to FILE instead of standard output
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact coefficients of a family member
    Gen(GenArgs),
    /// Exact normalised m-fold integral I_{m,λ} of a monic polynomial
    Integrate(IntegrateArgs),
    /// Zeros of family members over a range of degrees
    Zeros(ZerosArgs),
    /// Sample points of a closed curve
    Curve(CurveArgs),
    /// Asymptotic statistics
    #[command(subcommand)]
    Asympt(AsymptCommand),
    /// Region labels of points
    Region(RegionArgs),
    /// Run verification suites
    Check(CheckArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyName {
    /// Q_{n,m}
    Bcd,
    /// (1+z)^n
    BinomPow,
    /// monic Legendre
    Legendre,
    /// monic ultraspherical, parameter alpha + 1/2
    Ultra,
    /// monic Chebyshev of the first kind
    Chebyshev,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    pub family: FamilyName,
    #[arg(long)]
    pub n: usize,
    /// Second index of Q_{n,m}
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub alpha: Option<usize>,
}

#[derive(Args, Debug)]
pub struct IntegrateArgs {
    /// Coefficients in ascending order, comma separated
    #[arg(long, value_delimiter = ',', conflicts_with = "input", required_unless_present = "input")]
    pub coeffs: Vec<String>,
    /// JSON file written by `gen` or `integrate`
    #[arg(long, value_name = "FILE")]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub m: usize,
    #[arg(long, default_value = "0", value_parser = parse_gauss)]
    pub lambda: GaussRat,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum MRule {
    /// m = n
    #[value(name = "n")]
    Same,
    /// m = n + 1
    #[value(name = "n+1")]
    Next,
    /// m given by --m
    Fixed,
}

#[derive(Args, Debug)]
pub struct ZerosArgs {
    pub family: FamilyName,
    /// Degrees: `20..70` (inclusive), `10,20,40` or `5`
    #[arg(long, value_parser = parse_n_list)]
    pub n: NList,
    /// Number of integrations (for bcd: the second index)
    #[arg(long, alias = "iterate", value_enum, default_value_t = MRule::Same)]
    pub m_rule: MRule,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub alpha: Option<usize>,
    /// Base point of the integrals (not used for bcd)
    #[arg(long, default_value = "0", value_parser = parse_gauss)]
    pub lambda: GaussRat,
    /// Drop the exact zeros at the origin
    #[arg(long)]
    pub strip_origin: bool,
    #[arg(long, default_value_t = 2000)]
    pub max_iter: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurveName {
    Gamma,
    #[value(name = "gamma_pre")]
    GammaPre,
    Cardioid,
    Level,
}

#[derive(Args, Debug)]
pub struct CurveArgs {
    pub name: CurveName,
    /// Number of sample points
    #[arg(long, default_value_t = 256)]
    pub points: usize,
    #[arg(long, value_parser = parse_gauss)]
    pub lambda: Option<GaussRat>,
    #[arg(long, value_parser = positive_f64)]
    pub r: Option<f64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelName {
    Qnn,
    Qnn1,
    UltraEven,
    UltraOdd,
    FixedM,
}

#[derive(Subcommand, Debug)]
pub enum AsymptCommand {
    /// |actual/model - 1| for a model family
    Ratio {
        #[arg(long, value_enum)]
        model: ModelName,
        #[arg(long, default_value_t = 0)]
        alpha: usize,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, value_parser = parse_n_list)]
        n: NList,
        #[arg(long, value_delimiter = ',', required = true, value_parser = parse_gauss)]
        z: Vec<GaussRat>,
    },
    /// |Q_{n,m}(z)|^{1/deg}
    NthRoot {
        #[arg(long, value_parser = parse_n_list)]
        n: NList,
        #[arg(long, value_enum, default_value_t = MRule::Same)]
        m_rule: MRule,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, value_delimiter = ',', required = true, value_parser = parse_gauss)]
        z: Vec<GaussRat>,
    },
    /// Log potential of the zero counting measure of Q_{n,n}
    Potential {
        #[arg(long, value_parser = parse_n_list)]
        n: NList,
        #[arg(long, value_delimiter = ',', required = true, value_parser = parse_gauss)]
        z: Vec<GaussRat>,
    },
    /// Angular equidistribution discrepancy of the zeros of Q_{n,n}
    Discrepancy {
        #[arg(long, value_parser = parse_n_list)]
        n: NList,
        #[arg(long, default_value_t = 8)]
        bins: usize,
    },
    /// φ_n / I_{m,λ}(φ_n) for monic Chebyshev φ_n
    ChebyshevRatio {
        #[arg(long, value_parser = parse_n_list)]
        n: NList,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, default_value = "0", value_parser = parse_gauss)]
        lambda: GaussRat,
        #[arg(long, value_delimiter = ',', required = true, value_parser = parse_gauss)]
        z: Vec<GaussRat>,
    },
    /// Chebyshev–Gauss quadrature of the Markov function against ψ
    Markov {
        #[arg(long, value_delimiter = ',', required = true, value_parser = parse_gauss)]
        z: Vec<GaussRat>,
        #[arg(long, default_value_t = 64)]
        nodes: usize,
    },
    /// n-th root of the integral of monic Chebyshev between two points
    Path {
        #[arg(long, value_parser = parse_n_list)]
        n: NList,
        #[arg(long, value_parser = parse_gauss)]
        z1: GaussRat,
        #[arg(long, value_parser = parse_gauss)]
        z2: GaussRat,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Split {
    /// E1 / E2 via φ(z) = (z+1)^2/(4z)
    E,
    /// F1 / F2 via (z^2-1)/(2z)
    F,
    /// |z+1| against 1
    Disc,
    /// level curve of the exterior map of [-1,1] through λ
    Level,
    /// cardioid region F_r(closed unit disc) for λ, r
    Cardioid,
}

#[derive(Args, Debug)]
pub struct RegionArgs {
    pub split: Split,
    #[arg(long, value_delimiter = ',', required = true, value_parser = parse_gauss)]
    pub z: Vec<GaussRat>,
    #[arg(long, value_parser = parse_gauss)]
    pub lambda: Option<GaussRat>,
    #[arg(long, value_parser = positive_f64)]
    pub r: Option<f64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteName {
    Exact,
    Asympt,
    Zeros,
    Bounds,
    All,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    pub suite: SuiteName,
    /// Truncate the degree sweeps of the asymptotic checks
    #[arg(long, default_value_t = 400)]
    pub n_max: usize,
    #[arg(long, default_value_t = 1000)]
    pub cardioid_instances: usize,
    #[arg(long, default_value_t = 100)]
    pub schur_instances: usize,
}

/// Nonempty list of degrees in input order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NList(pub Vec<usize>);

pub fn parse_n_list(s: &str) -> Result<NList, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    let out = if let Some((a, b)) = s.split_once("..") {
        let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
        if a > b {
            return Err(format!("empty range {s}"));
        }
        (a..=b).collect()
    } else {
        s.split(',').map(num).collect::<Result<Vec<_>, _>>()?
    };
    if out.is_empty() {
        return Err("empty degree list".into());
    }
    Ok(NList(out))
}

pub fn parse_gauss(s: &str) -> Result<GaussRat, String> {
    s.parse().map_err(|e: polyint::Error| e.to_string())
}

fn positive_f64(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{s:?}: {e}"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("{s} must be positive"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_lists() {
        assert_eq!(parse_n_list("20..70").unwrap().0.len(), 51);
        assert_eq!(parse_n_list("3..=5").unwrap().0, vec![3, 4, 5]);
        assert_eq!(parse_n_list("10,20,40").unwrap().0, vec![10, 20, 40]);
        assert!(parse_n_list("5..2").is_err());
        assert!(parse_n_list("x").is_err());
    }

    #[test]
    fn cli_is_well_formed() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
