//! Command-line configuration and parameter selection.

use std::fmt;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use qmacdo_core::field::{is_generic_pair, is_non_special};
use qmacdo_core::partition::Partition;
use qmacdo_core::{Params, Rat};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Kajihara,
    Kernel,
    Commute,
    Eigen,
    Wronski,
    Newton,
    HcGenerators,
    Restriction,
    Preserve,
    Independence,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Kajihara => "kajihara",
            Suite::Kernel => "kernel",
            Suite::Commute => "commute",
            Suite::Eigen => "eigen",
            Suite::Wronski => "wronski",
            Suite::Newton => "newton",
            Suite::HcGenerators => "hc-generators",
            Suite::Restriction => "restriction",
            Suite::Preserve => "preserve",
            Suite::Independence => "independence",
        }
    }

    /// One-line statement of what the suite checks.
    pub fn identity(self) -> &'static str {
        match self {
            Suite::Kajihara => "Kajihara transformation of multiple basic hypergeometric series, Heine's transformation",
            Suite::Kernel => "kernel identities (F(x,y) - F(z,w)) Phi = 0 for the normalized NS and MR operators, Psi variant for NS",
            Suite::Commute => "pairwise commutativity of the normalized deformed NS and MR operators",
            Suite::Eigen => "eigenvalue equations of the deformed operators and their hatted variants on super-Macdonald polynomials",
            Suite::Wronski => "Wronski relations between e_r and g_s, scalar and operator level",
            Suite::Newton => "Newton formulae relating e_r and the deformed power sums",
            Suite::HcGenerators => "Harish-Chandra layer: phi(g*_r) = g_r, shifted symmetry, exp-log form, injectivity spot checks",
            Suite::Restriction => "restriction intertwining phi o F_N = F_{n,m} o phi on power sums, stability in N",
            Suite::Preserve => "preservation of the super-symmetric algebra and the quasi-invariance implications",
            Suite::Independence => "algebraic independence of the deformed power sums via the Jacobian",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Lines,
    Table,
}

/// Exact identity checks for deformed Macdonald-Ruijsenaars and Noumi-Sano
/// operators. Exits 0 iff every residual is exactly zero.
#[derive(Clone, Debug, Parser)]
#[command(name = "qmacdo", version)]
pub struct Cli {
    /// Suite to run (also accepted as `--suite`).
    #[arg(value_enum)]
    pub suite_arg: Option<Suite>,
    #[arg(long, value_enum)]
    pub suite: Option<Suite>,
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub m: usize,
    /// Number of z variables (kernel and restriction suites).
    #[arg(long = "N")]
    pub big_n: Option<usize>,
    /// Number of w variables (kernel suite).
    #[arg(long = "M", default_value_t = 1)]
    pub big_m: usize,
    /// Rank of the left series (kajihara suite).
    #[arg(long = "K", default_value_t = 1)]
    pub k: usize,
    /// Rank of the right series (kajihara suite).
    #[arg(long = "L", default_value_t = 1)]
    pub l: usize,
    /// Largest operator index r.
    #[arg(long, default_value_t = 2)]
    pub rmax: u32,
    /// Series order in u, or the largest index of scalar recurrences.
    #[arg(long, default_value_t = 3)]
    pub order: u32,
    /// Degree bound: kernel truncation degree or partition weight bound.
    #[arg(long, default_value_t = 3)]
    pub deg: u32,
    /// A single partition, e.g. `2,1`.
    #[arg(long)]
    pub lam: Option<String>,
    /// A single operator index.
    #[arg(long)]
    pub r: Option<u32>,
    /// Value of q, a rational `p/q` or `symbolic`.
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,
    /// Value of t, a rational `p/q` or `symbolic`.
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<String>,
    /// Keep q and t as formal variables.
    #[arg(long)]
    pub symbolic: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Lines)]
    pub report: ReportFormat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

/// Validated suite configuration.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteConfig {
    pub suite: Suite,
    pub n: usize,
    pub m: usize,
    pub big_n: Option<usize>,
    pub big_m: usize,
    pub k: usize,
    pub l: usize,
    pub rmax: u32,
    pub order: u32,
    pub deg: u32,
    pub lam: Option<String>,
    pub r: Option<u32>,
    pub seed: u64,
    /// `q=..., t=...`.
    pub params: String,
    #[serde(skip)]
    pub parsed_lam: Option<Partition>,
    #[serde(skip)]
    pub parameters: Params,
}

/// Bound for the non-special check: twice the largest total degree a suite
/// can reach.
pub fn non_special_bound(cli: &Cli) -> u32 {
    let top = cli.rmax.max(cli.order).max(cli.deg) + (cli.n + cli.m) as u32;
    2 * top.max(1)
}

fn parse_param(s: &Option<String>, name: &str) -> Result<Option<Rat>, ConfigError> {
    match s.as_deref() {
        None | Some("symbolic") => Ok(None),
        Some(v) => v
            .parse::<Rat>()
            .map(Some)
            .map_err(|e| ConfigError(format!("--{name}: {e}"))),
    }
}

/// A rational with numerator and denominator drawn from `[2, 97]`.
pub fn random_rat(rng: &mut ChaCha8Rng) -> Rat {
    loop {
        let a: i64 = rng.gen_range(2..=97);
        let b: i64 = rng.gen_range(2..=97);
        if a != b {
            return Rat::new(a, b);
        }
    }
}

/// A random evaluation point passing the genericity check.
pub fn random_point(rng: &mut ChaCha8Rng, bound: u32) -> Params {
    loop {
        let (q, t) = (random_rat(rng), random_rat(rng));
        if is_generic_pair(&q, &t, bound) {
            return Params::eval(q, t).expect("generic pair");
        }
    }
}

impl SuiteConfig {
    pub fn from_cli(cli: &Cli) -> Result<SuiteConfig, ConfigError> {
        let suite = match (cli.suite_arg, cli.suite) {
            (Some(a), Some(b)) if a != b => return Err(ConfigError(format!("conflicting suites `{a}` and `{b}`"))),
            (Some(a), _) | (None, Some(a)) => a,
            (None, None) => return Err(ConfigError("no suite given".into())),
        };
        if cli.n > 8 || cli.m > 8 || cli.big_n.unwrap_or(0) > 10 || cli.big_m > 4 {
            return Err(ConfigError("too many variables: n, m ≤ 8, N ≤ 10, M ≤ 4".into()));
        }
        if cli.k == 0 || cli.l == 0 {
            return Err(ConfigError("--K and --L must be at least 1".into()));
        }
        let q = parse_param(&cli.q, "q")?;
        let t = parse_param(&cli.t, "t")?;
        let bound = non_special_bound(cli);
        let symbolic = cli.symbolic || cli.q.as_deref() == Some("symbolic") || cli.t.as_deref() == Some("symbolic");
        let parameters = match (q, t) {
            _ if symbolic => Params::symbolic(),
            (Some(q), Some(t)) => {
                if !is_non_special(&q, &t, bound) {
                    return Err(ConfigError(format!("q={q}, t={t} is special (q^i t^j = 1 with i + j ≤ {bound})")));
                }
                Params::eval(q, t).map_err(|e| ConfigError(e.to_string()))?
            }
            (None, None) => {
                use rand::SeedableRng;
                random_point(&mut ChaCha8Rng::seed_from_u64(cli.seed), bound)
            }
            _ => return Err(ConfigError("give both --q and --t, or --symbolic".into())),
        };
        let parsed_lam = match &cli.lam {
            Some(s) => Some(s.parse::<Partition>().map_err(|e| ConfigError(format!("--lam: {e}")))?),
            None => None,
        };
        Ok(SuiteConfig {
            suite,
            n: cli.n,
            m: cli.m,
            big_n: cli.big_n,
            big_m: cli.big_m,
            k: cli.k,
            l: cli.l,
            rmax: cli.rmax,
            order: cli.order,
            deg: cli.deg,
            lam: parsed_lam.as_ref().map(|l| l.to_string()),
            r: cli.r,
            seed: cli.seed,
            params: parameters.to_string(),
            parsed_lam,
            parameters,
        })
    }

    /// Operator indices to check: `--r` alone, or `1..=rmax`.
    pub fn indices(&self) -> Vec<u32> {
        match self.r {
            Some(r) => vec![r],
            None => (1..=self.rmax).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<SuiteConfig, ConfigError> {
        let cli = Cli::try_parse_from(std::iter::once("qmacdo").chain(args.iter().copied())).unwrap();
        SuiteConfig::from_cli(&cli)
    }

    #[test]
    fn suite_positional_or_flag() {
        assert_eq!(parse(&["commute", "--symbolic"]).unwrap().suite, Suite::Commute);
        assert_eq!(parse(&["--suite", "hc-generators", "--symbolic"]).unwrap().suite, Suite::HcGenerators);
        assert!(parse(&["commute", "--suite", "eigen"]).is_err());
        assert!(parse(&[]).is_err());
    }

    #[test]
    fn parameter_selection() {
        let c = parse(&["eigen", "--q", "2/3", "--t", "5/2"]).unwrap();
        assert_eq!(c.params, "q=2/3, t=5/2");
        assert!(parse(&["eigen", "--q", "1", "--t", "5/2"]).is_err());
        assert!(parse(&["eigen", "--q", "2/3"]).is_err());
        assert!(parse(&["eigen", "--q", "-1", "--t", "2"]).is_err());
        assert!(parse(&["eigen", "--symbolic"]).unwrap().parameters.is_symbolic());
        let a = parse(&["eigen", "--seed", "5"]).unwrap();
        let b = parse(&["eigen", "--seed", "5"]).unwrap();
        assert_eq!(a.params, b.params);
        assert!(!a.parameters.is_symbolic());
    }
}
