use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "zsl", version, about = "Zero catalogs, spectral pairings and their checks")]
pub struct Cli {
    /// Tolerance for the self-checks attached to reports.
    #[arg(long, global = true, env = "ZSL_TOL", default_value_t = 1e-10, value_parser = positive_real)]
    pub tol: f64,

    /// Sign-change scan step along the critical line.
    #[arg(long, global = true, default_value_t = 0.01, value_parser = positive_real)]
    pub step: f64,

    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a zero catalog.
    Zeros(FamilyArgs),
    /// Pair two test functions over a catalog.
    Pair(PairArgs),
    /// Gram matrix of a family of test functions, with PSD and rank data.
    Gram(GramArgs),
    /// Zeta numerator, Frobenius eigenvalues and Poincaré pairing of a curve over a finite field.
    Ff(FfArgs),
    /// Root number, functional equation, zeros and Λ-total of an elliptic curve over ℚ.
    Ec(EcArgs),
    /// Suspend Frobenius eigenvalues into the fundamental strip.
    Suspend(SuspendArgs),
    /// Run the acceptance suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    /// `riemann`, an elliptic curve (`11a1`, `ec:...`) or a curve over a
    /// finite field (`ell:...`, `counts:...`).
    #[arg(long, default_value = "riemann")]
    pub family: String,

    /// Number of zeros to catalog.
    #[arg(long, conflicts_with = "t_max")]
    pub count: Option<usize>,

    /// Catalog every zero with ordinate up to this height.
    #[arg(long, value_parser = positive_real)]
    pub t_max: Option<f64>,
}

#[derive(Debug, Args)]
pub struct CatalogSource {
    /// Catalog file written by `zsl zeros`.
    #[arg(long, conflicts_with_all = ["family", "count", "t_max"])]
    pub catalog: Option<PathBuf>,

    #[command(flatten)]
    pub family: FamilyArgs,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    #[arg(long, value_parser = parse_form)]
    pub form: zsl_core::pairing::Form,

    #[command(flatten)]
    pub source: CatalogSource,

    /// Test function in the DSL; give exactly two.
    #[arg(long = "fn", required = true, num_args = 1, value_name = "EXPR")]
    pub functions: Vec<String>,
}

#[derive(Debug, Args)]
pub struct GramArgs {
    #[arg(long, value_parser = parse_form, default_value = "hermitian")]
    pub form: zsl_core::pairing::Form,

    #[command(flatten)]
    pub source: CatalogSource,

    /// Family member in the DSL; the default family when none is given.
    #[arg(long = "fn", value_name = "EXPR")]
    pub functions: Vec<String>,

    /// Relative singular-value threshold for the numeric rank.
    #[arg(long, default_value_t = 1e-9, value_parser = positive_real)]
    pub rank_threshold: f64,
}

#[derive(Debug, Args)]
pub struct FfArgs {
    /// `ell:q=<q>;a1=..,a2=..,a3=..,a4=..,a6=..` or `counts:q=<q>;g=<g>;N=<N1>,<N2>,...`.
    #[arg(long)]
    pub curve: String,

    /// Report the curve over the degree-r extension instead.
    #[arg(long, default_value_t = 1)]
    pub base_change: u32,
}

#[derive(Debug, Args)]
pub struct EcArgs {
    /// Preset (`11a1`, `37a1`) or `ec:a1,a2,a3,a4,a6@N=<N>[;ap:p=v,...][;eps=±1]`.
    #[arg(long, default_value = "11a1")]
    pub curve: String,

    /// Height up to which zeros of Λ(E, 1 + it) are cataloged.
    #[arg(long, default_value_t = 20.0, value_parser = positive_real)]
    pub t_max: f64,

    /// Point at which Λ-total is factored.
    #[arg(long, default_value = "0.7+1.5i", value_parser = crate::complex_arg::parse_complex)]
    pub at: zsl_core::Complex,
}

#[derive(Debug, Args)]
pub struct SuspendArgs {
    #[arg(long)]
    pub q: u64,

    /// Eigenvalue `<value>[:<mult>]`, with value `a`, `a+bi` or `bi`.
    #[arg(long = "eigenvalue", value_name = "ALPHA", allow_hyphen_values = true, conflicts_with = "zeta")]
    pub eigenvalues: Vec<String>,

    /// Zeta numerator coefficients `1,a1,...,a2g`; eigenvalues are then exact.
    #[arg(long, allow_hyphen_values = true)]
    pub zeta: Option<String>,

    /// Exponents m of the twist check t = q^m.
    #[arg(long, default_values_t = [1], allow_hyphen_values = true)]
    pub twist: Vec<i32>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Run only these criteria.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=10))]
    pub only: Vec<u8>,
}

fn positive_real(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        _ => Err(format!("`{s}` is not a positive real number")),
    }
}

fn parse_form(s: &str) -> Result<zsl_core::pairing::Form, String> {
    s.parse().map_err(|e: zsl_core::Error| e.to_string())
}
