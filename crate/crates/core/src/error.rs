use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole of {function} at {at}")]
    Pole { function: &'static str, at: String },

    #[error("{what} did not converge after {iterations} iterations")]
    NonConvergence { what: &'static str, iterations: usize },

    #[error("argument {s} is outside the convergence strip {strip}")]
    OutsideStrip { s: String, strip: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("spectral vectors or catalogs do not match: {0}")]
    CatalogMismatch(String),

    #[error("scan step {step} exceeds the maximum {max}")]
    StepTooCoarse { step: f64, max: f64 },

    #[error("overlapping brackets near t = {near}; refine the scan step")]
    OverlappingBrackets { near: f64 },

    #[error("parse error at `{token}`: {message}")]
    Parse { token: String, message: String },

    #[error("Weil bound violated: {0}")]
    WeilViolation(String),

    #[error("eigenvalue {0} has no partner q/alpha of matching multiplicity")]
    UnpairedEigenvalue(String),

    #[error("zeta numerator coefficients are not integral: {0}")]
    NonIntegral(String),

    #[error("size cap exceeded: {0}")]
    SizeCap(String),

    #[error("curve is singular: {0}")]
    Singular(String),

    #[error("root number is ambiguous: residuals {plus:e} (eps=+1) and {minus:e} (eps=-1)")]
    AmbiguousSign { plus: f64, minus: f64 },

    #[error("root number has not been determined for this curve")]
    UnknownRootNumber,

    #[error("zero eigenvalue cannot be suspended")]
    ZeroEigenvalue,
}

impl Error {
    pub(crate) fn pole(function: &'static str, at: impl std::fmt::Display) -> Self {
        Error::Pole {
            function,
            at: at.to_string(),
        }
    }
}
