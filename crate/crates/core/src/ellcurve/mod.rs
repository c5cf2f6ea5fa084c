//! Elliptic curves over ℚ: Hecke coefficients, the completed L-function
//! Λ(E, s), its root number and zeros, and its product decomposition.

mod curve;
mod lfunc;
mod motive;

pub use curve::{DirichletCoefficients, EllipticCurveQ, MAX_AP_PRIME, MAX_COEFFICIENTS};
pub use lfunc::{real_axis_hypothesis, root_number, EllipticL, RealAxisVerdict, RootNumber, ROOT_NUMBER_TOL, SPLIT_MODULUS};
pub use motive::{
    lambda_total, lambda_total_symmetry, motive_factors, CatalogLink, LambdaFactor, LambdaTotal, MotiveFactor,
    FACTOR_LABELS, MOTIVE_LABELS, TWISTS,
};
