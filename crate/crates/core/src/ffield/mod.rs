//! Curves over finite fields: point counts, zeta numerators, Frobenius
//! eigenvalues and the Frobenius-equivariant Poincaré pairing.

mod curve;
mod gf;
mod spectrum;
mod zeta;

pub use curve::{count_points, CurveOverFq, WeierstrassCurve, MAX_CURVE_FIELD, MAX_GENUS};
pub use gf::{prime_power, GaloisField, MAX_FIELD_SIZE};
pub use spectrum::{
    frobenius_eigenvalues, function_field_catalog, poincare_pairing_matrix, split_real_zeros, weil_check,
    EigenvalueJson, FfReport, FrobeniusEigenvalue, FrobeniusSpectrum, PairingJson, PoincarePairing,
};
pub use zeta::{base_change, zeta_numerator, ZetaPolynomial};
