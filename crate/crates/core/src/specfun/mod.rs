//! Complex special functions: log-Gamma, Riemann zeta, Hardy's Z, the upper
//! incomplete Gamma function and the completed zeta function of the rationals.
//!
//! Everything here is a pure function of its arguments.

mod gamma;
mod incgamma;
mod zeta;

pub use gamma::{gamma, log_gamma};
pub use incgamma::{
    incomplete_gamma_upper, incomplete_gamma_upper_complex, lower_gamma_series,
};
pub use zeta::{completed_l_q, hardy_theta, hardy_z, hardy_z_rotated, riemann_zeta};

/// Complex scalar used throughout the crate.
pub type Complex = num_complex::Complex64;

/// Tolerance used to decide that an argument sits on a pole.
pub(crate) const POLE_EPS: f64 = 1e-12;

pub(crate) fn near_nonpositive_integer(z: Complex) -> Option<i64> {
    let r = z.re.round();
    if r <= 0.0 && (z.re - r).abs() < POLE_EPS && z.im.abs() < POLE_EPS {
        Some(r as i64)
    } else {
        None
    }
}
