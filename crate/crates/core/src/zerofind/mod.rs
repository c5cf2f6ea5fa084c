//! Critical-line and real zeros of completed L-functions.
//!
//! A [`ZeroCatalog`] holds the ordinates γ > 0 of the zeros `w/2 + iγ` and
//! the real zeros with multiplicities; it is the spectral data every pairing
//! is summed over.

mod catalog;
mod completeness;
mod family;
mod scan;

pub use catalog::{RealZero, Zero, ZeroCatalog};
pub use completeness::{argument_s, completeness_check, riemann_zero_count, Certificate};
pub use family::{CompletedL, FamilyTag, RiemannXi};
pub use scan::{
    detect_real_zeros, refine_root, scan_zero_count, scan_zeros, RealZeroReport, Refinement,
    BISECTION_WIDTH, DEFAULT_STEP, MAX_STEP, ZERO_CHECK,
};
