//! Shared output conventions: 12-significant-digit numbers and the JSON
//! shapes used for complex values.

use serde::{Deserialize, Serialize, Serializer};

use crate::specfun::Complex;

/// Rounds to 12 significant digits. Idempotent.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// Serializer for `f64` fields written with 12 significant digits.
pub fn ser_round12<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(round12(*x))
}

/// `{re, im}` pair as written to reports.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexJson {
    #[serde(serialize_with = "ser_round12")]
    pub re: f64,
    #[serde(serialize_with = "ser_round12")]
    pub im: f64,
}

impl From<Complex> for ComplexJson {
    fn from(z: Complex) -> Self {
        ComplexJson { re: z.re, im: z.im }
    }
}

impl From<ComplexJson> for Complex {
    fn from(z: ComplexJson) -> Self {
        Complex::new(z.re, z.im)
    }
}

/// Fixed-width text form used in CSV cells: `<re>+<im>i`.
pub fn format_complex(z: Complex) -> String {
    let re = round12(z.re);
    let im = round12(z.im);
    if im.is_sign_negative() {
        format!("{re:e}-{:e}i", -im)
    } else {
        format!("{re:e}+{im:e}i")
    }
}
