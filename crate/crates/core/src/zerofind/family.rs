use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::specfun::Complex;
use crate::Result;

/// Which L-function a catalog belongs to.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FamilyTag {
    Riemann,
    /// Curve descriptor: a preset name (`11a1`) or an `ec:` string.
    Elliptic(String),
    FunctionField { q: u64, numerator: Vec<i64> },
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyTag::Riemann => f.write_str("riemann"),
            FamilyTag::Elliptic(id) => write!(f, "elliptic({id})"),
            FamilyTag::FunctionField { q, numerator } => {
                let coeffs: Vec<String> = numerator.iter().map(i64::to_string).collect();
                write!(f, "function-field(q={q};P={})", coeffs.join(","))
            }
        }
    }
}

impl FromStr for FamilyTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            token: s.to_string(),
            message: "expected riemann, elliptic(<curve>) or function-field(q=<q>;P=<coeffs>)"
                .into(),
        };
        let s = s.trim();
        if s == "riemann" {
            return Ok(FamilyTag::Riemann);
        }
        if let Some(inner) = s.strip_prefix("elliptic(").and_then(|r| r.strip_suffix(')')) {
            return Ok(FamilyTag::Elliptic(inner.to_string()));
        }
        if let Some(inner) = s
            .strip_prefix("function-field(")
            .and_then(|r| r.strip_suffix(')'))
        {
            let (q_part, p_part) = inner.split_once(';').ok_or_else(bad)?;
            let q = q_part
                .strip_prefix("q=")
                .and_then(|v| v.parse().ok())
                .ok_or_else(bad)?;
            let numerator = p_part
                .strip_prefix("P=")
                .ok_or_else(bad)?
                .split(',')
                .map(|c| c.trim().parse::<i64>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?;
            return Ok(FamilyTag::FunctionField { q, numerator });
        }
        Err(bad())
    }
}

impl FamilyTag {
    /// Conductor of an elliptic family: the leading digits of a Cremona
    /// label, or the `@N=` field of an `ec:` descriptor.
    pub fn conductor(&self) -> Option<u64> {
        let FamilyTag::Elliptic(id) = self else { return None };
        if let Some((_, rest)) = id.split_once("@N=") {
            let digits: String = rest.chars().take_while(char::is_ascii_digit).collect();
            return digits.parse().ok();
        }
        let digits: String = id.chars().take_while(char::is_ascii_digit).collect();
        digits.parse().ok()
    }

    /// Upper bound on the number of zeros with ordinate in [t, t + 1], from
    /// the smooth part of the zero-counting function plus a margin for its
    /// oscillating remainder, which stays below 1 (Riemann) or 2 (elliptic)
    /// in absolute value at the heights used here.
    pub fn zero_density_bound(&self, t: f64) -> Option<f64> {
        use std::f64::consts::PI;
        let t = t.max(0.0);
        match self {
            FamilyTag::Riemann => {
                let theta = |x: f64| crate::specfun::hardy_theta(x).unwrap_or(0.0);
                Some(((theta(t + 1.0) - theta(t)) / PI).max(0.0) + 2.0)
            }
            FamilyTag::Elliptic(_) => {
                let n = self.conductor()? as f64;
                Some((n.sqrt() * (t + 1.0) / (2.0 * PI)).ln().max(0.0) / PI + 4.0)
            }
            FamilyTag::FunctionField { q, numerator } => {
                // 2g zeros per period 2π/ln q; a unit interval meets at most
                // ⌈ln q/2π⌉ + 1 periods.
                let zeros = numerator.len().saturating_sub(1) as f64;
                let periods = ((*q as f64).ln() / (2.0 * PI)).ceil() + 1.0;
                Some(zeros * periods)
            }
        }
    }
}

impl Serialize for FamilyTag {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FamilyTag {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A completed L-function with a functional equation s ↦ w − s.
pub trait CompletedL: Sync {
    fn family(&self) -> FamilyTag;

    fn weight(&self) -> u32;

    fn center(&self) -> f64 {
        f64::from(self.weight()) / 2.0
    }

    fn eval(&self, s: Complex) -> Result<Complex>;

    /// Real-valued rotation of the restriction to the center line, with the
    /// same zeros as `eval(center + it)`.
    fn line_value(&self, t: f64) -> Result<f64>;

    /// Value on the real axis (real up to rounding).
    fn real_axis_value(&self, sigma: f64) -> Result<f64> {
        Ok(self.eval(Complex::new(sigma, 0.0))?.re)
    }

    /// Interval searched for real zeros when a catalog is built.
    fn real_zero_interval(&self) -> (f64, f64);

    /// True when the sign of the functional equation forces an odd-order
    /// zero at the center.
    fn parity_forced_center_zero(&self) -> bool {
        false
    }

    /// Upper bound on the number of zeros with ordinate in [t, t + 1].
    fn zero_density_bound(&self, t: f64) -> f64 {
        self.family().zero_density_bound(t).unwrap_or(f64::INFINITY)
    }
}

/// The completed zeta function π^{−s/2}Γ(s/2)ζ(s), scanned through Hardy's Z.
#[derive(Debug, Clone, Copy, Default)]
pub struct RiemannXi;

impl CompletedL for RiemannXi {
    fn family(&self) -> FamilyTag {
        FamilyTag::Riemann
    }

    fn weight(&self) -> u32 {
        1
    }

    fn eval(&self, s: Complex) -> Result<Complex> {
        crate::specfun::completed_l_q(s)
    }

    fn line_value(&self, t: f64) -> Result<f64> {
        crate::specfun::hardy_z(t)
    }

    fn real_zero_interval(&self) -> (f64, f64) {
        (0.05, 0.95)
    }

}
