use serde::{Deserialize, Serialize};

use super::FamilyTag;
use crate::error::{Error, Result};
use crate::report::{round12, ser_round12};

/// A critical-line zero `center + i·gamma`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Zero {
    #[serde(serialize_with = "ser_round12")]
    pub gamma: f64,
    pub mult: u32,
}

/// A zero on the real axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RealZero {
    #[serde(serialize_with = "ser_round12")]
    pub sigma: f64,
    pub mult: u32,
}

/// Ordered zeros of one completed L-function up to height `t_max`.
///
/// Ordinates are stored at 12 significant digits so that a catalog read back
/// from JSON is bit-identical to the one that was written.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroCatalog {
    pub family: FamilyTag,
    pub weight: u32,
    #[serde(serialize_with = "ser_round12")]
    pub center: f64,
    #[serde(serialize_with = "ser_round12")]
    pub t_max: f64,
    pub tolerance: f64,
    pub zeros: Vec<Zero>,
    pub real_zeros: Vec<RealZero>,
    pub certified: bool,
}

impl ZeroCatalog {
    pub fn new(
        family: FamilyTag,
        weight: u32,
        t_max: f64,
        tolerance: f64,
        zeros: Vec<Zero>,
        real_zeros: Vec<RealZero>,
    ) -> Result<Self> {
        let catalog = ZeroCatalog {
            family,
            weight,
            center: f64::from(weight) / 2.0,
            t_max: round12(t_max),
            tolerance,
            zeros: zeros
                .into_iter()
                .map(|z| Zero {
                    gamma: round12(z.gamma),
                    mult: z.mult,
                })
                .collect(),
            real_zeros: real_zeros
                .into_iter()
                .map(|z| RealZero {
                    sigma: round12(z.sigma),
                    mult: z.mult,
                })
                .collect(),
            certified: false,
        };
        catalog.validate()?;
        Ok(catalog)
    }

    pub fn validate(&self) -> Result<()> {
        if !matches!(self.weight, 1 | 2) {
            return Err(Error::InvalidArgument(format!(
                "catalog weight must be 1 or 2, got {}",
                self.weight
            )));
        }
        let mut previous = 0.0;
        for z in &self.zeros {
            if !(z.gamma > previous && z.gamma <= self.t_max) {
                return Err(Error::InvalidArgument(format!(
                    "ordinate {} out of order or outside (0, {}]",
                    z.gamma, self.t_max
                )));
            }
            if z.mult == 0 {
                return Err(Error::InvalidArgument("zero multiplicity".into()));
            }
            previous = z.gamma;
        }
        if self.real_zeros.iter().any(|z| z.mult == 0) {
            return Err(Error::InvalidArgument("zero multiplicity".into()));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }

    /// First `n` zeros, with `t_max` lowered to the midpoint before the
    /// dropped ones.
    pub fn truncated(&self, n: usize) -> ZeroCatalog {
        if n >= self.zeros.len() {
            return self.clone();
        }
        let t_max = if n == 0 {
            0.5 * self.zeros[0].gamma
        } else {
            0.5 * (self.zeros[n - 1].gamma + self.zeros[n].gamma)
        };
        ZeroCatalog {
            t_max: round12(t_max),
            zeros: self.zeros[..n].to_vec(),
            ..self.clone()
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("catalog serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let catalog: ZeroCatalog = serde_json::from_str(text).map_err(|e| Error::Parse {
            token: format!("line {} column {}", e.line(), e.column()),
            message: e.to_string(),
        })?;
        catalog.validate()?;
        Ok(catalog)
    }
}
