use serde::Serialize;

use super::PairingValue;
use super::Form;
use crate::report::{ser_round12, ComplexJson};

/// JSON shape of one pairing evaluation.
#[derive(Debug, Clone, Serialize)]
pub struct PairingReport {
    pub form: String,
    pub weight: u32,
    pub catalog_ref: String,
    pub value: ComplexJson,
    pub twist: u32,
    /// Written as null when no bound is available.
    #[serde(serialize_with = "ser_round12")]
    pub truncation_bound: f64,
    pub flags: Vec<String>,
}

impl PairingReport {
    pub fn new(form: Form, weight: u32, catalog_ref: &str, p: &PairingValue) -> Self {
        PairingReport {
            form: form.name().to_string(),
            weight,
            catalog_ref: catalog_ref.to_string(),
            value: ComplexJson::from(p.value),
            twist: p.twist,
            truncation_bound: p.truncation_bound,
            flags: p.flags.iter().map(|f| f.name().to_string()).collect(),
        }
    }
}
