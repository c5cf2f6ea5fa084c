//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Each export takes plain strings and numbers and returns a JSON document.
//! The `*_json` functions hold the logic and are what the native tests call.

use std::sync::Arc;

use serde::Serialize;
use wasm_bindgen::prelude::*;
use zsl_core::ffield::{CurveOverFq, FfReport};
use zsl_core::mellin::TestFunction;
use zsl_core::pairing::{pair, spectralize, Form, PairingReport};
use zsl_core::zerofind::{scan_zeros, RiemannXi, DEFAULT_STEP};

/// Largest height the page will scan; keeps a click under a second.
pub const MAX_HEIGHT: f64 = 300.0;

/// Riemann zero catalog up to height `t_max`.
pub fn zeros_json(t_max: f64) -> Result<String, String> {
    if !(t_max > 0.0 && t_max <= MAX_HEIGHT) {
        return Err(format!("height must be in (0, {MAX_HEIGHT}]"));
    }
    let catalog = scan_zeros(&RiemannXi, t_max, DEFAULT_STEP).map_err(|e| e.to_string())?;
    Ok(catalog.to_json())
}

/// Zeta numerator, Frobenius eigenvalues and pairing data of a curve over 𝔽_q.
pub fn curve_json(descriptor: &str) -> Result<String, String> {
    let curve: CurveOverFq = descriptor.parse().map_err(|e: zsl_core::Error| e.to_string())?;
    let p = curve.zeta_numerator().map_err(|e| e.to_string())?;
    Ok(FfReport::new(&p).map_err(|e| e.to_string())?.to_json())
}

#[derive(Serialize)]
struct PairOutput {
    #[serde(flatten)]
    report: PairingReport,
    zeros_used: usize,
}

/// Pairing of two DSL test functions over the Riemann zeros up to `t_max`.
pub fn pair_json(form: &str, f: &str, g: &str, t_max: f64) -> Result<String, String> {
    let form: Form = form.parse().map_err(|e: zsl_core::Error| e.to_string())?;
    let f: TestFunction = f.parse().map_err(|e: zsl_core::Error| e.to_string())?;
    let g: TestFunction = g.parse().map_err(|e: zsl_core::Error| e.to_string())?;
    if !(t_max > 0.0 && t_max <= MAX_HEIGHT) {
        return Err(format!("height must be in (0, {MAX_HEIGHT}]"));
    }
    let catalog = Arc::new(scan_zeros(&RiemannXi, t_max, DEFAULT_STEP).map_err(|e| e.to_string())?);
    let u = spectralize(&f, catalog.clone()).map_err(|e| e.to_string())?;
    let v = spectralize(&g, catalog.clone()).map_err(|e| e.to_string())?;
    let value = pair(form, &u, &v).map_err(|e| e.to_string())?;
    let catalog_ref = format!("{}/{}", catalog.family, catalog.zeros.len());
    let out = PairOutput {
        report: PairingReport::new(form, catalog.weight, &catalog_ref, &value),
        zeros_used: catalog.zeros.len(),
    };
    serde_json::to_string_pretty(&out).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn zeros(t_max: f64) -> Result<String, JsError> {
    zeros_json(t_max).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn curve(descriptor: &str) -> Result<String, JsError> {
    curve_json(descriptor).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = pairFunctions)]
pub fn pair_functions(form: &str, f: &str, g: &str, t_max: f64) -> Result<String, JsError> {
    pair_json(form, f, g, t_max).map_err(|e| JsError::new(&e))
}
