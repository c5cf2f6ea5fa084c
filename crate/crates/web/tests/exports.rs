use serde_json::Value;
use zsl_web::{curve_json, pair_json, zeros_json};

#[test]
fn zeros_below_fifty() {
    let doc: Value = serde_json::from_str(&zeros_json(50.0).unwrap()).unwrap();
    assert_eq!(doc["zeros"].as_array().unwrap().len(), 10);
    assert!(zeros_json(0.0).is_err());
    assert!(zeros_json(1e6).is_err());
}

#[test]
fn curve_report() {
    let doc: Value = serde_json::from_str(&curve_json("ell:q=2;a3=1").unwrap()).unwrap();
    assert_eq!(doc["P"], serde_json::json!([1, 0, 2]));
    let err = curve_json("ell:q=6;a4=1").unwrap_err();
    assert!(err.contains("q=6"), "{err}");
}

#[test]
fn pairing_is_antisymmetric() {
    let (f, g) = ("loggauss:a=100,mu=0", "loggauss:a=100,mu=0.5");
    let a: Value = serde_json::from_str(&pair_json("antisym", f, g, 60.0).unwrap()).unwrap();
    let b: Value = serde_json::from_str(&pair_json("antisym", g, f, 60.0).unwrap()).unwrap();
    assert_eq!(a["twist"], 1);
    assert_eq!(a["value"]["im"].as_f64().unwrap(), -b["value"]["im"].as_f64().unwrap());
    assert!(pair_json("skew", f, g, 60.0).is_err());
    assert!(pair_json("antisym", "loggauss:a=1", g, 60.0).is_err());
}
