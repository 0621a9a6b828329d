//! Browser bindings: each export returns a JSON string, or throws a string
//! error on bad input.

use locoh::cohomology::{eta_torsion_check, DEFAULT_K_MAX};
use locoh::polyring::CoefficientDomain;
use locoh::toeplitz::{factor_census as census, st_ring, QnFamily};
use serde::Serialize;
use wasm_bindgen::prelude::*;

const MAX_N: usize = 40;
const MAX_TORSION_P: u64 = 13;
const SAMPLES: usize = 400;

#[derive(Serialize)]
struct Roots {
    n: usize,
    polynomial: String,
    roots: Vec<f64>,
    residuals: Vec<f64>,
    /// `(t, Q_n(1, t))` on `[-2.2, 2.2]`.
    curve: Vec<(f64, f64)>,
}

#[derive(Serialize)]
struct Torsion<'a> {
    p: u64,
    torsion_witness_k: u32,
    nonvanishing: &'a str,
    reverified: bool,
    certificate: &'a locoh::cohomology::TorsionCertificate,
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

pub fn roots_json(n: usize) -> Result<String, String> {
    if !(1..=MAX_N).contains(&n) {
        return Err(format!("n must be in 1..={MAX_N}"));
    }
    let ring = st_ring(CoefficientDomain::Rational);
    let mut fam = QnFamily::new(&ring).map_err(|e| e.to_string())?;
    let q = fam.dehomogenized(n);
    let at = |t: f64| q.eval_f64(&[1.0, t]).expect("two coordinates");
    let roots: Vec<f64> = (1..=n).map(|r| 2.0 * (r as f64 * std::f64::consts::PI / (n + 1) as f64).cos()).collect();
    let residuals = roots.iter().map(|&t| at(t).abs()).collect();
    let curve = (0..=SAMPLES)
        .map(|i| {
            let t = -2.2 + 4.4 * i as f64 / SAMPLES as f64;
            (t, at(t))
        })
        .collect();
    Ok(json(&Roots { n, polynomial: fam.get(n).to_string(), roots, residuals, curve }))
}

pub fn census_json(n_max: usize, p: u64) -> Result<String, String> {
    if !(1..=MAX_N).contains(&n_max) {
        return Err(format!("n_max must be in 1..={MAX_N}"));
    }
    if p > 65521 {
        return Err("p must be at most 65521".into());
    }
    census(n_max, p).map(|c| json(&c)).map_err(|e| e.to_string())
}

pub fn torsion_json(p: u64) -> Result<String, String> {
    if p > MAX_TORSION_P {
        return Err(format!("p must be at most {MAX_TORSION_P}"));
    }
    let cert = eta_torsion_check(p, DEFAULT_K_MAX).map_err(|e| e.to_string())?;
    Ok(json(&Torsion {
        p,
        torsion_witness_k: cert.annihilation.k,
        nonvanishing: &cert.nonvanishing.step5.statement,
        reverified: cert.reverify(),
        certificate: &cert,
    }))
}

#[wasm_bindgen]
pub fn toeplitz_roots(n: usize) -> Result<String, JsValue> {
    roots_json(n).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn factor_census(n_max: usize, p: u32) -> Result<String, JsValue> {
    census_json(n_max, p.into()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn torsion_certificate(p: u32) -> Result<String, JsValue> {
    torsion_json(p.into()).map_err(|e| JsValue::from_str(&e))
}
