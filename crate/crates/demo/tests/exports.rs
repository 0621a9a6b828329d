use locoh_demo::{census_json, roots_json, torsion_json};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn roots_vanish_and_curve_crosses_zero() {
    let v = parse(roots_json(6).unwrap());
    let roots = v["roots"].as_array().unwrap();
    assert_eq!(roots.len(), 6);
    for r in v["residuals"].as_array().unwrap() {
        assert!(r.as_f64().unwrap() < 1e-9);
    }
    let ys: Vec<f64> = v["curve"].as_array().unwrap().iter().map(|p| p[1].as_f64().unwrap()).collect();
    let sign_changes = ys.windows(2).filter(|w| w[0] * w[1] < 0.0).count();
    assert_eq!(sign_changes, 6);
    assert!(roots_json(0).is_err());
    assert!(roots_json(41).is_err());
}

#[test]
fn census_matches_core() {
    let v = parse(census_json(3, 5).unwrap());
    assert_eq!(v["rows"][2]["cumulative_count"], 4);
    assert!(census_json(3, 6).is_err());
    assert!(census_json(0, 5).is_err());
}

#[test]
fn torsion_certificate_round_trips() {
    let v = parse(torsion_json(2).unwrap());
    assert_eq!(v["reverified"], true);
    assert_eq!(v["nonvanishing"], "x*y ∉ (x^2, y^2) mod 2");
    let cert: locoh::cohomology::TorsionCertificate = serde_json::from_value(v["certificate"].clone()).unwrap();
    assert!(cert.reverify());
    assert!(torsion_json(4).is_err());
    assert!(torsion_json(17).is_err());
}
