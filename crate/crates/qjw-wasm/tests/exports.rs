use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn exports_return_json_with_expected_fields() {
    let c = parse(qjw_wasm::concurrence_curve(4, 5));
    assert_eq!(c["design"], "SIM");
    assert_eq!(c["points"].as_array().unwrap().len(), 5);

    let w = parse(qjw_wasm::werner_scan(2, 5));
    assert_eq!(w["design"], "SIC");
    assert!(w["bounds"].is_object());
    assert_eq!(w["points"][4]["p"], 1.0);

    let g = parse(qjw_wasm::sim_gram(2, 1.0, 3));
    assert_eq!(g["gram"].as_array().unwrap().len(), 4);
    let (diag, off) = (g["diagonal"].as_f64().unwrap(), g["expected_off_diagonal"].as_f64().unwrap());
    assert!((off + diag / 3.0).abs() < 1e-12);
}

#[test]
fn same_seed_same_output() {
    assert_eq!(qjw_wasm::sim_gram(3, 0.5, 4), qjw_wasm::sim_gram(3, 0.5, 4));
}
