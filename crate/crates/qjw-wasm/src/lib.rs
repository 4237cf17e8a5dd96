//! Browser bindings. Every export returns a JSON string; failures come back as
//! `{"error": "..."}` so the page never has to catch exceptions.
#![forbid(unsafe_code)]

use qjw::designs::{build_sic, build_sim, design_povm, ConicalDesign};
use qjw::entanglement::{
    concurrence_from_design, concurrence_schmidt, prob_norm, product_povm_probs, schmidt, werner_state, witness_tests,
    witnesses_from_design,
};
use qjw::linalg::{c, ComplexVector};
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

const MAX_D: usize = 5;

fn wrap(r: qjw::Result<Value>) -> String {
    r.unwrap_or_else(|e| json!({ "error": e.to_string() })).to_string()
}

fn check(d: usize, steps: usize) -> qjw::Result<()> {
    if !(2..=MAX_D).contains(&d) {
        return Err(qjw::Error::InvalidParameter(format!("d must be between 2 and {MAX_D}, got {d}")));
    }
    if !(2..=400).contains(&steps) {
        return Err(qjw::Error::InvalidParameter(format!("steps must be between 2 and 400, got {steps}")));
    }
    Ok(())
}

/// SIC where one ships, otherwise the SIM at the largest contraction.
fn default_design(d: usize) -> qjw::Result<(ConicalDesign, &'static str)> {
    if matches!(d, 2 | 3) {
        Ok((ConicalDesign::new(build_sic(d)?)?, "SIC"))
    } else {
        Ok((build_sim(d, 1.0 / (d as f64 - 1.0), 0)?, "SIM"))
    }
}

/// `sqrt(1-t)|00> + sqrt(t/(d-1)) sum_{i>0} |ii>`
fn family_state(d: usize, t: f64) -> ComplexVector {
    let mut psi = ComplexVector::zeros(d * d);
    psi[0] = c((1.0 - t).sqrt(), 0.0);
    let w = (t / (d as f64 - 1.0)).sqrt();
    for i in 1..d {
        psi[i * d + i] = c(w, 0.0);
    }
    psi
}

fn concurrence_curve_value(d: usize, steps: usize) -> qjw::Result<Value> {
    check(d, steps)?;
    let (design, name) = default_design(d)?;
    let povm = design_povm(&design)?;
    let k = ConicalDesign::new(povm.effects().to_vec())?.constants();
    let mut points = Vec::with_capacity(steps);
    for i in 0..steps {
        let t = i as f64 / (steps - 1) as f64;
        let psi = family_state(d, t);
        let pn = prob_norm(&product_povm_probs(&psi, &povm)?);
        points.push(json!({
            "t": t,
            "schmidt": concurrence_schmidt(&schmidt(&psi)?.coefficients),
            "design": concurrence_from_design(pn, k.ks, k.ka)?,
        }));
    }
    Ok(json!({ "d": d, "design": name, "points": points }))
}

fn werner_scan_value(d: usize, steps: usize) -> qjw::Result<Value> {
    check(d, steps)?;
    let (design, name) = default_design(d)?;
    let w = witnesses_from_design(&design)?;
    let mut points = Vec::with_capacity(steps);
    for i in 0..steps {
        let p = i as f64 / (steps - 1) as f64;
        let v = witness_tests(&werner_state(d, p)?, &w, 1e-10)?;
        points.push(json!({ "p": p, "verdicts": v }));
    }
    Ok(json!({ "d": d, "design": name, "bounds": w.bounds, "points": points }))
}

fn sim_gram_value(d: usize, kappa: f64, seed: u64) -> qjw::Result<Value> {
    check(d, 2)?;
    let design = build_sim(d, kappa, seed)?;
    let b = design.bloch_vectors();
    let gram: Vec<Vec<f64>> = b.iter().map(|x| b.iter().map(|y| x.inner(y)).collect()).collect();
    let n = gram.len();
    let diag = gram[0][0];
    let expected_off = -diag / (n as f64 - 1.0);
    let mut worst = 0.0f64;
    for (i, row) in gram.iter().enumerate() {
        for (j, g) in row.iter().enumerate() {
            let want = if i == j { diag } else { expected_off };
            worst = worst.max((g - want).abs());
        }
    }
    Ok(json!({
        "d": d,
        "kappa": kappa,
        "gram": gram,
        "diagonal": diag,
        "expected_off_diagonal": expected_off,
        "max_deviation": worst,
    }))
}

/// Concurrence along a one-parameter family of pure states, computed from
/// Schmidt coefficients and from design probabilities.
#[wasm_bindgen]
pub fn concurrence_curve(d: usize, steps: usize) -> String {
    wrap(concurrence_curve_value(d, steps))
}

/// Witness verdicts on Werner states for `p` from 0 to 1.
#[wasm_bindgen]
pub fn werner_scan(d: usize, steps: usize) -> String {
    wrap(werner_scan_value(d, steps))
}

/// Gram matrix of the Bloch vectors of a SIM design.
#[wasm_bindgen]
pub fn sim_gram(d: usize, kappa: f64, seed: u32) -> String {
    wrap(sim_gram_value(d, kappa, seed as u64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: String) -> Value {
        serde_json::from_str(&s).unwrap()
    }

    #[test]
    fn curves_agree() {
        for d in 2..=4 {
            let v = parse(concurrence_curve(d, 11));
            for p in v["points"].as_array().unwrap() {
                let (a, b) = (p["schmidt"].as_f64().unwrap(), p["design"].as_f64().unwrap());
                // squared, since the root amplifies roundoff at product states
                assert!((a * a - b * b).abs() < 1e-9, "d={d}: {p}");
            }
            assert_eq!(v["points"][0]["schmidt"].as_f64().unwrap(), 0.0);
        }
    }

    #[test]
    fn werner_detected_only_near_antisymmetric() {
        let v = parse(werner_scan(3, 11));
        let pts = v["points"].as_array().unwrap();
        assert_eq!(pts[0]["verdicts"]["lin_below"], false);
        assert_eq!(pts[10]["verdicts"]["lin_below"], true);
    }

    #[test]
    fn gram_is_a_regular_simplex() {
        let v = parse(sim_gram(3, 0.5, 9));
        assert_eq!(v["gram"].as_array().unwrap().len(), 9);
        assert!(v["max_deviation"].as_f64().unwrap() < 1e-10);
    }

    #[test]
    fn errors_are_reported_as_json() {
        assert!(parse(sim_gram(9, 0.5, 0))["error"].is_string());
        assert!(parse(sim_gram(3, 7.0, 0))["error"].is_string());
        assert!(parse(werner_scan(2, 1))["error"].is_string());
    }
}
