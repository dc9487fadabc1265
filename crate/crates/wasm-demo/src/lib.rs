//! wasm-bindgen exports for `www/index.html`.
//!
//! Each export wraps a plain function returning `Result<_, String>` so the
//! logic can be tested natively.

use serde::Serialize;
use srg_transfer::arith::{fmt_rational, parse_rational, Rational};
use srg_transfer::certificate::{certify_with, round12, CertifyOptions};
use srg_transfer::graph::families::{builtin, BUILTINS};
use srg_transfer::graph::srg::verify_srg;
use srg_transfer::graph::LabeledGraph;
use srg_transfer::perturbation::PerturbSpec;
use srg_transfer::walk::{fidelity_trace, SpectralNumeric};
use srg_transfer::Error;
use wasm_bindgen::prelude::*;

fn setup(graph: &str, adjacent: bool, beta: &str, gamma: &str) -> Result<(LabeledGraph, PerturbSpec), String> {
    let g = builtin(graph).map_err(|e| e.to_string())?;
    let (u, v) = g
        .find_pair(adjacent)
        .ok_or_else(|| format!("{graph} has no {} pair", if adjacent { "adjacent" } else { "non-adjacent" }))?;
    let beta = parse_rational(beta).map_err(|e| e.to_string())?;
    let gamma = parse_rational(gamma).map_err(|e| e.to_string())?;
    let s = PerturbSpec::new(u, v, beta, gamma, adjacent).map_err(|e| e.to_string())?;
    Ok((g, s))
}

/// Fidelities `|U(t)_uv|` at `t = 0, step, ...`.
pub fn trace_values(graph: &str, adjacent: bool, beta: &str, gamma: &str, horizon: f64, step: f64) -> Result<Vec<f64>, String> {
    if !(horizon > 0.0 && step > 0.0) || horizon / step > 1e6 {
        return Err("need horizon > 0, step > 0 and at most 1e6 samples".into());
    }
    let (g, s) = setup(graph, adjacent, beta, gamma)?;
    let sn = SpectralNumeric::of(&g, &s).map_err(|e| e.to_string())?;
    Ok(fidelity_trace(&sn, s.u, s.v, horizon, step).into_iter().map(|(_, f)| f).collect())
}

pub fn certificate_json(graph: &str, adjacent: bool, beta: &str, gamma: &str, horizon: f64) -> Result<String, String> {
    let (g, s) = setup(graph, adjacent, beta, gamma)?;
    let p = verify_srg(&g).map_err(|e| e.to_string())?;
    let opts = CertifyOptions { scan_horizon: horizon, ..CertifyOptions::default() };
    certify_with(&p, &s, Some(&g), opts).map(|c| c.to_json()).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct Row {
    beta: String,
    verdict: String,
    time_pi_multiple: Option<String>,
    fidelity: Option<f64>,
}

/// Certifies `beta = p/q` with `|p| <= max_num`, `q <= max_den` and
/// `gamma = -beta`, returning one JSON row per distinct value.
pub fn sweep_json(graph: &str, adjacent: bool, max_num: u32, max_den: u32) -> Result<String, String> {
    if max_num > 20 || max_den > 20 {
        return Err("grid limited to |p|, q <= 20".into());
    }
    let (g, s) = setup(graph, adjacent, "1", "0")?;
    let p = verify_srg(&g).map_err(|e| e.to_string())?;
    let mut betas: Vec<Rational> = Vec::new();
    for q in 1..=max_den.max(1) as i64 {
        for num in -(max_num as i64)..=max_num as i64 {
            betas.push(Rational::new(num.into(), q.into()));
        }
    }
    betas.sort();
    betas.dedup();
    let opts = CertifyOptions { scan_horizon: 20.0, ..CertifyOptions::default() };
    let rows: Vec<Row> = betas
        .into_iter()
        .map(|b| {
            let spec = s.with_weights(b.clone(), -b.clone());
            let (verdict, time, fidelity) = match certify_with(&p, &spec, Some(&g), opts) {
                Ok(c) => (c.verdict.to_string(), c.time_pi_multiple.as_ref().map(fmt_rational), c.fidelity.map(round12)),
                Err(Error::TrivialPerturbation) => ("trivial-perturbation".into(), None, None),
                Err(e) => (format!("error: {e}"), None, None),
            };
            Row { beta: fmt_rational(&b), verdict, time_pi_multiple: time, fidelity }
        })
        .collect();
    serde_json::to_string(&rows).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn builtins() -> String {
    BUILTINS.join(",")
}

#[wasm_bindgen]
pub fn trace(graph: &str, adjacent: bool, beta: &str, gamma: &str, horizon: f64, step: f64) -> Result<Vec<f64>, JsError> {
    trace_values(graph, adjacent, beta, gamma, horizon, step).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn certify(graph: &str, adjacent: bool, beta: &str, gamma: &str, horizon: f64) -> Result<String, JsError> {
    certificate_json(graph, adjacent, beta, gamma, horizon).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn sweep(graph: &str, adjacent: bool, max_num: u32, max_den: u32) -> Result<String, JsError> {
    sweep_json(graph, adjacent, max_num, max_den).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trace_reaches_one_at_half_pi() {
        let step = std::f64::consts::PI / 8.0;
        let f = trace_values("clebsch-complement", true, "-2", "2", 1.0, step).unwrap();
        assert_eq!(f.len(), 3);
        let f = trace_values("clebsch-complement", true, "-2", "2", 2.0, step).unwrap();
        assert!((f[4] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn certificate_round_trips_json() {
        let j: serde_json::Value =
            serde_json::from_str(&certificate_json("clebsch", false, "2", "-2", 10.0).unwrap()).unwrap();
        assert_eq!(j["verdict"], "pst");
        assert_eq!(j["time_pi_multiple"], "1/2");
    }

    #[test]
    fn sweep_rows() {
        let rows: Vec<serde_json::Value> = serde_json::from_str(&sweep_json("petersen", false, 2, 2).unwrap()).unwrap();
        assert_eq!(rows.len(), 7);
        assert!(rows.iter().all(|r| r["verdict"] != "pst"));
        assert_eq!(rows[3]["verdict"], "trivial-perturbation");
    }

    #[test]
    fn bad_input_is_an_error() {
        assert!(trace_values("clebsch", true, "0.5", "0", 1.0, 0.1).is_err());
        assert!(trace_values("nope", true, "1", "0", 1.0, 0.1).is_err());
        assert!(sweep_json("petersen", true, 50, 1).is_err());
    }
}
