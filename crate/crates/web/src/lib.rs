//! WebAssembly bindings for the demo page in `www/`.
//!
//! Targets come either from the polylog family `alpha_k = k^(1-s)` or from an
//! inline JSON list such as `[1, "1/3", [0, 1]]`; a non-empty list wins.

use num_complex::Complex64;
use wasm_bindgen::prelude::*;

use plethys::format::{self, OutputFormat};
use plethys::report;
use plethys::scalar::Backend;
use plethys::{error_matrix, AlphaSequence, RootSolveConfig};

fn targets(s: f64, alphas: Option<&str>, backend: Backend) -> plethys::Result<AlphaSequence> {
    match alphas.map(str::trim).filter(|a| !a.is_empty()) {
        Some(list) => format::alpha_sequence(&format::parse_inline_alphas(list)?, backend),
        None => Ok(AlphaSequence::polylog(s)),
    }
}

/// Exact arithmetic when every target is rational, doubles otherwise.
fn coefficient_backend(s: f64, alphas: Option<&str>) -> Backend {
    let exact = match alphas.map(str::trim).filter(|a| !a.is_empty()) {
        Some(list) => format::parse_inline_alphas(list).is_ok_and(|e| e.iter().all(|a| a.is_real())),
        None => s.fract() == 0.0,
    };
    if exact {
        Backend::Rational
    } else {
        Backend::Complex64
    }
}

pub fn coefficients_json(s: f64, alphas: Option<&str>, n: usize) -> plethys::Result<String> {
    let backend = coefficient_backend(s, alphas);
    let table = report::coefficients(&targets(s, alphas, backend)?, n, backend)?;
    Ok(table.render(OutputFormat::Json))
}

pub fn roots_json(s: f64, alphas: Option<&str>, n_list: &[usize]) -> plethys::Result<String> {
    let backend = Backend::Complex64;
    let table = report::roots(&targets(s, alphas, backend)?, n_list, backend, &RootSolveConfig::default())?;
    Ok(table.render(OutputFormat::Json))
}

/// Row-major `log10 |p_-k - alpha_k|`, `n` in `1..=n_max` by `k` in `1..=k_max`.
pub fn heatmap_values(s: f64, alphas: Option<&str>, n_max: usize, k_max: usize) -> plethys::Result<Vec<f64>> {
    let alpha = targets(s, alphas, Backend::Complex64)?;
    let m = error_matrix::<Complex64>(&alpha, n_max, k_max, (), &RootSolveConfig::default())?;
    Ok(m.entries)
}

fn js(e: plethys::Error) -> JsValue {
    JsValue::from_str(&e.to_string())
}

/// Coefficients of `P_n` as a `plethys:coefficients:1` JSON table.
#[wasm_bindgen]
pub fn coefficients(s: f64, alphas: Option<String>, n: usize) -> Result<String, JsValue> {
    coefficients_json(s, alphas.as_deref(), n).map_err(js)
}

/// Roots of `P_n` for each `n` in `n_list` as a `plethys:roots:1` JSON table.
#[wasm_bindgen]
pub fn roots(s: f64, alphas: Option<String>, n_list: Vec<usize>) -> Result<String, JsValue> {
    roots_json(s, alphas.as_deref(), &n_list).map_err(js)
}

#[wasm_bindgen]
pub fn heatmap(s: f64, alphas: Option<String>, n_max: usize, k_max: usize) -> Result<Vec<f64>, JsValue> {
    heatmap_values(s, alphas.as_deref(), n_max, k_max).map_err(js)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_coefficients_for_integer_s() {
        let json = coefficients_json(0.0, None, 5).unwrap();
        assert!(json.contains("\"19/120\""));
        assert!(json.contains("\"backend\": \"rational\""));
    }

    #[test]
    fn inline_list_overrides_family() {
        let json = coefficients_json(0.0, Some("[1, 1, 1]"), 3).unwrap();
        assert!(json.contains("\"-1\""));
        assert!(!json.contains("19/120"));
        assert!(coefficients_json(0.5, None, 3).unwrap().contains("complex64"));
        assert!(coefficients_json(0.0, Some("[[0, 1]]"), 1).unwrap().contains("complex64"));
        assert!(coefficients_json(0.0, Some("[1,"), 1).is_err());
    }

    #[test]
    fn roots_of_quadratic() {
        let json = roots_json(0.0, Some("[1, 2]"), &[2]).unwrap();
        assert!(json.contains("-2.732050807568877"));
    }

    #[test]
    fn heatmap_shape_and_exact_diagonal() {
        let v = heatmap_values(0.0, None, 6, 8).unwrap();
        assert_eq!(v.len(), 48);
        for n in 1..=6 {
            for k in 1..=n {
                assert!(v[(n - 1) * 8 + (k - 1)] < -10.0, "n={n} k={k}");
            }
        }
        assert!(v[5 * 8 + 7] > -10.0);
    }
}
