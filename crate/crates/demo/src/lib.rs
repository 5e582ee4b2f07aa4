//! Browser demo. Three operations, each a thin wrapper over the core crate:
//!
//! * [`kernel_profile`]: `|P_{λ_a} h(ζ)|` around the circle for a polynomial
//!   `h`, with the ceiling `(1 + 2|a|)/(1 − |a|)·‖h‖`;
//! * [`bound_curves`]: the two norm bounds as functions of `|φ(0)|`;
//! * [`mobius_estimate`]: certified lower bound for `‖f∘λ_a‖_K` where
//!   `f` is the Cauchy transform of a point mass.
//!
//! Results are flat `Float64Array`s so the page needs no glue beyond the
//! generated bindings.

use std::f64::consts::TAU;

use num_complex::Complex64;
use wasm_bindgen::prelude::*;

use cauchy_compose::kernel::p_lambda_closed_form;
use cauchy_compose::norm::{bound_bourdon_cima, bound_cima_matheson, verify_lemma2, SearchConfig, VerifyContext};
use cauchy_compose::{AtomicMeasure, CirclePoint, DiskAlgebraPoly, DiskPoint};

/// Largest degree and restart count accepted from the page.
pub const MAX_DEGREE: usize = 24;
pub const MAX_RESTARTS: usize = 16;

fn coeffs(re: &[f64], im: &[f64]) -> Result<Vec<Complex64>, String> {
    if re.len() != im.len() {
        return Err(format!("{} real parts but {} imaginary parts", re.len(), im.len()));
    }
    Ok(re.iter().zip(im).map(|(&x, &y)| Complex64::new(x, y)).collect())
}

/// `[ζ-angle, |P h(ζ)|]` pairs for `samples` equispaced angles, followed by
/// the ceiling and the certified `‖h‖`.
pub fn kernel_profile_values(
    a_re: f64,
    a_im: f64,
    h_re: &[f64],
    h_im: &[f64],
    samples: usize,
) -> Result<Vec<f64>, String> {
    let a = DiskPoint::new(Complex64::new(a_re, a_im)).map_err(|e| e.to_string())?;
    let h = DiskAlgebraPoly::new(coeffs(h_re, h_im)?).map_err(|e| e.to_string())?;
    let samples = samples.clamp(8, 4096);
    let mut out = Vec::with_capacity(2 * samples + 2);
    for k in 0..samples {
        let angle = TAU * k as f64 / samples as f64;
        let v = p_lambda_closed_form(a, &h, CirclePoint::from_angle(angle), 1.0).map_err(|e| e.to_string())?;
        out.extend([angle, v.norm()]);
    }
    let ceiling = bound_cima_matheson(a.modulus()).map_err(|e| e.to_string())? * h.certified_sup();
    out.extend([ceiling, h.certified_sup()]);
    Ok(out)
}

/// `[x, (1 + 2x)/(1 − x), (2 + 2√2)/(1 − x)]` triples on `[0, x_max]`.
pub fn bound_curve_values(points: usize, x_max: f64) -> Result<Vec<f64>, String> {
    let points = points.clamp(2, 2000);
    let mut out = Vec::with_capacity(3 * points);
    for i in 0..points {
        let x = x_max * i as f64 / (points - 1) as f64;
        let cm = bound_cima_matheson(x).map_err(|e| e.to_string())?;
        let bc = bound_bourdon_cima(x).map_err(|e| e.to_string())?;
        out.extend([x, cm, bc]);
    }
    Ok(out)
}

/// `[lower, ceiling, ratio]` for `f = K_{δ_ζ}` composed with `λ_a`.
pub fn mobius_estimate_values(
    a_re: f64,
    a_im: f64,
    zeta_angle: f64,
    degree: usize,
    restarts: usize,
    seed: u64,
) -> Result<Vec<f64>, String> {
    let a = DiskPoint::new(Complex64::new(a_re, a_im)).map_err(|e| e.to_string())?;
    let mu = AtomicMeasure::from_angles(&[(zeta_angle, Complex64::new(1.0, 0.0))]).map_err(|e| e.to_string())?;
    let ctx = VerifyContext {
        search: SearchConfig::new(degree.min(MAX_DEGREE), restarts.clamp(1, MAX_RESTARTS), seed),
        ..VerifyContext::default()
    };
    let r = verify_lemma2(&mu, a, &ctx).map_err(|e| e.to_string())?;
    Ok(vec![r.lower, r.bound, r.lower / r.bound])
}

fn js<T>(r: Result<T, String>) -> Result<T, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn kernel_profile(a_re: f64, a_im: f64, h_re: &[f64], h_im: &[f64], samples: usize) -> Result<Vec<f64>, JsValue> {
    js(kernel_profile_values(a_re, a_im, h_re, h_im, samples))
}

#[wasm_bindgen]
pub fn bound_curves(points: usize, x_max: f64) -> Result<Vec<f64>, JsValue> {
    js(bound_curve_values(points, x_max))
}

#[wasm_bindgen]
pub fn mobius_estimate(
    a_re: f64,
    a_im: f64,
    zeta_angle: f64,
    degree: usize,
    restarts: usize,
    seed: u64,
) -> Result<Vec<f64>, JsValue> {
    js(mobius_estimate_values(a_re, a_im, zeta_angle, degree, restarts, seed))
}
