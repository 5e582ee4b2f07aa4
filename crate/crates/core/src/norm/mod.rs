//! The pairing between `K` and the disk algebra, duality lower bounds for
//! `‖f‖_K`, the composition-operator bound formulas and the verifiers.

mod scan;
mod search;
mod verify;

use num_complex::Complex64;
use serde::Serialize;

use crate::circle::{integrate_adaptive_vec, AdaptiveIntegral};
use crate::error::{Error, Result};
use crate::measure::{AtomicMeasure, CauchyTransform};
use crate::poly::DiskAlgebraPoly;

pub use scan::{sharpness_scan, ScanConfig, ScanRow};
pub use search::{certified_ratio, maximize_functional, DualWitness, SearchConfig};
pub use verify::{norm_report, verify_bound, verify_lemma1, verify_lemma2, Report, VerifyContext};

/// `⟨K_μ, h⟩ = Σ_j c_j·conj(h(ζ_j))`, the radial limit of the pairing.
pub fn pairing(mu: &AtomicMeasure, h: &DiskAlgebraPoly) -> Complex64 {
    pairing_at_radius(mu, h, 1.0)
}

/// `∫ f(rt)·conj(h(t)) dm(t) = Σ_j c_j·conj(h(rζ_j))` in closed form.
pub fn pairing_at_radius(mu: &AtomicMeasure, h: &DiskAlgebraPoly, r: f64) -> Complex64 {
    mu.atoms().iter().map(|a| a.weight * h.eval_unchecked(a.position.value() * r).conj()).sum()
}

/// The same integral computed by adaptive quadrature, for `0 < r < 1`.
pub fn pairing_quadrature(mu: &AtomicMeasure, h: &DiskAlgebraPoly, r: f64) -> Result<AdaptiveIntegral> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::InvalidInput(format!("pairing radius {r} must lie in (0, 1)")));
    }
    let f = CauchyTransform::new(mu.clone());
    integrate_adaptive_vec(1, |t| {
        let v = f.eval(t * r).expect("|rt| < 1");
        vec![v * h.eval_unchecked(t).conj()]
    })
    .map(|v| AdaptiveIntegral { value: v.values[0], node_count: v.node_count })
}

/// `‖f‖_K` enclosed between a dual certificate and a representing measure.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormBracket {
    pub lower: f64,
    pub upper: f64,
    pub witness_h: DiskAlgebraPoly,
    pub witness_mu: AtomicMeasure,
}

impl NormBracket {
    pub fn is_consistent(&self, tol: f64) -> bool {
        self.lower <= self.upper + tol
    }
}

/// Lower bound for `‖K_μ‖_K` by maximizing `|⟨K_μ, h⟩| / ‖h‖_∞`.
pub fn knorm_lower(mu: &AtomicMeasure, cfg: &SearchConfig) -> Result<DualWitness> {
    let g = CauchyTransform::new(mu.clone()).taylor_coeffs(cfg.degree_cap + 1)?;
    maximize_functional(&g, cfg)
}

/// Lower bound from [`knorm_lower`], upper bound from `tv_norm(μ)`.
pub fn knorm_bracket(mu: &AtomicMeasure, cfg: &SearchConfig) -> Result<NormBracket> {
    let w = knorm_lower(mu, cfg)?;
    Ok(NormBracket { lower: w.value, upper: mu.tv_norm(), witness_h: w.h, witness_mu: mu.clone() })
}

fn check_modulus(a_mod: f64) -> Result<()> {
    if a_mod.is_finite() && (0.0..1.0).contains(&a_mod) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("|φ(0)| = {a_mod} must lie in [0, 1)")))
    }
}

/// `(1 + 2x)/(1 − x)`.
pub fn bound_cima_matheson(a_mod: f64) -> Result<f64> {
    check_modulus(a_mod)?;
    Ok((1.0 + 2.0 * a_mod) / (1.0 - a_mod))
}

/// `(2 + 2√2)/(1 − x)`.
pub fn bound_bourdon_cima(a_mod: f64) -> Result<f64> {
    check_modulus(a_mod)?;
    Ok((2.0 + 2.0 * std::f64::consts::SQRT_2) / (1.0 - a_mod))
}
