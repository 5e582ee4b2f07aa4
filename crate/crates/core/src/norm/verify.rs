use serde::Serialize;
use serde_json::{json, Value};

use crate::circle::DiskPoint;
use crate::error::{Error, Result};
use crate::kernel::{composition_functional, RadialScheme};
use crate::measure::AtomicMeasure;
use crate::selfmap::{schwarz_factorize, DiskSelfMap};
use crate::tolerance::Tolerances;
use crate::Stopwatch;

use super::search::{maximize_functional, DualWitness, SearchConfig};
use super::{bound_cima_matheson, knorm_lower};

/// Settings shared by the verifiers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct VerifyContext {
    pub search: SearchConfig,
    pub scheme: RadialScheme,
    pub tol: Tolerances,
}

/// Outcome of one verification.
///
/// `lower` is a certified lower bound for the norm of the composed function,
/// `upper` the total variation of the input measure (an upper bound for
/// `‖f‖_K`), `bound` the ceiling `lower` must respect.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub claim: String,
    pub inputs: Value,
    pub lower: f64,
    pub upper: f64,
    pub bound: f64,
    pub pass: bool,
    pub witnesses: Value,
    pub runtime_ms: u64,
}

fn witness_json(w: &DualWitness) -> Value {
    json!({
        "h": w.h.coeffs(),
        "h_certified_sup": w.h.certified_sup(),
        "restart": w.restart,
    })
}

fn lower_for_composition(mu: &AtomicMeasure, phi: &DiskSelfMap, ctx: &VerifyContext) -> Result<DualWitness> {
    let scheme = RadialScheme { convergence_tol: ctx.tol.radial, ..ctx.scheme };
    let g = composition_functional(mu, phi, ctx.search.degree_cap, &scheme)?;
    maximize_functional(&g, &ctx.search)
}

/// `‖f∘ψ‖_K <= ‖f‖_K` when `ψ(0) = 0`.
pub fn verify_lemma1(mu: &AtomicMeasure, psi: &DiskSelfMap, ctx: &VerifyContext) -> Result<Report> {
    let clock = Stopwatch::start();
    let origin = psi.at_origin().norm();
    if origin > ctx.tol.origin {
        return Err(Error::Precondition(format!("ψ(0)=0 violated: |ψ(0)| = {origin:e}")));
    }
    let w = lower_for_composition(mu, psi, ctx)?;
    let upper = mu.tv_norm();
    let mut witnesses = json!({ "dual": witness_json(&w), "boundary_contact": psi.boundary_contact() });
    // z ↦ z^n has an exact representing measure for f∘ψ
    if let Some(n) = psi.as_monomial() {
        let nu = mu.monomial_pushforward(n)?;
        witnesses["pushforward"] = json!({ "n": n, "tv_norm": nu.tv_norm(), "mu": nu });
        witnesses["composed_bracket"] = json!([w.value, nu.tv_norm()]);
    }
    Ok(Report {
        claim: "contraction: |f o psi|_K <= |f|_K for psi(0) = 0".into(),
        inputs: json!({ "mu": mu, "psi": psi }),
        lower: w.value,
        upper,
        bound: upper,
        pass: w.value <= upper + ctx.tol.bound,
        witnesses,
        runtime_ms: clock.elapsed_ms(),
    })
}

/// `‖f∘λ_a‖_K <= (1 + 2|a|)/(1 − |a|)·‖f‖_K`.
pub fn verify_lemma2(mu: &AtomicMeasure, a: DiskPoint, ctx: &VerifyContext) -> Result<Report> {
    let clock = Stopwatch::start();
    let phi = DiskSelfMap::mobius(a);
    let w = lower_for_composition(mu, &phi, ctx)?;
    let upper = mu.tv_norm();
    let constant = bound_cima_matheson(a.modulus())?;
    let bound = constant * upper;
    Ok(Report {
        claim: "mobius: |f o lambda_a|_K <= (1+2|a|)/(1-|a|) |f|_K".into(),
        inputs: json!({ "mu": mu, "a": a.value() }),
        lower: w.value,
        upper,
        bound,
        pass: w.value <= bound + ctx.tol.bound,
        witnesses: json!({
            "dual": witness_json(&w),
            "bound_constant": constant,
            "sharpness_ratio": w.value / bound,
        }),
        runtime_ms: clock.elapsed_ms(),
    })
}

/// `‖f∘φ‖_K <= (1 + 2|φ(0)|)/(1 − |φ(0)|)·‖f‖_K`, following the proof:
/// factor `φ = λ_a∘ψ`, check the Möbius case, then the composed function.
pub fn verify_bound(mu: &AtomicMeasure, phi: &DiskSelfMap, ctx: &VerifyContext) -> Result<Report> {
    let clock = Stopwatch::start();
    let fact = schwarz_factorize(phi)?;
    let check = fact.check(phi);
    let factor_ok = check.reconstruction_error <= ctx.tol.identity && check.psi_at_origin <= 1e-14;
    let mobius = verify_lemma2(mu, fact.a, ctx)?;

    let w = lower_for_composition(mu, phi, ctx)?;
    let upper = mu.tv_norm();
    let constant = bound_cima_matheson(fact.a.modulus())?;
    let bound = constant * upper;
    let end_to_end = w.value <= bound + ctx.tol.bound;

    Ok(Report {
        claim: "composition: |f o phi|_K <= (1+2|phi(0)|)/(1-|phi(0)|) |f|_K".into(),
        inputs: json!({ "mu": mu, "phi": phi }),
        lower: w.value,
        upper,
        bound,
        pass: factor_ok && mobius.pass && end_to_end,
        witnesses: json!({
            "dual": witness_json(&w),
            "a": fact.a.value(),
            "psi": fact.psi,
            "factorization": check,
            "factorization_ok": factor_ok,
            "mobius_step": { "lower": mobius.lower, "bound": mobius.bound, "pass": mobius.pass },
            "bound_constant": constant,
            "boundary_contact": phi.boundary_contact(),
        }),
        runtime_ms: clock.elapsed_ms(),
    })
}

/// Norm bracket for `K_μ` as a report: passes when `lower <= upper`.
pub fn norm_report(mu: &AtomicMeasure, ctx: &VerifyContext) -> Result<Report> {
    let clock = Stopwatch::start();
    let w = knorm_lower(mu, &ctx.search)?;
    let upper = mu.tv_norm();
    Ok(Report {
        claim: "sandwich: dual lower bound <= total variation".into(),
        inputs: json!({ "mu": mu }),
        lower: w.value,
        upper,
        bound: upper,
        pass: w.value <= upper + ctx.tol.sandwich,
        witnesses: json!({ "dual": witness_json(&w), "mu": mu }),
        runtime_ms: clock.elapsed_ms(),
    })
}
