//! The kernel operator
//!
//! ```text
//! P_φ h(ζ) = lim_{r→1} ∫_T h(t) / (1 − ζ·conj(φ(rt))) dm(t)
//! ```
//!
//! For a polynomial `h` of degree `d` the integral at radius `r` equals
//! `Σ_{n≤d} h_n r^n κ_n(ζ)` where `κ_n = conj(G_n)` and `G_n` are the Taylor
//! coefficients of `G(w) = 1/(1 − ζ̄φ(w))`. The radial limit is therefore the
//! finite sum `Σ h_n κ_n`, which is what [`p_phi_radial_limit`] returns.
//! The coefficients are cross-checked against direct quadrature at a radius
//! where the trapezoid rule converges quickly. For a Möbius map `λ_a` the
//! residue closed form gives `κ_n` directly.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;

use crate::circle::{integrate_adaptive_vec, CirclePoint, DiskPoint, MobiusMap, QuadratureGrid};
use crate::error::{Error, Result};
use crate::measure::AtomicMeasure;
use crate::poly::DiskAlgebraPoly;
use crate::selfmap::DiskSelfMap;
use crate::series;

/// Radii `r_k = 1 − 2^{−k}` for `k = k_min..=k_max`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadialScheme {
    pub k_min: u32,
    pub k_max: u32,
    pub convergence_tol: f64,
}

impl Default for RadialScheme {
    fn default() -> Self {
        Self { k_min: 4, k_max: 24, convergence_tol: 1e-9 }
    }
}

impl RadialScheme {
    pub fn radii(&self) -> Vec<f64> {
        (self.k_min..=self.k_max).map(|k| 1.0 - 0.5f64.powi(k as i32)).collect()
    }

    /// Radius at which series coefficients are checked against quadrature.
    pub fn validation_radius(&self) -> f64 {
        1.0 - 0.5f64.powi(self.k_min as i32)
    }
}

fn check_radius(r: f64, closed: bool) -> Result<()> {
    let ok = if closed { r > 0.0 && r <= 1.0 } else { r > 0.0 && r < 1.0 };
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("radius {r} outside the allowed range")))
    }
}

/// Kernel `1/(1 − ζ·conj(w))`.
fn kernel(zeta: Complex64, w: Complex64) -> Complex64 {
    Complex64::new(1.0, 0.0) / (Complex64::new(1.0, 0.0) - zeta * w.conj())
}

/// The integral at a fixed radius `r < 1`, by the adaptive trapezoid rule.
pub fn p_phi_at(phi: &DiskSelfMap, h: &DiskAlgebraPoly, zeta: CirclePoint, r: f64) -> Result<Complex64> {
    check_radius(r, false)?;
    let z = zeta.value();
    integrate_adaptive_vec(1, |t| vec![h.eval_unchecked(t) * kernel(z, phi.eval_unchecked(t * r))]).map(|v| v.values[0])
}

/// Same integral on a caller-supplied grid, without adaptivity.
pub fn p_phi_at_grid(
    phi: &DiskSelfMap,
    h: &DiskAlgebraPoly,
    zeta: CirclePoint,
    r: f64,
    grid: &QuadratureGrid,
) -> Result<Complex64> {
    check_radius(r, false)?;
    let z = zeta.value();
    let samples: Vec<Complex64> =
        grid.nodes().iter().map(|&t| h.eval_unchecked(t) * kernel(z, phi.eval_unchecked(t * r))).collect();
    grid.integrate(&samples)
}

/// The two terms of the residue formula for `φ = λ_a`:
/// `−a·h(0)/(ζ − a)` and `h(r·λ_a(ζ))·(1 − |a|²)/|1 − ζā|²`.
pub fn closed_form_terms(
    a: DiskPoint,
    h: &DiskAlgebraPoly,
    zeta: CirclePoint,
    r: f64,
) -> Result<(Complex64, Complex64)> {
    check_radius(r, true)?;
    let a = a.value();
    let z = zeta.value();
    let h0 = h.coeffs()[0];
    let first = -a * h0 / (z - a);
    let lam = (a - z) / (Complex64::new(1.0, 0.0) - z * a.conj());
    let weight = (1.0 - a.norm_sqr()) / (Complex64::new(1.0, 0.0) - z * a.conj()).norm_sqr();
    let second = h.eval_unchecked(lam * r) * weight;
    Ok((first, second))
}

/// Residue closed form of the integral for `φ = λ_a`, valid for `r <= 1`.
pub fn p_lambda_closed_form(a: DiskPoint, h: &DiskAlgebraPoly, zeta: CirclePoint, r: f64) -> Result<Complex64> {
    closed_form_terms(a, h, zeta, r).map(|(x, y)| x + y)
}

/// How the radial limit was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum LimitMethod {
    ClosedForm,
    /// Taylor-coefficient identity, validated by quadrature at `radius`
    /// with relative discrepancy `gap`.
    Series {
        radius: f64,
        gap: f64,
        nodes: usize,
    },
}

/// Coefficients `κ_n(ζ)`, `n = 0..=degree`, with `P_φ h(ζ) = Σ h_n κ_n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KernelCoeffs {
    pub zeta: f64,
    pub coeffs: Vec<Complex64>,
    pub method: LimitMethod,
    pub boundary_contact: bool,
}

impl KernelCoeffs {
    /// `Σ h_n κ_n r^n`; `r = 1` gives the radial limit.
    pub fn apply(&self, h: &[Complex64], r: f64) -> Complex64 {
        let mut rn = 1.0;
        let mut acc = Complex64::new(0.0, 0.0);
        for (hn, kn) in h.iter().zip(&self.coeffs) {
            acc += hn * kn * rn;
            rn *= r;
        }
        acc
    }
}

fn mobius_kernel_coeffs(m: MobiusMap, zeta: CirclePoint, degree: usize) -> Vec<Complex64> {
    let a = m.a().value();
    let z = zeta.value();
    let den = Complex64::new(1.0, 0.0) - z * a.conj();
    let weight = (1.0 - a.norm_sqr()) / den.norm_sqr();
    let lam = (a - z) / den;
    let mut out = Vec::with_capacity(degree + 1);
    let mut p = Complex64::new(weight, 0.0);
    for _ in 0..=degree {
        out.push(p);
        p *= lam;
    }
    out[0] += -a / (z - a);
    out
}

/// Computes `κ_n(ζ)` for `n <= degree`.
///
/// Möbius maps use the closed form. Other maps expand `1/(1 − ζ̄φ)` as a
/// power series and check the result against quadrature of
/// `∫ t^n/(1 − ζ·conj(φ(rt))) dm` at the scheme's validation radius.
pub fn kernel_coeffs(
    phi: &DiskSelfMap,
    zeta: CirclePoint,
    degree: usize,
    scheme: &RadialScheme,
) -> Result<KernelCoeffs> {
    if let Some(m) = phi.as_mobius() {
        return Ok(KernelCoeffs {
            zeta: zeta.angle(),
            coeffs: mobius_kernel_coeffs(m, zeta, degree),
            method: LimitMethod::ClosedForm,
            boundary_contact: false,
        });
    }
    let count = degree + 1;
    let zb = zeta.value().conj();
    let phi_series = phi.taylor(count);
    let mut den: Vec<Complex64> = phi_series.iter().map(|c| -zb * c).collect();
    den[0] += Complex64::new(1.0, 0.0);
    let g = series::div(&[Complex64::new(1.0, 0.0)], &den, count)?;
    let coeffs: Vec<Complex64> = g.iter().map(|c| c.conj()).collect();
    if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(Error::NonConvergence("kernel series overflowed".into()));
    }

    let r = scheme.validation_radius();
    let z = zeta.value();
    let quad = integrate_adaptive_vec(count, |t| {
        let k = kernel(z, phi.eval_unchecked(t * r));
        let mut out = Vec::with_capacity(count);
        let mut tn = k;
        for _ in 0..count {
            out.push(tn);
            tn *= t;
        }
        out
    })?;
    let mut rn = 1.0;
    let mut gap: f64 = 0.0;
    for (q, c) in quad.values.iter().zip(&coeffs) {
        let s = c * rn;
        gap = gap.max((q - s).norm() / s.norm().max(1.0));
        rn *= r;
    }
    if gap > scheme.convergence_tol {
        return Err(Error::NonConvergence(format!("kernel series and quadrature disagree by {gap:.3e} at r = {r}")));
    }
    Ok(KernelCoeffs {
        zeta: zeta.angle(),
        coeffs,
        method: LimitMethod::Series { radius: r, gap, nodes: quad.node_count },
        boundary_contact: phi.boundary_contact(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadialLimit {
    pub value: Complex64,
    pub method: LimitMethod,
    pub boundary_contact: bool,
}

/// `P_φ h(ζ)`.
pub fn p_phi_radial_limit(
    phi: &DiskSelfMap,
    h: &DiskAlgebraPoly,
    zeta: CirclePoint,
    scheme: &RadialScheme,
) -> Result<RadialLimit> {
    let k = kernel_coeffs(phi, zeta, h.degree(), scheme)?;
    Ok(RadialLimit { value: k.apply(h.coeffs(), 1.0), method: k.method, boundary_contact: k.boundary_contact })
}

/// One row of a radial sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub zeta_angle: f64,
    pub r: f64,
    pub value: Complex64,
}

/// Values at every radius of the scheme and at `r = 1`.
pub fn radial_sweep(
    phi: &DiskSelfMap,
    h: &DiskAlgebraPoly,
    zeta: CirclePoint,
    scheme: &RadialScheme,
) -> Result<Vec<SweepRow>> {
    let k = kernel_coeffs(phi, zeta, h.degree(), scheme)?;
    Ok(scheme
        .radii()
        .into_iter()
        .chain(std::iter::once(1.0))
        .map(|r| SweepRow { zeta_angle: zeta.angle(), r, value: k.apply(h.coeffs(), r) })
        .collect())
}

/// Coefficients `g_n` with `⟨f∘φ, h⟩ = Σ_n g_n·conj(h_n)` for `f = K_μ`.
///
/// Since `⟨f∘φ, h⟩ = Σ_j c_j·conj(P_φ h(ζ_j))`, `g_n = Σ_j c_j·conj(κ_n(ζ_j))`.
pub fn composition_functional(
    mu: &AtomicMeasure,
    phi: &DiskSelfMap,
    degree: usize,
    scheme: &RadialScheme,
) -> Result<Vec<Complex64>> {
    let mut g = series::zeros(degree + 1);
    for atom in mu.atoms() {
        let k = kernel_coeffs(phi, atom.position, degree, scheme)?;
        for (gn, kn) in g.iter_mut().zip(&k.coeffs) {
            *gn += atom.weight * kn.conj();
        }
    }
    Ok(g)
}

/// `⟨f∘φ, h⟩` through the kernel operator at the atoms of `μ`.
pub fn composition_pairing(
    mu: &AtomicMeasure,
    phi: &DiskSelfMap,
    h: &DiskAlgebraPoly,
    scheme: &RadialScheme,
) -> Result<Complex64> {
    let g = composition_functional(mu, phi, h.degree(), scheme)?;
    Ok(g.iter().zip(h.coeffs()).map(|(gn, hn)| gn * hn.conj()).sum())
}

/// Grid estimate of `‖P_φ h‖_∞`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SupEstimate {
    /// Max over the ζ grid; never above the true sup.
    pub grid_max: f64,
    pub grid_argmax: f64,
    /// After one Newton step on `|P_φ h|²` around the best node.
    pub refined: f64,
    pub refined_angle: f64,
}

pub fn p_phi_sup_norm(
    phi: &DiskSelfMap,
    h: &DiskAlgebraPoly,
    grid_size: usize,
    scheme: &RadialScheme,
) -> Result<SupEstimate> {
    if h.certified_sup() > 1.0 + 1e-12 {
        return Err(Error::Precondition(format!("‖h‖ <= 1 violated: certified sup {}", h.certified_sup())));
    }
    if grid_size == 0 {
        return Err(Error::InvalidInput("ζ grid must be nonempty".into()));
    }
    let value_at = |angle: f64| -> Result<f64> {
        p_phi_radial_limit(phi, h, CirclePoint::from_angle(angle), scheme).map(|v| v.value.norm())
    };
    let mut best = (f64::NEG_INFINITY, 0.0);
    for k in 0..grid_size {
        let angle = TAU * k as f64 / grid_size as f64;
        let v = value_at(angle)?;
        // strict comparison keeps the smallest index on ties
        if v > best.0 {
            best = (v, angle);
        }
    }
    let (grid_max, grid_argmax) = best;

    let spacing = TAU / grid_size as f64;
    let step = 1e-3 * spacing;
    let g0 = grid_max * grid_max;
    let gp = value_at(grid_argmax + step)?.powi(2);
    let gm = value_at(grid_argmax - step)?.powi(2);
    let d1 = (gp - gm) / (2.0 * step);
    let d2 = (gp - 2.0 * g0 + gm) / (step * step);
    let (mut refined, mut refined_angle) = (grid_max, grid_argmax);
    if d2 < 0.0 {
        let shift = (-d1 / d2).clamp(-spacing, spacing);
        let cand = value_at(grid_argmax + shift)?;
        if cand > refined {
            refined = cand;
            refined_angle = CirclePoint::from_angle(grid_argmax + shift).angle();
        }
    }
    Ok(SupEstimate { grid_max, grid_argmax, refined, refined_angle })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    fn poly(coeffs: &[C]) -> DiskAlgebraPoly {
        DiskAlgebraPoly::new(coeffs.to_vec()).unwrap()
    }

    fn mob(a: f64) -> DiskSelfMap {
        DiskSelfMap::mobius(DiskPoint::real(a).unwrap())
    }

    /// `Σ_k ζ^k ∫ h(t)·conj(φ(rt))^k dm`, summed until the geometric tail
    /// bound `‖h‖₁·s^K/(1 − s)` with `s = sup|φ|` drops below 1e-14. Each
    /// integral pairs the coefficients of `h` with those of `φ(r·)^k`.
    fn series_oracle(phi_coeffs: &[C], sup: f64, h: &[C], zeta: C, r: f64) -> C {
        let h1: f64 = h.iter().map(|x| x.norm()).sum();
        let scaled: Vec<C> = phi_coeffs.iter().enumerate().map(|(n, v)| v * r.powi(n as i32)).collect();
        let mut power = vec![c(1.0, 0.0)];
        let mut total = c(0.0, 0.0);
        let mut k = 0;
        loop {
            let term: C = h.iter().zip(&power).map(|(hn, pn)| hn * pn.conj()).sum();
            total += zeta.powu(k) * term;
            k += 1;
            if h1 * sup.powi(k as i32) / (1.0 - sup) < 1e-14 {
                return total;
            }
            let mut next = vec![c(0.0, 0.0); power.len() + scaled.len() - 1];
            for (i, p) in power.iter().enumerate() {
                for (j, s) in scaled.iter().enumerate() {
                    next[i + j] += p * s;
                }
            }
            next.truncate(h.len());
            power = next;
        }
    }

    #[test]
    fn p_phi_at_examples() {
        let one = poly(&[c(1.0, 0.0)]);
        let v = p_phi_at(&mob(0.0), &one, CirclePoint::from_angle(1.3), 0.5).unwrap();
        assert!((v - c(1.0, 0.0)).norm() < 1e-12);
        let v = p_phi_at(&mob(0.5), &one, CirclePoint::one(), 0.9).unwrap();
        assert!((v - c(2.0, 0.0)).norm() < 1e-10);

        let phi = DiskSelfMap::polynomial(vec![c(0.0, 0.0), c(0.5, 0.0)]).unwrap();
        let id = poly(&[c(0.0, 0.0), c(1.0, 0.0)]);
        for r in [0.3, 0.9, 0.99] {
            let v = p_phi_at(&phi, &id, CirclePoint::one(), r).unwrap();
            let oracle = series_oracle(&[c(0.0, 0.0), c(0.5, 0.0)], 0.5, id.coeffs(), c(1.0, 0.0), r);
            assert!((v - oracle).norm() < 1e-12, "r = {r}");
            assert!((oracle - c(0.5 * r, 0.0)).norm() < 1e-14);
        }
        assert!(p_phi_at(&phi, &id, CirclePoint::one(), 1.0).is_err());
    }

    #[test]
    fn series_oracle_matches_quadrature_for_quadratic() {
        let pc = [c(0.25, 0.0), c(0.0, 0.0), c(0.5, 0.0)];
        let phi = DiskSelfMap::polynomial(pc.to_vec()).unwrap();
        let h = DiskAlgebraPoly::sample_unit_ball(6, 3);
        let zeta = CirclePoint::from_angle(2.1);
        let s = p_phi_radial_limit(&phi, &h, zeta, &RadialScheme::default()).unwrap();
        let oracle = series_oracle(&pc, 0.75, h.coeffs(), zeta.value(), 1.0);
        assert!((s.value - oracle).norm() < 1e-12);
        let q = p_phi_at(&phi, &h, zeta, 0.8).unwrap();
        let oracle = series_oracle(&pc, 0.75, h.coeffs(), zeta.value(), 0.8);
        assert!((q - oracle).norm() < 1e-12);
    }

    #[test]
    fn closed_form_examples() {
        let one = poly(&[c(1.0, 0.0)]);
        let zero = DiskPoint::origin();
        for (angle, r) in [(0.0, 0.3), (2.0, 1.0), (5.5, 0.9)] {
            let v = p_lambda_closed_form(zero, &one, CirclePoint::from_angle(angle), r).unwrap();
            assert!((v - c(1.0, 0.0)).norm() < 1e-15);
        }
        let half = DiskPoint::real(0.5).unwrap();
        for r in [0.1, 0.5, 1.0] {
            let v = p_lambda_closed_form(half, &one, CirclePoint::one(), r).unwrap();
            assert!((v - c(2.0, 0.0)).norm() < 1e-15);
        }
        let id = poly(&[c(0.0, 0.0), c(1.0, 0.0)]);
        let v = p_lambda_closed_form(half, &id, CirclePoint::from_angle(std::f64::consts::PI), 1.0).unwrap();
        assert!((v - c(1.0 / 3.0, 0.0)).norm() < 1e-15);
        assert!(p_lambda_closed_form(half, &id, CirclePoint::one(), 1.5).is_err());
    }

    #[test]
    fn closed_form_matches_quadrature() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for i in 0..200 {
            let a = DiskPoint::new(C::from_polar(rng.gen_range(0.0..0.9), rng.gen_range(0.0..TAU))).unwrap();
            let h = DiskAlgebraPoly::sample_unit_ball(rng.gen_range(0..=16), i);
            let zeta = CirclePoint::from_angle(rng.gen_range(0.0..TAU));
            let r = rng.gen_range(0.05..0.99);
            let q = p_phi_at(&DiskSelfMap::mobius(a), &h, zeta, r).unwrap();
            let cf = p_lambda_closed_form(a, &h, zeta, r).unwrap();
            assert!((q - cf).norm() <= 1e-10 * cf.norm().max(1.0), "case {i}: {q} vs {cf}");
        }
    }

    #[test]
    fn mobius_series_agrees_with_closed_form() {
        // the closed-form coefficients against the generic series route
        let a = DiskPoint::new(c(0.4, -0.3)).unwrap();
        let m = MobiusMap::new(a);
        let wrapped = DiskSelfMap::composed(
            MobiusMap::new(DiskPoint::origin()),
            DiskSelfMap::composed(MobiusMap::new(DiskPoint::origin()), DiskSelfMap::mobius(a)),
        );
        let scheme = RadialScheme::default();
        for angle in [0.0, 1.0, 2.5, 4.0] {
            let zeta = CirclePoint::from_angle(angle);
            let closed = mobius_kernel_coeffs(m, zeta, 12);
            let generic = kernel_coeffs(&wrapped, zeta, 12, &scheme).unwrap();
            assert!(matches!(generic.method, LimitMethod::Series { .. }));
            for (x, y) in closed.iter().zip(&generic.coeffs) {
                assert!((x - y).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn radial_limit_dispatch() {
        let scheme = RadialScheme::default();
        let h = DiskAlgebraPoly::sample_unit_ball(4, 9);
        let a = DiskPoint::new(c(0.2, 0.6)).unwrap();
        let zeta = CirclePoint::from_angle(0.7);
        let lim = p_phi_radial_limit(&DiskSelfMap::mobius(a), &h, zeta, &scheme).unwrap();
        assert_eq!(lim.method, LimitMethod::ClosedForm);
        assert!((lim.value - p_lambda_closed_form(a, &h, zeta, 1.0).unwrap()).norm() < 1e-14);

        let phi = DiskSelfMap::polynomial(vec![c(0.0, 0.0), c(0.5, 0.0)]).unwrap();
        let one = poly(&[c(1.0, 0.0)]);
        let lim = p_phi_radial_limit(&phi, &one, CirclePoint::one(), &scheme).unwrap();
        assert!((lim.value - c(1.0, 0.0)).norm() < 1e-9);
        assert!(!lim.boundary_contact);

        let b = DiskSelfMap::blaschke(&[c(0.3, 0.0)], 0.0).unwrap();
        let lim = p_phi_radial_limit(&b, &h, zeta, &scheme).unwrap();
        assert!(lim.boundary_contact);
    }

    #[test]
    fn radial_sweep_approaches_limit() {
        let scheme = RadialScheme::default();
        let h = DiskAlgebraPoly::sample_unit_ball(5, 4);
        let phi = DiskSelfMap::polynomial(vec![c(0.1, 0.0), c(0.4, 0.2), c(0.0, 0.3)]).unwrap();
        let zeta = CirclePoint::from_angle(3.0);
        let rows = radial_sweep(&phi, &h, zeta, &scheme).unwrap();
        assert_eq!(rows.len(), 22);
        let limit = rows.last().unwrap().value;
        // at a quadrature-friendly radius the sweep matches direct integration
        let q = p_phi_at(&phi, &h, zeta, rows[2].r).unwrap();
        assert!((q - rows[2].value).norm() < 1e-11);
        let gaps: Vec<f64> = rows.iter().map(|row| (row.value - limit).norm()).collect();
        assert!(gaps.windows(2).all(|w| w[1] <= w[0] + 1e-15));
    }

    #[test]
    fn r_continuity_constant() {
        // |h(rλ) − h(λ)| <= (1 − r)·d·‖h‖ by Bernstein, times the weight
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for i in 0..20 {
            let a = DiskPoint::new(C::from_polar(rng.gen_range(0.0..0.9), rng.gen_range(0.0..TAU))).unwrap();
            let h = DiskAlgebraPoly::sample_unit_ball(8, 100 + i);
            let zeta = CirclePoint::from_angle(rng.gen_range(0.0..TAU));
            let at1 = p_lambda_closed_form(a, &h, zeta, 1.0).unwrap();
            let weight = (1.0 - a.modulus().powi(2)) / (c(1.0, 0.0) - zeta.value() * a.value().conj()).norm_sqr();
            let bound = h.degree() as f64 * h.certified_sup() * weight;
            let measured = [0.5, 0.9, 0.99, 0.999]
                .iter()
                .map(|&r| (p_lambda_closed_form(a, &h, zeta, r).unwrap() - at1).norm() / (1.0 - r))
                .fold(0.0, f64::max);
            assert!(measured <= bound + 1e-9, "C = {measured} above {bound}");
        }
    }

    #[test]
    fn term_bounds_and_identity() {
        for i in 0..100 {
            let m = 0.95 * i as f64 / 99.0;
            let lhs = m / (1.0 - m) + (1.0 - m * m) / (1.0 - m).powi(2);
            assert!((lhs - (1.0 + 2.0 * m) / (1.0 - m)).abs() <= 1e-12 * lhs.max(1.0));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for i in 0..100 {
            let m: f64 = rng.gen_range(0.0..0.95);
            let a = DiskPoint::new(C::from_polar(m, rng.gen_range(0.0..TAU))).unwrap();
            let h = DiskAlgebraPoly::sample_unit_ball(rng.gen_range(0..12), 500 + i);
            let zeta = CirclePoint::from_angle(rng.gen_range(0.0..TAU));
            let (x, y) = closed_form_terms(a, &h, zeta, 1.0).unwrap();
            assert!(x.norm() <= m / (1.0 - m) + 1e-10);
            assert!(y.norm() <= (1.0 - m * m) / (1.0 - m).powi(2) + 1e-10);
        }
    }

    #[test]
    fn sup_norm_examples() {
        let scheme = RadialScheme::default();
        let one = poly(&[c(1.0, 0.0)]);
        let s = p_phi_sup_norm(&mob(0.0), &one, 64, &scheme).unwrap();
        assert!((s.grid_max - 1.0).abs() < 1e-15);

        let s = p_phi_sup_norm(&mob(0.5), &one, 256, &scheme).unwrap();
        // oracle: dense scan of |−0.5/(ζ−0.5) + 0.75/|1 − 0.5ζ|²|
        let dense = (0..200_000)
            .map(|k| {
                let z = C::from_polar(1.0, TAU * k as f64 / 200_000.0);
                (c(-0.5, 0.0) / (z - 0.5) + 0.75 / (c(1.0, 0.0) - z * 0.5).norm_sqr()).norm()
            })
            .fold(0.0, f64::max);
        assert!((dense - 2.0).abs() < 1e-12);
        assert!((s.grid_max - 2.0).abs() < 1e-12);
        assert_eq!(s.grid_argmax, 0.0);
        assert!(s.refined >= s.grid_max && s.refined <= dense + 1e-12);

        let big = poly(&[c(2.0, 0.0)]);
        assert!(matches!(p_phi_sup_norm(&mob(0.5), &big, 16, &scheme), Err(Error::Precondition(_))));
    }

    #[test]
    fn operator_bound_on_fixture_maps() {
        let scheme = RadialScheme::default();
        let maps = vec![
            mob(0.0),
            mob(0.25),
            mob(0.75),
            DiskSelfMap::mobius(DiskPoint::new(c(-0.3, 0.5)).unwrap()),
            DiskSelfMap::polynomial(vec![c(0.25, 0.0), c(0.0, 0.0), c(0.5, 0.0)]).unwrap(),
            DiskSelfMap::polynomial(vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap(),
            DiskSelfMap::blaschke(&[c(0.3, 0.0)], 0.0).unwrap(),
        ];
        for phi in maps {
            let m = phi.at_origin().norm();
            let bound = (1.0 + 2.0 * m) / (1.0 - m);
            for seed in 0..4 {
                let h = DiskAlgebraPoly::sample_unit_ball(6, seed);
                let s = p_phi_sup_norm(&phi, &h, 64, &scheme).unwrap();
                assert!(s.refined <= bound + 1e-8, "{phi:?}: {} > {bound}", s.refined);
            }
        }
    }

    #[test]
    fn composition_pairing_matches_pushforward_for_square() {
        let scheme = RadialScheme::default();
        let z2 = DiskSelfMap::polynomial(vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        let mu = AtomicMeasure::from_angles(&[(0.4, c(1.0, -0.5)), (3.0, c(0.2, 0.0))]).unwrap();
        let nu = mu.monomial_pushforward(2).unwrap();
        for seed in 0..10 {
            let h = DiskAlgebraPoly::sample_unit_ball(9, seed);
            let via_kernel = composition_pairing(&mu, &z2, &h, &scheme).unwrap();
            let via_push: C = nu.atoms().iter().map(|a| a.weight * h.eval(a.position.value()).unwrap().conj()).sum();
            assert!((via_kernel - via_push).norm() < 1e-8);
        }
    }
}
