//! Search for measures and test functions that push `‖f∘λ_a‖_K / ‖μ‖`
//! towards the bound `(1 + 2|a|)/(1 − |a|)`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::Serialize;

use crate::circle::{CirclePoint, DiskPoint};
use crate::error::{Error, Result};
use crate::kernel::{composition_functional, kernel_coeffs, RadialScheme};
use crate::measure::AtomicMeasure;
use crate::poly::DiskAlgebraPoly;
use crate::selfmap::DiskSelfMap;

use super::bound_cima_matheson;
use super::search::{maximize_functional, restart_seed, SearchConfig};

/// Largest `|a|` accepted by the scan.
pub const MAX_SCAN_MODULUS: f64 = 0.95;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanConfig {
    pub degree_cap: usize,
    pub restarts: usize,
    pub rounds: usize,
    pub max_atoms: usize,
    pub zeta_grid: usize,
    pub seed: u64,
}

impl ScanConfig {
    pub fn new(degree_cap: usize, seed: u64) -> Self {
        Self { degree_cap, restarts: 4, rounds: 4, max_atoms: 4, zeta_grid: 256, seed }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    pub a_mod: f64,
    pub bound: f64,
    /// Best certified `|⟨f∘λ_a, h⟩| / (‖μ‖·‖h‖)` found.
    pub ratio: f64,
    /// Best-so-far ratio after each round; nondecreasing.
    pub history: Vec<f64>,
    pub witness_mu: AtomicMeasure,
    pub witness_h: DiskAlgebraPoly,
}

struct RowSearch<'a> {
    phi: DiskSelfMap,
    scheme: RadialScheme,
    h: &'a DiskAlgebraPoly,
}

impl RowSearch<'_> {
    fn p_at(&self, angle: f64) -> Result<Complex64> {
        let k = kernel_coeffs(&self.phi, CirclePoint::from_angle(angle), self.h.degree(), &self.scheme)?;
        Ok(k.apply(self.h.coeffs(), 1.0))
    }

    /// `|Σ c_j conj(P h(ζ_j))| / (Σ|c_j|·‖h‖)` for atoms `(angle, c)`.
    fn objective(&self, atoms: &[(f64, Complex64)]) -> Result<f64> {
        let tv: f64 = atoms.iter().map(|(_, c)| c.norm()).sum();
        if tv == 0.0 {
            return Ok(0.0);
        }
        let mut s = Complex64::new(0.0, 0.0);
        for &(angle, c) in atoms {
            s += c * self.p_at(angle)?.conj();
        }
        Ok(s.norm() / (tv * self.h.certified_sup()))
    }

    fn argmax(&self, grid: usize) -> Result<(f64, Complex64)> {
        let mut best = (0.0, Complex64::new(0.0, 0.0));
        for k in 0..grid {
            let angle = TAU * k as f64 / grid as f64;
            let v = self.p_at(angle)?;
            if v.norm() > best.1.norm() {
                best = (angle, v);
            }
        }
        Ok(best)
    }

    /// Coordinate ascent over atom angles, weight moduli and phases.
    fn improve_atoms(&self, atoms: &mut [(f64, Complex64)], iterations: usize) -> Result<f64> {
        let mut value = self.objective(atoms)?;
        let mut step = 0.1;
        for _ in 0..iterations {
            let mut improved = false;
            for j in 0..atoms.len() {
                let (angle, c) = atoms[j];
                let rot = |s: f64| Complex64::from_polar(1.0, s);
                let candidates = [
                    (angle + step, c),
                    (angle - step, c),
                    (angle, c * (1.0 + step)),
                    (angle, c * (1.0 - step)),
                    (angle, c * rot(step * PI)),
                    (angle, c * rot(-step * PI)),
                ];
                for cand in candidates {
                    atoms[j] = cand;
                    let v = self.objective(atoms)?;
                    if v > value * (1.0 + 1e-15) {
                        value = v;
                        improved = true;
                        break;
                    }
                    atoms[j] = (angle, c);
                }
            }
            if !improved {
                step *= 0.5;
                if step < 1e-9 {
                    break;
                }
            }
        }
        Ok(value)
    }
}

fn to_measure(atoms: &[(f64, Complex64)]) -> Result<AtomicMeasure> {
    AtomicMeasure::from_angles(atoms)
}

fn scan_row(a_mod: f64, cfg: &ScanConfig, row: usize) -> Result<ScanRow> {
    let a = DiskPoint::real(a_mod)?;
    let bound = bound_cima_matheson(a_mod)?;
    let phi = DiskSelfMap::mobius(a);
    let scheme = RadialScheme::default();
    let search = SearchConfig::new(cfg.degree_cap, cfg.restarts, restart_seed(cfg.seed, row));

    let one = DiskAlgebraPoly::constant(Complex64::new(1.0, 0.0));
    let (angle, _) = RowSearch { phi: phi.clone(), scheme, h: &one }.argmax(cfg.zeta_grid)?;
    let mut atoms = vec![(angle, Complex64::new(1.0, 0.0))];

    let mut record = 0.0f64;
    let mut history = Vec::with_capacity(cfg.rounds);
    let mut best_mu = to_measure(&atoms)?;
    let mut best_h = one.clone();

    for _ in 0..cfg.rounds.max(1) {
        let mu = to_measure(&atoms)?;
        let g = composition_functional(&mu, &phi, cfg.degree_cap, &scheme)?;
        let w = maximize_functional(&g, &search)?;
        let ratio = w.value / mu.tv_norm();
        if ratio > record {
            record = ratio;
            best_mu = mu.clone();
            best_h = w.h.clone();
        }

        let rs = RowSearch { phi: phi.clone(), scheme, h: &w.h };
        if atoms.len() < cfg.max_atoms {
            let (peak, pv) = rs.argmax(cfg.zeta_grid)?;
            let mut s = Complex64::new(0.0, 0.0);
            for &(t, c) in &atoms {
                s += c * rs.p_at(t)?.conj();
            }
            if pv.norm() > 0.0 && s.norm() > 0.0 {
                // new atom whose contribution is in phase with the current sum
                let tv: f64 = atoms.iter().map(|(_, c)| c.norm()).sum();
                let c = (s / s.norm()) * (pv / pv.norm()) * (0.25 * tv);
                atoms.push((peak, c));
            }
        }
        let v = rs.improve_atoms(&mut atoms, 60)?;
        if v > record {
            record = v;
            best_mu = to_measure(&atoms)?;
            best_h = w.h.clone();
        }
        history.push(record);
    }

    Ok(ScanRow { a_mod, bound, ratio: record, history, witness_mu: best_mu, witness_h: best_h })
}

/// One row per `|a|`; each row reports the best ratio found, never a claim
/// that the bound is attained.
pub fn sharpness_scan(a_values: &[f64], cfg: &ScanConfig) -> Result<Vec<ScanRow>> {
    if let Some(bad) = a_values.iter().find(|a| !(0.0..=MAX_SCAN_MODULUS).contains(*a)) {
        return Err(Error::InvalidInput(format!("scan values must lie in [0, {MAX_SCAN_MODULUS}], got {bad}")));
    }
    a_values.iter().enumerate().map(|(i, &a)| scan_row(a, cfg, i)).collect()
}
