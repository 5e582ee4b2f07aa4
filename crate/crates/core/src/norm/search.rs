//! Multistart coordinate ascent for `|Σ g_n·conj(h_n)| / ‖h‖_cert` over
//! polynomials `h` of bounded degree.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{
    combined_certificate, default_sample_count, effective_degree, first_order_factor, second_order_factor,
    DiskAlgebraPoly, MAX_SEARCH_DEGREE,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SearchConfig {
    pub degree_cap: usize,
    pub restarts: usize,
    pub iterations: usize,
    pub seed: u64,
}

impl SearchConfig {
    pub fn new(degree_cap: usize, restarts: usize, seed: u64) -> Self {
        Self { degree_cap, restarts, iterations: 200, seed }
    }
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self::new(16, 8, crate::DEFAULT_SEED)
    }
}

/// Best test function found and its certified ratio.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DualWitness {
    pub value: f64,
    pub h: DiskAlgebraPoly,
    pub restart: usize,
}

/// Seed for restart `k`, decorrelated from neighbouring seeds.
pub(crate) fn restart_seed(seed: u64, k: usize) -> u64 {
    seed ^ (k as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// `|Σ g_n conj(h_n)|` divided by the certificate of `h`.
pub fn certified_ratio(g: &[Complex64], h: &DiskAlgebraPoly) -> f64 {
    if h.certified_sup() == 0.0 {
        return 0.0;
    }
    let s: Complex64 = g.iter().zip(h.coeffs()).map(|(gn, hn)| gn * hn.conj()).sum();
    s.norm() / h.certified_sup()
}

/// Iterate with its boundary samples kept current for cheap certification.
struct Iterate<'a> {
    g: &'a [Complex64],
    coeffs: Vec<Complex64>,
    samples: Vec<Complex64>,
    /// `t_k = exp(2πik/N)`
    nodes: Vec<Complex64>,
    pairing: Complex64,
    value: f64,
    /// Index of the largest sample; rejection scans start here.
    peak: usize,
}

impl<'a> Iterate<'a> {
    fn new(g: &'a [Complex64], coeffs: Vec<Complex64>, nodes: &[Complex64]) -> Self {
        let samples =
            nodes.iter().map(|&t| coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * t + c)).collect();
        let pairing = g.iter().zip(&coeffs).map(|(gn, hn)| gn * hn.conj()).sum();
        let mut it = Self { g, coeffs, samples, nodes: nodes.to_vec(), pairing, value: 0.0, peak: 0 };
        it.peak = it.argmax();
        it.value = it.score(&it.coeffs, it.samples[it.peak].norm(), it.pairing);
        it
    }

    fn argmax(&self) -> usize {
        let mut best = (0, -1.0);
        for (k, s) in self.samples.iter().enumerate() {
            let v = s.norm_sqr();
            if v > best.1 {
                best = (k, v);
            }
        }
        best.0
    }

    fn score(&self, coeffs: &[Complex64], sample_max: f64, pairing: Complex64) -> f64 {
        let sum: f64 = coeffs.iter().map(|c| c.norm()).sum();
        match combined_certificate(sample_max, sum, effective_degree(coeffs), self.nodes.len()) {
            Ok(cert) if cert > 0.0 => pairing.norm() / cert,
            _ => 0.0,
        }
    }

    /// Tries `c_n += delta`; keeps it if the ratio improves.
    ///
    /// A candidate can only win if its certificate stays below
    /// `|pairing|/value`, so the sample scan stops at the first sample that
    /// rules this out. Scanning from the previous peak makes most rejections
    /// immediate.
    fn try_step(&mut self, n: usize, delta: Complex64) -> bool {
        if delta.norm() == 0.0 {
            return false;
        }
        let len = self.nodes.len();
        let pairing = self.pairing + self.g[n] * delta.conj();
        let old = self.coeffs[n];
        self.coeffs[n] = old + delta;
        let degree = effective_degree(&self.coeffs);
        let sum: f64 = self.coeffs.iter().map(|c| c.norm()).sum();
        let target = self.value * (1.0 + 1e-15);
        // reject when every sample could be examined and none helped
        let limit_sqr = match (second_order_factor(degree, len), first_order_factor(degree, len)) {
            (Ok(f2), Ok(f1)) if target > 0.0 && sum >= pairing.norm() / target => {
                let s = pairing.norm() / (target * f1.min(f2));
                s * s
            }
            _ => f64::INFINITY,
        };
        let mut best = (self.peak, 0.0f64);
        let mut k = self.peak;
        let mut idx = (self.peak * n) % len;
        let mut rejected = false;
        for _ in 0..len {
            let v = (self.samples[k] + delta * self.nodes[idx]).norm_sqr();
            if v > best.1 {
                best = (k, v);
                if v >= limit_sqr {
                    rejected = true;
                    break;
                }
            }
            k += 1;
            if k == len {
                k = 0;
            }
            idx += n;
            if idx >= len {
                idx -= len;
            }
        }
        let value = if rejected { 0.0 } else { self.score(&self.coeffs, best.1.sqrt(), pairing) };
        if value > target {
            let mut idx = 0;
            for (s, _) in self.samples.iter_mut().zip(0..len) {
                *s += delta * self.nodes[idx];
                idx += n;
                if idx >= len {
                    idx -= len;
                }
            }
            self.pairing = pairing;
            self.value = value;
            self.peak = best.0;
            true
        } else {
            self.coeffs[n] = old;
            false
        }
    }

    /// Rescales so the certificate is one; the ratio is unchanged.
    fn renormalize(&mut self) {
        let sum: f64 = self.coeffs.iter().map(|c| c.norm()).sum();
        let Ok(cert) =
            combined_certificate(self.samples[self.peak].norm(), sum, effective_degree(&self.coeffs), self.nodes.len())
        else {
            return;
        };
        if cert > 0.0 && cert.is_finite() {
            for c in self.coeffs.iter_mut().chain(self.samples.iter_mut()) {
                *c /= cert;
            }
            self.pairing /= cert;
        }
    }

    fn run(&mut self, iterations: usize) {
        let rot = |s: f64| Complex64::from_polar(1.0, s);
        let mut step = 0.25;
        for _ in 0..iterations {
            self.renormalize();
            let mut improved = false;
            for n in 0..self.coeffs.len() {
                let c = self.coeffs[n];
                let candidates = [
                    Complex64::new(step, 0.0),
                    Complex64::new(0.0, step),
                    Complex64::new(-step, 0.0),
                    Complex64::new(0.0, -step),
                    c * step,
                    -c * step,
                    c * (rot(step * PI) - 1.0),
                    c * (rot(-step * PI) - 1.0),
                ];
                for delta in candidates {
                    if self.try_step(n, delta) {
                        improved = true;
                        break;
                    }
                }
            }
            if !improved {
                step *= 0.5;
                if step < 1e-10 {
                    break;
                }
            }
        }
    }
}

/// Maximizes `|Σ g_n conj(h_n)| / ‖h‖_cert` over `deg h <= g.len() − 1`.
///
/// Restart 0 starts from `h = g` (optimal for the coefficient 2-norm),
/// restart 1 from `h ≡ 1`, the rest from seeded random draws. The returned
/// value is recomputed from the witness with the standard certificate, so it
/// is a valid lower bound for the dual norm of the functional.
pub fn maximize_functional(g: &[Complex64], cfg: &SearchConfig) -> Result<DualWitness> {
    let degree = g.len().saturating_sub(1);
    if degree > MAX_SEARCH_DEGREE {
        return Err(Error::InvalidInput(format!("search degree {degree} exceeds the cap {MAX_SEARCH_DEGREE}")));
    }
    let n = default_sample_count(degree);
    let nodes: Vec<Complex64> =
        (0..n).map(|k| Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / n as f64)).collect();

    let mut best: Option<DualWitness> = None;
    for restart in 0..cfg.restarts.max(1) {
        let start: Vec<Complex64> = match restart {
            0 if g.iter().any(|x| x.norm() > 0.0) => g.to_vec(),
            0 | 1 => {
                let mut v = vec![Complex64::new(0.0, 0.0); degree + 1];
                v[0] = Complex64::new(1.0, 0.0);
                v
            }
            _ => {
                let mut rng = ChaCha8Rng::seed_from_u64(restart_seed(cfg.seed, restart));
                DiskAlgebraPoly::sample_with(degree, &mut rng).coeffs().to_vec()
            }
        };
        let mut it = Iterate::new(g, start, &nodes);
        it.run(cfg.iterations);
        let Ok(h) = DiskAlgebraPoly::new(it.coeffs).and_then(|h| h.normalized()) else {
            continue;
        };
        let value = certified_ratio(g, &h);
        // strict comparison: ties go to the earlier restart
        if best.as_ref().is_none_or(|b| value > b.value) {
            best = Some(DualWitness { value, h, restart });
        }
    }
    Ok(best.unwrap_or_else(|| DualWitness {
        value: 0.0,
        h: DiskAlgebraPoly::constant(Complex64::new(1.0, 0.0)),
        restart: 0,
    }))
}
