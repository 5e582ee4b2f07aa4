//! Points of the disk and circle, Möbius involutions and the equispaced
//! quadrature grid for the normalized arc-length measure `dm`.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Points with `|z| >= 1 - DISK_MARGIN` are not accepted as disk points.
pub const DISK_MARGIN: f64 = 1e-15;

/// Slack allowed when an argument is required to lie in the closed disk.
pub const CLOSED_DISK_SLACK: f64 = 1e-12;

/// Grid size the adaptive integrator starts from.
pub const DEFAULT_GRID: usize = 512;

/// Largest grid the adaptive integrator will try.
pub const MAX_GRID: usize = 1 << 16;

/// Stopping rule for grid doubling, relative to `max(1, |value|)`.
pub const GRID_CONVERGENCE: f64 = 1e-12;

/// A point of the open unit disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskPoint(Complex64);

impl DiskPoint {
    pub fn new(value: Complex64) -> Result<Self> {
        if !(value.re.is_finite() && value.im.is_finite()) || value.norm() >= 1.0 - DISK_MARGIN {
            return Err(Error::OutsideDisk(value.norm()));
        }
        Ok(Self(value))
    }

    pub fn real(x: f64) -> Result<Self> {
        Self::new(Complex64::new(x, 0.0))
    }

    pub fn origin() -> Self {
        Self(Complex64::new(0.0, 0.0))
    }

    pub fn value(self) -> Complex64 {
        self.0
    }

    pub fn modulus(self) -> f64 {
        self.0.norm()
    }
}

/// A point `exp(i·angle)` of the unit circle, angle reduced to `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CirclePoint {
    angle: f64,
    value: Complex64,
}

impl CirclePoint {
    pub fn from_angle(angle: f64) -> Self {
        let mut angle = angle.rem_euclid(TAU);
        // rem_euclid can round up to exactly TAU for tiny negative inputs
        if angle >= TAU {
            angle = 0.0;
        }
        Self { angle, value: Complex64::from_polar(1.0, angle) }
    }

    /// Projects a nonzero complex number radially onto the circle.
    pub fn from_direction(z: Complex64) -> Result<Self> {
        if z.norm() == 0.0 || !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::InvalidInput("cannot take the direction of zero".into()));
        }
        Ok(Self::from_angle(z.arg()))
    }

    pub fn one() -> Self {
        Self::from_angle(0.0)
    }

    pub fn angle(self) -> f64 {
        self.angle
    }

    pub fn value(self) -> Complex64 {
        self.value
    }
}

/// The disk automorphism `λ_a(z) = (a − z)/(1 − āz)`.
///
/// It swaps `0` and `a` and is its own inverse.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MobiusMap {
    a: DiskPoint,
}

impl MobiusMap {
    pub fn new(a: DiskPoint) -> Self {
        Self { a }
    }

    pub fn a(&self) -> DiskPoint {
        self.a
    }

    /// Evaluates the involution on the closed disk.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        if z.norm() > 1.0 + CLOSED_DISK_SLACK {
            return Err(Error::OutsideClosedDisk(z.norm()));
        }
        Ok(self.eval_unchecked(z))
    }

    /// Evaluation without the domain check; only for arguments already known
    /// to lie in the closed disk.
    pub(crate) fn eval_unchecked(&self, z: Complex64) -> Complex64 {
        let a = self.a.value();
        let den = Complex64::new(1.0, 0.0) - a.conj() * z;
        debug_assert!(den.norm() > 0.0, "1 - conj(a) z vanished inside the closed disk");
        (a - z) / den
    }

    /// `λ_a(λ_a(z))`, which should give `z` back.
    pub fn compose_self(&self, z: Complex64) -> Result<Complex64> {
        let w = self.eval(z)?;
        // λ_a maps the closed disk into itself; clamp rounding excursions
        self.eval(if w.norm() > 1.0 { w / w.norm() } else { w })
    }

    /// Sup of `|λ_a(w)|` over the closed disk `|w| <= s`.
    pub fn image_radius(&self, s: f64) -> f64 {
        let m = self.a.modulus();
        ((m + s) / (1.0 + m * s)).min(1.0)
    }
}

/// `N` equispaced nodes `t_k = exp(2πik/N)` with weight `1/N` each.
#[derive(Debug, Clone)]
pub struct QuadratureGrid {
    nodes: Vec<Complex64>,
}

impl QuadratureGrid {
    pub fn new(node_count: usize) -> Result<Self> {
        if node_count == 0 {
            return Err(Error::InvalidInput("quadrature grid needs at least one node".into()));
        }
        let nodes = (0..node_count).map(|k| Complex64::from_polar(1.0, TAU * k as f64 / node_count as f64)).collect();
        Ok(Self { nodes })
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[Complex64] {
        &self.nodes
    }

    pub fn weight(&self) -> f64 {
        1.0 / self.nodes.len() as f64
    }

    /// `t_k^n` for any integer power, read off the node table.
    pub fn node_power(&self, k: usize, n: i64) -> Complex64 {
        let len = self.nodes.len() as i64;
        let idx = ((k as i64 % len) * (n.rem_euclid(len))).rem_euclid(len);
        self.nodes[idx as usize]
    }

    /// Trapezoid rule for `∫_T · dm`.
    pub fn integrate(&self, samples: &[Complex64]) -> Result<Complex64> {
        if samples.len() != self.nodes.len() {
            return Err(Error::LengthMismatch { expected: self.nodes.len(), found: samples.len() });
        }
        let sum: Complex64 = samples.iter().sum();
        Ok(sum * self.weight())
    }

    /// Integrates `f` over the circle, doubling the grid from
    /// [`DEFAULT_GRID`] until two successive values agree.
    pub fn integrate_adaptive<F>(f: F) -> Result<AdaptiveIntegral>
    where
        F: Fn(Complex64) -> Complex64,
    {
        integrate_adaptive_vec(1, |t| vec![f(t)])
            .map(|r| AdaptiveIntegral { value: r.values[0], node_count: r.node_count })
    }
}

#[derive(Debug, Clone, Copy)]
pub struct AdaptiveIntegral {
    pub value: Complex64,
    pub node_count: usize,
}

#[derive(Debug, Clone)]
pub(crate) struct AdaptiveVecIntegral {
    pub values: Vec<Complex64>,
    pub node_count: usize,
}

/// Adaptive trapezoid rule for a vector of integrands sharing their samples.
/// `f(t)` returns one value per component; all components must converge.
pub(crate) fn integrate_adaptive_vec<F>(components: usize, f: F) -> Result<AdaptiveVecIntegral>
where
    F: Fn(Complex64) -> Vec<Complex64>,
{
    let mut n = DEFAULT_GRID;
    let mut prev: Option<Vec<Complex64>> = None;
    let mut last_gap = f64::INFINITY;
    while n <= MAX_GRID {
        let grid = QuadratureGrid::new(n)?;
        let mut acc = vec![Complex64::new(0.0, 0.0); components];
        for &t in grid.nodes() {
            let vals = f(t);
            for (a, v) in acc.iter_mut().zip(vals) {
                *a += v;
            }
        }
        for a in &mut acc {
            *a *= grid.weight();
        }
        if acc.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::NonConvergence(format!("non-finite integrand on a {n}-node grid")));
        }
        if let Some(p) = &prev {
            last_gap = p.iter().zip(&acc).map(|(x, y)| (x - y).norm() / y.norm().max(1.0)).fold(0.0, f64::max);
            if last_gap < GRID_CONVERGENCE {
                return Ok(AdaptiveVecIntegral { values: acc, node_count: n });
            }
        }
        prev = Some(acc);
        n *= 2;
    }
    Err(Error::NonConvergence(format!("grid doubling stalled at {MAX_GRID} nodes (last relative gap {last_gap:.3e})")))
}
