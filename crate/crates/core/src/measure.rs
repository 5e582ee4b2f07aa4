//! Finitely atomic measures on the circle and their Cauchy–Stieltjes
//! transforms `K_μ(z) = ∫ dμ(ζ) / (1 − ζ̄z)`.

use std::f64::consts::TAU;
use std::ops::Add;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::circle::CirclePoint;
use crate::error::{Error, Result};

/// Atoms closer than this (in angle) are merged.
pub const MERGE_ANGLE: f64 = 1e-12;

/// Upper limit on the number of Taylor coefficients produced at once.
pub const MAX_TAYLOR: usize = 1 << 12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub position: CirclePoint,
    pub weight: Complex64,
}

/// JSON literal for one atom: `{"angle": θ, "re": x, "im": y}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AtomLiteral {
    pub angle: f64,
    pub re: f64,
    pub im: f64,
}

/// A finite sum `Σ c_j δ_{ζ_j}` with distinct positions, sorted by angle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<AtomLiteral>", into = "Vec<AtomLiteral>")]
pub struct AtomicMeasure {
    atoms: Vec<Atom>,
}

impl AtomicMeasure {
    /// Builds a measure, merging atoms closer than [`MERGE_ANGLE`] and
    /// dropping zero weights.
    pub fn new(atoms: impl IntoIterator<Item = (CirclePoint, Complex64)>) -> Result<Self> {
        let mut raw: Vec<Atom> = atoms.into_iter().map(|(position, weight)| Atom { position, weight }).collect();
        if raw.iter().any(|a| !a.weight.re.is_finite() || !a.weight.im.is_finite()) {
            return Err(Error::InvalidInput("atom weights must be finite".into()));
        }
        raw.sort_by(|x, y| x.position.angle().total_cmp(&y.position.angle()));

        let mut merged: Vec<Atom> = Vec::with_capacity(raw.len());
        for atom in raw {
            match merged.last_mut() {
                Some(last) if atom.position.angle() - last.position.angle() < MERGE_ANGLE => {
                    last.weight += atom.weight;
                }
                _ => merged.push(atom),
            }
        }
        // wrap-around: an atom just below 2π sits next to one at angle 0
        if merged.len() > 1 {
            let first = merged[0].position.angle();
            let last = merged[merged.len() - 1].position.angle();
            if first + TAU - last < MERGE_ANGLE {
                let tail = merged.pop().expect("len > 1");
                merged[0].weight += tail.weight;
            }
        }
        merged.retain(|a| a.weight.norm() > 0.0);
        if merged.is_empty() {
            return Err(Error::EmptyMeasure);
        }
        Ok(Self { atoms: merged })
    }

    pub fn point_mass(position: CirclePoint, weight: Complex64) -> Result<Self> {
        Self::new([(position, weight)])
    }

    /// Convenience constructor from `(angle, weight)` pairs.
    pub fn from_angles(atoms: &[(f64, Complex64)]) -> Result<Self> {
        Self::new(atoms.iter().map(|&(t, c)| (CirclePoint::from_angle(t), c)))
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    /// Total variation `Σ |c_j|`.
    pub fn tv_norm(&self) -> f64 {
        self.atoms.iter().map(|a| a.weight.norm()).sum()
    }

    /// Image of the measure under `ζ ↦ ζ^n`'s inverse: every atom is spread
    /// evenly over the n-th roots of its position, so that the transform of
    /// the result is `K_μ(z^n)`.
    pub fn monomial_pushforward(&self, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("pushforward exponent must be at least 1".into()));
        }
        if n == 1 {
            return Ok(self.clone());
        }
        let nf = n as f64;
        let atoms = self.atoms.iter().flat_map(|a| {
            let base = a.position.angle() / nf;
            let w = a.weight / nf;
            (0..n).map(move |k| (CirclePoint::from_angle(base + TAU * k as f64 / nf), w))
        });
        Self::new(atoms)
    }

    /// Weights scaled by `s`.
    pub fn scaled(&self, s: Complex64) -> Result<Self> {
        Self::new(self.atoms.iter().map(|a| (a.position, a.weight * s)))
    }

    pub fn to_literal(&self) -> Vec<AtomLiteral> {
        self.atoms.iter().map(|a| AtomLiteral { angle: a.position.angle(), re: a.weight.re, im: a.weight.im }).collect()
    }
}

impl TryFrom<Vec<AtomLiteral>> for AtomicMeasure {
    type Error = Error;

    fn try_from(lits: Vec<AtomLiteral>) -> Result<Self> {
        if lits.iter().any(|l| !l.angle.is_finite()) {
            return Err(Error::InvalidInput("atom angle must be finite".into()));
        }
        Self::new(lits.into_iter().map(|l| (CirclePoint::from_angle(l.angle), Complex64::new(l.re, l.im))))
    }
}

impl From<AtomicMeasure> for Vec<AtomLiteral> {
    fn from(m: AtomicMeasure) -> Self {
        m.to_literal()
    }
}

impl Add for &AtomicMeasure {
    type Output = Result<AtomicMeasure>;

    fn add(self, rhs: Self) -> Self::Output {
        AtomicMeasure::new(self.atoms.iter().chain(&rhs.atoms).map(|a| (a.position, a.weight)))
    }
}

/// The function `f = K_μ`, analytic in the open disk.
#[derive(Debug, Clone, PartialEq)]
pub struct CauchyTransform {
    measure: AtomicMeasure,
}

impl CauchyTransform {
    pub fn new(measure: AtomicMeasure) -> Self {
        Self { measure }
    }

    pub fn measure(&self) -> &AtomicMeasure {
        &self.measure
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let m = z.norm();
        if m.is_nan() || m >= 1.0 {
            return Err(Error::OutsideDisk(m));
        }
        let one = Complex64::new(1.0, 0.0);
        Ok(self.measure.atoms.iter().map(|a| a.weight / (one - a.position.value().conj() * z)).sum())
    }

    /// `μ̂(k) = Σ c_j ζ̄_j^k` for `k = 0..count`, so that `f(z) = Σ μ̂(k) z^k`.
    pub fn taylor_coeffs(&self, count: usize) -> Result<Vec<Complex64>> {
        if count == 0 || count > MAX_TAYLOR {
            return Err(Error::InvalidInput(format!("coefficient count must be in 1..={MAX_TAYLOR}, got {count}")));
        }
        let mut out = vec![Complex64::new(0.0, 0.0); count];
        for a in &self.measure.atoms {
            let step = a.position.value().conj();
            let mut p = Complex64::new(1.0, 0.0);
            for c in out.iter_mut() {
                *c += a.weight * p;
                p *= step;
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    fn delta(angle: f64) -> AtomicMeasure {
        AtomicMeasure::from_angles(&[(angle, c(1.0, 0.0))]).unwrap()
    }

    #[test]
    fn cauchy_eval_examples() {
        let f = CauchyTransform::new(delta(0.0));
        assert_eq!(f.eval(c(0.0, 0.0)).unwrap(), c(1.0, 0.0));
        assert!((f.eval(c(0.5, 0.0)).unwrap() - c(2.0, 0.0)).norm() < 1e-15);
        let half = AtomicMeasure::from_angles(&[(0.0, c(0.5, 0.0)), (PI, c(0.5, 0.0))]).unwrap();
        let v = CauchyTransform::new(half).eval(c(0.0, 0.6)).unwrap();
        let oracle = c(0.5, 0.0) / c(1.0, -0.6) + c(0.5, 0.0) / c(1.0, 0.6);
        assert!((v - oracle).norm() < 1e-15);
        assert!((v.re - 1.0 / 1.36).abs() < 1e-15 && v.im.abs() < 1e-15);
        assert!(f.eval(c(1.0, 0.0)).is_err());
    }

    #[test]
    fn tv_norm_examples() {
        assert_eq!(delta(0.0).tv_norm(), 1.0);
        let dipole = AtomicMeasure::from_angles(&[(0.0, c(1.0, 0.0)), (PI, c(-1.0, 0.0))]).unwrap();
        assert_eq!(dipole.tv_norm(), 2.0);
        assert_eq!(AtomicMeasure::from_angles(&[(1.0, c(3.0, 4.0))]).unwrap().tv_norm(), 5.0);
    }

    #[test]
    fn taylor_examples() {
        let ones = CauchyTransform::new(delta(0.0)).taylor_coeffs(5).unwrap();
        assert!(ones.iter().all(|v| (v - c(1.0, 0.0)).norm() < 1e-15));
        let at_i = CauchyTransform::new(delta(FRAC_PI_2)).taylor_coeffs(4).unwrap();
        for (got, want) in at_i.iter().zip([c(1.0, 0.0), c(0.0, -1.0), c(-1.0, 0.0), c(0.0, 1.0)]) {
            assert!((got - want).norm() < 1e-15);
        }
        let half = AtomicMeasure::from_angles(&[(0.0, c(0.5, 0.0)), (PI, c(0.5, 0.0))]).unwrap();
        let h = CauchyTransform::new(half).taylor_coeffs(4).unwrap();
        for (got, want) in h.iter().zip([1.0, 0.0, 1.0, 0.0]) {
            assert!((got - c(want, 0.0)).norm() < 1e-15);
        }
        assert!(CauchyTransform::new(delta(0.0)).taylor_coeffs(0).is_err());
        assert!(CauchyTransform::new(delta(0.0)).taylor_coeffs(MAX_TAYLOR + 1).is_err());
    }

    #[test]
    fn merges_close_atoms() {
        let m = AtomicMeasure::from_angles(&[(1.0, c(1.0, 0.0)), (1.0 + 1e-13, c(2.0, 0.0))]).unwrap();
        assert_eq!(m.atoms().len(), 1);
        assert_eq!(m.atoms()[0].weight, c(3.0, 0.0));
        let wrap = AtomicMeasure::from_angles(&[(0.0, c(1.0, 0.0)), (TAU - 1e-13, c(1.0, 0.0))]).unwrap();
        assert_eq!(wrap.atoms().len(), 1);
        assert!(matches!(
            AtomicMeasure::from_angles(&[(0.0, c(1.0, 0.0)), (1e-14, c(-1.0, 0.0))]),
            Err(Error::EmptyMeasure)
        ));
        assert!(matches!(AtomicMeasure::new([]), Err(Error::EmptyMeasure)));
    }

    #[test]
    fn pushforward_examples() {
        let nu = delta(0.0).monomial_pushforward(2).unwrap();
        assert_eq!(nu.atoms().len(), 2);
        assert!((nu.atoms()[0].position.value() - c(1.0, 0.0)).norm() < 1e-15);
        assert!((nu.atoms()[1].position.value() - c(-1.0, 0.0)).norm() < 1e-15);
        // ½/(1−z) + ½/(1+z) = 1/(1−z²)
        let coeffs = CauchyTransform::new(nu).taylor_coeffs(20).unwrap();
        for (k, v) in coeffs.iter().enumerate() {
            let want = if k % 2 == 0 { 1.0 } else { 0.0 };
            assert!((v - c(want, 0.0)).norm() < 1e-12);
        }
        let m = AtomicMeasure::from_angles(&[(0.3, c(1.0, 2.0)), (2.0, c(-0.5, 0.0))]).unwrap();
        assert_eq!(m.monomial_pushforward(1).unwrap(), m);

        let at_i = delta(FRAC_PI_2);
        let nu = at_i.monomial_pushforward(2).unwrap();
        let s = C::from_polar(1.0, PI / 4.0);
        for a in nu.atoms() {
            assert!((a.position.value() - s).norm() < 1e-15 || (a.position.value() + s).norm() < 1e-15);
            assert_eq!(a.weight, c(0.5, 0.0));
        }
        // K_μ(z²) has coefficient (−i)^m at z^{2m}
        let coeffs = CauchyTransform::new(nu).taylor_coeffs(16).unwrap();
        for (k, v) in coeffs.iter().enumerate() {
            let want = if k % 2 == 0 { c(0.0, -1.0).powu(k as u32 / 2) } else { c(0.0, 0.0) };
            assert!((v - want).norm() < 1e-12);
        }
    }

    #[test]
    fn literal_round_trip() {
        let json = r#"[{"angle": 0.0, "re": 1.0, "im": 0.0}, {"angle": 3.5, "re": 0.0, "im": -2.0}]"#;
        let m: AtomicMeasure = serde_json::from_str(json).unwrap();
        assert_eq!(m.atoms().len(), 2);
        assert_eq!(m.tv_norm(), 3.0);
        let back: AtomicMeasure = serde_json::from_str(&serde_json::to_string(&m).unwrap()).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<AtomicMeasure>("[]").is_err());
    }

    fn measure_strategy() -> impl Strategy<Value = AtomicMeasure> {
        prop::collection::vec((0.0..TAU, -2.0..2.0f64, -2.0..2.0f64), 1..6).prop_filter_map(
            "nonzero measure",
            |atoms| {
                AtomicMeasure::from_angles(&atoms.into_iter().map(|(t, x, y)| (t, c(x, y))).collect::<Vec<_>>()).ok()
            },
        )
    }

    proptest! {
        #[test]
        fn series_matches_kernel_sum(mu in measure_strategy(), r in 0.0..0.9f64, th in 0.0..TAU) {
            let z = C::from_polar(r, th);
            let f = CauchyTransform::new(mu.clone());
            let v = f.eval(z).unwrap();
            let coeffs = f.taylor_coeffs(300).unwrap();
            let tv = mu.tv_norm();
            let mut partial = c(0.0, 0.0);
            let mut zk = c(1.0, 0.0);
            for (k, ck) in coeffs.iter().enumerate() {
                let tail = 2.0 * tv * 0.9f64.powi(k as i32) / 0.1;
                prop_assert!((v - partial).norm() <= tail + 1e-12);
                partial += ck * zk;
                zk *= z;
            }
        }

        #[test]
        fn pushforward_preserves_norm_and_dilates(mu in measure_strategy(), n in 1usize..6) {
            let nu = mu.monomial_pushforward(n).unwrap();
            prop_assert!((nu.tv_norm() - mu.tv_norm()).abs() <= 1e-14 * mu.tv_norm().max(1.0));
            let cm = CauchyTransform::new(mu).taylor_coeffs(50).unwrap();
            let cn = CauchyTransform::new(nu).taylor_coeffs(50).unwrap();
            for (k, v) in cn.iter().enumerate() {
                let want = if k % n == 0 { cm[k / n] } else { c(0.0, 0.0) };
                prop_assert!((v - want).norm() <= 1e-12 * (1.0 + want.norm()));
            }
        }

        #[test]
        fn transform_is_additive(a in measure_strategy(), b in measure_strategy(), r in 0.0..0.95f64, th in 0.0..TAU) {
            let z = C::from_polar(r, th);
            let sum = &a + &b;
            let fa = CauchyTransform::new(a).eval(z).unwrap();
            let fb = CauchyTransform::new(b).eval(z).unwrap();
            match sum {
                Ok(s) => {
                    let fs = CauchyTransform::new(s).eval(z).unwrap();
                    prop_assert!((fs - fa - fb).norm() <= 1e-12 * (1.0 + fa.norm() + fb.norm()));
                }
                // exact cancellation of every atom leaves the zero function
                Err(Error::EmptyMeasure) => prop_assert!((fa + fb).norm() <= 1e-12),
                Err(e) => return Err(TestCaseError::fail(e.to_string())),
            }
        }
    }
}
