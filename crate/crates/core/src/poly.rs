//! Polynomial members of the disk algebra with certified boundary sup-norms.
//!
//! A polynomial of degree `d` is sampled at `N` equispaced boundary points.
//! Two bounds turn the sample maximum `S` into a guaranteed upper bound for
//! `‖h‖_∞` on the circle:
//!
//! * first order, from `|h'| <= d‖h‖` along the circle:
//!   `‖h‖ <= S / (1 − dπ/N)`;
//! * second order, applied to the real trigonometric polynomial `|h|²` of
//!   degree `d` at its maximum, where the derivative vanishes:
//!   `‖h‖ <= S / sqrt(1 − (dπ/N)²/2)`.
//!
//! The certificate stored with a [`DiskAlgebraPoly`] is the smallest of the
//! two and the coefficient sum `Σ|c_k|`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::circle::CLOSED_DISK_SLACK;
use crate::error::{Error, Result};

/// Largest degree used by automated searches.
pub const MAX_SEARCH_DEGREE: usize = 64;

/// Default number of boundary samples for certifying a degree-`d` polynomial.
pub fn default_sample_count(degree: usize) -> usize {
    (64 * degree).max(256)
}

/// Degree ignoring trailing zero coefficients.
pub fn effective_degree(coeffs: &[Complex64]) -> usize {
    coeffs.iter().rposition(|c| c.norm() > 0.0).unwrap_or(0)
}

pub(crate) fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// Max of `|h|` over `n` equispaced boundary points.
pub fn sampled_max(coeffs: &[Complex64], n: usize) -> f64 {
    (0..n).map(|k| horner(coeffs, Complex64::from_polar(1.0, TAU * k as f64 / n as f64)).norm()).fold(0.0, f64::max)
}

/// Inflation factor of the first-order Bernstein certificate.
pub fn first_order_factor(degree: usize, n: usize) -> Result<f64> {
    let q = degree as f64 * PI / n as f64;
    if q >= 1.0 {
        return Err(Error::TooFewSamples { samples: n, degree });
    }
    Ok(1.0 / (1.0 - q))
}

/// Inflation factor of the second-order certificate on `|h|²`.
pub fn second_order_factor(degree: usize, n: usize) -> Result<f64> {
    let q = degree as f64 * PI / n as f64;
    let s = 1.0 - 0.5 * q * q;
    if s <= 0.0 {
        return Err(Error::TooFewSamples { samples: n, degree });
    }
    Ok(1.0 / s.sqrt())
}

/// First-order Bernstein certificate: `max_k |h(t_k)| / (1 − dπ/N)`.
pub fn certify_sup_norm(coeffs: &[Complex64], sample_count: usize) -> Result<f64> {
    let d = effective_degree(coeffs);
    let factor = first_order_factor(d, sample_count)?;
    Ok(sampled_max(coeffs, sample_count) * factor)
}

/// Second-order certificate: `max_k |h(t_k)| / sqrt(1 − (dπ/N)²/2)`.
pub fn certify_sup_norm_tight(coeffs: &[Complex64], sample_count: usize) -> Result<f64> {
    let d = effective_degree(coeffs);
    let factor = second_order_factor(d, sample_count)?;
    Ok(sampled_max(coeffs, sample_count) * factor)
}

/// Combined certificate from an already computed sample maximum.
pub(crate) fn combined_certificate(sample_max: f64, coeff_sum: f64, degree: usize, n: usize) -> Result<f64> {
    let first = sample_max * first_order_factor(degree, n)?;
    let second = sample_max * second_order_factor(degree, n)?;
    Ok(first.min(second).min(coeff_sum))
}

/// A polynomial `h(z) = Σ c_k z^k` together with an upper bound for its
/// sup-norm on the circle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiskAlgebraPoly {
    coeffs: Vec<Complex64>,
    certified_sup: f64,
}

impl DiskAlgebraPoly {
    /// Certifies with [`default_sample_count`] samples.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        let n = default_sample_count(effective_degree(&coeffs));
        Self::with_samples(coeffs, n)
    }

    pub fn with_samples(mut coeffs: Vec<Complex64>, sample_count: usize) -> Result<Self> {
        if coeffs.is_empty() {
            coeffs.push(Complex64::new(0.0, 0.0));
        }
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvalidInput("polynomial coefficients must be finite".into()));
        }
        let d = effective_degree(&coeffs);
        let coeff_sum = coeffs.iter().map(|c| c.norm()).sum();
        let certified_sup = combined_certificate(sampled_max(&coeffs, sample_count), coeff_sum, d, sample_count)?;
        Ok(Self { coeffs, certified_sup })
    }

    pub fn constant(c: Complex64) -> Self {
        Self { coeffs: vec![c], certified_sup: c.norm() }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn certified_sup(&self) -> f64 {
        self.certified_sup
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        if z.norm() > 1.0 + CLOSED_DISK_SLACK {
            return Err(Error::OutsideClosedDisk(z.norm()));
        }
        Ok(horner(&self.coeffs, z))
    }

    pub(crate) fn eval_unchecked(&self, z: Complex64) -> Complex64 {
        horner(&self.coeffs, z)
    }

    /// Rescales so that the certificate is at most one.
    pub fn normalized(&self) -> Result<Self> {
        if self.certified_sup == 0.0 {
            return Err(Error::InvalidInput("cannot normalize the zero polynomial".into()));
        }
        let mut scale = self.certified_sup;
        loop {
            let coeffs: Vec<Complex64> = self.coeffs.iter().map(|c| c / scale).collect();
            let p = Self::new(coeffs)?;
            if p.certified_sup <= 1.0 {
                return Ok(p);
            }
            scale *= p.certified_sup;
        }
    }

    /// A random member of the certified unit ball. Coefficients are drawn
    /// uniformly from the square `[−1, 1]²` and the draw is normalized.
    pub fn sample_unit_ball(degree: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::sample_with(degree, &mut rng)
    }

    pub(crate) fn sample_with<R: Rng>(degree: usize, rng: &mut R) -> Self {
        loop {
            let coeffs: Vec<Complex64> =
                (0..=degree).map(|_| Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0))).collect();
            if let Ok(p) = Self::new(coeffs).and_then(|p| p.normalized()) {
                return p;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    #[test]
    fn poly_eval_examples() {
        let one = DiskAlgebraPoly::new(vec![c(1.0, 0.0)]).unwrap();
        assert_eq!(one.eval(c(0.3, -0.2)).unwrap(), c(1.0, 0.0));
        let id = DiskAlgebraPoly::new(vec![c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert_eq!(id.eval(c(0.0, 1.0)).unwrap(), c(0.0, 1.0));
        let sq = DiskAlgebraPoly::new(vec![c(1.0, 0.0), c(2.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert_eq!(sq.eval(c(1.0, 0.0)).unwrap(), c(4.0, 0.0));
        assert!(sq.eval(c(1.0 + 1e-9, 0.0)).is_err());
        assert!(sq.eval(c(1.0 + 1e-13, 0.0)).is_ok());
    }

    #[test]
    fn certify_examples() {
        assert_eq!(certify_sup_norm(&[c(3.0, 4.0)], 16).unwrap(), 5.0);
        let v = certify_sup_norm(&[c(0.0, 0.0), c(1.0, 0.0)], 64).unwrap();
        assert!((v - 1.0 / (1.0 - PI / 64.0)).abs() < 1e-15);
        assert!((v - 1.0516).abs() < 1e-4);
        let v = certify_sup_norm(&[c(1.0, 0.0), c(1.0, 0.0)], 1024).unwrap();
        assert!((2.0..=2.0 * 1.0031).contains(&v));
        assert!(matches!(
            certify_sup_norm(&[c(1.0, 0.0); 10], 28),
            Err(Error::TooFewSamples { samples: 28, degree: 9 })
        ));
    }

    #[test]
    fn tight_certificate_is_second_order() {
        let id = [c(0.0, 0.0), c(1.0, 0.0)];
        let t = certify_sup_norm_tight(&id, 64).unwrap();
        assert!(t >= 1.0 && t - 1.0 < 1e-3);
        let v = certify_sup_norm_tight(&[c(1.0, 0.0), c(1.0, 0.0)], 1024).unwrap();
        assert!((2.0..=2.0 * (1.0 + 1e-5)).contains(&v));
    }

    #[test]
    fn stored_certificate_respects_coefficient_sum() {
        let p = DiskAlgebraPoly::new(vec![c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert_eq!(p.certified_sup(), 1.0);
        let q = DiskAlgebraPoly::new(vec![c(1.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)]).unwrap();
        assert!(q.certified_sup() <= 2.0);
    }

    #[test]
    fn sampler_examples() {
        let p = DiskAlgebraPoly::sample_unit_ball(0, 7);
        assert!((p.coeffs()[0].norm() - 1.0).abs() < 1e-15);
        let q = DiskAlgebraPoly::sample_unit_ball(5, 42);
        assert_eq!(q.degree(), 5);
        assert!(q.certified_sup() <= 1.0);
        assert_eq!(DiskAlgebraPoly::sample_unit_ball(5, 42), q);
        assert_ne!(DiskAlgebraPoly::sample_unit_ball(5, 43), q);
    }

    #[test]
    fn json_is_pairs() {
        let p = DiskAlgebraPoly::constant(c(1.0, -2.0));
        let v = serde_json::to_value(&p).unwrap();
        assert_eq!(v["coeffs"], serde_json::json!([[1.0, -2.0]]));
    }

    fn coeff_strategy() -> impl Strategy<Value = Vec<C>> {
        prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 1..33)
            .prop_map(|v| v.into_iter().map(|(x, y)| c(x, y)).collect())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn certificate_is_sound(coeffs in coeff_strategy()) {
            let p = DiskAlgebraPoly::new(coeffs.clone()).unwrap();
            let d = effective_degree(&coeffs);
            let dense = sampled_max(&coeffs, 10 * default_sample_count(d));
            prop_assert!(dense <= p.certified_sup() * (1.0 + 1e-14));
            prop_assert!(p.certified_sup() <= coeffs.iter().map(|c| c.norm()).sum::<f64>());
            let n = default_sample_count(d);
            prop_assert!(certify_sup_norm(&coeffs, n).unwrap() >= dense * (1.0 - 1e-14));
        }
    }

    proptest! {
        #[test]
        fn certificate_is_tight(coeffs in coeff_strategy()) {
            let d = effective_degree(&coeffs).max(1);
            let n = 64 * d;
            let dense = sampled_max(&coeffs, 10 * n);
            let cert = certify_sup_norm(&coeffs, n).unwrap();
            prop_assert!(cert <= dense * first_order_factor(effective_degree(&coeffs), n).unwrap() * (1.0 + 1e-14));
            prop_assert!(cert <= dense * 1.052);
        }

        #[test]
        fn certificate_scales(coeffs in coeff_strategy(), re in -3.0..3.0f64, im in -3.0..3.0f64) {
            let alpha = c(re, im);
            let n = default_sample_count(effective_degree(&coeffs));
            let scaled: Vec<C> = coeffs.iter().map(|x| x * alpha).collect();
            let a = certify_sup_norm(&scaled, n).unwrap();
            let b = alpha.norm() * certify_sup_norm(&coeffs, n).unwrap();
            prop_assert!((a - b).abs() <= 1e-14 * b.max(1.0));
        }
    }
}
