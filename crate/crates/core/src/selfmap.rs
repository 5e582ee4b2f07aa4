//! Analytic self-maps of the disk and the factorization `φ = λ_a ∘ ψ`
//! with `a = φ(0)` and `ψ(0) = 0`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::circle::{DiskPoint, MobiusMap, CLOSED_DISK_SLACK};
use crate::error::{Error, Result};
use crate::poly;
use crate::series;

/// Maps whose boundary sup reaches `1 − BOUNDARY_CONTACT` touch the circle.
pub const BOUNDARY_CONTACT: f64 = 1e-15;

#[derive(Debug, Clone, PartialEq)]
pub enum SelfMapKind {
    Polynomial(Vec<Complex64>),
    /// `rotation · Π (z − w)/(1 − w̄z)`; `rotation` is an angle.
    Blaschke {
        zeros: Vec<DiskPoint>,
        rotation: f64,
    },
    Mobius(MobiusMap),
    Composed {
        outer: MobiusMap,
        inner: Box<DiskSelfMap>,
    },
}

/// An analytic map of the disk into itself, with a certified bound on
/// its boundary modulus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SelfMapLiteral", into = "SelfMapLiteral")]
pub struct DiskSelfMap {
    kind: SelfMapKind,
    sup_bound: f64,
}

/// JSON form, discriminated by `"kind"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SelfMapLiteral {
    Polynomial {
        coeffs: Vec<Complex64>,
    },
    Blaschke {
        zeros: Vec<Complex64>,
        #[serde(default)]
        rotation: f64,
    },
    Mobius {
        a: Complex64,
    },
    Composed {
        outer: Complex64,
        inner: Box<SelfMapLiteral>,
    },
}

impl TryFrom<SelfMapLiteral> for DiskSelfMap {
    type Error = Error;

    fn try_from(lit: SelfMapLiteral) -> Result<Self> {
        match lit {
            SelfMapLiteral::Polynomial { coeffs } => Self::polynomial(coeffs),
            SelfMapLiteral::Blaschke { zeros, rotation } => Self::blaschke(&zeros, rotation),
            SelfMapLiteral::Mobius { a } => Ok(Self::mobius(DiskPoint::new(a)?)),
            SelfMapLiteral::Composed { outer, inner } => {
                let inner = Self::try_from(*inner)?;
                Ok(Self::composed(MobiusMap::new(DiskPoint::new(outer)?), inner))
            }
        }
    }
}

impl From<DiskSelfMap> for SelfMapLiteral {
    fn from(m: DiskSelfMap) -> Self {
        match m.kind {
            SelfMapKind::Polynomial(coeffs) => SelfMapLiteral::Polynomial { coeffs },
            SelfMapKind::Blaschke { zeros, rotation } => {
                SelfMapLiteral::Blaschke { zeros: zeros.iter().map(|z| z.value()).collect(), rotation }
            }
            SelfMapKind::Mobius(m) => SelfMapLiteral::Mobius { a: m.a().value() },
            SelfMapKind::Composed { outer, inner } => {
                SelfMapLiteral::Composed { outer: outer.a().value(), inner: Box::new((*inner).into()) }
            }
        }
    }
}

impl DiskSelfMap {
    /// A polynomial self-map; rejected unless its certified boundary
    /// sup-norm is at most one.
    pub fn polynomial(coeffs: Vec<Complex64>) -> Result<Self> {
        let p = poly::DiskAlgebraPoly::new(coeffs)?;
        if p.certified_sup() > 1.0 {
            return Err(Error::NotSelfMap(p.certified_sup()));
        }
        Ok(Self { sup_bound: p.certified_sup(), kind: SelfMapKind::Polynomial(p.coeffs().to_vec()) })
    }

    pub fn identity() -> Self {
        Self { kind: SelfMapKind::Polynomial(vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]), sup_bound: 1.0 }
    }

    pub fn blaschke(zeros: &[Complex64], rotation: f64) -> Result<Self> {
        if !rotation.is_finite() {
            return Err(Error::InvalidInput("rotation angle must be finite".into()));
        }
        let zeros = zeros.iter().map(|&z| DiskPoint::new(z)).collect::<Result<Vec<_>>>()?;
        Ok(Self { kind: SelfMapKind::Blaschke { zeros, rotation: rotation.rem_euclid(TAU) }, sup_bound: 1.0 })
    }

    pub fn mobius(a: DiskPoint) -> Self {
        Self { kind: SelfMapKind::Mobius(MobiusMap::new(a)), sup_bound: 1.0 }
    }

    /// `outer ∘ inner`.
    pub fn composed(outer: MobiusMap, inner: DiskSelfMap) -> Self {
        let sup_bound = outer.image_radius(inner.sup_bound);
        Self { kind: SelfMapKind::Composed { outer, inner: Box::new(inner) }, sup_bound }
    }

    pub fn kind(&self) -> &SelfMapKind {
        &self.kind
    }

    pub fn sup_bound(&self) -> f64 {
        self.sup_bound
    }

    pub fn as_mobius(&self) -> Option<MobiusMap> {
        match self.kind {
            SelfMapKind::Mobius(m) => Some(m),
            _ => None,
        }
    }

    /// `Some(n)` when the map is exactly `z ↦ z^n`, `n >= 1`.
    pub fn as_monomial(&self) -> Option<usize> {
        let SelfMapKind::Polynomial(c) = &self.kind else { return None };
        let n = poly::effective_degree(c);
        let only = c.iter().enumerate().all(|(k, v)| k == n || v.norm() == 0.0);
        (n >= 1 && only && c[n] == Complex64::new(1.0, 0.0)).then_some(n)
    }

    /// Non-Möbius maps whose boundary modulus may reach 1.
    pub fn boundary_contact(&self) -> bool {
        self.as_mobius().is_none() && self.sup_bound >= 1.0 - BOUNDARY_CONTACT
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        if z.norm() > 1.0 + CLOSED_DISK_SLACK {
            return Err(Error::OutsideClosedDisk(z.norm()));
        }
        Ok(self.eval_unchecked(z))
    }

    pub(crate) fn eval_unchecked(&self, z: Complex64) -> Complex64 {
        match &self.kind {
            SelfMapKind::Polynomial(c) => poly::horner(c, z),
            SelfMapKind::Blaschke { zeros, rotation } => {
                let one = Complex64::new(1.0, 0.0);
                zeros
                    .iter()
                    .map(|w| {
                        let w = w.value();
                        (z - w) / (one - w.conj() * z)
                    })
                    .fold(Complex64::from_polar(1.0, *rotation), |acc, f| acc * f)
            }
            SelfMapKind::Mobius(m) => m.eval_unchecked(z),
            SelfMapKind::Composed { outer, inner } => {
                let w = inner.eval_unchecked(z);
                outer.eval_unchecked(if w.norm() > 1.0 { w / w.norm() } else { w })
            }
        }
    }

    /// `φ(0)`.
    pub fn at_origin(&self) -> Complex64 {
        self.eval_unchecked(Complex64::new(0.0, 0.0))
    }

    /// Taylor coefficients of the map at the origin, `count` of them.
    pub fn taylor(&self, count: usize) -> Vec<Complex64> {
        match &self.kind {
            SelfMapKind::Polynomial(c) => {
                let mut out = series::zeros(count);
                for (o, v) in out.iter_mut().zip(c) {
                    *o = *v;
                }
                out
            }
            SelfMapKind::Mobius(m) => mobius_taylor(m.a().value(), count),
            SelfMapKind::Blaschke { zeros, rotation } => {
                let mut acc = series::zeros(count);
                if count > 0 {
                    acc[0] = Complex64::from_polar(1.0, *rotation);
                }
                for w in zeros {
                    // (z − w)/(1 − w̄z) = −λ_w(z)
                    let factor: Vec<Complex64> = mobius_taylor(w.value(), count).into_iter().map(|v| -v).collect();
                    acc = series::mul(&acc, &factor, count);
                }
                acc
            }
            SelfMapKind::Composed { outer, inner } => {
                let a = outer.a().value();
                let u = inner.taylor(count);
                let mut num: Vec<Complex64> = u.iter().map(|v| -v).collect();
                let mut den: Vec<Complex64> = u.iter().map(|v| -a.conj() * v).collect();
                if count > 0 {
                    num[0] += a;
                    den[0] += Complex64::new(1.0, 0.0);
                }
                series::div(&num, &den, count).expect("1 − āu(0) is nonzero for |a|, |u(0)| <= 1, |a| < 1")
            }
        }
    }
}

/// Taylor coefficients of `λ_a`: `a`, then `ā^{n−1}(|a|² − 1)`.
fn mobius_taylor(a: Complex64, count: usize) -> Vec<Complex64> {
    let mut out = series::zeros(count);
    if count == 0 {
        return out;
    }
    out[0] = a;
    let mut p = Complex64::new(a.norm_sqr() - 1.0, 0.0);
    for c in out.iter_mut().skip(1) {
        *c = p;
        p *= a.conj();
    }
    out
}

/// `φ = λ_a ∘ ψ` with `a = φ(0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Factorization {
    pub a: DiskPoint,
    pub psi: DiskSelfMap,
}

/// Splits off the Möbius factor: `ψ = λ_a ∘ φ`, kept symbolic.
pub fn schwarz_factorize(phi: &DiskSelfMap) -> Result<Factorization> {
    let a0 = phi.at_origin();
    let a = DiskPoint::new(a0).map_err(|_| Error::Degenerate(a0.norm()))?;
    let psi = DiskSelfMap::composed(MobiusMap::new(a), phi.clone());
    Ok(Factorization { a, psi })
}

/// 16 radii × 16 angles, radii from 0 up to 0.999.
pub fn disk_test_grid() -> Vec<Complex64> {
    let mut pts = Vec::with_capacity(256);
    for i in 0..16 {
        let r = 0.999 * i as f64 / 15.0;
        for j in 0..16 {
            pts.push(Complex64::from_polar(r, TAU * j as f64 / 16.0));
        }
    }
    pts
}

/// Checks of the factorization contract on [`disk_test_grid`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FactorizationCheck {
    /// `max |φ(z) − λ_a(ψ(z))|`
    pub reconstruction_error: f64,
    /// `|ψ(0)|`
    pub psi_at_origin: f64,
    /// `max (|ψ(z)| − |z|)`, positive part
    pub schwarz_excess: f64,
}

impl Factorization {
    pub fn check(&self, phi: &DiskSelfMap) -> FactorizationCheck {
        let lambda = MobiusMap::new(self.a);
        let mut reconstruction_error: f64 = 0.0;
        let mut schwarz_excess: f64 = 0.0;
        for z in disk_test_grid() {
            let psi = self.psi.eval_unchecked(z);
            let rec = lambda.eval_unchecked(psi);
            reconstruction_error = reconstruction_error.max((phi.eval_unchecked(z) - rec).norm());
            schwarz_excess = schwarz_excess.max(psi.norm() - z.norm());
        }
        FactorizationCheck {
            reconstruction_error,
            psi_at_origin: self.psi.at_origin().norm(),
            schwarz_excess: schwarz_excess.max(0.0),
        }
    }
}
