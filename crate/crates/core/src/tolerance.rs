use serde::Serialize;

use crate::error::{Error, Result};

/// Tolerances used by the verifiers. Optimization-dependent checks are
/// one-sided: a lower bound may sit below its ceiling by any amount.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Exact analytic identities.
    pub identity: f64,
    /// Quadrature against closed forms.
    pub quadrature: f64,
    /// Slack for `lower <= bound` in the verifiers.
    pub bound: f64,
    /// Slack for `lower <= upper` in norm brackets.
    pub sandwich: f64,
    /// Series/quadrature agreement inside the radial-limit computation.
    pub radial: f64,
    /// `|ψ(0)|` accepted as zero by `verify_lemma1`.
    pub origin: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { identity: 1e-12, quadrature: 1e-10, bound: 1e-8, sandwich: 1e-9, radial: 1e-9, origin: 1e-12 }
    }
}

impl Tolerances {
    pub const NAMES: [&'static str; 6] = ["identity", "quadrature", "bound", "sandwich", "radial", "origin"];

    /// Applies a `name=value` override.
    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        if !(value.is_finite() && value >= 0.0) {
            return Err(Error::InvalidInput(format!("tolerance {name} must be a nonnegative number")));
        }
        let slot = match name {
            "identity" => &mut self.identity,
            "quadrature" => &mut self.quadrature,
            "bound" => &mut self.bound,
            "sandwich" => &mut self.sandwich,
            "radial" => &mut self.radial,
            "origin" => &mut self.origin,
            _ => {
                return Err(Error::InvalidInput(format!(
                    "unknown tolerance '{name}' (expected one of {})",
                    Self::NAMES.join(", ")
                )))
            }
        };
        *slot = value;
        Ok(())
    }
}
