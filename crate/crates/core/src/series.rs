//! Truncated power series arithmetic.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub(crate) fn zeros(n: usize) -> Vec<Complex64> {
    vec![Complex64::new(0.0, 0.0); n]
}

/// Coefficients of `a·b` up to (not including) `z^n`.
pub fn mul(a: &[Complex64], b: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut out = zeros(n);
    for (i, &x) in a.iter().enumerate().take(n) {
        if x.norm() == 0.0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(n - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Coefficients of `num / den` up to `z^n`; needs `den[0] != 0`.
pub fn div(num: &[Complex64], den: &[Complex64], n: usize) -> Result<Vec<Complex64>> {
    let d0 = den.first().copied().unwrap_or_default();
    if d0.norm() == 0.0 {
        return Err(Error::InvalidInput("series division by a series vanishing at 0".into()));
    }
    let mut q = zeros(n);
    for k in 0..n {
        let mut acc = num.get(k).copied().unwrap_or_default();
        for j in 1..=k.min(den.len().saturating_sub(1)) {
            acc -= den[j] * q[k - j];
        }
        q[k] = acc / d0;
    }
    Ok(q)
}
