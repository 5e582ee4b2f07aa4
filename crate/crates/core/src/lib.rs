//! Cauchy–Stieltjes transforms of atomic measures on the unit circle and
//! numerical checks of the norm bound
//!
//! ```text
//! ‖C_φ‖_K <= (1 + 2|φ(0)|) / (1 − |φ(0)|)
//! ```
//!
//! for composition operators on the space `K` of such transforms.
//!
//! The pieces, bottom up:
//!
//! * [`circle`]: disk and circle points, Möbius involutions, quadrature;
//! * [`measure`]: atomic measures, `K_μ`, Taylor coefficients;
//! * [`poly`]: disk-algebra polynomials with certified sup-norms;
//! * [`selfmap`]: self-maps of the disk and the factorization `φ = λ_a∘ψ`;
//! * [`kernel`]: the kernel operator `P_φ`, closed form and quadrature;
//! * [`norm`]: the dual pairing, norm brackets, bounds and verifiers;
//! * [`fixtures`] and [`cli`]: file formats and the batch front end.

pub mod circle;
#[cfg(feature = "cli")]
pub mod cli;
pub mod error;
pub mod fixtures;
pub mod kernel;
pub mod measure;
pub mod norm;
pub mod poly;
pub mod selfmap;
pub mod series;
pub mod tolerance;

pub use circle::{CirclePoint, DiskPoint, MobiusMap, QuadratureGrid};
pub use error::{Error, Result};
pub use kernel::RadialScheme;
pub use measure::{AtomicMeasure, CauchyTransform};
pub use poly::DiskAlgebraPoly;
pub use selfmap::DiskSelfMap;
pub use tolerance::Tolerances;

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 20240001;

/// Wall-clock timer for reports; reads zero where no clock is available.
pub(crate) struct Stopwatch {
    #[cfg(not(target_arch = "wasm32"))]
    start: std::time::Instant,
}

impl Stopwatch {
    pub(crate) fn start() -> Self {
        Self {
            #[cfg(not(target_arch = "wasm32"))]
            start: std::time::Instant::now(),
        }
    }

    pub(crate) fn elapsed_ms(&self) -> u64 {
        #[cfg(not(target_arch = "wasm32"))]
        {
            self.start.elapsed().as_millis() as u64
        }
        #[cfg(target_arch = "wasm32")]
        {
            0
        }
    }
}
