//! Numerical laboratory for operators on Zygmund spaces of analytic functions
//! on the open unit disc.
//!
//! The crate is organized around the objects the operators act on and the
//! operators themselves:
//!
//! * [`analytic`] — evaluable analytic functions (polynomials, catalog
//!   closed forms, operator-produced functions) with spectral-accuracy
//!   numerical differentiation and adaptive path integration.
//! * [`moebius`] — disc automorphisms in canonical `(λ, a)` form, their
//!   algebra, and fixed-point classification.
//! * [`zygmund`] — the Zygmund norm `|f(0)| + |f'(0)| + sup (1-|z|²)|f''(z)|`,
//!   the weighted-modulus embedding, subspace membership, extreme-point
//!   functionals, and the peaking function.
//! * [`isometry`] — the surjective isometries of the little Zygmund space
//!   and its subspace of functions vanishing to second order at zero,
//!   hermitian diagonal operators, and a norm-preservation verifier.
//! * [`flows`] — one-parameter automorphism groups (trivial, elliptic,
//!   hyperbolic, parabolic), the isometry groups they induce, and their
//!   generators.
//!
//! Everything is plain `f64`/`Complex64` arithmetic: deterministic given
//! identical inputs and settings, immutable after construction, and safe to
//! call from multiple threads.

pub mod analytic;
pub mod differentiate;
pub mod error;
pub mod flows;
pub mod isometry;
pub mod moebius;
pub mod quadrature;
pub mod rng;
pub mod settings;
mod simplex;
pub mod zygmund;

pub use error::{Error, Result};
pub use settings::EvaluationSettings;

/// Complex scalar used throughout: both components finite in accepted inputs.
pub type Complex = num_complex::Complex64;

/// Guard shared by every operation taking a point of the open unit disc.
pub(crate) fn require_in_disc(z: Complex) -> Result<()> {
    if !z.re.is_finite() || !z.im.is_finite() || z.norm() >= 1.0 {
        Err(Error::PointOutsideDisc { z })
    } else {
        Ok(())
    }
}
