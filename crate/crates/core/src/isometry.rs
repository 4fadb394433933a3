//! Surjective isometries of the Zygmund spaces and hermitian diagonals.
//!
//! On the subspace vanishing to second order at the origin the isometries
//! are the integral operators
//! `Tf(z) = e^{iα} ∫_0^z [f'(σ(ξ)) - f'(σ(0))] dξ`
//! with `σ` a disc automorphism; on the full little space two extra phases
//! act on the `f(0)` and `f'(0)z` components. Hermitian operators are the
//! diagonals `a1 f(0) + a2 f'(0) z + a3 f`, whose scaled exponentials land
//! back in the isometry family.

use crate::analytic::AnalyticFunction;
use crate::moebius::{self, DiscAutomorphism};
use crate::rng::SplitMix64;
use crate::zygmund::{self, SpaceVariant};
use crate::{Complex, EvaluationSettings, Result};
use std::f64::consts::TAU;

fn canonical_angle(a: f64) -> f64 {
    a.rem_euclid(TAU)
}

/// `Tf(z) = e^{iα} ∫_0^z [f'(σ(ξ)) - f'(σ(0))] dξ` on the subspace with
/// `f(0) = f'(0) = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanonicalIsometry {
    /// Phase, stored canonically in `[0, 2π)`.
    pub alpha: f64,
    pub sigma: DiscAutomorphism,
}

impl CanonicalIsometry {
    pub fn new(alpha: f64, sigma: DiscAutomorphism) -> Self {
        Self {
            alpha: canonical_angle(alpha),
            sigma,
        }
    }

    pub fn identity() -> Self {
        Self::new(0.0, DiscAutomorphism::identity())
    }

    pub fn is_identity(&self) -> bool {
        (self.alpha.min(TAU - self.alpha)).abs() <= 1e-12 && self.sigma.is_identity()
    }

    /// Seeded sample with the automorphism center bounded by `a_max`.
    pub fn sample(rng: &mut SplitMix64, a_max: f64) -> Self {
        let sigma = DiscAutomorphism::sample(rng, a_max);
        Self::new(rng.next_angle(), sigma)
    }

    /// Applies the operator, checking membership first. The image is a lazy
    /// function whose evaluation integrates `f'(σ(ξ)) - f'(σ(0))` by
    /// adaptive quadrature and whose derivatives use the differentiated
    /// closed form.
    pub fn apply(
        &self,
        f: &AnalyticFunction,
        settings: &EvaluationSettings,
    ) -> Result<AnalyticFunction> {
        zygmund::require_membership(f, SpaceVariant::Z0I01, settings)?;
        Ok(AnalyticFunction::integral_isometry(
            self.alpha,
            self.sigma,
            f.clone(),
            *settings,
        ))
    }

    /// `(Tf)''(z) = e^{iα} σ'(z) f''(σ(z))` without building the image
    /// function; the route the seminorm maximizer relies on.
    pub fn second_derivative_direct(
        &self,
        f: &AnalyticFunction,
        z: Complex,
        settings: &EvaluationSettings,
    ) -> Result<Complex> {
        let w = self.sigma.eval(z)?;
        Ok(Complex::from_polar(1.0, self.alpha) * self.sigma.derivative(z)? * f.derivative(w, 2, settings)?)
    }

    /// Inverse operator `{-α, σ^{-1}}`.
    pub fn inverse(&self) -> Self {
        Self::new(-self.alpha, self.sigma.inverse())
    }

    /// Transport of an extreme point under the adjoint: returns the pair
    /// `(phase, w)` with `w = σ(z)` and `phase = θ + α + arg σ'(z)`, so that
    /// `(1-|z|²) e^{iθ} (Tf)''(z) = e^{i·phase} (1-|w|²) f''(w)` for every
    /// `f` in the domain.
    pub fn adjoint_on_extreme(&self, theta: f64, z: Complex) -> Result<(f64, Complex)> {
        let w = self.sigma.eval(z)?;
        let phase = canonical_angle(theta + self.alpha + self.sigma.derivative(z)?.arg());
        Ok((phase, w))
    }
}

/// `compose(T1, T2)` applies `T2` first: phases add and the automorphisms
/// compose as `σ2 ∘ σ1`, so the composite's differentiated form matches
/// applying `T1` after `T2`.
pub fn compose_isometries(t1: &CanonicalIsometry, t2: &CanonicalIsometry) -> Result<CanonicalIsometry> {
    Ok(CanonicalIsometry::new(
        t1.alpha + t2.alpha,
        moebius::compose(&t1.sigma, &t2.sigma)?,
    ))
}

/// `Tf(z) = e^{iθ} f(0) + e^{iη} f'(0) z + e^{iα} ∫_0^z [f'(σ(ξ)) - f'(σ(0))] dξ`
/// on the little space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FullIsometry {
    pub theta: f64,
    pub eta: f64,
    pub alpha: f64,
    pub sigma: DiscAutomorphism,
}

impl FullIsometry {
    pub fn new(theta: f64, eta: f64, alpha: f64, sigma: DiscAutomorphism) -> Self {
        Self {
            theta: canonical_angle(theta),
            eta: canonical_angle(eta),
            alpha: canonical_angle(alpha),
            sigma,
        }
    }

    pub fn sample(rng: &mut SplitMix64, a_max: f64) -> Self {
        let sigma = DiscAutomorphism::sample(rng, a_max);
        Self::new(rng.next_angle(), rng.next_angle(), rng.next_angle(), sigma)
    }

    /// Applies the operator; the three norm components are preserved
    /// individually since the integral term vanishes to second order at 0.
    pub fn apply(
        &self,
        f: &AnalyticFunction,
        settings: &EvaluationSettings,
    ) -> Result<AnalyticFunction> {
        zygmund::require_membership(f, SpaceVariant::Z0, settings)?;
        let origin = Complex::new(0.0, 0.0);
        let value = f.eval(origin)?;
        let slope = f.derivative(origin, 1, settings)?;
        let integral_part =
            AnalyticFunction::integral_isometry(self.alpha, self.sigma, f.clone(), *settings);
        Ok(AnalyticFunction::combination(
            vec![
                (
                    Complex::from_polar(1.0, self.theta) * value,
                    AnalyticFunction::constant_one(),
                ),
                (
                    Complex::from_polar(1.0, self.eta) * slope,
                    AnalyticFunction::identity_map(),
                ),
                (Complex::new(1.0, 0.0), integral_part),
            ],
            format!("T[{}]", f.label()),
        ))
    }

    /// `(Tf)''` comes from the integral term alone.
    pub fn second_derivative_direct(
        &self,
        f: &AnalyticFunction,
        z: Complex,
        settings: &EvaluationSettings,
    ) -> Result<Complex> {
        CanonicalIsometry::new(self.alpha, self.sigma).second_derivative_direct(f, z, settings)
    }
}

/// `Sf = a1 f(0) + a2 f'(0) z + a3 f` on the little space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermitianDiagonal {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
}

impl HermitianDiagonal {
    pub fn apply(
        &self,
        f: &AnalyticFunction,
        settings: &EvaluationSettings,
    ) -> Result<AnalyticFunction> {
        zygmund::require_membership(f, SpaceVariant::Z0, settings)?;
        let origin = Complex::new(0.0, 0.0);
        let value = f.eval(origin)?;
        let slope = f.derivative(origin, 1, settings)?;
        Ok(AnalyticFunction::combination(
            vec![
                (
                    Complex::new(self.a1, 0.0) * value,
                    AnalyticFunction::constant_one(),
                ),
                (
                    Complex::new(self.a2, 0.0) * slope,
                    AnalyticFunction::identity_map(),
                ),
                (Complex::new(self.a3, 0.0), f.clone()),
            ],
            format!("S[{}]", f.label()),
        ))
    }

    /// `e^{itS}` acts diagonally on the decomposition
    /// `f = f(0)·1 + f'(0)·z + g`: the eigenvalues are `a1 + a3`, `a2 + a3`
    /// and `a3`, so the exponential is the isometry
    /// `{θ = t(a1+a3), η = t(a2+a3), α = t·a3, σ = id}`.
    pub fn exponential(&self, t: f64) -> FullIsometry {
        FullIsometry::new(
            t * (self.a1 + self.a3),
            t * (self.a2 + self.a3),
            t * self.a3,
            DiscAutomorphism::identity(),
        )
    }
}

/// Either isometry form, for the verification entry point.
#[derive(Debug, Clone, Copy)]
pub enum IsometryOperator {
    Canonical(CanonicalIsometry),
    Full(FullIsometry),
}

impl IsometryOperator {
    pub fn apply(
        &self,
        f: &AnalyticFunction,
        settings: &EvaluationSettings,
    ) -> Result<AnalyticFunction> {
        match self {
            IsometryOperator::Canonical(t) => t.apply(f, settings),
            IsometryOperator::Full(t) => t.apply(f, settings),
        }
    }
}

/// One row of the norm-preservation table.
#[derive(Debug, Clone)]
pub struct VerifyRow {
    pub label: String,
    pub norm_input: f64,
    pub norm_output: f64,
    pub relative_deviation: f64,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub max_relative_deviation: f64,
    pub rows: Vec<VerifyRow>,
}

/// Measures `| ‖Tf‖ - ‖f‖ | / ‖f‖` over the suite and reports the maximum.
pub fn verify_isometry(
    operator: &IsometryOperator,
    suite: &[AnalyticFunction],
    settings: &EvaluationSettings,
) -> Result<VerifyReport> {
    let mut rows = Vec::with_capacity(suite.len());
    let mut max_relative_deviation: f64 = 0.0;
    for f in suite {
        let norm_input = zygmund::zygmund_norm(f, settings)?.total;
        let image = operator.apply(f, settings)?;
        let norm_output = zygmund::zygmund_norm(&image, settings)?.total;
        let relative_deviation = (norm_output - norm_input).abs() / norm_input.max(f64::MIN_POSITIVE);
        max_relative_deviation = max_relative_deviation.max(relative_deviation);
        rows.push(VerifyRow {
            label: f.label().to_string(),
            norm_input,
            norm_output,
            relative_deviation,
        });
    }
    Ok(VerifyReport {
        max_relative_deviation,
        rows,
    })
}
