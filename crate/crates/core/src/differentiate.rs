//! Numerical differentiation through the Cauchy integral formula.
//!
//! For an analytic integrand the trapezoid rule on a circle is spectrally
//! accurate: with `N` equispaced nodes on the circle of radius `ρ` around
//! `z`, the only surviving aliasing terms decay like `(ρ / R)^N` where `R`
//! is the distance to the nearest singularity. The circle radius
//! `min(fraction * (1 - |z|), 0.25)` keeps every sample inside the disc and
//! the ratio `ρ / R` at most the configured fraction.

use crate::{Complex, Error, EvaluationSettings, Result};
use std::f64::consts::TAU;

/// `k`-th derivative of `f` at `z` via the trapezoid-discretized Cauchy
/// integral, with a node-doubling convergence check.
///
/// The agreement threshold scales with the noise amplification `k! / ρ^k`
/// inherent in the formula, so functions whose point values themselves carry
/// quadrature noise of order `abs_tolerance` do not trip the check.
pub fn cauchy_derivative<F>(
    f: &mut F,
    z: Complex,
    order: u32,
    settings: &EvaluationSettings,
) -> Result<Complex>
where
    F: FnMut(Complex) -> Result<Complex>,
{
    crate::require_in_disc(z)?;
    let radius = settings.derivative_radius(z);
    let coarse = circle_rule(f, z, order, radius, settings.derivative_nodes)?;
    let fine = circle_rule(f, z, order, radius, settings.derivative_nodes * 2)?;
    let amplification = 1.0 + 2.0 * factorial(order) / radius.powi(order as i32);
    let threshold = settings.abs_tolerance * amplification;
    let residual = (fine - coarse).norm();
    if residual > threshold {
        return Err(Error::ConvergenceFailure {
            context: format!("Cauchy derivative of order {order} at {z}"),
            residual,
            tolerance: threshold,
        });
    }
    Ok(fine)
}

fn circle_rule<F>(f: &mut F, z: Complex, order: u32, radius: f64, nodes: usize) -> Result<Complex>
where
    F: FnMut(Complex) -> Result<Complex>,
{
    let mut acc = Complex::new(0.0, 0.0);
    for j in 0..nodes {
        let theta = TAU * j as f64 / nodes as f64;
        let dir = Complex::from_polar(1.0, theta);
        let sample = f(z + radius * dir)?;
        // e^{-ik theta} twists out the k-th Fourier mode.
        acc += sample * Complex::from_polar(1.0, -(order as f64) * theta);
    }
    Ok(acc * factorial(order) / (nodes as f64 * radius.powi(order as i32)))
}

fn factorial(k: u32) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn differentiates_exp_to_machine_precision() {
        let settings = EvaluationSettings::default();
        let z = Complex::new(0.2, -0.3);
        for order in 1..=3 {
            let d = cauchy_derivative(&mut |w: Complex| Ok(w.exp()), z, order, &settings).unwrap();
            assert!((d - z.exp()).norm() < 1e-13, "order {order}");
        }
    }

    #[test]
    fn handles_points_near_boundary() {
        let settings = EvaluationSettings::default();
        let z = Complex::new(0.95, 0.0);
        let d = cauchy_derivative(&mut |w: Complex| Ok(w * w), z, 2, &settings).unwrap();
        assert!((d - Complex::new(2.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn rejects_points_outside_disc() {
        let settings = EvaluationSettings::default();
        let err = cauchy_derivative(
            &mut |w: Complex| Ok(w),
            Complex::new(1.0, 0.0),
            1,
            &settings,
        )
        .unwrap_err();
        assert!(matches!(err, Error::PointOutsideDisc { .. }));
    }

    #[test]
    fn flags_non_convergence_with_too_few_nodes() {
        let settings = EvaluationSettings {
            derivative_nodes: 4,
            ..EvaluationSettings::default()
        };
        // Degree 9 polynomial aliases badly through 4 and 8 nodes.
        let err = cauchy_derivative(
            &mut |w: Complex| Ok(w.powu(9)),
            Complex::new(0.5, 0.0),
            2,
            &settings,
        )
        .unwrap_err();
        assert!(matches!(err, Error::ConvergenceFailure { .. }));
    }
}
