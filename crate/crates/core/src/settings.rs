//! Numerical settings for differentiation and path integration.

use crate::{Complex, Error, Result};

/// Knobs for the numerical substrate. All overridable; the defaults are
/// sufficient for the 1e-8 end-to-end targets the verification suites use.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvaluationSettings {
    /// Fraction of the distance to the boundary used as the radius of the
    /// differentiation circle around a point; must lie in (0, 1).
    pub derivative_circle_fraction: f64,
    /// Equispaced trapezoid nodes on the differentiation circle.
    pub derivative_nodes: usize,
    /// Gauss-Legendre nodes per panel for path integration.
    pub quadrature_order: usize,
    /// Maximum number of panel-doubling refinements for path integration.
    pub max_subdivisions: u32,
    /// Absolute agreement required between two refinement levels.
    pub abs_tolerance: f64,
}

impl Default for EvaluationSettings {
    fn default() -> Self {
        Self {
            derivative_circle_fraction: 0.5,
            derivative_nodes: 64,
            quadrature_order: 32,
            max_subdivisions: 12,
            abs_tolerance: 1e-12,
        }
    }
}

impl EvaluationSettings {
    pub fn validate(&self) -> Result<()> {
        if !(self.derivative_circle_fraction > 0.0 && self.derivative_circle_fraction < 1.0) {
            return Err(Error::BadSpec(format!(
                "derivative_circle_fraction must lie in (0,1), got {}",
                self.derivative_circle_fraction
            )));
        }
        if self.derivative_nodes == 0 {
            return Err(Error::BadSpec("derivative_nodes must be positive".into()));
        }
        if self.quadrature_order == 0 {
            return Err(Error::BadSpec("quadrature_order must be positive".into()));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::BadSpec("max_subdivisions must be positive".into()));
        }
        if !self.abs_tolerance.is_finite() || self.abs_tolerance <= 0.0 {
            return Err(Error::BadSpec(format!(
                "abs_tolerance must be positive, got {}",
                self.abs_tolerance
            )));
        }
        Ok(())
    }

    /// Radius of the differentiation circle around `z`:
    /// `min(fraction * (1 - |z|), 0.25)`, strictly positive inside the disc.
    pub fn derivative_radius(&self, z: Complex) -> f64 {
        (self.derivative_circle_fraction * (1.0 - z.norm())).min(0.25)
    }
}
