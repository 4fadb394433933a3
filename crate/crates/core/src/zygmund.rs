//! Zygmund-space structure: the norm `|f(0)| + |f'(0)| + sup (1-|z|²)|f''(z)|`,
//! the weighted-modulus embedding, little-space membership, subspace point
//! conditions, extreme-point functionals, and the peaking function.

use crate::analytic::AnalyticFunction;
use crate::simplex;
use crate::{Complex, Error, EvaluationSettings, Result};
use std::f64::consts::TAU;

/// Point tolerance for the subspace conditions `f(0) = 0`, `f'(0) = 0`.
pub const POINT_CONDITION_TOL: f64 = 1e-10;

/// The little Zygmund space and its subspaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpaceVariant {
    /// Little space: weighted second derivative vanishes at the boundary.
    Z0,
    /// Members of `Z0` with `f(0) = 0`.
    Z0I0,
    /// Members of `Z0` with `f'(0) = 0`.
    Z0I1,
    /// Members of `Z0` with `f(0) = f'(0) = 0`.
    Z0I01,
}

/// `Φf(z) = (1 - |z|²) f''(z)`, the embedding into functions vanishing at
/// the boundary.
pub fn phi_embed(
    f: &AnalyticFunction,
    z: Complex,
    settings: &EvaluationSettings,
) -> Result<Complex> {
    let second = f.derivative(z, 2, settings)?;
    Ok((1.0 - z.norm_sqr()) * second)
}

/// Polar-grid plus simplex-refinement schedule for the seminorm maximizer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeminormGrid {
    /// Radii `r_j = 1 - (1 - r_max)^{j/(n-1)}`, geometrically clustered
    /// toward `r_max`.
    pub n_radii: usize,
    /// Equispaced angles.
    pub n_angles: usize,
    pub r_max: f64,
    /// Simplex terminates when its diameter drops below this.
    pub refine_tolerance: f64,
    pub max_refine_iterations: usize,
}

impl Default for SeminormGrid {
    fn default() -> Self {
        Self {
            n_radii: 64,
            n_angles: 256,
            r_max: 0.999,
            refine_tolerance: 1e-10,
            max_refine_iterations: 2000,
        }
    }
}

impl SeminormGrid {
    pub fn validate(&self) -> Result<()> {
        if self.n_radii < 2 || self.n_angles < 1 {
            return Err(Error::BadSpec(
                "seminorm grid needs at least 2 radii and 1 angle".into(),
            ));
        }
        if !(self.r_max > 0.0 && self.r_max < 1.0) {
            return Err(Error::BadSpec(format!(
                "r_max must lie in (0,1), got {}",
                self.r_max
            )));
        }
        if !self.refine_tolerance.is_finite() || self.refine_tolerance <= 0.0 {
            return Err(Error::BadSpec("refine_tolerance must be positive".into()));
        }
        Ok(())
    }

    pub fn radius(&self, j: usize) -> f64 {
        1.0 - (1.0 - self.r_max).powf(j as f64 / (self.n_radii - 1) as f64)
    }

    pub fn angle(&self, i: usize) -> f64 {
        TAU * i as f64 / self.n_angles as f64
    }
}

/// Outcome of the two-stage maximization of `|Φf|`.
#[derive(Debug, Clone, Copy)]
pub struct WeightedSup {
    pub value: f64,
    pub argmax: Complex,
    /// Best value seen on the stage-1 grid, before refinement.
    pub grid_value: f64,
    pub refine_iterations: usize,
}

/// Two-stage supremum of `|Φf|` over the disc: polar grid scan with the
/// deterministic tie-break (largest value, then smallest `|z|`, then smallest
/// `arg z`), followed by simplex descent on `-|Φf|` constrained to
/// `|z| <= r_max`.
pub fn weighted_sup(
    f: &AnalyticFunction,
    settings: &EvaluationSettings,
    grid: &SeminormGrid,
) -> Result<WeightedSup> {
    grid.validate()?;
    let mut best_value = f64::NEG_INFINITY;
    let mut best_point = Complex::new(0.0, 0.0);
    for j in 0..grid.n_radii {
        let r = grid.radius(j);
        for i in 0..grid.n_angles {
            let z = Complex::from_polar(r, grid.angle(i));
            let value = phi_embed(f, z, settings)?.norm();
            if better_candidate(value, z, best_value, best_point) {
                best_value = value;
                best_point = z;
            }
        }
    }

    let r_max = grid.r_max;
    let project = move |(x, y): (f64, f64)| {
        let r = (x * x + y * y).sqrt();
        if r > r_max {
            (x * r_max / r, y * r_max / r)
        } else {
            (x, y)
        }
    };
    let objective = |x: f64, y: f64| {
        let z = Complex::new(x, y);
        match phi_embed(f, z, settings) {
            Ok(v) => -v.norm(),
            Err(_) => f64::INFINITY,
        }
    };
    let ((x, y), neg_value, iterations) = simplex::minimize_2d(
        objective,
        project,
        (best_point.re, best_point.im),
        0.01,
        grid.refine_tolerance,
        grid.max_refine_iterations,
    );
    let refined = -neg_value;
    let (value, argmax) = if refined > best_value {
        (refined, Complex::new(x, y))
    } else {
        (best_value, best_point)
    };
    Ok(WeightedSup {
        value,
        argmax,
        grid_value: best_value,
        refine_iterations: iterations,
    })
}

fn better_candidate(value: f64, z: Complex, best_value: f64, best_point: Complex) -> bool {
    if value != best_value {
        return value > best_value;
    }
    let (rz, rb) = (z.norm(), best_point.norm());
    if rz != rb {
        return rz < rb;
    }
    normalized_arg(z) < normalized_arg(best_point)
}

fn normalized_arg(z: Complex) -> f64 {
    let arg = z.arg();
    if arg < 0.0 {
        arg + TAU
    } else {
        arg
    }
}

/// Grid counts and refinement effort recorded alongside a norm value.
#[derive(Debug, Clone, Copy)]
pub struct GridMeta {
    pub n_radii: usize,
    pub n_angles: usize,
    pub refine_iterations: usize,
}

/// The three norm components, the located maximizer of the weighted second
/// derivative, and grid metadata.
#[derive(Debug, Clone, Copy)]
pub struct ZygmundNormReport {
    pub value_at_zero: f64,
    pub deriv_at_zero: f64,
    pub seminorm: f64,
    pub argmax: Complex,
    pub total: f64,
    pub grid_meta: GridMeta,
    /// Set when the simplex stage improved on the grid stage by more than
    /// 10%, a sign the grid under-resolved the peak.
    pub grid_too_coarse: bool,
}

/// `‖f‖ = |f(0)| + |f'(0)| + sup (1-|z|²)|f''(z)|` with the default grid.
pub fn zygmund_norm(f: &AnalyticFunction, settings: &EvaluationSettings) -> Result<ZygmundNormReport> {
    zygmund_norm_with(f, settings, &SeminormGrid::default())
}

pub fn zygmund_norm_with(
    f: &AnalyticFunction,
    settings: &EvaluationSettings,
    grid: &SeminormGrid,
) -> Result<ZygmundNormReport> {
    let origin = Complex::new(0.0, 0.0);
    let value_at_zero = f.eval(origin)?.norm();
    let deriv_at_zero = f.derivative(origin, 1, settings)?.norm();
    let sup = weighted_sup(f, settings, grid)?;
    let grid_too_coarse = sup.value > 1.1 * sup.grid_value.max(f64::MIN_POSITIVE);
    Ok(ZygmundNormReport {
        value_at_zero,
        deriv_at_zero,
        seminorm: sup.value,
        argmax: sup.argmax,
        total: value_at_zero + deriv_at_zero + sup.value,
        grid_meta: GridMeta {
            n_radii: grid.n_radii,
            n_angles: grid.n_angles,
            refine_iterations: sup.refine_iterations,
        },
        grid_too_coarse,
    })
}

/// Rows `(r, theta, |Φf|)` over the polar grid, row-major in `r` then
/// `theta`; the plot-ready export format.
pub fn grid_values(
    f: &AnalyticFunction,
    settings: &EvaluationSettings,
    grid: &SeminormGrid,
) -> Result<Vec<(f64, f64, f64)>> {
    grid.validate()?;
    let mut rows = Vec::with_capacity(grid.n_radii * grid.n_angles);
    for j in 0..grid.n_radii {
        let r = grid.radius(j);
        for i in 0..grid.n_angles {
            let theta = grid.angle(i);
            let value = phi_embed(f, Complex::from_polar(r, theta), settings)?.norm();
            rows.push((r, theta, value));
        }
    }
    Ok(rows)
}

/// Boundary decay profile `M(r) = max_θ |Φf(r e^{iθ})|` at the probe radii.
#[derive(Debug, Clone)]
pub struct BoundaryProfile {
    pub samples: Vec<(f64, f64)>,
    pub is_member: bool,
}

const PROBE_RADII: [f64; 4] = [0.9, 0.99, 0.999, 0.9999];

/// Finite-sample witness for `lim_{|z|->1} (1-|z|²)|f''(z)| = 0`: the profile
/// must decay over the last three radii and the final sample must be small
/// relative to the peak (or negligible outright). Four radii cannot prove a
/// limit; treat a positive answer as evidence, not proof.
pub fn little_zygmund_check(
    f: &AnalyticFunction,
    settings: &EvaluationSettings,
) -> Result<BoundaryProfile> {
    let n_angles = SeminormGrid::default().n_angles;
    let mut samples = Vec::with_capacity(PROBE_RADII.len());
    for &r in &PROBE_RADII {
        let mut max_value: f64 = 0.0;
        for i in 0..n_angles {
            let theta = TAU * i as f64 / n_angles as f64;
            let value = phi_embed(f, Complex::from_polar(r, theta), settings)?.norm();
            max_value = max_value.max(value);
        }
        samples.push((r, max_value));
    }
    let peak = samples.iter().map(|&(_, m)| m).fold(0.0f64, f64::max);
    let last = samples[3].1;
    let decreasing = samples[1].1 > samples[2].1 && samples[2].1 > samples[3].1;
    let is_member = (decreasing && last < 1e-2 * peak) || last < 1e-6;
    Ok(BoundaryProfile { samples, is_member })
}

/// Point conditions of the variant (to [`POINT_CONDITION_TOL`]) plus the
/// boundary decay delegated to [`little_zygmund_check`].
pub fn membership_check(
    f: &AnalyticFunction,
    variant: SpaceVariant,
    settings: &EvaluationSettings,
) -> Result<bool> {
    let origin = Complex::new(0.0, 0.0);
    let needs_value = matches!(variant, SpaceVariant::Z0I0 | SpaceVariant::Z0I01);
    let needs_deriv = matches!(variant, SpaceVariant::Z0I1 | SpaceVariant::Z0I01);
    if needs_value && f.eval(origin)?.norm() > POINT_CONDITION_TOL {
        return Ok(false);
    }
    if needs_deriv && f.derivative(origin, 1, settings)?.norm() > POINT_CONDITION_TOL {
        return Ok(false);
    }
    Ok(little_zygmund_check(f, settings)?.is_member)
}

pub(crate) fn require_membership(
    f: &AnalyticFunction,
    variant: SpaceVariant,
    settings: &EvaluationSettings,
) -> Result<()> {
    if membership_check(f, variant, settings)? {
        Ok(())
    } else {
        Err(Error::NotInSpace {
            label: f.label().to_string(),
            variant,
            reason: "point conditions or boundary decay failed".into(),
        })
    }
}

/// Extreme point of the dual unit ball: phases applied to the point
/// evaluations the variant's dual decomposes into. Only the phases the
/// variant uses are meaningful; the `Z0I01` form uses `theta2` alone.
#[derive(Debug, Clone, Copy)]
pub struct ExtremeFunctional {
    pub variant: SpaceVariant,
    pub z0: Complex,
    pub theta0: f64,
    pub theta1: f64,
    pub theta2: f64,
}

/// Applies the functional:
///
/// * `Z0I01`: `e^{iθ2} (1-|z0|²) f''(z0)`
/// * `Z0I0` : `e^{iθ1} f'(0) z0 + e^{iθ2} (1-|z0|²) f''(z0)`
/// * `Z0I1` : `e^{iθ1} f(0) + e^{iθ2} (1-|z0|²) f''(z0)`
/// * `Z0`   : `e^{iθ0} f(0) + e^{iθ1} f'(0) z0 + e^{iθ2} (1-|z0|²) f''(z0)`
pub fn extreme_functional_eval(
    phi: &ExtremeFunctional,
    f: &AnalyticFunction,
    settings: &EvaluationSettings,
) -> Result<Complex> {
    crate::require_in_disc(phi.z0)?;
    require_membership(f, phi.variant, settings)?;
    let origin = Complex::new(0.0, 0.0);
    let weighted = Complex::from_polar(1.0, phi.theta2) * phi_embed(f, phi.z0, settings)?;
    let value = match phi.variant {
        SpaceVariant::Z0I01 => weighted,
        SpaceVariant::Z0I0 => {
            Complex::from_polar(1.0, phi.theta1) * f.derivative(origin, 1, settings)? * phi.z0
                + weighted
        }
        SpaceVariant::Z0I1 => Complex::from_polar(1.0, phi.theta1) * f.eval(origin)? + weighted,
        SpaceVariant::Z0 => {
            Complex::from_polar(1.0, phi.theta0) * f.eval(origin)?
                + Complex::from_polar(1.0, phi.theta1) * f.derivative(origin, 1, settings)? * phi.z0
                + weighted
        }
    };
    Ok(value)
}

/// The function whose weighted second derivative peaks with modulus exactly
/// one at `z0`; see [`AnalyticFunction::peaking`] for the degenerate `z0 = 0`
/// convention.
pub fn peaking_function(z0: Complex) -> Result<AnalyticFunction> {
    AnalyticFunction::peaking(z0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{make_test_function, TestFunctionSpec};
    use crate::rng::SplitMix64;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn s() -> EvaluationSettings {
        EvaluationSettings::default()
    }

    #[test]
    fn embedding_of_half_square() {
        let f = AnalyticFunction::monomial(2);
        assert_abs_diff_eq!(
            phi_embed(&f, c(0.0, 0.0), &s()).unwrap().re,
            1.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            phi_embed(&f, c(0.5, 0.0), &s()).unwrap().re,
            0.75,
            epsilon = 1e-15
        );
    }

    #[test]
    fn embedding_of_peaking_has_unit_modulus_at_peak() {
        let z0 = c(0.5, 0.0);
        let f = peaking_function(z0).unwrap();
        let value = phi_embed(&f, z0, &s()).unwrap();
        assert_abs_diff_eq!(value.norm(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn norm_of_half_square() {
        // seminorm maximizes (1-r²)·1, attained at the origin
        let f = AnalyticFunction::monomial(2);
        let report = zygmund_norm(&f, &s()).unwrap();
        assert_abs_diff_eq!(report.total, 1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(report.seminorm, 1.0, epsilon = 1e-10);
        assert!(report.argmax.norm() < 1e-4);
        assert_eq!(report.value_at_zero, 0.0);
        assert_eq!(report.deriv_at_zero, 0.0);
        assert!(!report.grid_too_coarse);
    }

    #[test]
    fn norm_of_cubic_monomial() {
        // maximize (1-r²) r: calculus gives r = 1/√3, value 2/(3√3)
        let f = AnalyticFunction::monomial(3);
        let report = zygmund_norm(&f, &s()).unwrap();
        let expected = 2.0 / (3.0 * 3.0f64.sqrt());
        assert_abs_diff_eq!(report.seminorm, expected, epsilon = 1e-9);
        assert_abs_diff_eq!(report.argmax.norm(), 1.0 / 3.0f64.sqrt(), epsilon = 1e-6);
    }

    #[test]
    fn norm_of_peaking_function() {
        let z0 = c(0.5, 0.0);
        let f = peaking_function(z0).unwrap();
        let report = zygmund_norm(&f, &s()).unwrap();
        assert_abs_diff_eq!(report.total, 1.0, epsilon = 1e-9);
        assert!((report.argmax - z0).norm() < 1e-4);
    }

    #[test]
    fn seminorm_equals_weighted_sup_same_code_path() {
        let f = make_test_function(TestFunctionSpec::RandomPoly { degree: 5, seed: 77 }).unwrap();
        let grid = SeminormGrid::default();
        let sup = weighted_sup(&f, &s(), &grid).unwrap();
        let report = zygmund_norm_with(&f, &s(), &grid).unwrap();
        assert_eq!(sup.value, report.seminorm);
        assert_eq!(report.total, report.value_at_zero + report.deriv_at_zero + report.seminorm);
        // f vanishes to second order at 0, so the embedding is isometric
        assert_eq!(report.value_at_zero, 0.0);
        assert_eq!(report.deriv_at_zero, 0.0);
        assert_eq!(report.total, sup.value);
    }

    #[test]
    fn polynomials_are_little_zygmund() {
        let f = make_test_function(TestFunctionSpec::RandomPoly { degree: 6, seed: 4 }).unwrap();
        let profile = little_zygmund_check(&f, &s()).unwrap();
        assert!(profile.is_member);
    }

    #[test]
    fn log_kernel_is_not_little_zygmund() {
        // along the positive real axis the weighted modulus is (1+r) -> 2
        let f = AnalyticFunction::log_kernel();
        let profile = little_zygmund_check(&f, &s()).unwrap();
        assert!(!profile.is_member);
        for &(r, m) in &profile.samples {
            assert_abs_diff_eq!(m, 1.0 + r, epsilon = 1e-9);
        }
    }

    #[test]
    fn peaking_near_boundary_is_little_zygmund() {
        let f = peaking_function(c(0.8, 0.0)).unwrap();
        let profile = little_zygmund_check(&f, &s()).unwrap();
        assert!(profile.is_member);
    }

    #[test]
    fn membership_examples() {
        let half_square = AnalyticFunction::monomial(2);
        assert!(membership_check(&half_square, SpaceVariant::Z0I01, &s()).unwrap());

        let ident = AnalyticFunction::identity_map();
        assert!(!membership_check(&ident, SpaceVariant::Z0I01, &s()).unwrap());

        let shifted = AnalyticFunction::polynomial(
            vec![c(1.0, 0.0), c(0.0, 0.0), c(0.5, 0.0)],
            "1 + z^2/2",
        );
        assert!(membership_check(&shifted, SpaceVariant::Z0I1, &s()).unwrap());
        assert!(!membership_check(&shifted, SpaceVariant::Z0I0, &s()).unwrap());
    }

    #[test]
    fn extreme_functional_values() {
        let phi = ExtremeFunctional {
            variant: SpaceVariant::Z0I01,
            z0: c(0.0, 0.0),
            theta0: 0.0,
            theta1: 0.0,
            theta2: 0.0,
        };
        let f = AnalyticFunction::monomial(2);
        let v = extreme_functional_eval(&phi, &f, &s()).unwrap();
        assert_abs_diff_eq!(v.re, 1.0, epsilon = 1e-14);

        let phi = ExtremeFunctional {
            variant: SpaceVariant::Z0,
            z0: c(0.5, 0.0),
            theta0: 0.0,
            theta1: 0.0,
            theta2: 0.0,
        };
        let one = AnalyticFunction::constant_one();
        let v = extreme_functional_eval(&phi, &one, &s()).unwrap();
        assert_abs_diff_eq!(v.re, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-14);

        let phi = ExtremeFunctional {
            variant: SpaceVariant::Z0I01,
            z0: c(0.5, 0.0),
            theta0: 0.0,
            theta1: 0.0,
            theta2: 0.0,
        };
        let peak = peaking_function(c(0.5, 0.0)).unwrap();
        let v = extreme_functional_eval(&phi, &peak, &s()).unwrap();
        assert_abs_diff_eq!(v.norm(), 1.0, epsilon = 1e-13);
    }

    #[test]
    fn functional_rejects_nonmembers() {
        let phi = ExtremeFunctional {
            variant: SpaceVariant::Z0I01,
            z0: c(0.2, 0.0),
            theta0: 0.0,
            theta1: 0.0,
            theta2: 0.0,
        };
        let ident = AnalyticFunction::identity_map();
        assert!(matches!(
            extreme_functional_eval(&phi, &ident, &s()),
            Err(Error::NotInSpace { .. })
        ));
    }

    #[test]
    fn peaking_examples() {
        let f = peaking_function(c(0.5, 0.0)).unwrap();
        assert!(f.eval(c(0.0, 0.0)).unwrap().norm() < 1e-15);
        assert!(f.derivative(c(0.0, 0.0), 1, &s()).unwrap().norm() < 1e-15);
        let report = zygmund_norm(&f, &s()).unwrap();
        assert_abs_diff_eq!(report.total, 1.0, epsilon = 1e-9);

        // |Φf0(0.4)| = 0.75 · 0.84 / 0.64 for the real configuration
        let value = phi_embed(&f, c(0.4, 0.0), &s()).unwrap();
        assert_abs_diff_eq!(value.norm(), 0.984375, epsilon = 1e-13);

        // degenerate convention
        let f0 = peaking_function(c(0.0, 0.0)).unwrap();
        assert_eq!(
            f0.coefficients().unwrap(),
            &[c(0.0, 0.0), c(0.0, 0.0), c(0.5, 0.0)]
        );
    }

    #[test]
    fn peaking_strictness_and_blaschke_identity() {
        let z0 = c(0.5, 0.0);
        let f = peaking_function(z0).unwrap();
        let mut rng = SplitMix64::new(99);
        for _ in 0..500 {
            let z = rng.next_in_disc(0.95);
            if (z - z0).norm() < 1e-3 {
                continue;
            }
            let value = phi_embed(&f, z, &s()).unwrap().norm();
            assert!(value <= 1.0 - 1e-7, "peak not strict at {z}: {value}");
            let blaschke = (z - z0) / (c(1.0, 0.0) - z0.conj() * z);
            assert!((value - (1.0 - blaschke.norm_sqr())).abs() <= 1e-12);
        }
    }

    #[test]
    fn norm_homogeneity_and_triangle() {
        let s = s();
        let mut rng = SplitMix64::new(31);
        for round in 0..5 {
            let f = make_test_function(TestFunctionSpec::RandomPoly {
                degree: 5,
                seed: 100 + round,
            })
            .unwrap();
            let g = make_test_function(TestFunctionSpec::RandomPoly {
                degree: 4,
                seed: 200 + round,
            })
            .unwrap();
            let scale = c(rng.next_f64() * 3.0 - 1.5, rng.next_f64() * 3.0 - 1.5);
            let scaled =
                AnalyticFunction::combination(vec![(scale, f.clone())], "c f");
            let norm_f = zygmund_norm(&f, &s).unwrap().total;
            let norm_g = zygmund_norm(&g, &s).unwrap().total;
            let norm_scaled = zygmund_norm(&scaled, &s).unwrap().total;
            assert!(
                (norm_scaled - scale.norm() * norm_f).abs() <= 1e-8 * norm_f.max(1.0),
                "homogeneity: {} vs {}",
                norm_scaled,
                scale.norm() * norm_f
            );
            let sum = AnalyticFunction::combination(
                vec![(c(1.0, 0.0), f.clone()), (c(1.0, 0.0), g.clone())],
                "f + g",
            );
            let norm_sum = zygmund_norm(&sum, &s).unwrap().total;
            assert!(norm_sum <= norm_f + norm_g + 1e-8);
        }
    }

    #[test]
    fn grid_values_shape_and_endpoints() {
        let f = AnalyticFunction::monomial(2);
        let grid = SeminormGrid {
            n_radii: 2,
            n_angles: 1,
            ..SeminormGrid::default()
        };
        let rows = grid_values(&f, &s(), &grid).unwrap();
        assert_eq!(rows.len(), 2);
        assert_abs_diff_eq!(rows[0].2, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(rows[1].2, 1.0 - 0.999f64 * 0.999, epsilon = 1e-12);
    }

    #[test]
    fn grid_peak_of_peaking_function_sits_at_its_point() {
        let f = peaking_function(c(0.5, 0.0)).unwrap();
        let grid = SeminormGrid {
            n_radii: 32,
            n_angles: 64,
            ..SeminormGrid::default()
        };
        let rows = grid_values(&f, &s(), &grid).unwrap();
        let &(r, theta, value) = rows
            .iter()
            .max_by(|a, b| a.2.partial_cmp(&b.2).unwrap())
            .unwrap();
        assert!(value > 0.99, "grid max {value}");
        assert!((r - 0.5).abs() < 0.08, "peak radius {r}");
        assert!(theta.min(TAU - theta) < 0.11, "peak angle {theta}");
    }

    #[test]
    fn embedding_is_isometric_on_vanishing_family() {
        // on functions with f(0) = f'(0) = 0 the sup of |Φf| is the norm
        let s = s();
        let grid = SeminormGrid::default();
        let mut family = vec![
            AnalyticFunction::monomial(2),
            AnalyticFunction::monomial(5),
            peaking_function(c(0.3, 0.0)).unwrap(),
            peaking_function(c(0.0, 0.7)).unwrap(),
        ];
        for seed in [41, 42] {
            family.push(
                make_test_function(TestFunctionSpec::RandomPoly { degree: 5, seed }).unwrap(),
            );
        }
        for f in &family {
            let sup = weighted_sup(f, &s, &grid).unwrap();
            let report = zygmund_norm_with(f, &s, &grid).unwrap();
            assert_eq!(sup.value, report.seminorm, "{}", f.label());
            assert_eq!(sup.value, report.total, "{}", f.label());
        }
    }
}
