//! One-parameter automorphism groups, the isometry groups they induce, and
//! their generators.
//!
//! A nontrivial continuous group of disc automorphisms is elliptic,
//! hyperbolic or parabolic; each family is stored with its defining
//! parameters and evaluated through its Möbius coefficient matrix at time
//! `t`. The induced operator group is
//! `T_t f(z) = e^{iαt} ∫_0^z [f'(σ_t(ξ)) - f'(σ_t(0))] dξ`
//! and the associated generator acts as `Gf = α f - i V f'` with
//! `V(z) = ∂_t σ_t(z)|_{t=0}` the (quadratic) velocity field of the flow.

use crate::analytic::AnalyticFunction;
use crate::isometry::CanonicalIsometry;
use crate::moebius::{DiscAutomorphism, ExtendedPoint};
use crate::zygmund::{self, SpaceVariant};
use crate::{Complex, Error, EvaluationSettings, Result};

const ZERO: Complex = Complex::new(0.0, 0.0);
const ONE: Complex = Complex::new(1.0, 0.0);
const I: Complex = Complex::new(0.0, 1.0);

/// Unimodular parameters must sit on the circle within this tolerance; they
/// are renormalized exactly on construction.
const PARAM_TOL: f64 = 1e-12;

/// One of the automorphism flow families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FlowFamily {
    /// `σ_t = id` for all `t`.
    Trivial,
    /// One interior fixed point `τ`; conjugated rotation with speed `c`.
    Elliptic { c: f64, tau: Complex },
    /// Two boundary fixed points `p != q`; translation speed `phi > 0`.
    Hyperbolic { phi: f64, p: Complex, q: Complex },
    /// One double boundary fixed point `γ`.
    Parabolic { c: f64, gamma: Complex },
}

impl FlowFamily {
    pub fn trivial() -> Self {
        FlowFamily::Trivial
    }

    pub fn elliptic(c: f64, tau: Complex) -> Result<Self> {
        if c == 0.0 || !c.is_finite() {
            return Err(Error::BadSpec("elliptic speed c must be nonzero".into()));
        }
        if tau.norm() >= 1.0 {
            return Err(Error::BadSpec(format!(
                "elliptic fixed point must satisfy |tau| < 1, got {}",
                tau.norm()
            )));
        }
        let family = FlowFamily::Elliptic { c, tau };
        family.validate()?;
        Ok(family)
    }

    pub fn hyperbolic(phi: f64, p: Complex, q: Complex) -> Result<Self> {
        if !phi.is_finite() || phi <= 0.0 {
            return Err(Error::BadSpec("hyperbolic speed phi must be positive".into()));
        }
        let p = unimodular(p, "hyperbolic endpoint p")?;
        let q = unimodular(q, "hyperbolic endpoint q")?;
        if (p - q).norm() <= 1e-9 {
            return Err(Error::BadSpec(
                "hyperbolic endpoints must be distinct".into(),
            ));
        }
        let family = FlowFamily::Hyperbolic { phi, p, q };
        family.validate()?;
        Ok(family)
    }

    pub fn parabolic(c: f64, gamma: Complex) -> Result<Self> {
        if c == 0.0 || !c.is_finite() {
            return Err(Error::BadSpec("parabolic speed c must be nonzero".into()));
        }
        let gamma = unimodular(gamma, "parabolic fixed point gamma")?;
        let family = FlowFamily::Parabolic { c, gamma };
        family.validate()?;
        Ok(family)
    }

    /// Möbius coefficients `(n1, n0, d1, d0)` of
    /// `σ_t(z) = (n1 z + n0) / (d1 z + d0)`.
    fn coefficients(&self, t: f64) -> (Complex, Complex, Complex, Complex) {
        match *self {
            FlowFamily::Trivial => (ONE, ZERO, ZERO, ONE),
            FlowFamily::Elliptic { c, tau } => {
                let rot = Complex::from_polar(1.0, c * t);
                let m = tau.norm_sqr();
                (
                    rot - m,
                    -tau * (rot - 1.0),
                    tau.conj() * (rot - 1.0),
                    ONE - m * rot,
                )
            }
            FlowFamily::Hyperbolic { phi, p, q } => {
                let growth = Complex::new((phi * t).exp(), 0.0);
                (
                    q * growth - p,
                    p * q * (ONE - growth),
                    growth - 1.0,
                    q - p * growth,
                )
            }
            FlowFamily::Parabolic { c, gamma } => {
                let ict = I * (c * t);
                (ONE - ict, ict * gamma, -ict * gamma.conj(), ONE + ict)
            }
        }
    }

    /// `σ_t(z)` for `|z| < 1`.
    pub fn eval(&self, t: f64, z: Complex) -> Result<Complex> {
        crate::require_in_disc(z)?;
        self.eval_extended(t, z)
    }

    /// Formula evaluation without the open-disc guard; the flow formulas are
    /// defined on the closed disc, and boundary fixed points need this.
    pub fn eval_extended(&self, t: f64, z: Complex) -> Result<Complex> {
        let (n1, n0, d1, d0) = self.coefficients(t);
        let den = d1 * z + d0;
        if den.norm() < 1e-14 {
            return Err(Error::NumericalSingularity { z });
        }
        Ok((n1 * z + n0) / den)
    }

    /// Canonicalizes `σ_t` into `(λ, a)` form.
    pub fn to_automorphism(&self, t: f64) -> Result<DiscAutomorphism> {
        let (n1, n0, d1, d0) = self.coefficients(t);
        DiscAutomorphism::from_coefficients(n1, n0, d1, d0).map_err(|e| {
            Error::DegenerateParameters(format!("sample at t = {t} failed to canonicalize: {e}"))
        })
    }

    /// Quadratic coefficients `[v0, v1, v2]` of the velocity field
    /// `V(z) = ∂_t σ_t(z)|_{t=0}`:
    ///
    /// * trivial:    `0`
    /// * elliptic:   `i c (1 - τ̄ z)(z - τ) / (1 - |τ|²)`
    /// * hyperbolic: `φ (z - p)(z - q) / (p - q)`
    /// * parabolic:  `i c γ̄ (z - γ)²`
    pub fn velocity_coefficients(&self) -> [Complex; 3] {
        match *self {
            FlowFamily::Trivial => [ZERO, ZERO, ZERO],
            FlowFamily::Elliptic { c, tau } => {
                let scale = I * c / (1.0 - tau.norm_sqr());
                [
                    scale * (-tau),
                    scale * (1.0 + tau.norm_sqr()),
                    scale * (-tau.conj()),
                ]
            }
            FlowFamily::Hyperbolic { phi, p, q } => {
                let scale = Complex::new(phi, 0.0) / (p - q);
                [scale * p * q, scale * (-(p + q)), scale]
            }
            FlowFamily::Parabolic { c, gamma } => {
                let scale = I * c;
                [scale * gamma, scale * (-2.0), scale * gamma.conj()]
            }
        }
    }

    /// Closed-form velocity field at `z`.
    pub fn velocity(&self, z: Complex) -> Result<Complex> {
        crate::require_in_disc(z)?;
        let [v0, v1, v2] = self.velocity_coefficients();
        Ok(v0 + v1 * z + v2 * z * z)
    }

    /// Central-difference velocity with one Richardson step:
    /// `(4 D(h/2) - D(h)) / 3` for `D(h) = (σ_h(z) - σ_{-h}(z)) / 2h`,
    /// `h = 1e-3`.
    pub fn velocity_fd(&self, z: Complex) -> Result<Complex> {
        crate::require_in_disc(z)?;
        let h = 1e-3;
        let coarse = (self.eval_extended(h, z)? - self.eval_extended(-h, z)?) / (2.0 * h);
        let fine = (self.eval_extended(h / 2.0, z)? - self.eval_extended(-h / 2.0, z)?) / h;
        Ok((4.0 * fine - coarse) / 3.0)
    }

    /// The invariant fixed-point set shared by every member of the family;
    /// empty for the trivial family (everything is fixed).
    pub fn fixed_point_set(&self) -> Vec<ExtendedPoint> {
        match *self {
            FlowFamily::Trivial => Vec::new(),
            FlowFamily::Elliptic { tau, .. } => {
                if tau.norm() == 0.0 {
                    vec![ExtendedPoint::Finite(ZERO), ExtendedPoint::Infinity]
                } else {
                    vec![
                        ExtendedPoint::Finite(tau),
                        ExtendedPoint::Finite(ONE / tau.conj()),
                    ]
                }
            }
            FlowFamily::Hyperbolic { p, q, .. } => {
                vec![ExtendedPoint::Finite(p), ExtendedPoint::Finite(q)]
            }
            FlowFamily::Parabolic { gamma, .. } => vec![ExtendedPoint::Finite(gamma)],
        }
    }

    /// Checks that `σ_0` canonicalizes to the identity and that a few time
    /// samples canonicalize at all.
    pub fn validate(&self) -> Result<()> {
        let at_zero = self.to_automorphism(0.0)?;
        if !at_zero.is_identity() {
            return Err(Error::DegenerateParameters(format!(
                "sigma_0 is not the identity: {at_zero:?}"
            )));
        }
        for t in [0.1, -0.4, 1.0] {
            self.to_automorphism(t)?;
        }
        Ok(())
    }
}

fn unimodular(value: Complex, what: &str) -> Result<Complex> {
    if (value.norm() - 1.0).abs() > PARAM_TOL {
        return Err(Error::BadSpec(format!(
            "{what} must be unimodular, got modulus {}",
            value.norm()
        )));
    }
    Ok(value / value.norm())
}

/// `max |σ_s(σ_t(z)) - σ_{s+t}(z)|` over the supplied grid.
pub fn group_law_check(
    family: &FlowFamily,
    s_values: &[f64],
    t_values: &[f64],
    points: &[Complex],
) -> Result<f64> {
    let mut max_deviation: f64 = 0.0;
    for &s in s_values {
        for &t in t_values {
            for &z in points {
                let staged = family.eval(s, family.eval(t, z)?)?;
                let direct = family.eval(s + t, z)?;
                max_deviation = max_deviation.max((staged - direct).norm());
            }
        }
    }
    Ok(max_deviation)
}

/// Isometry group data: phase rate `α` (the phase at time `t` is `αt`, so
/// phase additivity holds by construction) together with the flow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsometryFlow {
    pub alpha_rate: f64,
    pub family: FlowFamily,
}

/// Closed-form versus finite-difference velocity at one point, with the
/// generator value.
#[derive(Debug, Clone, Copy)]
pub struct GeneratorReport {
    pub field_closed: Complex,
    pub field_fd: Complex,
    pub generator_value: Complex,
    pub discrepancy: f64,
}

/// One failed generator-domain condition.
#[derive(Debug, Clone)]
pub struct DomainViolation {
    pub condition: String,
    pub magnitude: f64,
}

#[derive(Debug, Clone)]
pub struct DomainReport {
    pub in_domain: bool,
    pub violations: Vec<DomainViolation>,
}

/// Norm ratio `‖G m_n‖ / ‖m_n‖` for one probe monomial.
#[derive(Debug, Clone, Copy)]
pub struct ProbeEntry {
    pub degree: u32,
    pub ratio: f64,
    pub in_domain: bool,
}

impl IsometryFlow {
    pub fn new(alpha_rate: f64, family: FlowFamily) -> Self {
        Self { alpha_rate, family }
    }

    /// The group member at time `t`: phase `αt` (mod 2π) with `σ_t`.
    pub fn isometry_at(&self, t: f64) -> Result<CanonicalIsometry> {
        Ok(CanonicalIsometry::new(
            self.alpha_rate * t,
            self.family.to_automorphism(t)?,
        ))
    }

    /// `Gf(z) = α f(z) - i V(z) f'(z)` for `f` in the operator's space.
    pub fn apply_generator(
        &self,
        f: &AnalyticFunction,
        z: Complex,
        settings: &EvaluationSettings,
    ) -> Result<Complex> {
        crate::require_in_disc(z)?;
        zygmund::require_membership(f, SpaceVariant::Z0I01, settings)?;
        let field = self.family.velocity(z)?;
        Ok(self.alpha_rate * f.eval(z)? - I * field * f.derivative(z, 1, settings)?)
    }

    /// `Gf` as a function, without the membership gate (the domain check
    /// needs the raw formula on candidate functions). Polynomial inputs fold
    /// to exact coefficients.
    pub fn generator_image(&self, f: &AnalyticFunction) -> AnalyticFunction {
        AnalyticFunction::generator_image(
            self.alpha_rate,
            self.family.velocity_coefficients(),
            f.clone(),
        )
    }

    /// First-order difference quotient `(e^{iαt} f(σ_t(z)) - f(z)) / (it)`
    /// along the phase-weighted flow orbit; its `t -> 0` limit is
    /// [`IsometryFlow::apply_generator`].
    pub fn generator_quotient(
        &self,
        f: &AnalyticFunction,
        z: Complex,
        t: f64,
    ) -> Result<Complex> {
        crate::require_in_disc(z)?;
        if t == 0.0 {
            return Err(Error::BadSpec("difference quotient needs t != 0".into()));
        }
        let moved = self.family.eval(t, z)?;
        let advanced = Complex::from_polar(1.0, self.alpha_rate * t) * f.eval(moved)?;
        Ok((advanced - f.eval(z)?) / (I * t))
    }

    /// Closed-form/finite-difference comparison at one point.
    pub fn generator_report(
        &self,
        f: &AnalyticFunction,
        z: Complex,
        settings: &EvaluationSettings,
    ) -> Result<GeneratorReport> {
        let field_closed = self.family.velocity(z)?;
        let field_fd = self.family.velocity_fd(z)?;
        let generator_value = self.apply_generator(f, z, settings)?;
        Ok(GeneratorReport {
            field_closed,
            field_fd,
            generator_value,
            discrepancy: (field_closed - field_fd).norm(),
        })
    }

    /// `f` belongs to the generator's domain when `Gf` lands back in the
    /// operator's space: `|Gf(0)|` and `|(Gf)'(0)|` below 1e-10 and the
    /// boundary decay of the little space.
    pub fn domain_check(
        &self,
        f: &AnalyticFunction,
        settings: &EvaluationSettings,
    ) -> Result<DomainReport> {
        let image = self.generator_image(f);
        let mut violations = Vec::new();
        let value = image.eval(ZERO)?.norm();
        if value > 1e-10 {
            violations.push(DomainViolation {
                condition: "value_at_zero".into(),
                magnitude: value,
            });
        }
        let slope = image.derivative(ZERO, 1, settings)?.norm();
        if slope > 1e-10 {
            violations.push(DomainViolation {
                condition: "derivative_at_zero".into(),
                magnitude: slope,
            });
        }
        let profile = zygmund::little_zygmund_check(&image, settings)?;
        if !profile.is_member {
            violations.push(DomainViolation {
                condition: "boundary_decay".into(),
                magnitude: profile.samples.last().map(|&(_, m)| m).unwrap_or(f64::NAN),
            });
        }
        Ok(DomainReport {
            in_domain: violations.is_empty(),
            violations,
        })
    }

    /// Norm ratios `‖G m_n‖ / ‖m_n‖` over the probe degrees. For the trivial
    /// family the ratio is constantly `|α|`; for the nontrivial families the
    /// reported sequence grows with the degree.
    pub fn unboundedness_probe(
        &self,
        degrees: &[u32],
        settings: &EvaluationSettings,
    ) -> Result<Vec<ProbeEntry>> {
        let mut entries = Vec::with_capacity(degrees.len());
        for &n in degrees {
            if n < 2 {
                return Err(Error::BadSpec(format!(
                    "probe degrees must be >= 2, got {n}"
                )));
            }
            let probe = AnalyticFunction::monomial(n);
            let image = self.generator_image(&probe);
            let base = zygmund::zygmund_norm(&probe, settings)?.total;
            let image_norm = zygmund::zygmund_norm(&image, settings)?.total;
            let in_domain = self.domain_check(&probe, settings)?.in_domain;
            entries.push(ProbeEntry {
                degree: n,
                ratio: image_norm / base,
                in_domain,
            });
        }
        Ok(entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moebius::AutomorphismClass;
    use crate::rng::SplitMix64;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, TAU};

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn s() -> EvaluationSettings {
        EvaluationSettings::default()
    }

    fn all_families() -> Vec<FlowFamily> {
        vec![
            FlowFamily::trivial(),
            FlowFamily::elliptic(1.0, c(0.3, 0.2)).unwrap(),
            FlowFamily::hyperbolic(1.0, c(1.0, 0.0), c(-1.0, 0.0)).unwrap(),
            FlowFamily::parabolic(1.0, c(1.0, 0.0)).unwrap(),
        ]
    }

    #[test]
    fn time_zero_is_identity() {
        let mut rng = SplitMix64::new(606);
        for family in all_families() {
            family.validate().unwrap();
            for _ in 0..1000 {
                let z = rng.next_in_disc(0.97);
                let moved = family.eval(0.0, z).unwrap();
                assert!((moved - z).norm() <= 1e-15, "{family:?} at {z}");
            }
        }
    }

    #[test]
    fn centered_elliptic_is_rotation() {
        let family = FlowFamily::elliptic(1.0, ZERO).unwrap();
        let z = c(0.5, -0.2);
        for t in [-1.0, 0.3, 2.0] {
            let got = family.eval(t, z).unwrap();
            let want = Complex::from_polar(1.0, t) * z;
            assert!((got - want).norm() < 1e-15);
        }
        let sigma = family.to_automorphism(FRAC_PI_2).unwrap();
        assert!((sigma.lambda() - c(0.0, 1.0)).norm() < 1e-14);
        assert!(sigma.a().norm() < 1e-15);
    }

    #[test]
    fn parabolic_fixes_gamma() {
        let family = FlowFamily::parabolic(1.0, c(1.0, 0.0)).unwrap();
        for t in [-2.0, 0.5, 3.0] {
            let moved = family.eval_extended(t, c(1.0, 0.0)).unwrap();
            assert!((moved - c(1.0, 0.0)).norm() <= 1e-14, "t = {t}");
        }
    }

    #[test]
    fn hyperbolic_sample_keeps_its_endpoints() {
        let family = FlowFamily::hyperbolic(1.0, c(1.0, 0.0), c(-1.0, 0.0)).unwrap();
        let sigma = family.to_automorphism(0.7).unwrap();
        let report = sigma.fixed_points();
        assert_eq!(report.class, AutomorphismClass::Hyperbolic);
        for point in report.points {
            match point {
                ExtendedPoint::Finite(w) => {
                    assert!((w.im).abs() < 1e-9);
                    assert!((w.re.abs() - 1.0).abs() < 1e-9);
                }
                ExtendedPoint::Infinity => panic!("finite fixed points expected"),
            }
        }
    }

    #[test]
    fn parabolic_sample_is_parabolic() {
        let family = FlowFamily::parabolic(1.0, c(1.0, 0.0)).unwrap();
        let sigma = family.to_automorphism(0.5).unwrap();
        let report = sigma.fixed_points();
        assert_eq!(report.class, AutomorphismClass::Parabolic);
        match report.points[0] {
            ExtendedPoint::Finite(w) => assert!((w - c(1.0, 0.0)).norm() < 1e-6),
            ExtendedPoint::Infinity => panic!("finite double point expected"),
        }
    }

    #[test]
    fn flow_samples_fix_the_family_set() {
        let mut rng = SplitMix64::new(13);
        for family in all_families() {
            for _ in 0..20 {
                let t = 4.0 * rng.next_f64() - 2.0;
                for point in family.fixed_point_set() {
                    if let ExtendedPoint::Finite(w) = point {
                        if w.norm() > 1.0 + 1e-9 {
                            continue; // exterior mirror point of the elliptic pair
                        }
                        let moved = family.eval_extended(t, w).unwrap();
                        assert!(
                            (moved - w).norm() <= 1e-10,
                            "{family:?} t={t} point {w}: moved to {moved}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn group_law_small_grid() {
        let mut rng = SplitMix64::new(404);
        let points: Vec<Complex> = (0..50).map(|_| rng.next_in_disc(0.95)).collect();
        let times = [-1.0, -0.3, 0.2, 0.7];
        assert_eq!(
            group_law_check(&FlowFamily::trivial(), &times, &times, &points).unwrap(),
            0.0
        );
        let rotation = FlowFamily::elliptic(1.0, ZERO).unwrap();
        assert!(group_law_check(&rotation, &times, &times, &points).unwrap() <= 1e-15);
        for family in all_families() {
            let deviation = group_law_check(&family, &times, &times, &points).unwrap();
            assert!(deviation <= 1e-9, "{family:?}: {deviation}");
        }
    }

    #[test]
    fn isometry_at_zero_is_identity() {
        for family in all_families() {
            let flow = IsometryFlow::new(0.8, family);
            assert!(flow.isometry_at(0.0).unwrap().is_identity());
        }
    }

    #[test]
    fn isometries_compose_along_the_flow() {
        use crate::isometry::compose_isometries;
        let flow = IsometryFlow::new(
            0.6,
            FlowFamily::elliptic(1.0, c(0.2, -0.1)).unwrap(),
        );
        let (s_time, t_time) = (0.4, 0.7);
        let staged = compose_isometries(
            &flow.isometry_at(s_time).unwrap(),
            &flow.isometry_at(t_time).unwrap(),
        )
        .unwrap();
        let direct = flow.isometry_at(s_time + t_time).unwrap();
        let f = AnalyticFunction::monomial(3);
        let st = s();
        let mut rng = SplitMix64::new(81);
        for _ in 0..50 {
            let z = rng.next_in_disc(0.9);
            let a = staged.second_derivative_direct(&f, z, &st).unwrap();
            let b = direct.second_derivative_direct(&f, z, &st).unwrap();
            assert!((a - b).norm() <= 1e-10, "at {z}");
        }
    }

    #[test]
    fn phase_additivity_mod_two_pi() {
        let flow = IsometryFlow::new(1.3, FlowFamily::parabolic(1.0, c(0.0, 1.0)).unwrap());
        for (u, v) in [(0.3, 0.5), (2.0, 3.0), (-1.2, 0.7)] {
            let lhs = flow.isometry_at(u).unwrap().alpha + flow.isometry_at(v).unwrap().alpha;
            let rhs = flow.isometry_at(u + v).unwrap().alpha;
            let wrapped = (lhs - rhs).rem_euclid(TAU);
            let distance = wrapped.min(TAU - wrapped);
            assert!(distance <= 1e-12, "u={u} v={v}: {distance}");
        }
    }

    #[test]
    fn strong_continuity_witness() {
        let flow = IsometryFlow::new(
            0.5,
            FlowFamily::hyperbolic(1.0, c(1.0, 0.0), c(-1.0, 0.0)).unwrap(),
        );
        let f = AnalyticFunction::monomial(3);
        let st = s();
        let mut previous = f64::INFINITY;
        for t in [0.1, 0.01, 0.001] {
            let image = flow.isometry_at(t).unwrap().apply(&f, &st).unwrap();
            let difference = AnalyticFunction::combination(
                vec![(ONE, image), (-ONE, f.clone())],
                "T_t f - f",
            );
            let norm = zygmund::zygmund_norm(&difference, &st).unwrap().total;
            assert!(norm < previous, "t = {t}: {norm} !< {previous}");
            previous = norm;
        }
    }

    #[test]
    fn velocity_closed_forms() {
        let trivial = FlowFamily::trivial();
        assert_eq!(trivial.velocity(c(0.3, 0.2)).unwrap(), ZERO);

        // centered elliptic: V(z) = i c z
        let rotation = FlowFamily::elliptic(1.0, ZERO).unwrap();
        let z = c(0.4, -0.3);
        assert!((rotation.velocity(z).unwrap() - I * z).norm() < 1e-15);

        // parabolic: double zero at the fixed point, V(γ) = v0 + v1 γ + v2 γ²
        let parabolic = FlowFamily::parabolic(1.0, c(1.0, 0.0)).unwrap();
        let [v0, v1, v2] = parabolic.velocity_coefficients();
        assert!((v0 + v1 + v2).norm() < 1e-15);
    }

    #[test]
    fn velocity_fd_matches_closed_form() {
        let mut rng = SplitMix64::new(2718);
        for family in all_families() {
            for _ in 0..200 {
                let z = rng.next_in_disc(0.95);
                let closed = family.velocity(z).unwrap();
                let fd = family.velocity_fd(z).unwrap();
                let deviation = (closed - fd).norm() / (1.0 + closed.norm());
                assert!(deviation <= 1e-6, "{family:?} at {z}: {deviation}");
            }
        }
    }

    #[test]
    fn generator_on_trivial_flow_scales() {
        let flow = IsometryFlow::new(2.0, FlowFamily::trivial());
        let f = AnalyticFunction::monomial(2);
        let z = c(0.3, 0.4);
        let got = flow.apply_generator(&f, z, &s()).unwrap();
        assert!((got - 2.0 * f.eval(z).unwrap()).norm() < 1e-15);
    }

    #[test]
    fn generator_on_centered_elliptic() {
        // rate α with V = i c z gives Gf = α z²/2 + c z² on the half square
        let rate = 0.7;
        let flow = IsometryFlow::new(rate, FlowFamily::elliptic(1.0, ZERO).unwrap());
        let f = AnalyticFunction::monomial(2);
        let z = c(0.35, -0.15);
        let got = flow.apply_generator(&f, z, &s()).unwrap();
        let want = rate * z * z / 2.0 + z * z;
        assert!((got - want).norm() < 1e-15);
    }

    #[test]
    fn generator_image_matches_pointwise_formula() {
        let flow = IsometryFlow::new(
            0.4,
            FlowFamily::elliptic(0.9, c(0.25, 0.15)).unwrap(),
        );
        let f = AnalyticFunction::peaking(c(0.3, 0.0)).unwrap();
        let image = flow.generator_image(&f);
        let st = s();
        let mut rng = SplitMix64::new(11);
        for _ in 0..50 {
            let z = rng.next_in_disc(0.9);
            let direct = flow.apply_generator(&f, z, &st).unwrap();
            assert!((image.eval(z).unwrap() - direct).norm() <= 1e-13);
        }
    }

    #[test]
    fn difference_quotient_converges_first_order() {
        let flows = [
            IsometryFlow::new(0.7, FlowFamily::trivial()),
            IsometryFlow::new(0.7, FlowFamily::elliptic(1.0, c(0.3, 0.0)).unwrap()),
            IsometryFlow::new(
                0.7,
                FlowFamily::hyperbolic(1.0, c(1.0, 0.0), c(-1.0, 0.0)).unwrap(),
            ),
            IsometryFlow::new(0.7, FlowFamily::parabolic(1.0, c(1.0, 0.0)).unwrap()),
        ];
        let f = AnalyticFunction::monomial(3);
        let z = c(0.4, 0.0);
        let st = s();
        for flow in flows {
            let target = flow.apply_generator(&f, z, &st).unwrap();
            let mut errors = Vec::new();
            for k in 3..=10 {
                let t = 0.5f64.powi(k);
                let quotient = flow.generator_quotient(&f, z, t).unwrap();
                errors.push((quotient - target).norm());
            }
            for window in errors.windows(2) {
                let ratio = window[0] / window[1];
                assert!(
                    (1.7..=2.3).contains(&ratio),
                    "{:?}: halving ratio {ratio}",
                    flow.family
                );
            }
        }
    }

    #[test]
    fn domain_check_examples() {
        let st = s();
        // trivial flow keeps everything in the domain
        let trivial = IsometryFlow::new(1.5, FlowFamily::trivial());
        let half = AnalyticFunction::monomial(2);
        assert!(trivial.domain_check(&half, &st).unwrap().in_domain);

        // off-center elliptic: f = z² picks up slope |2 c τ / (1-|τ|²)| at 0
        let off_center = IsometryFlow::new(0.0, FlowFamily::elliptic(1.0, c(0.5, 0.0)).unwrap());
        let square = AnalyticFunction::polynomial(vec![ZERO, ZERO, ONE], "z^2");
        let report = off_center.domain_check(&square, &st).unwrap();
        assert!(!report.in_domain);
        let violation = report
            .violations
            .iter()
            .find(|v| v.condition == "derivative_at_zero")
            .expect("slope violation expected");
        assert_abs_diff_eq!(violation.magnitude, 4.0 / 3.0, epsilon = 1e-12);

        // centered elliptic keeps z² in the domain
        let centered = IsometryFlow::new(0.3, FlowFamily::elliptic(1.0, ZERO).unwrap());
        assert!(centered.domain_check(&square, &st).unwrap().in_domain);
    }

    #[test]
    fn unboundedness_probe_examples() {
        let st = s();
        let trivial = IsometryFlow::new(2.0, FlowFamily::trivial());
        let entries = trivial.unboundedness_probe(&[4, 8], &st).unwrap();
        for entry in entries {
            assert_abs_diff_eq!(entry.ratio, 2.0, epsilon = 1e-10);
            assert!(entry.in_domain);
        }

        let rotationlike = IsometryFlow::new(0.0, FlowFamily::elliptic(1.0, ZERO).unwrap());
        let entries = rotationlike.unboundedness_probe(&[4, 8, 16], &st).unwrap();
        let ratios: Vec<f64> = entries.iter().map(|e| e.ratio).collect();
        for (entry, expected) in entries.iter().zip([4.0, 8.0, 16.0]) {
            assert_abs_diff_eq!(entry.ratio, expected, epsilon = 1e-6);
        }
        assert!(ratios.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(FlowFamily::elliptic(0.0, ZERO).is_err());
        assert!(FlowFamily::elliptic(1.0, c(1.0, 0.0)).is_err());
        assert!(FlowFamily::hyperbolic(-1.0, c(1.0, 0.0), c(-1.0, 0.0)).is_err());
        assert!(FlowFamily::hyperbolic(1.0, c(1.0, 0.0), c(1.0, 0.0)).is_err());
        assert!(FlowFamily::hyperbolic(1.0, c(0.5, 0.0), c(-1.0, 0.0)).is_err());
        assert!(FlowFamily::parabolic(1.0, c(0.9, 0.0)).is_err());
    }
}
