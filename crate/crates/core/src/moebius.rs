//! Disc automorphisms in canonical form and their fixed-point dynamics.
//!
//! Every automorphism of the open unit disc is `σ(z) = λ (z - a) / (1 - ā z)`
//! with `|λ| = 1` and `|a| < 1`; this module keeps that pair as the single
//! representation and renormalizes every composite back into it.

use crate::rng::SplitMix64;
use crate::{Complex, Error, Result};

/// `|λ| - 1` allowed on construction, and the identity-detection threshold.
pub const UNIMODULAR_TOL: f64 = 1e-12;
/// A fixed point counts as "on the circle" within this distance.
pub const ON_CIRCLE_TOL: f64 = 1e-9;
/// Two fixed points count as coincident within this distance.
pub const COINCIDENT_TOL: f64 = 1e-9;
/// Double-root detection happens on the quadratic's discriminant: a true
/// double root computed in f64 splits by ~sqrt(machine epsilon) ≈ 1.5e-8,
/// which the point-separation threshold alone cannot see.
pub const PARABOLIC_DISC_TOL: f64 = 1e-12;

/// Canonical pair `(λ, a)` for `σ(z) = λ (z - a) / (1 - ā z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscAutomorphism {
    lambda: Complex,
    a: Complex,
}

impl DiscAutomorphism {
    /// Builds the automorphism, rejecting `|a| >= 1` and phases that are not
    /// unimodular within [`UNIMODULAR_TOL`]. The stored phase is renormalized
    /// to exact unit modulus so composites do not drift.
    pub fn new(lambda: Complex, a: Complex) -> Result<Self> {
        if !lambda.re.is_finite() || !lambda.im.is_finite() || !a.re.is_finite() || !a.im.is_finite()
        {
            return Err(Error::BadSpec("automorphism parameters must be finite".into()));
        }
        if (lambda.norm() - 1.0).abs() > UNIMODULAR_TOL {
            return Err(Error::BadSpec(format!(
                "|lambda| = {} is not unimodular",
                lambda.norm()
            )));
        }
        if a.norm() >= 1.0 {
            return Err(Error::BadSpec(format!("|a| = {} must be < 1", a.norm())));
        }
        Ok(Self {
            lambda: lambda / lambda.norm(),
            a,
        })
    }

    pub fn identity() -> Self {
        Self {
            lambda: Complex::new(1.0, 0.0),
            a: Complex::new(0.0, 0.0),
        }
    }

    /// Rotation by the given angle about the origin.
    pub fn rotation(angle: f64) -> Self {
        Self {
            lambda: Complex::from_polar(1.0, angle),
            a: Complex::new(0.0, 0.0),
        }
    }

    /// Seeded sample with `|a| <= a_max`; used by the verification suites.
    pub fn sample(rng: &mut SplitMix64, a_max: f64) -> Self {
        Self {
            lambda: rng.next_unimodular(),
            a: rng.next_in_disc(a_max),
        }
    }

    pub fn lambda(&self) -> Complex {
        self.lambda
    }

    pub fn a(&self) -> Complex {
        self.a
    }

    pub fn is_identity(&self) -> bool {
        (self.lambda - Complex::new(1.0, 0.0)).norm() <= UNIMODULAR_TOL
            && self.a.norm() <= UNIMODULAR_TOL
    }

    /// `σ(z) = λ (z - a) / (1 - ā z)`.
    pub fn eval(&self, z: Complex) -> Result<Complex> {
        crate::require_in_disc(z)?;
        Ok(self.lambda * (z - self.a) / (Complex::new(1.0, 0.0) - self.a.conj() * z))
    }

    /// Closed-form derivative `σ'(z) = λ (1 - |a|²) / (1 - ā z)²`.
    pub fn derivative(&self, z: Complex) -> Result<Complex> {
        crate::require_in_disc(z)?;
        let den = Complex::new(1.0, 0.0) - self.a.conj() * z;
        Ok(self.lambda * (1.0 - self.a.norm_sqr()) / (den * den))
    }

    /// Closed-form second derivative `σ''(z) = 2 ā λ (1 - |a|²) / (1 - ā z)³`.
    pub fn second_derivative(&self, z: Complex) -> Result<Complex> {
        crate::require_in_disc(z)?;
        let den = Complex::new(1.0, 0.0) - self.a.conj() * z;
        Ok(2.0 * self.a.conj() * self.lambda * (1.0 - self.a.norm_sqr()) / (den * den * den))
    }

    /// Inverse automorphism: `(λ', a') = (conj(λ), -λ a)`.
    pub fn inverse(&self) -> Self {
        Self {
            lambda: self.lambda.conj(),
            a: -self.lambda * self.a,
        }
    }

    /// Canonicalizes the Möbius map `(p z + q) / (r z + s)` into `(λ, a)`
    /// form: `a` is the preimage of zero and `λ = M'(a) (1 - |a|²)`.
    pub fn from_coefficients(p: Complex, q: Complex, r: Complex, s: Complex) -> Result<Self> {
        if p.norm() == 0.0 {
            return Err(Error::DegenerateComposite { a_modulus: f64::INFINITY });
        }
        let a = -q / p;
        if a.norm() >= 1.0 {
            return Err(Error::DegenerateComposite { a_modulus: a.norm() });
        }
        let det = p * s - q * r;
        let den = r * a + s;
        let deriv_at_a = det / (den * den);
        let lambda = deriv_at_a * (1.0 - a.norm_sqr());
        Self::new(lambda, a).map_err(|_| Error::DegenerateComposite { a_modulus: a.norm() })
    }

    /// Matrix of the map acting on column vectors `(z, 1)`.
    fn matrix(&self) -> [Complex; 4] {
        [
            self.lambda,
            -self.lambda * self.a,
            -self.a.conj(),
            Complex::new(1.0, 0.0),
        ]
    }

    /// Fixed points on the extended plane and the dynamical class.
    ///
    /// Solves `ā z² + (λ - 1) z - λ a = 0`; when `a = 0` the map is affine
    /// and fixes the origin together with the point at infinity.
    pub fn fixed_points(&self) -> FixedPointReport {
        if self.is_identity() {
            return FixedPointReport {
                points: Vec::new(),
                class: AutomorphismClass::Identity,
            };
        }
        if self.a.norm() <= UNIMODULAR_TOL {
            return FixedPointReport {
                points: vec![
                    ExtendedPoint::Finite(Complex::new(0.0, 0.0)),
                    ExtendedPoint::Infinity,
                ],
                class: AutomorphismClass::Elliptic,
            };
        }
        let qa = self.a.conj();
        let qb = self.lambda - Complex::new(1.0, 0.0);
        let qc = -self.lambda * self.a;
        let discriminant = qb * qb - 4.0 * qa * qc;
        if discriminant.norm() <= PARABOLIC_DISC_TOL {
            // vertex of the quadratic, accurate to machine precision
            let point = -qb / (2.0 * qa);
            return FixedPointReport {
                points: vec![ExtendedPoint::Finite(point)],
                class: AutomorphismClass::Parabolic,
            };
        }
        let disc = discriminant.sqrt();
        let z1 = (-qb + disc) / (2.0 * qa);
        let z2 = (-qb - disc) / (2.0 * qa);
        if (z1 - z2).norm() <= COINCIDENT_TOL {
            let point = 0.5 * (z1 + z2);
            return FixedPointReport {
                points: vec![ExtendedPoint::Finite(point)],
                class: AutomorphismClass::Parabolic,
            };
        }
        // |z1 z2| = |a| / |ā| = 1: the roots are either both on the circle
        // or reflections of each other through it.
        if (z1.norm() - 1.0).abs() <= ON_CIRCLE_TOL {
            FixedPointReport {
                points: vec![ExtendedPoint::Finite(z1), ExtendedPoint::Finite(z2)],
                class: AutomorphismClass::Hyperbolic,
            }
        } else {
            let (interior, exterior) = if z1.norm() < 1.0 { (z1, z2) } else { (z2, z1) };
            FixedPointReport {
                points: vec![ExtendedPoint::Finite(interior), ExtendedPoint::Finite(exterior)],
                class: AutomorphismClass::Elliptic,
            }
        }
    }
}

/// `second ∘ first`, renormalized into canonical form by 2x2 matrix
/// multiplication followed by re-extraction of `(λ, a)`.
pub fn compose(first: &DiscAutomorphism, second: &DiscAutomorphism) -> Result<DiscAutomorphism> {
    let [a1, b1, c1, d1] = first.matrix();
    let [a2, b2, c2, d2] = second.matrix();
    let p = a2 * a1 + b2 * c1;
    let q = a2 * b1 + b2 * d1;
    let r = c2 * a1 + d2 * c1;
    let s = c2 * b1 + d2 * d1;
    DiscAutomorphism::from_coefficients(p, q, r, s)
}

/// Location on the extended complex plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtendedPoint {
    Finite(Complex),
    Infinity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AutomorphismClass {
    Identity,
    Elliptic,
    Hyperbolic,
    Parabolic,
}

/// Fixed points plus classification; elliptic lists the interior point first.
#[derive(Debug, Clone, PartialEq)]
pub struct FixedPointReport {
    pub points: Vec<ExtendedPoint>,
    pub class: AutomorphismClass,
}
