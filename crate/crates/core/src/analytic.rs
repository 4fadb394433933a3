//! Evaluable analytic functions on the open unit disc.
//!
//! A function is a polynomial, a catalog closed form, or the lazy image of a
//! function under one of the operators built elsewhere in the crate. Every
//! kind supports point evaluation; derivatives prefer exact coefficient
//! arithmetic or catalog closed forms and fall back to the Cauchy integral
//! route only when no closed expression is available. The numerical route
//! stays callable on its own as a cross-check.

use crate::differentiate::cauchy_derivative;
use crate::moebius::DiscAutomorphism;
use crate::rng::SplitMix64;
use crate::{quadrature, Complex, Error, EvaluationSettings, Result};

const ZERO: Complex = Complex::new(0.0, 0.0);
const ONE: Complex = Complex::new(1.0, 0.0);
const I: Complex = Complex::new(0.0, 1.0);

/// An analytic function on the open unit disc together with a display label.
#[derive(Debug, Clone)]
pub struct AnalyticFunction {
    kind: Kind,
    label: String,
}

#[derive(Debug, Clone)]
enum Kind {
    /// Taylor coefficients at 0, lowest degree first; trailing zeros allowed.
    Polynomial(Vec<Complex>),
    /// The norm-one peak at `z0`:
    /// `f(z) = (1-|z0|²) (-1/z̄0) [z + (1/z̄0) Log(1 - z̄0 z)]`, `z0 != 0`.
    Peaking { z0: Complex },
    /// `f(z) = (1-z) Log(1-z) + z`, whose second derivative `1/(1-z)` keeps
    /// the weighted modulus away from zero at the boundary.
    LogKernel,
    /// `e^{i phase} ∫_0^z [f'(σ(ξ)) - f'(σ(0))] dξ` with the quadrature
    /// settings captured at application time.
    IntegralIsometry {
        phase: f64,
        sigma: DiscAutomorphism,
        inner: Box<AnalyticFunction>,
        settings: EvaluationSettings,
    },
    /// Finite linear combination `Σ c_k f_k`.
    Combination(Vec<(Complex, AnalyticFunction)>),
    /// `rate·f(z) - i V(z) f'(z)` with `V` the quadratic polynomial
    /// `v0 + v1 z + v2 z²` (a flow velocity field).
    GeneratorImage {
        rate: f64,
        field: [Complex; 3],
        inner: Box<AnalyticFunction>,
    },
}

/// Specs accepted by [`make_test_function`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TestFunctionSpec {
    /// `m_k(z) = z^k / k!` with `k >= 2`.
    Monomial(u32),
    /// The peaking function at `z0`, `|z0| < 1`.
    Peaking(Complex),
    /// Coefficients for degrees `2..=degree` drawn uniformly from the complex
    /// unit square by a seeded SplitMix64 stream; degrees 0 and 1 are zero.
    RandomPoly { degree: u32, seed: u64 },
}

/// Builds one of the standard probe functions.
pub fn make_test_function(spec: TestFunctionSpec) -> Result<AnalyticFunction> {
    match spec {
        TestFunctionSpec::Monomial(k) => {
            if k < 2 {
                return Err(Error::BadSpec(format!(
                    "monomial degree must be >= 2, got {k}"
                )));
            }
            Ok(AnalyticFunction::monomial(k))
        }
        TestFunctionSpec::Peaking(z0) => AnalyticFunction::peaking(z0),
        TestFunctionSpec::RandomPoly { degree, seed } => {
            if degree < 2 {
                return Err(Error::BadSpec(format!(
                    "random polynomial degree must be >= 2, got {degree}"
                )));
            }
            let mut rng = SplitMix64::new(seed);
            let mut coeffs = vec![ZERO; degree as usize + 1];
            for c in coeffs.iter_mut().skip(2) {
                *c = rng.next_unit_square();
            }
            Ok(AnalyticFunction {
                kind: Kind::Polynomial(coeffs),
                label: format!("random_poly(degree={degree}, seed={seed})"),
            })
        }
    }
}

impl AnalyticFunction {
    pub fn polynomial(coefficients: Vec<Complex>, label: impl Into<String>) -> Self {
        Self {
            kind: Kind::Polynomial(coefficients),
            label: label.into(),
        }
    }

    /// `m_k(z) = z^k / k!`.
    pub fn monomial(k: u32) -> Self {
        let mut coeffs = vec![ZERO; k as usize + 1];
        let k_factorial: f64 = (1..=k).map(|i| i as f64).product();
        coeffs[k as usize] = Complex::new(1.0 / k_factorial, 0.0);
        Self {
            kind: Kind::Polynomial(coeffs),
            label: format!("z^{k}/{k}!"),
        }
    }

    pub fn constant_one() -> Self {
        Self::polynomial(vec![ONE], "1")
    }

    pub fn identity_map() -> Self {
        Self::polynomial(vec![ZERO, ONE], "z")
    }

    /// The peaking function whose weighted second derivative attains modulus
    /// one exactly at `z0`. For `z0 = 0` this degenerates to `z²/2`, whose
    /// weight profile `1-|z|²` peaks at the origin with value one.
    pub fn peaking(z0: Complex) -> Result<Self> {
        if z0.norm() >= 1.0 {
            return Err(Error::BadSpec(format!(
                "peaking point must satisfy |z0| < 1, got |z0| = {}",
                z0.norm()
            )));
        }
        if z0.norm() == 0.0 {
            return Ok(Self {
                kind: Kind::Polynomial(vec![ZERO, ZERO, Complex::new(0.5, 0.0)]),
                label: "peaking(0) = z^2/2".into(),
            });
        }
        Ok(Self {
            kind: Kind::Peaking { z0 },
            label: format!("peaking({z0})"),
        })
    }

    /// Catalog entry with `f''(z) = 1/(1-z)`.
    pub fn log_kernel() -> Self {
        Self {
            kind: Kind::LogKernel,
            label: "(1-z)Log(1-z)+z".into(),
        }
    }

    /// `Σ c_k f_k`; the building block for the extended operators.
    pub fn combination(terms: Vec<(Complex, AnalyticFunction)>, label: impl Into<String>) -> Self {
        Self {
            kind: Kind::Combination(terms),
            label: label.into(),
        }
    }

    /// Lazy image under the canonical integral isometry; constructed by the
    /// operator module.
    pub(crate) fn integral_isometry(
        phase: f64,
        sigma: DiscAutomorphism,
        inner: AnalyticFunction,
        settings: EvaluationSettings,
    ) -> Self {
        let label = format!("T[{}]", inner.label);
        Self {
            kind: Kind::IntegralIsometry {
                phase,
                sigma,
                inner: Box::new(inner),
                settings,
            },
            label,
        }
    }

    /// Lazy image `rate·f - i V f'` with quadratic `V`; constructed by the
    /// flow module. Polynomial inputs are folded to exact coefficients.
    pub(crate) fn generator_image(
        rate: f64,
        field: [Complex; 3],
        inner: AnalyticFunction,
    ) -> Self {
        let label = format!("G[{}]", inner.label);
        if let Kind::Polynomial(coeffs) = &inner.kind {
            let deriv = differentiate_coefficients(coeffs);
            // rate·f - i (v0 + v1 z + v2 z²) f'
            let mut out = vec![ZERO; coeffs.len().max(deriv.len() + 2)];
            for (k, c) in coeffs.iter().enumerate() {
                out[k] += rate * c;
            }
            for (k, d) in deriv.iter().enumerate() {
                out[k] += -I * field[0] * d;
                out[k + 1] += -I * field[1] * d;
                out[k + 2] += -I * field[2] * d;
            }
            return Self {
                kind: Kind::Polynomial(out),
                label,
            };
        }
        Self {
            kind: Kind::GeneratorImage {
                rate,
                field,
                inner: Box::new(inner),
            },
            label,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Taylor coefficients when the function is stored as a polynomial.
    pub fn coefficients(&self) -> Option<&[Complex]> {
        match &self.kind {
            Kind::Polynomial(c) => Some(c),
            _ => None,
        }
    }

    /// Point evaluation; defined and finite for every `|z| < 1`.
    pub fn eval(&self, z: Complex) -> Result<Complex> {
        crate::require_in_disc(z)?;
        match &self.kind {
            Kind::Polynomial(coeffs) => Ok(horner(coeffs, z)),
            Kind::Peaking { z0 } => {
                let z0c = z0.conj();
                let log = (ONE - z0c * z).ln();
                Ok((1.0 - z0.norm_sqr()) * (-1.0 / z0c) * (z + log / z0c))
            }
            Kind::LogKernel => {
                let w = ONE - z;
                if w.norm() < 1e-15 {
                    return Err(Error::EvaluationSingularity {
                        label: self.label.clone(),
                        z,
                    });
                }
                Ok(w * w.ln() + z)
            }
            Kind::IntegralIsometry {
                phase,
                sigma,
                inner,
                settings,
            } => {
                let base = inner.derivative(sigma.eval(ZERO)?, 1, settings)?;
                let mut integrand =
                    |xi: Complex| Ok(inner.derivative(sigma.eval(xi)?, 1, settings)? - base);
                let integral = quadrature::integrate_from_zero(&mut integrand, z, settings)?;
                Ok(Complex::from_polar(1.0, *phase) * integral)
            }
            Kind::Combination(terms) => {
                let mut acc = ZERO;
                for (c, f) in terms {
                    acc += c * f.eval(z)?;
                }
                Ok(acc)
            }
            Kind::GeneratorImage { rate, field, inner } => {
                let f = inner.eval(z)?;
                let fp = inner.derivative(z, 1, &EvaluationSettings::default())?;
                Ok(*rate * f - I * quadratic(field, z) * fp)
            }
        }
    }

    /// `order`-th derivative (`order` in 1..=3), closed form preferred.
    pub fn derivative(
        &self,
        z: Complex,
        order: u32,
        settings: &EvaluationSettings,
    ) -> Result<Complex> {
        if order == 0 {
            return self.eval(z);
        }
        if !(1..=3).contains(&order) {
            return Err(Error::BadSpec(format!(
                "derivative order must be 1, 2 or 3, got {order}"
            )));
        }
        crate::require_in_disc(z)?;
        match self.closed_derivative(z, order, settings) {
            Some(value) => value,
            None => self.derivative_via_cauchy(z, order, settings),
        }
    }

    /// Always takes the Cauchy-integral route over point evaluations; kept
    /// public as the independent cross-check of the closed forms.
    pub fn derivative_via_cauchy(
        &self,
        z: Complex,
        order: u32,
        settings: &EvaluationSettings,
    ) -> Result<Complex> {
        cauchy_derivative(&mut |w| self.eval(w), z, order, settings)
    }

    fn closed_derivative(
        &self,
        z: Complex,
        order: u32,
        settings: &EvaluationSettings,
    ) -> Option<Result<Complex>> {
        match &self.kind {
            Kind::Polynomial(coeffs) => {
                let mut d = differentiate_coefficients(coeffs);
                for _ in 1..order {
                    d = differentiate_coefficients(&d);
                }
                Some(Ok(horner(&d, z)))
            }
            Kind::Peaking { z0 } => {
                let z0c = z0.conj();
                let weight = 1.0 - z0.norm_sqr();
                let den = ONE - z0c * z;
                Some(Ok(match order {
                    1 => weight * z / den,
                    2 => weight / (den * den),
                    _ => 2.0 * z0c * weight / (den * den * den),
                }))
            }
            Kind::LogKernel => {
                let w = ONE - z;
                if w.norm() < 1e-15 {
                    return Some(Err(Error::EvaluationSingularity {
                        label: self.label.clone(),
                        z,
                    }));
                }
                Some(Ok(match order {
                    1 => -w.ln(),
                    2 => 1.0 / w,
                    _ => 1.0 / (w * w),
                }))
            }
            Kind::IntegralIsometry {
                phase,
                sigma,
                inner,
                settings: op_settings,
            } => {
                let rot = Complex::from_polar(1.0, *phase);
                let result = (|| match order {
                    1 => {
                        let at_z = inner.derivative(sigma.eval(z)?, 1, op_settings)?;
                        let at_zero = inner.derivative(sigma.eval(ZERO)?, 1, op_settings)?;
                        Ok(rot * (at_z - at_zero))
                    }
                    2 => {
                        let inner_dd = inner.derivative(sigma.eval(z)?, 2, op_settings)?;
                        Ok(rot * sigma.derivative(z)? * inner_dd)
                    }
                    _ => {
                        let w = sigma.eval(z)?;
                        let sp = sigma.derivative(z)?;
                        let spp = sigma.second_derivative(z)?;
                        let f2 = inner.derivative(w, 2, op_settings)?;
                        let f3 = inner.derivative(w, 3, op_settings)?;
                        Ok(rot * (spp * f2 + sp * sp * f3))
                    }
                })();
                Some(result)
            }
            Kind::Combination(terms) => {
                let mut acc = ZERO;
                for (c, f) in terms {
                    match f.derivative(z, order, settings) {
                        Ok(v) => acc += c * v,
                        Err(e) => return Some(Err(e)),
                    }
                }
                Some(Ok(acc))
            }
            Kind::GeneratorImage { rate, field, inner } => {
                if order == 3 {
                    // needs the fourth inner derivative; fall back to Cauchy
                    return None;
                }
                let v = quadratic(field, z);
                let v1 = field[1] + 2.0 * field[2] * z;
                let v2 = 2.0 * field[2];
                let result = (|| match order {
                    1 => {
                        let f1 = inner.derivative(z, 1, settings)?;
                        let f2 = inner.derivative(z, 2, settings)?;
                        Ok(*rate * f1 - I * (v1 * f1 + v * f2))
                    }
                    _ => {
                        let f1 = inner.derivative(z, 1, settings)?;
                        let f2 = inner.derivative(z, 2, settings)?;
                        let f3 = inner.derivative(z, 3, settings)?;
                        Ok(*rate * f2 - I * (v2 * f1 + 2.0 * v1 * f2 + v * f3))
                    }
                })();
                Some(result)
            }
        }
    }

    /// `∫_0^endpoint f(ξ) dξ` along the straight segment.
    pub fn path_integral(&self, endpoint: Complex, settings: &EvaluationSettings) -> Result<Complex> {
        crate::require_in_disc(endpoint)?;
        quadrature::integrate_from_zero(&mut |xi| self.eval(xi), endpoint, settings)
    }
}

fn horner(coeffs: &[Complex], z: Complex) -> Complex {
    let mut acc = ZERO;
    for c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

fn differentiate_coefficients(coeffs: &[Complex]) -> Vec<Complex> {
    if coeffs.len() <= 1 {
        return vec![ZERO];
    }
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * k as f64)
        .collect()
}

fn quadratic(field: &[Complex; 3], z: Complex) -> Complex {
    field[0] + field[1] * z + field[2] * z * z
}
