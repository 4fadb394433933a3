//! Declarative JSON specs for functions, operators, flows and scenarios,
//! plus their conversion into core types.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use zyglab_core::analytic::{make_test_function, AnalyticFunction, TestFunctionSpec};
use zyglab_core::flows::{FlowFamily, IsometryFlow};
use zyglab_core::isometry::{CanonicalIsometry, FullIsometry, HermitianDiagonal};
use zyglab_core::moebius::DiscAutomorphism;
use zyglab_core::zygmund::SeminormGrid;
use zyglab_core::{Complex, EvaluationSettings};

/// Configuration problems carry enough position info to fix the file.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid config: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

impl From<zyglab_core::Error> for ConfigError {
    fn from(e: zyglab_core::Error) -> Self {
        ConfigError(e.to_string())
    }
}

pub type ConfigResult<T> = Result<T, ConfigError>;

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ComplexDto {
    pub re: f64,
    pub im: f64,
}

impl From<ComplexDto> for Complex {
    fn from(c: ComplexDto) -> Self {
        Complex::new(c.re, c.im)
    }
}

impl From<Complex> for ComplexDto {
    fn from(z: Complex) -> Self {
        ComplexDto { re: z.re, im: z.im }
    }
}

/// Wire form of a disc automorphism: flat fields, as reports expect.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct AutomorphismDto {
    pub lambda_re: f64,
    pub lambda_im: f64,
    pub a_re: f64,
    pub a_im: f64,
}

impl AutomorphismDto {
    pub fn build(&self) -> ConfigResult<DiscAutomorphism> {
        Ok(DiscAutomorphism::new(
            Complex::new(self.lambda_re, self.lambda_im),
            Complex::new(self.a_re, self.a_im),
        )?)
    }
}

impl From<DiscAutomorphism> for AutomorphismDto {
    fn from(sigma: DiscAutomorphism) -> Self {
        AutomorphismDto {
            lambda_re: sigma.lambda().re,
            lambda_im: sigma.lambda().im,
            a_re: sigma.a().re,
            a_im: sigma.a().im,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FunctionSpec {
    /// `z^degree / degree!`
    Monomial { degree: u32 },
    /// Taylor coefficients at 0, lowest degree first.
    Polynomial { coefficients: Vec<ComplexDto> },
    /// The peaking function at `z0`.
    Peaking { z0: ComplexDto },
    /// Seeded coefficients for degrees `2..=degree`; when `seed` is absent
    /// the scenario seed plus the suite position is used.
    RandomPoly { degree: u32, seed: Option<u64> },
    /// Catalog function with second derivative `1/(1-z)`.
    LogKernel,
}

impl FunctionSpec {
    pub fn build(&self, fallback_seed: u64) -> ConfigResult<AnalyticFunction> {
        match self {
            FunctionSpec::Monomial { degree } => {
                Ok(make_test_function(TestFunctionSpec::Monomial(*degree))?)
            }
            FunctionSpec::Polynomial { coefficients } => {
                if coefficients.is_empty() {
                    return Err(ConfigError("polynomial needs at least one coefficient".into()));
                }
                let coeffs: Vec<Complex> = coefficients.iter().map(|&c| c.into()).collect();
                let degree = coeffs.len() - 1;
                Ok(AnalyticFunction::polynomial(
                    coeffs,
                    format!("polynomial(degree {degree})"),
                ))
            }
            FunctionSpec::Peaking { z0 } => {
                Ok(make_test_function(TestFunctionSpec::Peaking((*z0).into()))?)
            }
            FunctionSpec::RandomPoly { degree, seed } => {
                Ok(make_test_function(TestFunctionSpec::RandomPoly {
                    degree: *degree,
                    seed: seed.unwrap_or(fallback_seed),
                })?)
            }
            FunctionSpec::LogKernel => Ok(AnalyticFunction::log_kernel()),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case", deny_unknown_fields)]
pub enum FlowFamilySpec {
    Trivial,
    Elliptic { c: f64, tau: ComplexDto },
    Hyperbolic { phi: f64, p: ComplexDto, q: ComplexDto },
    Parabolic { c: f64, gamma: ComplexDto },
}

impl FlowFamilySpec {
    pub fn build(&self) -> ConfigResult<FlowFamily> {
        Ok(match self {
            FlowFamilySpec::Trivial => FlowFamily::trivial(),
            FlowFamilySpec::Elliptic { c, tau } => FlowFamily::elliptic(*c, (*tau).into())?,
            FlowFamilySpec::Hyperbolic { phi, p, q } => {
                FlowFamily::hyperbolic(*phi, (*p).into(), (*q).into())?
            }
            FlowFamilySpec::Parabolic { c, gamma } => {
                FlowFamily::parabolic(*c, (*gamma).into())?
            }
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum OperatorSpec {
    Canonical {
        alpha: f64,
        sigma: AutomorphismDto,
    },
    Full {
        theta: f64,
        eta: f64,
        alpha: f64,
        sigma: AutomorphismDto,
    },
    Hermitian {
        a1: f64,
        a2: f64,
        a3: f64,
    },
    Flow {
        #[serde(default)]
        alpha_rate: f64,
        family: FlowFamilySpec,
    },
}

/// A built operator, ready for the checks.
#[derive(Debug, Clone)]
pub enum Operator {
    Canonical(CanonicalIsometry),
    Full(FullIsometry),
    Hermitian(HermitianDiagonal),
    Flow(IsometryFlow),
}

impl OperatorSpec {
    pub fn build(&self) -> ConfigResult<Operator> {
        Ok(match self {
            OperatorSpec::Canonical { alpha, sigma } => {
                Operator::Canonical(CanonicalIsometry::new(*alpha, sigma.build()?))
            }
            OperatorSpec::Full {
                theta,
                eta,
                alpha,
                sigma,
            } => Operator::Full(FullIsometry::new(*theta, *eta, *alpha, sigma.build()?)),
            OperatorSpec::Hermitian { a1, a2, a3 } => Operator::Hermitian(HermitianDiagonal {
                a1: *a1,
                a2: *a2,
                a3: *a3,
            }),
            OperatorSpec::Flow { alpha_rate, family } => {
                Operator::Flow(IsometryFlow::new(*alpha_rate, family.build()?))
            }
        })
    }
}

/// Names of the scenario checks; unknown names fail at parse time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckName {
    Norm,
    Isometry,
    FlowGroupLaw,
    Generator,
    ExtremePoint,
    HermitianExponential,
    Domain,
    Unboundedness,
}

impl CheckName {
    pub const ALL: [CheckName; 8] = [
        CheckName::Domain,
        CheckName::ExtremePoint,
        CheckName::FlowGroupLaw,
        CheckName::Generator,
        CheckName::HermitianExponential,
        CheckName::Isometry,
        CheckName::Norm,
        CheckName::Unboundedness,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CheckName::Norm => "norm",
            CheckName::Isometry => "isometry",
            CheckName::FlowGroupLaw => "flow-group-law",
            CheckName::Generator => "generator",
            CheckName::ExtremePoint => "extreme-point",
            CheckName::HermitianExponential => "hermitian-exponential",
            CheckName::Domain => "domain",
            CheckName::Unboundedness => "unboundedness",
        }
    }

    pub fn default_tolerance(&self) -> f64 {
        match self {
            CheckName::Norm => 1e-8,
            CheckName::Isometry => 1e-6,
            CheckName::FlowGroupLaw => 1e-9,
            CheckName::Generator => 1e-6,
            CheckName::ExtremePoint => 1e-9,
            CheckName::HermitianExponential => 1e-8,
            CheckName::Domain => 1e-8,
            CheckName::Unboundedness => 1e-6,
        }
    }

    pub fn from_str_name(name: &str) -> Option<CheckName> {
        CheckName::ALL.iter().copied().find(|c| c.as_str() == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default)]
    pub path: Option<String>,
    #[serde(default)]
    pub format: Option<OutputFormat>,
}

/// Mirror of [`EvaluationSettings`] with per-field defaults.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SettingsDto {
    pub derivative_circle_fraction: f64,
    pub derivative_nodes: usize,
    pub quadrature_order: usize,
    pub max_subdivisions: u32,
    pub abs_tolerance: f64,
}

impl Default for SettingsDto {
    fn default() -> Self {
        let s = EvaluationSettings::default();
        SettingsDto {
            derivative_circle_fraction: s.derivative_circle_fraction,
            derivative_nodes: s.derivative_nodes,
            quadrature_order: s.quadrature_order,
            max_subdivisions: s.max_subdivisions,
            abs_tolerance: s.abs_tolerance,
        }
    }
}

impl SettingsDto {
    pub fn build(&self) -> ConfigResult<EvaluationSettings> {
        let settings = EvaluationSettings {
            derivative_circle_fraction: self.derivative_circle_fraction,
            derivative_nodes: self.derivative_nodes,
            quadrature_order: self.quadrature_order,
            max_subdivisions: self.max_subdivisions,
            abs_tolerance: self.abs_tolerance,
        };
        settings.validate()?;
        Ok(settings)
    }
}

/// One verification scenario: seed, probe suite, optional operator, the
/// checks to run and their tolerances.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub seed: u64,
    #[serde(default)]
    pub suite: Vec<FunctionSpec>,
    #[serde(default)]
    pub operator: Option<OperatorSpec>,
    pub checks: Vec<CheckName>,
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
    #[serde(default)]
    pub output: Option<OutputSpec>,
    #[serde(default)]
    pub settings: Option<SettingsDto>,
}

impl ScenarioConfig {
    /// Semantic validation past what serde enforces: tolerance names must be
    /// known check names and every tolerance strictly positive.
    pub fn validate(&self) -> ConfigResult<()> {
        for (name, value) in &self.tolerances {
            if CheckName::from_str_name(name).is_none() {
                return Err(ConfigError(format!(
                    "unknown tolerance name {name:?}; known names: {}",
                    CheckName::ALL.map(|c| c.as_str()).join(", ")
                )));
            }
            if !value.is_finite() || *value <= 0.0 {
                return Err(ConfigError(format!(
                    "tolerance {name:?} must be strictly positive, got {value}"
                )));
            }
        }
        if let Some(s) = &self.settings {
            s.build()?;
        }
        Ok(())
    }

    pub fn tolerance_for(&self, check: CheckName) -> f64 {
        self.tolerances
            .get(check.as_str())
            .copied()
            .unwrap_or_else(|| check.default_tolerance())
    }
}

/// Config for the `norm` subcommand.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormConfig {
    pub function: FunctionSpec,
    #[serde(default)]
    pub settings: Option<SettingsDto>,
    #[serde(default)]
    pub seed: Option<u64>,
}

/// Config for the `grid` subcommand: either a weighted-modulus surface of a
/// function, or the trajectories of a flow over a time grid.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GridConfig {
    Surface(SurfaceGridConfig),
    Trajectory(TrajectoryConfig),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceGridConfig {
    pub function: FunctionSpec,
    pub n_radii: usize,
    pub n_angles: usize,
    #[serde(default)]
    pub r_max: Option<f64>,
    #[serde(default)]
    pub seed: Option<u64>,
}

impl SurfaceGridConfig {
    pub fn grid(&self) -> ConfigResult<SeminormGrid> {
        let grid = SeminormGrid {
            n_radii: self.n_radii,
            n_angles: self.n_angles,
            r_max: self.r_max.unwrap_or(0.999),
            ..SeminormGrid::default()
        };
        grid.validate()?;
        Ok(grid)
    }
}

/// Samples `σ_t(z)` over seeded points and the given times.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrajectoryConfig {
    pub flow: FlowFamilySpec,
    pub times: Vec<f64>,
    #[serde(default = "default_trajectory_points")]
    pub n_points: usize,
    #[serde(default)]
    pub seed: Option<u64>,
}

fn default_trajectory_points() -> usize {
    8
}

/// Config for the `classify` subcommand: exactly one of `automorphism` or
/// `flow`; flows are sampled at time `t` (default 1).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassifyConfig {
    #[serde(default)]
    pub automorphism: Option<AutomorphismDto>,
    #[serde(default)]
    pub flow: Option<FlowFamilySpec>,
    #[serde(default)]
    pub t: Option<f64>,
}

impl ClassifyConfig {
    pub fn build_automorphism(&self) -> ConfigResult<DiscAutomorphism> {
        match (&self.automorphism, &self.flow) {
            (Some(auto), None) => auto.build(),
            (None, Some(flow)) => {
                let family = flow.build()?;
                Ok(family.to_automorphism(self.t.unwrap_or(1.0))?)
            }
            _ => Err(ConfigError(
                "classify needs exactly one of \"automorphism\" or \"flow\"".into(),
            )),
        }
    }
}
