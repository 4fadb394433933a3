//! The named scenario checks and the scenario runner.
//!
//! Every check is a pure function of the scenario context (seed, suite,
//! optional operator, settings) so runs are reproducible bit-for-bit; the
//! runner may execute checks on a small worker pool, with results slotted
//! by check index so the report does not depend on scheduling.

use crate::config::{
    CheckName, ConfigError, ConfigResult, Operator, ScenarioConfig,
};
use crate::report::{CheckReport, CheckStatus, RunReport, SettingsEcho, VerifyRowDto};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;
use zyglab_core::analytic::AnalyticFunction;
use zyglab_core::flows::{FlowFamily, IsometryFlow};
use zyglab_core::isometry::{
    verify_isometry, CanonicalIsometry, HermitianDiagonal, IsometryOperator,
};
use zyglab_core::rng::SplitMix64;
use zyglab_core::zygmund::{membership_check, zygmund_norm, SpaceVariant};
use zyglab_core::{Complex, EvaluationSettings};

pub struct ScenarioContext {
    pub seed: u64,
    pub suite: Vec<AnalyticFunction>,
    pub operator: Option<Operator>,
    pub settings: EvaluationSettings,
}

struct CheckOutcome {
    status: CheckStatus,
    measured: Option<f64>,
    detail: String,
    table: Option<Vec<VerifyRowDto>>,
}

impl CheckOutcome {
    fn skip(detail: impl Into<String>) -> Self {
        CheckOutcome {
            status: CheckStatus::Skip,
            measured: None,
            detail: detail.into(),
            table: None,
        }
    }

    fn from_measurement(measured: f64, tolerance: f64, detail: impl Into<String>) -> Self {
        CheckOutcome {
            status: if measured <= tolerance {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            measured: Some(measured),
            detail: detail.into(),
            table: None,
        }
    }

    fn fail(measured: Option<f64>, detail: impl Into<String>) -> Self {
        CheckOutcome {
            status: CheckStatus::Fail,
            measured,
            detail: detail.into(),
            table: None,
        }
    }

    fn with_table(mut self, table: Option<Vec<VerifyRowDto>>) -> Self {
        self.table = table;
        self
    }
}

/// Canonical nontrivial flow families exercised when the scenario does not
/// pin one of its own.
fn default_families() -> Vec<FlowFamily> {
    vec![
        FlowFamily::elliptic(1.0, Complex::new(0.3, 0.2)).expect("valid"),
        FlowFamily::hyperbolic(1.0, Complex::new(1.0, 0.0), Complex::new(-1.0, 0.0))
            .expect("valid"),
        FlowFamily::parabolic(1.0, Complex::new(1.0, 0.0)).expect("valid"),
    ]
}

fn scenario_flows(ctx: &ScenarioContext) -> Vec<IsometryFlow> {
    if let Some(Operator::Flow(flow)) = &ctx.operator {
        vec![*flow]
    } else {
        default_families()
            .into_iter()
            .map(|family| IsometryFlow::new(0.7, family))
            .collect()
    }
}

fn members_of(
    suite: &[AnalyticFunction],
    variant: SpaceVariant,
    settings: &EvaluationSettings,
) -> Vec<AnalyticFunction> {
    suite
        .iter()
        .filter(|f| membership_check(f, variant, settings).unwrap_or(false))
        .cloned()
        .collect()
}

fn check_norm(ctx: &ScenarioContext, tolerance: f64) -> CheckOutcome {
    if ctx.suite.is_empty() {
        return CheckOutcome::skip("empty suite");
    }
    let s = &ctx.settings;
    let mut measured: f64 = 0.0;
    let mut norms = Vec::with_capacity(ctx.suite.len());
    for f in &ctx.suite {
        let report = match zygmund_norm(f, s) {
            Ok(r) => r,
            Err(e) => return CheckOutcome::fail(None, format!("{}: {e}", f.label())),
        };
        // component identity is exact by construction; homogeneity is not
        let scaled = AnalyticFunction::combination(
            vec![(Complex::new(2.0, 0.0), f.clone())],
            format!("2·({})", f.label()),
        );
        match zygmund_norm(&scaled, s) {
            Ok(r2) => {
                let deviation = (r2.total - 2.0 * report.total).abs() / report.total.max(1e-300);
                measured = measured.max(deviation);
            }
            Err(e) => return CheckOutcome::fail(None, format!("{}: {e}", f.label())),
        }
        norms.push(report.total);
    }
    for pair in ctx.suite.windows(2) {
        let sum = AnalyticFunction::combination(
            vec![
                (Complex::new(1.0, 0.0), pair[0].clone()),
                (Complex::new(1.0, 0.0), pair[1].clone()),
            ],
            "pair sum",
        );
        match (
            zygmund_norm(&sum, &ctx.settings),
            zygmund_norm(&pair[0], &ctx.settings),
            zygmund_norm(&pair[1], &ctx.settings),
        ) {
            (Ok(rs), Ok(ra), Ok(rb)) => {
                let violation = (rs.total - ra.total - rb.total).max(0.0);
                measured = measured.max(violation / ra.total.max(rb.total).max(1e-300));
            }
            _ => return CheckOutcome::fail(None, "norm failure on pair sum".to_string()),
        }
    }
    CheckOutcome::from_measurement(
        measured,
        tolerance,
        format!("{} functions, homogeneity + triangle", ctx.suite.len()),
    )
}

fn check_isometry(ctx: &ScenarioContext, tolerance: f64) -> CheckOutcome {
    let s = &ctx.settings;
    let canonical_members = members_of(&ctx.suite, SpaceVariant::Z0I01, s);
    let full_members = members_of(&ctx.suite, SpaceVariant::Z0, s);
    let mut rng = SplitMix64::new(ctx.seed ^ 0x1505_1505_1505_1505);
    let sampled: Vec<IsometryOperator> = (0..20)
        .map(|_| IsometryOperator::Canonical(CanonicalIsometry::sample(&mut rng, 0.8)))
        .collect();
    let mut configured: Vec<IsometryOperator> = Vec::new();
    match &ctx.operator {
        Some(Operator::Canonical(t)) => configured.push(IsometryOperator::Canonical(*t)),
        Some(Operator::Full(t)) => configured.push(IsometryOperator::Full(*t)),
        Some(Operator::Hermitian(h)) => {
            configured.push(IsometryOperator::Full(h.exponential(0.1)));
            configured.push(IsometryOperator::Full(h.exponential(1.0)));
        }
        Some(Operator::Flow(flow)) => {
            for t in [0.25, 1.0] {
                match flow.isometry_at(t) {
                    Ok(op) => configured.push(IsometryOperator::Canonical(op)),
                    Err(e) => return CheckOutcome::fail(None, e.to_string()),
                }
            }
        }
        None => {}
    }
    let mut measured: f64 = 0.0;
    let mut applied = 0usize;
    let mut table: Vec<VerifyRowDto> = Vec::new();
    for (op, keep_rows) in sampled
        .iter()
        .map(|op| (op, false))
        .chain(configured.iter().map(|op| (op, true)))
    {
        let members = match op {
            IsometryOperator::Canonical(_) => &canonical_members,
            IsometryOperator::Full(_) => &full_members,
        };
        if members.is_empty() {
            continue;
        }
        match verify_isometry(op, members, s) {
            Ok(report) => {
                measured = measured.max(report.max_relative_deviation);
                applied += members.len();
                if keep_rows {
                    table.extend(report.rows.iter().map(|row| VerifyRowDto {
                        label: row.label.clone(),
                        norm_input: row.norm_input,
                        norm_output: row.norm_output,
                        relative_deviation: row.relative_deviation,
                    }));
                }
            }
            Err(e) => return CheckOutcome::fail(None, e.to_string()),
        }
    }
    if applied == 0 {
        return CheckOutcome::skip("no suite member lies in the operator domains");
    }
    let detail = format!(
        "{} operators, {applied} applications",
        sampled.len() + configured.len()
    );
    CheckOutcome::from_measurement(measured, tolerance, detail)
        .with_table((!table.is_empty()).then_some(table))
}

fn check_flow_group_law(ctx: &ScenarioContext, tolerance: f64) -> CheckOutcome {
    let mut rng = SplitMix64::new(ctx.seed ^ 0x2a2a_2a2a_2a2a_2a2a);
    let points: Vec<Complex> = (0..200).map(|_| rng.next_in_disc(0.95)).collect();
    let times = [-1.0, -0.3, 0.2, 0.7];
    let mut measured: f64 = 0.0;
    let flows = scenario_flows(ctx);
    for flow in &flows {
        match zyglab_core::flows::group_law_check(&flow.family, &times, &times, &points) {
            Ok(deviation) => measured = measured.max(deviation),
            Err(e) => return CheckOutcome::fail(None, e.to_string()),
        }
    }
    CheckOutcome::from_measurement(
        measured,
        tolerance,
        format!("{} families, {} points", flows.len(), points.len()),
    )
}

fn check_generator(ctx: &ScenarioContext, tolerance: f64) -> CheckOutcome {
    let s = &ctx.settings;
    let mut rng = SplitMix64::new(ctx.seed ^ 0x3c3c_3c3c_3c3c_3c3c);
    let mut flows = scenario_flows(ctx);
    flows.push(IsometryFlow::new(0.7, FlowFamily::trivial()));

    let mut measured: f64 = 0.0;
    for flow in &flows {
        for _ in 0..1000 {
            let z = rng.next_in_disc(0.95);
            let closed = match flow.family.velocity(z) {
                Ok(v) => v,
                Err(e) => return CheckOutcome::fail(None, e.to_string()),
            };
            let fd = match flow.family.velocity_fd(z) {
                Ok(v) => v,
                Err(e) => return CheckOutcome::fail(None, e.to_string()),
            };
            measured = measured.max((closed - fd).norm() / (1.0 + closed.norm()));
        }
    }

    // difference quotient along the phase-weighted orbit converges to the
    // generator at first order
    let probe = AnalyticFunction::monomial(3);
    let z = Complex::new(0.4, 0.0);
    for flow in &flows {
        let target = match flow.apply_generator(&probe, z, s) {
            Ok(v) => v,
            Err(e) => return CheckOutcome::fail(None, e.to_string()),
        };
        let mut errors = Vec::new();
        for k in 3..=10 {
            let t = 0.5f64.powi(k);
            match flow.generator_quotient(&probe, z, t) {
                Ok(q) => errors.push((q - target).norm()),
                Err(e) => return CheckOutcome::fail(None, e.to_string()),
            }
        }
        if errors.iter().all(|&e| e < 1e-13) {
            continue; // quotient is exact for this flow
        }
        for window in errors.windows(2) {
            let ratio = window[0] / window[1];
            if !(1.7..=2.3).contains(&ratio) {
                return CheckOutcome::fail(
                    Some(measured),
                    format!("halving ratio {ratio:.3} outside [1.7, 2.3] for {:?}", flow.family),
                );
            }
        }
    }
    CheckOutcome::from_measurement(
        measured,
        tolerance,
        format!("{} flows, closed vs Richardson field + quotient rate", flows.len()),
    )
}

fn check_extreme_point(ctx: &ScenarioContext, tolerance: f64) -> CheckOutcome {
    let s = &ctx.settings;
    let members = members_of(&ctx.suite, SpaceVariant::Z0I01, s);
    if members.is_empty() {
        return CheckOutcome::skip("no suite member vanishes to second order at 0");
    }
    let functions: Vec<&AnalyticFunction> = members.iter().take(3).collect();
    let mut rng = SplitMix64::new(ctx.seed ^ 0x4d4d_4d4d_4d4d_4d4d);
    let mut measured: f64 = 0.0;
    for _ in 0..10 {
        let op = CanonicalIsometry::sample(&mut rng, 0.8);
        for f in &functions {
            for _ in 0..100 {
                let z = rng.next_in_disc(0.9);
                let theta = rng.next_angle();
                let (phase, w) = match op.adjoint_on_extreme(theta, z) {
                    Ok(v) => v,
                    Err(e) => return CheckOutcome::fail(None, e.to_string()),
                };
                let lhs = match op.second_derivative_direct(f, z, s) {
                    Ok(d) => {
                        (1.0 - z.norm_sqr()) * Complex::from_polar(1.0, theta) * d
                    }
                    Err(e) => return CheckOutcome::fail(None, e.to_string()),
                };
                let rhs = match f.derivative(w, 2, s) {
                    Ok(d) => Complex::from_polar(1.0, phase) * (1.0 - w.norm_sqr()) * d,
                    Err(e) => return CheckOutcome::fail(None, e.to_string()),
                };
                measured = measured.max((lhs - rhs).norm());
            }
        }
    }
    CheckOutcome::from_measurement(
        measured,
        tolerance,
        format!("10 operators x {} functions x 100 points", functions.len()),
    )
}

fn check_hermitian_exponential(ctx: &ScenarioContext, tolerance: f64) -> CheckOutcome {
    let s = &ctx.settings;
    let diag = match &ctx.operator {
        Some(Operator::Hermitian(h)) => *h,
        _ => HermitianDiagonal { a1: 1.0, a2: 2.0, a3: 0.5 },
    };
    let probe = AnalyticFunction::polynomial(
        vec![
            Complex::new(1.0, 0.0),
            Complex::new(1.0, 0.0),
            Complex::new(0.5, 0.0),
        ],
        "1 + z + z^2/2",
    );
    let base = match zygmund_norm(&probe, s) {
        Ok(r) => r.total,
        Err(e) => return CheckOutcome::fail(None, e.to_string()),
    };
    let mut measured: f64 = 0.0;
    for t in [0.1, 0.3, 1.0, std::f64::consts::PI] {
        let image = match diag.exponential(t).apply(&probe, s) {
            Ok(f) => f,
            Err(e) => return CheckOutcome::fail(None, e.to_string()),
        };
        match zygmund_norm(&image, s) {
            Ok(r) => measured = measured.max((r.total - base).abs()),
            Err(e) => return CheckOutcome::fail(None, e.to_string()),
        }
    }
    // exponentials compose additively in t
    let mut rng = SplitMix64::new(ctx.seed ^ 0x5e5e_5e5e_5e5e_5e5e);
    let (u, v) = (0.4, 0.9);
    let once = diag.exponential(u + v).apply(&probe, s);
    let staged = diag
        .exponential(u)
        .apply(&probe, s)
        .and_then(|g| diag.exponential(v).apply(&g, s));
    match (once, staged) {
        (Ok(a), Ok(b)) => {
            for _ in 0..50 {
                let z = rng.next_in_disc(0.9);
                let (va, vb) = match (a.eval(z), b.eval(z)) {
                    (Ok(va), Ok(vb)) => (va, vb),
                    _ => return CheckOutcome::fail(None, "evaluation failure".to_string()),
                };
                if (va - vb).norm() > 1e-12 {
                    return CheckOutcome::fail(
                        Some((va - vb).norm()),
                        format!("exponential group law violated at {z}"),
                    );
                }
            }
        }
        _ => return CheckOutcome::fail(None, "operator application failure".to_string()),
    }
    CheckOutcome::from_measurement(
        measured,
        tolerance,
        format!("diag ({}, {}, {}), 4 times + group law", diag.a1, diag.a2, diag.a3),
    )
}

fn check_domain(ctx: &ScenarioContext, tolerance: f64) -> CheckOutcome {
    let s = &ctx.settings;
    // the trivial flow keeps the half square in the generator's domain
    let trivial = IsometryFlow::new(1.0, FlowFamily::trivial());
    let half_square = AnalyticFunction::monomial(2);
    match trivial.domain_check(&half_square, s) {
        Ok(report) if report.in_domain => {}
        Ok(_) => return CheckOutcome::fail(None, "trivial flow rejected z^2/2".to_string()),
        Err(e) => return CheckOutcome::fail(None, e.to_string()),
    }
    // off-center elliptic flow pushes z^2 out of the domain with slope 4/3
    let off_center = IsometryFlow::new(
        0.0,
        FlowFamily::elliptic(1.0, Complex::new(0.5, 0.0)).expect("valid"),
    );
    let square = AnalyticFunction::polynomial(
        vec![
            Complex::new(0.0, 0.0),
            Complex::new(0.0, 0.0),
            Complex::new(1.0, 0.0),
        ],
        "z^2",
    );
    let report = match off_center.domain_check(&square, s) {
        Ok(r) => r,
        Err(e) => return CheckOutcome::fail(None, e.to_string()),
    };
    let slope = report
        .violations
        .iter()
        .find(|v| v.condition == "derivative_at_zero")
        .map(|v| v.magnitude);
    let measured = match slope {
        Some(m) => (m - 4.0 / 3.0).abs(),
        None => return CheckOutcome::fail(None, "expected slope violation missing".to_string()),
    };
    let mut detail = String::from("trivial in-domain, off-center elliptic slope 4/3");
    if let Some(Operator::Flow(flow)) = &ctx.operator {
        if let Ok(extra) = flow.domain_check(&square, s) {
            detail.push_str(&format!(
                "; configured flow keeps z^2 in domain: {}",
                extra.in_domain
            ));
        }
    }
    CheckOutcome::from_measurement(measured, tolerance, detail)
}

fn check_unboundedness(ctx: &ScenarioContext, tolerance: f64) -> CheckOutcome {
    let s = &ctx.settings;
    let degrees = [4u32, 8, 16, 32];
    let rotation = IsometryFlow::new(0.0, FlowFamily::elliptic(1.0, Complex::new(0.0, 0.0)).expect("valid"));
    let entries = match rotation.unboundedness_probe(&degrees, s) {
        Ok(e) => e,
        Err(e) => return CheckOutcome::fail(None, e.to_string()),
    };
    let mut measured: f64 = 0.0;
    for entry in &entries {
        measured = measured.max((entry.ratio - entry.degree as f64).abs());
    }
    let strictly_increasing = entries.windows(2).all(|w| w[0].ratio < w[1].ratio);
    if !strictly_increasing {
        return CheckOutcome::fail(Some(measured), "ratios not strictly increasing".to_string());
    }
    let trivial = IsometryFlow::new(2.0, FlowFamily::trivial());
    match trivial.unboundedness_probe(&[4, 8], s) {
        Ok(entries) => {
            for entry in entries {
                if (entry.ratio - 2.0).abs() > 1e-10 {
                    return CheckOutcome::fail(
                        Some((entry.ratio - 2.0).abs()),
                        format!("trivial ratio {} at degree {}", entry.ratio, entry.degree),
                    );
                }
            }
        }
        Err(e) => return CheckOutcome::fail(None, e.to_string()),
    }
    CheckOutcome::from_measurement(
        measured,
        tolerance,
        "rotation flow ratios n over {4,8,16,32}, trivial flow constant".to_string(),
    )
}

fn run_check(check: CheckName, ctx: &ScenarioContext, tolerance: f64) -> CheckReport {
    let start = Instant::now();
    let outcome = match check {
        CheckName::Norm => check_norm(ctx, tolerance),
        CheckName::Isometry => check_isometry(ctx, tolerance),
        CheckName::FlowGroupLaw => check_flow_group_law(ctx, tolerance),
        CheckName::Generator => check_generator(ctx, tolerance),
        CheckName::ExtremePoint => check_extreme_point(ctx, tolerance),
        CheckName::HermitianExponential => check_hermitian_exponential(ctx, tolerance),
        CheckName::Domain => check_domain(ctx, tolerance),
        CheckName::Unboundedness => check_unboundedness(ctx, tolerance),
    };
    CheckReport {
        name: check.as_str().to_string(),
        status: outcome.status,
        measured: outcome.measured,
        tolerance: Some(tolerance),
        detail: outcome.detail,
        table: outcome.table,
        duration_ms: start.elapsed().as_millis() as u64,
    }
}

/// Worker-pool cap: `ZYGLAB_THREADS` (positive integer); absent means
/// single-threaded.
fn configured_threads() -> ConfigResult<usize> {
    match std::env::var("ZYGLAB_THREADS") {
        Ok(raw) => raw
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n >= 1)
            .ok_or_else(|| {
                ConfigError(format!(
                    "ZYGLAB_THREADS must be a positive integer, got {raw:?}"
                ))
            }),
        Err(_) => Ok(1),
    }
}

/// Executes a scenario and assembles the deterministic report.
pub fn run_scenario(config: &ScenarioConfig, raw_config: &[u8]) -> ConfigResult<RunReport> {
    config.validate()?;
    let settings = match &config.settings {
        Some(dto) => dto.build()?,
        None => EvaluationSettings::default(),
    };
    let mut suite = Vec::with_capacity(config.suite.len());
    for (index, spec) in config.suite.iter().enumerate() {
        suite.push(spec.build(config.seed.wrapping_add(index as u64))?);
    }
    let operator = match &config.operator {
        Some(spec) => Some(spec.build()?),
        None => None,
    };
    let ctx = ScenarioContext {
        seed: config.seed,
        suite,
        operator,
        settings,
    };

    let mut names: Vec<CheckName> = config.checks.clone();
    names.sort_by_key(|c| c.as_str());
    names.dedup();

    let threads = configured_threads()?.min(names.len().max(1));
    let started = Instant::now();
    let started_at_unix_ms = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_millis())
        .unwrap_or(0);

    let slots: Mutex<Vec<Option<CheckReport>>> = Mutex::new(vec![None; names.len()]);
    let cursor = AtomicUsize::new(0);
    if threads <= 1 {
        for (i, &check) in names.iter().enumerate() {
            let report = run_check(check, &ctx, config.tolerance_for(check));
            slots.lock().expect("slots")[i] = Some(report);
        }
    } else {
        std::thread::scope(|scope| {
            for _ in 0..threads {
                scope.spawn(|| loop {
                    let i = cursor.fetch_add(1, Ordering::SeqCst);
                    if i >= names.len() {
                        break;
                    }
                    let check = names[i];
                    let report = run_check(check, &ctx, config.tolerance_for(check));
                    slots.lock().expect("slots")[i] = Some(report);
                });
            }
        });
    }
    let checks: Vec<CheckReport> = slots
        .into_inner()
        .expect("slots")
        .into_iter()
        .map(|r| r.expect("check executed"))
        .collect();

    let overall = if checks.iter().any(|c| c.status == CheckStatus::Fail) {
        CheckStatus::Fail
    } else {
        CheckStatus::Pass
    };
    let tolerances: std::collections::BTreeMap<String, f64> = names
        .iter()
        .map(|&c| (c.as_str().to_string(), config.tolerance_for(c)))
        .collect();
    Ok(RunReport {
        tool: "zyglab".to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        seed: config.seed,
        config_hash: crate::report::config_hash(raw_config),
        settings: SettingsEcho {
            derivative_circle_fraction: settings.derivative_circle_fraction,
            derivative_nodes: settings.derivative_nodes,
            quadrature_order: settings.quadrature_order,
            max_subdivisions: settings.max_subdivisions,
            abs_tolerance: settings.abs_tolerance,
        },
        tolerances,
        checks,
        overall,
        started_at_unix_ms,
        total_duration_ms: started.elapsed().as_millis() as u64,
    })
}
