//! Gauss-Legendre quadrature and adaptive integration along disc segments.

use crate::{Complex, Error, EvaluationSettings, Result};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Gauss-Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Computes the rule of the given order by Newton iteration on the
    /// Legendre recurrence, seeded with the Chebyshev-like initial guess.
    pub fn new(order: usize) -> Self {
        assert!(order > 0, "quadrature order must be positive");
        let n = order;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        // Roots come in symmetric pairs; solve for the non-negative half.
        let half = n.div_ceil(2);
        for i in 0..half {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-15 {
                    let (_, d2) = legendre_with_derivative(n, x);
                    dp = d2;
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            weights[i] = w;
            nodes[n - 1 - i] = x;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
            let (_, d) = legendre_with_derivative(n, 0.0);
            weights[n / 2] = 2.0 / (d * d);
        }
        Self { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// Integrates `g` over the straight segment from `start` to `end`.
    pub fn integrate_segment<F>(&self, g: &mut F, start: Complex, end: Complex) -> Result<Complex>
    where
        F: FnMut(Complex) -> Result<Complex>,
    {
        let mid = 0.5 * (start + end);
        let half = 0.5 * (end - start);
        let mut acc = Complex::new(0.0, 0.0);
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc += w * g(mid + half * x)?;
        }
        Ok(acc * half)
    }
}

/// Value and derivative of the Legendre polynomial `P_n` at `x`.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Shared cache of rules keyed by order; building order 32 costs microseconds
/// but the grid sweeps request it millions of times.
pub fn rule(order: usize) -> Arc<GaussLegendre> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GaussLegendre>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = cache.lock().expect("quadrature cache poisoned");
    map.entry(order)
        .or_insert_with(|| Arc::new(GaussLegendre::new(order)))
        .clone()
}

/// Integrates `g` from `0` to `endpoint` along the straight segment.
///
/// The segment is split into `2^level` equal panels, doubling until two
/// successive levels agree within `abs_tolerance` or `max_subdivisions`
/// is exhausted.
pub fn integrate_from_zero<F>(
    g: &mut F,
    endpoint: Complex,
    settings: &EvaluationSettings,
) -> Result<Complex>
where
    F: FnMut(Complex) -> Result<Complex>,
{
    let rule = rule(settings.quadrature_order);
    let origin = Complex::new(0.0, 0.0);
    let mut previous = rule.integrate_segment(g, origin, endpoint)?;
    let mut residual = f64::INFINITY;
    for level in 1..=settings.max_subdivisions {
        let panels = 1usize << level;
        let mut acc = Complex::new(0.0, 0.0);
        for k in 0..panels {
            let a = endpoint * (k as f64 / panels as f64);
            let b = endpoint * ((k + 1) as f64 / panels as f64);
            acc += rule.integrate_segment(g, a, b)?;
        }
        residual = (acc - previous).norm();
        if residual <= settings.abs_tolerance {
            return Ok(acc);
        }
        previous = acc;
    }
    Err(Error::ConvergenceFailure {
        context: format!(
            "path integral to {endpoint} did not settle after {} subdivisions",
            settings.max_subdivisions
        ),
        residual,
        tolerance: settings.abs_tolerance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nodes_are_symmetric_and_weights_sum_to_two() {
        for order in [1, 2, 3, 5, 16, 32, 33] {
            let rule = GaussLegendre::new(order);
            let sum: f64 = rule.weights.iter().sum();
            assert!((sum - 2.0).abs() < 1e-13, "order {order}: sum {sum}");
            for i in 0..order {
                assert!((rule.nodes[i] + rule.nodes[order - 1 - i]).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn integrates_high_degree_monomials_exactly() {
        // Order n is exact through degree 2n-1.
        let rule = GaussLegendre::new(8);
        let mut g = |z: Complex| Ok(z.powu(15));
        let value = rule
            .integrate_segment(&mut g, Complex::new(0.0, 0.0), Complex::new(1.0, 0.0))
            .unwrap();
        assert!((value.re - 1.0 / 16.0).abs() < 1e-15);
        assert!(value.im.abs() < 1e-16);
    }

    #[test]
    fn known_order_two_rule() {
        let rule = GaussLegendre::new(2);
        let x = 1.0 / 3.0f64.sqrt();
        assert!((rule.nodes[0] + x).abs() < 1e-15);
        assert!((rule.nodes[1] - x).abs() < 1e-15);
        assert!((rule.weights[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn adaptive_segment_agrees_with_closed_form() {
        let settings = EvaluationSettings::default();
        // endpoint inside the disc, integrand exp(z): integral is exp(w) - 1
        let w = Complex::new(0.3, 0.4);
        let mut g = |z: Complex| Ok(z.exp());
        let value = integrate_from_zero(&mut g, w, &settings).unwrap();
        let exact = w.exp() - Complex::new(1.0, 0.0);
        assert!((value - exact).norm() < 1e-13);
    }

    #[test]
    fn reports_failure_when_budget_exhausted() {
        let settings = EvaluationSettings {
            quadrature_order: 1,
            max_subdivisions: 1,
            abs_tolerance: 1e-16,
            ..EvaluationSettings::default()
        };
        let mut g = |z: Complex| Ok((z * 40.0).cos());
        let err = integrate_from_zero(&mut g, Complex::new(0.9, 0.0), &settings).unwrap_err();
        assert!(matches!(err, Error::ConvergenceFailure { .. }));
    }
}
