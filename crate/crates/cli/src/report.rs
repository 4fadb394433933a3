//! Report types written by the harness.

use crate::config::{AutomorphismDto, ComplexDto};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use zyglab_core::moebius::{AutomorphismClass, ExtendedPoint, FixedPointReport};
use zyglab_core::zygmund::ZygmundNormReport;

/// FNV-1a over the raw config bytes; pins the exact input a report came from.
pub fn config_hash(bytes: &[u8]) -> String {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    format!("{hash:016x}")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skip,
}

/// Per-function row of a norm-preservation table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyRowDto {
    pub label: String,
    pub norm_input: f64,
    pub norm_output: f64,
    pub relative_deviation: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub measured: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    pub detail: String,
    /// Per-function table, present when the scenario pinned an operator.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<VerifyRowDto>>,
    pub duration_ms: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SettingsEcho {
    pub derivative_circle_fraction: f64,
    pub derivative_nodes: usize,
    pub quadrature_order: usize,
    pub max_subdivisions: u32,
    pub abs_tolerance: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunReport {
    pub tool: String,
    pub version: String,
    pub seed: u64,
    pub config_hash: String,
    pub settings: SettingsEcho,
    pub tolerances: BTreeMap<String, f64>,
    pub checks: Vec<CheckReport>,
    pub overall: CheckStatus,
    pub started_at_unix_ms: u128,
    pub total_duration_ms: u64,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.overall == CheckStatus::Pass
    }

    /// Per-check CSV rows, one line per check.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("name,status,measured,tolerance\n");
        for check in &self.checks {
            let status = match check.status {
                CheckStatus::Pass => "pass",
                CheckStatus::Fail => "fail",
                CheckStatus::Skip => "skip",
            };
            out.push_str(&format!(
                "{},{},{},{}\n",
                check.name,
                status,
                check.measured.map(|m| format!("{m:e}")).unwrap_or_default(),
                check.tolerance.map(|t| format!("{t:e}")).unwrap_or_default(),
            ));
        }
        out
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridMetaDto {
    pub n_radii: usize,
    pub n_angles: usize,
    pub refine_iterations: usize,
}

/// Wire form of a norm report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NormReportDto {
    pub label: String,
    pub value_at_zero: f64,
    pub deriv_at_zero: f64,
    pub seminorm: f64,
    pub argmax: ComplexDto,
    pub total: f64,
    pub grid: GridMetaDto,
    pub grid_too_coarse: bool,
}

impl NormReportDto {
    pub fn new(label: &str, report: &ZygmundNormReport) -> Self {
        NormReportDto {
            label: label.to_string(),
            value_at_zero: report.value_at_zero,
            deriv_at_zero: report.deriv_at_zero,
            seminorm: report.seminorm,
            argmax: report.argmax.into(),
            total: report.total,
            grid: GridMetaDto {
                n_radii: report.grid_meta.n_radii,
                n_angles: report.grid_meta.n_angles,
                refine_iterations: report.grid_meta.refine_iterations,
            },
            grid_too_coarse: report.grid_too_coarse,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum PointDto {
    Finite { re: f64, im: f64 },
    Infinity,
}

/// Wire form of a fixed-point classification.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassifyReportDto {
    pub automorphism: AutomorphismDto,
    pub class: String,
    pub fixed_points: Vec<PointDto>,
}

impl ClassifyReportDto {
    pub fn new(sigma: zyglab_core::moebius::DiscAutomorphism, report: &FixedPointReport) -> Self {
        let class = match report.class {
            AutomorphismClass::Identity => "identity",
            AutomorphismClass::Elliptic => "elliptic",
            AutomorphismClass::Hyperbolic => "hyperbolic",
            AutomorphismClass::Parabolic => "parabolic",
        };
        ClassifyReportDto {
            automorphism: sigma.into(),
            class: class.to_string(),
            fixed_points: report
                .points
                .iter()
                .map(|p| match p {
                    ExtendedPoint::Finite(z) => PointDto::Finite { re: z.re, im: z.im },
                    ExtendedPoint::Infinity => PointDto::Infinity,
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hash_is_stable_and_sensitive() {
        let a = config_hash(b"{\"seed\":1}");
        let b = config_hash(b"{\"seed\":1}");
        let c = config_hash(b"{\"seed\":2}");
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_eq!(a.len(), 16);
    }
}
