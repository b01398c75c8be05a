//! Machine-readable verification reports.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// Optional detail (points checked, sub-residuals).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckResult {
    pub fn new(name: &str, max_residual: f64, tolerance: f64) -> Self {
        CheckResult {
            name: name.to_string(),
            max_residual,
            tolerance,
            pass: max_residual.is_finite() && max_residual <= tolerance,
            detail: None,
        }
    }

    pub fn with_detail(mut self, detail: String) -> Self {
        self.detail = Some(detail);
        self
    }
}

/// The report emitted by `verify`: per-check outcomes plus the environment
/// that produced them. Overall pass means every check passed.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub target: String,
    pub checks: Vec<CheckResult>,
    pub environment: Environment,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Environment {
    pub grid: crate::config::GridSpec,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub tolerance_overrides: BTreeMap<String, f64>,
}

impl VerificationReport {
    pub fn new(target: String, checks: Vec<CheckResult>, environment: Environment) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        VerificationReport { target, checks, environment, pass }
    }

    /// One line per check, human-readable.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "{:6} {:<20} max_residual = {:<12.3e} tolerance = {:.1e}\n",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.max_residual,
                c.tolerance
            ));
        }
        out.push_str(&format!(
            "{}: {} of {} checks passed\n",
            if self.pass { "ok" } else { "FAILED" },
            self.checks.iter().filter(|c| c.pass).count(),
            self.checks.len()
        ));
        out
    }
}
