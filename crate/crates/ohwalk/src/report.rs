//! Pass/fail reports returned by the verification routines.

use serde::Serialize;

/// Outcome of one named verification.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    /// What was checked.
    pub name: String,
    pub passed: bool,
    /// Number of individual assertions evaluated.
    pub checks_run: usize,
    /// Largest residual seen, when the check is numeric.
    pub max_residual: Option<f64>,
    /// Descriptions of the first few failures.
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            passed: true,
            checks_run: 0,
            max_residual: None,
            failures: Vec::new(),
        }
    }

    /// Record a boolean assertion.
    pub fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks_run += 1;
        if !ok {
            self.passed = false;
            if self.failures.len() < 16 {
                self.failures.push(describe());
            }
        }
    }

    /// Record a residual that must stay within `tol`.
    pub fn check_residual(&mut self, residual: f64, tol: f64, describe: impl FnOnce() -> String) {
        let cur = self.max_residual.get_or_insert(0.0);
        if residual > *cur {
            *cur = residual;
        }
        self.check(residual.is_finite() && residual <= tol, || {
            format!("{} (residual {residual:.3e} > {tol:.1e})", describe())
        });
    }

    /// One-line human summary.
    pub fn summary(&self) -> String {
        let status = if self.passed { "pass" } else { "FAIL" };
        let residual = match self.max_residual {
            Some(r) => format!(", max residual {r:.3e}"),
            None => String::new(),
        };
        format!(
            "{}: {} ({} checks{})",
            self.name, status, self.checks_run, residual
        )
    }
}
