//! Named invariant suites: each identity is evaluated numerically and
//! reported as a maximum residual against a tolerance.

mod algebra;
mod oracle;
mod pbt;
mod prir;

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::oracle::Budgets;

pub use algebra::{algebra_checks, eigenvalue_agreement, z_residuals};
pub use oracle::{flip_algebra_checks, oracle_checks, trace_checks};
pub use pbt::pbt_checks;
pub use prir::prir_checks;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Prir,
    Algebra,
    Oracle,
    Pbt,
    All,
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "prir" => Ok(Suite::Prir),
            "algebra" => Ok(Suite::Algebra),
            "oracle" => Ok(Suite::Oracle),
            "pbt" => Ok(Suite::Pbt),
            "all" => Ok(Suite::All),
            other => Err(Error::InvalidArgument(format!("unknown suite {other:?}"))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Suite::Prir => "prir",
            Suite::Algebra => "algebra",
            Suite::Oracle => "oracle",
            Suite::Pbt => "pbt",
            Suite::All => "all",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyConfig {
    /// Largest algebra parameter (for `prir`, the largest `m`).
    pub n: usize,
    pub d: u32,
    pub tol: f64,
    pub budgets: Budgets,
    pub seed: u64,
    /// Random samples per randomized identity.
    pub samples: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            n: 4,
            d: 2,
            tol: 1e-9,
            budgets: Budgets::default(),
            seed: 0,
            samples: 20,
        }
    }
}

impl VerifyConfig {
    pub(crate) fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }
}

/// One identity's outcome.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub suite: String,
    pub name: String,
    pub residual: f64,
    pub tol: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    pub fn numeric(suite: &str, name: &str, residual: f64, tol: f64) -> Self {
        Self {
            suite: suite.into(),
            name: name.into(),
            residual,
            tol,
            passed: residual.is_finite() && residual < tol,
            note: None,
        }
    }

    /// Exact identity: residual is the number of mismatches.
    pub fn exact(suite: &str, name: &str, mismatches: usize) -> Self {
        Self {
            suite: suite.into(),
            name: name.into(),
            residual: mismatches as f64,
            tol: 0.0,
            passed: mismatches == 0,
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub config: VerifyConfig,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let verdict = if c.passed { "pass" } else { "FAIL" };
            out.push_str(&format!(
                "{verdict}  {:<8} {:<40} residual {:.3e} (tol {:.1e})",
                c.suite, c.name, c.residual, c.tol
            ));
            if let Some(note) = &c.note {
                out.push_str(&format!("  [{note}]"));
            }
            out.push('\n');
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        out.push_str(&format!("{} checks, {} failed\n", self.checks.len(), failed));
        out
    }
}

pub fn run(suite: Suite, config: &VerifyConfig) -> Result<VerifyReport> {
    if !(config.tol > 0.0 && config.tol <= 1e-2) {
        return Err(Error::InvalidArgument(format!("tol {} outside (0, 1e-2]", config.tol)));
    }
    if config.n < 2 || config.d < 2 {
        return Err(Error::InvalidArgument("verification needs n >= 2 and d >= 2".into()));
    }
    let mut checks = Vec::new();
    if matches!(suite, Suite::Prir | Suite::All) {
        checks.extend(prir_checks(config)?);
    }
    if matches!(suite, Suite::Algebra | Suite::All) {
        checks.extend(algebra_checks(config)?);
    }
    if matches!(suite, Suite::Oracle | Suite::All) {
        checks.extend(oracle_checks(config)?);
    }
    if matches!(suite, Suite::Pbt | Suite::All) {
        checks.extend(pbt_checks(config)?);
    }
    Ok(VerifyReport {
        suite,
        config: config.clone(),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass_at_defaults() {
        let report = run(Suite::All, &VerifyConfig::default()).unwrap();
        assert!(report.passed(), "{}", report.render_text());
    }

    #[test]
    fn rejects_bad_tolerance() {
        let cfg = VerifyConfig {
            tol: 0.5,
            ..Default::default()
        };
        assert!(run(Suite::Pbt, &cfg).is_err());
        assert!("nope".parse::<Suite>().is_err());
        assert_eq!("oracle".parse::<Suite>().unwrap(), Suite::Oracle);
    }
}
