//! Named verification suites, shared by the CLI and the acceptance tests.
//!
//! Each suite sweeps one family of identities over a parameter set and a
//! degree, reporting the max residual and its witness. Suites never fail
//! as errors on large residuals — a bad residual is a result, not an
//! exception — but domain violations (e.g. zonal checks on complex odd
//! parameters) surface as skips.

use crate::error::{KrawError, Result};
use crate::glaction;
use crate::krawtchouk;
use crate::params::ParamSet;
use crate::report::Residual;
use crate::spherical;

/// The verification suites exposed by the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Orthogonality,
    Recurrence,
    Contravariance,
    CartanSwap,
    Duality,
    TForm,
    KrZonal,
    All,
}

impl Suite {
    pub const NAMED: [(Suite, &'static str); 8] = [
        (Suite::Orthogonality, "orthogonality"),
        (Suite::Recurrence, "recurrence"),
        (Suite::Contravariance, "contravariance"),
        (Suite::CartanSwap, "cartan-swap"),
        (Suite::Duality, "duality"),
        (Suite::TForm, "tform"),
        (Suite::KrZonal, "krzonal"),
        (Suite::All, "all"),
    ];

    pub fn parse(name: &str) -> Result<Suite> {
        Self::NAMED
            .iter()
            .find(|(_, n)| *n == name)
            .map(|(s, _)| *s)
            .ok_or_else(|| {
                KrawError::Parse(format!(
                    "unknown suite {name:?}; expected one of {}",
                    Self::NAMED
                        .iter()
                        .map(|(_, n)| *n)
                        .collect::<Vec<_>>()
                        .join(", ")
                ))
            })
    }

    pub fn name(&self) -> &'static str {
        Self::NAMED
            .iter()
            .find(|(s, _)| s == self)
            .map(|(_, n)| *n)
            .expect("every suite is named")
    }
}

/// Result of one named suite.
#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub suite: &'static str,
    pub residual: Residual,
    /// Present when the suite could not run on these parameters.
    pub skipped: Option<String>,
}

impl SuiteOutcome {
    pub fn pass(&self, tol: f64) -> bool {
        self.skipped.is_some() || self.residual.max <= tol
    }
}

fn run_one(suite: Suite, ps: &ParamSet, degree: u32) -> Result<SuiteOutcome> {
    let name = suite.name();
    let residual = match suite {
        Suite::Orthogonality => {
            let mut worst = Residual::new();
            for d in 0..=degree.min(ps.n() as u32 + 1) {
                worst.merge(krawtchouk::orthogonality_residual(ps, degree, d)?);
            }
            worst
        }
        Suite::Recurrence => {
            let mut worst = krawtchouk::recurrence_sweep(&ps.odd)?;
            let np1 = ps.n() + 1;
            for eps in 0u32..1 << np1 {
                for eps_tilde in 0u32..1 << np1 {
                    if eps.count_ones() != eps_tilde.count_ones() {
                        continue;
                    }
                    let value =
                        krawtchouk::recurrence_tautology_residual(eps, eps_tilde, &ps.odd)?;
                    worst.record(value, || {
                        format!("tautology eps={eps:b} eps_tilde={eps_tilde:b}")
                    });
                }
            }
            worst
        }
        Suite::Contravariance => glaction::contravariance_sweep(ps, degree)?,
        Suite::CartanSwap => glaction::cartan_swap_sweep(ps, degree)?,
        Suite::Duality => {
            let mut worst = Residual::new();
            for d in 0..=degree.min(ps.n() as u32 + 1) {
                worst.merge(krawtchouk::duality_residual(ps, degree, d)?);
            }
            worst
        }
        Suite::TForm => {
            let mut worst = glaction::tform_residual(ps, degree)?;
            worst.merge(glaction::cauchy_binet_odd_residual(&ps.odd)?);
            worst
        }
        Suite::KrZonal => match spherical::krzonal_sweep(&ps.odd) {
            Ok(worst) => worst,
            Err(KrawError::Domain(msg)) => {
                return Ok(SuiteOutcome {
                    suite: name,
                    residual: Residual::new(),
                    skipped: Some(msg),
                })
            }
            Err(e) => return Err(e),
        },
        Suite::All => unreachable!("expanded by run_suite"),
    };
    Ok(SuiteOutcome {
        suite: name,
        residual,
        skipped: None,
    })
}

/// Run a suite (or all of them) and collect per-suite outcomes.
pub fn run_suite(suite: Suite, ps: &ParamSet, degree: u32) -> Result<Vec<SuiteOutcome>> {
    let list: Vec<Suite> = match suite {
        Suite::All => Suite::NAMED
            .iter()
            .map(|(s, _)| *s)
            .filter(|s| *s != Suite::All)
            .collect(),
        other => vec![other],
    };
    list.into_iter().map(|s| run_one(s, ps, degree)).collect()
}
