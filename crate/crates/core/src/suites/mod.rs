//! Named verification suites. Each suite returns a [`Report`] with one
//! [`ClaimResult`] per checked statement.

use std::time::Duration;

use thiserror::Error;

use crate::algebras::MatSC;
use crate::report::{ClaimResult, Report, SuiteConfig};
use crate::tideal::Limits;

mod basis;
mod consequences;
mod identities;
mod pi;
mod popov;
mod relations;
mod s4;
mod two_variable;

pub const SUITES: &[&str] = &[
    "relations",
    "identities",
    "s4-sweep",
    "basis",
    "pi-equivalence",
    "consequences",
    "two-variable",
    "popov",
    "all",
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuiteError {
    #[error("unknown suite `{0}` (expected one of {list})", list = SUITES.join(", "))]
    Unknown(String),
}

pub(crate) fn limits(cfg: &SuiteConfig) -> Limits {
    let mut l = Limits {
        pn_degree: cfg.degree_bound,
        gamma_degree: cfg.degree_bound + 1,
        multidegree_total: cfg.degree_bound + 5,
        deadline: None,
    };
    if let Some(s) = cfg.budget_seconds {
        l = l.with_timeout(Duration::from_secs(s));
    }
    l
}

/// At most `max` characters of `s`.
pub(crate) fn clip(s: impl ToString, max: usize) -> String {
    let s = s.to_string();
    if s.chars().count() <= max {
        return s;
    }
    let mut out: String = s.chars().take(max).collect();
    out.push_str(" …");
    out
}

pub(crate) fn show(m: &MatSC) -> String {
    clip(m, 300)
}

fn claims_of(name: &str, cfg: &SuiteConfig) -> Option<Vec<ClaimResult>> {
    let l = limits(cfg);
    Some(match name {
        "relations" => relations::run(),
        "identities" => identities::run(cfg),
        "s4-sweep" => s4::run(),
        "basis" => basis::run(cfg, &l),
        "pi-equivalence" => pi::run(cfg, &l),
        "consequences" => consequences::run(cfg, &l),
        "two-variable" => two_variable::run(&l),
        "popov" => popov::run(cfg, &l),
        _ => return None,
    })
}

/// Runs a suite by name; `all` runs every suite in order.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<Report, SuiteError> {
    if name == "all" {
        let mut claims = Vec::new();
        for s in SUITES.iter().filter(|s| **s != "all") {
            claims.extend(claims_of(s, cfg).expect("listed suite"));
        }
        return Ok(Report::new(name, cfg, claims));
    }
    let claims = claims_of(name, cfg).ok_or_else(|| SuiteError::Unknown(name.to_string()))?;
    Ok(Report::new(name, cfg, claims))
}
