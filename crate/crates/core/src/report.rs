//! Claim results and suite reports.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::tideal::TidealError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Verified,
    VerifiedUpToBound,
    Refuted,
    /// Stopped by the degree bound or the time budget.
    Incomplete,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::VerifiedUpToBound => "verified_up_to_bound",
            Status::Refuted => "refuted",
            Status::Incomplete => "incomplete",
        }
    }

    pub fn is_ok(self) -> bool {
        matches!(self, Status::Verified | Status::VerifiedUpToBound)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClaimResult {
    pub claim_id: String,
    /// What is being claimed, in words.
    pub reference: String,
    pub status: Status,
    /// A refutation of a critical claim fails the suite; non-critical ones
    /// record misprints in displayed formulas.
    pub critical: bool,
    pub dims: BTreeMap<String, u64>,
    pub witness: Option<String>,
    pub detail: String,
    /// Seconds.
    pub wall_time: f64,
}

impl ClaimResult {
    pub fn new(id: impl Into<String>, reference: impl Into<String>) -> ClaimResult {
        ClaimResult {
            claim_id: id.into(),
            reference: reference.into(),
            status: Status::Verified,
            critical: true,
            dims: BTreeMap::new(),
            witness: None,
            detail: String::new(),
            wall_time: 0.0,
        }
    }

    /// `Verified` when `ok`, else `Refuted`.
    pub fn verdict(mut self, ok: bool) -> Self {
        self.status = if ok { Status::Verified } else { Status::Refuted };
        self
    }

    /// `VerifiedUpToBound` when `ok`, else `Refuted`.
    pub fn bounded(mut self, ok: bool) -> Self {
        self.status = if ok { Status::VerifiedUpToBound } else { Status::Refuted };
        self
    }

    pub fn non_critical(mut self) -> Self {
        self.critical = false;
        self
    }

    pub fn dim(mut self, key: &str, v: impl TryInto<u64>) -> Self {
        self.dims.insert(key.to_string(), v.try_into().unwrap_or(u64::MAX));
        self
    }

    pub fn witness(mut self, w: impl Into<String>) -> Self {
        self.witness = Some(w.into());
        self
    }

    pub fn detail(mut self, d: impl Into<String>) -> Self {
        self.detail = d.into();
        self
    }

    pub fn incomplete(id: impl Into<String>, reference: impl Into<String>, err: &TidealError) -> ClaimResult {
        let mut c = ClaimResult::new(id, reference).detail(err.to_string());
        c.status = if matches!(err, TidealError::Budget { .. }) { Status::Incomplete } else { Status::Refuted };
        c
    }
}

/// Runs `f` and stores its wall time; an error becomes an `Incomplete`
/// (budget) or `Refuted` claim.
pub fn timed(id: &str, reference: &str, f: impl FnOnce() -> Result<ClaimResult, TidealError>) -> ClaimResult {
    let start = Instant::now();
    let mut c = f().unwrap_or_else(|e| ClaimResult::incomplete(id, reference, &e));
    c.claim_id = id.to_string();
    if c.reference.is_empty() {
        c.reference = reference.to_string();
    }
    c.wall_time = start.elapsed().as_secs_f64();
    c
}

/// Parameters a suite was run with.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    /// Largest degree `n` for `P_n` work.
    pub degree_bound: usize,
    /// Grassmann truncation for `M_{1,1}(E_k)`.
    pub trunc: usize,
    pub seed: u64,
    pub trials: usize,
    pub budget_seconds: Option<u64>,
    /// Also run the checks that take many minutes.
    pub heavy: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { degree_bound: 6, trunc: 4, seed: 1, trials: 20, budget_seconds: None, heavy: false }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Totals {
    pub claims: usize,
    pub verified: usize,
    pub verified_up_to_bound: usize,
    pub refuted: usize,
    pub refuted_critical: usize,
    pub incomplete: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub config: SuiteConfig,
    pub claims: Vec<ClaimResult>,
    pub totals: Totals,
}

impl Report {
    pub fn new(suite: &str, config: &SuiteConfig, mut claims: Vec<ClaimResult>) -> Report {
        claims.sort_by(|a, b| a.claim_id.cmp(&b.claim_id));
        let mut t = Totals { claims: claims.len(), ..Totals::default() };
        for c in &claims {
            match c.status {
                Status::Verified => t.verified += 1,
                Status::VerifiedUpToBound => t.verified_up_to_bound += 1,
                Status::Refuted => {
                    t.refuted += 1;
                    if c.critical {
                        t.refuted_critical += 1;
                    }
                }
                Status::Incomplete => t.incomplete += 1,
            }
        }
        Report { suite: suite.to_string(), config: config.clone(), claims, totals: t }
    }

    /// 0 when every critical claim holds, 1 on a critical refutation,
    /// 3 when some claim ran out of budget.
    pub fn exit_code(&self) -> i32 {
        if self.totals.refuted_critical > 0 {
            1
        } else if self.totals.incomplete > 0 {
            3
        } else {
            0
        }
    }

    pub fn claim(&self, id: &str) -> Option<&ClaimResult> {
        self.claims.iter().find(|c| c.claim_id == id)
    }

    /// JSON with wall times zeroed, for comparing runs.
    pub fn canonical_json(&self) -> String {
        let mut r = self.clone();
        for c in &mut r.claims {
            c.wall_time = 0.0;
        }
        serde_json::to_string_pretty(&r).expect("report serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("suite {}\n", self.suite);
        for c in &self.claims {
            let flag = if c.status == Status::Refuted && !c.critical { " (non-critical)" } else { "" };
            out.push_str(&format!("{:<22} {}{}  [{:.2}s]\n", c.status.as_str(), c.claim_id, flag, c.wall_time));
            if !c.dims.is_empty() {
                let d: Vec<String> = c.dims.iter().map(|(k, v)| format!("{k}={v}")).collect();
                out.push_str(&format!("    dims: {}\n", d.join(", ")));
            }
            if !c.detail.is_empty() {
                out.push_str(&format!("    {}\n", c.detail));
            }
            if let Some(w) = &c.witness {
                out.push_str(&format!("    witness: {w}\n"));
            }
        }
        let t = &self.totals;
        out.push_str(&format!(
            "{} claims: {} verified, {} verified up to bound, {} refuted ({} critical), {} incomplete\n",
            t.claims, t.verified, t.verified_up_to_bound, t.refuted, t.refuted_critical, t.incomplete
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn totals_and_exit_codes() {
        let cfg = SuiteConfig::default();
        let a = ClaimResult::new("b", "x").verdict(true);
        let b = ClaimResult::new("a", "y").verdict(false).non_critical();
        let r = Report::new("t", &cfg, vec![a.clone(), b]);
        assert_eq!(r.claims[0].claim_id, "a");
        assert_eq!(r.totals.refuted, 1);
        assert_eq!(r.exit_code(), 0);
        let c = ClaimResult::new("c", "z").verdict(false);
        assert_eq!(Report::new("t", &cfg, vec![a.clone(), c]).exit_code(), 1);
        let e = TidealError::Budget { what: "w".into(), n: 7, limit: 6, partial_dim: 0 };
        assert_eq!(Report::new("t", &cfg, vec![a, ClaimResult::incomplete("d", "", &e)]).exit_code(), 3);
    }

    #[test]
    fn json_round_trip_ignores_nothing_but_time() {
        let cfg = SuiteConfig::default();
        let mut c = ClaimResult::new("a", "x").dim("n", 4usize).witness("t1");
        c.wall_time = 1.5;
        let r = Report::new("t", &cfg, vec![c]);
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(r.canonical_json().contains("\"wall_time\": 0.0"));
    }
}
