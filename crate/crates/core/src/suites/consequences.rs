//! Relations among `φ2^(s)`, `φ3^(s)`, `φ22^(s)` modulo `T(fbasis)`, and the
//! proper parts obtained by adjoining one of them.

use std::time::Instant;

use crate::report::{ClaimResult, Status, SuiteConfig};
use crate::tideal::relations::{displayed_equalities, follows_claims, proper_part_checks, Level, SeparationParams};
use crate::tideal::Limits;

use super::clip;

pub fn run(cfg: &SuiteConfig, l: &Limits) -> Vec<ClaimResult> {
    let sep = SeparationParams { seed: cfg.seed, ..SeparationParams::default() };
    let mut out = Vec::new();
    for n in 5..=cfg.degree_bound.min(6) {
        out.extend(displayed(n, l));
        out.extend(follows(n, l, &sep));
    }
    let top = if cfg.heavy { cfg.degree_bound.min(6) } else { cfg.degree_bound.min(5) };
    for m in 5..=top {
        out.extend(proper_parts(m, l));
    }
    out
}

fn spread(mut claims: Vec<ClaimResult>, start: Instant) -> Vec<ClaimResult> {
    let per = start.elapsed().as_secs_f64() / claims.len().max(1) as f64;
    for c in &mut claims {
        c.wall_time = per;
    }
    claims
}

fn displayed(n: usize, l: &Limits) -> Vec<ClaimResult> {
    let start = Instant::now();
    let id = format!("consequences.displayed.n{n}");
    let checks = match displayed_equalities(n, l) {
        Ok(c) => c,
        Err(e) => return vec![ClaimResult::incomplete(id, "displayed equalities", &e)],
    };
    let claims = checks
        .into_iter()
        .map(|d| {
            let deg = |x: Option<usize>| x.map_or("-".to_string(), |v| v.to_string());
            let mut c = ClaimResult::new(format!("consequences.displayed.{}.n{n}", d.id), d.description.clone())
                .non_critical()
                .verdict(d.level != Level::Fails);
            let mut detail = format!("holds {}", d.level.as_str());
            if d.level == Level::Fails {
                detail = "fails modulo T(fbasis + hypothesis)".into();
            }
            if d.degree_mismatch() {
                detail.push_str(&format!("; the two sides have degrees {} and {}", deg(d.degrees.0), deg(d.degrees.1)));
            }
            c = c.detail(detail);
            if let (Level::Fails, Some(r)) = (d.level, &d.residual) {
                c = c.witness(clip(r, 400));
            }
            c
        })
        .collect();
    spread(claims, start)
}

fn follows(n: usize, l: &Limits, sep: &SeparationParams) -> Vec<ClaimResult> {
    let start = Instant::now();
    let (f, non) = match follows_claims(n, l, sep) {
        Ok(r) => r,
        Err(e) => return vec![ClaimResult::incomplete(format!("consequences.follows.n{n}"), "follows-from claims", &e)],
    };
    let mut claims: Vec<ClaimResult> = f
        .into_iter()
        .map(|c| ClaimResult::new(format!("consequences.{}", c.id), format!("{} follows from {} modulo T(fbasis)", c.target, c.hypothesis)).verdict(c.holds))
        .collect();
    for c in non {
        let s = &c.separation;
        let ok = s.separates() && c.exact_non_member;
        let mut r = ClaimResult::new(format!("consequences.{}", c.id), format!("{} does not follow from {}", c.target, c.hypothesis))
            .dim("samples", s.samples)
            .detail(format!(
                "separation witness: hypothesis strongly central on {} substitutions{}, target central: {}; exact non-member at its degree: {}",
                s.samples,
                if s.exhaustive { " (all basis tuples)" } else { " (seeded sample)" },
                s.target_central,
                c.exact_non_member
            ))
            .verdict(ok);
        if ok && !s.exhaustive {
            r.status = Status::VerifiedUpToBound;
        }
        if let Some(ce) = &s.counterexample {
            r = r.witness(ce.join(", "));
        }
        claims.push(r);
    }
    spread(claims, start)
}

fn proper_parts(m: usize, l: &Limits) -> Vec<ClaimResult> {
    let start = Instant::now();
    let checks = match proper_part_checks(m, l) {
        Ok(c) => c,
        Err(e) => return vec![ClaimResult::incomplete(format!("consequences.proper_part.m{m}"), "proper parts", &e)],
    };
    let claims = checks
        .into_iter()
        .map(|c| {
            let name = c.hypothesis.replace("^(", "_s").replace(')', "");
            ClaimResult::new(format!("consequences.proper_part.{name}.m{m}"), format!("T(fbasis + {}) ∩ Γ_m is {}", c.hypothesis, c.expected))
                .dim("gamma", c.dim_gamma)
                .dim("consequences", c.dim_consequences)
                .dim("expected", c.dim_expected)
                .verdict(c.equal)
        })
        .collect();
    spread(claims, start)
}
