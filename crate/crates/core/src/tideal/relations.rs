//! Relations among the generators `φ2^(s)`, `φ3^(s)`, `φ22^(s)` of the
//! irreducible pieces of `Γ(V)`: the displayed equalities, the "follows from"
//! claims one degree up, the non-consequences, and the bounded-degree
//! comparison of the proper parts.

use crate::algebras::ut2;
use crate::catalog::{f_basis, phi_p, phi_pq, u2, u22, u22_displayed, u2_displayed};
use crate::exactlin::Rat;
use crate::freealg::{commutator, derangements, NCPoly};

use super::checks::{centrality_separation, Separation};
use super::spaces::{consequences_gamma, identities_gamma, membership_residuals};
use super::{Limits, TidealError};

/// How far an equality `lhs = rhs` holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Level {
    /// As polynomials.
    Exact,
    /// Modulo `T(f_basis)`.
    ModuloBasis,
    /// Modulo `T(f_basis ∪ {hypothesis})`.
    ModuloHypothesis,
    Fails,
}

impl Level {
    pub fn as_str(self) -> &'static str {
        match self {
            Level::Exact => "exact",
            Level::ModuloBasis => "modulo T(fbasis)",
            Level::ModuloHypothesis => "modulo T(fbasis + hypothesis)",
            Level::Fails => "fails",
        }
    }
}

#[derive(Clone, Debug)]
pub struct DisplayedCheck {
    pub id: String,
    pub n: usize,
    pub description: String,
    pub level: Level,
    /// `lhs − rhs` when it is not zero as a polynomial.
    pub residual: Option<String>,
    pub degrees: (Option<usize>, Option<usize>),
}

impl DisplayedCheck {
    /// Degrees of the two sides disagree.
    pub fn degree_mismatch(&self) -> bool {
        self.degrees.0 != self.degrees.1
    }
}

#[derive(Clone, Debug)]
pub struct FollowsCheck {
    pub id: String,
    pub n: usize,
    pub hypothesis: String,
    pub target: String,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct NonConsequence {
    pub id: String,
    pub n: usize,
    pub hypothesis: String,
    pub target: String,
    pub separation: Separation,
    /// The target lies outside the consequences at its multidegree.
    pub exact_non_member: bool,
}

#[derive(Clone, Debug, Default)]
pub struct RelationsReport {
    pub displayed: Vec<DisplayedCheck>,
    pub follows: Vec<FollowsCheck>,
    pub non_consequences: Vec<NonConsequence>,
}

/// Sampling parameters for the separation checks.
#[derive(Clone, Copy, Debug)]
pub struct SeparationParams {
    pub span_degree: u32,
    pub word_bound: usize,
    pub max_samples: usize,
    pub seed: u64,
}

impl Default for SeparationParams {
    fn default() -> Self {
        SeparationParams { span_degree: 2, word_bound: 2, max_samples: 200, seed: 1 }
    }
}

fn t(i: u16) -> NCPoly {
    NCPoly::var(i)
}

fn tt(i: u16, j: u16) -> NCPoly {
    t(i).mul(&t(j))
}

fn sub(f: &NCPoly, images: &[NCPoly]) -> NCPoly {
    f.substitute_list(images)
}

fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}

fn level_of(lhs: &NCPoly, rhs: &NCPoly, hypothesis: &NCPoly, limits: &Limits) -> Result<(Level, Option<String>), TidealError> {
    let diff = lhs.sub(rhs);
    if diff.is_zero() {
        return Ok((Level::Exact, None));
    }
    let residual = Some(diff.to_string());
    let basis = f_basis();
    if membership_residuals(&basis, &diff, limits)?.is_empty() {
        return Ok((Level::ModuloBasis, residual));
    }
    let mut gens = basis;
    gens.push(hypothesis.clone());
    if membership_residuals(&gens, &diff, limits)?.is_empty() {
        return Ok((Level::ModuloHypothesis, residual));
    }
    Ok((Level::Fails, residual))
}

struct Family {
    h2: NCPoly,
    h22: NCPoly,
    h3: NCPoly,
    t2: NCPoly,
    t22: NCPoly,
    t3: NCPoly,
}

fn family(n: usize) -> Family {
    let s = n as u32;
    Family {
        h2: phi_p(2, s - 2).unwrap(),
        h22: phi_pq(2, 2, s - 4).unwrap(),
        h3: phi_p(3, s - 3).unwrap(),
        t2: phi_p(2, s - 1).unwrap(),
        t22: phi_pq(2, 2, s - 3).unwrap(),
        t3: phi_p(3, s - 2).unwrap(),
    }
}

/// The displayed equalities for hypotheses of degree `n`, `n >= 5`.
pub fn displayed_equalities(n: usize, limits: &Limits) -> Result<Vec<DisplayedCheck>, TidealError> {
    if n < 5 {
        return Err(TidealError::Degree(n));
    }
    let f = family(n);
    let s = n as u32;
    let nn = n as i64;
    let u = u2(s);
    let uu = u22(s);
    let mut items: Vec<(&str, String, NCPoly, NCPoly, &NCPoly)> = Vec::new();

    items.push(("phi2_step", "phi2^(n-1) = phi2^(n-2) t1 - t1 phi2^(n-2)".into(), f.t2.clone(), commutator(&f.h2, &t(1)), &f.h2));

    let sign = if n % 2 == 0 { 1 } else { -1 };
    let inner = sub(&u, &[t(1), t(3), tt(1, 2)])
        .sub(&sub(&u, &[t(1), t(2), tt(1, 3)]))
        .add(&t(1).mul(&sub(&u, &[t(1), t(2), t(3)]).sub(&sub(&u, &[t(1), t(3), t(2)]))).scale(&rat(1, nn - 2)))
        .add(&sub(&f.h2, &[t(1), t(2)]).mul(&t(3)).sub(&sub(&f.h2, &[t(1), t(3)]).mul(&t(2))).scale(&rat(nn - 1, 1)));
    items.push(("phi3_from_phi2", "phi3^(n-2) via u2^(n-2) and phi2^(n-2)".into(), f.t3.clone(), inner.scale(&rat(sign, 1)), &f.h2));

    if n % 2 == 1 {
        let rhs = sub(&u, &[t(1), tt(1, 2), t(2)]).add(&f.h2.mul(&t(2)).scale(&rat(2, 1))).sub(&t(1).mul(&sub(&u, &[t(1), t(2), t(2)])));
        items.push(("phi22_from_phi2_odd", "phi22^(n-3) via u2^(n-2), n odd".into(), f.t22.clone(), rhs, &f.h2));
    } else {
        let up = u2(s + 1);
        let rhs = sub(&up, &[t(1), t(2), t(2)])
            .sub(&commutator(&f.h2, &t(2)))
            .scale(&rat(1, nn - 2))
            .sub(&sub(&u, &[t(1), t(2), commutator(&t(1), &t(2))]));
        items.push(("phi22_from_phi2_even", "phi22^(n-3) via u2^(n-1), u2^(n-2), n even".into(), f.t22.clone(), rhs, &f.h2));
    }

    let rhs = t(1).mul(&sub(&uu, &[t(1), t(2), t(2)])).sub(&sub(&uu, &[t(1), tt(1, 2), t(2)]));
    items.push(("phi22_from_phi22", "phi22^(n-3) = t1 u22(t1,t2,t2) - u22(t1,t1t2,t2)".into(), f.t22.clone(), rhs, &f.h22));

    let rhs = sub(&uu, &[t(1), t(2), tt(1, 3)]).sub(&sub(&uu, &[t(1), tt(1, 2), t(3)])).scale(&rat(1, 2));
    items.push((
        "phi3_from_phi22_literal",
        "phi3^(n-3) = (u22(t1,t2,t1t3) - u22(t1,t1t2,t3))/2 as printed".into(),
        f.h3.clone(),
        rhs.clone(),
        &f.h22,
    ));
    items.push(("phi3_from_phi22_shifted", "the same with phi3^(n-2) on the left".into(), f.t3.clone(), rhs, &f.h22));

    let h3 = &f.h3;
    let rhs = t(1)
        .mul(h3)
        .add(&h3.mul(&t(1)))
        .sub(&sub(h3, &[t(1), tt(1, 2), t(3)]))
        .sub(&sub(h3, &[t(1), tt(2, 1), t(3)]));
    items.push(("phi3_from_phi3", "phi3^(n-2) = t1 phi3 + phi3 t1 - phi3(t1,t1t2,t3) - phi3(t1,t2t1,t3)".into(), f.t3.clone(), rhs, &f.h3));

    let rhs = sub(h3, &[t(1), t(2), commutator(&t(1), &t(2))]);
    items.push(("phi22_from_phi3", "phi22^(n-3) = phi3^(n-3)(t1,t2,[t1,t2])".into(), f.t22.clone(), rhs, &f.h3));

    items.push(("u2_closed_form", "u2^(n-2) closed form".into(), u.clone(), u2_displayed(s), &f.h2));
    items.push(("u22_closed_form", "u22^(n-4) closed form".into(), uu.clone(), u22_displayed(s), &f.h22));

    let mut out = Vec::new();
    for (id, description, lhs, rhs, hyp) in items {
        let (level, residual) = level_of(&lhs, &rhs, hyp, limits)?;
        out.push(DisplayedCheck { id: id.to_string(), n, description, level, residual, degrees: (lhs.degree(), rhs.degree()) });
    }
    Ok(out)
}

/// The "follows from" claims and the two non-consequences for hypotheses of degree `n`.
pub fn follows_claims(n: usize, limits: &Limits, sep: &SeparationParams) -> Result<(Vec<FollowsCheck>, Vec<NonConsequence>), TidealError> {
    if n < 5 {
        return Err(TidealError::Degree(n));
    }
    let f = family(n);
    let names = |base: &str, s: usize| format!("{base}^({s})");
    let hyps = [("phi2", n - 2, &f.h2), ("phi22", n - 4, &f.h22), ("phi3", n - 3, &f.h3)];
    let mut follows = Vec::new();
    let mut non = Vec::new();
    for (hname, hs, hyp) in hyps {
        let mut gens = f_basis();
        gens.push(hyp.clone());
        let mut targets = vec![("phi22", n - 3, &f.t22), ("phi3", n - 2, &f.t3)];
        if hname == "phi2" {
            targets.insert(0, ("phi2", n - 1, &f.t2));
        }
        for (tname, ts, target) in targets {
            let holds = membership_residuals(&gens, target, limits)?.is_empty();
            follows.push(FollowsCheck {
                id: format!("follows.{hname}.{tname}.n{n}"),
                n,
                hypothesis: names(hname, hs),
                target: names(tname, ts),
                holds,
            });
        }
        if hname != "phi2" {
            let separation = centrality_separation(hyp, &f.t2, sep.span_degree, sep.word_bound, sep.max_samples, sep.seed)?;
            let exact_non_member = !membership_residuals(&gens, &f.t2, limits)?.is_empty();
            non.push(NonConsequence {
                id: format!("not_follows.{hname}.phi2.n{n}"),
                n,
                hypothesis: names(hname, hs),
                target: names("phi2", n - 1),
                separation,
                exact_non_member,
            });
        }
    }
    Ok((follows, non))
}

pub fn consequence_relations(n: usize, limits: &Limits, sep: &SeparationParams) -> Result<RelationsReport, TidealError> {
    let displayed = displayed_equalities(n, limits)?;
    let (follows, non_consequences) = follows_claims(n, limits, sep)?;
    Ok(RelationsReport { displayed, follows, non_consequences })
}

/// One bounded-degree comparison of `T(f_basis ∪ {h}) ∩ Γ_m` with its expected value.
#[derive(Clone, Debug)]
pub struct ProperPartCheck {
    pub hypothesis: String,
    pub m: usize,
    pub expected: &'static str,
    pub dim_gamma: usize,
    pub dim_consequences: usize,
    pub dim_expected: usize,
    pub equal: bool,
}

/// For the degree-4 hypotheses `φ2^(2)`, `φ3^(1)`, `φ22^(0)`: adjoining `φ2`
/// gives all of `Γ_m`; adjoining either of the others gives `T(UT2) ∩ Γ_m`.
pub fn proper_part_checks(m: usize, limits: &Limits) -> Result<Vec<ProperPartCheck>, TidealError> {
    let ut = identities_gamma(&ut2(), m, limits)?;
    let hyps = [("phi2^(2)", phi_p(2, 2).unwrap()), ("phi3^(1)", phi_p(3, 1).unwrap()), ("phi22^(0)", phi_pq(2, 2, 0).unwrap())];
    let mut out = Vec::new();
    for (name, h) in hyps {
        let mut gens = f_basis();
        gens.push(h);
        let c = consequences_gamma(&gens, m, limits)?;
        let dim_gamma = derangements(m) as usize;
        let (expected, dim_expected, equal) = if name == "phi2^(2)" {
            ("all of Gamma_m", dim_gamma, c.dim() == dim_gamma)
        } else {
            ("T(UT2) in Gamma_m", ut.dim(), c.space.subspace_equal(&ut.space)?)
        };
        out.push(ProperPartCheck { hypothesis: name.into(), m, expected, dim_gamma, dim_consequences: c.dim(), dim_expected, equal });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn displayed_equalities_at_degree_five() {
        let r = displayed_equalities(5, &Limits::default()).unwrap();
        let get = |id: &str| r.iter().find(|c| c.id == id).unwrap();
        assert_eq!(get("phi2_step").level, Level::Exact);
        assert!(get("phi3_from_phi22_literal").degree_mismatch());
        assert_eq!(get("phi3_from_phi22_literal").level, Level::Fails);
        for c in &r {
            if !c.degree_mismatch() {
                assert!(c.level <= Level::ModuloHypothesis, "{} {:?}", c.id, c.residual);
            }
        }
    }

    #[test]
    fn follows_at_degree_five() {
        let sep = SeparationParams { max_samples: 20, ..Default::default() };
        let (f, non) = follows_claims(5, &Limits::default(), &sep).unwrap();
        assert_eq!(f.len(), 7);
        assert!(f.iter().all(|c| c.holds), "{f:?}");
        assert_eq!(non.len(), 2);
        for c in &non {
            assert!(c.separation.separates(), "{c:?}");
            assert!(c.exact_non_member);
        }
    }

    #[test]
    fn proper_parts_at_degree_five() {
        let r = proper_part_checks(5, &Limits::default()).unwrap();
        assert_eq!(r.len(), 3);
        assert!(r.iter().all(|c| c.equal), "{r:?}");
        assert_eq!(r[1].dim_expected, 40);
    }
}
