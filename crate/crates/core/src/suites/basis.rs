//! The basis `[[t1,t2][t3,t4],t5]`, `[t1,t2][t3,t4][t5,t6]`, `s4` of the
//! identities of `F`, compared with the algebra `A1` at bounded degree.

use crate::algebras::{evaluate_mat, generic_f, gordienko_a1};
use crate::catalog::{f_basis, phi_p, phi_pq};
use crate::exactlin::Rat;
use crate::freealg::{commutator, derangements, jordan, with_tail, NCPoly};
use crate::report::{timed, ClaimResult, SuiteConfig};
use crate::tideal::checks::target_values;
use crate::tideal::spaces::{compare_spaces, consequences_pn, gamma_context, gamma_of, identities_pn, membership_residuals, proper_dimension};
use crate::tideal::young::gamma_v_dim;
use crate::tideal::{Limits, TidealError};

use super::{clip, show};

pub fn run(cfg: &SuiteConfig, l: &Limits) -> Vec<ClaimResult> {
    let mut out = Vec::new();
    for n in 2..=l.gamma_degree.min(7) {
        out.push(timed(&format!("basis.gamma_dim.n{n}"), "dim Γ_n equals the derangement number", || gamma_dim(n, l)));
    }
    for n in 4..=cfg.degree_bound.max(4) {
        out.extend(theorem_at(n, l));
    }
    for s in 0..=2 {
        out.push(timed(&format!("basis.phi4_in_ideal.s{s}"), "φ4^(s) lies in T(fbasis)", || phi4_in_ideal(s, l)));
    }
    for s in 1..=2 {
        out.push(timed(&format!("basis.phi4_expansion.s{s}"), "(1/4)φ4^(s) as six products, modulo T([[t1,t2][t3,t4],t5])", || phi4_expansion(s, l)));
    }
    for s in 0..=2 {
        out.push(timed(&format!("basis.phi4_recursion.s{s}"), "φ4^(s+1) = φ4^(s)∘t1 − φ4^(s)(t1,t1t2,t3,t4) − φ4^(s)(t1,t2t1,t3,t4) modulo the first two generators", || phi4_recursion(s, l)));
    }
    out.push(timed("basis.higher_phi_vanish", "φ5^(1) and φ(3,2)^(1) follow from [t1,t2][t3,t4][t5,t6]", || higher_phi(l)));
    for s in 0..=3 {
        out.push(timed(&format!("basis.nonzero.phi2.s{s}"), "φ2^(s)(C1,C2) ≠ 0", || nonzero(phi_p(2, s), 2)));
        out.push(timed(&format!("basis.nonzero.phi22.s{s}"), "φ(2,2)^(s)(C1,C2) ≠ 0", || nonzero(phi_pq(2, 2, s), 2)));
        if s > 0 {
            out.push(timed(&format!("basis.nonzero.phi3.s{s}"), "φ3^(s)(C1,C2,[C1,C2]) ≠ 0", || nonzero(phi_p(3, s), 3)));
        }
    }
    out
}

fn gamma_dim(n: usize, l: &Limits) -> Result<ClaimResult, TidealError> {
    let rank = proper_dimension(n, l)?;
    let listed = gamma_context(n).dim();
    let d = derangements(n);
    Ok(ClaimResult::new("", "")
        .dim("kernel_rank", rank)
        .dim("basis_size", listed)
        .dim("derangements", d)
        .verdict(rank as u64 == d && listed as u64 == d))
}

fn theorem_at(n: usize, l: &Limits) -> Vec<ClaimResult> {
    let eq_id = format!("basis.pi_equal.n{n}");
    let codim_id = format!("basis.gamma_codim.n{n}");
    let eq_ref = "T(fbasis) ∩ P_n = T(A1) ∩ P_n";
    let codim_ref = "dim Γ_n − dim(T(fbasis) ∩ Γ_n) equals the hook-length sum for Γ_n(V)";
    let start = std::time::Instant::now();
    let c = match consequences_pn(&f_basis(), n, l) {
        Ok(c) => c,
        Err(e) => return vec![ClaimResult::incomplete(eq_id, eq_ref, &e), ClaimResult::incomplete(codim_id, codim_ref, &e)],
    };
    let t_cons = start.elapsed().as_secs_f64();
    let mut eq = timed(&eq_id, eq_ref, || {
        let i = identities_pn(&gordienko_a1(), n, l)?;
        let cmp = compare_spaces(&c, &i);
        let r = ClaimResult::new("", "").dim("consequences", cmp.dim_consequences).dim("identities", cmp.dim_identities).verdict(cmp.equal);
        Ok(match cmp.witness {
            Some(w) => r.witness(clip(w, 400)),
            None => r,
        })
    });
    eq.wall_time += t_cons;
    let codim = timed(&codim_id, codim_ref, || {
        let g = gamma_of(&c);
        let hook = gamma_v_dim(n);
        Ok(ClaimResult::new("", "").dim("gamma", g.space.ambient_dim()).dim("codim", g.codim()).dim("hook_sum", hook as u64).verdict(g.codim() as u128 == hook))
    });
    vec![eq, codim]
}

fn t(i: u16) -> NCPoly {
    NCPoly::var(i)
}

fn phi4(s: u32) -> NCPoly {
    phi_p(4, s).expect("φ4 is defined for every s")
}

/// How far `diff = 0` holds: exactly, or modulo each generator set in turn.
fn level(diff: &NCPoly, sets: &[(&str, Vec<NCPoly>)], l: &Limits) -> Result<(Option<String>, Option<NCPoly>), TidealError> {
    if diff.is_zero() {
        return Ok((Some("exact".into()), None));
    }
    let mut last = None;
    for (name, gens) in sets {
        let res = membership_residuals(gens, diff, l)?;
        if res.is_empty() {
            return Ok((Some(format!("modulo {name}")), None));
        }
        last = res.into_iter().next();
    }
    Ok((None, last))
}

fn leveled(r: (Option<String>, Option<NCPoly>)) -> ClaimResult {
    let c = ClaimResult::new("", "");
    match r {
        (Some(lv), _) => c.detail(format!("holds {lv}")).verdict(true),
        (None, res) => {
            let c = c.detail("fails modulo every listed generator set").verdict(false);
            match res {
                Some(p) => c.witness(format!("residual {}", clip(p, 400))),
                None => c,
            }
        }
    }
}

fn phi4_in_ideal(s: u32, l: &Limits) -> Result<ClaimResult, TidealError> {
    let res = membership_residuals(&f_basis(), &phi4(s), l)?;
    let c = ClaimResult::new("", "").verdict(res.is_empty());
    Ok(match res.first() {
        Some(p) => c.witness(clip(p, 400)),
        None => c,
    })
}

fn first_two() -> Vec<NCPoly> {
    f_basis()[..2].to_vec()
}

fn phi4_expansion(s: u32, l: &Limits) -> Result<ClaimResult, TidealError> {
    let c = |i, j| commutator(&t(i), &t(j));
    let tail = |i, j| with_tail(&c(i, j), &t(1), s);
    let sign = Rat::from_int(if s % 2 == 0 { 1 } else { -1 });
    let six = c(1, 2)
        .mul(&tail(3, 4))
        .add(&tail(3, 4).mul(&c(1, 2)).scale(&sign))
        .add(&c(2, 3).mul(&tail(1, 4)))
        .add(&tail(1, 4).mul(&c(2, 3)).scale(&sign))
        .sub(&c(2, 4).mul(&tail(1, 3)))
        .sub(&tail(1, 3).mul(&c(2, 4)).scale(&sign));
    let diff = phi4(s).scale(&Rat::new(1, 4)).sub(&six);
    let sets = [("T([[t1,t2][t3,t4],t5])", f_basis()[..1].to_vec()), ("T(fbasis)", f_basis())];
    Ok(leveled(level(&diff, &sets, l)?).non_critical())
}

fn phi4_recursion(s: u32, l: &Limits) -> Result<ClaimResult, TidealError> {
    let p = phi4(s);
    let rhs = jordan(&p, &t(1))
        .sub(&p.substitute_list(&[t(1), t(1).mul(&t(2)), t(3), t(4)]))
        .sub(&p.substitute_list(&[t(1), t(2).mul(&t(1)), t(3), t(4)]));
    let diff = phi4(s + 1).sub(&rhs);
    let sets = [("the first two generators", first_two()), ("T(fbasis)", f_basis())];
    Ok(leveled(level(&diff, &sets, l)?).non_critical())
}

fn higher_phi(l: &Limits) -> Result<ClaimResult, TidealError> {
    let gens = &f_basis()[1..2];
    let mut bad = Vec::new();
    for (name, f) in [("phi5^(1)", phi_p(5, 1)), ("phi32^(1)", phi_pq(3, 2, 1))] {
        let f = f.expect("defined");
        if !membership_residuals(gens, &f, l)?.is_empty() {
            bad.push(name);
        }
    }
    let c = ClaimResult::new("", "").verdict(bad.is_empty());
    Ok(if bad.is_empty() { c } else { c.witness(bad.join(", ")) })
}

fn nonzero(f: Option<NCPoly>, nvars: usize) -> Result<ClaimResult, TidealError> {
    let f = f.expect("defined");
    let vals = if nvars == 2 {
        let (c1, c2) = generic_f();
        vec![c1, c2]
    } else {
        target_values(nvars)
    };
    let v = evaluate_mat(&f, &vals)?;
    Ok(ClaimResult::new("", "").verdict(!v.is_zero()).witness(show(&v)))
}
