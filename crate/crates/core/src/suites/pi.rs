//! Comparisons of consequence spaces with identity spaces: `UT2`,
//! `M_{1,1}(E_k)` and the proper part of `T(M_{1,1}(E))`.

use crate::algebras::ut2;
use crate::catalog::popov_basis;
use crate::freealg::{commutator, NCPoly};
use crate::report::{timed, ClaimResult, SuiteConfig};
use crate::tideal::spaces::{compare_spaces, consequences_gamma, consequences_pn, identities_pn_m11, pi_equal_at_degree, PiComparison};
use crate::tideal::young::{gamma_w_dim, GammaWReading};
use crate::tideal::{Limits, TidealError};

use super::clip;

pub fn run(cfg: &SuiteConfig, l: &Limits) -> Vec<ClaimResult> {
    let mut out = vec![timed("pi.ut2_vs_commutativity.n3", "[t1,t2] and UT2 differ at degree 3", || {
        let r = pi_equal_at_degree(&[c(1, 2)], &ut2(), 3, l)?;
        Ok(comparison(r, false))
    })];
    for n in 4..=5.min(cfg.degree_bound) {
        out.push(timed(&format!("pi.ut2_basis.n{n}"), "T([t1,t2][t3,t4]) ∩ P_n = T(UT2) ∩ P_n", || {
            let gens = [c(1, 2).mul(&c(3, 4))];
            Ok(comparison(pi_equal_at_degree(&gens, &ut2(), n, l)?, true))
        }));
    }
    for n in 4..=cfg.degree_bound {
        out.push(timed(&format!("pi.m11_popov.n{n}"), "T(popov) ∩ P_n = T(M11(E)) ∩ P_n, computed with n odd generators", || {
            let cons = consequences_pn(&popov_basis(), n, l)?;
            let ids = identities_pn_m11(n, n, l)?;
            Ok(comparison(compare_spaces(&cons, &ids), true))
        }));
    }
    let n = cfg.degree_bound;
    out.push(timed(&format!("pi.truncation.n{n}"), "dim T(M11(E_k)) ∩ P_n as k grows, and where it stabilizes", || truncation(n, cfg.trunc, l)));
    let top = if cfg.heavy { cfg.degree_bound.max(7) } else { cfg.degree_bound };
    for n in 4..=top {
        out.push(timed(&format!("pi.gamma_w.n{n}"), "hook-length sum for Γ_n(W) against dim Γ_n − dim(T(popov) ∩ Γ_n)", || gamma_w(n, l)));
    }
    out
}

fn c(i: u16, j: u16) -> NCPoly {
    commutator(&NCPoly::var(i), &NCPoly::var(j))
}

fn comparison(r: PiComparison, expect_equal: bool) -> ClaimResult {
    let c = ClaimResult::new("", "")
        .dim("consequences", r.dim_consequences)
        .dim("identities", r.dim_identities)
        .verdict(r.equal == expect_equal);
    match r.witness {
        Some(w) => c.witness(clip(w, 400)),
        None => c,
    }
}

fn truncation(n: usize, trunc: usize, l: &Limits) -> Result<ClaimResult, TidealError> {
    let mut dims = Vec::new();
    for k in 1..=n {
        dims.push(identities_pn_m11(k, n, l)?.dim());
    }
    let full = *dims.last().unwrap();
    let stable = dims.iter().position(|&d| d == full).unwrap() + 1;
    let popov = consequences_pn(&popov_basis(), n, l)?.dim();
    let mut c = ClaimResult::new("", "");
    for (k, d) in dims.iter().enumerate() {
        c = c.dim(&format!("k{}", k + 1), *d);
    }
    let monotone = dims.windows(2).all(|w| w[0] >= w[1]);
    let adequate = if trunc >= stable { "adequate" } else { "too small" };
    Ok(c.dim("stable_from_k", stable)
        .dim("popov_consequences", popov)
        .detail(format!("configured truncation k = {trunc} is {adequate} at degree {n}"))
        .verdict(monotone && full == popov))
}

fn gamma_w(n: usize, l: &Limits) -> Result<ClaimResult, TidealError> {
    let g = consequences_gamma(&popov_basis(), n, l)?;
    let codim = g.codim() as u128;
    let all = gamma_w_dim(n, GammaWReading::AllIndices);
    let defined = gamma_w_dim(n, GammaWReading::DefinedOnly);
    let odd = gamma_w_dim(n, GammaWReading::OddColumnOmitted);
    let readings = [("all indices", all), ("defined only", defined), ("odd column omitted", odd)];
    let matching: Vec<&str> = readings.iter().filter(|(_, d)| *d == codim).map(|(r, _)| *r).collect();
    let detail = if matching.is_empty() { "no reading matches".to_string() } else { format!("matching reading: {}", matching.join(", ")) };
    Ok(ClaimResult::new("", "")
        .dim("codim", codim as u64)
        .dim("all_indices", all as u64)
        .dim("defined_only", defined as u64)
        .dim("odd_column_omitted", odd as u64)
        .detail(detail)
        .verdict(!matching.is_empty()))
}

