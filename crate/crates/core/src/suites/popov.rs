//! The basis `[[t1,t2]^2,t1]`, `[[t1,t2],[t3,t4],t5]` of `T(M_{1,1}(E))`
//! against `fbasis`, the truncations `M_{1,1}(E_k)`, and the `(3,3)` modules.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebras::{m11_over_grassmann, FinDimAlgebra};
use crate::catalog::{f_basis, hall, popov_basis, standard};
use crate::exactlin::Rat;
use crate::freealg::{commutator, NCPoly, NCWord};
use crate::report::{timed, ClaimResult, SuiteConfig};
use crate::tideal::spaces::{consequences_pn, gamma_context, identities_pn_m11, m11_witness, pn_context, PnSpace};
use crate::tideal::young::{young_symmetrizer_apply, Partition, Tableau};
use crate::tideal::{Limits, TidealError};

use super::clip;

const GAMMA_SAMPLE: usize = 24;
const RANDOM_SAMPLE: usize = 10;

pub fn run(cfg: &SuiteConfig, l: &Limits) -> Vec<ClaimResult> {
    let mut out = Vec::new();
    for n in 5..=cfg.degree_bound {
        out.push(timed(&format!("popov.contained_in_fbasis.n{n}"), "T(popov) ∩ P_n ⊆ T(fbasis) ∩ P_n", || contained(&f_basis(), n, l)));
        out.push(timed(&format!("popov.follows_from_first.n{n}"), "T(popov) ∩ P_n ⊆ T([[t1,t2][t3,t4],t5]) ∩ P_n", || contained(&f_basis()[..1], n, l)));
    }
    out.push(timed("popov.generator_in_consequences.n5", "the full linearization of [[t1,t2]^2,t1] lies in T(popov) ∩ P_5", || {
        let c = consequences_pn(&popov_basis(), 5, l)?;
        Ok(ClaimResult::new("", "").dim("consequences", c.dim()).verdict(c.contains(&hall().full_linearization())?))
    }));
    let mut ks = vec![3, 4];
    if !ks.contains(&cfg.trunc) {
        ks.push(cfg.trunc);
    }
    for k in ks {
        out.push(timed(&format!("popov.vanishes_on_m11.k{k}"), "the popov polynomials vanish on every basis tuple of M11(E_k)", || vanishes_on_m11(k, l)));
    }
    let a4 = m11_over_grassmann(4);
    out.push(timed("popov.m11_witness.s4", "s4 is not an identity of M11(E)", || witness_claim(&standard(4), 4, &a4)));
    out.push(timed("popov.m11_witness.commutator_of_product", "[[t1,t2][t3,t4],t5] is not an identity of M11(E)", || witness_claim(&f_basis()[0], 4, &a4)));
    out.push(timed("popov.m11_witness.square_not_central", "[t1,t2]^2 is not central for M11(E)", || {
        let f = commutator(&commutator(&NCPoly::var(1), &NCPoly::var(2)).pow(2), &NCPoly::var(3));
        witness_claim(&f.full_linearization(), 5, &m11_over_grassmann(5))
    }));
    if cfg.degree_bound >= 6 {
        out.extend(young_claims(cfg.seed, l));
    }
    out
}

fn contained(gens: &[NCPoly], n: usize, l: &Limits) -> Result<ClaimResult, TidealError> {
    let p = consequences_pn(&popov_basis(), n, l)?;
    let f = consequences_pn(gens, n, l)?;
    let ctx = pn_context(n);
    let outside = p.space.rows().into_iter().find(|r| !f.space.contains_row(r)).map(|r| ctx.poly(r));
    let c = ClaimResult::new("", "").dim("popov", p.dim()).dim("target", f.dim()).verdict(outside.is_none());
    Ok(match outside {
        Some(w) => c.witness(clip(w, 400)),
        None => c,
    })
}

fn vanishes_on_m11(k: usize, l: &Limits) -> Result<ClaimResult, TidealError> {
    let alg = m11_over_grassmann(k);
    let ids = identities_pn_m11(k, 5, l)?;
    let mut comps = 0;
    for g in popov_basis() {
        for comp in g.linearization_components() {
            comps += 1;
            let in_space = ids.contains(&comp)?;
            if let Some(t) = m11_witness(&comp, k, &alg) {
                return Ok(ClaimResult::new("", "").verdict(false).witness(tuple_label(&alg, &t)));
            }
            if !in_space {
                return Ok(ClaimResult::new("", "").verdict(false).witness(clip(comp, 300)));
            }
        }
    }
    Ok(ClaimResult::new("", "").dim("components", comps).dim("identities_p5", ids.dim()).verdict(true))
}

fn tuple_label(alg: &FinDimAlgebra, t: &[usize]) -> String {
    t.iter().map(|&i| alg.labels()[i].clone()).collect::<Vec<_>>().join(", ")
}

fn witness_claim(f: &NCPoly, k: usize, alg: &FinDimAlgebra) -> Result<ClaimResult, TidealError> {
    let comps: Vec<NCPoly> = if f.is_multilinear(f.max_variable() as usize) { vec![f.clone()] } else { f.linearization_components() };
    for comp in comps {
        if let Some(t) = m11_witness(&comp, k, alg) {
            return Ok(ClaimResult::new("", "").verdict(true).witness(tuple_label(alg, &t)));
        }
    }
    Ok(ClaimResult::new("", "").verdict(false).detail(format!("no nonzero basis tuple in M11(E_{k})")))
}

fn random_rat(rng: &mut ChaCha8Rng) -> Rat {
    Rat::new(rng.gen_range(1..=7) * if rng.gen_bool(0.5) { 1 } else { -1 }, rng.gen_range(1..=3))
}

fn young_claims(seed: u64, l: &Limits) -> Vec<ClaimResult> {
    let shape = || Partition::new(vec![3, 3]).expect("valid partition");
    let fillings = [("rows", vec![1, 2, 3, 4, 5, 6]), ("columns", vec![1, 3, 5, 2, 4, 6])];
    let popov = match consequences_pn(&popov_basis(), 6, l) {
        Ok(p) => p,
        Err(e) => return vec![ClaimResult::incomplete("popov.young33", "(3,3) modules", &e)],
    };
    let gamma = gamma_context(6);
    let step = gamma.dim() / GAMMA_SAMPLE;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut proper: Vec<(String, NCPoly)> = (0..GAMMA_SAMPLE).map(|i| (gamma.elements[i * step].to_string(), gamma.elements[i * step].poly.clone())).collect();
    for i in 0..RANDOM_SAMPLE {
        let picks: Vec<&_> = gamma.elements.choose_multiple(&mut rng, 4).collect();
        let f = picks.iter().fold(NCPoly::zero(), |acc, g| acc.axpy(&random_rat(&mut rng), &g.poly));
        proper.push((format!("random proper #{i}"), f));
    }
    let words = pn_context(6).universe.clone();
    let general: Vec<(String, NCPoly)> = (0..RANDOM_SAMPLE)
        .map(|i| {
            let f = (0..5).fold(NCPoly::zero(), |acc, _| {
                let w: NCWord = words.key(rng.gen_range(0..words.len() as u32)).clone();
                acc.add(&NCPoly::monomial(w, random_rat(&mut rng)))
            });
            (format!("random P6 #{i}"), f)
        })
        .collect();
    let mut out = Vec::new();
    for (name, filling) in fillings {
        let d = match Tableau::new(shape(), filling) {
            Ok(d) => d,
            Err(e) => return vec![ClaimResult::incomplete("popov.young33", "(3,3) modules", &e)],
        };
        out.push(timed(&format!("popov.young33.{name}"), "e(d)f ∈ T(popov) for λ = (3,3) and proper f", || young_check(&d, &proper, &popov)));
        out.push(timed(&format!("popov.young33_general.{name}"), "e(d)f ∈ T(popov) for λ = (3,3) and f anywhere in P_6", || {
            Ok(young_check(&d, &general, &popov)?.non_critical().detail("outside Γ_6 the (3,3) module need not vanish; reported for information"))
        }));
    }
    out
}

fn young_check(d: &Tableau, fs: &[(String, NCPoly)], popov: &PnSpace) -> Result<ClaimResult, TidealError> {
    let mut nonzero = 0;
    let mut failed = Vec::new();
    for (label, f) in fs {
        let e = young_symmetrizer_apply(d, f, 7)?;
        if !e.is_zero() {
            nonzero += 1;
        }
        if !popov.contains(&e)? {
            failed.push(label.clone());
        }
    }
    let c = ClaimResult::new("", "").dim("samples", fs.len()).dim("nonzero_images", nonzero).dim("outside", failed.len());
    Ok(if failed.is_empty() { c.verdict(true) } else { c.verdict(false).witness(failed.join(", ")) })
}
