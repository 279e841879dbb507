//! Identities of `F` and the behaviour of commutators in `F`.

use crate::algebras::{evaluate_mat, generic_f, is_central, is_strongly_central_bounded, MatSC};
use crate::catalog::{f_basis, standard};
use crate::exactlin::Rat;
use crate::freealg::{commutator, commutator_power_expansion, power_commutator_expansion, NCPoly};
use crate::report::{timed, ClaimResult, SuiteConfig};
use crate::supercomm::f_vars::*;
use crate::supercomm::{Alphabet, SCPoly};
use crate::tideal::checks::{formula_span, generator_commutators, product_identity_formulas, randomized_identity_check, s4_on_span, span_basis, spanning_set, Labeled};
use crate::tideal::spaces::is_consequence;
use crate::tideal::{Limits, TidealError};

use super::show;

/// Total degree of the spanning elements substituted into identities.
const SPAN_DEGREE: u32 = 4;
const TUPLE_BUDGET: usize = 2000;

pub fn run(cfg: &SuiteConfig) -> Vec<ClaimResult> {
    let [fa, fb] = product_identity_formulas();
    let names = ["commutator_of_product", "three_commutators", "s4"];
    let mut out = vec![
        timed("identities.span.commutator_of_product", "[[t1,t2][t3,t4],t5] vanishes on the span of C1^a C2^b u", || span_claim(&fa)),
        timed("identities.span.three_commutators", "[t1,t2][t3,t4][t5,t6] vanishes on the span of C1^a C2^b u", || span_claim(&fb)),
        timed("identities.span.s4", "s4 vanishes on every 4-subset of a basis of the span of C1^a C2^b u", s4_span_claim),
    ];
    for (f, name) in f_basis().iter().zip(names) {
        let id = format!("identities.random.{name}");
        out.push(timed(&id, "identity test on generators, basis tuples and random combinations", || random_claim(f, cfg)));
    }
    out.extend([
        timed("identities.split_algebra_s4", "s4(y1 e12, y1' e21, y2 e12, y2' e21) = 4 y1y1'y2y2' (e11 + e22)", split_algebra),
        timed("identities.commutator_triples_vanish", "products of three left-normed commutators of degree <= 3 vanish in F", triples_vanish),
        timed("identities.commutator_pairs_strongly_central", "products of two left-normed commutators of degree <= 3 are strongly central", pairs_central),
        timed("identities.monomial_commutator_products", "C1^n C2^m u1…ur = 0 exactly when r >= 3", monomial_products),
        timed("identities.derivation_form", "[t1,t2,t5][t3,t4] + [t1,t2][t3,t4,t5] follows from [[t1,t2][t3,t4],t5]", derivation_form),
        timed("identities.power_expansions", "[z^n,b] and [a,b]z^n expansions in the free algebra", power_expansions),
    ]);
    out
}

fn span_claim(f: &crate::tideal::checks::Formula) -> Result<ClaimResult, TidealError> {
    let span = span_basis(spanning_set(SPAN_DEGREE));
    let values = formula_span(f, &span)?;
    let c = ClaimResult::new("", "")
        .dim("span_degree", SPAN_DEGREE)
        .dim("span_basis", span.len())
        .dim("value_span", values.len())
        .bounded(values.is_empty());
    Ok(match values.first() {
        Some(v) => c.witness(format!("{} = {}", v.label, show(&v.value))),
        None => c,
    })
}

fn s4_span_claim() -> Result<ClaimResult, TidealError> {
    let (count, witness) = s4_on_span(SPAN_DEGREE);
    let c = ClaimResult::new("", "").dim("span_degree", SPAN_DEGREE).dim("subsets", count).bounded(witness.is_none());
    Ok(match witness {
        Some(w) => c.witness(w.join(", ")),
        None => c,
    })
}

fn random_claim(f: &NCPoly, cfg: &SuiteConfig) -> Result<ClaimResult, TidealError> {
    let r = randomized_identity_check(f, SPAN_DEGREE, cfg.trials, cfg.seed, TUPLE_BUDGET)?;
    let c = ClaimResult::new("", "").dim("tuples", r.tuples).dim("trials", r.trials);
    let c = if r.exhaustive { c.verdict(r.holds) } else { c.bounded(r.holds) };
    Ok(match r.witness {
        Some((labels, v)) => c.witness(format!("({}) -> {}", labels.join(", "), show(&v))),
        None => c,
    })
}

fn split_algebra() -> Result<ClaimResult, TidealError> {
    let alpha = Alphabet::default_f();
    let z = SCPoly::zero(&alpha);
    let e12 = |p: SCPoly| MatSC::from_rows(vec![vec![z.clone(), p], vec![z.clone(), z.clone()]]);
    let e21 = |p: SCPoly| MatSC::from_rows(vec![vec![z.clone(), z.clone()], vec![p, z.clone()]]);
    let vals = [e12(y1()), e21(y1p()), e12(y2()), e21(y2p())];
    let v = evaluate_mat(&standard(4), &vals)?;
    let expect = MatSC::scalar(2, &(&(&(&y1() * &y1p()) * &y2()) * &y2p()).scale(&Rat::from_int(4)));
    Ok(ClaimResult::new("", "").verdict(v == expect).witness(show(&v)))
}

fn low_commutators() -> Vec<Labeled> {
    let mut v = generator_commutators(2);
    v.extend(generator_commutators(3));
    v
}

fn triples_vanish() -> Result<ClaimResult, TidealError> {
    let cs = low_commutators();
    let mut checked = 0;
    for a in &cs {
        for b in &cs {
            for c in &cs {
                checked += 1;
                if !(&(&a.value * &b.value) * &c.value).is_zero() {
                    return Ok(ClaimResult::new("", "").verdict(false).witness(format!("{}{}{}", a.label, b.label, c.label)));
                }
            }
        }
    }
    Ok(ClaimResult::new("", "").dim("products", checked).verdict(true))
}

fn pairs_central() -> Result<ClaimResult, TidealError> {
    let (c1, c2) = generic_f();
    let gens = [c1, c2];
    let cs = low_commutators();
    let mut checked = 0;
    for a in &cs {
        for b in &cs {
            checked += 1;
            let p = &a.value * &b.value;
            if p.is_zero() || !is_central(&p, &gens) || !is_strongly_central_bounded(&p, &gens, 3) {
                return Ok(ClaimResult::new("", "").verdict(false).witness(format!("{}{}", a.label, b.label)));
            }
        }
    }
    Ok(ClaimResult::new("", "").dim("products", checked).detail("nonzero, central, and central after multiplying by words of length <= 3").verdict(true))
}

fn monomial_products() -> Result<ClaimResult, TidealError> {
    let (c1, c2) = generic_f();
    let cs = low_commutators();
    let mut checked = 0;
    for n in 0..=2 {
        for m in 0..=2 {
            let head = &c1.pow(n) * &c2.pow(m);
            let mut layer: Vec<(String, MatSC)> = vec![(format!("C1^{n} C2^{m}"), head)];
            for r in 1..=3 {
                let mut next = Vec::new();
                for (label, v) in &layer {
                    for c in &cs {
                        next.push((format!("{label} {}", c.label), v * &c.value));
                    }
                }
                for (label, v) in &next {
                    checked += 1;
                    if v.is_zero() != (r >= 3) {
                        return Ok(ClaimResult::new("", "").verdict(false).witness(label.clone()));
                    }
                }
                layer = next;
            }
        }
    }
    Ok(ClaimResult::new("", "").dim("products", checked).detail("n, m <= 2, r <= 3 factors of degree <= 3").verdict(true))
}

fn derivation_form() -> Result<ClaimResult, TidealError> {
    let t = NCPoly::var;
    let c = |i, j| commutator(&t(i), &t(j));
    let g = commutator(&c(1, 2), &t(5)).mul(&c(3, 4)).add(&c(1, 2).mul(&commutator(&c(3, 4), &t(5))));
    let ok = is_consequence(&f_basis()[..1], &g, &Limits::default())?;
    Ok(ClaimResult::new("", "").verdict(ok))
}

fn power_expansions() -> Result<ClaimResult, TidealError> {
    let t = NCPoly::var;
    let mut checked = 0;
    for n in 1..=6 {
        for z in [t(1), t(1).mul(&t(3))] {
            let (l, r) = power_commutator_expansion(&z, &t(2), n);
            let (l2, r2) = commutator_power_expansion(&t(2), &t(4), &z, n);
            checked += 2;
            if l != r || l2 != r2 {
                return Ok(ClaimResult::new("", "").verdict(false).witness(format!("n = {n}, z = {z}")));
            }
        }
    }
    Ok(ClaimResult::new("", "").dim("identities", checked).verdict(true))
}
