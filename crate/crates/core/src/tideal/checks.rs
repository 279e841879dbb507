//! Evaluation-side checks in the generic algebra `F = K[C1, C2]`: spanning
//! sets, exact span propagation through commutator formulas, randomized
//! identity tests, and centrality separation.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebras::{evaluate_mat, generic_f, is_central, is_strongly_central_bounded, MatSC};
use crate::exactlin::{KeyUniverse, Rat, SparseRow, Subspace};
use crate::freealg::{commutator, jordan, NCPoly};
use crate::supercomm::Mono;

use super::TidealError;

/// An element of `F` with a readable description.
#[derive(Clone, Debug)]
pub struct Labeled {
    pub label: String,
    pub value: MatSC,
}

fn mat_row(m: &MatSC, index: &dyn Fn(&(u8, Mono)) -> u32) -> SparseRow {
    let n = m.size();
    let mut row = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for (mono, c) in m.get(i, j).terms() {
                row.push((index(&((i * n + j) as u8, mono.clone())), c.clone()));
            }
        }
    }
    row.sort_unstable_by_key(|e| e.0);
    row
}

/// A linearly independent subfamily with the same span, in input order.
pub fn span_basis(items: Vec<Labeled>) -> Vec<Labeled> {
    let items: Vec<Labeled> = items.into_iter().filter(|m| !m.value.is_zero()).collect();
    let mut keys = Vec::new();
    for m in &items {
        let n = m.value.size();
        for i in 0..n {
            for j in 0..n {
                keys.extend(m.value.get(i, j).terms().iter().map(|(mono, _)| ((i * n + j) as u8, mono.clone())));
            }
        }
    }
    let universe: Arc<KeyUniverse<(u8, Mono)>> = KeyUniverse::new(keys);
    let index = |k: &(u8, Mono)| universe.column(k).unwrap();
    let mut space = Subspace::new(&universe);
    items.into_iter().filter(|m| !space.insert_row(&mat_row(&m.value, &index)).is_empty()).collect()
}

/// True iff `target` lies in the span of `basis`.
pub fn in_span(basis: &[MatSC], target: &MatSC) -> bool {
    let mut keys = Vec::new();
    for m in basis.iter().chain([target]) {
        let n = m.size();
        for i in 0..n {
            for j in 0..n {
                keys.extend(m.get(i, j).terms().iter().map(|(mono, _)| ((i * n + j) as u8, mono.clone())));
            }
        }
    }
    let universe: Arc<KeyUniverse<(u8, Mono)>> = KeyUniverse::new(keys);
    let index = |k: &(u8, Mono)| universe.column(k).unwrap();
    let mut space = Subspace::new(&universe);
    for b in basis {
        space.insert_row(&mat_row(b, &index));
    }
    space.contains_row(&mat_row(target, &index))
}

fn gen_name(i: u16) -> &'static str {
    if i == 1 {
        "C1"
    } else {
        "C2"
    }
}

/// Left-normed commutators `[C_i1, …, C_ik]` with `i1 = 1, i2 = 2` and tails in `{1, 2}`.
pub fn generator_commutators(k: usize) -> Vec<Labeled> {
    let (c1, c2) = generic_f();
    let gens = [c1, c2];
    let mut out = Vec::new();
    for bits in 0..1u32 << (k - 2) {
        let idx: Vec<u16> = [1, 2].into_iter().chain((0..k - 2).map(|b| 1 + (bits >> b & 1) as u16)).collect();
        let mut v = gens[0].commutator(&gens[1]);
        for &i in &idx[2..] {
            v = v.commutator(&gens[i as usize - 1]);
        }
        let names: Vec<&str> = idx.iter().map(|&i| gen_name(i)).collect();
        out.push(Labeled { label: format!("[{}]", names.join(",")), value: v });
    }
    out
}

fn monomial_label(a: u32, b: u32) -> String {
    let mut parts = Vec::new();
    for (name, e) in [("C1", a), ("C2", b)] {
        match e {
            0 => {}
            1 => parts.push(name.to_string()),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}

/// `C1^a C2^b u` with `u` empty or a left-normed commutator in the generators,
/// of total degree at most `d`.
pub fn spanning_set(d: u32) -> Vec<Labeled> {
    let (c1, c2) = generic_f();
    let mut comms: Vec<(u32, Labeled)> = Vec::new();
    for k in 2..=d as usize {
        comms.extend(generator_commutators(k).into_iter().map(|c| (k as u32, c)));
    }
    let mut out = Vec::new();
    for total in 0..=d {
        for a in (0..=total).rev() {
            let b = total - a;
            let mono = &c1.pow(a) * &c2.pow(b);
            let ml = monomial_label(a, b);
            out.push(Labeled { label: if ml.is_empty() { "1".into() } else { ml.clone() }, value: mono.clone() });
            for (k, u) in &comms {
                if total + k <= d {
                    let label = if ml.is_empty() { u.label.clone() } else { format!("{ml}*{}", u.label) };
                    out.push(Labeled { label, value: &mono * &u.value });
                }
            }
        }
    }
    out
}

/// A product/commutator expression whose leaves are distinct variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Formula {
    Var(u16),
    Mul(Box<Formula>, Box<Formula>),
    Comm(Box<Formula>, Box<Formula>),
    Jordan(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn var(i: u16) -> Formula {
        Formula::Var(i)
    }

    pub fn mul(a: Formula, b: Formula) -> Formula {
        Formula::Mul(Box::new(a), Box::new(b))
    }

    pub fn comm(a: Formula, b: Formula) -> Formula {
        Formula::Comm(Box::new(a), Box::new(b))
    }

    pub fn jordan(a: Formula, b: Formula) -> Formula {
        Formula::Jordan(Box::new(a), Box::new(b))
    }

    pub fn leaves(&self) -> Vec<u16> {
        match self {
            Formula::Var(i) => vec![*i],
            Formula::Mul(a, b) | Formula::Comm(a, b) | Formula::Jordan(a, b) => {
                let mut v = a.leaves();
                v.extend(b.leaves());
                v
            }
        }
    }

    pub fn to_poly(&self) -> NCPoly {
        match self {
            Formula::Var(i) => NCPoly::var(*i),
            Formula::Mul(a, b) => a.to_poly().mul(&b.to_poly()),
            Formula::Comm(a, b) => commutator(&a.to_poly(), &b.to_poly()),
            Formula::Jordan(a, b) => jordan(&a.to_poly(), &b.to_poly()),
        }
    }
}

/// `[[t1,t2][t3,t4],t5]` and `[t1,t2][t3,t4][t5,t6]` as formulas.
pub fn product_identity_formulas() -> [Formula; 2] {
    let c = |i, j| Formula::comm(Formula::var(i), Formula::var(j));
    [
        Formula::comm(Formula::mul(c(1, 2), c(3, 4)), Formula::var(5)),
        Formula::mul(Formula::mul(c(1, 2), c(3, 4)), c(5, 6)),
    ]
}

/// Span of all values of `f` with every leaf ranging over `span`.
///
/// Exact because each leaf is a distinct variable, so the value set of a
/// node spans the products of the spans of its children.
pub fn formula_span(f: &Formula, span: &[Labeled]) -> Result<Vec<Labeled>, TidealError> {
    let mut leaves = f.leaves();
    leaves.sort_unstable();
    if leaves.windows(2).any(|w| w[0] == w[1]) {
        return Err(TidealError::RepeatedLeaf);
    }
    Ok(formula_span_inner(f, span))
}

fn formula_span_inner(f: &Formula, span: &[Labeled]) -> Vec<Labeled> {
    let (a, b, op): (&Formula, &Formula, fn(&MatSC, &MatSC) -> MatSC) = match f {
        Formula::Var(_) => return span.to_vec(),
        Formula::Mul(a, b) => (a, b, |x, y| x * y),
        Formula::Comm(a, b) => (a, b, |x, y| x.commutator(y)),
        Formula::Jordan(a, b) => (a, b, |x, y| x.jordan(y)),
    };
    let sa = formula_span_inner(a, span);
    let sb = formula_span_inner(b, span);
    let mut items = Vec::with_capacity(sa.len() * sb.len());
    for x in &sa {
        for y in &sb {
            items.push(Labeled { label: format!("({})·({})", x.label, y.label), value: op(&x.value, &y.value) });
        }
    }
    span_basis(items)
}

/// Outcome of an identity test on `F`.
#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub holds: bool,
    /// Every tuple from a basis of the spanning set was tried.
    pub exhaustive: bool,
    pub tuples: usize,
    pub trials: usize,
    /// Substitution labels and the nonzero value.
    pub witness: Option<(Vec<String>, MatSC)>,
}

/// Tests `f` on `F`.
///
/// First every assignment of the variables to `C1, C2`; then each
/// multihomogeneous component, fully linearized, on tuples from a basis of
/// the span of [`spanning_set`]`(d)` in lex order (up to `tuple_budget`);
/// then `trials` random rational combinations.
pub fn randomized_identity_check(f: &NCPoly, d: u32, trials: usize, seed: u64, tuple_budget: usize) -> Result<IdentityCheck, TidealError> {
    let (c1, c2) = generic_f();
    let nvars = f.max_variable() as usize;
    let mut tuples = 0;
    for code in 0..1usize << nvars {
        let vals: Vec<MatSC> = (0..nvars).map(|i| if code >> i & 1 == 0 { c1.clone() } else { c2.clone() }).collect();
        tuples += 1;
        let v = evaluate_mat(f, &vals)?;
        if !v.is_zero() {
            let labels = (0..nvars).map(|i| gen_name(1 + (code >> i & 1) as u16).to_string()).collect();
            return Ok(IdentityCheck { holds: false, exhaustive: false, tuples, trials: 0, witness: Some((labels, v)) });
        }
    }
    let basis = span_basis(spanning_set(d));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut exhaustive = true;
    let mut done_trials = 0;
    for comp in f.linearization_components() {
        let n = comp.max_variable() as usize;
        let total = (basis.len() as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        if total > tuple_budget as u128 {
            exhaustive = false;
        }
        let mut idx = vec![0usize; n];
        let limit = total.min(tuple_budget as u128) as usize;
        for _ in 0..limit {
            let vals: Vec<MatSC> = idx.iter().map(|&i| basis[i].value.clone()).collect();
            tuples += 1;
            let v = evaluate_mat(&comp, &vals)?;
            if !v.is_zero() {
                let labels = idx.iter().map(|&i| basis[i].label.clone()).collect();
                return Ok(IdentityCheck { holds: false, exhaustive: false, tuples, trials: done_trials, witness: Some((labels, v)) });
            }
            for slot in idx.iter_mut().rev() {
                *slot += 1;
                if *slot < basis.len() {
                    break;
                }
                *slot = 0;
            }
        }
        for _ in 0..trials {
            let mut labels = Vec::new();
            let mut vals = Vec::new();
            for _ in 0..n {
                let (label, value) = random_combination(&basis, &mut rng);
                labels.push(label);
                vals.push(value);
            }
            done_trials += 1;
            let v = evaluate_mat(&comp, &vals)?;
            if !v.is_zero() {
                return Ok(IdentityCheck { holds: false, exhaustive: false, tuples, trials: done_trials, witness: Some((labels, v)) });
            }
        }
    }
    Ok(IdentityCheck { holds: true, exhaustive, tuples, trials: done_trials, witness: None })
}

fn random_combination(basis: &[Labeled], rng: &mut ChaCha8Rng) -> (String, MatSC) {
    let picks: Vec<&Labeled> = basis.choose_multiple(rng, 3.min(basis.len())).collect();
    let mut label = Vec::new();
    let mut acc: Option<MatSC> = None;
    for p in picks {
        let c = Rat::new(rng.gen_range(1..=9) * if rng.gen_bool(0.5) { 1 } else { -1 }, rng.gen_range(1..=4));
        label.push(format!("({c})*{}", p.label));
        let term = p.value.scale(&c);
        acc = Some(match acc {
            None => term,
            Some(a) => &a + &term,
        });
    }
    (label.join(" + "), acc.unwrap())
}

/// `C1^n C2^m` for `0 <= n, m <= e`, in the order `(n, m)` lex.
pub fn exponent_elements(e: u32) -> Vec<((u32, u32), MatSC)> {
    let (c1, c2) = generic_f();
    let mut out = Vec::new();
    for n in 0..=e {
        for m in 0..=e {
            out.push(((n, m), &c1.pow(n) * &c2.pow(m)));
        }
    }
    out
}

/// Result of evaluating `s4` on every 4-tuple of exponent elements.
#[derive(Clone, Debug)]
pub struct S4Sweep {
    pub tuples: usize,
    /// Exponent tuples with a nonzero value.
    pub nonzero: Vec<[(u32, u32); 4]>,
}

/// `s4(D1, …, D4)` for all `D_i = C1^{n_i} C2^{m_i}` with `n_i, m_i <= e`,
/// through `s4 = [t1,t2]∘[t3,t4] − [t1,t3]∘[t2,t4] + [t1,t4]∘[t2,t3]`.
pub fn s4_exponent_sweep(e: u32) -> S4Sweep {
    let elems = exponent_elements(e);
    let k = elems.len();
    let comm: Vec<Vec<MatSC>> = elems.iter().map(|a| elems.iter().map(|b| a.1.commutator(&b.1)).collect()).collect();
    let mut nonzero = Vec::new();
    let mut tuples = 0;
    for i in 0..k {
        for j in 0..k {
            for l in 0..k {
                for m in 0..k {
                    tuples += 1;
                    let v = &(&comm[i][j].jordan(&comm[l][m]) - &comm[i][l].jordan(&comm[j][m])) + &comm[i][m].jordan(&comm[j][l]);
                    if !v.is_zero() {
                        nonzero.push([elems[i].0, elems[j].0, elems[l].0, elems[m].0]);
                    }
                }
            }
        }
    }
    S4Sweep { tuples, nonzero }
}

/// `s4` on every 4-subset of a basis of the span of [`spanning_set`]`(d)`.
/// Since `s4` is multilinear and alternating this covers the whole span.
pub fn s4_on_span(d: u32) -> (usize, Option<Vec<String>>) {
    let basis = span_basis(spanning_set(d));
    let k = basis.len();
    let comm: Vec<Vec<Option<MatSC>>> = (0..k)
        .map(|a| (0..k).map(|b| (a < b).then(|| basis[a].value.commutator(&basis[b].value))).collect())
        .collect();
    let c = |a: usize, b: usize| comm[a][b].as_ref().unwrap();
    let mut count = 0;
    for i in 0..k {
        for j in i + 1..k {
            for l in j + 1..k {
                for m in l + 1..k {
                    count += 1;
                    let v = &(&c(i, j).jordan(c(l, m)) - &c(i, l).jordan(c(j, m))) + &c(i, m).jordan(c(j, l));
                    if !v.is_zero() {
                        return (count, Some([i, j, l, m].iter().map(|&x| basis[x].label.clone()).collect()));
                    }
                }
            }
        }
    }
    (count, None)
}

/// Outcome of a centrality separation: the hypothesis is strongly central on
/// all sampled substitutions, so all of its consequences evaluate centrally,
/// while the target is not central.
#[derive(Clone, Debug)]
pub struct Separation {
    pub hypothesis_strongly_central: bool,
    pub samples: usize,
    /// Every basis tuple of the spanning set was tried.
    pub exhaustive: bool,
    pub target_central: bool,
    pub counterexample: Option<Vec<String>>,
}

impl Separation {
    pub fn separates(&self) -> bool {
        self.hypothesis_strongly_central && !self.target_central
    }
}

/// Substitutes tuples from a basis of the span of [`spanning_set`]`(d)` into
/// each linearized component of `hypothesis` and tests bounded strong
/// centrality with word bound `bound`. All tuples are tried when there are at
/// most `max_samples`, otherwise `max_samples` seeded random ones. `target`
/// is evaluated at `(C1, C2, [C1, C2], …)`.
pub fn centrality_separation(
    hypothesis: &NCPoly,
    target: &NCPoly,
    d: u32,
    bound: usize,
    max_samples: usize,
    seed: u64,
) -> Result<Separation, TidealError> {
    let (c1, c2) = generic_f();
    let gens = [c1, c2];
    let basis = span_basis(spanning_set(d));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = 0;
    let mut exhaustive = true;
    for comp in hypothesis.linearization_components() {
        let n = comp.max_variable() as usize;
        let total = (basis.len() as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        let tuples: Vec<Vec<usize>> = if total <= max_samples as u128 {
            (0..total as usize)
                .map(|mut code| {
                    let mut t = vec![0; n];
                    for slot in t.iter_mut().rev() {
                        *slot = code % basis.len();
                        code /= basis.len();
                    }
                    t
                })
                .collect()
        } else {
            exhaustive = false;
            (0..max_samples).map(|_| (0..n).map(|_| rng.gen_range(0..basis.len())).collect()).collect()
        };
        for idx in tuples {
            let vals: Vec<MatSC> = idx.iter().map(|&i| basis[i].value.clone()).collect();
            samples += 1;
            let v = evaluate_mat(&comp, &vals)?;
            if !is_strongly_central_bounded(&v, &gens, bound) {
                let t = evaluate_mat(target, &target_values(target.max_variable() as usize))?;
                return Ok(Separation {
                    hypothesis_strongly_central: false,
                    samples,
                    exhaustive: false,
                    target_central: is_central(&t, &gens),
                    counterexample: Some(idx.iter().map(|&i| basis[i].label.clone()).collect()),
                });
            }
        }
    }
    let t = evaluate_mat(target, &target_values(target.max_variable() as usize))?;
    Ok(Separation { hypothesis_strongly_central: true, samples, exhaustive, target_central: is_central(&t, &gens), counterexample: None })
}

/// `(C1, C2, [C1, C2], [C1, C2, C1], …)` truncated to `n` values.
pub fn target_values(n: usize) -> Vec<MatSC> {
    let (c1, c2) = generic_f();
    let mut out = vec![c1.clone(), c2.clone()];
    let mut k = 2;
    while out.len() < n {
        out.extend(generator_commutators(k).into_iter().map(|l| l.value));
        k += 1;
    }
    out.truncate(n);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{dkl, f_basis, standard};

    #[test]
    fn formulas_expand_to_catalog_polynomials() {
        let fb = f_basis();
        let [a, b] = product_identity_formulas();
        assert_eq!(a.to_poly(), fb[0]);
        assert_eq!(b.to_poly(), fb[1]);
    }

    #[test]
    fn spanning_set_sizes() {
        assert_eq!(spanning_set(0).len(), 1);
        assert_eq!(spanning_set(2).len(), 7);
        let b = span_basis(spanning_set(3));
        assert!(b.len() <= spanning_set(3).len());
        assert!(in_span(&b.iter().map(|l| l.value.clone()).collect::<Vec<_>>(), &spanning_set(3)[5].value));
    }

    #[test]
    fn span_of_repeated_leaf_formula_is_rejected() {
        let f = Formula::comm(Formula::var(1), Formula::var(1));
        assert!(formula_span(&f, &spanning_set(1)).is_err());
    }

    #[test]
    fn three_commutator_products_vanish_on_low_span() {
        let c = |i, j| Formula::comm(Formula::var(i), Formula::var(j));
        let f = Formula::mul(Formula::mul(c(1, 2), c(3, 4)), c(5, 6));
        let span = span_basis(spanning_set(2));
        assert!(formula_span(&f, &span).unwrap().is_empty());
    }

    #[test]
    fn commutator_square_is_not_an_identity() {
        let r = randomized_identity_check(&dkl(1, 0), 2, 0, 1, 100).unwrap();
        assert!(!r.holds);
        assert_eq!(r.witness.unwrap().0, vec!["C2".to_string(), "C1".to_string()]);
    }

    #[test]
    fn small_s4_sweep() {
        let s = s4_exponent_sweep(1);
        assert_eq!(s.tuples, 256);
        assert!(s.nonzero.is_empty());
        let r = randomized_identity_check(&standard(4), 1, 2, 7, 10_000).unwrap();
        assert!(r.holds);
    }
}
