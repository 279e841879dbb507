//! Multilinear and multihomogeneous consequence spaces, identity spaces of
//! finite-dimensional algebras, and their proper parts.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};
use std::time::Instant;

use rayon::prelude::*;

use crate::algebras::{FinDimAlgebra, ZERO_INDEX};
use crate::exactlin::{KeyUniverse, Rat, SparseRow, Subspace};
use crate::freealg::{gamma_basis, multilinear_degree, to_row, words_of_multidegree, GammaElement, MultiDegree, NCPoly, NCWord};

use super::{Limits, TidealError};

/// The coordinate space `P_n` and the column actions of `(1 2)` and `(1 2 … n)`.
pub struct PnContext {
    pub n: usize,
    pub universe: Arc<KeyUniverse<NCWord>>,
    generators: Vec<Vec<u32>>,
}

impl PnContext {
    fn build(n: usize) -> PnContext {
        let universe = KeyUniverse::new(words_of_multidegree(&multilinear_degree(n)));
        let mut generators = Vec::new();
        if n >= 2 {
            let swap: Vec<u16> = (1..=n as u16).map(|v| if v == 1 { 2 } else if v == 2 { 1 } else { v }).collect();
            let cycle: Vec<u16> = (1..=n as u16).map(|v| v % n as u16 + 1).collect();
            for img in [swap, cycle] {
                let map = universe
                    .keys()
                    .iter()
                    .map(|w| {
                        let nw = NCWord(w.letters().iter().map(|&v| img[v as usize - 1]).collect());
                        universe.column(&nw).unwrap()
                    })
                    .collect();
                generators.push(map);
            }
        }
        PnContext { n, universe, generators }
    }

    /// Row of a polynomial supported on multilinear words of degree `n`.
    pub fn row(&self, f: &NCPoly) -> Result<SparseRow, TidealError> {
        to_row(&self.universe, f).map_err(|_| TidealError::NotMultilinear(self.n))
    }

    pub fn poly(&self, row: &[(u32, Rat)]) -> NCPoly {
        crate::freealg::from_row(&self.universe, row)
    }
}

pub fn pn_context(n: usize) -> Arc<PnContext> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<OnceLock<Arc<PnContext>>>>>> = OnceLock::new();
    let cell = CACHE.get_or_init(Default::default).lock().unwrap().entry(n).or_default().clone();
    cell.get_or_init(|| Arc::new(PnContext::build(n))).clone()
}

/// A subspace of `P_n`.
#[derive(Clone, Debug)]
pub struct PnSpace {
    pub n: usize,
    pub space: Subspace<NCWord>,
}

impl PnSpace {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn contains(&self, f: &NCPoly) -> Result<bool, TidealError> {
        Ok(self.space.contains_row(&pn_context(self.n).row(f)?))
    }

    pub fn residual(&self, f: &NCPoly) -> Result<NCPoly, TidealError> {
        let ctx = pn_context(self.n);
        Ok(ctx.poly(&self.space.reduce_row(&ctx.row(f)?)))
    }
}

/// A generator prepared for substitution: a multilinear polynomial in `t1..tk`.
#[derive(Clone, Debug)]
pub struct Generator {
    pub k: usize,
    pub proper: bool,
    terms: Vec<(Vec<u16>, Rat)>,
}

impl Generator {
    pub fn from_multilinear(f: &NCPoly) -> Generator {
        let k = f.degree().unwrap_or(0);
        Generator {
            k,
            proper: f.is_proper(),
            terms: f.terms().map(|(w, c)| (w.letters().to_vec(), c.clone())).collect(),
        }
    }
}

/// One generator per multihomogeneous component, each fully linearized.
pub fn prepare(gens: &[NCPoly]) -> Vec<Generator> {
    let mut out = Vec::new();
    for g in gens {
        for lin in g.linearization_components() {
            if !lin.is_zero() {
                out.push(Generator::from_multilinear(&lin));
            }
        }
    }
    out
}

/// Calls `visit(cuts)` for every way of cutting `0..len` into
/// `a, v_1, …, v_k, b`; `cuts[i]..cuts[i+1]` is `v_{i+1}`.
fn for_each_cut(len: usize, k: usize, allow_empty: bool, visit: &mut impl FnMut(&[usize])) {
    fn go(pos: usize, len: usize, k: usize, allow_empty: bool, cuts: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
        if cuts.len() == k + 1 {
            visit(cuts);
            return;
        }
        let min = if cuts.is_empty() || allow_empty { pos } else { pos + 1 };
        for next in min..=len {
            cuts.push(next);
            go(next, len, k, allow_empty, cuts, visit);
            cuts.pop();
        }
    }
    let mut cuts = Vec::with_capacity(k + 1);
    go(0, len, k, allow_empty, &mut cuts, visit);
}

/// The row of `a · g(v_1, …, v_k) · b` where the segments come from `word`.
fn substituted_row(
    g: &Generator,
    word: &[u16],
    cuts: &[usize],
    universe: &KeyUniverse<NCWord>,
    buf: &mut Vec<(u32, Rat)>,
) -> SparseRow {
    buf.clear();
    let k = g.k;
    let mut nw: Vec<u16> = Vec::with_capacity(word.len());
    for (w, c) in &g.terms {
        nw.clear();
        nw.extend_from_slice(&word[..cuts[0]]);
        for &v in w {
            let i = v as usize - 1;
            nw.extend_from_slice(&word[cuts[i]..cuts[i + 1]]);
        }
        nw.extend_from_slice(&word[cuts[k]..]);
        let col = universe.column(&NCWord::from_slice(&nw)).expect("substitution stays in the universe");
        buf.push((col, c.clone()));
    }
    merge_sorted(buf)
}

fn merge_sorted(buf: &mut [(u32, Rat)]) -> SparseRow {
    buf.sort_unstable_by_key(|e| e.0);
    let mut out: SparseRow = Vec::with_capacity(buf.len());
    for (c, v) in buf.iter() {
        match out.last_mut() {
            Some((lc, lv)) if lc == c => *lv += v,
            _ => out.push((*c, v.clone())),
        }
    }
    out.retain(|e| !e.1.is_zero());
    out
}

fn permute_row(row: &[(u32, Rat)], map: &[u32]) -> SparseRow {
    let mut out: SparseRow = row.iter().map(|(c, v)| (map[*c as usize], v.clone())).collect();
    out.sort_unstable_by_key(|e| e.0);
    out
}

fn check_deadline(limits: &Limits, what: &str, n: usize, dim: usize) -> Result<(), TidealError> {
    match limits.deadline {
        Some(d) if Instant::now() > d => Err(TidealError::Budget { what: what.into(), n, limit: limits.pn_degree, partial_dim: dim }),
        _ => Ok(()),
    }
}

/// Closes `space` under the S_n action. `queue` holds the rows that enlarged
/// the space, kept unreduced so their coefficients stay small.
fn close_under_sn(ctx: &PnContext, space: &mut Subspace<NCWord>, mut queue: Vec<SparseRow>, limits: &Limits, what: &str) -> Result<(), TidealError> {
    let mut steps = 0usize;
    while let Some(r) = queue.pop() {
        for g in &ctx.generators {
            let pr = permute_row(&r, g);
            if !space.insert_row(&pr).is_empty() {
                queue.push(pr);
            }
        }
        steps += 1;
        if steps % 64 == 0 {
            check_deadline(limits, what, ctx.n, space.dim())?;
        }
    }
    Ok(())
}

fn check_degree(what: &str, n: usize, limit: usize) -> Result<(), TidealError> {
    if n > limit {
        return Err(TidealError::Budget { what: what.into(), n, limit, partial_dim: 0 });
    }
    Ok(())
}

/// `T(gens) ∩ P_n`: the S_n-closure of the substitutions `a·g(v_1,…,v_k)·b`
/// cut from the word `t1 t2 … tn`.
pub fn consequences_pn(gens: &[NCPoly], n: usize, limits: &Limits) -> Result<PnSpace, TidealError> {
    check_degree("consequences in P_n", n, limits.pn_degree)?;
    if n == 0 {
        return Err(TidealError::Degree(n));
    }
    let ctx = pn_context(n);
    let mut space = Subspace::new(&ctx.universe);
    let word: Vec<u16> = (1..=n as u16).collect();
    let mut queue = Vec::new();
    let mut buf = Vec::new();
    for g in prepare(gens) {
        if g.proper && g.k > n {
            continue;
        }
        for_each_cut(n, g.k, !g.proper, &mut |cuts| {
            let row = substituted_row(&g, &word, cuts, &ctx.universe, &mut buf);
            if !space.insert_row(&row).is_empty() {
                queue.push(row);
            }
        });
    }
    close_under_sn(&ctx, &mut space, queue, limits, "consequences in P_n")?;
    Ok(PnSpace { n, space })
}

/// `T(gens)` restricted to the polynomials of multidegree `d`.
pub fn consequences_multidegree(gens: &[NCPoly], d: &MultiDegree, limits: &Limits) -> Result<Subspace<NCWord>, TidealError> {
    let total: u32 = d.values().sum();
    check_degree("consequences at a multidegree", total as usize, limits.multidegree_total)?;
    let words = words_of_multidegree(d);
    let universe = KeyUniverse::new(words.iter().cloned());
    let mut space = Subspace::new(&universe);
    let mut buf = Vec::new();
    let gens = prepare(gens);
    for (i, w) in words.iter().enumerate() {
        for g in &gens {
            if g.proper && g.k > w.len() {
                continue;
            }
            for_each_cut(w.len(), g.k, !g.proper, &mut |cuts| {
                let row = substituted_row(g, w.letters(), cuts, &universe, &mut buf);
                space.insert_row(&row);
            });
        }
        if i % 256 == 0 {
            check_deadline(limits, "consequences at a multidegree", total as usize, space.dim())?;
        }
    }
    Ok(space)
}

/// Membership of `f` in `T(gens)`, tested one multihomogeneous component at a time.
/// Returns the residual of each component that is not a consequence.
pub fn membership_residuals(gens: &[NCPoly], f: &NCPoly, limits: &Limits) -> Result<Vec<NCPoly>, TidealError> {
    let mut out = Vec::new();
    for (d, comp) in f.multidegree_components() {
        let space = consequences_multidegree(gens, &d, limits)?;
        let row = to_row(space.universe(), &comp)?;
        let res = space.reduce_row(&row);
        if !res.is_empty() {
            out.push(crate::freealg::from_row(space.universe(), &res));
        }
    }
    Ok(out)
}

pub fn is_consequence(gens: &[NCPoly], f: &NCPoly, limits: &Limits) -> Result<bool, TidealError> {
    Ok(membership_residuals(gens, f, limits)?.is_empty())
}

/// Sorted tuples of `0..d` of length `n` (multisets).
fn multisets(d: usize, n: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, d: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in start..d {
            cur.push(i);
            go(i, d, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, d, n, &mut Vec::new(), &mut out);
    out
}

/// Walks the multilinear words of degree `n` in lex order, carrying a prefix
/// value; `step` returns `None` when the product vanishes, which skips the
/// whole subtree. `leaf(col, value)` sees every surviving word.
fn walk_words<V: Clone>(n: usize, start: &V, step: &impl Fn(&V, usize) -> Option<V>, leaf: &mut impl FnMut(u32, &V)) {
    let fact: Vec<u32> = (0..=n).map(|i| (1..=i as u32).product()).collect();
    fn go<V: Clone>(
        n: usize,
        used: u32,
        depth: usize,
        col: &mut u32,
        val: &V,
        fact: &[u32],
        step: &impl Fn(&V, usize) -> Option<V>,
        leaf: &mut impl FnMut(u32, &V),
    ) {
        if depth == n {
            leaf(*col, val);
            *col += 1;
            return;
        }
        for v in 0..n {
            if used >> v & 1 == 1 {
                continue;
            }
            match step(val, v) {
                Some(next) => go(n, used | 1 << v, depth + 1, col, &next, fact, step, leaf),
                None => *col += fact[n - depth - 1],
            }
        }
    }
    let mut col = 0;
    go(n, 0, 0, &mut col, start, &fact, step, leaf);
}

/// The rows `w ↦ (value of w on the tuple)_j`, one per output coordinate `j`.
fn functional_rows(alg: &FinDimAlgebra, tuple: &[usize]) -> Vec<SparseRow> {
    let d = alg.dim();
    let n = tuple.len();
    let mut rows: Vec<SparseRow> = vec![Vec::new(); d];
    match alg.monomial_table() {
        Some(table) => {
            let step = |prev: &Option<(u32, Rat)>, v: usize| -> Option<Option<(u32, Rat)>> {
                let b = tuple[v] as u32;
                match prev {
                    None => Some(Some((b, Rat::ONE))),
                    Some((a, ca)) => {
                        let (p, cp) = &table[*a as usize * d + b as usize];
                        if *p == ZERO_INDEX {
                            None
                        } else {
                            Some(Some((*p, ca * cp)))
                        }
                    }
                }
            };
            walk_words(n, &None, &step, &mut |col, val| {
                if let Some((k, c)) = val {
                    rows[*k as usize].push((col, c.clone()));
                }
            });
        }
        None => {
            let basis: Vec<Vec<Rat>> = (0..d).map(|i| alg.basis_vector(i)).collect();
            let step = |prev: &Option<Vec<Rat>>, v: usize| -> Option<Option<Vec<Rat>>> {
                let b = &basis[tuple[v]];
                let next = match prev {
                    None => b.clone(),
                    Some(a) => alg.mul(a, b),
                };
                if next.iter().all(|x| x.is_zero()) {
                    None
                } else {
                    Some(Some(next))
                }
            };
            walk_words(n, &None, &step, &mut |col, val| {
                if let Some(vals) = val {
                    for (k, x) in vals.iter().enumerate() {
                        if !x.is_zero() {
                            rows[k].push((col, x.clone()));
                        }
                    }
                }
            });
        }
    }
    rows.retain(|r| !r.is_empty());
    rows
}

/// The span of the evaluation functionals of `alg` on `P_n`; its annihilator
/// is the space of multilinear identities.
pub fn evaluation_functionals(alg: &FinDimAlgebra, n: usize, limits: &Limits) -> Result<PnSpace, TidealError> {
    check_degree("identities in P_n", n, limits.pn_degree)?;
    if n == 0 {
        return Err(TidealError::Degree(n));
    }
    let ctx = pn_context(n);
    let tuples = multisets(alg.dim(), n);
    let rows: Vec<Vec<SparseRow>> = tuples.par_iter().map(|t| functional_rows(alg, t)).collect();
    let mut space = Subspace::new(&ctx.universe);
    let mut queue = Vec::new();
    for r in rows.into_iter().flatten() {
        if !space.insert_row(&r).is_empty() {
            queue.push(r);
        }
    }
    close_under_sn(&ctx, &mut space, queue, limits, "identities in P_n")?;
    Ok(PnSpace { n, space })
}

/// `T(alg) ∩ P_n` as the kernel of evaluation on all basis tuples.
pub fn identities_pn(alg: &FinDimAlgebra, n: usize, limits: &Limits) -> Result<PnSpace, TidealError> {
    let f = evaluation_functionals(alg, n, limits)?;
    Ok(PnSpace { n, space: f.space.annihilator() })
}

/// Matrix-unit types of M_{1,1}(E): `(row, column, odd)`.
const M11_TYPES: [(usize, usize, bool); 4] = [(0, 0, false), (0, 1, true), (1, 0, true), (1, 1, false)];

/// Value of a word on a tuple of matrix-unit types with distinct odd
/// Grassmann factors: `(row, column, sign)` of the product, or `None`.
type M11Value = Option<(usize, usize, bool, u32)>;

fn m11_step(types: &[usize]) -> impl Fn(&M11Value, usize) -> Option<M11Value> + '_ {
    move |prev: &M11Value, v: usize| {
        let (r, c, odd) = M11_TYPES[types[v]];
        match prev {
            None => Some(Some((r, c, false, if odd { 1 << v } else { 0 }))),
            Some((r0, c0, neg, oddmask)) => {
                if *c0 != r {
                    return None;
                }
                let mut neg = *neg;
                let mut mask = *oddmask;
                if odd {
                    let later = (mask >> (v + 1)).count_ones();
                    neg ^= later % 2 == 1;
                    mask |= 1 << v;
                }
                let _ = c0;
                Some(Some((*r0, c, neg, mask)))
            }
        }
    }
}

/// Evaluation functionals of `M_{1,1}(E_k)` on `P_n`.
///
/// A basis tuple `e_{r_i c_i} ⊗ m_i` multiplies out to the product of the
/// Grassmann factors in tuple order, times a matrix unit and a sign that
/// depends only on the order of the odd factors. The factors can be chosen
/// with disjoint support exactly when at most `k` of them are odd, so the
/// functionals only depend on the sequence of matrix-unit types.
pub fn m11_evaluation_functionals(k: usize, n: usize, limits: &Limits) -> Result<PnSpace, TidealError> {
    check_degree("identities in P_n", n, limits.pn_degree)?;
    let ctx = pn_context(n);
    let tuples: Vec<Vec<usize>> = multisets(4, n).into_iter().filter(|t| t.iter().filter(|&&x| M11_TYPES[x].2).count() <= k).collect();
    let rows: Vec<Vec<SparseRow>> = tuples
        .par_iter()
        .map(|t| {
            let mut rows: Vec<SparseRow> = vec![Vec::new(); 4];
            walk_words(n, &None, &m11_step(t), &mut |col, val| {
                if let Some((r, c, neg, _)) = val {
                    rows[2 * r + c].push((col, Rat::from_int(if *neg { -1 } else { 1 })));
                }
            });
            rows.retain(|r| !r.is_empty());
            rows
        })
        .collect();
    let mut space = Subspace::new(&ctx.universe);
    let mut queue = Vec::new();
    for r in rows.into_iter().flatten() {
        if !space.insert_row(&r).is_empty() {
            queue.push(r);
        }
    }
    close_under_sn(&ctx, &mut space, queue, limits, "identities in P_n")?;
    Ok(PnSpace { n, space })
}

pub fn identities_pn_m11(k: usize, n: usize, limits: &Limits) -> Result<PnSpace, TidealError> {
    let f = m11_evaluation_functionals(k, n, limits)?;
    Ok(PnSpace { n, space: f.space.annihilator() })
}

/// Searches `M_{1,1}(E_k)` for a basis tuple on which the multilinear `f`
/// (in `t1..tn`) is nonzero. Returns the tuple as indices into
/// `m11_over_grassmann(k)`.
pub fn m11_witness(f: &NCPoly, k: usize, alg: &FinDimAlgebra) -> Option<Vec<usize>> {
    let n = f.max_variable() as usize;
    let terms: Vec<(Vec<u16>, Rat)> = f.terms().map(|(w, c)| (w.letters().to_vec(), c.clone())).collect();
    let total = 4usize.pow(n as u32);
    for code in 0..total {
        let types: Vec<usize> = (0..n).map(|i| code / 4usize.pow(i as u32) % 4).collect();
        if types.iter().filter(|&&x| M11_TYPES[x].2).count() > k {
            continue;
        }
        let step = m11_step(&types);
        let mut acc = [Rat::ZERO, Rat::ZERO, Rat::ZERO, Rat::ZERO];
        for (w, c) in &terms {
            let mut val: M11Value = None;
            let mut alive = true;
            for &v in w {
                match step(&val, v as usize - 1) {
                    Some(nv) => val = nv,
                    None => {
                        alive = false;
                        break;
                    }
                }
            }
            if let (true, Some((r, cc, neg, _))) = (alive, val) {
                if neg {
                    acc[2 * r + cc] -= c;
                } else {
                    acc[2 * r + cc] += c;
                }
            }
        }
        if acc.iter().any(|x| !x.is_zero()) {
            let mut next_gen = 0;
            let tuple = types
                .iter()
                .map(|&t| {
                    let (r, c, odd) = M11_TYPES[t];
                    let mask = if odd {
                        next_gen += 1;
                        1u64 << (next_gen - 1)
                    } else {
                        0
                    };
                    crate::algebras::m11_basis_index(alg, r, c, mask).expect("basis element exists")
                })
                .collect();
            return Some(tuple);
        }
    }
    None
}

/// `dim Γ_n` as the dimension of the common kernel in `P_n` of the maps
/// `t_i -> 1`, independent of any choice of basis.
pub fn proper_dimension(n: usize, limits: &Limits) -> Result<usize, TidealError> {
    check_degree("proper part of P_n", n, limits.gamma_degree)?;
    if n == 0 {
        return Ok(1);
    }
    let ctx = pn_context(n);
    let mut image = Subspace::new(&ctx.universe);
    for i in 1..=n as u16 {
        let others: Vec<u16> = (1..=n as u16).filter(|&v| v != i).collect();
        let mut perm = others.clone();
        loop {
            let mut row: SparseRow = (0..n)
                .map(|pos| {
                    let mut w = perm.clone();
                    w.insert(pos, i);
                    (ctx.universe.column(&NCWord::from_slice(&w)).expect("multilinear word"), Rat::ONE)
                })
                .collect();
            row.sort_unstable_by_key(|e| e.0);
            image.insert_row(&row);
            if !crate::freealg::next_permutation(&mut perm) {
                break;
            }
        }
        check_deadline(limits, "proper part of P_n", n, image.dim())?;
    }
    Ok(ctx.universe.len() - image.dim())
}

/// `Γ_n` inside `P_n`, with coordinates indexed by the basis from `gamma_basis`.
pub struct GammaContext {
    pub n: usize,
    pub elements: Vec<GammaElement>,
    pub universe: Arc<KeyUniverse<u32>>,
    rows: Vec<SparseRow>,
}

impl GammaContext {
    fn build(n: usize) -> GammaContext {
        let ctx = pn_context(n);
        let elements = gamma_basis(n);
        let rows = elements.iter().map(|e| ctx.row(&e.poly).expect("gamma basis is multilinear")).collect();
        let universe = KeyUniverse::new(0..elements.len() as u32);
        GammaContext { n, elements, universe, rows }
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    /// `Σ c_i g_i` for a Γ-coordinate row.
    pub fn poly(&self, row: &[(u32, Rat)]) -> NCPoly {
        let mut out = NCPoly::zero();
        for (i, c) in row {
            out = out.axpy(c, &self.elements[*i as usize].poly);
        }
        out
    }

    /// The subspace of `Γ_n` lying in the space whose annihilator is spanned by `perp`.
    pub fn part_of<'a>(&self, perp: impl IntoIterator<Item = &'a SparseRow>) -> GammaNSpace {
        let mut pairing = Subspace::new(&self.universe);
        for r in perp {
            let row: SparseRow = self
                .rows
                .iter()
                .enumerate()
                .filter_map(|(i, g)| {
                    let d = dot(r, g);
                    (!d.is_zero()).then_some((i as u32, d))
                })
                .collect();
            pairing.insert_row(&row);
        }
        GammaNSpace { n: self.n, space: pairing.annihilator() }
    }
}

fn dot(a: &[(u32, Rat)], b: &[(u32, Rat)]) -> Rat {
    let (mut i, mut j) = (0, 0);
    let mut acc = Rat::ZERO;
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                acc += &(&a[i].1 * &b[j].1);
                i += 1;
                j += 1;
            }
        }
    }
    acc
}

pub fn gamma_context(n: usize) -> Arc<GammaContext> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<OnceLock<Arc<GammaContext>>>>>> = OnceLock::new();
    let cell = CACHE.get_or_init(Default::default).lock().unwrap().entry(n).or_default().clone();
    cell.get_or_init(|| Arc::new(GammaContext::build(n))).clone()
}

/// A subspace of `Γ_n` in the coordinates of `gamma_basis(n)`.
#[derive(Clone, Debug)]
pub struct GammaNSpace {
    pub n: usize,
    pub space: Subspace<u32>,
}

impl GammaNSpace {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// `dim Γ_n` minus the dimension of this space.
    pub fn codim(&self) -> usize {
        self.space.ambient_dim() - self.space.dim()
    }
}

/// `T(gens) ∩ Γ_n`.
pub fn consequences_gamma(gens: &[NCPoly], n: usize, limits: &Limits) -> Result<GammaNSpace, TidealError> {
    let c = consequences_pn(gens, n, limits)?;
    Ok(gamma_of(&c))
}

/// `S ∩ Γ_n` for a subspace `S` of `P_n`.
pub fn gamma_of(s: &PnSpace) -> GammaNSpace {
    let perp = s.space.annihilator();
    gamma_context(s.n).part_of(perp.rows())
}

/// `T(alg) ∩ Γ_n`.
pub fn identities_gamma(alg: &FinDimAlgebra, n: usize, limits: &Limits) -> Result<GammaNSpace, TidealError> {
    let f = evaluation_functionals(alg, n, limits)?;
    Ok(gamma_context(n).part_of(f.space.rows()))
}

/// Outcome of comparing a consequence space with an identity space.
#[derive(Clone, Debug)]
pub struct PiComparison {
    pub n: usize,
    pub dim_consequences: usize,
    pub dim_identities: usize,
    pub consequences_in_identities: bool,
    pub equal: bool,
    /// A polynomial in one space and not the other, when they differ.
    pub witness: Option<NCPoly>,
}

pub fn compare_spaces(c: &PnSpace, i: &PnSpace) -> PiComparison {
    let ctx = pn_context(c.n);
    let c_in_i = c.space.rows().into_iter().all(|r| i.space.contains_row(r));
    let i_in_c = i.space.rows().into_iter().all(|r| c.space.contains_row(r));
    let witness = if !c_in_i {
        c.space.rows().into_iter().find(|r| !i.space.contains_row(r)).map(|r| ctx.poly(r))
    } else if !i_in_c {
        i.space.rows().into_iter().find(|r| !c.space.contains_row(r)).map(|r| ctx.poly(r))
    } else {
        None
    };
    PiComparison {
        n: c.n,
        dim_consequences: c.dim(),
        dim_identities: i.dim(),
        consequences_in_identities: c_in_i,
        equal: c_in_i && i_in_c,
        witness,
    }
}

/// Compares `T(gens) ∩ P_n` with `T(alg) ∩ P_n`.
pub fn pi_equal_at_degree(gens: &[NCPoly], alg: &FinDimAlgebra, n: usize, limits: &Limits) -> Result<PiComparison, TidealError> {
    let c = consequences_pn(gens, n, limits)?;
    let i = identities_pn(alg, n, limits)?;
    Ok(compare_spaces(&c, &i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::{evaluate_fd, gordienko_a1, grassmann_truncated, m11_over_grassmann, ut2};
    use crate::catalog::{f_basis, hall, popov_basis, standard};
    use crate::freealg::{commutator, derangements, left_normed};

    fn t(i: u16) -> NCPoly {
        NCPoly::var(i)
    }

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn commutativity_at_degree_two() {
        let c = consequences_pn(&[commutator(&t(1), &t(2))], 2, &lim()).unwrap();
        assert_eq!(c.dim(), 1);
        assert!(c.contains(&commutator(&t(1), &t(2))).unwrap());
        let c3 = consequences_pn(&[commutator(&t(1), &t(2))], 3, &lim()).unwrap();
        assert_eq!(c3.dim(), 5);
    }

    #[test]
    fn walk_visits_words_in_universe_order() {
        let ctx = pn_context(4);
        let mut seen = Vec::new();
        walk_words(4, &Vec::<u16>::new(), &|p: &Vec<u16>, v| {
            let mut q = p.clone();
            q.push(v as u16 + 1);
            Some(q)
        }, &mut |col, w| seen.push((col, w.clone())));
        assert_eq!(seen.len(), 24);
        for (col, w) in seen {
            assert_eq!(ctx.universe.key(col).letters(), &w[..]);
        }
    }

    #[test]
    fn multidegree_agrees_with_closure_on_multilinear() {
        for n in 3..=5 {
            let gens = [standard(3), hall()];
            let a = consequences_pn(&gens, n, &lim()).unwrap();
            let b = consequences_multidegree(&gens, &multilinear_degree(n), &lim()).unwrap();
            assert_eq!(a.dim(), b.dim(), "n = {n}");
        }
    }

    #[test]
    fn identities_by_brute_force_evaluation() {
        let alg = ut2();
        let ids = identities_pn(&alg, 4, &lim()).unwrap();
        let ctx = pn_context(4);
        let prod = commutator(&t(1), &t(2)).mul(&commutator(&t(3), &t(4)));
        assert!(ids.contains(&prod).unwrap());
        for row in ids.space.rows() {
            let f = ctx.poly(row);
            for code in 0..81 {
                let vals: Vec<Vec<Rat>> = (0..4).map(|i| alg.basis_vector(code / 3usize.pow(i) % 3)).collect();
                assert!(evaluate_fd(&alg, &f, &vals).unwrap().iter().all(|x| x.is_zero()));
            }
        }
        let ids1 = identities_pn(&alg, 1, &lim()).unwrap();
        assert_eq!(ids1.dim(), 0);
    }

    #[test]
    fn commutativity_vs_ut2_at_degree_three() {
        let r = pi_equal_at_degree(&[commutator(&t(1), &t(2))], &ut2(), 3, &lim()).unwrap();
        assert!(!r.equal);
        assert_eq!(r.dim_consequences, 5);
        assert_eq!(r.dim_identities, 0);
        assert!(r.witness.is_some());
    }

    #[test]
    fn a1_gamma4_identities_are_one_dimensional() {
        let g = identities_gamma(&gordienko_a1(), 4, &lim()).unwrap();
        assert_eq!(g.dim(), 1);
        let s4 = standard(4);
        let ctx = gamma_context(4);
        let f = ctx.poly(g.space.rows()[0]);
        let p = pn_context(4);
        let span = PnSpace { n: 4, space: { let mut s = Subspace::new(&p.universe); s.insert_row(&p.row(&f).unwrap()); s } };
        assert!(span.contains(&s4).unwrap());
    }

    #[test]
    fn fbasis_gamma_parts_small_degrees() {
        for n in 4..=5 {
            let c = consequences_gamma(&f_basis(), n, &lim()).unwrap();
            assert_eq!(c.codim() as u128, super::super::young::gamma_v_dim(n));
            assert_eq!(gamma_context(n).dim() as u64, derangements(n));
        }
    }

    #[test]
    fn grassmann_generic_matches_direct_definition() {
        let e = grassmann_truncated(3);
        let ids = identities_pn(&e, 3, &lim()).unwrap();
        assert!(ids.contains(&left_normed(&[1, 2, 3]).unwrap()).unwrap());
        assert!(!ids.contains(&commutator(&t(1), &t(2)).mul(&t(3))).unwrap());
    }

    #[test]
    fn m11_reduction_matches_generic() {
        for (k, n) in [(1, 3), (2, 3), (2, 4), (3, 4)] {
            let generic = identities_pn(&m11_over_grassmann(k), n, &lim()).unwrap();
            let reduced = identities_pn_m11(k, n, &lim()).unwrap();
            assert!(generic.space.subspace_equal(&reduced.space).unwrap(), "k = {k}, n = {n}");
        }
    }

    #[test]
    fn m11_witness_is_a_real_witness() {
        let alg = m11_over_grassmann(4);
        let s4 = standard(4);
        let tuple = m11_witness(&s4, 4, &alg).expect("s4 is not an identity");
        let vals: Vec<Vec<Rat>> = tuple.iter().map(|&i| alg.basis_vector(i)).collect();
        assert!(evaluate_fd(&alg, &s4, &vals).unwrap().iter().any(|x| !x.is_zero()));
        let popov_lin = popov_basis()[1].clone();
        assert!(m11_witness(&popov_lin, 4, &alg).is_none());
    }

    #[test]
    fn budget_is_enforced() {
        let l = Limits { pn_degree: 3, ..Limits::default() };
        assert!(matches!(consequences_pn(&f_basis(), 4, &l), Err(TidealError::Budget { .. })));
    }
}
