//! The free associative algebra K⟨t1, t2, …⟩: commutator calculus,
//! multihomogeneous components, linearizations and proper polynomials.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use smallvec::SmallVec;
use thiserror::Error;

use std::sync::Arc;

use crate::exactlin::{KeyUniverse, LinError, Rat, SparseRow, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreeAlgError {
    #[error("a commutator needs at least two entries, got {0}")]
    TooFewEntries(usize),
    #[error("variable t{0} already occurs in the polynomial")]
    VariableInUse(u16),
    #[error("variable t{0} has no assigned value")]
    Unassigned(u16),
    #[error("variable indices start at 1")]
    ZeroVariable,
}

/// A word in the variables; `t_i` is stored as `i` (1-based).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct NCWord(pub SmallVec<[u16; 8]>);

impl NCWord {
    pub fn empty() -> NCWord {
        NCWord(SmallVec::new())
    }

    pub fn from_slice(v: &[u16]) -> NCWord {
        NCWord(SmallVec::from_slice(v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u16] {
        &self.0
    }

    pub fn concat(&self, other: &NCWord) -> NCWord {
        let mut w = self.0.clone();
        w.extend_from_slice(&other.0);
        NCWord(w)
    }

    pub fn multidegree(&self) -> MultiDegree {
        let mut d = MultiDegree::new();
        for &v in self.0.iter() {
            *d.entry(v).or_default() += 1;
        }
        d
    }
}

impl Ord for NCWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for NCWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for NCWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|v| format!("t{v}")).collect();
        write!(f, "{}", parts.join("*"))
    }
}

impl fmt::Debug for NCWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Degree in each variable; zero entries are never stored.
pub type MultiDegree = BTreeMap<u16, u32>;

pub fn multidegree_total(d: &MultiDegree) -> u32 {
    d.values().sum()
}

/// `1^n`: degree one in each of `t1..tn`.
pub fn multilinear_degree(n: usize) -> MultiDegree {
    (1..=n as u16).map(|v| (v, 1)).collect()
}

/// All distinct words of the given multidegree, in ascending lex order.
pub fn words_of_multidegree(d: &MultiDegree) -> Vec<NCWord> {
    let mut letters: Vec<u16> = d.iter().flat_map(|(&v, &k)| std::iter::repeat(v).take(k as usize)).collect();
    letters.sort_unstable();
    let mut out = Vec::new();
    loop {
        out.push(NCWord::from_slice(&letters));
        if !next_permutation(&mut letters) {
            break;
        }
    }
    out
}

/// Advances to the next lexicographic permutation; false at the last one.
pub fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Sign of a permutation given as an image vector.
pub fn permutation_sign(p: &[usize]) -> i64 {
    let mut seen = vec![false; p.len()];
    let mut sign = 1;
    for i in 0..p.len() {
        if seen[i] {
            continue;
        }
        let mut j = i;
        let mut len = 0;
        while !seen[j] {
            seen[j] = true;
            j = p[j];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// All permutations of `0..n` in lex order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![p.clone()];
    while next_permutation(&mut p) {
        out.push(p.clone());
    }
    out
}

/// A noncommutative polynomial with rational coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct NCPoly {
    terms: BTreeMap<NCWord, Rat>,
}

impl NCPoly {
    pub fn zero() -> NCPoly {
        NCPoly::default()
    }

    pub fn one() -> NCPoly {
        NCPoly::constant(Rat::ONE)
    }

    pub fn constant(c: Rat) -> NCPoly {
        NCPoly::monomial(NCWord::empty(), c)
    }

    pub fn var(i: u16) -> NCPoly {
        assert!(i >= 1, "variable indices start at 1");
        NCPoly::monomial(NCWord::from_slice(&[i]), Rat::ONE)
    }

    pub fn monomial(w: NCWord, c: Rat) -> NCPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        NCPoly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (NCWord, Rat)>) -> NCPoly {
        let mut p = NCPoly::zero();
        for (w, c) in terms {
            p.add_term(w, &c);
        }
        p
    }

    pub fn add_term(&mut self, w: NCWord, c: &Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&NCWord, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &NCWord) -> Rat {
        self.terms.get(w).cloned().unwrap_or(Rat::ZERO)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|w| w.len()).max()
    }

    /// Variables occurring in some word, ascending.
    pub fn variables(&self) -> BTreeSet<u16> {
        self.terms.keys().flat_map(|w| w.0.iter().copied()).collect()
    }

    pub fn max_variable(&self) -> u16 {
        self.variables().into_iter().next_back().unwrap_or(0)
    }

    pub fn add(&self, other: &NCPoly) -> NCPoly {
        self.axpy(&Rat::ONE, other)
    }

    pub fn sub(&self, other: &NCPoly) -> NCPoly {
        self.axpy(&Rat::from_int(-1), other)
    }

    pub fn neg(&self) -> NCPoly {
        self.scale(&Rat::from_int(-1))
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: &Rat, other: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, v) in &other.terms {
            out.add_term(w.clone(), &(c * v));
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> NCPoly {
        if c.is_zero() {
            return NCPoly::zero();
        }
        NCPoly { terms: self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect() }
    }

    pub fn mul(&self, other: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.concat(b), &(ca * cb));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> NCPoly {
        let mut acc = NCPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Maps every variable through `f`; the map need not be injective.
    pub fn map_variables(&self, f: impl Fn(u16) -> u16) -> NCPoly {
        NCPoly::from_terms(
            self.terms.iter().map(|(w, c)| (NCWord(w.0.iter().map(|&v| f(v)).collect()), c.clone())),
        )
    }

    /// Replaces each variable `t_i` with `images[&i]`; unmapped variables stay.
    pub fn substitute(&self, images: &BTreeMap<u16, NCPoly>) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, c) in &self.terms {
            let mut t = NCPoly::constant(c.clone());
            for &v in w.0.iter() {
                match images.get(&v) {
                    Some(p) => t = t.mul(p),
                    None => t = t.mul(&NCPoly::var(v)),
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// `self(t_1 = images[0], t_2 = images[1], …)`; variables beyond the list stay.
    pub fn substitute_list(&self, images: &[NCPoly]) -> NCPoly {
        let map = images.iter().enumerate().map(|(i, p)| (i as u16 + 1, p.clone())).collect();
        self.substitute(&map)
    }

    pub fn multidegree_components(&self) -> BTreeMap<MultiDegree, NCPoly> {
        let mut out: BTreeMap<MultiDegree, NCPoly> = BTreeMap::new();
        for (w, c) in &self.terms {
            out.entry(w.multidegree()).or_default().add_term(w.clone(), c);
        }
        out
    }

    /// The multihomogeneous component of multidegree `d`.
    pub fn multilinear_component(&self, d: &MultiDegree) -> NCPoly {
        NCPoly {
            terms: self.terms.iter().filter(|(w, _)| &w.multidegree() == d).map(|(w, c)| (w.clone(), c.clone())).collect(),
        }
    }

    pub fn is_multihomogeneous(&self) -> bool {
        self.multidegree_components().len() <= 1
    }

    /// True iff every word is a permutation of `t1..tn`.
    pub fn is_multilinear(&self, n: usize) -> bool {
        let d = multilinear_degree(n);
        self.terms.keys().all(|w| w.multidegree() == d)
    }

    /// The part of `self(…, t_var + t_new, …)` of degree one in `t_new`.
    pub fn partial_linearization(&self, var: u16, new_var: u16) -> Result<NCPoly, FreeAlgError> {
        if self.variables().contains(&new_var) {
            return Err(FreeAlgError::VariableInUse(new_var));
        }
        let mut out = NCPoly::zero();
        for (w, c) in &self.terms {
            for (i, &v) in w.0.iter().enumerate() {
                if v == var {
                    let mut nw = w.clone();
                    nw.0[i] = new_var;
                    out.add_term(nw, c);
                }
            }
        }
        Ok(out)
    }

    /// Full linearization: each variable `v` of degree `d_v` is replaced by
    /// `d_v` fresh copies, blocks laid out contiguously from `t1` in
    /// variable order, and the multilinear part is kept. For a polynomial
    /// that is not multihomogeneous each component is linearized inside the
    /// same layout, sized by the largest degree of each variable.
    pub fn full_linearization(&self) -> NCPoly {
        self.full_linearization_with_layout().0
    }

    /// Linearization and, for each original variable, its block of copies.
    pub fn full_linearization_with_layout(&self) -> (NCPoly, BTreeMap<u16, Vec<u16>>) {
        let mut maxdeg: BTreeMap<u16, u32> = BTreeMap::new();
        for w in self.terms.keys() {
            for (v, k) in w.multidegree() {
                let e = maxdeg.entry(v).or_default();
                *e = (*e).max(k);
            }
        }
        let mut layout = BTreeMap::new();
        let mut next = 1u16;
        for (&v, &k) in &maxdeg {
            layout.insert(v, (next..next + k as u16).collect::<Vec<u16>>());
            next += k as u16;
        }
        let mut out = NCPoly::zero();
        for (w, c) in &self.terms {
            linearize_word(w, c, &layout, &mut out);
        }
        (out, layout)
    }

    /// One multilinear polynomial in `t1..tk` per multihomogeneous component.
    pub fn linearization_components(&self) -> Vec<NCPoly> {
        self.multidegree_components()
            .into_values()
            .map(|comp| {
                let (lin, _) = comp.full_linearization_with_layout();
                lin
            })
            .collect()
    }

    /// Proper iff invariant under every unit shift `t_i -> t_i + 1`.
    pub fn is_proper(&self) -> bool {
        self.variables().into_iter().all(|v| self.unit_shift(v) == *self)
    }

    /// `self(…, t_v + 1, …)`.
    pub fn unit_shift(&self, v: u16) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, c) in &self.terms {
            let pos: Vec<usize> = w.0.iter().enumerate().filter(|(_, &x)| x == v).map(|(i, _)| i).collect();
            for mask in 0u64..(1u64 << pos.len()) {
                let nw: SmallVec<[u16; 8]> = w
                    .0
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| match pos.iter().position(|p| p == i) {
                        Some(k) => mask >> k & 1 == 0,
                        None => true,
                    })
                    .map(|(_, &x)| x)
                    .collect();
                out.add_term(NCWord(nw), c);
            }
        }
        out
    }

    /// Applies `t_i -> t_{perm[i-1]+1}` for a permutation of `0..n`.
    pub fn permute(&self, perm: &[usize]) -> NCPoly {
        self.map_variables(|v| {
            let i = v as usize - 1;
            if i < perm.len() {
                perm[i] as u16 + 1
            } else {
                v
            }
        })
    }

    /// If `self` is `c` times a single left-normed commutator of variables, returns it.
    pub fn as_left_normed(&self) -> Option<(Rat, Vec<u16>)> {
        let deg = self.degree()?;
        if deg < 2 || self.len() != 1 << (deg - 1) || self.terms.keys().any(|w| w.len() != deg) {
            return None;
        }
        for (w, c) in &self.terms {
            if let Ok(l) = left_normed(w.letters()) {
                if l.scale(c) == *self {
                    return Some((c.clone(), w.letters().to_vec()));
                }
            }
        }
        None
    }
}

fn linearize_word(w: &NCWord, c: &Rat, layout: &BTreeMap<u16, Vec<u16>>, out: &mut NCPoly) {
    let md = w.multidegree();
    let vars: Vec<u16> = md.keys().copied().collect();
    let mut choices: Vec<Vec<Vec<usize>>> = Vec::new();
    for v in &vars {
        choices.push(permutations(md[v] as usize));
    }
    let mut idx = vec![0usize; vars.len()];
    loop {
        let mut counters = vec![0usize; vars.len()];
        let nw: SmallVec<[u16; 8]> = w
            .0
            .iter()
            .map(|x| {
                let k = vars.binary_search(x).unwrap();
                let occ = counters[k];
                counters[k] += 1;
                layout[x][choices[k][idx[k]][occ]]
            })
            .collect();
        out.add_term(NCWord(nw), c);
        let mut k = 0;
        loop {
            if k == vars.len() {
                return;
            }
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        if let Some((c, idx)) = self.as_left_normed() {
            let inner: Vec<String> = idx.iter().map(|v| format!("t{v}")).collect();
            let body = format!("[{}]", inner.join(","));
            return if c.is_one() {
                write!(f, "{body}")
            } else if c == Rat::from_int(-1) {
                write!(f, "-{body}")
            } else {
                write!(f, "{c}*{body}")
            };
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            if w.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{mag}*{w}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NCPoly({self})")
    }
}

pub fn commutator(a: &NCPoly, b: &NCPoly) -> NCPoly {
    a.mul(b).sub(&b.mul(a))
}

/// `a ∘ b = ab + ba`.
pub fn jordan(a: &NCPoly, b: &NCPoly) -> NCPoly {
    a.mul(b).add(&b.mul(a))
}

/// `[p1, p2, …, pk]` bracketed from the left.
pub fn left_normed_polys(entries: &[NCPoly]) -> Result<NCPoly, FreeAlgError> {
    if entries.len() < 2 {
        return Err(FreeAlgError::TooFewEntries(entries.len()));
    }
    let mut acc = entries[0].clone();
    for e in &entries[1..] {
        acc = commutator(&acc, e);
    }
    Ok(acc)
}

/// `[t_{i1}, …, t_{ik}]`.
pub fn left_normed(indices: &[u16]) -> Result<NCPoly, FreeAlgError> {
    if indices.contains(&0) {
        return Err(FreeAlgError::ZeroVariable);
    }
    let polys: Vec<NCPoly> = indices.iter().map(|&i| NCPoly::var(i)).collect();
    left_normed_polys(&polys)
}

/// `[a, b^{(s)}] = [a, b, …, b]` with `s` copies of `b`; `s = 0` gives `a`.
pub fn with_tail(a: &NCPoly, b: &NCPoly, s: u32) -> NCPoly {
    let mut acc = a.clone();
    for _ in 0..s {
        acc = commutator(&acc, b);
    }
    acc
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Both sides of `[z^n, b] = Σ_{i<n} z^{n-i-1} [z,b] z^i`.
pub fn power_commutator_expansion(z: &NCPoly, b: &NCPoly, n: u32) -> (NCPoly, NCPoly) {
    let lhs = commutator(&z.pow(n), b);
    let zb = commutator(z, b);
    let mut rhs = NCPoly::zero();
    for i in 0..n {
        rhs = rhs.add(&z.pow(n - i - 1).mul(&zb).mul(&z.pow(i)));
    }
    (lhs, rhs)
}

/// Both sides of `[a,b] z^n = Σ_{i≤n} C(n,i) z^i [a,b,z^{(n-i)}]`.
pub fn commutator_power_expansion(a: &NCPoly, b: &NCPoly, z: &NCPoly, n: u32) -> (NCPoly, NCPoly) {
    let ab = commutator(a, b);
    let lhs = ab.mul(&z.pow(n));
    let mut rhs = NCPoly::zero();
    for i in 0..=n {
        let c = Rat::from_int(binomial(n as u64, i as u64) as i64);
        rhs = rhs.add(&z.pow(i).mul(&with_tail(&ab, z, n - i)).scale(&c));
    }
    (lhs, rhs)
}

/// Number of derangements of `n` points.
pub fn derangements(n: usize) -> u64 {
    let mut d = [1u64, 0];
    if n < 2 {
        return d[n];
    }
    for k in 2..=n as u64 {
        d = [d[1], (k - 1) * (d[0] + d[1])];
    }
    d[1]
}

/// A basis element of the proper multilinear polynomials: a product of
/// left-normed commutators, each listed by its variable indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaElement {
    pub factors: Vec<Vec<u16>>,
    pub poly: NCPoly,
}

impl fmt::Display for GammaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for u in &self.factors {
            let inner: Vec<String> = u.iter().map(|v| format!("t{v}")).collect();
            write!(f, "[{}]", inner.join(","))?;
        }
        Ok(())
    }
}

fn set_partitions_min2(items: &[u16]) -> Vec<Vec<Vec<u16>>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    if items.len() == 1 {
        return vec![];
    }
    let first = items[0];
    let rest = &items[1..];
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << rest.len()) {
        let mut block = vec![first];
        let mut others = Vec::new();
        for (i, &x) in rest.iter().enumerate() {
            if mask >> i & 1 == 1 {
                block.push(x);
            } else {
                others.push(x);
            }
        }
        for mut p in set_partitions_min2(&others) {
            p.push(block.clone());
            out.push(p);
        }
    }
    out
}

/// Basis of the proper multilinear polynomials of degree `n`.
///
/// A block `B` of a set partition into blocks of size at least two
/// contributes the commutators `[t_max(B), t_π(1), …]` over all orderings of
/// the rest of `B`; factors are sorted by degree, then by index sequence.
/// The rank of the result is checked against the derangement number.
pub fn gamma_basis(n: usize) -> Vec<GammaElement> {
    assert!(n >= 2, "gamma_basis needs n >= 2");
    let items: Vec<u16> = (1..=n as u16).collect();
    let mut out = Vec::new();
    for partition in set_partitions_min2(&items) {
        let per_block: Vec<Vec<Vec<u16>>> = partition
            .iter()
            .map(|b| {
                let m = *b.iter().max().unwrap();
                let rest: Vec<u16> = b.iter().copied().filter(|&x| x != m).collect();
                permutations(rest.len())
                    .into_iter()
                    .map(|p| std::iter::once(m).chain(p.iter().map(|&i| rest[i])).collect())
                    .collect()
            })
            .collect();
        let mut idx = vec![0usize; per_block.len()];
        loop {
            let mut factors: Vec<Vec<u16>> = per_block.iter().zip(&idx).map(|(c, &i)| c[i].clone()).collect();
            factors.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
            let poly = factors.iter().fold(NCPoly::one(), |acc, u| acc.mul(&left_normed(u).unwrap()));
            out.push(GammaElement { factors, poly });
            let mut k = 0;
            loop {
                if k == idx.len() {
                    break;
                }
                idx[k] += 1;
                if idx[k] < per_block[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == idx.len() {
                break;
            }
        }
    }
    out.sort_by(|a, b| {
        let key = |g: &GammaElement| (g.factors.len(), g.factors.clone());
        key(a).cmp(&key(b))
    });
    let universe = KeyUniverse::new(words_of_multidegree(&multilinear_degree(n)));
    let mut space = Subspace::new(&universe);
    for g in &out {
        let row = to_row(&universe, &g.poly).expect("gamma element is multilinear");
        space.insert_row(&row);
    }
    assert_eq!(space.dim() as u64, derangements(n), "gamma basis rank differs from D_{n}");
    assert_eq!(out.len() as u64, derangements(n));
    out
}

/// Coordinates of `f` over a universe of words.
pub fn to_row(universe: &Arc<KeyUniverse<NCWord>>, f: &NCPoly) -> Result<SparseRow, LinError> {
    let mut row: SparseRow = Vec::with_capacity(f.len());
    for (w, c) in f.terms() {
        let col = universe.column(w).ok_or_else(|| LinError::KeyOutsideUniverse(w.to_string()))?;
        row.push((col, c.clone()));
    }
    row.sort_unstable_by_key(|e| e.0);
    Ok(row)
}

/// The polynomial with coordinates `row`.
pub fn from_row(universe: &KeyUniverse<NCWord>, row: &[(u32, Rat)]) -> NCPoly {
    NCPoly::from_terms(row.iter().map(|(c, v)| (universe.key(*c).clone(), v.clone())))
}

/// A target algebra for evaluating noncommutative polynomials.
pub trait EvalTarget {
    type Elem: Clone;
    fn one(&self) -> Self::Elem;
    fn zero(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `acc += c * x`.
    fn add_scaled(&self, acc: &mut Self::Elem, c: &Rat, x: &Self::Elem);
    fn is_zero(&self, a: &Self::Elem) -> bool;
}

/// Evaluates `f` with `t_i ↦ values[i-1]`, sharing prefix products between
/// words and skipping every word below a vanishing prefix.
pub fn evaluate<T: EvalTarget>(target: &T, f: &NCPoly, values: &[T::Elem]) -> Result<T::Elem, FreeAlgError> {
    if let Some(v) = f.variables().into_iter().find(|&v| v as usize > values.len()) {
        return Err(FreeAlgError::Unassigned(v));
    }
    let mut words: Vec<(&NCWord, &Rat)> = f.terms().collect();
    words.sort_unstable_by(|a, b| a.0 .0.cmp(&b.0 .0));
    let mut acc = target.zero();
    let mut stack: Vec<T::Elem> = vec![target.one()];
    let mut prefix: &[u16] = &[];
    let mut dead_at: Option<usize> = None;
    for (w, c) in words {
        let letters = w.letters();
        let common = letters.iter().zip(prefix.iter()).take_while(|(a, b)| a == b).count();
        if let Some(d) = dead_at {
            if common >= d && letters.len() >= d {
                continue;
            }
            dead_at = None;
        }
        stack.truncate(common + 1);
        let mut dead = false;
        for (k, &v) in letters.iter().enumerate().skip(common) {
            let next = target.mul(stack.last().unwrap(), &values[v as usize - 1]);
            if target.is_zero(&next) {
                dead_at = Some(k + 1);
                dead = true;
                break;
            }
            stack.push(next);
        }
        prefix = letters;
        if dead {
            let d = dead_at.unwrap();
            stack.truncate(d);
            prefix = &letters[..d];
            continue;
        }
        target.add_scaled(&mut acc, c, stack.last().unwrap());
    }
    Ok(acc)
}

/// The free algebra as its own evaluation target (substitution).
pub struct FreeTarget;

impl EvalTarget for FreeTarget {
    type Elem = NCPoly;
    fn one(&self) -> NCPoly {
        NCPoly::one()
    }
    fn zero(&self) -> NCPoly {
        NCPoly::zero()
    }
    fn mul(&self, a: &NCPoly, b: &NCPoly) -> NCPoly {
        a.mul(b)
    }
    fn add_scaled(&self, acc: &mut NCPoly, c: &Rat, x: &NCPoly) {
        *acc = acc.axpy(c, x);
    }
    fn is_zero(&self, a: &NCPoly) -> bool {
        a.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t(i: u16) -> NCPoly {
        NCPoly::var(i)
    }

    #[test]
    fn commutators() {
        assert!(commutator(&t(1), &t(1)).is_zero());
        assert_eq!(commutator(&t(1), &t(2)).to_string(), "[t1,t2]");
        assert_eq!(left_normed(&[1, 2]).unwrap().len(), 2);
        assert_eq!(left_normed(&[1]), Err(FreeAlgError::TooFewEntries(1)));
        assert_eq!(with_tail(&t(3), &t(1), 0), t(3));
    }

    #[test]
    fn left_normed_121_by_hand() {
        let w = |v: &[u16]| NCWord::from_slice(v);
        let expected = NCPoly::from_terms([
            (w(&[1, 2, 1]), Rat::from_int(2)),
            (w(&[2, 1, 1]), Rat::from_int(-1)),
            (w(&[1, 1, 2]), Rat::from_int(-1)),
        ]);
        assert_eq!(left_normed(&[1, 2, 1]).unwrap(), expected);
    }

    #[test]
    fn lemma3_expansions() {
        let (a, b, z) = (t(1), t(2), t(3));
        for n in 1..=6 {
            let (l, r) = power_commutator_expansion(&z, &b, n);
            assert_eq!(l, r);
            let (l, r) = commutator_power_expansion(&a, &b, &z, n);
            assert_eq!(l, r);
        }
        let (l, r) = power_commutator_expansion(&z, &b, 2);
        let zb = commutator(&z, &b);
        assert_eq!(l, z.mul(&zb).add(&zb.mul(&z)));
        assert_eq!(r, l);
    }

    #[test]
    fn lemma4_step() {
        for idx in [vec![1, 2], vec![2, 1, 1], vec![1, 2, 2, 1]] {
            let u = left_normed(&idx).unwrap();
            for j in 1..=3 {
                let v = t(j);
                let mut longer = idx.clone();
                longer.push(j);
                let bracket = left_normed(&longer).unwrap();
                assert_eq!(u.mul(&v), v.mul(&u).add(&bracket));
            }
        }
    }

    #[test]
    fn partial_linearization_of_square() {
        let p = t(1).mul(&t(1)).partial_linearization(1, 3).unwrap();
        assert_eq!(p, t(1).mul(&t(3)).add(&t(3).mul(&t(1))));
        assert_eq!(t(3).partial_linearization(1, 3), Err(FreeAlgError::VariableInUse(3)));
    }

    #[test]
    fn linearization_of_commutator_square() {
        let f = commutator(&t(1), &t(2)).pow(2);
        let (lin, layout) = f.full_linearization_with_layout();
        assert!(lin.is_multilinear(4));
        assert_eq!(layout[&1], vec![1, 2]);
        let swapped = lin.permute(&[1, 0, 3, 2]);
        assert_eq!(swapped, lin);
        let back = lin.map_variables(|v| if v <= 2 { 1 } else { 2 });
        assert_eq!(back, f.scale(&Rat::from_int(4)));
    }

    #[test]
    fn properness() {
        let c12 = commutator(&t(1), &t(2));
        assert!(c12.mul(&commutator(&t(3), &t(4))).is_proper());
        assert!(!t(1).mul(&t(2)).is_proper());
        assert!(NCPoly::one().is_proper());
    }

    #[test]
    fn derangement_numbers() {
        let d: Vec<u64> = (2..=7).map(derangements).collect();
        assert_eq!(d, vec![1, 2, 9, 44, 265, 1854]);
    }

    #[test]
    fn gamma_basis_small() {
        let g2 = gamma_basis(2);
        assert_eq!(g2.len(), 1);
        assert_eq!(g2[0].factors, vec![vec![2, 1]]);
        let g4 = gamma_basis(4);
        assert_eq!(g4.len(), 9);
        assert!(g4.iter().all(|g| g.poly.is_proper() && g.poly.is_multilinear(4)));
    }

    #[test]
    fn evaluation_substitutes() {
        let f = left_normed(&[1, 2, 1]).unwrap().add(&t(2).mul(&t(2)).scale(&Rat::from_int(3)));
        let vals = vec![t(1).add(&t(3)), t(2).mul(&t(1))];
        let direct = f.substitute_list(&vals);
        assert_eq!(evaluate(&FreeTarget, &f, &vals).unwrap(), direct);
        assert_eq!(evaluate(&FreeTarget, &t(3), &vals), Err(FreeAlgError::Unassigned(3)));
    }

    fn gen_nc() -> impl Strategy<Value = NCPoly> {
        let word = proptest::collection::vec(1u16..4, 0..4);
        proptest::collection::vec((word, -3i64..4), 0..5).prop_map(|ts| {
            NCPoly::from_terms(ts.into_iter().map(|(w, c)| (NCWord::from_slice(&w), Rat::from_int(c))))
        })
    }

    proptest! {
        #[test]
        fn jacobi(a in gen_nc(), b in gen_nc(), c in gen_nc()) {
            let j = commutator(&commutator(&a, &b), &c)
                .add(&commutator(&commutator(&b, &c), &a))
                .add(&commutator(&commutator(&c, &a), &b));
            prop_assert!(j.is_zero());
        }

        #[test]
        fn linearization_roundtrip(f in gen_nc()) {
            for comp in f.multidegree_components().into_values() {
                let (lin, layout) = comp.full_linearization_with_layout();
                let back = lin.map_variables(|v| *layout.iter().find(|(_, c)| c.contains(&v)).unwrap().0);
                let k: u64 = comp.terms().next().map(|(w, _)| {
                    w.multidegree().values().map(|&d| (1..=d as u64).product::<u64>()).product()
                }).unwrap_or(1);
                prop_assert_eq!(back, comp.scale(&Rat::from_int(k as i64)));
            }
        }

        #[test]
        fn trie_evaluation_matches_substitution(f in gen_nc(), g in gen_nc(), h in gen_nc()) {
            let vals = vec![g, h, NCPoly::var(1).add(&NCPoly::one())];
            prop_assert_eq!(evaluate(&FreeTarget, &f, &vals).unwrap(), f.substitute_list(&vals));
        }
    }
}
