//! Algebras to evaluate noncommutative polynomials on: square matrices over
//! K[X;Y] and finite-dimensional algebras given by structure constants.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactlin::Rat;
use crate::freealg::{evaluate, EvalTarget, FreeAlgError, NCPoly};
use crate::supercomm::{f_vars, Alphabet, ScError, SCPoly, YWord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgError {
    #[error("matrix sizes differ: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("supermatrix blocks {a}+{b} do not add up to {n}")]
    BlockSizes { n: usize, a: usize, b: usize },
    #[error(transparent)]
    Sc(#[from] ScError),
    #[error(transparent)]
    Free(#[from] FreeAlgError),
    #[error("index {0} out of range for dimension {1}")]
    IndexOutOfRange(usize, usize),
    #[error("associativity fails on basis triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("the declared unit is not a two-sided identity")]
    BadUnit,
    #[error("product of basis matrices {0} and {1} leaves the span")]
    NotClosed(usize, usize),
    #[error("invalid algebra document: {0}")]
    Json(String),
}

/// Square matrix with entries in K[X;Y], stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct MatSC {
    n: usize,
    alpha: Arc<Alphabet>,
    e: Vec<SCPoly>,
}

impl MatSC {
    pub fn from_rows(rows: Vec<Vec<SCPoly>>) -> MatSC {
        let n = rows.len();
        assert!(n > 0 && rows.iter().all(|r| r.len() == n), "matrix must be square");
        let alpha = rows[0][0].alphabet().clone();
        MatSC { n, alpha, e: rows.into_iter().flatten().collect() }
    }

    pub fn zero(n: usize, alpha: &Arc<Alphabet>) -> MatSC {
        MatSC { n, alpha: alpha.clone(), e: vec![SCPoly::zero(alpha); n * n] }
    }

    pub fn scalar(n: usize, p: &SCPoly) -> MatSC {
        let mut m = MatSC::zero(n, p.alphabet());
        for i in 0..n {
            m.e[i * n + i] = p.clone();
        }
        m
    }

    pub fn identity(n: usize, alpha: &Arc<Alphabet>) -> MatSC {
        MatSC::scalar(n, &SCPoly::one(alpha))
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alpha
    }

    pub fn get(&self, i: usize, j: usize) -> &SCPoly {
        &self.e[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: SCPoly) {
        self.e[i * self.n + j] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(|p| p.is_zero())
    }

    pub fn map(&self, f: impl Fn(&SCPoly) -> SCPoly) -> MatSC {
        MatSC { n: self.n, alpha: self.alpha.clone(), e: self.e.iter().map(f).collect() }
    }

    fn check(&self, other: &MatSC) -> Result<(), AlgError> {
        if self.n != other.n {
            return Err(AlgError::SizeMismatch(self.n, other.n));
        }
        if !Arc::ptr_eq(&self.alpha, &other.alpha) && self.alpha != other.alpha {
            return Err(ScError::AlphabetMismatch.into());
        }
        Ok(())
    }

    pub fn try_add(&self, other: &MatSC) -> Result<MatSC, AlgError> {
        self.check(other)?;
        Ok(MatSC { n: self.n, alpha: self.alpha.clone(), e: self.e.iter().zip(&other.e).map(|(a, b)| a + b).collect() })
    }

    pub fn try_sub(&self, other: &MatSC) -> Result<MatSC, AlgError> {
        self.check(other)?;
        Ok(MatSC { n: self.n, alpha: self.alpha.clone(), e: self.e.iter().zip(&other.e).map(|(a, b)| a - b).collect() })
    }

    pub fn try_mul(&self, other: &MatSC) -> Result<MatSC, AlgError> {
        self.check(other)?;
        let n = self.n;
        let mut e = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = SCPoly::zero(&self.alpha);
                for k in 0..n {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                e.push(acc);
            }
        }
        Ok(MatSC { n, alpha: self.alpha.clone(), e })
    }

    pub fn commutator(&self, other: &MatSC) -> MatSC {
        &(self * other) - &(other * self)
    }

    /// `ab + ba`.
    pub fn jordan(&self, other: &MatSC) -> MatSC {
        &(self * other) + &(other * self)
    }

    pub fn pow(&self, e: u32) -> MatSC {
        let mut acc = MatSC::identity(self.n, &self.alpha);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplies every entry on the left by `p`.
    pub fn scale_left(&self, p: &SCPoly) -> MatSC {
        self.map(|x| p * x)
    }

    pub fn scale(&self, c: &Rat) -> MatSC {
        self.map(|x| x.scale(c))
    }

    pub fn prime_automorphism(&self) -> Result<MatSC, ScError> {
        let e = self.e.iter().map(|p| p.prime_automorphism()).collect::<Result<Vec<_>, _>>()?;
        Ok(MatSC { n: self.n, alpha: self.alpha.clone(), e })
    }
}

impl std::ops::Add for &MatSC {
    type Output = MatSC;
    fn add(self, rhs: &MatSC) -> MatSC {
        self.try_add(rhs).expect("matrix shape mismatch")
    }
}

impl std::ops::Sub for &MatSC {
    type Output = MatSC;
    fn sub(self, rhs: &MatSC) -> MatSC {
        self.try_sub(rhs).expect("matrix shape mismatch")
    }
}

impl std::ops::Mul for &MatSC {
    type Output = MatSC;
    fn mul(self, rhs: &MatSC) -> MatSC {
        self.try_mul(rhs).expect("matrix shape mismatch")
    }
}

impl std::ops::Neg for &MatSC {
    type Output = MatSC;
    fn neg(self) -> MatSC {
        self.map(|p| -p)
    }
}

impl fmt::Display for MatSC {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.n {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for MatSC {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatSC{self}")
    }
}

/// Evaluation of noncommutative polynomials in n×n matrices over K[X;Y].
pub struct MatTarget {
    pub n: usize,
    pub alpha: Arc<Alphabet>,
}

impl MatTarget {
    pub fn for_matrix(m: &MatSC) -> MatTarget {
        MatTarget { n: m.n, alpha: m.alpha.clone() }
    }
}

impl EvalTarget for MatTarget {
    type Elem = MatSC;
    fn one(&self) -> MatSC {
        MatSC::identity(self.n, &self.alpha)
    }
    fn zero(&self) -> MatSC {
        MatSC::zero(self.n, &self.alpha)
    }
    fn mul(&self, a: &MatSC, b: &MatSC) -> MatSC {
        a * b
    }
    fn add_scaled(&self, acc: &mut MatSC, c: &Rat, x: &MatSC) {
        for (a, b) in acc.e.iter_mut().zip(&x.e) {
            if !b.is_zero() {
                *a = a.axpy(c, b);
            }
        }
    }
    fn is_zero(&self, a: &MatSC) -> bool {
        a.is_zero()
    }
}

/// `f(t_1 = values[0], t_2 = values[1], …)` in matrices.
pub fn evaluate_mat(f: &NCPoly, values: &[MatSC]) -> Result<MatSC, AlgError> {
    let first = values.first().ok_or(FreeAlgError::Unassigned(1))?;
    for v in &values[1..] {
        first.check(v)?;
    }
    Ok(evaluate(&MatTarget::for_matrix(first), f, values)?)
}

/// The generators `C1 = [[x1, y1], [y1', x1']]` and `C2` over the default alphabet.
pub fn generic_f() -> (MatSC, MatSC) {
    use f_vars::*;
    (MatSC::from_rows(vec![vec![x1(), y1()], vec![y1p(), x1p()]]), MatSC::from_rows(vec![vec![x2(), y2()], vec![y2p(), x2p()]]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenericKind {
    Plain,
    Grassmann,
    Supermatrix { a: usize, b: usize },
}

/// `r` generic n×n matrices over a fresh alphabet with variables `x{i}{j}_{r}` and `y{i}{j}_{r}`.
pub fn generic_matrices(kind: GenericKind, n: usize, r: usize) -> Result<Vec<MatSC>, AlgError> {
    if let GenericKind::Supermatrix { a, b } = kind {
        if a + b != n {
            return Err(AlgError::BlockSizes { n, a, b });
        }
    }
    let even = |i: usize, j: usize| match kind {
        GenericKind::Supermatrix { a, .. } => (i < a) == (j < a),
        _ => true,
    };
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for k in 1..=r {
        for i in 1..=n {
            for j in 1..=n {
                let has_x = !matches!(kind, GenericKind::Supermatrix { .. }) || even(i - 1, j - 1);
                let has_y = match kind {
                    GenericKind::Plain => false,
                    GenericKind::Grassmann => true,
                    GenericKind::Supermatrix { .. } => !even(i - 1, j - 1),
                };
                if has_x {
                    xs.push(format!("x{i}{j}_{k}"));
                }
                if has_y {
                    ys.push(format!("y{i}{j}_{k}"));
                }
            }
        }
    }
    let alpha = Alphabet::new(xs, ys)?;
    let mut out = Vec::new();
    for k in 1..=r {
        let rows = (1..=n)
            .map(|i| {
                (1..=n)
                    .map(|j| {
                        let x = SCPoly::var(&alpha, &format!("x{i}{j}_{k}"));
                        let y = SCPoly::var(&alpha, &format!("y{i}{j}_{k}"));
                        match (x, y) {
                            (Ok(x), Ok(y)) => &x + &y,
                            (Ok(x), Err(_)) => x,
                            (Err(_), Ok(y)) => y,
                            (Err(_), Err(_)) => unreachable!(),
                        }
                    })
                    .collect()
            })
            .collect();
        out.push(MatSC::from_rows(rows));
    }
    Ok(out)
}

/// True iff `a` commutes with every generator.
pub fn is_central(a: &MatSC, generators: &[MatSC]) -> bool {
    generators.iter().all(|g| a.commutator(g).is_zero())
}

/// Central, and `a·w` is central for every word `w` of length at most `bound` in the generators.
pub fn is_strongly_central_bounded(a: &MatSC, generators: &[MatSC], bound: usize) -> bool {
    if !is_central(a, generators) {
        return false;
    }
    let mut layer = vec![a.clone()];
    for _ in 0..bound {
        let mut next = Vec::with_capacity(layer.len() * generators.len());
        for p in &layer {
            for g in generators {
                let q = p * g;
                if !is_central(&q, generators) {
                    return false;
                }
                next.push(q);
            }
        }
        layer = next;
    }
    true
}

/// A finite-dimensional algebra `e_i e_j = Σ_k c_ijk e_k`.
#[derive(Clone, Debug)]
pub struct FinDimAlgebra {
    name: String,
    labels: Vec<String>,
    unit: Option<Vec<Rat>>,
    table: Vec<Vec<(usize, Rat)>>,
    monomial: Option<Vec<(u32, Rat)>>,
}

/// Marks a vanishing product in the monomial table.
pub const ZERO_INDEX: u32 = u32::MAX;

impl FinDimAlgebra {
    /// Builds the algebra and checks associativity on all basis triples and the unit laws.
    pub fn new(
        name: &str,
        labels: Vec<String>,
        unit: Option<Vec<Rat>>,
        constants: impl IntoIterator<Item = (usize, usize, usize, Rat)>,
    ) -> Result<FinDimAlgebra, AlgError> {
        let d = labels.len();
        let mut dense = vec![vec![Rat::ZERO; d]; d * d];
        for (i, j, k, c) in constants {
            for x in [i, j, k] {
                if x >= d {
                    return Err(AlgError::IndexOutOfRange(x, d));
                }
            }
            dense[i * d + j][k] += &c;
        }
        let table: Vec<Vec<(usize, Rat)>> = dense
            .into_iter()
            .map(|row| row.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect())
            .collect();
        let monomial = if table.iter().all(|r| r.len() <= 1) {
            Some(table.iter().map(|r| r.first().map_or((ZERO_INDEX, Rat::ZERO), |(k, c)| (*k as u32, c.clone()))).collect())
        } else {
            None
        };
        let alg = FinDimAlgebra { name: name.to_string(), labels, unit, table, monomial };
        alg.check_associative()?;
        if let Some(u) = &alg.unit {
            if u.len() != d {
                return Err(AlgError::BadUnit);
            }
            for i in 0..d {
                let e = alg.basis_vector(i);
                if alg.mul(u, &e) != e || alg.mul(&e, u) != e {
                    return Err(AlgError::BadUnit);
                }
            }
        }
        Ok(alg)
    }

    fn check_associative(&self) -> Result<(), AlgError> {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                let ij = self.basis_product(i, j);
                for k in 0..d {
                    let mut left = vec![Rat::ZERO; d];
                    for (m, c) in ij {
                        for (p, c2) in self.basis_product(*m, k) {
                            left[*p] += &(c * c2);
                        }
                    }
                    let mut right = vec![Rat::ZERO; d];
                    for (m, c) in self.basis_product(j, k) {
                        for (p, c2) in self.basis_product(i, *m) {
                            right[*p] += &(c * c2);
                        }
                    }
                    if left != right {
                        return Err(AlgError::NotAssociative(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> Option<&[Rat]> {
        self.unit.as_deref()
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Rat)] {
        &self.table[i * self.dim() + j]
    }

    /// `e_i e_j = c e_k` as `(k, c)`, when every basis product is a single term.
    pub fn monomial_table(&self) -> Option<&[(u32, Rat)]> {
        self.monomial.as_deref()
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rat> {
        let mut v = vec![Rat::ZERO; self.dim()];
        v[i] = Rat::ONE;
        v
    }

    pub fn mul(&self, a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        let d = self.dim();
        let mut out = vec![Rat::ZERO; d];
        for (i, ca) in a.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, cb) in b.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let ab = ca * cb;
                for (k, c) in self.basis_product(i, j) {
                    out[*k] += &(&ab * c);
                }
            }
        }
        out
    }

    pub fn commutator(&self, a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        ab.iter().zip(&ba).map(|(x, y)| x - y).collect()
    }

    pub fn is_central_element(&self, a: &[Rat]) -> bool {
        (0..self.dim()).all(|i| self.commutator(a, &self.basis_vector(i)).iter().all(|c| c.is_zero()))
    }

    /// Renders an element as a combination of basis labels.
    pub fn render(&self, v: &[Rat]) -> String {
        let parts: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| if c.is_one() { self.labels[i].clone() } else { format!("({c})*{}", self.labels[i]) })
            .collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }

    /// Builds the algebra spanned by the given matrices; each must have an
    /// entry where it alone is nonzero, which is used to read off coordinates.
    pub fn from_matrix_basis(name: &str, labels: Vec<String>, mats: &[Vec<Vec<Rat>>]) -> Result<FinDimAlgebra, AlgError> {
        let d = mats.len();
        let n = mats[0].len();
        let mut anchors = Vec::with_capacity(d);
        for (b, m) in mats.iter().enumerate() {
            let pos = (0..n * n)
                .find(|&p| {
                    let (i, j) = (p / n, p % n);
                    !m[i][j].is_zero() && mats.iter().enumerate().all(|(o, mo)| o == b || mo[i][j].is_zero())
                })
                .ok_or(AlgError::NotClosed(b, b))?;
            anchors.push(pos);
        }
        let matmul = |a: &Vec<Vec<Rat>>, b: &Vec<Vec<Rat>>| -> Vec<Vec<Rat>> {
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| (0..n).fold(Rat::ZERO, |acc, k| &acc + &(&a[i][k] * &b[k][j])))
                        .collect()
                })
                .collect()
        };
        let mut constants = Vec::new();
        for i in 0..d {
            for j in 0..d {
                let p = matmul(&mats[i], &mats[j]);
                let coords: Vec<Rat> = anchors.iter().enumerate().map(|(b, &pos)| &p[pos / n][pos % n] / &mats[b][pos / n][pos % n]).collect();
                let mut back = vec![vec![Rat::ZERO; n]; n];
                for (b, c) in coords.iter().enumerate() {
                    for r in 0..n {
                        for s in 0..n {
                            back[r][s] += &(c * &mats[b][r][s]);
                        }
                    }
                }
                if back != p {
                    return Err(AlgError::NotClosed(i, j));
                }
                for (k, c) in coords.into_iter().enumerate() {
                    if !c.is_zero() {
                        constants.push((i, j, k, c));
                    }
                }
            }
        }
        let mut identity = vec![vec![Rat::ZERO; n]; n];
        for (i, row) in identity.iter_mut().enumerate() {
            row[i] = Rat::ONE;
        }
        let unit: Vec<Rat> = anchors.iter().enumerate().map(|(b, &pos)| &identity[pos / n][pos % n] / &mats[b][pos / n][pos % n]).collect();
        let mut back = vec![vec![Rat::ZERO; n]; n];
        for (b, c) in unit.iter().enumerate() {
            for r in 0..n {
                for s in 0..n {
                    back[r][s] += &(c * &mats[b][r][s]);
                }
            }
        }
        let unit = if back == identity { Some(unit) } else { None };
        FinDimAlgebra::new(name, labels, unit, constants)
    }

    pub fn to_json(&self) -> AlgebraDoc {
        let mut sc = Vec::new();
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                for (k, c) in self.basis_product(i, j) {
                    sc.push((i, j, *k, c.clone()));
                }
            }
        }
        AlgebraDoc { name: Some(self.name.clone()), dim: d, labels: self.labels.clone(), unit: self.unit.clone(), structure_constants: sc }
    }

    pub fn from_json(doc: &AlgebraDoc) -> Result<FinDimAlgebra, AlgError> {
        if doc.labels.len() != doc.dim {
            return Err(AlgError::Json(format!("{} labels for dimension {}", doc.labels.len(), doc.dim)));
        }
        FinDimAlgebra::new(
            doc.name.as_deref().unwrap_or("imported"),
            doc.labels.clone(),
            doc.unit.clone(),
            doc.structure_constants.iter().cloned(),
        )
    }
}

/// JSON form of a finite-dimensional algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dim: usize,
    pub labels: Vec<String>,
    #[serde(default)]
    pub unit: Option<Vec<Rat>>,
    pub structure_constants: Vec<(usize, usize, usize, Rat)>,
}

/// Dense evaluation target for a finite-dimensional algebra.
pub struct FinDimTarget<'a>(pub &'a FinDimAlgebra);

impl EvalTarget for FinDimTarget<'_> {
    type Elem = Vec<Rat>;
    fn one(&self) -> Vec<Rat> {
        self.0.unit.clone().expect("evaluating a constant term needs a unit")
    }
    fn zero(&self) -> Vec<Rat> {
        vec![Rat::ZERO; self.0.dim()]
    }
    fn mul(&self, a: &Vec<Rat>, b: &Vec<Rat>) -> Vec<Rat> {
        self.0.mul(a, b)
    }
    fn add_scaled(&self, acc: &mut Vec<Rat>, c: &Rat, x: &Vec<Rat>) {
        for (a, b) in acc.iter_mut().zip(x) {
            if !b.is_zero() {
                *a += &(c * b);
            }
        }
    }
    fn is_zero(&self, a: &Vec<Rat>) -> bool {
        a.iter().all(|c| c.is_zero())
    }
}

/// `f` evaluated at elements of a finite-dimensional algebra.
pub fn evaluate_fd(alg: &FinDimAlgebra, f: &NCPoly, values: &[Vec<Rat>]) -> Result<Vec<Rat>, AlgError> {
    Ok(evaluate(&FinDimTarget(alg), f, values)?)
}

/// Words of a polynomial in lex order with shared-prefix lengths, for
/// repeated evaluation on basis tuples.
#[derive(Clone, Debug)]
pub struct CompiledPoly {
    words: Vec<(Vec<u16>, Rat, usize)>,
    nvars: usize,
}

impl CompiledPoly {
    pub fn new(f: &NCPoly) -> CompiledPoly {
        let mut words: Vec<(Vec<u16>, Rat, usize)> = f.terms().map(|(w, c)| (w.letters().to_vec(), c.clone(), 0)).collect();
        words.sort_by(|a, b| a.0.cmp(&b.0));
        for i in 1..words.len() {
            let l = words[i].0.iter().zip(&words[i - 1].0).take_while(|(a, b)| a == b).count();
            words[i].2 = l;
        }
        CompiledPoly { words, nvars: f.max_variable() as usize }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }
}

/// Evaluates `f` with `t_i ↦ e_{tuple[i-1]}`; returns dense coordinates.
pub fn evaluate_basis_tuple(alg: &FinDimAlgebra, f: &CompiledPoly, tuple: &[usize]) -> Vec<Rat> {
    let d = alg.dim();
    let mut out = vec![Rat::ZERO; d];
    match alg.monomial_table() {
        Some(table) => {
            let mut stack: Vec<(u32, Rat)> = Vec::with_capacity(16);
            let mut dead: usize = usize::MAX;
            for (w, c, lcp) in &f.words {
                if *lcp >= dead {
                    continue;
                }
                dead = usize::MAX;
                stack.truncate(*lcp);
                let mut alive = true;
                for (k, &v) in w.iter().enumerate().skip(*lcp) {
                    let b = tuple[v as usize - 1] as u32;
                    let next = match stack.last() {
                        None => (b, Rat::ONE),
                        Some((a, ca)) => {
                            let (p, cp) = &table[*a as usize * d + b as usize];
                            if *p == ZERO_INDEX {
                                (ZERO_INDEX, Rat::ZERO)
                            } else {
                                (*p, ca * cp)
                            }
                        }
                    };
                    if next.0 == ZERO_INDEX {
                        dead = k + 1;
                        alive = false;
                        break;
                    }
                    stack.push(next);
                }
                if !alive {
                    continue;
                }
                match stack.last() {
                    Some((k, ck)) => out[*k as usize] += &(c * ck),
                    None => {
                        let u = alg.unit().expect("constant term needs a unit");
                        for (o, x) in out.iter_mut().zip(u) {
                            *o += &(c * x);
                        }
                    }
                }
            }
        }
        None => {
            let values: Vec<Vec<Rat>> = (0..f.nvars).map(|i| alg.basis_vector(tuple[i])).collect();
            let target = FinDimTarget(alg);
            for (w, c, _) in &f.words {
                let mut acc = match w.first() {
                    Some(&v) => values[v as usize - 1].clone(),
                    None => target.one(),
                };
                for &v in w.iter().skip(1) {
                    acc = alg.mul(&acc, &values[v as usize - 1]);
                }
                target.add_scaled(&mut out, c, &acc);
            }
        }
    }
    out
}

/// UT_2(K) with basis `e11, e12, e22`.
pub fn ut2() -> FinDimAlgebra {
    let m = |i: usize, j: usize| unit_matrix(2, &[(i, j)]);
    FinDimAlgebra::from_matrix_basis("UT2", vec!["e11".into(), "e12".into(), "e22".into()], &[m(0, 0), m(0, 1), m(1, 1)])
        .expect("UT2 is a matrix subalgebra")
}

/// Upper triangular 3×3 matrices whose (1,1) and (3,3) entries agree.
pub fn gordienko_a1() -> FinDimAlgebra {
    let m = |ps: &[(usize, usize)]| unit_matrix(3, ps);
    FinDimAlgebra::from_matrix_basis(
        "A1",
        ["e11+e33", "e12", "e13", "e22", "e23"].iter().map(|s| s.to_string()).collect(),
        &[m(&[(0, 0), (2, 2)]), m(&[(0, 1)]), m(&[(0, 2)]), m(&[(1, 1)]), m(&[(1, 2)])],
    )
    .expect("A1 is a matrix subalgebra")
}

fn unit_matrix(n: usize, ones: &[(usize, usize)]) -> Vec<Vec<Rat>> {
    let mut m = vec![vec![Rat::ZERO; n]; n];
    for &(i, j) in ones {
        m[i][j] = Rat::ONE;
    }
    m
}

/// Subsets of `{0..k}` ordered by size then lexicographically.
fn grassmann_masks(k: usize) -> Vec<u64> {
    let mut masks: Vec<u64> = (0..1u64 << k).collect();
    masks.sort_by_key(|&m| (m.count_ones(), YWord(m)));
    masks
}

fn grassmann_label(m: u64) -> String {
    if m == 0 {
        "1".to_string()
    } else {
        YWord(m).indices().map(|i| format!("e{}", i + 1)).collect()
    }
}

/// The Grassmann algebra of a k-dimensional space, dimension 2^k.
pub fn grassmann_truncated(k: usize) -> FinDimAlgebra {
    assert!((1..=16).contains(&k));
    let masks = grassmann_masks(k);
    let index: std::collections::HashMap<u64, usize> = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let mut constants = Vec::new();
    for (i, &a) in masks.iter().enumerate() {
        for (j, &b) in masks.iter().enumerate() {
            if let Some(neg) = YWord(a).mul_sign(YWord(b)) {
                constants.push((i, j, index[&(a | b)], Rat::from_int(if neg { -1 } else { 1 })));
            }
        }
    }
    let mut unit = vec![Rat::ZERO; masks.len()];
    unit[0] = Rat::ONE;
    FinDimAlgebra::new(&format!("E{k}"), masks.iter().map(|&m| grassmann_label(m)).collect(), Some(unit), constants)
        .expect("Grassmann structure constants are associative")
}

/// Index in `m11_over_grassmann(k)` of `e_{r+1,c+1} ⊗ m`, where bit `i` of
/// `mask` stands for the generator `e_{i+1}`.
pub fn m11_basis_index(alg: &FinDimAlgebra, r: usize, c: usize, mask: u64) -> Option<usize> {
    let label = format!("e{}{}({})", r + 1, c + 1, grassmann_label(mask));
    alg.labels().iter().position(|l| *l == label)
}

/// M_{1,1}(E_k): 2×2 matrices with even diagonal and odd off-diagonal entries
/// from the Grassmann algebra on k generators; dimension 2^(k+1).
pub fn m11_over_grassmann(k: usize) -> FinDimAlgebra {
    assert!((1..=12).contains(&k));
    let masks = grassmann_masks(k);
    let mut basis: Vec<(usize, usize, u64)> = Vec::new();
    for (r, c) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        let odd = r != c;
        for &m in &masks {
            if (m.count_ones() % 2 == 1) == odd {
                basis.push((r, c, m));
            }
        }
    }
    let index: std::collections::HashMap<(usize, usize, u64), usize> = basis.iter().enumerate().map(|(i, &b)| (b, i)).collect();
    let mut constants = Vec::new();
    for (i, &(r1, c1, a)) in basis.iter().enumerate() {
        for (j, &(r2, c2, b)) in basis.iter().enumerate() {
            if c1 != r2 {
                continue;
            }
            if let Some(neg) = YWord(a).mul_sign(YWord(b)) {
                constants.push((i, j, index[&(r1, c2, a | b)], Rat::from_int(if neg { -1 } else { 1 })));
            }
        }
    }
    let mut unit = vec![Rat::ZERO; basis.len()];
    unit[index[&(0, 0, 0)]] = Rat::ONE;
    unit[index[&(1, 1, 0)]] = Rat::ONE;
    let labels = basis.iter().map(|&(r, c, m)| format!("e{}{}({})", r + 1, c + 1, grassmann_label(m))).collect();
    FinDimAlgebra::new(&format!("M11(E{k})"), labels, Some(unit), constants).expect("M11(E_k) is associative")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::{commutator, left_normed, NCWord};
    use f_vars::*;
    use proptest::prelude::*;

    fn t(i: u16) -> NCPoly {
        NCPoly::var(i)
    }

    #[test]
    fn generic_plain_and_super() {
        let m = generic_matrices(GenericKind::Plain, 2, 1).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].alphabet().nx(), 4);
        assert_eq!(m[0].alphabet().ny(), 0);
        let s = generic_matrices(GenericKind::Supermatrix { a: 1, b: 1 }, 2, 2).unwrap();
        for c in &s {
            assert_eq!(c.get(0, 0).z2_part(1), SCPoly::zero(c.alphabet()));
            assert_eq!(c.get(0, 1).z2_part(0), SCPoly::zero(c.alphabet()));
            assert_eq!(c.get(1, 0).z2_part(0), SCPoly::zero(c.alphabet()));
        }
        assert_eq!(s[0].alphabet().nx(), 4);
        assert_eq!(s[0].alphabet().ny(), 4);
        assert_eq!(
            generic_matrices(GenericKind::Supermatrix { a: 1, b: 2 }, 2, 1),
            Err(AlgError::BlockSizes { n: 2, a: 1, b: 2 })
        );
        let g = generic_matrices(GenericKind::Grassmann, 2, 1).unwrap();
        assert_eq!(g[0].get(0, 1).len(), 2);
    }

    #[test]
    fn supermatrix_pair_matches_c1_c2() {
        let s = generic_matrices(GenericKind::Supermatrix { a: 1, b: 1 }, 2, 2).unwrap();
        let (c1, c2) = generic_f();
        let f = commutator(&t(1), &t(2)).pow(2).mul(&t(1));
        let a = evaluate_mat(&f, &s).unwrap();
        let b = evaluate_mat(&f, &[c1, c2]).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(a.get(i, j).len(), b.get(i, j).len());
            }
        }
    }

    #[test]
    fn commutator_entry_and_square() {
        let (c1, c2) = generic_f();
        let k = c1.commutator(&c2);
        assert_eq!(*k.get(0, 1), &(&y1() * &(&x2p() - &x2())) - &(&y2() * &(&x1p() - &x1())));
        let sq = c1.pow(2);
        assert_eq!(*sq.get(0, 0), &(&x1() * &x1()) + &(&y1() * &y1p()));
        assert_eq!(*sq.get(0, 1), &(&x1() + &x1p()) * &y1());
        assert_eq!(*sq.get(1, 0), &(&x1() + &x1p()) * &y1p());
        assert_eq!(*sq.get(1, 1), &(&x1p() * &x1p()) + &(&y1p() * &y1()));
        assert_eq!(c1.pow(0), MatSC::identity(2, c1.alphabet()));
    }

    #[test]
    fn cube_and_hall_vanish_on_f() {
        let (c1, c2) = generic_f();
        let k = commutator(&t(1), &t(2));
        assert!(evaluate_mat(&k.pow(3), &[c1.clone(), c2.clone()]).unwrap().is_zero());
        assert!(evaluate_mat(&commutator(&k.pow(2), &t(1)), &[c1.clone(), c2.clone()]).unwrap().is_zero());
        assert!(!evaluate_mat(&k, &[c1, c2]).unwrap().is_zero());
    }

    #[test]
    fn identity_central_not_strongly() {
        let (c1, c2) = generic_f();
        let one = MatSC::identity(2, c1.alphabet());
        assert!(is_central(&one, &[c1.clone(), c2.clone()]));
        assert!(!is_strongly_central_bounded(&one, &[c1.clone(), c2.clone()], 4));
        assert!(!is_central(&c1, &[c1.clone(), c2]));
    }

    #[test]
    fn a1_structure() {
        let a = gordienko_a1();
        assert_eq!(a.dim(), 5);
        assert_eq!(a.unit().unwrap().iter().filter(|c| !c.is_zero()).count(), 2);
        assert!(a.monomial_table().is_some());
        let s4: NCPoly = crate::freealg::permutations(4).iter().fold(NCPoly::zero(), |acc, p| {
            let w = NCWord::from_slice(&p.iter().map(|&i| i as u16 + 1).collect::<Vec<_>>());
            acc.add(&NCPoly::monomial(w, Rat::from_int(crate::freealg::permutation_sign(p))))
        });
        let cs4 = CompiledPoly::new(&s4);
        let mut tuple = vec![0usize; 4];
        for code in 0..625 {
            let mut c = code;
            for slot in tuple.iter_mut() {
                *slot = c % 5;
                c /= 5;
            }
            assert!(evaluate_basis_tuple(&a, &cs4, &tuple).iter().all(|x| x.is_zero()));
        }
        let triple = commutator(&t(1), &t(2)).mul(&commutator(&t(3), &t(4))).mul(&commutator(&t(5), &t(6)));
        let ct = CompiledPoly::new(&triple);
        let mut tuple = vec![0usize; 6];
        for code in 0..5usize.pow(6) {
            let mut c = code;
            for slot in tuple.iter_mut() {
                *slot = c % 5;
                c /= 5;
            }
            assert!(evaluate_basis_tuple(&a, &ct, &tuple).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn grassmann_relations() {
        let e = grassmann_truncated(2);
        assert_eq!(e.dim(), 4);
        let e1 = e.basis_vector(1);
        let e2 = e.basis_vector(2);
        let e12 = e.mul(&e1, &e2);
        let e21 = e.mul(&e2, &e1);
        assert_eq!(e12, e21.iter().map(|c| -c).collect::<Vec<_>>());
        assert!(e.mul(&e12, &e12).iter().all(|c| c.is_zero()));
        assert_eq!(e.labels()[3], "e1e2");
    }

    #[test]
    fn m11_shape() {
        let m = m11_over_grassmann(3);
        assert_eq!(m.dim(), 16);
        assert!(m.labels().contains(&"e12(e1e2e3)".to_string()));
        assert!(m.unit().is_some());
        assert!(m.monomial_table().is_some());
    }

    #[test]
    fn json_roundtrip() {
        let a = gordienko_a1();
        let doc = a.to_json();
        let text = serde_json::to_string(&doc).unwrap();
        let back: AlgebraDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(back, doc);
        let b = FinDimAlgebra::from_json(&back).unwrap();
        assert_eq!(b.to_json(), doc);
        let bad = AlgebraDoc {
            name: None,
            dim: 2,
            labels: vec!["a".into(), "b".into()],
            unit: None,
            structure_constants: vec![(0, 0, 1, Rat::ONE), (0, 1, 0, Rat::ONE)],
        };
        assert!(matches!(FinDimAlgebra::from_json(&bad), Err(AlgError::NotAssociative(..))));
    }

    #[test]
    fn basis_tuple_matches_dense() {
        let m = m11_over_grassmann(2);
        let f = left_normed(&[1, 2, 3]).unwrap().mul(&t(1)).add(&NCPoly::one());
        let cf = CompiledPoly::new(&f);
        for tuple in [[1usize, 5, 6], [0, 2, 7], [3, 3, 4]] {
            let vals: Vec<Vec<Rat>> = tuple.iter().map(|&i| m.basis_vector(i)).collect();
            assert_eq!(evaluate_basis_tuple(&m, &cf, &tuple), evaluate_fd(&m, &f, &vals).unwrap());
        }
    }

    fn gen_nc() -> impl Strategy<Value = NCPoly> {
        let word = proptest::collection::vec(1u16..3, 0..3);
        proptest::collection::vec((word, -2i64..3), 0..4).prop_map(|ts| {
            NCPoly::from_terms(ts.into_iter().map(|(w, c)| (NCWord::from_slice(&w), Rat::from_int(c))))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn evaluation_is_homomorphism(f in gen_nc(), g in gen_nc(), a in 0u32..3) {
            let (c1, c2) = generic_f();
            let vals = vec![c1.pow(a), &c2 + &c1];
            let ef = evaluate_mat(&f, &vals).unwrap();
            let eg = evaluate_mat(&g, &vals).unwrap();
            prop_assert_eq!(evaluate_mat(&f.mul(&g), &vals).unwrap(), &ef * &eg);
            prop_assert_eq!(evaluate_mat(&f.add(&g), &vals).unwrap(), &ef + &eg);
        }
    }
}
