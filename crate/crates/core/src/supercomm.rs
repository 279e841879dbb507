//! The free supercommutative algebra K[X;Y] = K[X] ⊗ E(Y) over finite
//! alphabets of even (`x`) and odd (`y`) generators.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use rustc_hash::FxHashMap;
use smallvec::SmallVec;
use thiserror::Error;

use crate::exactlin::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScError {
    #[error("operands use different alphabets")]
    AlphabetMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable `{0}` has no primed partner")]
    UnpairedVariable(String),
    #[error("operand must not contain odd variables")]
    NotYFree,
    #[error("division by zero")]
    DivisionByZero,
    #[error("at most 64 odd variables are supported, got {0}")]
    TooManyOddVariables(usize),
}

/// Ordered names of the even and odd generators.
#[derive(Debug, PartialEq, Eq)]
pub struct Alphabet {
    x: Vec<String>,
    y: Vec<String>,
}

impl Alphabet {
    pub fn new(x: Vec<String>, y: Vec<String>) -> Result<Arc<Alphabet>, ScError> {
        if y.len() > 64 {
            return Err(ScError::TooManyOddVariables(y.len()));
        }
        Ok(Arc::new(Alphabet { x, y }))
    }

    /// `x1, x2, x1', x2'` and `y1, y2, y1', y2'`, shared by every default-alphabet value.
    pub fn default_f() -> Arc<Alphabet> {
        static DEFAULT: OnceLock<Arc<Alphabet>> = OnceLock::new();
        DEFAULT
            .get_or_init(|| {
                let names = |p: &str| ["1", "2", "1'", "2'"].iter().map(|s| format!("{p}{s}")).collect();
                Arc::new(Alphabet { x: names("x"), y: names("y") })
            })
            .clone()
    }

    pub fn x_names(&self) -> &[String] {
        &self.x
    }

    pub fn y_names(&self) -> &[String] {
        &self.y
    }

    pub fn nx(&self) -> usize {
        self.x.len()
    }

    pub fn ny(&self) -> usize {
        self.y.len()
    }

    pub fn x_index(&self, name: &str) -> Option<usize> {
        self.x.iter().position(|n| n == name)
    }

    pub fn y_index(&self, name: &str) -> Option<usize> {
        self.y.iter().position(|n| n == name)
    }
}

fn same_alphabet(a: &Arc<Alphabet>, b: &Arc<Alphabet>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Exponent vector over the even alphabet.
pub type XMono = SmallVec<[u16; 8]>;

/// Canonical odd monomial: bit `i` set means `y_i` occurs; the factors are
/// read in increasing index order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct YWord(pub u64);

impl YWord {
    pub const EMPTY: YWord = YWord(0);

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let i = m.trailing_zeros() as usize;
                m &= m - 1;
                Some(i)
            }
        })
    }

    /// Sign of `self * other` brought to canonical order, or `None` if they share a factor.
    #[inline]
    pub fn mul_sign(self, other: YWord) -> Option<bool> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let mut inversions = 0u32;
        let mut b = other.0;
        while b != 0 {
            let j = b.trailing_zeros();
            b &= b - 1;
            let above = if j == 63 { 0 } else { self.0 >> (j + 1) };
            inversions += above.count_ones();
        }
        Some(inversions & 1 == 1)
    }
}

impl Ord for YWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.indices().cmp(other.indices())
    }
}

impl PartialOrd for YWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for YWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.indices()).finish()
    }
}

/// Sorts a product of odd generators, returning `(negative, word)`, or
/// `Ok(None)` when a generator repeats.
pub fn sc_normalize_yproduct(indices: &[usize], ny: usize) -> Result<Option<(bool, YWord)>, ScError> {
    let mut acc = YWord::EMPTY;
    let mut neg = false;
    for &i in indices {
        if i >= ny || i >= 64 {
            return Err(ScError::UnknownVariable(format!("y#{i}")));
        }
        match acc.mul_sign(YWord(1 << i)) {
            None => return Ok(None),
            Some(s) => {
                neg ^= s;
                acc = YWord(acc.0 | 1 << i);
            }
        }
    }
    Ok(Some((neg, acc)))
}

/// A monomial `x^e * y_w`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mono {
    pub x: XMono,
    pub y: YWord,
}

impl Mono {
    pub fn x_degree(&self) -> u32 {
        self.x.iter().map(|&e| e as u32).sum()
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.x_degree()
            .cmp(&other.x_degree())
            .then_with(|| self.x.cmp(&other.x))
            .then_with(|| self.y.cmp(&other.y))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in K[X;Y] stored as terms sorted ascending in the monomial order.
#[derive(Clone)]
pub struct SCPoly {
    alpha: Arc<Alphabet>,
    terms: Vec<(Mono, Rat)>,
}

impl PartialEq for SCPoly {
    fn eq(&self, other: &Self) -> bool {
        same_alphabet(&self.alpha, &other.alpha) && self.terms == other.terms
    }
}

impl Eq for SCPoly {}

impl SCPoly {
    pub fn zero(alpha: &Arc<Alphabet>) -> SCPoly {
        SCPoly { alpha: alpha.clone(), terms: Vec::new() }
    }

    pub fn constant(alpha: &Arc<Alphabet>, c: Rat) -> SCPoly {
        let mut p = SCPoly::zero(alpha);
        if !c.is_zero() {
            p.terms.push((Mono { x: smallvec::smallvec![0; alpha.nx()], y: YWord::EMPTY }, c));
        }
        p
    }

    pub fn one(alpha: &Arc<Alphabet>) -> SCPoly {
        SCPoly::constant(alpha, Rat::ONE)
    }

    pub fn x(alpha: &Arc<Alphabet>, i: usize) -> SCPoly {
        let mut x: XMono = smallvec::smallvec![0; alpha.nx()];
        x[i] = 1;
        SCPoly { alpha: alpha.clone(), terms: vec![(Mono { x, y: YWord::EMPTY }, Rat::ONE)] }
    }

    pub fn y(alpha: &Arc<Alphabet>, i: usize) -> SCPoly {
        SCPoly {
            alpha: alpha.clone(),
            terms: vec![(Mono { x: smallvec::smallvec![0; alpha.nx()], y: YWord(1 << i) }, Rat::ONE)],
        }
    }

    /// Generator by name, e.g. `x1'` or `y2`.
    pub fn var(alpha: &Arc<Alphabet>, name: &str) -> Result<SCPoly, ScError> {
        if let Some(i) = alpha.x_index(name) {
            Ok(SCPoly::x(alpha, i))
        } else if let Some(i) = alpha.y_index(name) {
            Ok(SCPoly::y(alpha, i))
        } else {
            Err(ScError::UnknownVariable(name.to_string()))
        }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms(alpha: &Arc<Alphabet>, terms: impl IntoIterator<Item = (Mono, Rat)>) -> SCPoly {
        let mut acc: FxHashMap<Mono, Rat> = FxHashMap::default();
        for (m, c) in terms {
            debug_assert_eq!(m.x.len(), alpha.nx());
            *acc.entry(m).or_default() += &c;
        }
        SCPoly::from_map(alpha, acc)
    }

    fn from_map(alpha: &Arc<Alphabet>, acc: FxHashMap<Mono, Rat>) -> SCPoly {
        let mut terms: Vec<(Mono, Rat)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        SCPoly { alpha: alpha.clone(), terms }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alpha
    }

    pub fn terms(&self) -> &[(Mono, Rat)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_y_free(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.y.is_empty())
    }

    fn check(&self, other: &SCPoly) -> Result<(), ScError> {
        if same_alphabet(&self.alpha, &other.alpha) {
            Ok(())
        } else {
            Err(ScError::AlphabetMismatch)
        }
    }

    fn merge(&self, other: &SCPoly, c: &Rat) -> SCPoly {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                Ordering::Greater
            } else if j == b.len() {
                Ordering::Less
            } else {
                a[i].0.cmp(&b[j].0)
            };
            match ord {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b[j].0.clone(), c * &b[j].1));
                    j += 1;
                }
                Ordering::Equal => {
                    let v = &a[i].1 + &(c * &b[j].1);
                    if !v.is_zero() {
                        out.push((a[i].0.clone(), v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        SCPoly { alpha: self.alpha.clone(), terms: out }
    }

    pub fn try_add(&self, other: &SCPoly) -> Result<SCPoly, ScError> {
        self.check(other)?;
        Ok(self.merge(other, &Rat::ONE))
    }

    pub fn try_sub(&self, other: &SCPoly) -> Result<SCPoly, ScError> {
        self.check(other)?;
        Ok(self.merge(other, &Rat::from_int(-1)))
    }

    pub fn try_mul(&self, other: &SCPoly) -> Result<SCPoly, ScError> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: &Rat, other: &SCPoly) -> SCPoly {
        assert!(same_alphabet(&self.alpha, &other.alpha), "alphabet mismatch");
        if c.is_zero() {
            return self.clone();
        }
        self.merge(other, c)
    }

    pub fn scale(&self, c: &Rat) -> SCPoly {
        if c.is_zero() {
            return SCPoly::zero(&self.alpha);
        }
        SCPoly { alpha: self.alpha.clone(), terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    fn mul_unchecked(&self, other: &SCPoly) -> SCPoly {
        if self.is_zero() || other.is_zero() {
            return SCPoly::zero(&self.alpha);
        }
        let mut acc: FxHashMap<Mono, Rat> = FxHashMap::default();
        acc.reserve(self.terms.len().max(other.terms.len()) * 2);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let Some(neg) = ma.y.mul_sign(mb.y) else { continue };
                let x: XMono = ma.x.iter().zip(mb.x.iter()).map(|(a, b)| a + b).collect();
                let mut c = ca * cb;
                if neg {
                    c = -c;
                }
                *acc.entry(Mono { x, y: YWord(ma.y.0 | mb.y.0) }).or_default() += &c;
            }
        }
        SCPoly::from_map(&self.alpha, acc)
    }

    pub fn pow(&self, e: u32) -> SCPoly {
        let mut acc = SCPoly::one(&self.alpha);
        for _ in 0..e {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// Sum of the terms with exactly `n` odd factors.
    pub fn y_degree_component(&self, n: u32) -> SCPoly {
        self.filter(|m| m.y.len() == n)
    }

    /// Sum of the terms whose odd length has the given parity.
    pub fn z2_part(&self, parity: u32) -> SCPoly {
        self.filter(|m| m.y.len() % 2 == parity % 2)
    }

    fn filter(&self, keep: impl Fn(&Mono) -> bool) -> SCPoly {
        SCPoly { alpha: self.alpha.clone(), terms: self.terms.iter().filter(|(m, _)| keep(m)).cloned().collect() }
    }

    /// Applies a renaming of generators: `xmap[i]` is the new index of `x_i`,
    /// `ymap[i]` the new index of `y_i`.
    pub fn rename(&self, xmap: &[usize], ymap: &[usize]) -> SCPoly {
        let nx = self.alpha.nx();
        let ny = self.alpha.ny();
        let terms = self.terms.iter().map(|(m, c)| {
            let mut x: XMono = smallvec::smallvec![0; nx];
            for (i, &e) in m.x.iter().enumerate() {
                x[xmap[i]] += e;
            }
            let idx: SmallVec<[usize; 8]> = m.y.indices().map(|i| ymap[i]).collect();
            let (neg, y) = sc_normalize_yproduct(&idx, ny)
                .expect("renaming stays in the alphabet")
                .expect("renaming is injective");
            (Mono { x, y }, if neg { -c } else { c.clone() })
        });
        SCPoly::from_terms(&self.alpha, terms)
    }

    /// The order-two automorphism exchanging every `v` with `v'`.
    pub fn prime_automorphism(&self) -> Result<SCPoly, ScError> {
        let pair = |names: &[String]| -> Result<Vec<usize>, ScError> {
            names
                .iter()
                .map(|n| {
                    let partner = match n.strip_suffix('\'') {
                        Some(base) => base.to_string(),
                        None => format!("{n}'"),
                    };
                    names.iter().position(|m| *m == partner).ok_or_else(|| ScError::UnpairedVariable(n.clone()))
                })
                .collect()
        };
        let xmap = pair(&self.alpha.x)?;
        let ymap = pair(&self.alpha.y)?;
        Ok(self.rename(&xmap, &ymap))
    }

    /// `x1 -> x2'`, `x2 -> x1'`, `x1' -> x2`, `x2' -> x1` on odd-free polynomials.
    pub fn phi_swap_automorphism(&self) -> Result<SCPoly, ScError> {
        if !self.is_y_free() {
            return Err(ScError::NotYFree);
        }
        let idx = |n: &str| self.alpha.x_index(n).ok_or_else(|| ScError::UnknownVariable(n.to_string()));
        let mut xmap: Vec<usize> = (0..self.alpha.nx()).collect();
        for (from, to) in [("x1", "x2'"), ("x2", "x1'"), ("x1'", "x2"), ("x2'", "x1")] {
            xmap[idx(from)?] = idx(to)?;
        }
        let ymap: Vec<usize> = (0..self.alpha.ny()).collect();
        Ok(self.rename(&xmap, &ymap))
    }

    /// Substitutes odd-free polynomials for the even generators, leaving the odd part alone.
    pub fn substitute_x(&self, images: &[SCPoly]) -> SCPoly {
        assert_eq!(images.len(), self.alpha.nx());
        let mut out = SCPoly::zero(&self.alpha);
        for (m, c) in &self.terms {
            let mut t = SCPoly {
                alpha: self.alpha.clone(),
                terms: vec![(Mono { x: smallvec::smallvec![0; self.alpha.nx()], y: m.y }, c.clone())],
            };
            for (i, &e) in m.x.iter().enumerate() {
                if e > 0 {
                    t = t.mul_unchecked(&images[i].pow(e as u32));
                }
            }
            out = out.merge(&t, &Rat::ONE);
        }
        out
    }

    /// Exact quotient by an odd-free `d`, computed per odd monomial with
    /// lexicographic division in K[X].
    pub fn exact_divide(&self, d: &SCPoly) -> Result<Division, ScError> {
        self.check(d)?;
        if d.is_zero() {
            return Err(ScError::DivisionByZero);
        }
        if !d.is_y_free() {
            return Err(ScError::NotYFree);
        }
        let dmap: BTreeMap<XMono, Rat> = d.terms.iter().map(|(m, c)| (m.x.clone(), c.clone())).collect();
        let (dlead_x, dlead_c) = dmap.iter().next_back().map(|(k, v)| (k.clone(), v.clone())).unwrap();
        let mut by_y: BTreeMap<YWord, BTreeMap<XMono, Rat>> = BTreeMap::new();
        for (m, c) in &self.terms {
            by_y.entry(m.y).or_default().insert(m.x.clone(), c.clone());
        }
        let mut quotient = Vec::new();
        for (y, mut rem) in by_y {
            while let Some((lx, lc)) = rem.iter().next_back().map(|(k, v)| (k.clone(), v.clone())) {
                if lx.iter().zip(dlead_x.iter()).any(|(a, b)| a < b) {
                    return Ok(Division::NotDivisible);
                }
                let qx: XMono = lx.iter().zip(dlead_x.iter()).map(|(a, b)| a - b).collect();
                let qc = &lc / &dlead_c;
                for (dx, dc) in &dmap {
                    let key: XMono = dx.iter().zip(qx.iter()).map(|(a, b)| a + b).collect();
                    let v = &rem.remove(&key).unwrap_or_default() - &(&qc * dc);
                    if !v.is_zero() {
                        rem.insert(key, v);
                    }
                }
                quotient.push((Mono { x: qx, y }, qc));
            }
        }
        Ok(Division::Exact(SCPoly::from_terms(&self.alpha, quotient)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Division {
    Exact(SCPoly),
    NotDivisible,
}

impl Division {
    pub fn exact(self) -> Option<SCPoly> {
        match self {
            Division::Exact(q) => Some(q),
            Division::NotDivisible => None,
        }
    }
}

impl std::ops::Add for &SCPoly {
    type Output = SCPoly;
    fn add(self, rhs: &SCPoly) -> SCPoly {
        self.try_add(rhs).expect("alphabet mismatch")
    }
}

impl std::ops::Sub for &SCPoly {
    type Output = SCPoly;
    fn sub(self, rhs: &SCPoly) -> SCPoly {
        self.try_sub(rhs).expect("alphabet mismatch")
    }
}

impl std::ops::Mul for &SCPoly {
    type Output = SCPoly;
    fn mul(self, rhs: &SCPoly) -> SCPoly {
        self.try_mul(rhs).expect("alphabet mismatch")
    }
}

impl std::ops::Neg for &SCPoly {
    type Output = SCPoly;
    fn neg(self) -> SCPoly {
        self.scale(&Rat::from_int(-1))
    }
}

fn render_mono(alpha: &Alphabet, m: &Mono, out: &mut Vec<String>) {
    for (i, &e) in m.x.iter().enumerate() {
        match e {
            0 => {}
            1 => out.push(alpha.x[i].clone()),
            _ => out.push(format!("{}^{}", alpha.x[i], e)),
        }
    }
    out.extend(m.y.indices().map(|i| alpha.y[i].clone()));
}

impl fmt::Display for SCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            let mut factors = Vec::new();
            render_mono(&self.alpha, m, &mut factors);
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SCPoly({self})")
    }
}

/// Shorthands for the default alphabet.
pub mod f_vars {
    use super::*;

    pub fn x1() -> SCPoly {
        SCPoly::x(&Alphabet::default_f(), 0)
    }
    pub fn x2() -> SCPoly {
        SCPoly::x(&Alphabet::default_f(), 1)
    }
    pub fn x1p() -> SCPoly {
        SCPoly::x(&Alphabet::default_f(), 2)
    }
    pub fn x2p() -> SCPoly {
        SCPoly::x(&Alphabet::default_f(), 3)
    }
    pub fn y1() -> SCPoly {
        SCPoly::y(&Alphabet::default_f(), 0)
    }
    pub fn y2() -> SCPoly {
        SCPoly::y(&Alphabet::default_f(), 1)
    }
    pub fn y1p() -> SCPoly {
        SCPoly::y(&Alphabet::default_f(), 2)
    }
    pub fn y2p() -> SCPoly {
        SCPoly::y(&Alphabet::default_f(), 3)
    }
    pub fn int(n: i64) -> SCPoly {
        SCPoly::constant(&Alphabet::default_f(), Rat::from_int(n))
    }
}

#[cfg(test)]
mod tests {
    use super::f_vars::*;
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn normalize_yproduct() {
        assert_eq!(sc_normalize_yproduct(&[1, 0], 4).unwrap(), Some((true, YWord(0b11))));
        assert_eq!(sc_normalize_yproduct(&[0, 0], 4).unwrap(), None);
        assert_eq!(sc_normalize_yproduct(&[3, 2, 1, 0], 4).unwrap(), Some((false, YWord(0b1111))));
        assert!(sc_normalize_yproduct(&[4], 4).is_err());
    }

    #[test]
    fn anticommuting_generators() {
        assert_eq!(&y1() * &y2(), -&(&y2() * &y1()));
        assert!((&y1() * &y1()).is_zero());
        assert_eq!((&y1() * &y2()).to_string(), "y1*y2");
        assert_eq!((&y2() * &y1()).to_string(), "-y1*y2");
    }

    #[test]
    fn rendering() {
        let p = &(&(&x1() * &x1()) * &x2p()) * &(&y1() * &y2p());
        assert_eq!(p.scale(&Rat::from_int(3)).to_string(), "3*x1^2*x2'*y1*y2'");
        assert_eq!(SCPoly::zero(&Alphabet::default_f()).to_string(), "0");
        assert_eq!((&x1() - &int(1)).to_string(), "x1 - 1");
    }

    #[test]
    fn gradings() {
        let p = &y1() + &(&y1() * &y2());
        assert_eq!(p.z2_part(1), y1());
        assert_eq!(p.y_degree_component(2), &y1() * &y2());
    }

    #[test]
    fn automorphisms() {
        assert_eq!((&x1() * &y2()).prime_automorphism().unwrap(), &x1p() * &y2p());
        assert_eq!((&x1() * &x2p()).phi_swap_automorphism().unwrap(), &x2p() * &x1());
        assert_eq!(y1().phi_swap_automorphism(), Err(ScError::NotYFree));
        let a = Alphabet::new(vec!["x1".into()], vec![]).unwrap();
        assert!(matches!(SCPoly::x(&a, 0).prime_automorphism(), Err(ScError::UnpairedVariable(_))));
    }

    #[test]
    fn division() {
        let d = &x1p() - &x1();
        let p = &(&y1() * &y2()) * &d;
        assert_eq!(p.exact_divide(&d).unwrap(), Division::Exact(&y1() * &y2()));
        assert_eq!(y1().exact_divide(&x1()).unwrap(), Division::NotDivisible);
        assert_eq!(y1().exact_divide(&SCPoly::zero(&Alphabet::default_f())), Err(ScError::DivisionByZero));
        let q2 = &(&(&x1() * &x1()) + &(&x1() * &x1p())) + &(&x1p() * &x1p());
        assert_eq!((&x1p().pow(3) - &x1().pow(3)).exact_divide(&d).unwrap(), Division::Exact(q2));
    }

    fn gen_poly(max_terms: usize) -> impl Strategy<Value = SCPoly> {
        gen_poly_y(max_terms, 16)
    }

    fn gen_poly_y(max_terms: usize, ymasks: u64) -> impl Strategy<Value = SCPoly> {
        let mono = (proptest::collection::vec(0u16..3, 4), 0u64..ymasks, -4i64..5);
        proptest::collection::vec(mono, 0..max_terms).prop_map(|ts| {
            let alpha = Alphabet::default_f();
            SCPoly::from_terms(
                &alpha,
                ts.into_iter().map(|(x, y, c)| (Mono { x: XMono::from_vec(x), y: YWord(y) }, Rat::from_int(c))),
            )
        })
    }

    proptest! {
        #[test]
        fn ring_laws(a in gen_poly(5), b in gen_poly(5), c in gen_poly(5)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn grading_is_multiplicative(a in gen_poly(5), b in gen_poly(5), n in 0u32..5) {
            let mut rhs = SCPoly::zero(a.alphabet());
            for i in 0..=n {
                rhs = &rhs + &(&a.y_degree_component(i) * &b.y_degree_component(n - i));
            }
            prop_assert_eq!((&a * &b).y_degree_component(n), rhs);
        }

        #[test]
        fn automorphisms_are_homomorphisms(a in gen_poly(5), b in gen_poly(5)) {
            let pr = |p: &SCPoly| p.prime_automorphism().unwrap();
            prop_assert_eq!(pr(&(&a * &b)), &pr(&a) * &pr(&b));
            prop_assert_eq!(pr(&pr(&a)), a.clone());
            let (ea, eb) = (a.z2_part(0).y_degree_component(0), b.z2_part(0).y_degree_component(0));
            let ph = |p: &SCPoly| p.phi_swap_automorphism().unwrap();
            prop_assert_eq!(ph(&(&ea * &eb)), &ph(&ea) * &ph(&eb));
            prop_assert_eq!(ph(&ph(&ph(&ph(&ea)))), ea);
        }

        #[test]
        fn divide_product(a in gen_poly(5), d in gen_poly_y(4, 1)) {
            prop_assume!(!d.is_zero());
            prop_assert_eq!((&a * &d).exact_divide(&d).unwrap(), Division::Exact(a));
        }
    }
}
