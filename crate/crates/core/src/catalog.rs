//! Named objects: elements of K[X;Y] and matrices over it built from the
//! generators `C1`, `C2`, and families of noncommutative polynomials.
//! Lookups by name are memoized with at-most-once construction.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use thiserror::Error;

use crate::algebras::{evaluate_mat, generic_f, MatSC};
use crate::exactlin::Rat;
use crate::freealg::{commutator, left_normed, permutation_sign, permutations, with_tail, NCPoly};
use crate::supercomm::{f_vars::*, Alphabet, SCPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown catalog name `{0}`")]
    UnknownName(String),
    #[error("`{name}` expects {expected} parameter(s), got {got}")]
    Arity { name: String, expected: String, got: usize },
    #[error("parameter out of range for `{0}`: {1}")]
    BadParameter(String, String),
}

/// A catalog entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatalogObject {
    Poly(NCPoly),
    PolyList(Vec<NCPoly>),
    Sc(SCPoly),
    Mat(MatSC),
    /// A member of a family that has no value at these parameters.
    Undefined(String),
}

fn int(n: i64) -> SCPoly {
    SCPoly::constant(&Alphabet::default_f(), Rat::from_int(n))
}

fn xpow(x: &SCPoly, e: i64) -> SCPoly {
    x.pow(e as u32)
}

/// `h1, h2, h3, h4`.
pub fn h_elements() -> [SCPoly; 4] {
    let (dx1, dx2) = (&x1p() - &x1(), &x2p() - &x2());
    let lo = &(&y1() * &dx2) - &(&y2() * &dx1);
    let hi = &(&y1p() * &dx2) - &(&y2p() * &dx1);
    let h1 = &(&(&y1() * &y2()) * &y1p()) * &y2p();
    let h2 = &(&y1() * &y2()) * &hi;
    let h3 = &(&y1p() * &y2p()) * &lo;
    let h4 = &hi * &lo;
    [h1, h2, h3, h4]
}

/// `q_n(a, b) = Σ_{i=0}^n a^i b^(n-i)`, zero for `n < 0`.
fn q_gen(a: &SCPoly, b: &SCPoly, n: i64) -> SCPoly {
    (0..=n).fold(int(0), |acc, i| &acc + &(&xpow(a, i) * &xpow(b, n - i)))
}

/// `r_n(a, b) = Σ_{i=0}^{n-1} (n-i) a^(n-1-i) b^i`, zero for `n ≤ 0`.
fn r_gen(a: &SCPoly, b: &SCPoly, n: i64) -> SCPoly {
    (0..n).fold(int(0), |acc, i| acc.axpy(&Rat::from_int(n - i), &(&xpow(a, n - 1 - i) * &xpow(b, i))))
}

pub fn q(n: i64) -> SCPoly {
    q_gen(&x1(), &x1p(), n)
}

pub fn r(n: i64) -> SCPoly {
    r_gen(&x1(), &x1p(), n)
}

pub fn s(n: i64) -> SCPoly {
    r_gen(&x1p(), &x1(), n)
}

pub fn big_q(n: i64) -> SCPoly {
    q_gen(&x2(), &x2p(), n)
}

pub fn big_r(n: i64) -> SCPoly {
    r_gen(&x2(), &x2p(), n)
}

pub fn big_s(n: i64) -> SCPoly {
    r_gen(&x2p(), &x2(), n)
}

/// The closed form of `C1^n`; `n = 0` gives the identity.
pub fn c1_pow_closed(n: u32) -> MatSC {
    if n == 0 {
        return MatSC::identity(2, &Alphabet::default_f());
    }
    let n = n as i64;
    let yy = &y1() * &y1p();
    MatSC::from_rows(vec![
        vec![&xpow(&x1(), n) + &(&yy * &r(n - 1)), &y1() * &q(n - 1)],
        vec![&y1p() * &q(n - 1), &xpow(&x1p(), n) - &(&yy * &s(n - 1))],
    ])
}

/// The closed form of `C2^m`.
pub fn c2_pow_closed(m: u32) -> MatSC {
    if m == 0 {
        return MatSC::identity(2, &Alphabet::default_f());
    }
    let m = m as i64;
    let yy = &y2() * &y2p();
    MatSC::from_rows(vec![
        vec![&xpow(&x2(), m) + &(&yy * &big_r(m - 1)), &y2() * &big_q(m - 1)],
        vec![&y2p() * &big_q(m - 1), &xpow(&x2p(), m) - &(&yy * &big_s(m - 1))],
    ])
}

/// `A0, A1, A2, A3`.
pub fn a_matrices() -> [MatSC; 4] {
    let [h1, h2, h3, h4] = h_elements();
    let z = int(0);
    [
        MatSC::from_rows(vec![vec![h1.clone(), z.clone()], vec![z.clone(), h1.clone()]]),
        MatSC::from_rows(vec![vec![z.clone(), z.clone()], vec![z.clone(), h1]]),
        MatSC::from_rows(vec![vec![z.clone(), h2], vec![-&h3, h4.clone()]]),
        MatSC::from_rows(vec![vec![h4.clone(), z.clone()], vec![z, h4]]),
    ]
}

/// The matrix A(k) for `f = [t1, t2, t_{i3}, …, t_{ik}]` with entries in {1, 2}.
///
/// The diagonal entry is `numerator / divisor`; `f_entry` holds it when the
/// division is exact in K[X;Y].
#[derive(Clone, Debug)]
pub struct AOfK {
    pub indices: Vec<u16>,
    pub n: u32,
    pub m: u32,
    pub numerator: SCPoly,
    pub divisor: SCPoly,
    pub f_entry: Option<SCPoly>,
    pub upper: SCPoly,
    pub lower: SCPoly,
    /// `(x1'-x1)^(n-1) (x2'-x2)^(m-1)`.
    pub prefactor: SCPoly,
}

impl AOfK {
    /// A(k) itself, when its diagonal entry is a polynomial.
    pub fn matrix(&self) -> Option<MatSC> {
        let f = self.f_entry.clone()?;
        Some(MatSC::from_rows(vec![vec![f.clone(), self.upper.clone()], vec![self.lower.clone(), f]]))
    }

    /// `f(C1, C2)` computed directly.
    pub fn direct(&self) -> MatSC {
        let (c1, c2) = generic_f();
        evaluate_mat(&left_normed(&self.indices).unwrap(), &[c1, c2]).unwrap()
    }

    /// Checks `prefactor · A(k) = f(C1, C2)`, with the diagonal compared after
    /// multiplying both sides by the divisor.
    pub fn reconstructs(&self) -> bool {
        let d = self.direct();
        let diag = &self.prefactor * &self.numerator;
        *d.get(0, 1) == &self.prefactor * &self.upper
            && *d.get(1, 0) == &self.prefactor * &self.lower
            && &self.divisor * d.get(0, 0) == diag
            && &self.divisor * d.get(1, 1) == diag
            && self.matrix().is_none_or(|a| a.scale_left(&self.prefactor) == d)
    }
}

pub fn a_of_k(indices: &[u16]) -> Result<AOfK, CatalogError> {
    if indices.len() < 2 || indices[0] != 1 || indices[1] != 2 || indices.iter().any(|&i| i != 1 && i != 2) {
        return Err(CatalogError::BadParameter("Ak".into(), format!("{indices:?}")));
    }
    let k = indices.len() as i64;
    let n = indices.iter().filter(|&&i| i == 1).count() as u32;
    let m = k as u32 - n;
    let sign = int(if k % 2 == 0 { 1 } else { -1 });
    let (dx1, dx2) = (&x1p() - &x1(), &x2p() - &x2());
    let upper = &(&y1() * &dx2) - &(&y2() * &dx1);
    let low = &(&y2p() * &dx1) - &(&y1p() * &dx2);
    let i = *indices.last().unwrap();
    let (yi, yip, divisor) = if i == 1 { (y1(), y1p(), dx1.clone()) } else { (y2(), y2p(), dx2.clone()) };
    let numerator = &(&upper * &yip) + &(&sign * &(&yi * &low));
    let f_entry = numerator.exact_divide(&divisor).expect("divisor is odd-free and nonzero").exact();
    let prefactor = &dx1.pow(n - 1) * &dx2.pow(m - 1);
    Ok(AOfK { indices: indices.to_vec(), n, m, numerator, divisor, f_entry, upper, lower: &sign * &low, prefactor })
}

fn t(i: u16) -> NCPoly {
    NCPoly::var(i)
}

fn c(i: u16, j: u16) -> NCPoly {
    commutator(&t(i), &t(j))
}

/// The standard polynomial `s_n`.
pub fn standard(n: usize) -> NCPoly {
    let mut out = NCPoly::zero();
    for p in permutations(n) {
        let w: Vec<u16> = p.iter().map(|&i| i as u16 + 1).collect();
        out.add_term(crate::freealg::NCWord::from_slice(&w), &Rat::from_int(permutation_sign(&p)));
    }
    out
}

/// `s4` written as `[t1,t2]∘[t3,t4] − [t1,t3]∘[t2,t4] + [t1,t4]∘[t2,t3]`.
pub fn s4_jordan_form() -> NCPoly {
    use crate::freealg::jordan;
    jordan(&c(1, 2), &c(3, 4)).sub(&jordan(&c(1, 3), &c(2, 4))).add(&jordan(&c(1, 4), &c(2, 3)))
}

/// `[[t1,t2]^2, t1]`.
pub fn hall() -> NCPoly {
    commutator(&c(1, 2).pow(2), &t(1))
}

/// `[t1,t2]^3`.
pub fn d_cube() -> NCPoly {
    c(1, 2).pow(3)
}

/// `d_{k,l} = [t1,t2]^k [t1,t2,t1^(l)]`.
pub fn dkl(k: u32, l: u32) -> NCPoly {
    c(1, 2).pow(k).mul(&with_tail(&c(1, 2), &t(1), l))
}

/// `f_{kmn} = [t1,t2]^k [t1,t2,t1^(m),t2^(n)]`.
pub fn fkmn(k: u32, m: u32, n: u32) -> NCPoly {
    c(1, 2).pow(k).mul(&with_tail(&with_tail(&c(1, 2), &t(1), m), &t(2), n))
}

/// `[[t1,t2]^2,t1]` and `[[t1,t2],[t3,t4],t5]`.
pub fn popov_basis() -> Vec<NCPoly> {
    vec![hall(), commutator(&commutator(&c(1, 2), &c(3, 4)), &t(5))]
}

/// `[[t1,t2][t3,t4],t5]`, `[t1,t2][t3,t4][t5,t6]` and `s4`.
pub fn f_basis() -> Vec<NCPoly> {
    vec![
        commutator(&c(1, 2).mul(&c(3, 4)), &t(5)),
        c(1, 2).mul(&c(3, 4)).mul(&c(5, 6)),
        standard(4),
    ]
}

/// Product of `[v[0],v[1]][v[2],v[3]]…` over consecutive pairs.
fn pair_product(vars: &[u16]) -> NCPoly {
    vars.chunks(2).fold(NCPoly::one(), |acc, ch| acc.mul(&c(ch[0], ch[1])))
}

/// Alternating sum over `S_p` acting on `t1..tp` of `term(σ(1..p))`.
fn alternate(p: usize, term: impl Fn(&[u16]) -> NCPoly) -> NCPoly {
    let mut out = NCPoly::zero();
    for perm in permutations(p) {
        let vars: Vec<u16> = perm.iter().map(|&i| i as u16 + 1).collect();
        out = out.axpy(&Rat::from_int(permutation_sign(&perm)), &term(&vars));
    }
    out
}

/// `φ_p^{(s)}`; `None` where the family is undefined (p odd, s = 0).
pub fn phi_p(p: usize, s: u32) -> Option<NCPoly> {
    assert!(p >= 2);
    if p % 2 == 1 && s == 0 {
        return None;
    }
    Some(alternate(p, |v| phi_p_term(v, s)))
}

fn phi_p_term(v: &[u16], s: u32) -> NCPoly {
    let p = v.len();
    if p % 2 == 0 {
        let head = pair_product(&v[..p - 2]);
        head.mul(&with_tail(&c(v[p - 2], v[p - 1]), &t(1), s))
    } else {
        let head = pair_product(&v[..p - 1]);
        head.mul(&with_tail(&t(v[p - 1]), &t(1), s))
    }
}

/// `φ_{p,q}^{(s)}` for `p ≥ q ≥ 2`; `None` where undefined (s = 0 with p, q
/// of different parity). For p and q both odd the summand is read as the
/// τ-pairs, then the σ-pairs, then `[t_σ(p), t1^(s), t_τ(q)]`.
pub fn phi_pq(p: usize, q: usize, s: u32) -> Option<NCPoly> {
    assert!(p >= q && q >= 2);
    match (p % 2, q % 2) {
        (_, 0) => {
            let rest = phi_p(p, s)?;
            Some(alternate(q, pair_product).mul(&rest))
        }
        (0, 1) => {
            let rest = phi_p(q, s)?;
            Some(alternate(p, pair_product).mul(&rest))
        }
        _ => {
            let mut out = NCPoly::zero();
            for sigma in permutations(p) {
                let sv: Vec<u16> = sigma.iter().map(|&i| i as u16 + 1).collect();
                let sigma_part = pair_product(&sv[..p - 1]);
                for tau in permutations(q) {
                    let tv: Vec<u16> = tau.iter().map(|&i| i as u16 + 1).collect();
                    let tail = with_tail(&t(sv[p - 1]), &t(1), s);
                    let last = commutator(&tail, &t(tv[q - 1]));
                    let term = pair_product(&tv[..q - 1]).mul(&sigma_part).mul(&last);
                    out = out.axpy(&Rat::from_int(permutation_sign(&sigma) * permutation_sign(&tau)), &term);
                }
            }
            Some(out)
        }
    }
}

/// `u_2^{(n-2)}`: the part of `φ_2^{(n-2)}(t1 + t3, t2)` linear in `t3`.
pub fn u2(n: u32) -> NCPoly {
    assert!(n >= 2);
    phi_p(2, n - 2).unwrap().partial_linearization(1, 3).unwrap()
}

/// The displayed closed form `−2([t2,t3,t1^(n−2)] + (n−3)[t2,t1,t3,t1^(n−3)] + [t2,t1^(n−2),t3])`.
pub fn u2_displayed(n: u32) -> NCPoly {
    assert!(n >= 3);
    let a = with_tail(&c(2, 3), &t(1), n - 2);
    let b = with_tail(&commutator(&c(2, 1), &t(3)), &t(1), n - 3).scale(&Rat::from_int(n as i64 - 3));
    let d = commutator(&with_tail(&t(2), &t(1), n - 2), &t(3));
    a.add(&b).add(&d).scale(&Rat::from_int(-2))
}

/// `u_{2,2}^{(n-4)}`: the part of `φ_{2,2}^{(n-4)}(t1, t2 + t3)` linear in `t2` and `t3`.
pub fn u22(n: u32) -> NCPoly {
    assert!(n >= 4);
    phi_pq(2, 2, n - 4).unwrap().partial_linearization(2, 3).unwrap()
}

/// The displayed closed form `−4([t1,t2][t3,t1^(n−3)] + [t1,t3][t2,t1^(n−3)])`.
pub fn u22_displayed(n: u32) -> NCPoly {
    assert!(n >= 3);
    let a = c(1, 2).mul(&with_tail(&t(3), &t(1), n - 3));
    let b = c(1, 3).mul(&with_tail(&t(2), &t(1), n - 3));
    a.add(&b).scale(&Rat::from_int(-4))
}

/// Names accepted by [`lookup`], with their parameter shapes.
pub const NAMES: &[(&str, &str, &str)] = &[
    ("h1", "", "y1 y2 y1' y2'"),
    ("h2", "", "y1 y2 (y1'(x2'-x2) - y2'(x1'-x1))"),
    ("h3", "", "y1' y2' (y1(x2'-x2) - y2(x1'-x1))"),
    ("h4", "", "product of the two odd linear forms"),
    ("q", "n", "sum of x1^i x1'^(n-i)"),
    ("r", "n", "sum of (n-i) x1^(n-1-i) x1'^i"),
    ("s", "n", "r_n with x1 and x1' exchanged"),
    ("Q", "n", "q_n in x2, x2'"),
    ("R", "n", "r_n in x2, x2'"),
    ("S", "n", "s_n in x2, x2'"),
    ("C1", "", "generic generator [[x1, y1], [y1', x1']]"),
    ("C2", "", "generic generator [[x2, y2], [y2', x2']]"),
    ("C1pow", "n", "closed form of C1^n"),
    ("C2pow", "m", "closed form of C2^m"),
    ("A0", "", "diag(h1, h1)"),
    ("A1", "", "diag(0, h1)"),
    ("A2", "", "[[0, h2], [-h3, h4]]"),
    ("A3", "", "diag(h4, h4)"),
    ("Ak", "i1,...,ik", "A(k) for [t_i1, ..., t_ik], i1 = 1, i2 = 2"),
    ("phi", "p,s | p,q,s", "phi_p^(s) or phi_{p,q}^(s)"),
    ("dkl", "k,l", "[t1,t2]^k [t1,t2,t1^(l)]"),
    ("fkmn", "k,m,n", "[t1,t2]^k [t1,t2,t1^(m),t2^(n)]"),
    ("std", "n", "standard polynomial s_n (also written s4, s6, ...)"),
    ("hall", "", "[[t1,t2]^2,t1]"),
    ("dcube", "", "[t1,t2]^3"),
    ("popov", "", "[[t1,t2]^2,t1] and [[t1,t2],[t3,t4],t5]"),
    ("fbasis", "", "[[t1,t2][t3,t4],t5], [t1,t2][t3,t4][t5,t6], s4"),
    ("u2", "n", "partial linearization of phi_2^(n-2)"),
    ("u22", "n", "partial linearization of phi_{2,2}^(n-4)"),
];

type Slot = Arc<OnceLock<Result<Arc<CatalogObject>, CatalogError>>>;

fn cache() -> &'static Mutex<HashMap<(String, Vec<i64>), Slot>> {
    static CACHE: OnceLock<Mutex<HashMap<(String, Vec<i64>), Slot>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Looks up a named object; each `(name, params)` is built at most once.
pub fn lookup(name: &str, params: &[i64]) -> Result<Arc<CatalogObject>, CatalogError> {
    let slot = {
        let mut map = cache().lock().unwrap_or_else(|e| e.into_inner());
        map.entry((name.to_string(), params.to_vec())).or_default().clone()
    };
    slot.get_or_init(|| build(name, params).map(Arc::new)).clone()
}

fn arity(name: &str, params: &[i64], expected: &[usize]) -> Result<(), CatalogError> {
    if expected.contains(&params.len()) {
        Ok(())
    } else {
        let e: Vec<String> = expected.iter().map(|n| n.to_string()).collect();
        Err(CatalogError::Arity { name: name.to_string(), expected: e.join(" or "), got: params.len() })
    }
}

fn nonneg(name: &str, params: &[i64]) -> Result<Vec<u32>, CatalogError> {
    params
        .iter()
        .map(|&p| u32::try_from(p).map_err(|_| CatalogError::BadParameter(name.to_string(), p.to_string())))
        .collect()
}

fn at_least(name: &str, v: u32, min: u32) -> Result<u32, CatalogError> {
    if v >= min {
        Ok(v)
    } else {
        Err(CatalogError::BadParameter(name.to_string(), format!("{v} < {min}")))
    }
}

fn build(name: &str, params: &[i64]) -> Result<CatalogObject, CatalogError> {
    use CatalogObject::*;
    if let Some(rest) = name.strip_prefix('s') {
        if let Ok(n) = rest.parse::<usize>() {
            arity(name, params, &[0])?;
            return Ok(Poly(standard(n)));
        }
    }
    let h = |i: usize| -> Result<CatalogObject, CatalogError> {
        arity(name, params, &[0])?;
        Ok(Sc(h_elements()[i].clone()))
    };
    let a = |i: usize| -> Result<CatalogObject, CatalogError> {
        arity(name, params, &[0])?;
        Ok(Mat(a_matrices()[i].clone()))
    };
    let sc1 = |f: fn(i64) -> SCPoly| -> Result<CatalogObject, CatalogError> {
        arity(name, params, &[1])?;
        Ok(Sc(f(params[0])))
    };
    let none = || arity(name, params, &[0]);
    match name {
        "h1" => h(0),
        "h2" => h(1),
        "h3" => h(2),
        "h4" => h(3),
        "A0" => a(0),
        "A1" => a(1),
        "A2" => a(2),
        "A3" => a(3),
        "q" => sc1(q),
        "r" => sc1(r),
        "s" => sc1(s),
        "Q" => sc1(big_q),
        "R" => sc1(big_r),
        "S" => sc1(big_s),
        "C1" => none().map(|_| Mat(generic_f().0)),
        "C2" => none().map(|_| Mat(generic_f().1)),
        "C1pow" | "C2pow" => {
            arity(name, params, &[1])?;
            let n = nonneg(name, params)?[0];
            Ok(Mat(if name == "C1pow" { c1_pow_closed(n) } else { c2_pow_closed(n) }))
        }
        "Ak" => {
            let idx: Vec<u16> = nonneg(name, params)?.into_iter().map(|v| v as u16).collect();
            let a = a_of_k(&idx)?;
            Ok(a.matrix().map(Mat).unwrap_or_else(|| Undefined(format!("the diagonal of A(k) for {idx:?} is not a polynomial"))))
        }
        "phi" => {
            arity(name, params, &[2, 3])?;
            let v = nonneg(name, params)?;
            let res = if v.len() == 2 {
                phi_p(at_least(name, v[0], 2)? as usize, v[1])
            } else {
                let qq = at_least(name, v[1], 2)?;
                if v[0] < qq {
                    return Err(CatalogError::BadParameter(name.into(), "need p >= q".into()));
                }
                phi_pq(v[0] as usize, qq as usize, v[2])
            };
            Ok(res.map(Poly).unwrap_or_else(|| Undefined(format!("phi{params:?} is not defined"))))
        }
        "dkl" => {
            arity(name, params, &[2])?;
            let v = nonneg(name, params)?;
            Ok(Poly(dkl(v[0], v[1])))
        }
        "fkmn" => {
            arity(name, params, &[3])?;
            let v = nonneg(name, params)?;
            Ok(Poly(fkmn(v[0], v[1], v[2])))
        }
        "std" => {
            arity(name, params, &[1])?;
            Ok(Poly(standard(nonneg(name, params)?[0] as usize)))
        }
        "hall" => none().map(|_| Poly(hall())),
        "dcube" => none().map(|_| Poly(d_cube())),
        "popov" => none().map(|_| PolyList(popov_basis())),
        "fbasis" => none().map(|_| PolyList(f_basis())),
        "u2" => {
            arity(name, params, &[1])?;
            Ok(Poly(u2(at_least(name, nonneg(name, params)?[0], 2)?)))
        }
        "u22" => {
            arity(name, params, &[1])?;
            Ok(Poly(u22(at_least(name, nonneg(name, params)?[0], 4)?)))
        }
        _ => Err(CatalogError::UnknownName(name.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::NCWord;

    #[test]
    fn h_relations_sample() {
        let [h1, h2, _, h4] = h_elements();
        assert_eq!(h1.len(), 1);
        assert!((&h1 * &y1()).is_zero());
        assert_eq!(&h4 * &y1(), &(&x1p() - &x1()) * &h2);
        assert_eq!(h2.y_degree_component(3), h2);
        assert_eq!(h4.z2_part(0), h4);
    }

    #[test]
    fn qrs_small() {
        assert_eq!(q(2), &(&(&x1() * &x1()) + &(&x1() * &x1p())) + &(&x1p() * &x1p()));
        assert!(q(-1).is_zero() && r(0).is_zero() && s(0).is_zero());
        for n in 1..=8 {
            assert_eq!(&s(n) + &r(n), q(n - 1).scale(&Rat::from_int(n + 1)));
        }
    }

    #[test]
    fn closed_powers_match() {
        let (c1, c2) = generic_f();
        for n in 0..=5 {
            assert_eq!(c1_pow_closed(n), c1.pow(n));
            assert_eq!(c2_pow_closed(n), c2.pow(n));
        }
    }

    #[test]
    fn a_of_k_reconstructs() {
        for k in 2..=5u32 {
            for bits in 0..1u32 << (k - 2) {
                let mut idx = vec![1, 2];
                idx.extend((0..k - 2).map(|b| 1 + ((bits >> b) & 1) as u16));
                let a = a_of_k(&idx).unwrap();
                assert!(a.reconstructs(), "{idx:?}");
                assert_eq!(a.f_entry.is_some(), k % 2 == 0, "{idx:?}");
            }
        }
        let a2 = a_of_k(&[1, 2]).unwrap();
        assert_eq!(a2.f_entry, Some(&(&y1() * &y2p()) - &(&y2() * &y1p())));
        assert!(a_of_k(&[1, 2, 1]).unwrap().f_entry.is_none());
        assert!(a_of_k(&[2, 1]).is_err());
    }

    #[test]
    fn phi_small_cases() {
        assert_eq!(phi_p(4, 0).unwrap(), standard(4).scale(&Rat::from_int(4)));
        for s in 0..3 {
            assert_eq!(phi_p(2, s).unwrap(), with_tail(&c(1, 2), &t(1), s).scale(&Rat::from_int(2)));
            assert_eq!(phi_pq(2, 2, s).unwrap(), c(1, 2).mul(&with_tail(&c(1, 2), &t(1), s)).scale(&Rat::from_int(4)));
        }
        for s in 1..3 {
            let expect = c(1, 2).mul(&with_tail(&t(3), &t(1), s)).sub(&c(1, 3).mul(&with_tail(&t(2), &t(1), s)));
            assert_eq!(phi_p(3, s).unwrap(), expect.scale(&Rat::from_int(2)));
        }
        assert!(phi_p(3, 0).is_none());
        assert!(phi_pq(3, 2, 0).is_none());
        assert!(phi_pq(3, 3, 0).is_some());
        assert!(phi_pq(4, 3, 1).is_some());
    }

    #[test]
    fn s4_forms_agree() {
        let s4 = standard(4);
        assert_eq!(s4.len(), 24);
        assert_eq!(s4_jordan_form(), s4);
        assert!(s4.is_proper());
    }

    #[test]
    fn d20_is_cube() {
        assert_eq!(dkl(2, 0), d_cube());
        assert!(hall().terms().all(|(w, _): (&NCWord, _)| w.len() == 5));
    }

    #[test]
    fn memoized_lookup() {
        let a = lookup("phi", &[2, 3]).unwrap();
        let b = lookup("phi", &[2, 3]).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        assert!(matches!(*lookup("phi", &[3, 0]).unwrap(), CatalogObject::Undefined(_)));
        assert!(matches!(*lookup("s4", &[]).unwrap(), CatalogObject::Poly(_)));
        assert_eq!(lookup("nope", &[]).unwrap_err(), CatalogError::UnknownName("nope".into()));
        assert!(matches!(lookup("h1", &[1]), Err(CatalogError::Arity { .. })));
    }
}
