//! Partitions, tableaux, hook dimensions and Young semi-idempotents.

use std::fmt;

use crate::exactlin::Rat;
use crate::freealg::{permutation_sign, permutations, NCPoly};

use super::TidealError;

/// A partition with weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Partition, TidealError> {
        parts.retain(|&p| p > 0);
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(TidealError::BadPartition(parts));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Column lengths.
    pub fn conjugate(&self) -> Vec<usize> {
        let w = self.0.first().copied().unwrap_or(0);
        (0..w).map(|j| self.0.iter().filter(|&&r| r > j).count()).collect()
    }

    /// Dimension of the irreducible S_n-module, `n! / Π hooks`.
    pub fn hook_dim(&self) -> u128 {
        let cols = self.conjugate();
        let mut hooks: u128 = 1;
        for (i, &r) in self.0.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate().take(r) {
                hooks *= ((r - j - 1) + (c - i - 1) + 1) as u128;
            }
        }
        (1..=self.size() as u128).product::<u128>() / hooks
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

pub fn hook_dim(parts: &[usize]) -> u128 {
    Partition::new(parts.to_vec()).map(|p| p.hook_dim()).unwrap_or(0)
}

/// `dim Γ_n(V)` from the decomposition into the modules of
/// `(n-1,1)`, `(n-2,1,1)` and `(n-2,2)`.
pub fn gamma_v_dim(n: usize) -> u128 {
    assert!(n >= 4, "gamma_v_dim needs n >= 4");
    hook_dim(&[n - 1, 1]) + hook_dim(&[n - 2, 1, 1]) + hook_dim(&[n - 2, 2])
}

/// Which index sets enter the decomposition of `Γ_n(W)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GammaWReading {
    /// Every `(p, s)` and `(p, q, s)` in range.
    AllIndices,
    /// Skip the `s = 0` cases where the generating polynomial is undefined.
    DefinedOnly,
    /// Skip only the single column `(1^n)` for odd `n`, which has no copy in `Γ_n`.
    OddColumnOmitted,
}

/// The summands of `Γ_n(W)`: labels and partitions.
pub fn gamma_w_summands(n: usize, reading: GammaWReading) -> Vec<(String, Partition)> {
    let mut out = Vec::new();
    for p in 2..=n {
        let s = n - p;
        if reading != GammaWReading::AllIndices && s == 0 && p % 2 == 1 {
            continue;
        }
        let mut parts = vec![s + 1];
        parts.extend(std::iter::repeat(1).take(p - 1));
        out.push((format!("M_{p}^({s})"), Partition::new(parts).unwrap()));
    }
    for p in 2..=n {
        for q in 2..=p {
            if p + q > n {
                continue;
            }
            let s = n - p - q;
            if reading == GammaWReading::DefinedOnly && s == 0 && (p + q) % 2 == 1 {
                continue;
            }
            let mut parts = vec![s + 2];
            parts.extend(std::iter::repeat(2).take(q - 1));
            parts.extend(std::iter::repeat(1).take(p - q));
            out.push((format!("M_{p},{q}^({s})"), Partition::new(parts).unwrap()));
        }
    }
    out
}

pub fn gamma_w_dim(n: usize, reading: GammaWReading) -> u128 {
    gamma_w_summands(n, reading).iter().map(|(_, p)| p.hook_dim()).sum()
}

/// A Young diagram filled along rows with `1..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tableau {
    shape: Partition,
    filling: Vec<usize>,
}

impl Tableau {
    /// `filling` lists the entries row by row.
    pub fn new(shape: Partition, filling: Vec<usize>) -> Result<Tableau, TidealError> {
        let n = shape.size();
        let mut seen = vec![false; n + 1];
        if filling.len() != n || filling.iter().any(|&e| e == 0 || e > n || std::mem::replace(&mut seen[e], true)) {
            return Err(TidealError::BadTableau);
        }
        Ok(Tableau { shape, filling })
    }

    /// The tableau filled with `1..n` in reading order.
    pub fn canonical(shape: Partition) -> Tableau {
        let n = shape.size();
        Tableau { shape, filling: (1..=n).collect() }
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut k = 0;
        for &r in self.shape.parts() {
            out.push(self.filling[k..k + r].to_vec());
            k += r;
        }
        out
    }

    pub fn columns(&self) -> Vec<Vec<usize>> {
        let rows = self.rows();
        let w = rows.first().map_or(0, |r| r.len());
        (0..w).map(|j| rows.iter().filter(|r| r.len() > j).map(|r| r[j]).collect()).collect()
    }
}

/// All permutations of `0..n` (as images) that preserve each block setwise.
fn block_group(n: usize, blocks: &[Vec<usize>]) -> Vec<(Vec<usize>, i64)> {
    let mut group: Vec<(Vec<usize>, i64)> = vec![((0..n).collect(), 1)];
    for b in blocks {
        if b.len() < 2 {
            continue;
        }
        let mut next = Vec::new();
        for p in permutations(b.len()) {
            let sign = permutation_sign(&p);
            for (g, sg) in &group {
                let mut h = g.clone();
                for (i, &pi) in p.iter().enumerate() {
                    h[b[i] - 1] = b[pi] - 1;
                }
                next.push((h, sg * sign));
            }
        }
        group = next;
    }
    group
}

/// `e(d) f = Σ_{σ ∈ R(d)} Σ_{τ ∈ C(d)} sign(τ) στ · f`, variables permuted.
pub fn young_symmetrizer_apply(d: &Tableau, f: &NCPoly, bound: usize) -> Result<NCPoly, TidealError> {
    let n = d.shape.size();
    if n > bound {
        return Err(TidealError::Budget { what: "young symmetrizer".into(), n, limit: bound, partial_dim: 0 });
    }
    let rows = block_group(n, &d.rows());
    let cols = block_group(n, &d.columns());
    let mut tau_f = NCPoly::zero();
    for (t, st) in &cols {
        tau_f = tau_f.axpy(&Rat::from_int(*st), &f.permute(t));
    }
    let mut out = NCPoly::zero();
    for (s, _) in &rows {
        out = out.add(&tau_f.permute(s));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::standard;
    use crate::freealg::NCWord;

    fn factorial(n: u128) -> u128 {
        (1..=n).product()
    }

    /// Oracle: count standard Young tableaux by recursion on removable corners.
    fn syt(parts: &[usize]) -> u128 {
        let n: usize = parts.iter().sum();
        if n == 0 {
            return 1;
        }
        let mut total = 0;
        for i in 0..parts.len() {
            let removable = parts[i] > 0 && (i + 1 == parts.len() || parts[i + 1] < parts[i]);
            if removable {
                let mut q = parts.to_vec();
                q[i] -= 1;
                total += syt(&q);
            }
        }
        total
    }

    #[test]
    fn hook_values() {
        assert_eq!(hook_dim(&[3, 1]), 3);
        assert_eq!(hook_dim(&[2, 1, 1]), 3);
        assert_eq!(hook_dim(&[2, 2]), 2);
        assert_eq!(hook_dim(&[1, 1, 1, 1, 1]), 1);
        assert_eq!(gamma_v_dim(4), 8);
        assert_eq!(gamma_v_dim(5), 15);
        assert_eq!(gamma_v_dim(6), 24);
    }

    #[test]
    fn hook_matches_tableau_count_and_sums_of_squares() {
        for n in 1..=8usize {
            let mut total = 0u128;
            for p in partitions(n) {
                assert_eq!(hook_dim(&p), syt(&p), "{p:?}");
                total += hook_dim(&p).pow(2);
            }
            assert_eq!(total, factorial(n as u128));
        }
    }

    fn partitions(n: usize) -> Vec<Vec<usize>> {
        fn go(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if n == 0 {
                out.push(cur.clone());
                return;
            }
            for k in (1..=n.min(max)).rev() {
                cur.push(k);
                go(n - k, k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn column_shape_gives_standard_polynomial() {
        for n in 2..=4 {
            let d = Tableau::canonical(Partition::new(vec![1; n]).unwrap());
            let word = NCPoly::monomial(NCWord::from_slice(&(1..=n as u16).collect::<Vec<_>>()), Rat::ONE);
            assert_eq!(young_symmetrizer_apply(&d, &word, 7).unwrap(), standard(n));
        }
    }

    #[test]
    fn row_shape_symmetrizes() {
        let d = Tableau::canonical(Partition::new(vec![2]).unwrap());
        let e = young_symmetrizer_apply(&d, &NCPoly::var(1).mul(&NCPoly::var(2)), 7).unwrap();
        assert_eq!(e.to_string(), "t1*t2 + t2*t1");
        assert!(!e.is_proper());
    }

    #[test]
    fn bad_tableau_rejected() {
        let p = Partition::new(vec![2, 1]).unwrap();
        assert!(Tableau::new(p.clone(), vec![1, 1, 2]).is_err());
        assert!(Tableau::new(p, vec![3, 1, 2]).is_ok());
        assert!(Partition::new(vec![1, 2]).is_err());
    }

    #[test]
    fn gamma_w_readings_differ_only_at_undefined_cases() {
        for n in 2..=8 {
            let all = gamma_w_summands(n, GammaWReading::AllIndices);
            let def = gamma_w_summands(n, GammaWReading::DefinedOnly);
            assert!(def.len() <= all.len());
            for (_, p) in &all {
                assert_eq!(p.size(), n);
            }
        }
        assert_eq!(gamma_w_dim(2, GammaWReading::DefinedOnly), 1);
    }
}
