use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use super::{LinError, Rat};

/// Sparse row: `(column, coefficient)` pairs sorted by column, no zeros.
pub type SparseRow = Vec<(u32, Rat)>;

const NO_ROW: u32 = u32::MAX;

/// An explicitly ordered set of basis keys. Column `i` is the `i`-th key in
/// ascending key order.
pub struct KeyUniverse<K> {
    keys: Vec<K>,
    index: HashMap<K, u32>,
}

impl<K: Ord + Hash + Clone> KeyUniverse<K> {
    pub fn new(keys: impl IntoIterator<Item = K>) -> Arc<Self> {
        let mut keys: Vec<K> = keys.into_iter().collect();
        keys.sort();
        keys.dedup();
        assert!(keys.len() < NO_ROW as usize, "key universe too large");
        let index = keys.iter().enumerate().map(|(i, k)| (k.clone(), i as u32)).collect();
        Arc::new(KeyUniverse { keys, index })
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn keys(&self) -> &[K] {
        &self.keys
    }

    pub fn key(&self, col: u32) -> &K {
        &self.keys[col as usize]
    }

    pub fn column(&self, key: &K) -> Option<u32> {
        self.index.get(key).copied()
    }
}

impl<K> fmt::Debug for KeyUniverse<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KeyUniverse({} keys)", self.keys.len())
    }
}

fn same_universe<K: PartialEq>(a: &Arc<KeyUniverse<K>>, b: &Arc<KeyUniverse<K>>) -> bool {
    Arc::ptr_eq(a, b) || a.keys == b.keys
}

/// A sparse vector over a [`KeyUniverse`].
#[derive(Clone)]
pub struct IndexedVector<K> {
    universe: Arc<KeyUniverse<K>>,
    entries: SparseRow,
}

impl<K: Ord + Hash + Clone> IndexedVector<K> {
    pub fn zero(universe: &Arc<KeyUniverse<K>>) -> Self {
        IndexedVector { universe: universe.clone(), entries: Vec::new() }
    }

    /// Builds a vector from `(key, coefficient)` pairs, summing repeated keys.
    pub fn from_pairs<'a>(
        universe: &Arc<KeyUniverse<K>>,
        pairs: impl IntoIterator<Item = (&'a K, Rat)>,
    ) -> Result<Self, LinError>
    where
        K: 'a + fmt::Debug,
    {
        let mut acc: HashMap<u32, Rat> = HashMap::new();
        for (k, c) in pairs {
            let col = universe
                .column(k)
                .ok_or_else(|| LinError::KeyOutsideUniverse(format!("{k:?}")))?;
            *acc.entry(col).or_default() += &c;
        }
        let mut entries: SparseRow = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        entries.sort_unstable_by_key(|e| e.0);
        Ok(IndexedVector { universe: universe.clone(), entries })
    }

    /// Wraps an already sorted, zero-free row.
    pub fn from_row(universe: &Arc<KeyUniverse<K>>, entries: SparseRow) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|e| !e.1.is_zero() && (e.0 as usize) < universe.len()));
        IndexedVector { universe: universe.clone(), entries }
    }

    pub fn universe(&self) -> &Arc<KeyUniverse<K>> {
        &self.universe
    }

    pub fn entries(&self) -> &[(u32, Rat)] {
        &self.entries
    }

    pub fn into_entries(self) -> SparseRow {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, key: &K) -> Rat {
        match self.universe.column(key) {
            Some(c) => match self.entries.binary_search_by_key(&c, |e| e.0) {
                Ok(i) => self.entries[i].1.clone(),
                Err(_) => Rat::ZERO,
            },
            None => Rat::ZERO,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Rat)> {
        self.entries.iter().map(|(c, v)| (self.universe.key(*c), v))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return IndexedVector::zero(&self.universe);
        }
        IndexedVector {
            universe: self.universe.clone(),
            entries: self.entries.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinError> {
        self.axpy(&Rat::ONE, other)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LinError> {
        self.axpy(&Rat::from_int(-1), other)
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: &Rat, other: &Self) -> Result<Self, LinError> {
        if !same_universe(&self.universe, &other.universe) {
            return Err(LinError::UniverseMismatch);
        }
        Ok(IndexedVector {
            universe: self.universe.clone(),
            entries: merge_axpy(&self.entries, c, &other.entries),
        })
    }
}

impl<K: fmt::Debug> fmt::Debug for IndexedVector<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.entries.iter().map(|(c, v)| (&self.universe.keys[*c as usize], v)))
            .finish()
    }
}

/// `a + c * b` on sorted sparse rows.
pub(crate) fn merge_axpy(a: &[(u32, Rat)], c: &Rat, b: &[(u32, Rat)]) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, c * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + &(c * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

struct Scratch {
    acc: Vec<Rat>,
    touched: Vec<u32>,
    mark: Vec<bool>,
}

thread_local! {
    static SCRATCH: RefCell<Scratch> = const {
        RefCell::new(Scratch { acc: Vec::new(), touched: Vec::new(), mark: Vec::new() })
    };
}

/// A subspace held as a reduced row echelon basis.
///
/// Rows are pairwise reduced, every pivot coefficient is 1 and the pivot of a
/// row is its first nonzero column in key order. Because the form is canonical,
/// two spanning sets of the same subspace give identical row lists.
#[derive(Clone)]
pub struct Subspace<K> {
    universe: Arc<KeyUniverse<K>>,
    rows: Vec<SparseRow>,
    row_of_pivot: Vec<u32>,
}

impl<K: Ord + Hash + Clone> Subspace<K> {
    pub fn new(universe: &Arc<KeyUniverse<K>>) -> Self {
        Subspace {
            universe: universe.clone(),
            rows: Vec::new(),
            row_of_pivot: vec![NO_ROW; universe.len()],
        }
    }

    pub fn universe(&self) -> &Arc<KeyUniverse<K>> {
        &self.universe
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.universe.len()
    }

    fn check(&self, v: &IndexedVector<K>) -> Result<(), LinError> {
        if same_universe(&self.universe, &v.universe) {
            Ok(())
        } else {
            Err(LinError::UniverseMismatch)
        }
    }

    /// Residual of `row` after reduction against the current basis.
    pub fn reduce_row(&self, row: &[(u32, Rat)]) -> SparseRow {
        if self.rows.is_empty() || row.is_empty() {
            return row.to_vec();
        }
        let n = self.universe.len();
        SCRATCH.with(|s| {
            let mut s = s.borrow_mut();
            let Scratch { acc, touched, mark } = &mut *s;
            if acc.len() < n {
                acc.resize(n, Rat::ZERO);
                mark.resize(n, false);
            }
            touched.clear();
            for (c, x) in row {
                let r = self.row_of_pivot[*c as usize];
                if r == NO_ROW {
                    let c = *c as usize;
                    if !mark[c] {
                        mark[c] = true;
                        touched.push(c as u32);
                    }
                    acc[c] += x;
                } else {
                    for (c2, y) in &self.rows[r as usize] {
                        if c2 == c {
                            continue;
                        }
                        let c2 = *c2 as usize;
                        if !mark[c2] {
                            mark[c2] = true;
                            touched.push(c2 as u32);
                        }
                        acc[c2] -= &(x * y);
                    }
                }
            }
            touched.sort_unstable();
            let mut out = Vec::new();
            for &c in touched.iter() {
                let c = c as usize;
                mark[c] = false;
                let v = std::mem::take(&mut acc[c]);
                if !v.is_zero() {
                    out.push((c as u32, v));
                }
            }
            out
        })
    }

    /// Adjoins a raw row; returns the residual (empty iff the row was dependent).
    pub fn insert_row(&mut self, row: &[(u32, Rat)]) -> SparseRow {
        let residual = self.reduce_row(row);
        if residual.is_empty() {
            return residual;
        }
        let lead = residual[0].1.recip();
        let new_row: SparseRow = residual.iter().map(|(c, v)| (*c, v * &lead)).collect();
        let p = new_row[0].0;
        for r in self.rows.iter_mut() {
            if let Ok(i) = r.binary_search_by_key(&p, |e| e.0) {
                let f = -&r[i].1;
                *r = merge_axpy(r, &f, &new_row);
            }
        }
        self.row_of_pivot[p as usize] = self.rows.len() as u32;
        self.rows.push(new_row);
        residual
    }

    /// Adjoins `v` and returns its residual; the residual is zero iff `v` was
    /// already in the space.
    pub fn insert(&mut self, v: &IndexedVector<K>) -> Result<IndexedVector<K>, LinError> {
        self.check(v)?;
        let residual = self.insert_row(&v.entries);
        Ok(IndexedVector { universe: self.universe.clone(), entries: residual })
    }

    /// Functional form of [`Subspace::insert`].
    pub fn echelon_insert(mut self, v: &IndexedVector<K>) -> Result<(Self, IndexedVector<K>), LinError> {
        let r = self.insert(v)?;
        Ok((self, r))
    }

    pub fn residual(&self, v: &IndexedVector<K>) -> Result<IndexedVector<K>, LinError> {
        self.check(v)?;
        Ok(IndexedVector { universe: self.universe.clone(), entries: self.reduce_row(&v.entries) })
    }

    pub fn contains(&self, v: &IndexedVector<K>) -> Result<bool, LinError> {
        self.check(v)?;
        Ok(self.contains_row(&v.entries))
    }

    pub fn contains_row(&self, row: &[(u32, Rat)]) -> bool {
        self.reduce_row(row).is_empty()
    }

    pub fn is_pivot(&self, col: u32) -> bool {
        self.row_of_pivot[col as usize] != NO_ROW
    }

    /// Basis rows sorted by pivot column.
    pub fn rows(&self) -> Vec<&SparseRow> {
        let mut rows: Vec<&SparseRow> = self.rows.iter().collect();
        rows.sort_unstable_by_key(|r| r[0].0);
        rows
    }

    pub fn basis(&self) -> Vec<IndexedVector<K>> {
        self.rows()
            .into_iter()
            .map(|r| IndexedVector { universe: self.universe.clone(), entries: r.clone() })
            .collect()
    }

    pub fn is_subspace_of(&self, other: &Subspace<K>) -> Result<bool, LinError> {
        if !same_universe(&self.universe, &other.universe) {
            return Err(LinError::UniverseMismatch);
        }
        Ok(self.rows.iter().all(|r| other.contains_row(r)))
    }

    /// Equality of subspaces by comparing canonical echelon forms.
    pub fn subspace_equal(&self, other: &Subspace<K>) -> Result<bool, LinError> {
        if !same_universe(&self.universe, &other.universe) {
            return Err(LinError::UniverseMismatch);
        }
        Ok(self.rows() == other.rows())
    }

    /// `{ v : <v, r> = 0 for every basis row r }` under the coordinate pairing.
    pub fn annihilator(&self) -> Subspace<K> {
        let n = self.universe.len();
        let mut kernel: Vec<SparseRow> = vec![Vec::new(); n];
        for r in &self.rows {
            let p = r[0].0;
            for (c, y) in &r[1..] {
                kernel[*c as usize].push((p, -y));
            }
        }
        let mut out = Subspace::new(&self.universe);
        for (f, mut v) in kernel.into_iter().enumerate() {
            if self.is_pivot(f as u32) {
                continue;
            }
            v.push((f as u32, Rat::ONE));
            v.sort_unstable_by_key(|e| e.0);
            out.insert_row(&v);
        }
        out
    }

    pub fn sum(&self, other: &Subspace<K>) -> Result<Subspace<K>, LinError> {
        if !same_universe(&self.universe, &other.universe) {
            return Err(LinError::UniverseMismatch);
        }
        let (mut big, small) = if self.dim() >= other.dim() { (self.clone(), other) } else { (other.clone(), self) };
        for r in &small.rows {
            big.insert_row(r);
        }
        Ok(big)
    }

    /// `A ∩ B = (A^⊥ + B^⊥)^⊥`.
    pub fn intersection(&self, other: &Subspace<K>) -> Result<Subspace<K>, LinError> {
        Ok(self.annihilator().sum(&other.annihilator())?.annihilator())
    }
}

impl<K: fmt::Debug + Ord + Hash + Clone> fmt::Debug for Subspace<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} of {})", self.dim(), self.universe.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn vec2(u: &Arc<KeyUniverse<&'static str>>, a: i64, b: i64) -> IndexedVector<&'static str> {
        IndexedVector::from_pairs(u, [(&"a", Rat::from(a)), (&"b", Rat::from(b))]).unwrap()
    }

    #[test]
    fn standard_basis_and_multiples() {
        let u = KeyUniverse::new(["a", "b"]);
        let s = Subspace::new(&u);
        assert_eq!(s.dim(), 0);
        let (s, r1) = s.echelon_insert(&vec2(&u, 1, 0)).unwrap();
        let (s, r2) = s.echelon_insert(&vec2(&u, 0, 1)).unwrap();
        assert!(!r1.is_zero() && !r2.is_zero());
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&vec2(&u, 3, 5)).unwrap());

        let t = Subspace::new(&u);
        let (t, _) = t.echelon_insert(&vec2(&u, 1, 1)).unwrap();
        let (t, r) = t.echelon_insert(&vec2(&u, 2, 2)).unwrap();
        assert_eq!(t.dim(), 1);
        assert!(r.is_zero());
    }

    #[test]
    fn key_outside_universe_is_rejected() {
        let u = KeyUniverse::new(["a", "b"]);
        assert!(matches!(
            IndexedVector::from_pairs(&u, [(&"c", Rat::ONE)]),
            Err(LinError::KeyOutsideUniverse(_))
        ));
        let w = KeyUniverse::new(["a", "c"]);
        let s = Subspace::new(&u);
        assert_eq!(s.contains(&IndexedVector::zero(&w)).unwrap_err(), LinError::UniverseMismatch);
    }

    #[test]
    fn span_of_sum_and_difference() {
        let u = KeyUniverse::new(["a", "b", "c"]);
        let v = IndexedVector::from_pairs(&u, [(&"a", Rat::ONE), (&"c", Rat::from(2))]).unwrap();
        let w = IndexedVector::from_pairs(&u, [(&"b", Rat::from(-3)), (&"c", Rat::ONE)]).unwrap();
        let mut s1 = Subspace::new(&u);
        s1.insert(&v).unwrap();
        s1.insert(&w).unwrap();
        let mut s2 = Subspace::new(&u);
        s2.insert(&v.add(&w).unwrap()).unwrap();
        s2.insert(&v.sub(&w).unwrap()).unwrap();
        assert!(s1.subspace_equal(&s2).unwrap());
    }

    #[test]
    fn streaming_random_combinations_stay_in_span() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let u = KeyUniverse::new(0u32..720);
        let gens: Vec<Vec<i64>> = (0..9).map(|_| (0..720).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        let mut s = Subspace::new(&u);
        for _ in 0..720 {
            let coeffs: Vec<i64> = (0..9).map(|_| rng.gen_range(-5..=5)).collect();
            let row: SparseRow = (0..720)
                .filter_map(|j| {
                    let v: i64 = (0..9).map(|i| coeffs[i] * gens[i][j]).sum();
                    (v != 0).then(|| (j as u32, Rat::from(v)))
                })
                .collect();
            s.insert(&IndexedVector::from_row(&u, row)).unwrap();
        }
        assert!(s.dim() <= 9);
        assert_eq!(s.dim(), 9);
    }

    #[test]
    fn annihilator_and_intersection() {
        let u = KeyUniverse::new(0u32..4);
        let e = |v: [i64; 4]| {
            IndexedVector::from_row(
                &u,
                v.iter().enumerate().filter(|(_, x)| **x != 0).map(|(i, x)| (i as u32, Rat::from(*x))).collect(),
            )
        };
        let mut a = Subspace::new(&u);
        a.insert(&e([1, 1, 0, 0])).unwrap();
        a.insert(&e([0, 0, 1, 0])).unwrap();
        let ann = a.annihilator();
        assert_eq!(ann.dim(), 2);
        for r in ann.basis() {
            assert!(r.get(&0) == -&r.get(&1) && r.get(&2).is_zero());
        }
        let mut b = Subspace::new(&u);
        b.insert(&e([1, 1, 1, 0])).unwrap();
        b.insert(&e([0, 0, 0, 1])).unwrap();
        let i = a.intersection(&b).unwrap();
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&e([1, 1, 1, 0])).unwrap());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn span(u: &Arc<KeyUniverse<u32>>, rows: &[Vec<i64>]) -> Subspace<u32> {
            let mut s = Subspace::new(u);
            for r in rows {
                s.insert_row(&to_row(r));
            }
            s
        }

        fn to_row(r: &[i64]) -> SparseRow {
            r.iter().enumerate().filter(|(_, x)| **x != 0).map(|(i, x)| (i as u32, Rat::from(*x))).collect()
        }

        fn rows(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
            proptest::collection::vec(proptest::collection::vec(-2i64..=2, n), 0..n + 2)
        }

        proptest! {
            #[test]
            fn dimension_formula(a in rows(6), b in rows(6)) {
                let u = KeyUniverse::new(0u32..6);
                let (sa, sb) = (span(&u, &a), span(&u, &b));
                let sum = sa.sum(&sb).unwrap();
                let int = sa.intersection(&sb).unwrap();
                prop_assert_eq!(sum.dim() + int.dim(), sa.dim() + sb.dim());
                prop_assert!(int.is_subspace_of(&sa).unwrap() && int.is_subspace_of(&sb).unwrap());
                prop_assert!(sa.is_subspace_of(&sum).unwrap());
            }

            #[test]
            fn annihilator_is_orthogonal(a in rows(5)) {
                let u = KeyUniverse::new(0u32..5);
                let s = span(&u, &a);
                let ann = s.annihilator();
                prop_assert_eq!(ann.dim() + s.dim(), 5);
                for v in ann.basis() {
                    for r in &a {
                        let dot = r.iter().enumerate().fold(Rat::from(0), |acc, (i, x)| &acc + &(&v.get(&(i as u32)) * &Rat::from(*x)));
                        prop_assert!(dot.is_zero());
                    }
                }
            }

            #[test]
            fn combinations_stay_in_span(a in rows(5), c in proptest::collection::vec(-3i64..=3, 7)) {
                let u = KeyUniverse::new(0u32..5);
                let mut s = span(&u, &a);
                let d = s.dim();
                let combo: Vec<i64> = (0..5).map(|j| a.iter().zip(&c).map(|(r, k)| r[j] * k).sum()).collect();
                prop_assert!(s.contains_row(&to_row(&combo)));
                prop_assert!(s.insert_row(&to_row(&combo)).is_empty());
                prop_assert_eq!(s.dim(), d);
            }
        }
    }
}
