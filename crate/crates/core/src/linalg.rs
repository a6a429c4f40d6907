//! Exact linear algebra: dense rational inversion and an incremental sparse
//! row-echelon basis over Q(√2).

use std::collections::BTreeMap;
use std::ops::Bound;

use num_traits::{One, Zero};

use crate::scalars::{QuadExt, Rational};

/// Inverse of a square rational matrix by Gauss–Jordan, `None` if singular.
pub fn invert(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = Rational::one() / &a[col][col];
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..2 * n {
                    let d = &f * &a[col][c];
                    a[r][c] -= d;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub type SparseVec<K> = BTreeMap<K, QuadExt>;

/// `v += k·w`, dropping entries that cancel.
pub fn axpy<K: Ord + Clone>(v: &mut SparseVec<K>, k: &QuadExt, w: &SparseVec<K>) {
    for (key, c) in w {
        let d = k * c;
        match v.get_mut(key) {
            Some(e) => {
                *e += &d;
                if e.is_zero() {
                    v.remove(key);
                }
            }
            None => {
                if !d.is_zero() {
                    v.insert(key.clone(), d);
                }
            }
        }
    }
}

/// Semi-reduced echelon basis: every row is normalised so its smallest key
/// (the pivot) has coefficient 1, and pivots are distinct.
#[derive(Clone, Debug)]
pub struct SparseEchelon<K: Ord + Clone> {
    rows: BTreeMap<K, SparseVec<K>>,
}

impl<K: Ord + Clone> Default for SparseEchelon<K> {
    fn default() -> Self {
        SparseEchelon { rows: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> SparseEchelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.keys()
    }

    /// Remainder of `v` after eliminating every pivot coordinate.
    pub fn reduce(&self, v: &SparseVec<K>) -> SparseVec<K> {
        let mut v = v.clone();
        let mut cursor: Option<K> = None;
        loop {
            let lower = match &cursor {
                Some(k) => Bound::Excluded(k.clone()),
                None => Bound::Unbounded,
            };
            let hit = v
                .range((lower, Bound::Unbounded))
                .find(|(k, _)| self.rows.contains_key(*k))
                .map(|(k, c)| (k.clone(), c.clone()));
            let Some((k, c)) = hit else { break };
            axpy(&mut v, &(-c), &self.rows[&k]);
            cursor = Some(k);
        }
        v
    }

    /// Adds `v` to the basis; returns false if it was already in the span.
    pub fn insert(&mut self, v: &SparseVec<K>) -> bool {
        let r = self.reduce(v);
        let Some((k, c)) = r.iter().next() else {
            return false;
        };
        let k = k.clone();
        let inv = c.inv().expect("nonzero pivot");
        let row = r.into_iter().map(|(key, x)| (key, &x * &inv)).collect();
        self.rows.insert(k, row);
        true
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v).is_empty()
    }
}
