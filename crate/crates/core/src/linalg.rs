//! Exact sparse row reduction for span membership over the rationals.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::numeric::Rational;

pub type SparseVec<K> = BTreeMap<K, Rational>;

/// `a += c * b`, dropping entries that cancel.
pub fn axpy<K: Ord + Clone>(a: &mut SparseVec<K>, c: &Rational, b: &SparseVec<K>) {
    if c.is_zero() {
        return;
    }
    for (k, v) in b {
        let entry = a.entry(k.clone()).or_insert_with(Rational::zero);
        *entry += c * v;
        if entry.is_zero() {
            a.remove(k);
        }
    }
}

/// A subspace kept in reduced row echelon form: every pivot coordinate
/// appears in exactly one stored row, with coefficient one.
#[derive(Debug, Clone)]
pub struct Span<K: Ord> {
    rows: BTreeMap<K, SparseVec<K>>,
}

impl<K: Ord + Clone> Default for Span<K> {
    fn default() -> Self {
        Span { rows: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> Span<K> {
    pub fn new() -> Span<K> {
        Span::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Residue of `v` after eliminating every pivot coordinate.
    pub fn reduce(&self, v: &SparseVec<K>) -> SparseVec<K> {
        let mut out = v.clone();
        let hits: Vec<K> = v.keys().filter(|k| self.rows.contains_key(*k)).cloned().collect();
        for k in hits {
            if let Some(c) = out.get(&k).cloned() {
                axpy(&mut out, &(-c), &self.rows[&k]);
            }
        }
        out
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v`; returns true when it enlarged the span.
    pub fn insert(&mut self, v: &SparseVec<K>) -> bool {
        let r = self.reduce(v);
        let Some((pivot, lead)) = r.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = Rational::one() / lead;
        let row: SparseVec<K> = r.into_iter().map(|(k, c)| (k, c * &inv)).collect();
        for other in self.rows.values_mut() {
            if let Some(c) = other.get(&pivot).cloned() {
                axpy(other, &(-c), &row);
            }
        }
        self.rows.insert(pivot, row);
        true
    }
}

/// Solves `Σ x_i basis_i = target`, returning coefficients when solvable.
pub fn solve<K: Ord + Clone>(basis: &[SparseVec<K>], target: &SparseVec<K>) -> Option<Vec<Rational>> {
    // augment each vector with a tag coordinate tracking its combination
    #[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
    enum Tagged<K> {
        Coord(K),
        Tag(usize),
    }
    let mut span: Span<Tagged<K>> = Span::new();
    for (i, b) in basis.iter().enumerate() {
        let mut v: SparseVec<Tagged<K>> = b.iter().map(|(k, c)| (Tagged::Coord(k.clone()), c.clone())).collect();
        v.insert(Tagged::Tag(i), Rational::one());
        span.insert(&v);
    }
    let t: SparseVec<Tagged<K>> = target.iter().map(|(k, c)| (Tagged::Coord(k.clone()), c.clone())).collect();
    let r = span.reduce(&t);
    if r.keys().any(|k| matches!(k, Tagged::Coord(_))) {
        return None;
    }
    // r = t - Σ y_i b_i restricted to tags holds -y_i; so t = Σ (-r_tag_i) b_i
    let mut x = vec![Rational::zero(); basis.len()];
    for (k, c) in r {
        if let Tagged::Tag(i) = k {
            x[i] = -c;
        }
    }
    Some(x)
}
