//! Isomorphism-invariant keys for quivers, used to deduplicate search states.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use canonical_form::Canonize;
use num_traits::Zero;

use crate::matrix::Matrix;
use crate::quiver::Quiver;
use crate::scalar::Scalar;

/// Row-major `B` plus frozen flags; equal canonical keys mean isomorphic quivers.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonKey<T> {
    frozen: Vec<bool>,
    entries: Vec<T>,
}

impl<T: Clone + Ord + Hash + Zero> CanonKey<T> {
    /// Key for an arbitrary square pattern; used for undirected weighted graphs.
    pub(crate) fn from_entries(n: usize, entries: Vec<T>) -> Self {
        debug_assert_eq!(entries.len(), n * n);
        CanonKey {
            frozen: vec![false; n],
            entries,
        }
    }

    pub(crate) fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn n(&self) -> usize {
        self.frozen.len()
    }
}

impl<T: Scalar> CanonKey<T> {
    pub fn of(q: &Quiver<T>) -> Self {
        let n = q.n();
        let mut entries = Vec::with_capacity(n * n);
        for u in 0..n {
            for v in 0..n {
                entries.push(q.entry(u, v).clone());
            }
        }
        CanonKey {
            frozen: q.frozen_flags().to_vec(),
            entries,
        }
    }

    pub fn to_quiver(&self) -> Quiver<T> {
        let n = self.n();
        let b = Matrix::from_fn(n, n, |i, j| self.entries[i * n + j].clone());
        Quiver::from_b(b, self.frozen.clone()).expect("key was built from a valid quiver")
    }
}

fn hash_of<H: Hash>(x: &H) -> u64 {
    let mut h = DefaultHasher::new();
    x.hash(&mut h);
    h.finish()
}

impl<T: Clone + Ord + Hash + Zero> Canonize for CanonKey<T> {
    fn size(&self) -> usize {
        self.n()
    }

    fn apply_morphism(&self, p: &[usize]) -> Self {
        let n = self.n();
        let mut frozen = vec![false; n];
        let mut entries = vec![T::zero(); n * n];
        for i in 0..n {
            frozen[p[i]] = self.frozen[i];
            for j in 0..n {
                entries[p[i] * n + p[j]] = self.entries[i * n + j].clone();
            }
        }
        CanonKey { frozen, entries }
    }

    fn invariant_color(&self, u: usize) -> u64 {
        let n = self.n();
        let mut row: Vec<&T> = self.entries[u * n..(u + 1) * n].iter().collect();
        row.sort();
        hash_of(&(self.frozen[u], row))
    }

    fn invariant_neighborhood(&self, u: usize) -> impl Iterator<Item = (usize, u64)> {
        let n = self.n();
        (0..n)
            .filter(move |&v| !self.entries[u * n + v].is_zero())
            .map(move |v| (v, hash_of(&self.entries[u * n + v])))
    }
}

/// Canonical representative of the isomorphism class of `q` (labels dropped).
pub fn canonical_key<T: Scalar>(q: &Quiver<T>) -> CanonKey<T> {
    CanonKey::of(q).canonical()
}

pub fn isomorphic<T: Scalar>(a: &Quiver<T>, b: &Quiver<T>) -> bool {
    a.n() == b.n() && canonical_key(a) == canonical_key(b)
}
