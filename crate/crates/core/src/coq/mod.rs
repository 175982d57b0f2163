//! Cyclically ordered quivers: tears, winding numbers and wiggles.

mod companion;
mod proper;

pub use companion::{
    companion_after_mutation, entrywise_companion_match, quasi_cartan_from_companion, unipotent_companion,
    UnipotentCompanion,
};
pub use proper::{canonical_order, improper_paths, is_proper_class, is_proper_vertex, proper_mutate};

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{cycle_basis, Cycle, SimpleGraph};
use crate::quiver::Quiver;
use crate::scalar::Scalar;

/// A cyclic order stored rotated so the least vertex comes first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicOrder {
    seq: Vec<usize>,
}

impl CyclicOrder {
    /// Closure of a linear order; `n` is the number of vertices it must cover.
    pub fn new(seq: Vec<usize>, n: usize) -> Result<Self> {
        check_permutation(&seq, n)?;
        Ok(Self::from_linear_unchecked(seq))
    }

    pub(crate) fn from_linear_unchecked(mut seq: Vec<usize>) -> Self {
        if let Some(p) = seq.iter().position(|&v| v == 0) {
            seq.rotate_left(p);
        }
        CyclicOrder { seq }
    }

    pub fn identity(n: usize) -> Self {
        CyclicOrder { seq: (0..n).collect() }
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    /// The canonical tear, starting at the least vertex.
    pub fn as_slice(&self) -> &[usize] {
        &self.seq
    }

    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.seq.len()];
        for (i, &v) in self.seq.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }

    /// All `n` linear orders obtained by cutting the circle, starting at each position.
    pub fn tears(&self) -> Vec<Vec<usize>> {
        let n = self.seq.len();
        (0..n)
            .map(|k| {
                let mut t = self.seq.clone();
                t.rotate_left(k);
                t
            })
            .collect()
    }

    /// Whether `(u, v, w)` are met in that order walking clockwise from `u`.
    pub fn clockwise(&self, u: usize, v: usize, w: usize) -> bool {
        let pos = self.positions();
        let n = self.seq.len();
        let dv = (pos[v] + n - pos[u]) % n;
        let dw = (pos[w] + n - pos[u]) % n;
        u != v && v != w && u != w && dv < dw
    }

    pub fn cyclically_adjacent(&self, u: usize, v: usize) -> bool {
        let n = self.seq.len();
        if u == v || n < 2 {
            return false;
        }
        let pos = self.positions();
        (pos[u] + 1) % n == pos[v] || (pos[v] + 1) % n == pos[u]
    }

    pub fn swapped(&self, u: usize, v: usize) -> Self {
        let pos = self.positions();
        let mut seq = self.seq.clone();
        seq.swap(pos[u], pos[v]);
        Self::from_linear_unchecked(seq)
    }
}

impl fmt::Debug for CyclicOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.seq.iter().map(|v| format!("v{}", v + 1)).collect();
        write!(f, "({})", names.join(", "))
    }
}

pub(crate) fn check_permutation(seq: &[usize], n: usize) -> Result<()> {
    if seq.len() != n {
        return Err(Error::BadOrder(format!("{} entries for {} vertices", seq.len(), n)));
    }
    let mut seen = vec![false; n];
    for &v in seq {
        if v >= n {
            return Err(Error::BadOrder(format!("unknown vertex index {v}")));
        }
        if seen[v] {
            return Err(Error::BadOrder(format!("v{} listed twice", v + 1)));
        }
        seen[v] = true;
    }
    Ok(())
}

/// A quiver without frozen vertices plus a cyclic order of its vertices.
#[derive(Clone, PartialEq, Eq)]
pub struct Coq<T> {
    quiver: Quiver<T>,
    order: CyclicOrder,
}

impl<T: Scalar> Coq<T> {
    pub fn new(quiver: Quiver<T>, order: Vec<usize>) -> Result<Self> {
        if quiver.has_frozen() {
            return Err(Error::BadOrder(
                "cyclic orders are taken on quivers without frozen vertices; pass the mutable part".into(),
            ));
        }
        let order = CyclicOrder::new(order, quiver.n())?;
        Ok(Coq { quiver, order })
    }

    pub fn with_order(quiver: Quiver<T>, order: CyclicOrder) -> Result<Self> {
        Self::new(quiver, order.seq)
    }

    pub fn quiver(&self) -> &Quiver<T> {
        &self.quiver
    }

    pub fn order(&self) -> &CyclicOrder {
        &self.order
    }

    pub fn n(&self) -> usize {
        self.quiver.n()
    }

    pub fn tears(&self) -> Vec<Vec<usize>> {
        self.order.tears()
    }

    pub fn winding(&self, cycle: &Cycle) -> Result<i64> {
        cycle.validate(&SimpleGraph::underlying(&self.quiver))?;
        let w = winding_in_tear(&self.quiver, self.order.as_slice(), cycle);
        #[cfg(debug_assertions)]
        for tear in self.tears() {
            let other = winding_in_tear(&self.quiver, &tear, cycle);
            if other != w {
                return Err(Error::InvariantViolation(format!(
                    "winding depends on the tear: {w} vs {other}"
                )));
            }
        }
        Ok(w)
    }

    /// Windings on the fundamental cycles of `K_Q`.
    pub fn basis_windings(&self) -> Vec<(Cycle, i64)> {
        cycle_basis(&SimpleGraph::underlying(&self.quiver))
            .into_iter()
            .map(|c| {
                let w = winding_in_tear(&self.quiver, self.order.as_slice(), &c);
                (c, w)
            })
            .collect()
    }

    pub fn wiggle(&self, u: usize, v: usize) -> Result<Self> {
        self.quiver.check_vertex(u)?;
        self.quiver.check_vertex(v)?;
        if !self.order.cyclically_adjacent(u, v) {
            return Err(Error::NotCyclicallyAdjacent(u, v));
        }
        if self.quiver.adjacent(u, v) {
            return Err(Error::QuiverAdjacent(u, v));
        }
        Ok(Coq {
            quiver: self.quiver.clone(),
            order: self.order.swapped(u, v),
        })
    }

    /// Every wiggle available from this COQ.
    pub fn wiggle_moves(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let seq = self.order.as_slice();
        let mut out = Vec::new();
        if n < 2 {
            return out;
        }
        let pairs = if n == 2 { 1 } else { n };
        for i in 0..pairs {
            let (a, b) = (seq[i], seq[(i + 1) % n]);
            if !self.quiver.adjacent(a, b) {
                out.push((a.min(b), a.max(b)));
            }
        }
        out
    }

    pub fn wiggle_equivalent(&self, other: &Coq<T>) -> Result<bool> {
        if self.quiver.b() != other.quiver.b() {
            return Err(Error::DifferentQuivers);
        }
        let g = SimpleGraph::underlying(&self.quiver);
        Ok(cycle_basis(&g).iter().all(|c| {
            winding_in_tear(&self.quiver, self.order.as_slice(), c)
                == winding_in_tear(&other.quiver, other.order.as_slice(), c)
        }))
    }

    /// Breadth-first walk of the wiggle class, stopping early once `stop` returns true.
    /// Returns the visited orders in discovery order.
    pub fn explore_wiggle_class(&self, limit: usize, mut stop: impl FnMut(&Coq<T>) -> bool) -> Vec<CyclicOrder> {
        let mut seen = HashSet::from([self.order.clone()]);
        let mut out = vec![self.order.clone()];
        let mut queue = VecDeque::from([self.clone()]);
        while let Some(c) = queue.pop_front() {
            if stop(&c) {
                break;
            }
            for (u, v) in c.wiggle_moves() {
                if seen.len() >= limit {
                    return out;
                }
                let next = Coq {
                    quiver: c.quiver.clone(),
                    order: c.order.swapped(u, v),
                };
                if seen.insert(next.order.clone()) {
                    out.push(next.order.clone());
                    queue.push_back(next);
                }
            }
        }
        out
    }
}

impl<T: Scalar> fmt::Debug for Coq<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Coq({:?}, {:?})", self.quiver, self.order)
    }
}

/// `#{w_i → w_{i+1}, w_i > w_{i+1}} − #{w_i ← w_{i+1}, w_i < w_{i+1}}` in a linear order.
pub(crate) fn winding_in_tear<T: Scalar>(q: &Quiver<T>, tear: &[usize], c: &Cycle) -> i64 {
    let mut pos = vec![usize::MAX; q.n()];
    for (i, &v) in tear.iter().enumerate() {
        pos[v] = i;
    }
    let mut w = 0;
    for (a, b) in c.steps() {
        let e = q.entry(a, b);
        if e.is_positive() && pos[a] > pos[b] {
            w += 1;
        } else if e.is_negative() && pos[a] < pos[b] {
            w -= 1;
        }
    }
    w
}
