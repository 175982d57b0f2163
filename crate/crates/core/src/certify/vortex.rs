//! In a mutation-acyclic quiver the outset and inset of every vertex induce
//! acyclic subquivers. The extended form also forbids chordless oriented cycles
//! in `Out(v) ∪ S` or `In(v) ∪ S` (with `S` the vertices not adjacent to `v`)
//! that meet the outset (inset) in three or more vertices, or in two that are not
//! consecutive on the cycle. Then every cycle `v, h, …, h', v` between
//! consecutive hits is chordless and unoriented, and their parities contradict
//! the odd parity of the cycle itself under any admissible companion. Cycles with
//! chords, or with exactly two consecutive hits, occur in mutation-acyclic quivers.

use serde::Serialize;

use crate::graph::Digraph;
use crate::quiver::Quiver;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum VortexMode {
    Basic,
    Extended,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    Out,
    In,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VortexViolation {
    pub vertex: usize,
    pub side: Side,
    pub mode: VortexMode,
    /// Chordless oriented cycle `w₀ → w₁ → ⋯ → w₀` in original vertex indices.
    pub cycle: Vec<usize>,
    /// Vertices of the cycle lying in the outset (inset).
    pub hits: Vec<usize>,
}

impl VortexViolation {
    /// Recheck the violation directly against `q`.
    pub fn verify<T: Scalar>(&self, q: &Quiver<T>) -> bool {
        let v = self.vertex;
        if v >= q.n() || self.cycle.len() < 2 {
            return false;
        }
        let side = side_set(q, v, self.side);
        let k = self.cycle.len();
        let mut distinct = self.cycle.clone();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() != k {
            return false;
        }
        for i in 0..k {
            let (a, b) = (self.cycle[i], self.cycle[(i + 1) % k]);
            if a >= q.n() || b >= q.n() || !q.entry(a, b).is_positive() {
                return false;
            }
        }
        let allowed =
            |w: usize| w != v && (side.contains(&w) || (self.mode == VortexMode::Extended && !q.adjacent(v, w)));
        let chordless =
            (0..k).all(|i| (i + 2..k).all(|j| (i == 0 && j == k - 1) || !q.adjacent(self.cycle[i], self.cycle[j])));
        let marked: Vec<bool> = self.cycle.iter().map(|w| side.contains(w)).collect();
        self.cycle.iter().all(|&w| allowed(w)) && chordless && enough_hits(&marked)
    }
}

fn side_set<T: Scalar>(q: &Quiver<T>, v: usize, side: Side) -> Vec<usize> {
    match side {
        Side::Out => q.out_set(v),
        Side::In => q.in_set(v),
    }
}

/// First violation in vertex order, outset before inset.
pub fn no_vortex_check<T: Scalar>(q: &Quiver<T>, mode: VortexMode) -> Option<VortexViolation> {
    all_vortex_violations(q, mode, true).into_iter().next()
}

pub fn all_vortex_violations<T: Scalar>(q: &Quiver<T>, mode: VortexMode, first_only: bool) -> Vec<VortexViolation> {
    let d = Digraph::from_quiver(q);
    let mut out = Vec::new();
    for v in 0..q.n() {
        for side in [Side::Out, Side::In] {
            let marked = side_set(q, v, side);
            let mut support = marked.clone();
            if mode == VortexMode::Extended {
                support.extend((0..q.n()).filter(|&w| w != v && !q.adjacent(v, w)));
                support.sort_unstable();
            }
            let sub = d.induced(&support);
            let is_marked: Vec<bool> = support.iter().map(|w| marked.contains(w)).collect();
            let found = match mode {
                VortexMode::Basic => sub.topological_sort().err(),
                VortexMode::Extended => cycle_through_two(&sub, &is_marked),
            };
            if let Some(local) = found {
                let cycle: Vec<usize> = local.iter().map(|&i| support[i]).collect();
                let hits = cycle.iter().copied().filter(|w| marked.contains(w)).collect();
                out.push(VortexViolation {
                    vertex: v,
                    side,
                    mode,
                    cycle,
                    hits,
                });
                if first_only {
                    return out;
                }
            }
        }
    }
    out
}

/// At least three marked positions, or two that are not cyclically adjacent.
fn enough_hits(marked: &[bool]) -> bool {
    let at: Vec<usize> = (0..marked.len()).filter(|&i| marked[i]).collect();
    match at.len() {
        0 | 1 => false,
        2 => {
            let gap = at[1] - at[0];
            gap != 1 && gap != marked.len() - 1
        }
        _ => true,
    }
}

fn adjacent(g: &Digraph, a: usize, b: usize) -> bool {
    g.has_arc(a, b) || g.has_arc(b, a)
}

/// A chordless directed cycle whose marked vertices satisfy [`enough_hits`].
fn cycle_through_two(g: &Digraph, marked: &[bool]) -> Option<Vec<usize>> {
    let n = g.n();
    let mut path = Vec::new();
    let mut on = vec![false; n];
    for s in 0..n {
        path.push(s);
        on[s] = true;
        if let Some(c) = extend(g, marked, s, &mut path, &mut on) {
            return Some(c);
        }
        on[s] = false;
        path.pop();
    }
    None
}

fn extend(g: &Digraph, marked: &[bool], s: usize, path: &mut Vec<usize>, on: &mut [bool]) -> Option<Vec<usize>> {
    let last = *path.last().expect("path is nonempty");
    for &x in g.successors(last) {
        if x == s {
            // Only `s` may still carry a chord; interior vertices are checked on entry.
            let k = path.len();
            let flags: Vec<bool> = path.iter().map(|&w| marked[w]).collect();
            if enough_hits(&flags)
                && path
                    .iter()
                    .skip(2)
                    .take(k.saturating_sub(3))
                    .all(|&w| !adjacent(g, s, w))
            {
                return Some(path.clone());
            }
            continue;
        }
        if x < s
            || on[x]
            || path
                .iter()
                .skip(1)
                .take(path.len().saturating_sub(2))
                .any(|&w| adjacent(g, x, w))
        {
            continue;
        }
        on[x] = true;
        path.push(x);
        if let Some(c) = extend(g, marked, s, path, on) {
            return Some(c);
        }
        path.pop();
        on[x] = false;
    }
    None
}
