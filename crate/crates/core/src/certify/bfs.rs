//! Breadth-first search of a mutation class for an acyclic member.

use std::collections::{HashSet, VecDeque};

use super::canon::canonical_key;
use crate::graph::Digraph;
use crate::quiver::Quiver;
use crate::scalar::Scalar;

/// Limits for the mutation-class search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BfsLimits {
    pub depth: usize,
    /// Quivers with an entry above this magnitude are treated as diverging and pruned.
    pub entry_cap: u64,
    /// Stop after this many distinct isomorphism classes.
    pub max_states: usize,
}

impl Default for BfsLimits {
    fn default() -> Self {
        BfsLimits {
            depth: 6,
            entry_cap: 1_000_000,
            max_states: 20_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BfsOutcome<T> {
    /// First acyclic quiver reached, with the mutation sequence from the input.
    pub found: Option<(Quiver<T>, Vec<usize>)>,
    /// Distinct isomorphism classes seen.
    pub states: usize,
    /// Every reachable class was visited without hitting any limit.
    pub exhausted: bool,
    pub depth_reached: usize,
    pub capped_entries: usize,
    pub hit_state_limit: bool,
}

pub fn is_acyclic<T: Scalar>(q: &Quiver<T>) -> bool {
    Digraph::from_quiver(q).is_acyclic()
}

fn within_cap<T: Scalar>(q: &Quiver<T>, cap: &T) -> bool {
    q.max_abs_entry() <= *cap
}

/// BFS over mutations at mutable vertices, deduplicated up to isomorphism.
/// Children are generated in vertex order, so the witness is deterministic.
pub fn mutation_bfs<T: Scalar>(q: &Quiver<T>, limits: &BfsLimits) -> BfsOutcome<T> {
    let mut out = BfsOutcome {
        found: None,
        states: 1,
        exhausted: false,
        depth_reached: 0,
        capped_entries: 0,
        hit_state_limit: false,
    };
    if is_acyclic(q) {
        out.found = Some((q.clone(), Vec::new()));
        return out;
    }
    let cap = T::from_u64(limits.entry_cap).expect("cap fits the scalar");
    let mut seen = HashSet::new();
    seen.insert(canonical_key(q));
    let mut queue = VecDeque::from([(q.clone(), Vec::<usize>::new())]);
    let mut pruned = false;
    while let Some((cur, path)) = queue.pop_front() {
        let at_limit = path.len() >= limits.depth;
        for v in cur.mutable_vertices() {
            if path.last() == Some(&v) {
                continue;
            }
            let next = cur.mutate(v).expect("mutable vertex");
            if !within_cap(&next, &cap) {
                out.capped_entries += 1;
                pruned = true;
                continue;
            }
            let key = canonical_key(&next);
            if seen.contains(&key) {
                continue;
            }
            if at_limit {
                pruned = true;
                continue;
            }
            seen.insert(key);
            let mut p = path.clone();
            p.push(v);
            out.depth_reached = out.depth_reached.max(p.len());
            out.states = seen.len();
            if is_acyclic(&next) {
                out.found = Some((next, p));
                return out;
            }
            if seen.len() >= limits.max_states {
                out.hit_state_limit = true;
                return out;
            }
            queue.push_back((next, p));
        }
    }
    out.exhausted = !pruned;
    out
}
