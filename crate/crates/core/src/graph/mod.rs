//! The undirected shadow `K_Q` of a quiver, its cycles, and directed acyclicity.

mod digraph;
mod lgraph;

pub use digraph::Digraph;
pub use lgraph::{build_l_graph, LGraph};

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};
use crate::quiver::Quiver;
use crate::scalar::Scalar;

/// Simple undirected graph on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<Vec<bool>>,
    nbrs: Vec<Vec<usize>>,
}

impl SimpleGraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut adj = vec![vec![false; n]; n];
        for &(u, v) in edges {
            if u != v {
                adj[u][v] = true;
                adj[v][u] = true;
            }
        }
        Self::from_adjacency(adj)
    }

    fn from_adjacency(adj: Vec<Vec<bool>>) -> Self {
        let nbrs = adj
            .iter()
            .map(|row| (0..row.len()).filter(|&j| row[j]).collect())
            .collect();
        SimpleGraph { adj, nbrs }
    }

    /// `K_Q`: an edge wherever `b_{uv} ≠ 0`.
    pub fn underlying<T: Scalar>(q: &Quiver<T>) -> Self {
        let n = q.n();
        let adj = (0..n).map(|u| (0..n).map(|v| q.adjacent(u, v)).collect()).collect();
        Self::from_adjacency(adj)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u][v]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.nbrs[v]
    }

    /// Edges `(u, v)` with `u < v`, lexicographic.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut out = Vec::new();
        for u in 0..n {
            for &v in &self.nbrs[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.nbrs.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Connected components, each sorted, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &self.nbrs[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Whether `vs` (in cyclic order) has no edge between non-consecutive members.
    pub fn is_chordless(&self, vs: &[usize]) -> bool {
        let l = vs.len();
        for i in 0..l {
            for j in i + 2..l {
                if i == 0 && j == l - 1 {
                    continue;
                }
                if self.adj[vs[i]][vs[j]] {
                    return false;
                }
            }
        }
        true
    }
}

/// A cycle `(w₀ - w₁ - ⋯ - w₀)` with a direction of traversal, rotated so its
/// least vertex comes first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle {
    vertices: Vec<usize>,
}

impl Cycle {
    /// Rotates `vertices` to canonical form. Validity against a graph is checked
    /// separately by [`Cycle::validate`].
    pub fn new(mut vertices: Vec<usize>) -> Self {
        if let Some(pos) = vertices.iter().enumerate().min_by_key(|&(_, v)| *v).map(|(i, _)| i) {
            vertices.rotate_left(pos);
        }
        Cycle { vertices }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn reversed(&self) -> Self {
        let mut v = self.vertices.clone();
        v.reverse();
        Cycle::new(v)
    }

    /// Consecutive pairs `(w_i, w_{i+1})`, closing back to `w₀`.
    pub fn steps(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let l = self.vertices.len();
        (0..l).map(move |i| (self.vertices[i], self.vertices[(i + 1) % l]))
    }

    /// Direction-free representative: the smaller of the two traversals.
    pub fn undirected(&self) -> Self {
        let r = self.reversed();
        if r < *self {
            r
        } else {
            self.clone()
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    pub fn validate(&self, g: &SimpleGraph) -> Result<()> {
        let n = g.n();
        let l = self.vertices.len();
        if l < 3 {
            return Err(Error::InvalidCycle("a cycle needs at least 3 vertices".into()));
        }
        let mut seen = vec![false; n];
        for &v in &self.vertices {
            if v >= n {
                return Err(Error::UnknownVertex(v));
            }
            if seen[v] {
                return Err(Error::InvalidCycle(format!("v{} repeated", v + 1)));
            }
            seen[v] = true;
        }
        for (a, b) in self.steps() {
            if !g.has_edge(a, b) {
                return Err(Error::InvalidCycle(format!(
                    "v{} and v{} are not adjacent",
                    a + 1,
                    b + 1
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for v in &self.vertices {
            write!(f, "v{} - ", v + 1)?;
        }
        match self.vertices.first() {
            Some(v) => write!(f, "v{})", v + 1),
            None => write!(f, ")"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    ForwardOriented,
    BackwardOriented,
    NonOriented,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CycleClass {
    pub orientation: Orientation,
    pub chordless: bool,
}

impl CycleClass {
    pub fn is_oriented(&self) -> bool {
        self.orientation != Orientation::NonOriented
    }
}

pub fn classify_cycle<T: Scalar>(q: &Quiver<T>, c: &Cycle) -> Result<CycleClass> {
    let g = SimpleGraph::underlying(q);
    c.validate(&g)?;
    let mut fwd = true;
    let mut bwd = true;
    for (a, b) in c.steps() {
        if q.entry(a, b).is_positive() {
            bwd = false;
        } else {
            fwd = false;
        }
    }
    let orientation = match (fwd, bwd) {
        (true, _) => Orientation::ForwardOriented,
        (_, true) => Orientation::BackwardOriented,
        _ => Orientation::NonOriented,
    };
    Ok(CycleClass {
        orientation,
        chordless: g.is_chordless(c.vertices()),
    })
}

/// Every chordless cycle of `g`, once each, as `(s, x₁, …, x_k)` with `s` least
/// and `x₁ < x_k`.
pub fn chordless_cycles(g: &SimpleGraph) -> Vec<Cycle> {
    let mut out = Vec::new();
    let mut path = Vec::new();
    for s in 0..g.n() {
        path.clear();
        path.push(s);
        extend_chordless(g, s, &mut path, &mut out);
    }
    out
}

fn extend_chordless(g: &SimpleGraph, s: usize, path: &mut Vec<usize>, out: &mut Vec<Cycle>) {
    let last = *path.last().unwrap();
    for &x in g.neighbors(last) {
        if x <= s || path.contains(&x) {
            continue;
        }
        // x may touch only the current end of the path (and s, which closes it).
        let interior = if path.len() >= 2 {
            &path[1..path.len() - 1]
        } else {
            &[][..]
        };
        if interior.iter().any(|&p| g.has_edge(p, x)) {
            continue;
        }
        if path.len() >= 2 && g.has_edge(s, x) {
            if path[1] < x {
                let mut c = path.clone();
                c.push(x);
                out.push(Cycle { vertices: c });
            }
            continue;
        }
        path.push(x);
        extend_chordless(g, s, path, out);
        path.pop();
    }
}

/// Every simple cycle (length ≥ 3) of `g`, once per unordered cycle.
pub fn simple_cycles(g: &SimpleGraph) -> Vec<Cycle> {
    fn go(g: &SimpleGraph, s: usize, path: &mut Vec<usize>, on: &mut [bool], out: &mut Vec<Cycle>) {
        let last = *path.last().unwrap();
        for &x in g.neighbors(last) {
            if x == s && path.len() >= 3 && path[1] < last {
                out.push(Cycle { vertices: path.clone() });
            }
            if x <= s || on[x] {
                continue;
            }
            on[x] = true;
            path.push(x);
            go(g, s, path, on, out);
            path.pop();
            on[x] = false;
        }
    }
    let mut out = Vec::new();
    let mut on = vec![false; g.n()];
    for s in 0..g.n() {
        on[s] = true;
        go(g, s, &mut vec![s], &mut on, &mut out);
        on[s] = false;
    }
    out
}

/// Fundamental cycles of a BFS spanning forest, one per non-tree edge.
pub fn cycle_basis(g: &SimpleGraph) -> Vec<Cycle> {
    let n = g.n();
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    let mut seen = vec![false; n];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = u;
                    depth[w] = depth[u] + 1;
                    queue.push_back(w);
                }
            }
        }
    }
    let mut out = Vec::new();
    for (u, v) in g.edges() {
        if parent[v] == u || parent[u] == v {
            continue;
        }
        // Climb both endpoints to their lowest common ancestor.
        let (mut a, mut b) = (u, v);
        let mut left = vec![a];
        let mut right = vec![b];
        while a != b {
            if depth[a] >= depth[b] {
                a = parent[a];
                left.push(a);
            } else {
                b = parent[b];
                right.push(b);
            }
        }
        right.pop();
        right.reverse();
        // u → … → lca → … → v, then the edge v — u closes it.
        left.extend(right);
        out.push(Cycle::new(left));
    }
    out
}

/// Shrink a cycle containing an oriented path `u → v → w` to a chordless cycle on a
/// subset of its vertices that still contains an oriented path `u' → v → w'`.
pub fn reduce_to_chordless<T: Scalar>(q: &Quiver<T>, c: &Cycle, v: usize) -> Result<Cycle> {
    let g = SimpleGraph::underlying(q);
    c.validate(&g)?;
    let pos = c
        .vertices()
        .iter()
        .position(|&x| x == v)
        .ok_or(Error::NoOrientedPathThroughV(v))?;
    // seq = [v, w, …, u] with u → v → w.
    let mut seq = c.vertices().to_vec();
    seq.rotate_left(pos);
    let l = seq.len();
    let (next, prev) = (seq[1], seq[l - 1]);
    if q.entry(prev, v).is_positive() && q.entry(v, next).is_positive() {
    } else if q.entry(next, v).is_positive() && q.entry(v, prev).is_positive() {
        seq[1..].reverse();
    } else {
        return Err(Error::NoOrientedPathThroughV(v));
    }
    loop {
        let l = seq.len();
        let mut chord = None;
        'search: for i in 1..l {
            for j in i + 2..l {
                if g.has_edge(seq[i], seq[j]) {
                    chord = Some((i, j));
                    break 'search;
                }
            }
        }
        if let Some((i, j)) = chord {
            seq.drain(i + 1..j);
            continue;
        }
        let through_v = (2..l - 1).find(|&j| g.has_edge(v, seq[j]));
        match through_v {
            None => break,
            Some(j) => {
                if q.entry(v, seq[j]).is_positive() {
                    seq.drain(1..j);
                } else {
                    seq.truncate(j + 1);
                }
            }
        }
    }
    Ok(Cycle::new(seq))
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = Quiver<i64>;

    fn oriented_hexagon() -> Q {
        Q::from_i64_arrows(6, &[(0, 1, 3), (1, 2, 1), (2, 3, 1), (3, 4, 1), (4, 5, 1), (5, 0, 1)]).unwrap()
    }

    fn chorded_hexagon() -> Q {
        Q::from_i64_arrows(
            6,
            &[
                (0, 1, 3),
                (2, 1, 1),
                (2, 5, 1),
                (2, 3, 1),
                (3, 4, 1),
                (4, 5, 1),
                (5, 0, 1),
            ],
        )
        .unwrap()
    }

    #[test]
    fn hexagon_cycles() {
        let g = SimpleGraph::underlying(&chorded_hexagon());
        let cs = chordless_cycles(&g);
        assert_eq!(cs, vec![Cycle::new(vec![0, 1, 2, 5]), Cycle::new(vec![2, 3, 4, 5])]);
        for c in &cs {
            let cls = classify_cycle(&chorded_hexagon(), c).unwrap();
            assert_eq!(cls.orientation, Orientation::NonOriented);
            assert!(cls.chordless);
        }
        let hex = Cycle::new(vec![0, 1, 2, 3, 4, 5]);
        let cls = classify_cycle(&oriented_hexagon(), &hex).unwrap();
        assert_eq!(cls.orientation, Orientation::ForwardOriented);
        assert!(cls.chordless);
        let cls = classify_cycle(&oriented_hexagon(), &hex.reversed()).unwrap();
        assert_eq!(cls.orientation, Orientation::BackwardOriented);
        assert!(!classify_cycle(&chorded_hexagon(), &hex).unwrap().chordless);
        assert_eq!(cycle_basis(&g).len(), 2);
    }

    #[test]
    fn complete_graph_on_four() {
        let g = SimpleGraph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let cs = chordless_cycles(&g);
        assert_eq!(cs.len(), 4);
        assert!(cs.iter().all(|c| c.len() == 3));
        assert_eq!(simple_cycles(&g).len(), 7);
    }

    #[test]
    fn trees_have_no_cycles() {
        let g = SimpleGraph::new(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]);
        assert!(chordless_cycles(&g).is_empty());
        assert!(cycle_basis(&g).is_empty());
    }

    #[test]
    fn invalid_cycles() {
        let q = oriented_hexagon();
        assert!(matches!(
            classify_cycle(&q, &Cycle::new(vec![0, 2, 4])),
            Err(Error::InvalidCycle(_))
        ));
        assert!(matches!(
            classify_cycle(&q, &Cycle::new(vec![0, 1])),
            Err(Error::InvalidCycle(_))
        ));
    }

    #[test]
    fn reduce_chord_avoiding_v() {
        // 5-cycle v0→v1→v2→v3→v4→v0 with chord v1—v3.
        let q = Q::from_i64_arrows(5, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (4, 0, 1), (1, 3, 1)]).unwrap();
        let c = Cycle::new(vec![0, 1, 2, 3, 4]);
        let r = reduce_to_chordless(&q, &c, 0).unwrap();
        assert_eq!(r, Cycle::new(vec![0, 1, 3, 4]));
        // Already chordless input passes through.
        let tri = Q::from_i64_arrows(3, &[(0, 1, 1), (1, 2, 1), (2, 0, 1)]).unwrap();
        let t = Cycle::new(vec![0, 1, 2]);
        assert_eq!(reduce_to_chordless(&tri, &t, 1).unwrap(), t);
    }

    #[test]
    fn reduce_chord_through_v() {
        // 5-cycle v0→v1→v2→v3→v4→v0 with chord v0→v2; w = v1 gets dropped.
        let q = Q::from_i64_arrows(5, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (4, 0, 1), (0, 2, 1)]).unwrap();
        let c = Cycle::new(vec![0, 1, 2, 3, 4]);
        let r = reduce_to_chordless(&q, &c, 0).unwrap();
        assert_eq!(r, Cycle::new(vec![0, 2, 3, 4]));
        let g = SimpleGraph::underlying(&q);
        assert!(g.is_chordless(r.vertices()));
        // No oriented path through a source.
        let q2 = Q::from_i64_arrows(3, &[(0, 1, 1), (0, 2, 1), (1, 2, 1)]).unwrap();
        assert_eq!(
            reduce_to_chordless(&q2, &Cycle::new(vec![0, 1, 2]), 0),
            Err(Error::NoOrientedPathThroughV(0))
        );
    }
}
