use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::quiver::Quiver;
use crate::scalar::Scalar;

/// Plain directed graph on `0..n` (no multiplicities).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    succ: Vec<Vec<usize>>,
}

impl Digraph {
    pub fn new(n: usize) -> Self {
        Digraph {
            succ: vec![Vec::new(); n],
        }
    }

    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Self {
        let mut g = Self::new(n);
        for &(u, v) in arcs {
            g.add_arc(u, v);
        }
        g
    }

    /// One arc per arrow pair `u → v` with `b_{uv} > 0`.
    pub fn from_quiver<T: Scalar>(q: &Quiver<T>) -> Self {
        let n = q.n();
        let mut g = Self::new(n);
        for u in 0..n {
            for v in 0..n {
                if q.entry(u, v).is_positive() {
                    g.succ[u].push(v);
                }
            }
        }
        g
    }

    pub fn n(&self) -> usize {
        self.succ.len()
    }

    pub fn add_arc(&mut self, u: usize, v: usize) {
        if !self.succ[u].contains(&v) {
            self.succ[u].push(v);
        }
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.succ[u].contains(&v)
    }

    pub fn successors(&self, u: usize) -> &[usize] {
        &self.succ[u]
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = (0..self.n())
            .flat_map(|u| self.succ[u].iter().map(move |&v| (u, v)))
            .collect();
        out.sort_unstable();
        out
    }

    /// Kahn's algorithm taking the least available source each step. On failure
    /// returns a directed cycle `w₀ → w₁ → ⋯ → w₀` (listed without repeating `w₀`).
    pub fn topological_sort(&self) -> Result<Vec<usize>, Vec<usize>> {
        let n = self.n();
        let mut indeg = vec![0usize; n];
        for u in 0..n {
            for &v in &self.succ[u] {
                indeg[v] += 1;
            }
        }
        let mut heap: BinaryHeap<Reverse<usize>> = (0..n).filter(|&v| indeg[v] == 0).map(Reverse).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(Reverse(u)) = heap.pop() {
            order.push(u);
            for &v in &self.succ[u] {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    heap.push(Reverse(v));
                }
            }
        }
        if order.len() == n {
            return Ok(order);
        }
        // Every leftover vertex has a leftover predecessor; walk backwards until a repeat.
        let left: Vec<bool> = (0..n).map(|v| indeg[v] > 0).collect();
        let mut pred = vec![usize::MAX; n];
        for u in 0..n {
            if left[u] {
                for &v in &self.succ[u] {
                    if left[v] && pred[v] == usize::MAX {
                        pred[v] = u;
                    }
                }
            }
        }
        let start = (0..n).find(|&v| left[v]).expect("some vertex is left over");
        let mut seen_at = vec![usize::MAX; n];
        let mut walk = Vec::new();
        let mut cur = start;
        while seen_at[cur] == usize::MAX {
            seen_at[cur] = walk.len();
            walk.push(cur);
            cur = pred[cur];
        }
        let mut cycle = walk[seen_at[cur]..].to_vec();
        cycle.reverse();
        Err(cycle)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_sort().is_ok()
    }

    /// Induced subgraph on `vs`; vertex `i` of the result is `vs[i]`.
    pub fn induced(&self, vs: &[usize]) -> Digraph {
        let mut pos = vec![usize::MAX; self.n()];
        for (i, &v) in vs.iter().enumerate() {
            pos[v] = i;
        }
        let mut g = Digraph::new(vs.len());
        for (i, &u) in vs.iter().enumerate() {
            for &v in &self.succ[u] {
                if pos[v] != usize::MAX {
                    g.succ[i].push(pos[v]);
                }
            }
        }
        g
    }
}
