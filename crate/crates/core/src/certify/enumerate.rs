//! Acyclic quivers with bounded `Σ b²`, up to isomorphism.

use std::collections::BTreeSet;

use canonical_form::Canonize;

use super::canon::{canonical_key, CanonKey};
use crate::error::{Error, Result};
use crate::graph::Digraph;
use crate::quiver::Quiver;
use crate::scalar::Scalar;

/// Undirected weighted graph as a symmetric weight matrix (0 = no edge).
type GraphKey = CanonKey<u64>;

fn graph_key(n: usize, edges: &[(usize, usize, u64)]) -> GraphKey {
    let mut entries = vec![0u64; n * n];
    for &(u, v, w) in edges {
        entries[u * n + v] = w;
        entries[v * n + u] = w;
    }
    GraphKey::from_entries(n, entries).canonical()
}

fn key_edges(k: &GraphKey) -> Vec<(usize, usize, u64)> {
    let n = k.n();
    let e = k.entries();
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if e[u * n + v] != 0 {
                out.push((u, v, e[u * n + v]));
            }
        }
    }
    out
}

/// Unlabelled trees on `n` vertices, as edge lists.
pub fn unlabeled_trees(n: usize) -> Vec<Vec<(usize, usize)>> {
    if n == 0 {
        return Vec::new();
    }
    let mut level: BTreeSet<GraphKey> = BTreeSet::from([graph_key(1, &[])]);
    for k in 1..n {
        let mut next = BTreeSet::new();
        for t in &level {
            let edges = key_edges(t);
            for attach in 0..k {
                let mut e = edges.clone();
                e.push((attach, k, 1));
                next.insert(graph_key(k + 1, &e));
            }
        }
        level = next;
    }
    level
        .iter()
        .map(|k| key_edges(k).into_iter().map(|(u, v, _)| (u, v)).collect())
        .collect()
}

/// Simple graphs on `n` vertices with at most `max_edges` edges (connected only, or
/// all), grouped by edge count.
fn simple_graphs(n: usize, max_edges: usize, connected: bool, cap: usize) -> Result<Vec<GraphKey>> {
    let mut start: BTreeSet<GraphKey> = BTreeSet::new();
    if connected {
        if n == 0 || max_edges + 1 < n {
            return Ok(Vec::new());
        }
        for t in unlabeled_trees(n) {
            let e: Vec<_> = t.into_iter().map(|(u, v)| (u, v, 1)).collect();
            start.insert(graph_key(n, &e));
        }
    } else {
        start.insert(graph_key(n, &[]));
    }
    let mut all: Vec<GraphKey> = start.iter().cloned().collect();
    let mut level = start;
    let max_edges = max_edges.min(n * n.saturating_sub(1) / 2);
    let first = if connected { n - 1 } else { 0 };
    for _ in first..max_edges {
        let mut next = BTreeSet::new();
        for g in &level {
            let e = g.entries();
            for u in 0..n {
                for v in u + 1..n {
                    if e[u * n + v] == 0 {
                        let mut edges = key_edges(g);
                        edges.push((u, v, 1));
                        next.insert(graph_key(n, &edges));
                    }
                }
            }
        }
        if all.len() + next.len() > cap {
            return Err(Error::BudgetExceeded(format!(
                "more than {cap} underlying graphs on {n} vertices"
            )));
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    Ok(all)
}

fn weightings(edges: &[(usize, usize)], spare: u64, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if acc.len() == edges.len() {
        out.push(acc.clone());
        return;
    }
    let mut w = 1u64;
    while w * w - 1 <= spare {
        acc.push(w);
        weightings(edges, spare - (w * w - 1), acc, out);
        acc.pop();
        w += 1;
    }
}

fn is_forest(n: usize, edges: &[(usize, usize, u64)]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for &(u, v, _) in edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a == b {
            return false;
        }
        parent[a] = b;
    }
    true
}

/// Acyclic quivers on `n` vertices with `Σ b² ≤ budget_sq`, one per isomorphism
/// class. Forests get a single orientation (all orientations of a tree are related
/// by sink and source mutations); other underlying graphs get every acyclic
/// orientation. Fails with `BudgetExceeded` past `cap` outputs.
pub fn enumerate_acyclic<T: Scalar>(n: usize, budget_sq: u64, connected: bool, cap: usize) -> Result<Vec<Quiver<T>>> {
    let max_edges = usize::try_from(budget_sq).unwrap_or(usize::MAX);
    let graphs = simple_graphs(n, max_edges, connected, cap)?;
    let mut weighted: BTreeSet<GraphKey> = BTreeSet::new();
    for g in &graphs {
        let edges: Vec<(usize, usize)> = key_edges(g).into_iter().map(|(u, v, _)| (u, v)).collect();
        let m = edges.len() as u64;
        if m > budget_sq {
            continue;
        }
        let mut ws = Vec::new();
        weightings(&edges, budget_sq - m, &mut Vec::new(), &mut ws);
        for w in ws {
            let e: Vec<_> = edges.iter().zip(&w).map(|(&(u, v), &x)| (u, v, x)).collect();
            weighted.insert(graph_key(n, &e));
            if weighted.len() > cap {
                return Err(Error::BudgetExceeded(format!(
                    "more than {cap} weighted graphs on {n} vertices"
                )));
            }
        }
    }
    let mut out: BTreeSet<CanonKey<T>> = BTreeSet::new();
    for g in &weighted {
        let edges = key_edges(g);
        let arrows = |mask: u64| -> Vec<(usize, usize, T)> {
            edges
                .iter()
                .enumerate()
                .map(|(i, &(u, v, w))| {
                    let m = T::from_u64(w).expect("weight fits the scalar");
                    if mask >> i & 1 == 0 {
                        (u, v, m)
                    } else {
                        (v, u, m)
                    }
                })
                .collect()
        };
        let masks: Vec<u64> = if is_forest(n, &edges) {
            vec![0]
        } else {
            if edges.len() > 24 {
                return Err(Error::BudgetExceeded(format!(
                    "{} edges is too many orientations to list",
                    edges.len()
                )));
            }
            (0..1u64 << edges.len()).collect()
        };
        for mask in masks {
            let q = Quiver::from_arrows(n, &[], &arrows(mask)).expect("simple weighted graph");
            if Digraph::from_quiver(&q).is_acyclic() {
                out.insert(canonical_key(&q));
                if out.len() > cap {
                    return Err(Error::BudgetExceeded(format!(
                        "more than {cap} acyclic quivers on {n} vertices"
                    )));
                }
            }
        }
    }
    Ok(out.iter().map(CanonKey::to_quiver).collect())
}
