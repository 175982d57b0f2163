use super::Digraph;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::seed::{Seed, VertexColor};

/// The reoriented quiver `L_v(Q_t)`, remembering which arcs carry the label `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LGraph {
    pub vertex: usize,
    pub plain: Vec<(usize, usize)>,
    pub labeled: Vec<(usize, usize)>,
    digraph: Digraph,
}

impl LGraph {
    pub fn digraph(&self) -> &Digraph {
        &self.digraph
    }

    /// Least-index topological order (always succeeds on a validated graph).
    pub fn linear_extension(&self) -> Vec<usize> {
        self.digraph
            .topological_sort()
            .expect("LGraph is validated acyclic on construction")
    }
}

pub fn build_l_graph<T: Scalar>(s: &Seed<T>, v: usize) -> Result<LGraph> {
    let q = s.quiver();
    let n = q.n();
    let colors = s.colors()?;
    let wanted = match colors[v] {
        VertexColor::Red => VertexColor::Green,
        VertexColor::Green => VertexColor::Red,
    };
    let mut labeled = Vec::new();
    for (i, _, k) in q.two_paths_through(v) {
        if colors[i] == wanted && colors[k] == wanted {
            labeled.push((k, i));
        }
    }
    let mut plain = Vec::new();
    for (a, b, _) in q.arrows() {
        if colors[a] == VertexColor::Red && colors[b] == VertexColor::Green {
            plain.push((b, a));
        } else {
            plain.push((a, b));
        }
    }
    labeled.sort_unstable();
    plain.sort_unstable();
    let mut digraph = Digraph::new(n);
    for &(a, b) in plain.iter().chain(&labeled) {
        digraph.add_arc(a, b);
    }
    if let Err(cycle) = digraph.topological_sort() {
        return Err(Error::LGraphCyclic(v, cycle));
    }
    Ok(LGraph {
        vertex: v,
        plain,
        labeled,
        digraph,
    })
}
