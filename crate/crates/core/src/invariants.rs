//! Alexander polynomial, Markov invariant, cosquare characteristic polynomial,
//! determinant and row-GCD multiset.

use crate::coq::{unipotent_companion, Coq, UnipotentCompanion};
use crate::error::{Error, Result};
use crate::graph::{Cycle, Digraph, SimpleGraph};
use crate::matrix::Matrix;
use crate::polynomial::{poly_determinant, IntPolynomial};
use crate::quiver::Quiver;
use crate::scalar::Scalar;

/// `Δ(t) = det(tU − Uᵀ)`.
pub fn alexander<T: Scalar>(u: &UnipotentCompanion<T>) -> IntPolynomial<T> {
    let m = u.matrix();
    let n = m.rows();
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| IntPolynomial::linear(m[(i, j)].clone(), -m[(j, i)].clone()))
                .collect()
        })
        .collect();
    poly_determinant(rows).expect("square matrix over Z[t] with exact Bareiss divisions")
}

/// Alexander polynomial of a COQ, from its canonical tear.
pub fn alexander_coq<T: Scalar>(c: &Coq<T>) -> IntPolynomial<T> {
    let u = unipotent_companion(c.quiver(), c.order().as_slice()).expect("COQ order is valid");
    alexander(&u)
}

/// `n + [t^{n−1}] Δ`.
pub fn markov_from_alexander<T: Scalar>(delta: &IntPolynomial<T>, n: usize) -> T {
    if n == 0 {
        return T::zero();
    }
    T::from_usize(n).expect("vertex count fits") + delta.coeff(n - 1)
}

pub fn markov<T: Scalar>(c: &Coq<T>) -> T {
    markov_from_alexander(&alexander_coq(c), c.n())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkovBreakdown<T> {
    /// `Σ b²` over arrows.
    pub square_sum: T,
    /// Directed cycles with exactly one backward step, with their weight `Π|b|`.
    pub cycle_terms: Vec<(Cycle, T)>,
    pub total: T,
}

/// Markov invariant of an acyclic quiver from `Σ b² + Σ wt(𝒪)`, summing over
/// traversals of cycles in `K_Q` with exactly one step against the arrows.
/// `order` must be a linear extension of the quiver.
pub fn markov_combinatorial<T: Scalar>(q: &Quiver<T>, order: &[usize]) -> Result<MarkovBreakdown<T>> {
    Digraph::from_quiver(q).topological_sort().map_err(Error::NotAcyclic)?;
    crate::coq::check_permutation(order, q.n())?;
    let mut pos = vec![0; q.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    for (u, v, _) in q.arrows() {
        if pos[u] > pos[v] {
            return Err(Error::OrderIncompatible(u, v));
        }
    }
    let square_sum = q.weight_sq();
    let g = SimpleGraph::underlying(q);
    let mut cycle_terms = Vec::new();
    let mut path = Vec::new();
    let mut on = vec![false; q.n()];
    for s in 0..q.n() {
        path.push(s);
        on[s] = true;
        one_backward_cycles(q, &g, s, &mut path, &mut on, 0, T::one(), &mut cycle_terms);
        on[s] = false;
        path.pop();
    }
    let total = cycle_terms
        .iter()
        .fold(square_sum.clone(), |acc, (_, w)| acc + w.clone());
    Ok(MarkovBreakdown {
        square_sum,
        cycle_terms,
        total,
    })
}

#[allow(clippy::too_many_arguments)]
fn one_backward_cycles<T: Scalar>(
    q: &Quiver<T>,
    g: &SimpleGraph,
    s: usize,
    path: &mut Vec<usize>,
    on: &mut [bool],
    back: usize,
    weight: T,
    out: &mut Vec<(Cycle, T)>,
) {
    let last = *path.last().unwrap();
    for &x in g.neighbors(last) {
        let b = q.entry(last, x);
        let nb = back + usize::from(b.is_negative());
        if nb > 1 {
            continue;
        }
        let w = weight.clone() * b.abs();
        if x == s {
            if path.len() >= 3 && nb == 1 {
                out.push((Cycle::new(path.clone()), w));
            }
            continue;
        }
        if x < s || on[x] {
            continue;
        }
        on[x] = true;
        path.push(x);
        one_backward_cycles(q, g, s, path, on, nb, w, out);
        path.pop();
        on[x] = false;
    }
}

/// Characteristic polynomial `det(tI − U^{−T}U)` of the cosquare.
pub fn cosquare_charpoly<T: Scalar>(u: &UnipotentCompanion<T>) -> IntPolynomial<T> {
    let m = u.matrix();
    let inv_t = m
        .upper_unitriangular_inverse()
        .expect("companion is unipotent")
        .transpose();
    let w = inv_t.mul(m).expect("square");
    charpoly(&w)
}

pub fn charpoly<T: Scalar>(w: &Matrix<T>) -> IntPolynomial<T> {
    let n = w.rows();
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = -w[(i, j)].clone();
                    if i == j {
                        IntPolynomial::linear(T::one(), c)
                    } else {
                        IntPolynomial::constant(c)
                    }
                })
                .collect()
        })
        .collect();
    poly_determinant(rows).expect("square")
}

pub fn det_b<T: Scalar>(q: &Quiver<T>) -> T {
    q.b().determinant().expect("B is square")
}

/// Row GCDs of `B` (0 for a zero row), sorted.
pub fn gcd_multiset<T: Scalar>(q: &Quiver<T>) -> Vec<T> {
    let b = q.b();
    let mut out: Vec<T> = (0..b.rows())
        .map(|i| b.row(i).iter().fold(T::zero(), |g, x| g.gcd(x)))
        .collect();
    out.sort();
    out
}

/// Everything the CLI and service report for a COQ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantSummary<T> {
    pub alexander: IntPolynomial<T>,
    pub markov: T,
    pub det: T,
    pub gcds: Vec<T>,
    pub cosquare_charpoly: IntPolynomial<T>,
}

pub fn summarize<T: Scalar>(c: &Coq<T>) -> InvariantSummary<T> {
    let u = unipotent_companion(c.quiver(), c.order().as_slice()).expect("COQ order is valid");
    let alexander = alexander(&u);
    InvariantSummary {
        markov: markov_from_alexander(&alexander, c.n()),
        alexander,
        det: det_b(c.quiver()),
        gcds: gcd_multiset(c.quiver()),
        cosquare_charpoly: cosquare_charpoly(&u),
    }
}

/// Whether `c_k = (−1)ⁿ c_{n−k}` for all `k`.
pub fn is_palindromic<T: Scalar>(p: &IntPolynomial<T>, n: usize) -> bool {
    (0..=n).all(|k| {
        let a = p.coeff(k);
        let b = p.coeff(n - k);
        if n % 2 == 0 {
            a == b
        } else {
            a == -b
        }
    })
}

/// `(−1)ⁿ tⁿ p(1/t)`.
pub fn reciprocal_signed<T: Scalar>(p: &IntPolynomial<T>, n: usize) -> IntPolynomial<T> {
    let r = p.reciprocal(n);
    if n % 2 == 0 {
        r
    } else {
        -&r
    }
}
