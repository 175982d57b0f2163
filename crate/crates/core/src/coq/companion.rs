use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::check_permutation;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::quiver::{Quiver, Sign};
use crate::scalar::Scalar;

/// Unipotent upper-triangular `U` with `Uᵀ − U = B`, rows and columns indexed by
/// the positions of `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnipotentCompanion<T> {
    order: Vec<usize>,
    u: Matrix<T>,
}

impl<T: Scalar> UnipotentCompanion<T> {
    /// Wrap an existing matrix (order coordinates), checking it is unipotent upper triangular.
    pub fn from_matrix(order: Vec<usize>, u: Matrix<T>) -> Result<Self> {
        check_permutation(&order, u.rows())?;
        if !u.is_upper_unitriangular() {
            return Err(Error::NotCompanion("not unipotent upper triangular".into()));
        }
        Ok(UnipotentCompanion { order, u })
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.u
    }

    pub fn n(&self) -> usize {
        self.order.len()
    }

    /// `u_{vw}` for vertices `v`, `w`.
    pub fn entry(&self, v: usize, w: usize) -> &T {
        let pv = self.order.iter().position(|&x| x == v).expect("vertex in order");
        let pw = self.order.iter().position(|&x| x == w).expect("vertex in order");
        &self.u[(pv, pw)]
    }

    /// The same matrix with rows and columns indexed by vertex.
    pub fn vertex_matrix(&self) -> Matrix<T> {
        self.u.unindex(&self.order)
    }

    /// Whether this is the companion of `q` in its order.
    pub fn is_companion_of(&self, q: &Quiver<T>) -> bool {
        q.n() == self.n()
            && self
                .u
                .transpose()
                .sub(&self.u)
                .is_ok_and(|d| d == q.b().reindex(&self.order))
    }
}

pub fn unipotent_companion<T: Scalar>(q: &Quiver<T>, order: &[usize]) -> Result<UnipotentCompanion<T>> {
    if q.has_frozen() {
        return Err(Error::BadOrder("quiver has frozen vertices".into()));
    }
    check_permutation(order, q.n())?;
    let b = q.b().reindex(order);
    let n = order.len();
    let u = Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Less => -b[(i, j)].clone(),
        std::cmp::Ordering::Equal => T::one(),
        std::cmp::Ordering::Greater => T::zero(),
    });
    Ok(UnipotentCompanion {
        order: order.to_vec(),
        u,
    })
}

/// `M_Q(v, ε)·U·M_Q(v, ε)ᵀ`, reordered to be upper triangular. Requires every
/// vertex of `In(v)` before `v` when `ε = −1`, and `v` before every vertex of
/// `Out(v)` when `ε = +1`.
pub fn companion_after_mutation<T: Scalar>(
    u: &UnipotentCompanion<T>,
    q: &Quiver<T>,
    v: usize,
    eps: Sign,
) -> Result<UnipotentCompanion<T>> {
    if !u.is_companion_of(q) {
        return Err(Error::NotCompanion("U is not the companion of Q in its order".into()));
    }
    q.check_mutable(v)?;
    let order = u.order();
    let pos = {
        let mut p = vec![0; order.len()];
        for (i, &x) in order.iter().enumerate() {
            p[x] = i;
        }
        p
    };
    match eps {
        Sign::Minus => {
            if let Some(&w) = q.in_set(v).iter().find(|&&w| pos[w] > pos[v]) {
                return Err(Error::OrderPreconditionViolated(format!(
                    "v{} is in In(v{}) but comes after it",
                    w + 1,
                    v + 1
                )));
            }
        }
        Sign::Plus => {
            if let Some(&w) = q.out_set(v).iter().find(|&&w| pos[w] < pos[v]) {
                return Err(Error::OrderPreconditionViolated(format!(
                    "v{} is in Out(v{}) but comes before it",
                    w + 1,
                    v + 1
                )));
            }
        }
    }
    let m = q.mutation_matrix(v, eps)?.reindex(order);
    let moved = u.matrix().congruence(&m)?;
    // Sort positions so every nonzero entry lands above the diagonal, keeping the
    // old relative order wherever the entries allow it.
    let n = order.len();
    let mut indeg = vec![0usize; n];
    for i in 0..n {
        for j in 0..n {
            if i != j && !moved[(i, j)].is_zero() {
                indeg[j] += 1;
            }
        }
    }
    let mut heap: BinaryHeap<Reverse<usize>> = (0..n).filter(|&i| indeg[i] == 0).map(Reverse).collect();
    let mut perm = Vec::with_capacity(n);
    while let Some(Reverse(i)) = heap.pop() {
        perm.push(i);
        for j in 0..n {
            if i != j && !moved[(i, j)].is_zero() {
                indeg[j] -= 1;
                if indeg[j] == 0 {
                    heap.push(Reverse(j));
                }
            }
        }
    }
    if perm.len() != n {
        return Err(Error::InvariantViolation(
            "congruence result cannot be made upper triangular".into(),
        ));
    }
    let new_u = moved.reindex(&perm);
    let new_order: Vec<usize> = perm.iter().map(|&i| order[i]).collect();
    let out = UnipotentCompanion::from_matrix(new_order, new_u)
        .map_err(|_| Error::InvariantViolation("congruence result is not unipotent".into()))?;
    let mutated = q.mutate(v)?;
    if !out.is_companion_of(&mutated) {
        return Err(Error::InvariantViolation(
            "congruence result is not a companion of the mutated quiver".into(),
        ));
    }
    Ok(out)
}

/// `A = U + Uᵀ`, indexed by vertex.
pub fn quasi_cartan_from_companion<T: Scalar>(u: &UnipotentCompanion<T>) -> Matrix<T> {
    let m = u.matrix();
    m.add(&m.transpose()).expect("square matrix").unindex(u.order())
}

/// Whether the two companions agree entry by entry as functions of vertex pairs.
pub fn entrywise_companion_match<T: Scalar>(q: &Quiver<T>, o1: &[usize], o2: &[usize]) -> Result<bool> {
    let u1 = unipotent_companion(q, o1)?;
    let u2 = unipotent_companion(q, o2)?;
    Ok(u1.vertex_matrix() == u2.vertex_matrix())
}
