//! Quivers as skew-symmetric exchange matrices with frozen flags.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// The ε of a mutation matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// Vertex `i` has default label `v{i+1}`. Vertex identity is positional; labels
/// travel alongside for display only.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Quiver<T> {
    b: Matrix<T>,
    frozen: Vec<bool>,
    labels: Vec<String>,
}

pub(crate) fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("v{i}")).collect()
}

impl<T: Scalar> Quiver<T> {
    /// Vertices and arrow endpoints are 0-based. `(u, v, m)` means `m` arrows `u → v`.
    pub fn from_arrows(n: usize, frozen: &[usize], arrows: &[(usize, usize, T)]) -> Result<Self> {
        let mut is_frozen = vec![false; n];
        for &f in frozen {
            *is_frozen.get_mut(f).ok_or(Error::UnknownVertex(f))? = true;
        }
        let mut b: Matrix<T> = Matrix::zeros(n, n);
        for (u, v, m) in arrows {
            let (u, v) = (*u, *v);
            if u >= n {
                return Err(Error::UnknownVertex(u));
            }
            if v >= n {
                return Err(Error::UnknownVertex(v));
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if !m.is_positive() {
                return Err(Error::BadMultiplicity(u, v));
            }
            if is_frozen[u] && is_frozen[v] {
                return Err(Error::FrozenFrozenArrow(u, v));
            }
            if !b[(u, v)].is_zero() {
                return Err(Error::DuplicateArrowPair(u.min(v), u.max(v)));
            }
            b[(u, v)] = m.clone();
            b[(v, u)] = -m.clone();
        }
        Ok(Quiver {
            b,
            frozen: is_frozen,
            labels: default_labels(n),
        })
    }

    /// Convenience constructor for literals.
    pub fn from_i64_arrows(n: usize, arrows: &[(usize, usize, i64)]) -> Result<Self> {
        let arrows: Vec<_> = arrows.iter().map(|&(u, v, m)| (u, v, T::from_i64_exact(m))).collect();
        Self::from_arrows(n, &[], &arrows)
    }

    pub fn from_b(b: Matrix<T>, frozen: Vec<bool>) -> Result<Self> {
        if !b.is_skew_symmetric() {
            return Err(Error::InvariantViolation("B is not skew-symmetric".into()));
        }
        if frozen.len() != b.rows() {
            return Err(Error::Dimension("frozen flags do not match B".into()));
        }
        let n = b.rows();
        for u in 0..n {
            for v in 0..n {
                if frozen[u] && frozen[v] && !b[(u, v)].is_zero() {
                    return Err(Error::FrozenFrozenArrow(u.min(v), u.max(v)));
                }
            }
        }
        Ok(Quiver {
            labels: default_labels(n),
            b,
            frozen,
        })
    }

    pub fn arrowless(n: usize) -> Self {
        Quiver {
            b: Matrix::zeros(n, n),
            frozen: vec![false; n],
            labels: default_labels(n),
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n() {
            return Err(Error::Dimension("label count does not match vertex count".into()));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.frozen.len()
    }

    pub fn b(&self) -> &Matrix<T> {
        &self.b
    }

    pub fn entry(&self, u: usize, v: usize) -> &T {
        &self.b[(u, v)]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn is_frozen(&self, v: usize) -> bool {
        self.frozen[v]
    }

    pub fn frozen_flags(&self) -> &[bool] {
        &self.frozen
    }

    pub fn frozen_vertices(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.frozen[v]).collect()
    }

    pub fn mutable_vertices(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| !self.frozen[v]).collect()
    }

    pub fn has_frozen(&self) -> bool {
        self.frozen.iter().any(|&f| f)
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n() {
            Err(Error::UnknownVertex(v))
        } else {
            Ok(())
        }
    }

    pub fn check_mutable(&self, v: usize) -> Result<()> {
        self.check_vertex(v)?;
        if self.frozen[v] {
            Err(Error::FrozenVertex(v))
        } else {
            Ok(())
        }
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        !self.b[(u, v)].is_zero()
    }

    /// `Out(v)`: heads of arrows leaving `v`.
    pub fn out_set(&self, v: usize) -> Vec<usize> {
        (0..self.n()).filter(|&w| self.b[(v, w)].is_positive()).collect()
    }

    /// `In(v)`: tails of arrows entering `v`.
    pub fn in_set(&self, v: usize) -> Vec<usize> {
        (0..self.n()).filter(|&u| self.b[(u, v)].is_positive()).collect()
    }

    /// Arrows `(u, v, m)` with `m > 0`, in row-major order.
    pub fn arrows(&self) -> Vec<(usize, usize, T)> {
        let n = self.n();
        let mut out = Vec::new();
        for u in 0..n {
            for v in 0..n {
                if self.b[(u, v)].is_positive() {
                    out.push((u, v, self.b[(u, v)].clone()));
                }
            }
        }
        out
    }

    /// Sum of squared multiplicities over all arrows.
    pub fn weight_sq(&self) -> T {
        self.arrows()
            .into_iter()
            .fold(T::zero(), |acc, (_, _, m)| acc + m.clone() * m)
    }

    pub fn max_abs_entry(&self) -> T {
        let n = self.n();
        let mut best = T::zero();
        for u in 0..n {
            for v in u + 1..n {
                let a = self.b[(u, v)].abs();
                if a > best {
                    best = a;
                }
            }
        }
        best
    }

    /// Oriented 2-paths `(u, v, w)` with `u → v → w`.
    pub fn two_paths_through(&self, v: usize) -> Vec<(usize, usize, usize)> {
        let ins = self.in_set(v);
        let outs = self.out_set(v);
        let mut out = Vec::with_capacity(ins.len() * outs.len());
        for &u in &ins {
            for &w in &outs {
                out.push((u, v, w));
            }
        }
        out
    }

    /// Mutation at a mutable vertex by the direct rule.
    pub fn mutate(&self, v: usize) -> Result<Self> {
        self.check_mutable(v)?;
        let n = self.n();
        let b = &self.b;
        let mut nb = b.clone();
        for u in 0..n {
            for w in 0..n {
                if u == v || w == v {
                    nb[(u, w)] = -b[(u, w)].clone();
                } else if self.frozen[u] && self.frozen[w] {
                    nb[(u, w)] = T::zero();
                } else {
                    let plus = b[(u, v)].pos_part() * b[(v, w)].pos_part();
                    let minus = b[(w, v)].pos_part() * b[(v, u)].pos_part();
                    if !plus.is_zero() || !minus.is_zero() {
                        nb[(u, w)] = b[(u, w)].clone() + plus - minus;
                    }
                }
            }
        }
        Ok(Quiver {
            b: nb,
            frozen: self.frozen.clone(),
            labels: self.labels.clone(),
        })
    }

    pub fn mutate_path(&self, path: &[usize]) -> Result<Self> {
        let mut q = self.clone();
        for &v in path {
            q = q.mutate(v)?;
        }
        Ok(q)
    }

    /// Principal framing: vertex `n + i` is the frozen copy of `i` with one arrow `(n+i) → i`.
    pub fn frame(&self) -> Result<Self> {
        if self.has_frozen() {
            return Err(Error::AlreadyFramed);
        }
        let n = self.n();
        let mut b = Matrix::zeros(2 * n, 2 * n);
        for u in 0..n {
            for v in 0..n {
                b[(u, v)] = self.b[(u, v)].clone();
            }
            b[(n + u, u)] = T::one();
            b[(u, n + u)] = -T::one();
        }
        let mut labels = self.labels.clone();
        labels.extend(self.labels.iter().map(|l| format!("{l}'")));
        Ok(Quiver {
            b,
            frozen: (0..2 * n).map(|i| i >= n).collect(),
            labels,
        })
    }

    /// Induced subquiver; vertex `i` of the result is `vertices[i]`.
    pub fn subquiver(&self, vertices: &[usize]) -> Result<Self> {
        for &v in vertices {
            self.check_vertex(v)?;
        }
        Ok(Quiver {
            b: self.b.reindex(vertices),
            frozen: vertices.iter().map(|&v| self.frozen[v]).collect(),
            labels: vertices.iter().map(|&v| self.labels[v].clone()).collect(),
        })
    }

    pub fn mutable_part(&self) -> Self {
        self.subquiver(&self.mutable_vertices())
            .expect("mutable vertices are in range")
    }

    /// `M_Q(v, ε) = J + E`: `J` is the identity with `-1` at `(v, v)`, and `E` is
    /// zero except in column `v`, where `e_{qv} = max(0, -ε·b_{qv})`.
    pub fn mutation_matrix(&self, v: usize, eps: Sign) -> Result<Matrix<T>> {
        self.check_mutable(v)?;
        let n = self.n();
        let mut m = Matrix::identity(n);
        m[(v, v)] = -T::one();
        for q in 0..n {
            if q == v {
                continue;
            }
            let e = match eps {
                Sign::Plus => (-self.b[(q, v)].clone()).pos_part(),
                Sign::Minus => self.b[(q, v)].pos_part(),
            };
            m[(q, v)] = e;
        }
        Ok(m)
    }

    /// Same quiver with vertices renamed: vertex `i` becomes `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.n();
        let mut inv = vec![0; n];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        Quiver {
            b: self.b.reindex(&inv),
            frozen: inv.iter().map(|&i| self.frozen[i]).collect(),
            labels: default_labels(n),
        }
    }

    /// Drop labels back to the positional defaults.
    pub fn unlabeled(&self) -> Self {
        Quiver {
            b: self.b.clone(),
            frozen: self.frozen.clone(),
            labels: default_labels(self.n()),
        }
    }
}

impl<T: fmt::Debug> fmt::Debug for Quiver<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Quiver")
            .field("labels", &self.labels)
            .field("frozen", &self.frozen)
            .field("b", &self.b)
            .finish()
    }
}
