//! Seeds: a quiver reached from an acyclic initial quiver, tracked together with
//! its C-matrix, quasi-Cartan companion `A` and unipotent `U = (A - B)/2`.

use crate::error::{Error, Result};
use crate::graph::Digraph;
use crate::matrix::Matrix;
use crate::quiver::{Quiver, Sign};
use crate::scalar::{sc, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexColor {
    Green,
    Red,
}

impl VertexColor {
    /// The `ε` used for mutation at a vertex of this color.
    pub fn sign(self) -> Sign {
        match self {
            VertexColor::Green => Sign::Plus,
            VertexColor::Red => Sign::Minus,
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Seed<T> {
    initial: Quiver<T>,
    path: Vec<usize>,
    quiver: Quiver<T>,
    c: Matrix<T>,
    a: Matrix<T>,
    u: Matrix<T>,
}

impl<T: Scalar> std::fmt::Debug for Seed<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Seed")
            .field("initial", &self.initial)
            .field("path", &self.path)
            .field("quiver", &self.quiver)
            .field("c", &self.c)
            .finish()
    }
}

/// `A₀`: diagonal 2, off-diagonal `-|b_{uv}|`.
pub fn initial_companion<T: Scalar>(q: &Quiver<T>) -> Matrix<T> {
    Matrix::from_fn(q.n(), q.n(), |i, j| if i == j { sc(2) } else { -q.entry(i, j).abs() })
}

/// `(A - B)/2`, failing if any entry is odd.
pub fn half_difference<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<Matrix<T>> {
    let d = a.sub(b)?;
    let two: T = sc(2);
    let mut out = Matrix::zeros(d.rows(), d.cols());
    for i in 0..d.rows() {
        for j in 0..d.cols() {
            let (q, r) = d[(i, j)].div_rem(&two);
            if !r.is_zero() {
                return Err(Error::InvariantViolation(format!(
                    "(A - B)/2 is not integral at (v{}, v{})",
                    i + 1,
                    j + 1
                )));
            }
            out[(i, j)] = q;
        }
    }
    Ok(out)
}

impl<T: Scalar> Seed<T> {
    pub fn initial(q0: &Quiver<T>) -> Result<Self> {
        if let Some(&f) = q0.frozen_vertices().first() {
            return Err(Error::FrozenVertex(f));
        }
        Digraph::from_quiver(q0).topological_sort().map_err(Error::NotAcyclic)?;
        let a = initial_companion(q0);
        let u = half_difference(&a, q0.b())?;
        Ok(Seed {
            initial: q0.clone(),
            path: Vec::new(),
            quiver: q0.clone(),
            c: Matrix::identity(q0.n()),
            a,
            u,
        })
    }

    pub fn replay(q0: &Quiver<T>, path: &[usize]) -> Result<Self> {
        let mut s = Self::initial(q0)?;
        for &v in path {
            s = s.mutate(v)?;
        }
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.quiver.n()
    }

    pub fn initial_quiver(&self) -> &Quiver<T> {
        &self.initial
    }

    pub fn path(&self) -> &[usize] {
        &self.path
    }

    pub fn quiver(&self) -> &Quiver<T> {
        &self.quiver
    }

    pub fn b(&self) -> &Matrix<T> {
        self.quiver.b()
    }

    pub fn c(&self) -> &Matrix<T> {
        &self.c
    }

    pub fn a(&self) -> &Matrix<T> {
        &self.a
    }

    pub fn u(&self) -> &Matrix<T> {
        &self.u
    }

    pub fn color(&self, v: usize) -> Result<VertexColor> {
        self.quiver.check_mutable(v)?;
        let col: Vec<&T> = self.c.column(v).collect();
        if col.iter().all(|x| !x.is_negative()) && col.iter().any(|x| x.is_positive()) {
            Ok(VertexColor::Green)
        } else if col.iter().all(|x| !x.is_positive()) && col.iter().any(|x| x.is_negative()) {
            Ok(VertexColor::Red)
        } else {
            Err(Error::SignIncoherent(v))
        }
    }

    pub fn colors(&self) -> Result<Vec<VertexColor>> {
        (0..self.n()).map(|v| self.color(v)).collect()
    }

    pub fn mutate(&self, v: usize) -> Result<Self> {
        self.quiver.check_mutable(v)?;
        let eps = self.color(v)?.sign();
        let m = self.quiver.mutation_matrix(v, eps)?;
        let quiver = self.quiver.mutate(v)?;
        #[cfg(debug_assertions)]
        for e in [Sign::Plus, Sign::Minus] {
            let me = self.quiver.mutation_matrix(v, e)?;
            if &self.quiver.b().congruence(&me)? != quiver.b() {
                return Err(Error::InvariantViolation(format!(
                    "M(v{}, {:?}) congruence disagrees with direct mutation",
                    v + 1,
                    e
                )));
            }
        }
        let c = self.c.mul(&m.transpose())?;
        let a = self.a.congruence(&m)?;
        let u = self.u.congruence(&m)?;
        let mut path = self.path.clone();
        path.push(v);
        let next = Seed {
            initial: self.initial.clone(),
            path,
            quiver,
            c,
            a,
            u,
        };
        next.validate()?;
        Ok(next)
    }

    /// Re-check every seed invariant; any failure is an implementation bug.
    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        let bad = |msg: String| Err(Error::InvariantViolation(msg));
        for v in 0..n {
            self.color(v)
                .map_err(|_| Error::InvariantViolation(format!("c-vector of v{} is not sign-coherent", v + 1)))?;
        }
        if !self.a.is_symmetric() {
            return bad("A is not symmetric".into());
        }
        for i in 0..n {
            if self.a[(i, i)] != sc(2) {
                return bad(format!("A has diagonal entry {} at v{}", self.a[(i, i)], i + 1));
            }
            if !self.u[(i, i)].is_one() {
                return bad(format!("U has diagonal entry {} at v{}", self.u[(i, i)], i + 1));
            }
            for j in 0..n {
                if i != j && self.a[(i, j)].abs() != self.quiver.entry(i, j).abs() {
                    return bad(format!("|a| != |b| at (v{}, v{})", i + 1, j + 1));
                }
            }
        }
        let a0 = initial_companion(&self.initial);
        if self.c.transpose().mul(&a0)?.mul(&self.c)? != self.a {
            return bad("A differs from CᵀA₀C".into());
        }
        if &self.u.transpose().sub(&self.u)? != self.quiver.b() {
            return bad("Uᵀ - U differs from B".into());
        }
        if half_difference(&self.a, self.quiver.b())? != self.u {
            return bad("U differs from (A - B)/2".into());
        }
        Ok(())
    }

    /// The principal extension at this seed: vertex `n + i` is the frozen `v_i'`,
    /// with `b_{v_i', w} = c_{iw}`.
    pub fn framed(&self) -> Quiver<T> {
        let n = self.n();
        let mut b = Matrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                b[(i, j)] = self.quiver.entry(i, j).clone();
                b[(n + i, j)] = self.c[(i, j)].clone();
                b[(j, n + i)] = -self.c[(i, j)].clone();
            }
        }
        let frozen = (0..2 * n).map(|i| i >= n).collect();
        Quiver::from_b(b, frozen).expect("framed seed is a valid quiver")
    }

    /// Mutable part plus one frozen vertex `∘` (index `n`) with `b_{∘,v}` the
    /// column sum of `C`.
    pub fn bundle(&self) -> Quiver<T> {
        let n = self.n();
        let mut b = Matrix::zeros(n + 1, n + 1);
        for i in 0..n {
            for j in 0..n {
                b[(i, j)] = self.quiver.entry(i, j).clone();
            }
            let sum = self.c.column(i).fold(T::zero(), |acc, x| acc + x.clone());
            b[(i, n)] = -sum.clone();
            b[(n, i)] = sum;
        }
        let mut labels = self.quiver.labels().to_vec();
        labels.push("∘".to_string());
        Quiver::from_b(b, (0..=n).map(|i| i == n).collect())
            .and_then(|q| q.with_labels(labels))
            .expect("bundled seed is a valid quiver")
    }
}
