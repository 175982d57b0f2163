//! Quasi-Cartan companions: admissibility checks, existence over GF(2), and the
//! sign audit of seed companions.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::gf2::Gf2System;
use crate::graph::{chordless_cycles, classify_cycle, Cycle, SimpleGraph};
use crate::matrix::Matrix;
use crate::quiver::Quiver;
use crate::scalar::{sc, Scalar};
use crate::seed::{Seed, VertexColor};

/// A symmetric matrix with diagonal 2 and `|a_{uv}| = |b_{uv}|` off the diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiCartan<T> {
    a: Matrix<T>,
}

impl<T: Scalar> QuasiCartan<T> {
    pub fn new(q: &Quiver<T>, a: Matrix<T>) -> Result<Self> {
        let n = q.n();
        if a.rows() != n || a.cols() != n {
            return Err(Error::NotCompanion(format!(
                "{}x{} matrix for a quiver on {} vertices",
                a.rows(),
                a.cols(),
                n
            )));
        }
        if !a.is_symmetric() {
            return Err(Error::NotCompanion("not symmetric".into()));
        }
        for i in 0..n {
            if a[(i, i)] != sc(2) {
                return Err(Error::NotCompanion(format!(
                    "diagonal entry at v{} is {}, not 2",
                    i + 1,
                    a[(i, i)]
                )));
            }
            for j in 0..n {
                if i != j && a[(i, j)].abs() != q.entry(i, j).abs() {
                    return Err(Error::NotCompanion(format!(
                        "|a| = {} but |b| = {} at (v{}, v{})",
                        a[(i, j)].abs(),
                        q.entry(i, j).abs(),
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(QuasiCartan { a })
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.a
    }

    pub fn into_matrix(self) -> Matrix<T> {
        self.a
    }

    /// Negate row and column `v`; the result is a companion of the same quiver.
    pub fn toggled(&self, v: usize) -> Self {
        let mut a = self.a.clone();
        for w in 0..a.rows() {
            if w != v {
                a[(v, w)] = -a[(v, w)].clone();
                a[(w, v)] = -a[(w, v)].clone();
            }
        }
        QuasiCartan { a }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibilityViolation {
    pub cycle: Cycle,
    pub positive_edges: usize,
    /// Oriented cycles need an odd count, the rest an even one.
    pub oriented: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    pub violations: Vec<AdmissibilityViolation>,
}

/// Chordless cycles of `K_Q` with their orientation flag.
pub fn chordless_constraints<T: Scalar>(q: &Quiver<T>) -> Vec<(Cycle, bool)> {
    let g = SimpleGraph::underlying(q);
    chordless_cycles(&g)
        .into_iter()
        .map(|c| {
            let oriented = classify_cycle(q, &c)
                .expect("enumerated cycles are valid")
                .is_oriented();
            (c, oriented)
        })
        .collect()
}

pub fn is_admissible<T: Scalar>(q: &Quiver<T>, a: &Matrix<T>) -> Result<AdmissibilityReport> {
    let qc = QuasiCartan::new(q, a.clone())?;
    let a = qc.matrix();
    let mut violations = Vec::new();
    for (cycle, oriented) in chordless_constraints(q) {
        let positive_edges = cycle.steps().filter(|&(x, y)| a[(x, y)].is_positive()).count();
        if (positive_edges % 2 == 1) != oriented {
            violations.push(AdmissibilityViolation {
                cycle,
                positive_edges,
                oriented,
            });
        }
    }
    Ok(AdmissibilityReport {
        admissible: violations.is_empty(),
        violations,
    })
}

/// A set of chordless cycles whose parity equations add up to `0 = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InconsistencyCertificate {
    pub cycles: Vec<(Cycle, bool)>,
}

impl InconsistencyCertificate {
    /// Re-derive the contradiction from scratch against `q`.
    pub fn verify<T: Scalar>(&self, q: &Quiver<T>) -> bool {
        let g = SimpleGraph::underlying(q);
        let mut parity: HashMap<(usize, usize), bool> = HashMap::new();
        let mut rhs = false;
        for (c, oriented) in &self.cycles {
            let Ok(cls) = classify_cycle(q, c) else {
                return false;
            };
            if !cls.chordless || cls.is_oriented() != *oriented {
                return false;
            }
            if !g.is_chordless(c.vertices()) {
                return false;
            }
            for (x, y) in c.steps() {
                *parity.entry((x.min(y), x.max(y))).or_default() ^= true;
            }
            rhs ^= oriented;
        }
        rhs && parity.values().all(|&p| !p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AdmissibleSearch<T> {
    Witness(QuasiCartan<T>),
    Infeasible(InconsistencyCertificate),
}

impl<T> AdmissibleSearch<T> {
    pub fn witness(&self) -> Option<&QuasiCartan<T>> {
        match self {
            AdmissibleSearch::Witness(w) => Some(w),
            AdmissibleSearch::Infeasible(_) => None,
        }
    }

    pub fn exists(&self) -> bool {
        matches!(self, AdmissibleSearch::Witness(_))
    }
}

/// One GF(2) unknown per edge of `K_Q` (1 = positive sign), one parity equation
/// per chordless cycle.
pub fn admissible_exists<T: Scalar>(q: &Quiver<T>) -> AdmissibleSearch<T> {
    let g = SimpleGraph::underlying(q);
    let edges = g.edges();
    let index: HashMap<(usize, usize), usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let constraints = chordless_constraints(q);
    let mut sys = Gf2System::new(edges.len());
    for (c, oriented) in &constraints {
        let vars: Vec<usize> = c.steps().map(|(x, y)| index[&(x.min(y), x.max(y))]).collect();
        sys.push(&vars, *oriented);
    }
    match sys.solve() {
        Ok(x) => {
            let n = q.n();
            let a = Matrix::from_fn(n, n, |i, j| {
                if i == j {
                    return sc(2);
                }
                let m = q.entry(i, j).abs();
                match index.get(&(i.min(j), i.max(j))) {
                    Some(&e) if x[e] => m,
                    _ => -m,
                }
            });
            AdmissibleSearch::Witness(QuasiCartan { a })
        }
        Err(rows) => AdmissibleSearch::Infeasible(InconsistencyCertificate {
            cycles: rows.into_iter().map(|r| constraints[r].clone()).collect(),
        }),
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SevenAudit {
    /// Arrows `u → v` where `a_{uv} > 0` disagrees with "u red and v green".
    pub sign_violations: Vec<(usize, usize)>,
    /// Chordless oriented cycles without exactly one positive entry of `A`.
    pub cycle_violations: Vec<Vec<usize>>,
}

impl SevenAudit {
    pub fn passed(&self) -> bool {
        self.sign_violations.is_empty() && self.cycle_violations.is_empty()
    }
}

/// Checks the sign pattern of `A_t` against the vertex colors, and that every
/// chordless oriented cycle carries exactly one positive entry. Longer oriented
/// paths are not checked: a path red → green → red → green has two positive
/// entries by the sign pattern alone, and such paths do occur, as do oriented
/// cycles with chords carrying two.
pub fn audit_seven_properties<T: Scalar>(s: &Seed<T>) -> Result<SevenAudit> {
    let q = s.quiver();
    let a = s.a();
    let colors = s.colors()?;
    let mut audit = SevenAudit::default();
    for (u, v, _) in q.arrows() {
        let expect = colors[u] == VertexColor::Red && colors[v] == VertexColor::Green;
        if a[(u, v)].is_positive() != expect {
            audit.sign_violations.push((u, v));
        }
    }
    for (c, oriented) in chordless_constraints(q) {
        if !oriented {
            continue;
        }
        // Walk the cycle along its arrows.
        let walk = if c.steps().all(|(x, y)| q.entry(x, y).is_positive()) {
            c
        } else {
            c.reversed()
        };
        let positives = walk.steps().filter(|&(x, y)| a[(x, y)].is_positive()).count();
        if positives != 1 {
            let mut vs = walk.vertices().to_vec();
            vs.push(vs[0]);
            audit.cycle_violations.push(vs);
        }
    }
    Ok(audit)
}
