//! Certification that a quiver is or is not mutation-acyclic.
//!
//! The pipeline, run on each connected component of the mutable part:
//! outset/inset acyclicity, existence of an admissible quasi-Cartan companion,
//! the extended outset/inset test, a bounded search for an acyclic member and,
//! given a cyclic ordering assumed totally proper, the Markov lower bound, the
//! determinant inequality and a comparison against every acyclic quiver the
//! Markov invariant allows.

mod bfs;
mod canon;
mod enumerate;
mod report;
mod vortex;

pub use crate::io::{int_json, ints_json, vertices_json};
pub use bfs::{is_acyclic, mutation_bfs, BfsLimits, BfsOutcome};
pub use canon::{canonical_key, isomorphic, CanonKey};
pub use enumerate::{enumerate_acyclic, unlabeled_trees};
pub use report::{CertReport, Obstruction, Verdict};
pub use vortex::{all_vortex_violations, no_vortex_check, Side, VortexMode, VortexViolation};

use serde_json::{json, Map, Value};

use crate::companions::{admissible_exists, AdmissibleSearch};
use crate::coq::{check_permutation, Coq, CyclicOrder};
use crate::error::{Error, Result};
use crate::graph::{Digraph, SimpleGraph};
use crate::invariants::{alexander_coq, det_b, gcd_multiset, markov_from_alexander};
use crate::polynomial::IntPolynomial;
use crate::quiver::Quiver;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifyOptions {
    pub bfs: BfsLimits,
    /// Upper bound on graphs and quivers produced during enumeration.
    pub max_candidates: usize,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            bfs: BfsLimits::default(),
            max_candidates: 200_000,
        }
    }
}

/// `order`, when given, is a cyclic ordering of the mutable vertices (original
/// indices) that is assumed totally proper; the invariant-based obstructions
/// depend on that assumption.
pub fn certify<T: Scalar>(q: &Quiver<T>, order: Option<&[usize]>, opts: &CertifyOptions) -> Result<CertReport> {
    let mutable = q.mutable_vertices();
    let part = q.mutable_part();
    let local_order = match order {
        None => None,
        Some(o) => {
            let mut pos = vec![usize::MAX; q.n()];
            for (i, &v) in mutable.iter().enumerate() {
                pos[v] = i;
            }
            let mapped: Vec<usize> = o
                .iter()
                .map(|&v| {
                    pos.get(v)
                        .copied()
                        .filter(|&p| p != usize::MAX)
                        .ok_or(Error::UnknownVertex(v))
                })
                .collect::<Result<_>>()?;
            check_permutation(&mapped, part.n())?;
            Some(mapped)
        }
    };
    let comps = SimpleGraph::underlying(&part).components();
    let mut reports = Vec::new();
    for comp in &comps {
        let sub = part.subquiver(comp)?;
        let sub_order = local_order.as_ref().map(|o| {
            let mut idx = vec![usize::MAX; part.n()];
            for (i, &v) in comp.iter().enumerate() {
                idx[v] = i;
            }
            o.iter()
                .filter(|&&v| idx[v] != usize::MAX)
                .map(|&v| idx[v])
                .collect::<Vec<_>>()
        });
        let mut r = certify_connected(&sub, sub_order.as_deref(), opts);
        // Back to the caller's indexing.
        let global: Vec<usize> = comp.iter().map(|&v| mutable[v]).collect();
        if let Some(p) = r.witness_path.as_mut() {
            for v in p.iter_mut() {
                *v = global[*v];
            }
        }
        relabel_evidence(&mut r.evidence, &global);
        reports.push((global, r));
    }
    Ok(combine(q, reports))
}

fn combine<T: Scalar>(q: &Quiver<T>, reports: Vec<(Vec<usize>, CertReport)>) -> CertReport {
    if reports.len() == 1 {
        let (_, mut r) = reports.into_iter().next().expect("one component");
        if q.has_frozen() {
            if let Value::Object(m) = &mut r.evidence {
                m.insert("frozen_ignored".into(), vertices_json(&q.frozen_vertices()));
            }
        }
        return r;
    }
    let components: Vec<Value> = reports
        .iter()
        .map(|(vs, r)| {
            json!({
                "vertices": vertices_json(vs),
                "verdict": r.verdict,
                "obstruction": r.obstruction,
                "evidence": r.evidence,
            })
        })
        .collect();
    let mut evidence = Map::new();
    evidence.insert("components".into(), Value::Array(components));
    if q.has_frozen() {
        evidence.insert("frozen_ignored".into(), vertices_json(&q.frozen_vertices()));
    }
    if let Some((vs, r)) = reports.iter().find(|(_, r)| r.verdict == Verdict::NotMutationAcyclic) {
        evidence.insert("failing_component".into(), vertices_json(vs));
        return CertReport {
            verdict: Verdict::NotMutationAcyclic,
            obstruction: r.obstruction,
            witness_path: None,
            evidence: Value::Object(evidence),
        };
    }
    if reports.iter().all(|(_, r)| r.verdict == Verdict::MutationAcyclic) {
        // Mutations in different components commute.
        let path = reports
            .iter()
            .flat_map(|(_, r)| r.witness_path.clone().unwrap_or_default())
            .collect();
        return CertReport {
            verdict: Verdict::MutationAcyclic,
            obstruction: None,
            witness_path: Some(path),
            evidence: Value::Object(evidence),
        };
    }
    CertReport {
        verdict: Verdict::Inconclusive,
        obstruction: None,
        witness_path: None,
        evidence: Value::Object(evidence),
    }
}

/// Evidence is produced 1-based in component coordinates; rewrite every vertex
/// field to 1-based global indices.
fn relabel_evidence(v: &mut Value, global: &[usize]) {
    const VERTEX_KEYS: [&str; 5] = ["vertex", "cycle", "hits", "cycles", "vertices"];
    fn fix(x: &mut Value, global: &[usize]) {
        match x {
            Value::Number(n) => {
                if let Some(i) = n.as_u64() {
                    if i >= 1 && (i as usize) <= global.len() {
                        *x = Value::from(global[i as usize - 1] + 1);
                    }
                }
            }
            Value::Array(a) => a.iter_mut().for_each(|y| fix(y, global)),
            Value::Object(m) => {
                if let Some(c) = m.get_mut("cycle") {
                    fix(c, global);
                }
            }
            _ => {}
        }
    }
    match v {
        Value::Object(m) => {
            for (k, val) in m.iter_mut() {
                if VERTEX_KEYS.contains(&k.as_str()) {
                    fix(val, global);
                } else {
                    relabel_evidence(val, global);
                }
            }
        }
        Value::Array(a) => a.iter_mut().for_each(|y| relabel_evidence(y, global)),
        _ => {}
    }
}

fn not_acyclic(obstruction: Obstruction, evidence: Value) -> CertReport {
    CertReport {
        verdict: Verdict::NotMutationAcyclic,
        obstruction: Some(obstruction),
        witness_path: None,
        evidence,
    }
}

fn vortex_json(v: &VortexViolation) -> Value {
    json!({
        "vertex": v.vertex + 1,
        "side": v.side,
        "mode": v.mode,
        "cycle": vertices_json(&v.cycle),
        "hits": vertices_json(&v.hits),
    })
}

fn bfs_json<T: Scalar>(b: &BfsOutcome<T>, limits: &BfsLimits) -> Value {
    json!({
        "states": b.states,
        "depth_limit": limits.depth,
        "depth_reached": b.depth_reached,
        "entry_cap": limits.entry_cap,
        "capped_branches": b.capped_entries,
        "state_limit_hit": b.hit_state_limit,
        "exhausted": b.exhausted,
    })
}

fn certify_connected<T: Scalar>(q: &Quiver<T>, order: Option<&[usize]>, opts: &CertifyOptions) -> CertReport {
    if let Some(v) = no_vortex_check(q, VortexMode::Basic) {
        return not_acyclic(Obstruction::NoVortex, json!({ "violation": vortex_json(&v) }));
    }
    let extended = no_vortex_check(q, VortexMode::Extended);
    if let AdmissibleSearch::Infeasible(cert) = admissible_exists(q) {
        let cycles: Vec<Value> = cert
            .cycles
            .iter()
            .map(|(c, oriented)| json!({ "cycle": vertices_json(c.vertices()), "oriented": oriented }))
            .collect();
        let mut ev = Map::new();
        ev.insert("inconsistent_cycles".into(), Value::Array(cycles));
        if let Some(v) = &extended {
            ev.insert("extended_no_vortex".into(), vortex_json(v));
        }
        return not_acyclic(Obstruction::NoAdmissibleCompanion, Value::Object(ev));
    }
    if let Some(v) = &extended {
        return not_acyclic(Obstruction::NoVortex, json!({ "violation": vortex_json(v) }));
    }
    let search = mutation_bfs(q, &opts.bfs);
    let bfs_ev = bfs_json(&search, &opts.bfs);
    if let Some((acyclic, path)) = search.found {
        return CertReport {
            verdict: Verdict::MutationAcyclic,
            obstruction: None,
            witness_path: Some(path),
            evidence: json!({
                "acyclic_arrows": arrows_json(&acyclic),
                "bfs": bfs_ev,
            }),
        };
    }
    let Some(order) = order else {
        return inconclusive(json!({ "bfs": bfs_ev, "reason": "no cyclic ordering supplied" }));
    };
    match invariant_obstructions(q, order, opts) {
        Ok(Ok((obstruction, mut ev))) => {
            ev.insert("bfs".into(), bfs_ev);
            not_acyclic(obstruction, Value::Object(ev))
        }
        Ok(Err(mut ev)) => {
            ev.insert("bfs".into(), bfs_ev);
            ev.insert("reason".into(), "invariants match an acyclic quiver".into());
            inconclusive(Value::Object(ev))
        }
        Err(e) => inconclusive(json!({ "bfs": bfs_ev, "reason": e.to_string() })),
    }
}

fn inconclusive(evidence: Value) -> CertReport {
    CertReport {
        verdict: Verdict::Inconclusive,
        obstruction: None,
        witness_path: None,
        evidence,
    }
}

fn arrows_json<T: Scalar>(q: &Quiver<T>) -> Value {
    Value::Array(
        q.arrows()
            .iter()
            .map(|(u, v, m)| json!([u + 1, v + 1, int_json(m)]))
            .collect(),
    )
}

/// Invariants of an acyclic quiver, read off the closure of a topological order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateInvariants<T> {
    pub quiver: Quiver<T>,
    pub alexander: IntPolynomial<T>,
    pub markov: T,
    pub det: T,
    pub gcds: Vec<T>,
}

pub fn candidate_invariants<T: Scalar>(q: &Quiver<T>) -> CandidateInvariants<T> {
    let order = Digraph::from_quiver(q)
        .topological_sort()
        .expect("candidate is acyclic");
    let c = Coq::with_order(q.clone(), CyclicOrder::from_linear_unchecked(order)).expect("valid order");
    let alexander = alexander_coq(&c);
    CandidateInvariants {
        markov: markov_from_alexander(&alexander, q.n()),
        alexander,
        det: det_b(q),
        gcds: gcd_multiset(q),
        quiver: q.clone(),
    }
}

type Fired = std::result::Result<(Obstruction, Map<String, Value>), Map<String, Value>>;

fn invariant_obstructions<T: Scalar>(q: &Quiver<T>, order: &[usize], opts: &CertifyOptions) -> Result<Fired> {
    let n = q.n();
    let c = Coq::new(q.clone(), order.to_vec())?;
    let alexander = alexander_coq(&c);
    let m = markov_from_alexander(&alexander, n);
    let det = det_b(q);
    let gcds = gcd_multiset(q);
    let mut ev = Map::new();
    ev.insert("order".into(), vertices_json(c.order().as_slice()));
    ev.insert("markov".into(), int_json(&m));
    ev.insert("alexander".into(), ints_json(alexander.coeffs()));
    ev.insert("det".into(), int_json(&det));
    ev.insert("gcds".into(), ints_json(&gcds));
    ev.insert("n".into(), Value::from(n));
    let lower = T::from_usize(n.saturating_sub(1)).expect("vertex count fits");
    if m < lower {
        ev.insert("lower_bound".into(), int_json(&lower));
        return Ok(Ok((Obstruction::MarkovLowerBound, ev)));
    }
    if n % 2 == 0 {
        let two_m = m.clone() + m.clone();
        let bound = num_traits::pow(two_m, n / 2);
        if det > bound {
            ev.insert("det_bound".into(), int_json(&bound));
            return Ok(Ok((Obstruction::DetInequality, ev)));
        }
    }
    let budget = m
        .to_u64()
        .ok_or_else(|| Error::BudgetExceeded(format!("Markov invariant {m} is too large to enumerate")))?;
    let candidates: Vec<Quiver<T>> = enumerate_acyclic(n, budget, true, opts.max_candidates)?;
    let invs: Vec<CandidateInvariants<T>> = candidates.iter().map(candidate_invariants).collect();
    let markov_ok: Vec<&CandidateInvariants<T>> = invs.iter().filter(|x| x.markov == m).collect();
    let gcd_ok: Vec<&CandidateInvariants<T>> = markov_ok.iter().copied().filter(|x| x.gcds == gcds).collect();
    let full: Vec<&CandidateInvariants<T>> = gcd_ok
        .iter()
        .copied()
        .filter(|x| x.alexander == alexander && x.det == det)
        .collect();
    let mut dets: Vec<T> = gcd_ok.iter().map(|x| x.det.clone()).collect();
    dets.sort();
    dets.dedup();
    let distinct_alex: std::collections::BTreeSet<Vec<T>> =
        markov_ok.iter().map(|x| x.alexander.coeffs().to_vec()).collect();
    ev.insert(
        "enumeration".into(),
        json!({
            "budget_sq": budget,
            "candidates": candidates.len(),
            "trees": invs.iter().filter(|x| x.quiver.arrows().len() + 1 == n).count(),
            "markov_matches": markov_ok.len(),
            "distinct_alexander": distinct_alex.len(),
            "gcd_matches": gcd_ok.len(),
            "candidate_dets": ints_json(&dets),
            "full_matches": full.len(),
        }),
    );
    if !full.is_empty() {
        return Ok(Err(ev));
    }
    let obstruction = if !markov_ok.is_empty() && gcd_ok.is_empty() {
        Obstruction::GcdMismatch
    } else {
        Obstruction::AcyclicEnumerationMismatch
    };
    Ok(Ok((obstruction, ev)))
}
