//! Closed-form invariants of the cycle, glued and E6 families, and the worked
//! proper-mutation sequence.

mod common;

use common::*;
use coqforge::catalog;
use coqforge::certify::{certify, CertifyOptions, Obstruction, Verdict};
use coqforge::coq::{proper_mutate, unipotent_companion};
use coqforge::graph::build_l_graph;
use coqforge::invariants::{alexander, det_b, markov};
use coqforge::{Coq, Int, IntPolynomial, Seed};
use rand::Rng;

type P = IntPolynomial<Int>;

fn p(c: &[i64]) -> P {
    P::from_i64(c)
}

fn pow(x: &P, k: usize) -> P {
    (0..k).fold(P::one(), |acc, _| &acc * x)
}

fn t_minus_1() -> P {
    p(&[-1, 1])
}

/// Δ of `C(r, ℓ)` in its winding-0 order, cross-checked against the
/// interpolated determinant of the companion built from its definition.
fn cycle_delta(r: usize, l: usize, a: &[i64]) -> P {
    let w: Vec<Int> = a.iter().map(|&x| int(x)).collect();
    let q = catalog::weighted_cycle(r, l, &w);
    let order = catalog::affine_order(r, l);
    let d = alexander(&unipotent_companion(&q, &order).unwrap());
    assert_eq!(
        d.coeffs(),
        interpolated_alexander(&companion_by_definition(&q, &order)).as_slice()
    );
    d
}

/// `(t−1)⁴ + M·t(t−1)² + D·t²`.
fn four_vertex_form(m: i64, d: i64) -> P {
    let t = p(&[0, 1]);
    let tm1 = t_minus_1();
    &(&pow(&tm1, 4) + &(&t * &pow(&tm1, 2)).scale(&int(m))) + &pow(&t, 2).scale(&int(d))
}

/// `(t−1)⁵ + M·t(t−1)³ + d·t²(t−1)`.
fn five_vertex_form(m: i64, d: i64) -> P {
    let t = p(&[0, 1]);
    let tm1 = t_minus_1();
    let a = pow(&tm1, 5);
    let b = (&t * &pow(&tm1, 3)).scale(&int(m));
    let c = (&pow(&t, 2) * &tm1).scale(&int(d));
    &(&a + &b) + &c
}

fn random_weights(r: &mut rand_chacha::ChaCha8Rng, n: usize) -> Vec<i64> {
    (0..n).map(|_| r.gen_range(1..=5)).collect()
}

#[test]
fn four_cycle_formulas() {
    let mut r = rng(41);
    for _ in 0..60 {
        let a = random_weights(&mut r, 4);
        let s: i64 = a.iter().map(|x| x * x).sum();
        let prod: i64 = a.iter().product();
        let sq = a[0] * a[0] * a[2] * a[2] + a[1] * a[1] * a[3] * a[3];
        assert_eq!(
            cycle_delta(4, 0, &a),
            four_vertex_form(s - prod, sq - 2 * prod),
            "C(4,0) {a:?}"
        );
        assert_eq!(
            cycle_delta(3, 1, &a),
            four_vertex_form(s + prod, sq + 2 * prod),
            "C(3,1) {a:?}"
        );
        assert_eq!(
            cycle_delta(2, 2, &a),
            four_vertex_form(s, sq - 2 * prod),
            "C(2,2) {a:?}"
        );
    }
}

#[test]
fn five_cycle_formulas() {
    let mut r = rng(42);
    for _ in 0..60 {
        let a = random_weights(&mut r, 5);
        let sq = |i: usize, j: usize| a[i] * a[i] * a[j] * a[j];
        let s: i64 = a.iter().map(|x| x * x).sum();
        let prod: i64 = a.iter().product();
        let cross = sq(0, 2) + sq(0, 3) + sq(1, 3) + sq(1, 4) + sq(2, 4);
        // The sign of ∏aᵢ is pinned by aᵢ = 1: Δ_Ã(4,1) = (t + 1)(t⁴ − 1) forces d = 8 = 5 + 3.
        assert_eq!(
            cycle_delta(4, 1, &a),
            five_vertex_form(s + prod, cross + 3 * prod),
            "C(4,1) {a:?}"
        );
        assert_eq!(cycle_delta(3, 2, &a), five_vertex_form(s, cross - prod), "C(3,2) {a:?}");
    }
}

#[test]
fn five_cycle_all_ones() {
    let affine = |r: usize, l: usize| {
        let f = |k: usize| &P::monomial(int(1), k) - &P::constant(int(if k % 2 == 0 { 1 } else { -1 }));
        &f(l) * &f(r)
    };
    assert_eq!(cycle_delta(4, 1, &[1; 5]), affine(4, 1));
    assert_eq!(affine(4, 1), five_vertex_form(6, 8));
    assert_eq!(cycle_delta(3, 2, &[1; 5]), affine(3, 2));
    assert_eq!(affine(3, 2), five_vertex_form(5, 4));
}

/// The case split is stated for `r ≥ ℓ`; reversing every arrow swaps `r` and `ℓ`.
#[test]
fn cycle_markov_pattern() {
    let mut r = rng(43);
    for n in 3..=7 {
        for l in 0..n {
            let rr = n - l;
            let a = random_weights(&mut r, n);
            let w: Vec<Int> = a.iter().map(|&x| int(x)).collect();
            let q = catalog::weighted_cycle(rr, l, &w);
            let c = Coq::new(q, catalog::affine_order(rr, l)).unwrap();
            let s: i64 = a.iter().map(|x| x * x).sum();
            let prod: i64 = a.iter().product();
            let expect = match l.min(rr) {
                0 => s - prod,
                1 => s + prod,
                _ => s,
            };
            assert_eq!(markov(&c), int(expect), "C({rr},{l}) with {a:?}");
        }
    }
}

#[test]
fn affine_family_factorizes() {
    for r in 1..=6 {
        for l in (1..=6).filter(|l| r + l >= 3) {
            let sign = |k: usize| if k % 2 == 0 { 1 } else { -1 };
            let f = |k: usize| &P::monomial(int(1), k) - &P::constant(int(sign(k)));
            assert_eq!(cycle_delta(r, l, &vec![1; r + l]), &f(l) * &f(r), "Ã({r},{l})");
        }
    }
}

#[test]
fn four_cycle_determinant_inequality() {
    // a₄ = a₁a₂a₃ with a₂ ≥ max(a₁, a₃) and a₁a₃ ≥ 6.
    for (a1, a2, a3) in [(2, 3, 3), (2, 4, 3), (3, 3, 2), (1, 6, 6), (2, 5, 4)] {
        let w = [a1, a2, a3, a1 * a2 * a3];
        let q = catalog::weighted_cycle(4, 0, &w.map(int));
        let c = Coq::new(q.clone(), vec![0, 1, 2, 3]).unwrap();
        assert_eq!(markov(&c), int(a1 * a1 + a2 * a2 + a3 * a3));
        // (a₁a₃ − a₂a₄)² = (a₂² − 1)²(a₁a₃)²; the bound still fails.
        let det = (a2 * a2 - 1) * (a2 * a2 - 1) * (a1 * a3) * (a1 * a3);
        assert!(det > 4 * (a1 * a1 + a2 * a2 + a3 * a3).pow(2));
        assert_eq!(det_b(&q), int(det));
        let rep = certify(&q, Some(&[0, 1, 2, 3]), &CertifyOptions::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::NotMutationAcyclic);
        assert_eq!(rep.obstruction, Some(Obstruction::DetInequality), "{w:?}");
    }
}

#[test]
fn four_cycle_determinant_inequality_region() {
    for a1 in 1..=7i64 {
        for a3 in 1..=7i64 {
            for a2 in a1.max(a3)..=7 {
                if a1 * a3 < 6 {
                    continue;
                }
                let w = [a1, a2, a3, a1 * a2 * a3];
                let q = catalog::weighted_cycle(4, 0, &w.map(int));
                let rep = certify(&q, Some(&[0, 1, 2, 3]), &CertifyOptions::default()).unwrap();
                assert_eq!(rep.obstruction, Some(Obstruction::DetInequality), "{w:?}");
            }
        }
    }
}

#[test]
fn glued_markov_formula() {
    for a in 1..=6i64 {
        for b in 1..=6i64 {
            for c in 1..=6i64 {
                let q = catalog::glued(int(a), int(b), int(c));
                let co = Coq::new(q.clone(), vec![0, 1, 2, 3]).unwrap();
                let m = a * a + 2 * b * b + 2 * c * c - 2 * a * b * c;
                assert_eq!(markov(&co), int(m), "({a},{b},{c})");
                assert_eq!(det_b(&q), int((c * c - b * b) * (c * c - b * b)));
                if m < 3 {
                    let rep = certify(&q, Some(&[0, 1, 2, 3]), &CertifyOptions::default()).unwrap();
                    assert_eq!(rep.verdict, Verdict::NotMutationAcyclic, "({a},{b},{c})");
                    assert_eq!(rep.obstruction, Some(Obstruction::MarkovLowerBound));
                }
            }
        }
    }
}

#[test]
fn e6_l_graphs() {
    let s = Seed::replay(&catalog::e6::<Int>(), &catalog::E6_PATH).unwrap();
    let mut common_arcs = vec![(0, 3), (3, 1), (1, 4), (5, 2), (5, 1), (5, 0), (2, 1), (2, 4)];
    common_arcs.sort_unstable();
    let extra = [None, Some((5, 2)), Some((1, 4)), None, None, Some((0, 1))];
    for (v, extra) in extra.iter().enumerate() {
        let l = build_l_graph(&s, v).unwrap();
        assert_eq!(l.plain, common_arcs, "L_v{}", v + 1);
        assert_eq!(l.labeled, extra.iter().copied().collect::<Vec<_>>(), "L_v{}", v + 1);
    }
}

#[test]
fn proper_mutation_sequence() {
    let q = catalog::proper_sequence_start::<Int>();
    let c0 = Coq::new(q.clone(), vec![0, 1, 2, 3]).unwrap();
    let c1 = proper_mutate(&c0, 0).unwrap();
    assert!(c1
        .wiggle_equivalent(&Coq::new(c1.quiver().clone(), vec![0, 1, 2, 3]).unwrap())
        .unwrap());
    let c2 = proper_mutate(&c1, 1).unwrap();
    let q2 = Q::from_i64_arrows(4, &[(0, 2, 1), (2, 3, 1), (1, 0, 1), (0, 3, 5), (3, 1, 2)]).unwrap();
    assert_eq!(c2.quiver(), &q2);
    assert!(c2.wiggle_equivalent(&Coq::new(q2, vec![0, 2, 3, 1]).unwrap()).unwrap());
    let c3 = proper_mutate(&c2, 2).unwrap();
    let q3 = Q::from_i64_arrows(4, &[(1, 0, 1), (2, 0, 1), (3, 2, 1), (3, 1, 2), (0, 3, 6)]).unwrap();
    assert_eq!(c3.quiver(), &q3);
    assert!(c3.wiggle_equivalent(&Coq::new(q3, vec![0, 3, 2, 1]).unwrap()).unwrap());
    let delta = alexander(&unipotent_companion(&q, &[0, 1, 2, 3]).unwrap());
    for c in [&c1, &c2, &c3] {
        assert_eq!(coqforge::invariants::alexander_coq(c), delta);
    }
    // Mutating twice at the same vertex returns to the wiggle class.
    let back = proper_mutate(&c3, 2).unwrap();
    assert!(back.wiggle_equivalent(&c2).unwrap());
}
