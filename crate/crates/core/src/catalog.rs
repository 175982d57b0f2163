//! Named quivers used throughout the examples, tests and CLI. Indices are 0-based.

use crate::quiver::Quiver;
use crate::scalar::Scalar;

fn build<T: Scalar>(n: usize, arrows: &[(usize, usize, i64)]) -> Quiver<T> {
    Quiver::from_i64_arrows(n, arrows).expect("catalog quivers are valid")
}

fn build_big<T: Scalar>(n: usize, arrows: &[(usize, usize, T)]) -> Quiver<T> {
    Quiver::from_arrows(n, &[], arrows).expect("catalog quivers are valid")
}

/// Oriented triangle `v1 →a v2 →b v3 →c v1`.
pub fn triangle<T: Scalar>(a: T, b: T, c: T) -> Quiver<T> {
    build_big(3, &[(0, 1, a), (1, 2, b), (2, 0, c)])
}

/// The acyclic 4-vertex quiver drawn on six cyclic orderings.
pub fn four_vertex<T: Scalar>() -> Quiver<T> {
    build(4, &[(0, 1, 1), (1, 3, 2), (0, 2, 1), (2, 3, 1), (0, 3, 3)])
}

/// The oriented 6-cycle with a triple arrow.
pub fn hexagon<T: Scalar>() -> Quiver<T> {
    build(6, &[(0, 1, 3), (1, 2, 1), (2, 3, 1), (3, 4, 1), (4, 5, 1), (5, 0, 1)])
}

/// The 6-cycle whose chord `v3 → v6` splits it into two 4-cycles.
pub fn hexagon_with_chord<T: Scalar>() -> Quiver<T> {
    build(
        6,
        &[
            (0, 1, 3),
            (2, 1, 1),
            (2, 5, 1),
            (2, 3, 1),
            (3, 4, 1),
            (4, 5, 1),
            (5, 0, 1),
        ],
    )
}

/// Oriented 5-cycle plus a vertex receiving arrows from two of its vertices.
pub fn pentagon_with_apex<T: Scalar>() -> Quiver<T> {
    build(
        6,
        &[
            (0, 1, 3),
            (1, 2, 1),
            (2, 3, 1),
            (3, 4, 1),
            (4, 0, 1),
            (0, 5, 1),
            (3, 5, 1),
        ],
    )
}

/// Start of the four-step proper mutation sequence; `v1` is a sink.
pub fn proper_sequence_start<T: Scalar>() -> Quiver<T> {
    build(4, &[(1, 0, 1), (2, 0, 1), (2, 3, 1), (1, 3, 2), (3, 0, 3)])
}

/// Type `E6`: `v1 → v2 → v3 → v4 → v5` and `v3 → v6`.
pub fn e6<T: Scalar>() -> Quiver<T> {
    build(6, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (2, 5, 1)])
}

pub const E6_PATH: [usize; 6] = [2, 1, 4, 3, 1, 0];

/// `v1 →² v3 → v2` and `v1 → v2`.
pub fn congruence_example<T: Scalar>() -> Quiver<T> {
    build(3, &[(0, 2, 2), (2, 1, 1), (0, 1, 1)])
}

pub const CONGRUENCE_PATH: [usize; 3] = [2, 0, 1];

pub fn somos4<T: Scalar>() -> Quiver<T> {
    build(4, &[(0, 1, 1), (2, 3, 1), (0, 3, 1), (2, 0, 2), (3, 1, 2), (1, 2, 3)])
}

/// The distinguished cyclic ordering `(v1, v4, v2, v3)`.
pub const SOMOS4_ORDER: [usize; 4] = [0, 3, 1, 2];

fn double_extended_core() -> Vec<(usize, usize, i64)> {
    vec![
        (4, 0, 2),
        (0, 1, 1),
        (1, 4, 1),
        (0, 2, 1),
        (2, 4, 1),
        (0, 3, 1),
        (3, 4, 1),
    ]
}

/// Elliptic `E7^(1,1)` on nine vertices.
pub fn e7_double_extended<T: Scalar>() -> Quiver<T> {
    let mut a = double_extended_core();
    a.extend([(2, 5, 1), (5, 6, 1), (3, 7, 1), (7, 8, 1)]);
    build(9, &a)
}

/// Elliptic `E8^(1,1)` on ten vertices.
pub fn e8_double_extended<T: Scalar>() -> Quiver<T> {
    let mut a = double_extended_core();
    a.extend([(2, 5, 1), (5, 6, 1), (6, 7, 1), (7, 8, 1), (3, 9, 1)]);
    build(10, &a)
}

/// The triangle `v1 →a v2 →b v3 →c v1` glued to a reversed copy of itself along
/// `v1 → v2`, giving `v2 →c v4 →b v1`. `det B = (c² − b²)²`.
pub fn glued<T: Scalar>(a: T, b: T, c: T) -> Quiver<T> {
    build_big(
        4,
        &[(0, 1, a), (1, 2, b.clone()), (2, 0, c.clone()), (1, 3, c), (3, 0, b)],
    )
}

/// `Ã(r, ℓ)`: `r` forward and `ℓ` backward single arrows around an `n = r + ℓ`
/// cycle, `v1 → ⋯ → v_{r+1} ← ⋯ ← v_n ← v1`.
pub fn affine_a<T: Scalar>(r: usize, l: usize) -> Quiver<T> {
    weighted_cycle(r, l, &vec![T::one(); r + l])
}

/// `C(r, ℓ)` with weights `a_1, …, a_n`: `a_i` arrows between `v_i` and `v_{i+1}`
/// (indices mod `n`), pointing forward for `i ≤ r` and backward otherwise.
/// `C(n, 0)` is the oriented cycle.
pub fn weighted_cycle<T: Scalar>(r: usize, l: usize, a: &[T]) -> Quiver<T> {
    let n = r + l;
    assert_eq!(a.len(), n, "one weight per edge of the cycle");
    let arrows: Vec<(usize, usize, T)> = (0..n)
        .map(|i| {
            let j = (i + 1) % n;
            if i < r {
                (i, j, a[i].clone())
            } else {
                (j, i, a[i].clone())
            }
        })
        .collect();
    build_big(n, &arrows)
}

/// `(v1, …, v_r, v_n, v_{n−1}, …, v_{r+1})`, winding 0 around the cycle.
pub fn affine_order(r: usize, l: usize) -> Vec<usize> {
    let n = r + l;
    let mut o: Vec<usize> = (0..r).collect();
    o.extend((r..n).rev());
    o
}

/// A named quiver, with a distinguished cyclic ordering or mutation path when
/// one is attached to it.
#[derive(Clone, Debug)]
pub struct Entry<T> {
    pub name: &'static str,
    pub quiver: Quiver<T>,
    pub order: Option<Vec<usize>>,
    pub path: Option<Vec<usize>>,
}

pub fn entries<T: Scalar>() -> Vec<Entry<T>> {
    let e = |name, quiver, order: Option<Vec<usize>>, path: Option<Vec<usize>>| Entry {
        name,
        quiver,
        order,
        path,
    };
    let i = |x: i64| T::from_i64_exact(x);
    vec![
        e("t57", triangle(i(5), i(12), i(57)), None, None),
        e("t58", triangle(i(5), i(12), i(58)), None, None),
        e("markov", triangle(i(2), i(2), i(2)), None, None),
        e("four-vertex", four_vertex(), Some(vec![0, 1, 2, 3]), None),
        e("hexagon", hexagon(), None, None),
        e("hexagon-chord", hexagon_with_chord(), None, None),
        e("pentagon-apex", pentagon_with_apex(), None, None),
        e("proper-sequence", proper_sequence_start(), Some(vec![0, 1, 2, 3]), None),
        e("e6", e6(), None, Some(E6_PATH.to_vec())),
        e("congruence", congruence_example(), None, Some(CONGRUENCE_PATH.to_vec())),
        e("somos4", somos4(), Some(SOMOS4_ORDER.to_vec()), None),
        e("e7-11", e7_double_extended(), Some((0..9).collect()), None),
        e("e8-11", e8_double_extended(), Some((0..10).collect()), None),
        e("glue-even", glued(i(2), i(2), i(4)), Some(vec![0, 1, 2, 3]), None),
        e("affine-3-2", affine_a(3, 2), Some(affine_order(3, 2)), None),
    ]
}

pub fn named<T: Scalar>(name: &str) -> Option<Entry<T>> {
    entries().into_iter().find(|e| e.name == name)
}
