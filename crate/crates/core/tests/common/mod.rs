//! Brute-force oracles and random generators shared by the integration tests.
//! Nothing here calls the algorithm it is used to check.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use coqforge::{Int, Matrix, Quiver};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Q = Quiver<Int>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn int(x: i64) -> Int {
    Int::from(x)
}

pub fn matrix(rows: &[&[i64]]) -> Matrix<Int> {
    Matrix::from_i64_rows(rows)
}

/// Arrows `perm[i] → perm[j]` for `i < j`, each present with probability `p`.
pub fn random_acyclic(r: &mut ChaCha8Rng, n: usize, p: f64, max_w: i64) -> Q {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(r);
    let mut arrows = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if r.gen_bool(p) {
                arrows.push((perm[i], perm[j], int(r.gen_range(1..=max_w))));
            }
        }
    }
    Q::from_arrows(n, &[], &arrows).unwrap()
}

/// Any orientation, so oriented cycles are common.
pub fn random_quiver(r: &mut ChaCha8Rng, n: usize, p: f64, max_w: i64) -> Q {
    let mut arrows = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if r.gen_bool(p) {
                let w = int(r.gen_range(1..=max_w));
                if r.gen_bool(0.5) {
                    arrows.push((i, j, w));
                } else {
                    arrows.push((j, i, w));
                }
            }
        }
    }
    Q::from_arrows(n, &[], &arrows).unwrap()
}

pub fn random_order(r: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut o: Vec<usize> = (0..n).collect();
    o.shuffle(r);
    o
}

pub fn edges_of(q: &Q) -> Vec<(usize, usize)> {
    let n = q.n();
    let mut e = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if !q.entry(i, j).is_zero() {
                e.push((i, j));
            }
        }
    }
    e
}

/// Vertex sets of chordless cycles: subsets of size ≥ 3 whose induced subgraph
/// is connected and 2-regular.
pub fn brute_chordless(n: usize, edges: &[(usize, usize)]) -> BTreeSet<Vec<usize>> {
    let mut adj = vec![vec![false; n]; n];
    for &(u, v) in edges {
        adj[u][v] = true;
        adj[v][u] = true;
    }
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() < 3 {
            continue;
        }
        let vs: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        if vs.iter().any(|&v| vs.iter().filter(|&&w| adj[v][w]).count() != 2) {
            continue;
        }
        // 2-regular, so it is a single cycle iff it is connected.
        let mut seen = vec![vs[0]];
        let mut k = 0;
        while k < seen.len() {
            let v = seen[k];
            for &w in &vs {
                if adj[v][w] && !seen.contains(&w) {
                    seen.push(w);
                }
            }
            k += 1;
        }
        if seen.len() == vs.len() {
            out.insert(vs);
        }
    }
    out
}

/// Cyclic walk order of a 2-regular vertex set.
pub fn cycle_walk(q: &Q, vs: &[usize]) -> Vec<usize> {
    let mut walk = vec![vs[0]];
    let mut prev = usize::MAX;
    let mut cur = vs[0];
    while walk.len() < vs.len() {
        let next = *vs
            .iter()
            .find(|&&w| w != cur && w != prev && !q.entry(cur, w).is_zero() && !walk.contains(&w))
            .unwrap();
        walk.push(next);
        prev = cur;
        cur = next;
    }
    walk
}

pub fn walk_is_oriented(q: &Q, walk: &[usize]) -> bool {
    let k = walk.len();
    let fwd = (0..k).all(|i| q.entry(walk[i], walk[(i + 1) % k]).is_positive());
    let bwd = (0..k).all(|i| q.entry(walk[i], walk[(i + 1) % k]).is_negative());
    fwd || bwd
}

/// Whether some sign pattern on the edges satisfies every chordless-cycle parity
/// rule, by trying all `2^#edges` patterns.
pub fn brute_admissible(q: &Q) -> bool {
    let edges = edges_of(q);
    assert!(edges.len() <= 20);
    let cycles: Vec<(Vec<usize>, bool)> = brute_chordless(q.n(), &edges)
        .into_iter()
        .map(|vs| {
            let w = cycle_walk(q, &vs);
            let o = walk_is_oriented(q, &w);
            let idx: Vec<usize> = (0..w.len())
                .map(|i| {
                    let (a, b) = (w[i], w[(i + 1) % w.len()]);
                    edges.iter().position(|&e| e == (a.min(b), a.max(b))).unwrap()
                })
                .collect();
            (idx, o)
        })
        .collect();
    (0u32..(1 << edges.len())).any(|signs| {
        cycles
            .iter()
            .all(|(idx, o)| (idx.iter().filter(|&&e| signs >> e & 1 == 1).count() % 2 == 1) == *o)
    })
}

fn rotate_to_zero(mut o: Vec<usize>) -> Vec<usize> {
    if let Some(p) = o.iter().position(|&v| v == 0) {
        o.rotate_left(p);
    }
    o
}

/// Breadth-first search over transpositions of cyclically adjacent vertices that
/// share no arrow, until `stop` accepts a member of the class.
pub fn search_wiggle_class(q: &Q, from: &[usize], mut stop: impl FnMut(&[usize]) -> bool) -> bool {
    let n = from.len();
    let start = rotate_to_zero(from.to_vec());
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(o) = queue.pop_front() {
        if stop(&o) {
            return true;
        }
        if n < 3 {
            continue;
        }
        for i in 0..n {
            let j = (i + 1) % n;
            if !q.entry(o[i], o[j]).is_zero() {
                continue;
            }
            let mut next = o.clone();
            next.swap(i, j);
            let next = rotate_to_zero(next);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    false
}

pub fn wiggle_reachable(q: &Q, from: &[usize], to: &[usize]) -> bool {
    let target = rotate_to_zero(to.to_vec());
    search_wiggle_class(q, from, |o| o == target.as_slice())
}

/// Every oriented path `u → w → x` turns right at `w`, i.e. `u, w, x` are clockwise.
pub fn turns_right_at(q: &Q, order: &[usize], w: usize) -> bool {
    let n = order.len();
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let cw = |u: usize, x: usize| (pos[w] + n - pos[u]) % n < (pos[x] + n - pos[u]) % n;
    (0..n).all(|u| (0..n).all(|x| !(q.entry(u, w).is_positive() && q.entry(w, x).is_positive()) || cw(u, x)))
}

/// Every vertex is proper in some member of the wiggle class of `order`.
pub fn class_is_proper(q: &Q, order: &[usize]) -> bool {
    let mut pending: Vec<usize> = (0..q.n()).collect();
    search_wiggle_class(q, order, |o| {
        pending.retain(|&w| !turns_right_at(q, o, w));
        pending.is_empty()
    }) || pending.is_empty()
}

pub fn rational_det(mut a: Vec<Vec<BigRational>>) -> BigRational {
    let n = a.len();
    let mut det = BigRational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return BigRational::zero();
        };
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        let pivot = a[k][k].clone();
        det *= pivot.clone();
        for i in k + 1..n {
            let f = a[i][k].clone() / pivot.clone();
            let (upper, lower) = a.split_at_mut(i);
            for (x, y) in lower[0][k..].iter_mut().zip(&upper[k][k..]) {
                *x -= f.clone() * y.clone();
            }
        }
    }
    det
}

fn rat(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

/// Coefficients (ascending) of the polynomial through `(x_i, y_i)`, by Lagrange
/// interpolation over ℚ.
pub fn interpolate(xs: &[BigRational], ys: &[BigRational]) -> Vec<BigRational> {
    let n = xs.len();
    let mut out = vec![BigRational::zero(); n];
    for i in 0..n {
        // Basis polynomial Π_{j≠i} (t − x_j)/(x_i − x_j).
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for j in 0..n {
            if j == i {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] += c.clone();
                next[k] -= c.clone() * xs[j].clone();
            }
            basis = next;
            denom *= xs[i].clone() - xs[j].clone();
        }
        for (k, c) in basis.iter().enumerate() {
            out[k] += c.clone() * ys[i].clone() / denom.clone();
        }
    }
    out
}

/// `det(f(t))` as ascending coefficients, sampling `t = 0..=deg` and interpolating.
pub fn interpolated_det(deg: usize, f: impl Fn(&BigRational) -> Vec<Vec<BigRational>>) -> Vec<BigInt> {
    let xs: Vec<BigRational> = (0..=deg as i64).map(|k| BigRational::from_integer(k.into())).collect();
    let ys: Vec<BigRational> = xs.iter().map(|x| rational_det(f(x))).collect();
    let mut c: Vec<BigInt> = interpolate(&xs, &ys)
        .into_iter()
        .map(|r| {
            assert!(r.is_integer(), "interpolated coefficient {r} is not an integer");
            r.to_integer()
        })
        .collect();
    while c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    c
}

/// `det(tU − Uᵀ)` for a matrix given in any fixed index order.
pub fn interpolated_alexander(u: &Matrix<Int>) -> Vec<BigInt> {
    let n = u.rows();
    interpolated_det(n, |t| {
        (0..n)
            .map(|i| (0..n).map(|j| t.clone() * rat(&u[(i, j)]) - rat(&u[(j, i)])).collect())
            .collect()
    })
}

/// `det(tI − W)`.
pub fn interpolated_charpoly(w: &Matrix<Int>) -> Vec<BigInt> {
    let n = w.rows();
    interpolated_det(n, |t| {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let d = if i == j { t.clone() } else { BigRational::zero() };
                        d - rat(&w[(i, j)])
                    })
                    .collect()
            })
            .collect()
    })
}

/// The unipotent companion in the linear order `tear`, solved directly from
/// `Uᵀ − U = B` with `U` upper unitriangular. Indexed by position in `tear`.
pub fn companion_by_definition(q: &Q, tear: &[usize]) -> Matrix<Int> {
    let n = tear.len();
    Matrix::from_fn(n, n, |i, j| {
        if i == j {
            int(1)
        } else if i < j {
            -q.entry(tear[i], tear[j]).clone()
        } else {
            int(0)
        }
    })
}

/// Free tree counts from Otter's formula, via rooted tree counts.
pub fn otter_free_tree_counts(max_n: usize) -> Vec<u64> {
    let mut r = vec![0u64; max_n + 1];
    r[1] = 1;
    for n in 1..max_n {
        // (n) r(n+1) = Σ_{k=1}^{n} (Σ_{d | k} d r(d)) r(n − k + 1)
        let mut s = 0u64;
        for k in 1..=n {
            let dsum: u64 = (1..=k).filter(|d| k % d == 0).map(|d| d as u64 * r[d]).sum();
            s += dsum * r[n - k + 1];
        }
        r[n + 1] = s / n as u64;
    }
    let mut t = vec![0u64; max_n + 1];
    for n in 1..=max_n {
        let mut pairs = 0u64;
        for k in 1..n {
            pairs += r[k] * r[n - k];
        }
        if n % 2 == 0 {
            pairs -= r[n / 2];
        }
        t[n] = r[n] - pairs / 2;
    }
    t
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Lexicographically least relabelled adjacency (as a flat vector) over all `n!`
/// relabellings, together with the frozen flags.
pub fn lexmin_key(b: &[Vec<i64>], frozen: &[bool]) -> (Vec<bool>, Vec<i64>) {
    let n = b.len();
    permutations(n)
        .into_iter()
        .map(|p| {
            // new vertex i is old vertex p[i]
            let f: Vec<bool> = (0..n).map(|i| frozen[p[i]]).collect();
            let m: Vec<i64> = (0..n * n).map(|k| b[p[k / n]][p[k % n]]).collect();
            (f, m)
        })
        .min()
        .unwrap()
}

pub fn quiver_rows(q: &Q) -> Vec<Vec<i64>> {
    (0..q.n())
        .map(|i| (0..q.n()).map(|j| i64::try_from(q.entry(i, j)).unwrap()).collect())
        .collect()
}

/// Labelled trees on `n ≥ 2` vertices from every Prüfer sequence.
pub fn prufer_trees(n: usize) -> Vec<Vec<(usize, usize)>> {
    let len = n - 2;
    let total = n.pow(len as u32);
    let mut out = Vec::with_capacity(total);
    for code in 0..total {
        let mut seq = Vec::with_capacity(len);
        let mut c = code;
        for _ in 0..len {
            seq.push(c % n);
            c /= n;
        }
        let mut degree = vec![1usize; n];
        for &s in &seq {
            degree[s] += 1;
        }
        let mut edges = Vec::with_capacity(n - 1);
        for &s in &seq {
            let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
            edges.push((leaf.min(s), leaf.max(s)));
            degree[leaf] -= 1;
            degree[s] -= 1;
        }
        let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
        edges.push((rest[0], rest[1]));
        out.push(edges);
    }
    out
}

/// Number of isomorphism classes among labelled trees on `n` vertices, using
/// parenthesis encodings rooted at the centre (the smaller one for two centres).
pub fn prufer_unlabeled_count(n: usize) -> usize {
    if n <= 2 {
        return 1;
    }
    let mut classes = HashSet::new();
    for edges in prufer_trees(n) {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let codes: Vec<String> = tree_centres(&adj)
            .into_iter()
            .map(|c| ahu(&adj, c, usize::MAX))
            .collect();
        classes.insert(codes.into_iter().min().unwrap());
    }
    classes.len()
}

fn tree_centres(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    let mut left = n;
    while left > 2 {
        left -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &w in &adj[v] {
                degree[w] -= 1;
                if degree[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer
}

fn ahu(adj: &[Vec<usize>], v: usize, parent: usize) -> String {
    let mut kids: Vec<String> = adj[v]
        .iter()
        .filter(|&&w| w != parent)
        .map(|&w| ahu(adj, w, v))
        .collect();
    kids.sort();
    format!("({})", kids.concat())
}
