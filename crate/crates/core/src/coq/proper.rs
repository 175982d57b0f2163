use super::{Coq, CyclicOrder};
use crate::error::{Error, Result};
use crate::graph::build_l_graph;
use crate::scalar::Scalar;
use crate::seed::Seed;

/// Oriented 2-paths `u → v → w` that fail to turn right at `v`.
pub fn improper_paths<T: Scalar>(c: &Coq<T>, v: usize) -> Vec<(usize, usize, usize)> {
    c.quiver()
        .two_paths_through(v)
        .into_iter()
        .filter(|&(u, _, w)| !c.order().clockwise(u, v, w))
        .collect()
}

pub fn is_proper_vertex<T: Scalar>(c: &Coq<T>, v: usize) -> bool {
    improper_paths(c, v).is_empty()
}

/// Whether every vertex is proper in some member of the wiggle class.
pub fn is_proper_class<T: Scalar>(c: &Coq<T>) -> bool {
    let mut pending: Vec<usize> = (0..c.n()).collect();
    c.explore_wiggle_class(usize::MAX, |rep| {
        pending.retain(|&v| !is_proper_vertex(rep, v));
        pending.is_empty()
    });
    pending.is_empty()
}

/// A member of the wiggle class of `c` in which `v` is proper.
fn proper_representative<T: Scalar>(c: &Coq<T>, v: usize) -> Option<Coq<T>> {
    if is_proper_vertex(c, v) {
        return Some(c.clone());
    }
    let mut found = None;
    c.explore_wiggle_class(usize::MAX, |rep| {
        if is_proper_vertex(rep, v) {
            found = Some(rep.clone());
            true
        } else {
            false
        }
    });
    found
}

/// Mutate the quiver at `v` and move `v` clockwise past the new `In(v)` without
/// passing the new `Out(v)`.
pub fn proper_mutate<T: Scalar>(c: &Coq<T>, v: usize) -> Result<Coq<T>> {
    c.quiver().check_mutable(v)?;
    let Some(rep) = proper_representative(c, v) else {
        return Err(Error::NotProper {
            vertex: v,
            violations: improper_paths(c, v),
        });
    };
    let q = rep.quiver();
    let new_in = q.out_set(v);
    let new_out = q.in_set(v);
    let mut rest = rep.order().as_slice().to_vec();
    let p = rest.iter().position(|&x| x == v).expect("v is ordered");
    rest.rotate_left(p);
    rest.remove(0);
    // Clockwise from v every new in-neighbour precedes every new out-neighbour.
    let mut insert_at = 0;
    for (k, x) in rest.iter().enumerate() {
        if new_out.contains(x) {
            break;
        }
        if new_in.contains(x) {
            insert_at = k + 1;
        }
    }
    rest.insert(insert_at, v);
    Coq::with_order(q.mutate(v)?, CyclicOrder::from_linear_unchecked(rest))
}

/// Cyclic closure of the least-index linear extension of `L_v(Q_t)`.
pub fn canonical_order<T: Scalar>(s: &Seed<T>, v: usize) -> Result<CyclicOrder> {
    let l = build_l_graph(s, v)?;
    Ok(CyclicOrder::from_linear_unchecked(l.linear_extension()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coq::tests::four_vertex;
    use crate::quiver::Quiver;

    type Q = Quiver<i64>;

    fn coq(order: &[usize]) -> Coq<i64> {
        Coq::new(four_vertex(), order.to_vec()).unwrap()
    }

    #[test]
    fn four_vertex_properness() {
        for order in [
            [0, 1, 2, 3],
            [0, 2, 1, 3],
            [0, 1, 3, 2],
            [0, 2, 3, 1],
            [0, 3, 2, 1],
            [0, 3, 1, 2],
        ] {
            let c = coq(&order);
            assert!(is_proper_vertex(&c, 0));
            assert!(is_proper_vertex(&c, 3));
        }
        for order in [[0, 1, 2, 3], [0, 2, 1, 3], [0, 1, 3, 2]] {
            assert!(is_proper_vertex(&coq(&order), 1));
        }
        for order in [[0, 2, 3, 1], [0, 3, 2, 1], [0, 3, 1, 2]] {
            assert!(!is_proper_vertex(&coq(&order), 1));
        }
        assert!(is_proper_class(&coq(&[0, 1, 2, 3])));
        assert!(!is_proper_class(&coq(&[0, 2, 3, 1])));
        assert!(!is_proper_class(&coq(&[0, 1, 3, 2])));
        assert!(!is_proper_class(&coq(&[0, 3, 2, 1])));
    }

    #[test]
    fn proper_mutation_sequence() {
        let q = Q::from_i64_arrows(4, &[(1, 0, 1), (2, 0, 1), (2, 3, 1), (1, 3, 2), (3, 0, 3)]).unwrap();
        let c0 = Coq::new(q, vec![0, 1, 2, 3]).unwrap();
        let c1 = proper_mutate(&c0, 0).unwrap();
        assert_eq!(c1.order().as_slice(), &[0, 1, 2, 3]);
        let c2 = proper_mutate(&c1, 1).unwrap();
        assert_eq!(c2.order().as_slice(), &[0, 2, 3, 1]);
        let expect2 = Q::from_i64_arrows(4, &[(0, 2, 1), (2, 3, 1), (1, 0, 1), (0, 3, 5), (3, 1, 2)]).unwrap();
        assert_eq!(c2.quiver(), &expect2);
        let c3 = proper_mutate(&c2, 2).unwrap();
        assert_eq!(c3.order().as_slice(), &[0, 3, 2, 1]);
        let expect3 = Q::from_i64_arrows(4, &[(1, 0, 1), (2, 0, 1), (3, 2, 1), (3, 1, 2), (0, 3, 6)]).unwrap();
        assert_eq!(c3.quiver(), &expect3);
        // Mutating twice at the same vertex comes back up to wiggles.
        let back = proper_mutate(&c3, 2).unwrap();
        assert!(back.wiggle_equivalent(&c2).unwrap());
    }

    #[test]
    fn improper_vertex_rejected() {
        let c = coq(&[0, 2, 3, 1]);
        match proper_mutate(&c, 1) {
            Err(Error::NotProper { vertex, violations }) => {
                assert_eq!(vertex, 1);
                assert_eq!(violations, vec![(0, 1, 3)]);
            }
            other => panic!("expected NotProper, got {other:?}"),
        }
    }
}
