//! Brute-force oracles over F_2 (and a little F_3) for the linear algebra
//! substrate. Every subspace here has at most 2^5 elements, so membership is
//! decided by listing vectors.

use std::collections::BTreeSet;

use glw_core::linalg::{enumerate_vectors, preimage, Matrix, Prime, Subspace};
use proptest::prelude::*;

const P2: Prime = Prime::TWO;
const CAP: u64 = 1 << 12;

fn all_vectors(p: Prime, n: usize) -> Vec<Vec<u32>> {
    enumerate_vectors(p, n, CAP).unwrap()
}

/// Every linear combination of the rows, listed by brute force.
fn row_span_set(p: Prime, rows: &[Vec<u32>], n: usize) -> BTreeSet<Vec<u32>> {
    let mut out = BTreeSet::new();
    for coeffs in all_vectors(p, rows.len()) {
        let mut v = vec![0u32; n];
        for (c, row) in coeffs.iter().zip(rows) {
            for (x, r) in v.iter_mut().zip(row) {
                *x = p.add(*x, p.mul(*c, *r));
            }
        }
        out.insert(v);
    }
    out
}

fn element_set(s: &Subspace) -> BTreeSet<Vec<u32>> {
    s.elements(CAP).unwrap().into_iter().collect()
}

fn matrix(p: Prime, rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(0..p.get(), rows * cols).prop_map(move |data| {
        Matrix::from_fn(p, rows, cols, |r, c| data[r * cols + c])
    })
}

fn subspace(p: Prime, n: usize) -> impl Strategy<Value = Subspace> {
    prop::collection::vec(prop::collection::vec(0..p.get(), n), 0..=n)
        .prop_map(move |vs| Subspace::span(p, n, &vs))
}

fn ambient_and_two() -> impl Strategy<Value = (Subspace, Subspace)> {
    (1usize..=5).prop_flat_map(|n| (subspace(P2, n), subspace(P2, n)))
}

fn ambient_and_three() -> impl Strategy<Value = (Subspace, Subspace, Subspace)> {
    (1usize..=5).prop_flat_map(|n| (subspace(P2, n), subspace(P2, n), subspace(P2, n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn rank_matches_row_space_enumeration(m in matrix(P2, 5, 5)) {
        let span = row_span_set(P2, &m.to_rows(), 5);
        prop_assert_eq!(span.len() as u64, 1u64 << m.rank());
    }

    #[test]
    fn rank_matches_enumeration_over_f3(m in matrix(Prime::new(3).unwrap(), 3, 4)) {
        let p = m.prime();
        let span = row_span_set(p, &m.to_rows(), 4);
        prop_assert_eq!(span.len() as u64, 3u64.pow(m.rank() as u32));
    }

    #[test]
    fn rref_is_idempotent_and_keeps_row_space(m in matrix(P2, 4, 5)) {
        let (r, rank) = m.rref();
        prop_assert_eq!(r.rows(), rank);
        prop_assert_eq!(r.rref().0, r.clone());
        prop_assert_eq!(row_span_set(P2, &r.to_rows(), 5), row_span_set(P2, &m.to_rows(), 5));
    }

    #[test]
    fn rank_nullity(m in matrix(P2, 4, 5)) {
        prop_assert_eq!(m.rank() + m.kernel().dim(), 5);
        prop_assert_eq!(m.image().dim(), m.rank());
    }

    #[test]
    fn solve_matches_enumeration(a in matrix(P2, 3, 4), b in prop::collection::vec(0u32..2, 3)) {
        let rhs = Matrix::from_columns(P2, 3, &[b.clone()]);
        let expected: BTreeSet<Vec<u32>> =
            all_vectors(P2, 4).into_iter().filter(|x| a.mul_vec(x) == b).collect();
        match a.solve(&rhs) {
            Err(_) => prop_assert!(expected.is_empty()),
            Ok(sol) => {
                let x0 = sol.particular.column(0);
                prop_assert_eq!(a.mul_vec(&x0), b);
                let found: BTreeSet<Vec<u32>> = sol
                    .kernel
                    .elements(CAP)
                    .unwrap()
                    .into_iter()
                    .map(|k| k.iter().zip(&x0).map(|(u, v)| P2.add(*u, *v)).collect())
                    .collect();
                prop_assert_eq!(found, expected);
                let kernel: BTreeSet<Vec<u32>> =
                    all_vectors(P2, 4).into_iter().filter(|x| a.mul_vec(x).iter().all(|&y| y == 0)).collect();
                prop_assert_eq!(element_set(&sol.kernel), kernel);
            }
        }
    }

    #[test]
    fn meet_matches_enumeration((u, v) in ambient_and_two()) {
        let expected: BTreeSet<_> = element_set(&u).intersection(&element_set(&v)).cloned().collect();
        prop_assert_eq!(element_set(&u.meet(&v)), expected);
    }

    #[test]
    fn join_matches_enumeration((u, v) in ambient_and_two()) {
        let n = u.ambient_dim();
        let mut gens = u.basis_vectors();
        gens.extend(v.basis_vectors());
        prop_assert_eq!(element_set(&u.join(&v)), row_span_set(P2, &gens, n));
        prop_assert_eq!(u.join(&v).dim() + u.meet(&v).dim(), u.dim() + v.dim());
    }

    #[test]
    fn lattice_laws((u, v, w) in ambient_and_three()) {
        prop_assert_eq!(u.meet(&v), v.meet(&u));
        prop_assert_eq!(u.join(&v), v.join(&u));
        prop_assert_eq!(u.meet(&v).meet(&w), u.meet(&v.meet(&w)));
        prop_assert_eq!(u.join(&v).join(&w), u.join(&v.join(&w)));
        prop_assert_eq!(u.meet(&u), u.clone());
        prop_assert_eq!(u.join(&u), u.clone());
        prop_assert_eq!(u.meet(&u.join(&v)), u.clone());
        prop_assert_eq!(u.join(&u.meet(&v)), u.clone());
    }

    #[test]
    fn canonical_form_is_equality((u, v) in ambient_and_two()) {
        prop_assert_eq!(u == v, element_set(&u) == element_set(&v));
    }

    #[test]
    fn preimage_matches_enumeration(
        (f, w) in (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| (matrix(P2, r, c), subspace(P2, r)))
    ) {
        let expected: BTreeSet<Vec<u32>> =
            all_vectors(P2, f.cols()).into_iter().filter(|x| w.contains(&f.mul_vec(x))).collect();
        let pre = preimage(&f, &w);
        prop_assert_eq!(element_set(&pre), expected);
        prop_assert!(f.kernel().is_subspace_of(&pre));
    }

    #[test]
    fn preimage_preserves_meets(
        (f, u, v) in (1usize..=5, 1usize..=5)
            .prop_flat_map(|(r, c)| (matrix(P2, r, c), subspace(P2, r), subspace(P2, r)))
    ) {
        prop_assert_eq!(preimage(&f, &u.meet(&v)), preimage(&f, &u).meet(&preimage(&f, &v)));
    }

    #[test]
    fn quotient_map_and_lift((s, x) in (1usize..=5).prop_flat_map(|n| (subspace(P2, n), prop::collection::vec(0u32..2, n)))) {
        let q = s.quotient_map();
        let l = s.quotient_lift();
        prop_assert_eq!(q.rows(), s.ambient_dim() - s.dim());
        prop_assert_eq!(q.mul(&l), Matrix::identity(P2, q.rows()));
        prop_assert_eq!(q.mul_vec(&x).iter().all(|&y| y == 0), s.contains(&x));
    }
}

#[test]
fn exhaustive_meets_in_dimension_three() {
    // Every pair of subspaces of F_2^3: 16 subspaces, 256 pairs.
    let vecs = all_vectors(P2, 3);
    let mut subspaces: BTreeSet<Subspace> = BTreeSet::new();
    for a in &vecs {
        for b in &vecs {
            subspaces.insert(Subspace::span(P2, 3, &[a.clone(), b.clone()]));
        }
    }
    subspaces.insert(Subspace::full(P2, 3));
    assert_eq!(subspaces.len(), 16);
    for u in &subspaces {
        for v in &subspaces {
            let expected: BTreeSet<_> = element_set(u).intersection(&element_set(v)).cloned().collect();
            assert_eq!(element_set(&u.meet(v)), expected);
            assert_eq!(u.join(v).dim() + u.meet(v).dim(), u.dim() + v.dim());
        }
    }
}
