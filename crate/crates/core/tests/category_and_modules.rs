mod common;

use std::sync::Arc;

use common::*;
use glw_core::cmodule::*;
use glw_core::linalg::{Matrix, Subspace};
use glw_core::presentation::{parse_category, CategoryData, Morphism};
use glw_core::sample::{random_module, random_nat, random_subfunctor};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn all_basis_morphisms(cat: &CategoryData) -> Vec<Morphism> {
    let n = cat.num_objects();
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for k in 0..cat.hom_dim(a, b) {
                out.push(cat.basis_morphism(a, b, k));
            }
        }
    }
    out
}

#[test]
fn w5_window_shape() {
    let q = parse_category(W5).unwrap();
    assert_eq!(q.objects.len(), 5);
    assert_eq!(q.arrows.len(), 8);
    assert_eq!(q.relations.len(), 10);
    assert_eq!(q.nilpotency, 3);
}

#[test]
fn w5_hom_dimensions_at_interior_vertex() {
    let cat = w5();
    let v2 = obj(&cat, "v2");
    let row: Vec<usize> = (0..5).map(|b| cat.hom_dim(v2, b)).collect();
    assert_eq!(row, vec![0, 1, 2, 1, 0]);
    let labels: Vec<String> = (0..2).map(|k| cat.format_morphism(&cat.basis_morphism(v2, v2, k))).collect();
    assert_eq!(labels, vec!["1", "b2.a2"]);
    assert_eq!(cat.format_morphism(&cat.basis_morphism(v2, obj(&cat, "v3"), 0)), "a2");
    assert_eq!(cat.format_morphism(&cat.basis_morphism(v2, obj(&cat, "v1"), 0)), "b1");
}

#[test]
fn w5_compositions() {
    let cat = w5();
    let a2 = cat.arrow(cat.quiver().arrow_index("a2").unwrap());
    let b2 = cat.arrow(cat.quiver().arrow_index("b2").unwrap());
    assert!(cat.compose(&a2, &b2).unwrap().is_zero());
    let ba = cat.compose(&b2, &a2).unwrap();
    assert!(!ba.is_zero());
    assert!(cat.compose(&ba, &ba).unwrap().is_zero());
}

#[test]
fn every_length_three_path_vanishes_in_w5() {
    let cat = w5();
    for path in cat.paths_of_length(3) {
        assert!(cat.path_morphism(&path).is_zero(), "{}", path.label(cat.quiver()));
    }
}

#[test]
fn composition_is_associative_and_unital() {
    for cat in [w5(), dual(), point()] {
        let basis = all_basis_morphisms(&cat);
        for f in &basis {
            let id_s = cat.identity(f.source);
            let id_t = cat.identity(f.target);
            assert_eq!(&cat.compose(f, &id_s).unwrap(), f);
            assert_eq!(&cat.compose(&id_t, f).unwrap(), f);
            for g in basis.iter().filter(|g| g.source == f.target) {
                let gf = cat.compose(g, f).unwrap();
                for h in basis.iter().filter(|h| h.source == g.target) {
                    let left = cat.compose(&cat.compose(h, g).unwrap(), f).unwrap();
                    let right = cat.compose(h, &gf).unwrap();
                    assert_eq!(left, right);
                }
            }
        }
    }
}

#[test]
fn endomorphisms_of_v2_are_closed_under_composition() {
    let cat = w5();
    let v2 = obj(&cat, "v2");
    let all = cat.enumerate_morphisms(v2, v2, 1 << 20).unwrap();
    assert_eq!(all.len(), 4);
    for g in &all {
        for f in &all {
            assert!(all.contains(&cat.compose(g, f).unwrap()));
        }
    }
    assert_eq!(cat.enumerate_morphisms(v2, obj(&cat, "v0"), 1 << 20).unwrap().len(), 1);
}

#[test]
fn presentation_round_trips_through_display() {
    for text in [W5, DUAL, POINT] {
        let q = parse_category(text).unwrap();
        let again = parse_category(&q.to_string()).unwrap();
        assert_eq!(q, again);
    }
}

#[test]
fn representables() {
    let cat = w5();
    let v2 = obj(&cat, "v2");
    let p = representable(&cat, v2);
    assert_eq!(p.dims(), &[0, 1, 2, 1, 0]);
    let by_hand = "module over w5.gcat
space v1 dim 1
space v2 dim 2
space v3 dim 1
map a1 = [[0],[0]]
map b1 = [[1,0]]
map a2 = [[1,0]]
map b2 = [[0],[1]]
";
    assert_eq!(parse_module(by_hand, &cat).unwrap(), p);

    let pt = point();
    assert_eq!(representable(&pt, 0).dims(), &[1]);
}

#[test]
fn yoneda_element_of_the_loop() {
    let cat = w5();
    let v2 = obj(&cat, "v2");
    let p = representable(&cat, v2);
    let eta = yoneda_element(&p, v2, &[0, 1]);
    assert!(eta.is_natural());
    assert_eq!(eta.components[v2], Matrix::from_rows(cat.prime(), 2, &[vec![0, 0], vec![1, 0]]));
    assert!(yoneda_element(&p, v2, &[0, 0]).is_zero());
    assert_eq!(yoneda_element(&p, v2, &[1, 0]), NatTransform::identity(&p));
}

#[test]
fn nat_hom_small_cases() {
    let d = dual();
    let p = representable(&d, 0);
    assert_eq!(nat_hom(&p, &p).dim(), 2);
    let cat = w5();
    let m = representable(&cat, 2);
    assert_eq!(nat_hom(&CModule::zero(&cat), &m).dim(), 0);
    assert_eq!(nat_hom(&m, &CModule::zero(&cat)).dim(), 0);
}

#[test]
fn generated_subfunctors_and_quotients_in_w5() {
    let cat = w5();
    let v2 = obj(&cat, "v2");
    let v1 = obj(&cat, "v1");
    let v3 = obj(&cat, "v3");
    let p = representable(&cat, v2);
    assert!(sub_generated(&p, &[]).is_zero());
    assert!(sub_generated(&p, &[(v2, vec![1, 0])]).is_full());
    let loop_ideal = sub_generated(&p, &[(v2, vec![0, 1])]);
    assert_eq!(loop_ideal.dims(), vec![0, 0, 1, 0, 0]);
    let (q, pi) = quotient(&p, &loop_ideal);
    assert_eq!(q.dims(), &[0, 1, 1, 1, 0]);
    assert_eq!(kernel(&pi).spaces, loop_ideal.spaces);

    let b1 = sub_generated(&p, &[(v1, vec![1])]);
    let a2 = sub_generated(&p, &[(v3, vec![1])]);
    assert!(sub_meet(&b1, &a2).is_zero());
    assert_eq!(sub_join(&b1, &loop_ideal).dims(), vec![0, 1, 1, 0, 0]);
    assert_eq!(sub_meet(&b1, &Subfunctor::full(&p)).spaces, b1.spaces);
    assert_eq!(sub_join(&b1, &Subfunctor::zero(&p)).spaces, b1.spaces);
}

#[test]
fn relation_violation_names_the_relation() {
    let d = dual();
    let text = "module over d.gcat\nspace x dim 1\nmap e = [[1]]\n";
    let err = parse_module(text, &d).unwrap_err();
    assert!(err.to_string().contains("relation e.e violated"), "{err}");
}

#[test]
fn all_subfunctors_of_the_dual_representable() {
    // Brute force: subspaces of F_2^2 closed under the nilpotent action.
    let d = dual();
    let p = representable(&d, 0);
    let e = p.action(0).clone();
    let vecs = glw_core::linalg::enumerate_vectors(d.prime(), 2, 16).unwrap();
    let mut closed = std::collections::BTreeSet::new();
    for a in &vecs {
        for b in &vecs {
            let s = Subspace::span(d.prime(), 2, &[a.clone(), b.clone()]);
            if s.image_under(&e).is_subspace_of(&s) {
                closed.insert(s);
            }
        }
    }
    let found = all_subfunctors(&p, 1 << 20, 64).unwrap();
    assert_eq!(found.len(), 3);
    assert_eq!(found.iter().map(|s| s.spaces[0].clone()).collect::<std::collections::BTreeSet<_>>(), closed);
}

fn random_pair(cat: &Arc<CategoryData>, seed: u64) -> (CModule, CModule, NatTransform, Subfunctor) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = random_module(cat, 3, &mut rng).unwrap();
    let n = random_module(cat, 3, &mut rng).unwrap();
    let f = random_nat(&m, &n, &mut rng);
    let s = random_subfunctor(&m, &mut rng);
    (m, n, f, s)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn yoneda_dimension(seed in any::<u64>(), use_w5 in any::<bool>()) {
        let cat = if use_w5 { w5() } else { dual() };
        let (m, _, _, _) = random_pair(&cat, seed);
        for c in 0..cat.num_objects() {
            prop_assert_eq!(nat_hom(&representable(&cat, c), &m).dim(), m.dim(c));
        }
    }

    #[test]
    fn kernel_image_rank_nullity(seed in any::<u64>()) {
        let cat = w5();
        let (m, _, f, _) = random_pair(&cat, seed);
        prop_assert!(f.is_natural());
        let (k, i) = (kernel(&f), image(&f));
        prop_assert!(k.is_closed() && i.is_closed());
        for c in 0..5 {
            prop_assert_eq!(k.spaces[c].dim() + i.spaces[c].dim(), m.dim(c));
        }
    }

    #[test]
    fn nat_basis_kernels_and_images_are_subfunctors(seed in any::<u64>()) {
        let cat = w5();
        let (m, n, _, _) = random_pair(&cat, seed);
        for t in nat_hom(&m, &n).basis() {
            prop_assert!(t.is_natural());
            prop_assert!(kernel(&t).is_closed());
            prop_assert!(image(&t).is_closed());
        }
    }

    #[test]
    fn quotient_kernel_is_the_submodule(seed in any::<u64>()) {
        let cat = w5();
        let (m, _, _, s) = random_pair(&cat, seed);
        prop_assert!(s.is_closed());
        let (q, pi) = quotient(&m, &s);
        prop_assert!(q.validate().is_ok());
        prop_assert!(pi.is_natural() && pi.is_epi());
        prop_assert_eq!(kernel(&pi).spaces, s.spaces.clone());
        prop_assert!(s.inclusion().is_natural() && s.inclusion().is_mono());
    }

    #[test]
    fn gmod_round_trip(seed in any::<u64>()) {
        let cat = w5();
        let (m, _, _, _) = random_pair(&cat, seed);
        prop_assert_eq!(parse_module(&m.to_gmod("w5.gcat"), &cat).unwrap(), m);
    }

    #[test]
    fn composition_is_bilinear(g in prop::collection::vec(0u32..2, 2), f in prop::collection::vec(0u32..2, 2), h in prop::collection::vec(0u32..2, 2)) {
        let cat = w5();
        let p = cat.prime();
        let sum: Vec<u32> = f.iter().zip(&h).map(|(a, b)| p.add(*a, *b)).collect();
        let lhs = cat.compose_coords(2, 2, 2, &g, &sum);
        let a = cat.compose_coords(2, 2, 2, &g, &f);
        let b = cat.compose_coords(2, 2, 2, &g, &h);
        prop_assert_eq!(lhs, a.iter().zip(&b).map(|(x, y)| p.add(*x, *y)).collect::<Vec<_>>());
    }
}
