use std::collections::BTreeMap;

use levi_schur_core::combinatorics::{Parity, Permutation, Shape};
use levi_schur_core::enhanced::{
    combine_levi, cross_parity, embed_alpha, enhanced_basis, layer_indices, levi_basis, levi_product, rho_levi,
    rho_xi0, LeviBasisElement,
};
use levi_schur_core::field::Rationals;
use levi_schur_core::hecke::{
    all_generators, all_relation_instances, check_relation, commutation_suite, d_layer_algebra, relation_suite, xi_gen,
    HeckeGenerator,
};
use levi_schur_core::linalg::{AlgebraSpan, Engine};
use levi_schur_core::schur::{pi_matrix, schur_basis, structure_constants, xi_matrix};
use proptest::prelude::*;

const Q: Rationals = Rationals;

fn shape(m: usize, n: usize, r: usize, v: Parity) -> Shape {
    Shape::new(m, n, r, v).unwrap()
}

fn both(m: usize, n: usize, r: usize) -> [Shape; 2] {
    [shape(m, n, r, Parity::Even), shape(m, n, r, Parity::Odd)]
}

fn permutation(len: usize) -> impl Strategy<Value = Permutation> {
    Just((0..len).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Permutation::new(v).unwrap())
}

#[test]
fn simple_transpositions_are_involutions() {
    for (m, n) in [(1, 1), (2, 1), (1, 2)] {
        for l in 2..=4 {
            let s = shape(m, n, l, Parity::Even);
            let d = s.letters().pow(l as u32);
            for i in 1..l {
                let p = pi_matrix(&Q, &Permutation::simple(l, i).unwrap(), &s).unwrap();
                assert_eq!(p.mul(&p, &Q).unwrap(), levi_schur_core::linalg::ExactMatrix::identity(&Q, d));
            }
        }
    }
    let s = shape(1, 1, 5, Parity::Even);
    for i in 1..5 {
        let p = pi_matrix(&Q, &Permutation::simple(5, i).unwrap(), &s).unwrap();
        assert!(p.mul(&p, &Q).unwrap() == levi_schur_core::linalg::ExactMatrix::identity(&Q, 32));
    }
}

#[test]
fn schur_representation_is_faithful() {
    let e = Engine::new(Q);
    for (m, n, l) in [(1, 1, 1), (1, 1, 2), (1, 1, 3), (2, 1, 2), (1, 2, 2), (2, 1, 3)] {
        let s = shape(m, n, l, Parity::Even);
        let basis = schur_basis(&s, l);
        let mats: Vec<_> = basis.iter().map(|b| xi_matrix(&Q, b, &s).unwrap()).collect();
        let d = s.letters().pow(l as u32);
        assert_eq!(e.span_of(d, &mats).unwrap().dimension(), basis.len(), "({m}|{n},{l})");
    }
}

#[test]
fn schur_elements_commute_with_the_symmetric_group() {
    for (m, n, l) in [(1, 1, 2), (1, 1, 3), (2, 1, 2), (1, 2, 2)] {
        let s = shape(m, n, l, Parity::Even);
        let perms: Vec<_> = Permutation::all(l).iter().map(|w| pi_matrix(&Q, w, &s).unwrap()).collect();
        for b in schur_basis(&s, l) {
            let x = xi_matrix(&Q, &b, &s).unwrap();
            for p in &perms {
                assert!(x.commutes_with(p, &Q).unwrap(), "{}", b.pair());
            }
        }
    }
}

#[test]
fn levi_representation_is_faithful_for_both_parities() {
    let e = Engine::new(Q);
    for (m, n, r) in [(1, 1, 1), (1, 1, 2), (2, 1, 2), (1, 2, 2), (1, 1, 3)] {
        for s in both(m, n, r) {
            let basis = levi_basis(&s);
            let mats: Vec<_> = basis.iter().map(|b| rho_levi(&Q, b, &s).unwrap()).collect();
            let d = enhanced_basis(&s).dim();
            assert_eq!(e.span_of(d, &mats).unwrap().dimension(), basis.len(), "{s}");
        }
    }
}

#[test]
fn levi_elements_preserve_their_layer_and_kill_the_others() {
    for s in both(2, 1, 2).into_iter().chain(both(1, 1, 3)) {
        for b in levi_basis(&s) {
            let m = rho_levi(&Q, &b, &s).unwrap();
            let own = layer_indices(&s, b.layer());
            assert!(m.is_supported_on(&own), "{b} at {s}");
        }
    }
}

#[test]
fn levi_span_is_the_sum_of_layer_spans() {
    let e = Engine::new(Q);
    for s in both(1, 1, 3) {
        let d = enhanced_basis(&s).dim();
        let basis = levi_basis(&s);
        let all: Vec<_> = basis.iter().map(|b| rho_levi(&Q, b, &s).unwrap()).collect();
        let mut sum = AlgebraSpan::zero(d);
        for l in 0..=s.r() {
            let layer: Vec<_> = basis.iter().filter(|b| b.layer() == l).map(|b| rho_levi(&Q, b, &s).unwrap()).collect();
            let part = e.span_of(d, &layer).unwrap();
            assert_eq!(part.dimension(), layer.len());
            sum = sum.sum(&Q, &part).unwrap();
        }
        assert_eq!(sum, e.span_of(d, &all).unwrap());
    }
}

#[test]
fn the_two_parities_agree_up_to_the_sign_gauge() {
    for (m, n, r) in [(1, 1, 2), (2, 1, 2), (1, 2, 2), (1, 1, 3)] {
        let rep = cross_parity(&Q, &shape(m, n, r, Parity::Even)).unwrap();
        assert!(rep.gauge_equal, "({m}|{n},{r})");
    }
}

fn assert_levi_products_match(s: &Shape) {
    let basis = levi_basis(s);
    let mats: Vec<_> = basis.iter().map(|b| rho_levi(&Q, b, s).unwrap()).collect();
    for (a, ma) in basis.iter().zip(&mats) {
        for (b, mb) in basis.iter().zip(&mats) {
            let coeffs = levi_product(a, b, s).unwrap();
            assert_eq!(combine_levi(&Q, &coeffs, s).unwrap(), ma.mul(mb, &Q).unwrap(), "{a} * {b} at {s}");
        }
    }
}

#[test]
fn levi_products_match_matrix_products() {
    for s in both(1, 1, 2).into_iter().chain(both(1, 1, 3)) {
        assert_levi_products_match(&s);
    }
}

#[test]
fn embeddings_are_multiplicative() {
    for s in both(1, 1, 3) {
        for l in 0..=s.r() {
            let basis = schur_basis(&s, l);
            for a in &basis {
                for b in &basis {
                    let ea = embed_alpha(l, a, &s).unwrap();
                    let eb = embed_alpha(l, b, &s).unwrap();
                    let product = rho_levi(&Q, &ea, &s).unwrap().mul(&rho_levi(&Q, &eb, &s).unwrap(), &Q).unwrap();
                    let expected: BTreeMap<LeviBasisElement, i64> = if l == 0 {
                        [(LeviBasisElement::Xi0, 1)].into()
                    } else {
                        structure_constants(a, b, &s)
                            .unwrap()
                            .into_iter()
                            .map(|(p, c)| (LeviBasisElement::new(p, &s).unwrap(), c))
                            .collect()
                    };
                    assert_eq!(combine_levi(&Q, &expected, &s).unwrap(), product);
                }
            }
        }
    }
}

#[test]
fn relations_hold_for_all_small_shapes() {
    for (m, n) in [(1, 0), (2, 0), (1, 1), (2, 1), (1, 2), (2, 2)] {
        for r in 1..=3 {
            for s in both(m, n, r) {
                let rep = relation_suite(&Q, &s).unwrap();
                assert!(rep.all_pass(), "{s}: {:?}", rep.failures);
                assert_eq!(rep.total(), all_relation_instances(r).len());
            }
        }
    }
}

#[test]
fn relation_spot_checks() {
    let s = shape(1, 1, 3, Parity::Odd);
    for rel in all_relation_instances(3).iter().filter(|r| matches!(r.id(), "braid" | "commute_above" | "orthogonal")) {
        assert!(check_relation(&Q, rel, &s).unwrap(), "{rel}");
    }
}

#[test]
fn levi_commutes_with_every_generator() {
    for (m, n) in [(1, 1), (2, 1), (1, 2)] {
        for r in [2, 3] {
            for s in both(m, n, r) {
                let rep = commutation_suite(&Q, &s).unwrap();
                assert!(rep.failures.is_empty(), "{s}: {:?}", rep.failures);
                assert_eq!(rep.checked, levi_basis(&s).len() * all_generators(r).len());
            }
        }
    }
}

#[test]
fn bottom_generator_is_the_xi0_projector() {
    for (m, n, r) in [(1, 1, 1), (2, 1, 2), (1, 1, 3)] {
        for s in both(m, n, r) {
            let x0 = xi_gen(&Q, &HeckeGenerator::x(Permutation::identity(0)), &s).unwrap();
            assert_eq!(x0, rho_xi0(&Q, &s).unwrap());
        }
    }
}

#[test]
fn layer_algebras_are_orthogonal() {
    let e = Engine::new(Q);
    for s in both(1, 1, 3) {
        let layers: Vec<_> = (0..=s.r()).map(|l| d_layer_algebra(&e, &s, l).unwrap()).collect();
        for (l, a) in layers.iter().enumerate() {
            for (k, b) in layers.iter().enumerate() {
                if l != k {
                    assert!(a.annihilates(&Q, b).unwrap(), "D_{l} D_{k} at {s}");
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn pi_is_a_right_action(s in permutation(4), m in permutation(4)) {
        let sh = shape(1, 1, 4, Parity::Even);
        let lhs = pi_matrix(&Q, &m, &sh).unwrap().mul(&pi_matrix(&Q, &s, &sh).unwrap(), &Q).unwrap();
        prop_assert_eq!(lhs, pi_matrix(&Q, &s.compose(&m).unwrap(), &sh).unwrap());
    }

    #[test]
    fn pi_is_a_right_action_in_degree_five(s in permutation(5), m in permutation(5)) {
        let sh = shape(1, 1, 5, Parity::Even);
        let lhs = pi_matrix(&Q, &m, &sh).unwrap().mul(&pi_matrix(&Q, &s, &sh).unwrap(), &Q).unwrap();
        prop_assert_eq!(lhs, pi_matrix(&Q, &s.compose(&m).unwrap(), &sh).unwrap());
    }
}
