mod common;

use proptest::prelude::*;
use qsym_core::digraph::Digraph;
use qsym_core::qsym::{Basis, Composition, QSymExpr};

use common::*;

fn composition(max_weight: usize) -> impl Strategy<Value = Composition> {
    (1..=max_weight)
        .prop_flat_map(|n| (0u64..1 << (n - 1)).prop_map(move |mask| Composition::from_descent_mask(mask, n)))
}

fn f_expr(max_weight: usize) -> impl Strategy<Value = QSymExpr> {
    prop::collection::vec((composition(max_weight), -3i64..=3), 0..4)
        .prop_map(|terms| QSymExpr::from_terms(Basis::F, terms))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn basis_round_trip(a in composition(8)) {
        let f = QSymExpr::f(a.clone());
        prop_assert_eq!(f.to_m().m_to_f().unwrap(), f);
        let m = QSymExpr::m(a);
        prop_assert_eq!(m.to_f().f_to_m().unwrap(), m);
    }

    #[test]
    fn product_is_commutative_and_matches_quasishuffle(f in f_expr(4), g in f_expr(4)) {
        let fg = f.mul(&g);
        prop_assert_eq!(&fg, &g.mul(&f));
        let via_m = f.to_m().mul_quasishuffle(&g.to_m()).unwrap().m_to_f().unwrap();
        prop_assert_eq!(fg, via_m);
    }

    #[test]
    fn product_is_associative(f in f_expr(3), g in f_expr(3), h in f_expr(3)) {
        prop_assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
    }

    #[test]
    fn bar_is_an_involutive_automorphism(f in f_expr(4), g in f_expr(4)) {
        prop_assert_eq!(f.bar().unwrap().bar().unwrap(), f.clone());
        prop_assert_eq!(f.mul(&g).bar().unwrap(), f.bar().unwrap().mul(&g.bar().unwrap()));
    }

    #[test]
    fn specialization_is_multiplicative(f in f_expr(4), g in f_expr(4), k in 1usize..6) {
        let lhs = f.mul(&g).principal_specialization(k);
        let rhs = &f.principal_specialization(k) * &g.principal_specialization(k);
        prop_assert_eq!(lhs, rhs);
    }
}

fn all_digraphs(n: usize) -> Vec<Digraph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    (0..1u64 << pairs.len())
        .map(|m| {
            Digraph::new(
                n,
                pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| m >> i & 1 == 1)
                    .map(|(_, &p)| p),
            )
            .unwrap()
        })
        .collect()
}

#[test]
fn chromatic_function_matches_colourings() {
    for n in 1..=3 {
        for g in all_digraphs(n) {
            assert_eq!(
                g.chromatic_qsym_t().unwrap(),
                g.chromatic_qsym_t_by_colorings(n).unwrap(),
                "{g:?}"
            );
        }
    }
    for (g, h) in equal_x_digraph_pairs() {
        assert_eq!(
            g.chromatic_qsym_t_by_colorings(g.len()).unwrap(),
            h.chromatic_qsym_t_by_colorings(h.len()).unwrap()
        );
    }
}

#[test]
fn t_equal_one_is_symmetric() {
    for g in all_digraphs(3) {
        let x = g.chromatic_sym().unwrap();
        for (alpha, c) in x.terms() {
            let mut sorted = alpha.parts().to_vec();
            sorted.sort_unstable();
            for perm in [sorted.clone(), sorted.iter().rev().copied().collect()] {
                let beta = Composition::new(perm).unwrap();
                assert_eq!(&x.coeff(&beta), c, "{g:?}");
            }
        }
    }
}

#[test]
fn reversing_arcs_reverses_compositions() {
    for g in all_digraphs(3) {
        let x = g.chromatic_qsym_t().unwrap().by_composition();
        let y = g.reverse().chromatic_qsym_t().unwrap().by_composition();
        let flipped: std::collections::BTreeMap<_, _> = y.into_iter().map(|(a, p)| (a.reversed(), p)).collect();
        assert_eq!(x, flipped, "{g:?}");
        assert_eq!(
            g.reversal_invariance_check().unwrap(),
            g.chromatic_qsym_t().unwrap() == g.reverse().chromatic_qsym_t().unwrap()
        );
    }
    assert!(!directed_path3().reversal_invariance_check().unwrap());
    let [(a1, a2), _, _] = equal_x_digraph_pairs();
    assert_eq!(a1.reverse(), a2);
    assert!(a1.reversal_invariance_check().unwrap());
}

#[test]
fn chromatic_polynomial_from_colourings() {
    for g in all_digraphs(3) {
        for k in 1..=5u64 {
            let direct = (0..k.pow(g.len() as u32))
                .filter(|&code| {
                    let col: Vec<u64> = (0..g.len()).map(|i| code / k.pow(i as u32) % k).collect();
                    g.arcs().iter().all(|&(u, v)| col[u] != col[v])
                })
                .count();
            assert_eq!(
                g.chromatic_poly(k).unwrap(),
                num_bigint::BigInt::from(direct),
                "{g:?} at {k}"
            );
        }
    }
}
