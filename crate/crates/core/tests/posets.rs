mod common;

use std::collections::BTreeMap;

use qsym_core::poset::*;
use qsym_core::Error;

use common::*;

/// All posets on `n` elements up to isomorphism, all weak.
fn weak_posets(n: usize) -> Vec<LabeledPoset> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let mut seen = BTreeMap::new();
    for m in 0..1u64 << pairs.len() {
        let rel: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| m >> i & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        let p = LabeledPoset::from_relations(n, &rel, EdgeKind::Weak).unwrap();
        seen.entry(p.canonical_key().unwrap()).or_insert(p);
    }
    seen.into_values().collect()
}

fn assignments(p: &LabeledPoset) -> impl Iterator<Item = LabeledPoset> + '_ {
    (0..1u64 << p.covers().len()).map(move |m| {
        LabeledPoset::new(
            p.len(),
            p.covers().iter().enumerate().map(|(i, c)| {
                let k = if m >> i & 1 == 1 {
                    EdgeKind::Strict
                } else {
                    EdgeKind::Weak
                };
                Cover::new(c.lo, c.hi, k)
            }),
        )
        .unwrap()
    })
}

fn labeled_posets(n: usize) -> Vec<LabeledPoset> {
    weak_posets(n)
        .iter()
        .flat_map(|p| assignments(p).collect::<Vec<_>>())
        .collect()
}

#[test]
fn poset_counts() {
    let counts: Vec<usize> = (1..=5).map(|n| weak_posets(n).len()).collect();
    assert_eq!(counts, vec![1, 2, 5, 16, 63]);
}

#[test]
fn canonical_key_agrees_with_bruteforce() {
    for n in 1..=4 {
        let all = labeled_posets(n);
        for p in &all {
            for q in &all {
                let same = p.canonical_key().unwrap() == q.canonical_key().unwrap();
                assert_eq!(same, is_isomorphic_bruteforce(p, q), "{p:?} vs {q:?}");
            }
        }
    }
}

#[test]
fn canonical_key_is_labelling_independent() {
    let perm = [4, 2, 0, 3, 1];
    for p in labeled_posets(5) {
        let q = p.relabel(&perm).unwrap();
        assert_eq!(p.canonical_key().unwrap(), q.canonical_key().unwrap(), "{p:?}");
    }
}

#[test]
fn class_c_deciders_agree() {
    for n in 1..=5 {
        for p in labeled_posets(n) {
            assert_eq!(p.in_class_c_recursive(), p.in_class_c_patterns(), "{p:?}");
        }
    }
    for p in [fair_tree_13(), class_c_16()] {
        assert!(p.in_class_c_recursive() && p.in_class_c_patterns(), "{p:?}");
    }
    assert!(fair_tree_13().is_fair_tree());
    assert!(!class_c_16().is_fair_tree());
}

#[test]
fn enumerator_agrees_with_extensions() {
    for n in 1..=5 {
        for p in labeled_posets(n) {
            match p.enumerator_f() {
                Ok(k) => {
                    assert_eq!(k, p.enumerator_f_by_extensions().unwrap(), "{p:?}");
                    let lead = p.leading_term_check().unwrap();
                    assert!(lead.matches, "{p:?}: {lead:?}");
                }
                Err(e) => assert_eq!(e, Error::Unrealizable),
            }
        }
    }
}

#[test]
fn enumerator_does_not_depend_on_labeling() {
    for n in 1..=4 {
        for p in labeled_posets(n) {
            let Ok(k) = p.enumerator_f() else { continue };
            for l in p.labelings().unwrap() {
                assert_eq!(p.enumerator_f_with(&l).unwrap(), k, "{p:?} with {l:?}");
            }
        }
    }
}

#[test]
fn antichain_counts_two_ways() {
    for n in 1..=5 {
        for p in weak_posets(n) {
            assert_eq!(
                p.anti_table().unwrap().antichain_counts(),
                p.antichain_counts().unwrap()
            );
            let shape = p.greene_shape().unwrap();
            assert_eq!(shape.0.iter().sum::<usize>(), n);
        }
    }
}

#[test]
fn equal_k_pairs_share_necessary_invariants() {
    let mut pairs: Vec<(LabeledPoset, LabeledPoset)> = equal_k_poset_pairs().into_iter().collect();
    pairs.push(pointed_partition_pair());
    for (p, q) in &pairs[..2] {
        assert_eq!(p.jump_vector(), q.jump_vector());
        assert_eq!(p.jump_pairs(), q.jump_pairs());
        assert_eq!(p.greene_shape().unwrap(), q.greene_shape().unwrap());
        assert_eq!(p.anti_table().unwrap(), q.anti_table().unwrap());
        assert_eq!(p.dual().enumerator_f().unwrap(), q.dual().enumerator_f().unwrap());
    }
    // the rank-one pair agrees on degree data but not on pointed partitions
    let (l, r) = &pairs[2];
    assert_eq!(l.jump_vector(), r.jump_vector());
    let w = qsym_core::comp![4, 1, 4, 2];
    assert_ne!(
        l.pointed_partition_exists(&w).unwrap(),
        r.pointed_partition_exists(&w).unwrap()
    );
}

#[test]
fn pointed_partitions_need_matching_weight() {
    let (l, _) = pointed_partition_pair();
    assert_eq!(
        l.pointed_partition_exists(&qsym_core::comp![4, 1]),
        Err(Error::WeightMismatch { weight: 5, n: 11 })
    );
    assert_eq!(
        worked_poset().pointed_partition_exists(&qsym_core::comp![4]),
        Err(Error::NotAllWeak)
    );
}

#[test]
fn guards_on_large_inputs() {
    let big = LabeledPoset::antichain(21);
    assert!(matches!(big.enumerator_f(), Err(Error::GuardExceeded { .. })));
}
