//! Posets and digraphs from the worked examples, shared by the test targets.
#![allow(dead_code)]

use qsym_core::digraph::Digraph;
use qsym_core::io::{parse_digraph_inline, parse_poset_inline};
use qsym_core::poset::LabeledPoset;

pub fn poset(s: &str) -> LabeledPoset {
    parse_poset_inline(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

pub fn digraph(s: &str) -> Digraph {
    parse_digraph_inline(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

/// v1 -> v2 <- v3
pub fn directed_path3() -> Digraph {
    digraph("3; 1->2; 3->2")
}

/// The 4-element labeled poset whose K is F[2,2] + F[3,1].
pub fn worked_poset() -> LabeledPoset {
    poset("4; 1<3 W; 3<4 W; 3<2 S")
}

/// Three pairs of digraphs with equal X.
pub fn equal_x_digraph_pairs() -> [(Digraph, Digraph); 3] {
    let a1 = digraph("4; 1->3; 3->2; 3->4; 4->2");
    let a2 = digraph("4; 3->1; 2->3; 4->3; 2->4");
    let b1 = digraph("4; 1->3; 3->4; 2->1; 4->1; 3->2; 4->2; 2->4");
    let b2 = digraph("4; 1->3; 3->4; 1->2; 4->1; 2->3; 4->2; 2->4");
    let c1 = digraph("5; 1->3; 1->2; 2->3; 2->4; 3->4; 4->5");
    let c2 = digraph("5; 1->2; 1->3; 2->3; 3->4; 3->5; 4->5");
    [(a1, a2), (b1, b2), (c1, c2)]
}

/// Two pairs of non-isomorphic all-weak posets with equal K.
pub fn equal_k_poset_pairs() -> [(LabeledPoset, LabeledPoset); 2] {
    let p1 = poset("7; 1<5; 5<7; 4<7; 2<4; 2<6; 3<6; 1<3");
    let p2 = poset("7; 1<5; 5<6; 3<6; 1<3; 1<7; 4<7; 2<4; 2<6");
    let q1 = poset("10; 1<5; 5<10; 9<10; 8<9; 8<7; 4<7; 2<4; 2<6; 3<6; 1<3");
    let q2 = poset("10; 1<4; 4<5; 2<5; 2<8; 8<10; 9<10; 9<7; 7<6; 1<6; 1<3; 3<5");
    [(p1, p2), (q1, q2)]
}

/// Two all-strict 5-element trees with the same F-support.
pub fn same_support_strict_trees() -> (LabeledPoset, LabeledPoset) {
    let left = poset("5; 2<4 S; 1<4 S; 1<3 S; 3<5 S");
    (left.clone(), left.dual())
}

/// Two pairs of labeled trees with equal K.
pub fn equal_k_labeled_tree_pairs() -> [(LabeledPoset, LabeledPoset); 2] {
    let a = poset("6; 2<5 W; 2<4 W; 4<6 W; 1<3 W; 1<4 S");
    let b = poset("6; 1<3 W; 1<2 W; 2<5 W; 4<6 W; 1<4 S");
    let v = poset("3; 1<3 W; 1<2 S");
    let w = poset("3; 1<3 W; 2<3 S");
    [(a, b), (v, w)]
}

/// Bipartite all-weak posets told apart by pointed partitions of type (4,1,4,2).
pub fn pointed_partition_pair() -> (LabeledPoset, LabeledPoset) {
    let left = poset("11; 1<5; 1<6; 1<7; 2<7; 3<7; 3<8; 4<8; 4<9; 4<10; 4<11");
    let right = poset("11; 1<5; 1<6; 1<7; 2<7; 2<8; 3<8; 4<8; 4<9; 4<10; 4<11");
    (left, right)
}

/// A 13-element fair tree.
pub fn fair_tree_13() -> LabeledPoset {
    poset("13; 1<2 W; 1<3 W; 1<4 W; 2<5 W; 2<6 W; 10<12 W; 10<13 W; 6<11 S; 3<7 S; 3<8 S; 3<9 S; 4<10 S")
}

/// A 16-element member of the class built by unions and one-element
/// ordinal sums.
pub fn class_c_16() -> LabeledPoset {
    poset(
        "16; 14<12 S; 14<6 S; 14<7 S; 14<8 S; 4<2 S; 5<2 S; 6<2 S; 13<10 S; 13<11 S; 15<16 S; \
         12<4 W; 12<5 W; 7<3 W; 8<3 W; 2<1 W; 3<1 W; 9<1 W; 10<1 W; 11<1 W",
    )
}
