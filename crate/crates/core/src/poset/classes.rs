//! Fair trees and the class 𝒞 of labeled posets built from single elements
//! by disjoint unions and one-element weak or strict ordinal sums.

use std::collections::HashMap;

use super::{bit, elements, full_mask, EdgeKind, LabeledPoset};

/// True when the edges in `all` are either all strict or all weak.
fn uniform(strict: u64, all: u64) -> bool {
    strict == 0 || strict == all
}

impl LabeledPoset {
    /// A rooted tree (unique minimal element) in which each element's edges
    /// to its children are all weak or all strict.
    pub fn is_fair_tree(&self) -> bool {
        self.is_rooted_tree() && (0..self.len()).all(|x| uniform(self.strict_upper_covers(x), self.upper_covers(x)))
    }

    fn strict_lower_covers(&self, x: usize) -> u64 {
        elements(self.lower_covers(x))
            .filter(|&y| self.cover_kind(y, x) == Some(EdgeKind::Strict))
            .fold(0, |m, y| m | bit(y))
    }

    /// Membership in 𝒞 by recursive decomposition: split into connected
    /// components, or peel a unique minimum or maximum whose edges are all of
    /// one kind.
    pub fn in_class_c_recursive(&self) -> bool {
        let mut memo = HashMap::new();
        self.class_c_within(full_mask(self.len()), &mut memo)
    }

    fn class_c_within(&self, mask: u64, memo: &mut HashMap<u64, bool>) -> bool {
        if mask.count_ones() <= 1 {
            return true;
        }
        if let Some(&hit) = memo.get(&mask) {
            return hit;
        }
        let comps = self.components_within(mask);
        let result = if comps.len() > 1 {
            comps.into_iter().all(|c| self.class_c_within(c, memo))
        } else {
            let minima: Vec<usize> = elements(mask).filter(|&x| self.lower_covers(x) & mask == 0).collect();
            let maxima: Vec<usize> = elements(mask).filter(|&x| self.upper_covers(x) & mask == 0).collect();
            let peel_min = minima.len() == 1 && {
                let m = minima[0];
                uniform(self.strict_upper_covers(m) & mask, self.upper_covers(m) & mask)
                    && self.class_c_within(mask & !bit(m), memo)
            };
            peel_min
                || (maxima.len() == 1 && {
                    let m = maxima[0];
                    uniform(self.strict_lower_covers(m) & mask, self.lower_covers(m) & mask)
                        && self.class_c_within(mask & !bit(m), memo)
                })
        };
        memo.insert(mask, result);
        result
    }

    /// Membership in 𝒞 by forbidden patterns: no induced bowtie or N, and no
    /// element whose upper covers (or lower covers) mix weak and strict edges.
    pub fn in_class_c_patterns(&self) -> bool {
        let n = self.len();
        for x in 0..n {
            if !uniform(self.strict_upper_covers(x), self.upper_covers(x))
                || !uniform(self.strict_lower_covers(x), self.lower_covers(x))
            {
                return false;
            }
        }
        !self.has_induced_bowtie_or_n()
    }

    fn has_induced_bowtie_or_n(&self) -> bool {
        let n = self.len();
        let inc = |a: usize, b: usize| !self.comparable(a, b);
        // a1 < b1, a2 < b1, a2 < b2 with a1 || a2, b1 || b2; then a1 < b2
        // gives a bowtie and a1 || b2 an N.
        for b1 in 0..n {
            let below_b1: Vec<usize> = elements(self.below(b1)).collect();
            for &a1 in &below_b1 {
                for &a2 in &below_b1 {
                    if a1 == a2 || !inc(a1, a2) {
                        continue;
                    }
                    for b2 in elements(self.above(a2)) {
                        if b2 != b1 && inc(b1, b2) {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    /// Membership in 𝒞 (the recursive decider).
    pub fn is_in_class_c(&self) -> bool {
        self.in_class_c_recursive()
    }
}
