//! Combinatorial invariants that any two posets with equal enumerators must
//! share: jump statistics, order-ideal tables, antichain counts, Greene
//! shapes, pointed partitions and the leading monomial.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::{bit, elements, full_mask, EdgeKind, LabeledPoset};
use crate::error::{Error, Result};
use crate::guard;
use crate::qsym::Composition;

/// `j_i` = number of elements of jump `i`, for `i = 0, 1, ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct JumpVector(pub Vec<usize>);

/// Partition `(c_1 - c_0, c_2 - c_1, ...)` where `c_k` is the largest union
/// of `k` chains.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GreeneShape(pub Vec<usize>);

/// `anti[(k, i, j)]` = number of `k`-element order ideals with `i` maximal
/// elements whose complement has `j` minimal elements.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AntiTable(pub BTreeMap<(usize, usize, usize), u64>);

fn fmt_tuple(f: &mut fmt::Formatter<'_>, v: &[usize]) -> fmt::Result {
    write!(f, "(")?;
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, ")")
}

impl fmt::Display for JumpVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_tuple(f, &self.0)
    }
}

impl fmt::Display for GreeneShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_tuple(f, &self.0)
    }
}

impl AntiTable {
    /// Antichains by size, recovered from the maximal elements of ideals.
    pub fn antichain_counts(&self) -> BTreeMap<usize, u64> {
        let mut out = BTreeMap::new();
        for (&(_, i, _), &c) in &self.0 {
            *out.entry(i).or_insert(0) += c;
        }
        out
    }
}

/// Leading monomial of `K` in the lexicographic order on exponent vectors,
/// compared against `x^jump` with the strict-edge jump.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeadingTerm {
    pub exponents: Vec<u32>,
    pub coeff: BigInt,
    pub jump: JumpVector,
    pub matches: bool,
}

fn histogram(values: &[usize]) -> Vec<usize> {
    let top = values.iter().copied().max().map_or(0, |m| m + 1);
    let mut h = vec![0; top];
    for &v in values {
        h[v] += 1;
    }
    h
}

impl LabeledPoset {
    /// Per element, the number of edges in a longest chain down to a minimal
    /// element. With `strict_only`, only strict edges along the chain count.
    fn down_lengths(&self, strict_only: bool) -> Vec<usize> {
        let mut len = vec![0usize; self.len()];
        for x in self.natural_order() {
            for y in elements(self.lower_covers(x)) {
                let step = if strict_only && self.cover_kind(y, x) == Some(EdgeKind::Weak) {
                    0
                } else {
                    1
                };
                len[x] = len[x].max(len[y] + step);
            }
        }
        len
    }

    fn up_lengths(&self) -> Vec<usize> {
        let mut len = vec![0usize; self.len()];
        for x in self.natural_order().into_iter().rev() {
            for y in elements(self.upper_covers(x)) {
                len[x] = len[x].max(len[y] + 1);
            }
        }
        len
    }

    /// Jump of each element (edges of a longest chain down to a minimal one).
    pub fn jumps(&self) -> Vec<usize> {
        self.down_lengths(false)
    }

    /// Up-jump of each element (edges of a longest chain up to a maximal one).
    pub fn up_jumps(&self) -> Vec<usize> {
        self.up_lengths()
    }

    /// Jump counting only the strict edges of a chain.
    pub fn strict_jumps(&self) -> Vec<usize> {
        self.down_lengths(true)
    }

    pub fn jump_vector(&self) -> JumpVector {
        JumpVector(histogram(&self.jumps()))
    }

    pub fn strict_jump_vector(&self) -> JumpVector {
        JumpVector(histogram(&self.strict_jumps()))
    }

    /// Number of elements with each (jump, up-jump) pair.
    pub fn jump_pairs(&self) -> BTreeMap<(usize, usize), usize> {
        let mut out = BTreeMap::new();
        for (d, u) in self.jumps().into_iter().zip(self.up_jumps()) {
            *out.entry((d, u)).or_insert(0) += 1;
        }
        out
    }

    /// All order ideals, as element masks.
    pub fn order_ideals(&self) -> Result<Vec<u64>> {
        guard::check("order ideal enumeration", self.len(), 24)?;
        let mut seen: HashSet<u64> = HashSet::new();
        let mut stack = vec![0u64];
        seen.insert(0);
        while let Some(ideal) = stack.pop() {
            for x in elements(self.addable(ideal)) {
                let next = ideal | bit(x);
                if seen.insert(next) {
                    stack.push(next);
                }
            }
        }
        let mut out: Vec<u64> = seen.into_iter().collect();
        out.sort_unstable();
        Ok(out)
    }

    pub fn anti_table(&self) -> Result<AntiTable> {
        let mut table = AntiTable::default();
        for ideal in self.order_ideals()? {
            let maximal = elements(ideal).filter(|&x| self.upper_covers(x) & ideal == 0).count();
            let complement_min = self.addable(ideal).count_ones() as usize;
            *table
                .0
                .entry((ideal.count_ones() as usize, maximal, complement_min))
                .or_insert(0) += 1;
        }
        Ok(table)
    }

    /// Antichains by size, by direct enumeration.
    pub fn antichain_counts(&self) -> Result<BTreeMap<usize, u64>> {
        guard::check("antichain enumeration", self.len(), 24)?;
        let n = self.len();
        let incomparable: Vec<u64> = (0..n)
            .map(|x| full_mask(n) & !(self.above(x) | self.below(x) | bit(x)))
            .collect();
        let mut out = BTreeMap::new();
        fn go(inc: &[u64], allowed: u64, size: usize, out: &mut BTreeMap<usize, u64>) {
            *out.entry(size).or_insert(0) += 1;
            for x in elements(allowed) {
                // only later elements, to list each antichain once
                let later = allowed & !(u64::MAX >> (63 - x));
                go(inc, later & inc[x], size + 1, out);
            }
        }
        go(&incomparable, full_mask(n), 0, &mut out);
        Ok(out)
    }

    /// Greene shape via Dilworth: `c_k` is the largest subset whose widest
    /// antichain has at most `k` elements. Widths of all subsets come from a
    /// dynamic program over subsets.
    pub fn greene_shape(&self) -> Result<GreeneShape> {
        let n = self.len();
        guard::check("greene shape", n, 20)?;
        guard::check_hard("greene shape", n, 26)?;
        if n == 0 {
            return Ok(GreeneShape(vec![]));
        }
        let incomparable: Vec<u64> = (0..n)
            .map(|x| full_mask(n) & !(self.above(x) | self.below(x) | bit(x)))
            .collect();
        let size = 1usize << n;
        let mut width = vec![0u8; size];
        let mut best_at_width = vec![0usize; n + 1];
        for u in 1..size {
            let x = u.trailing_zeros() as usize;
            let without = u & (u - 1);
            let with = 1 + width[u & incomparable[x] as usize];
            width[u] = width[without].max(with);
            let w = width[u] as usize;
            best_at_width[w] = best_at_width[w].max(u.count_ones() as usize);
        }
        let mut c = vec![0usize; n + 1];
        for k in 1..=n {
            c[k] = c[k - 1].max(best_at_width[k]);
        }
        let shape: Vec<usize> = (1..=n).map(|k| c[k] - c[k - 1]).take_while(|&d| d > 0).collect();
        Ok(GreeneShape(shape))
    }

    /// Whether an all-weak poset has a surjective `P`-partition onto
    /// `1..=len(w)` whose fibre sizes are `w` and whose fibres each have a
    /// unique minimal element.
    pub fn pointed_partition_exists(&self, w: &Composition) -> Result<bool> {
        if !self.is_all_weak() {
            return Err(Error::NotAllWeak);
        }
        if w.weight() != self.len() {
            return Err(Error::WeightMismatch {
                weight: w.weight(),
                n: self.len(),
            });
        }
        guard::check("pointed partition search", self.len(), 24)?;
        let parts: Vec<usize> = w.parts().iter().map(|&p| p as usize).collect();
        let mut dead: HashSet<(u64, usize)> = HashSet::new();
        Ok(self.pointed_from(0, &parts, 0, &mut dead))
    }

    fn pointed_from(&self, ideal: u64, parts: &[usize], step: usize, dead: &mut HashSet<(u64, usize)>) -> bool {
        if step == parts.len() {
            return ideal == full_mask(self.len());
        }
        if dead.contains(&(ideal, step)) {
            return false;
        }
        let need = parts[step];
        for m in elements(self.addable(ideal)) {
            // the fibre is m together with need-1 elements above m
            let pool: Vec<usize> = elements(self.above(m) & !ideal).collect();
            if pool.len() + 1 < need {
                continue;
            }
            let mut found = false;
            for_each_subset_of_size(&pool, need - 1, &mut |extra| {
                let fibre = extra | bit(m);
                let next = ideal | fibre;
                // next must be an order ideal
                let closed = elements(fibre).all(|x| self.lower_covers(x) & !next == 0);
                if closed && self.pointed_from(next, parts, step + 1, dead) {
                    found = true;
                }
                found
            });
            if found {
                return true;
            }
        }
        dead.insert((ideal, step));
        false
    }

    /// Leading monomial of `K_(P,ω)` against `x^jump` with the strict-edge
    /// jump vector.
    pub fn leading_term_check(&self) -> Result<LeadingTerm> {
        let m = self.enumerator_f()?.to_m();
        let (alpha, coeff) = m
            .terms()
            .next_back()
            .map(|(a, c)| (a.clone(), c.clone()))
            .unwrap_or((Composition::empty(), BigInt::one()));
        let jump = self.strict_jump_vector();
        let exponents: Vec<u32> = alpha.parts().to_vec();
        let matches = coeff.is_one()
            && exponents.len() == jump.0.len()
            && exponents.iter().zip(&jump.0).all(|(&e, &j)| e as usize == j);
        Ok(LeadingTerm {
            exponents,
            coeff,
            jump,
            matches,
        })
    }
}

/// Calls `f` with the mask of every `k`-subset of `items` until it returns true.
fn for_each_subset_of_size(items: &[usize], k: usize, f: &mut dyn FnMut(u64) -> bool) {
    fn go(items: &[usize], start: usize, k: usize, acc: u64, f: &mut dyn FnMut(u64) -> bool) -> bool {
        if k == 0 {
            return f(acc);
        }
        for i in start..items.len() {
            if items.len() - i < k {
                break;
            }
            if go(items, i + 1, k - 1, acc | bit(items[i]), f) {
                return true;
            }
        }
        false
    }
    go(items, 0, k, 0, f);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comp;
    use crate::poset::Cover;
    use EdgeKind::*;

    fn n_poset() -> LabeledPoset {
        // a1 < b1 > a2 < b2
        LabeledPoset::new(
            4,
            [Cover::new(0, 1, Weak), Cover::new(2, 1, Weak), Cover::new(2, 3, Weak)],
        )
        .unwrap()
    }

    #[test]
    fn jumps() {
        assert_eq!(LabeledPoset::chain(3, Weak).jump_vector(), JumpVector(vec![1, 1, 1]));
        assert_eq!(LabeledPoset::antichain(3).jump_vector(), JumpVector(vec![3]));
        assert_eq!(LabeledPoset::chain(3, Weak).strict_jump_vector(), JumpVector(vec![3]));
        assert_eq!(
            LabeledPoset::chain(3, Strict).strict_jump_vector(),
            JumpVector(vec![1, 1, 1])
        );
        let pairs = LabeledPoset::chain(2, Weak).jump_pairs();
        assert_eq!(pairs.get(&(0, 1)), Some(&1));
        assert_eq!(pairs.get(&(1, 0)), Some(&1));
    }

    #[test]
    fn antichains() {
        let a = LabeledPoset::antichain(3).antichain_counts().unwrap();
        assert_eq!(a.into_iter().collect::<Vec<_>>(), vec![(0, 1), (1, 3), (2, 3), (3, 1)]);
        let c = LabeledPoset::chain(5, Weak);
        assert_eq!(
            c.antichain_counts().unwrap().into_iter().collect::<Vec<_>>(),
            vec![(0, 1), (1, 5)]
        );
        let p = n_poset();
        assert_eq!(
            p.anti_table().unwrap().antichain_counts(),
            p.antichain_counts().unwrap()
        );
    }

    #[test]
    fn greene() {
        assert_eq!(
            LabeledPoset::chain(4, Weak).greene_shape().unwrap(),
            GreeneShape(vec![4])
        );
        assert_eq!(
            LabeledPoset::antichain(4).greene_shape().unwrap(),
            GreeneShape(vec![1, 1, 1, 1])
        );
        assert_eq!(n_poset().greene_shape().unwrap(), GreeneShape(vec![2, 2]));
    }

    #[test]
    fn pointed_small_cases() {
        let c = LabeledPoset::chain(4, Weak);
        assert!(c.pointed_partition_exists(&comp![4]).unwrap());
        assert!(c.pointed_partition_exists(&comp![1, 3]).unwrap());
        let a = LabeledPoset::antichain(2);
        assert!(!a.pointed_partition_exists(&comp![2]).unwrap());
        assert!(a.pointed_partition_exists(&comp![1, 1]).unwrap());
        assert_eq!(
            c.pointed_partition_exists(&comp![3]),
            Err(Error::WeightMismatch { weight: 3, n: 4 })
        );
        assert_eq!(
            LabeledPoset::chain(2, Strict).pointed_partition_exists(&comp![2]),
            Err(Error::NotAllWeak)
        );
    }

    #[test]
    fn leading_terms() {
        let weak = LabeledPoset::chain(3, Weak).leading_term_check().unwrap();
        assert_eq!(weak.exponents, vec![3]);
        assert!(weak.matches);
        let strict = LabeledPoset::chain(3, Strict).leading_term_check().unwrap();
        assert_eq!(strict.exponents, vec![1, 1, 1]);
        assert!(strict.matches);
        let anti = LabeledPoset::antichain(3).leading_term_check().unwrap();
        assert_eq!(anti.exponents, vec![3]);
        assert!(anti.matches);
    }
}
