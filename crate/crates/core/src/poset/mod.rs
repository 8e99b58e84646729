//! Labeled posets: finite posets whose cover relations are each marked weak
//! or strict.
//!
//! Elements are `0..n` internally and `1..=n` in every text or JSON
//! representation. Sets of elements are `u64` bitmasks, which caps posets at
//! 64 elements; every exhaustive algorithm has a much lower guard anyway.

mod canon;
mod classes;
mod enumerator;
mod invariants;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub(crate) use canon::tree_code;
pub use canon::{is_isomorphic_bruteforce, CanonicalKey};
pub use enumerator::{Labeling, LinearExtensions, DEFAULT_ORACLE_CAP};
pub use invariants::{AntiTable, GreeneShape, JumpVector, LeadingTerm};

/// Largest poset the bitmask representation supports.
pub const MAX_ELEMENTS: usize = 64;

/// Whether a cover forces `f(a) <= f(b)` (weak) or `f(a) < f(b)` (strict).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EdgeKind {
    #[serde(rename = "W")]
    Weak,
    #[serde(rename = "S")]
    Strict,
}

impl EdgeKind {
    pub fn flip(self) -> Self {
        match self {
            EdgeKind::Weak => EdgeKind::Strict,
            EdgeKind::Strict => EdgeKind::Weak,
        }
    }

    pub fn letter(self) -> char {
        match self {
            EdgeKind::Weak => 'W',
            EdgeKind::Strict => 'S',
        }
    }
}

/// `lo` is covered by `hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cover {
    pub lo: usize,
    pub hi: usize,
    pub kind: EdgeKind,
}

impl Cover {
    pub fn new(lo: usize, hi: usize, kind: EdgeKind) -> Self {
        Cover { lo, hi, kind }
    }
}

/// A finite poset given by its Hasse diagram, each edge weak or strict.
#[derive(Clone)]
pub struct LabeledPoset {
    n: usize,
    covers: Vec<Cover>,
    upper: Vec<u64>,
    lower: Vec<u64>,
    strict_upper: Vec<u64>,
    above: Vec<u64>,
    below: Vec<u64>,
}

pub(crate) fn bit(i: usize) -> u64 {
    1u64 << i
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub(crate) fn elements(mask: u64) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

/// Strict upper sets of the relation generated by `succ`, or `None` on a cycle.
pub(crate) fn transitive_closure(n: usize, succ: &[u64]) -> Option<Vec<u64>> {
    // Kahn order, then accumulate in reverse.
    let mut indeg = vec![0usize; n];
    for s in succ {
        for j in elements(*s) {
            indeg[j] += 1;
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut ready: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
    while let Some(i) = ready.pop() {
        order.push(i);
        for j in elements(succ[i]) {
            indeg[j] -= 1;
            if indeg[j] == 0 {
                ready.push(j);
            }
        }
    }
    if order.len() != n {
        return None;
    }
    let mut above = vec![0u64; n];
    for &i in order.iter().rev() {
        let mut acc = succ[i];
        for j in elements(succ[i]) {
            acc |= above[j];
        }
        above[i] = acc;
    }
    Some(above)
}

impl LabeledPoset {
    /// Build from cover triples, rejecting cycles and non-cover pairs.
    pub fn new(n: usize, covers: impl IntoIterator<Item = Cover>) -> Result<Self> {
        if n > MAX_ELEMENTS {
            return Err(Error::InvalidPoset(format!(
                "{n} elements exceeds the supported maximum {MAX_ELEMENTS}"
            )));
        }
        let mut covers: Vec<Cover> = covers.into_iter().collect();
        covers.sort();
        let mut upper = vec![0u64; n];
        let mut lower = vec![0u64; n];
        let mut strict_upper = vec![0u64; n];
        for c in &covers {
            if c.lo >= n || c.hi >= n {
                return Err(Error::InvalidPoset(format!(
                    "cover {} < {} names an element outside 1..={n}",
                    c.lo + 1,
                    c.hi + 1
                )));
            }
            if c.lo == c.hi {
                return Err(Error::InvalidPoset(format!("self-cover at {}", c.lo + 1)));
            }
            if upper[c.lo] & bit(c.hi) != 0 {
                return Err(Error::InvalidPoset(format!(
                    "duplicate cover {} < {}",
                    c.lo + 1,
                    c.hi + 1
                )));
            }
            upper[c.lo] |= bit(c.hi);
            lower[c.hi] |= bit(c.lo);
            if c.kind == EdgeKind::Strict {
                strict_upper[c.lo] |= bit(c.hi);
            }
        }
        let above =
            transitive_closure(n, &upper).ok_or_else(|| Error::InvalidPoset("cover relation has a cycle".into()))?;
        for c in &covers {
            for mid in elements(upper[c.lo] & !bit(c.hi)) {
                if above[mid] & bit(c.hi) != 0 {
                    return Err(Error::InvalidPoset(format!(
                        "{} < {} is not a cover: implied by {} < {} < {}",
                        c.lo + 1,
                        c.hi + 1,
                        c.lo + 1,
                        mid + 1,
                        c.hi + 1
                    )));
                }
            }
        }
        let mut below = vec![0u64; n];
        for (i, a) in above.iter().enumerate() {
            for j in elements(*a) {
                below[j] |= bit(i);
            }
        }
        Ok(LabeledPoset {
            n,
            covers,
            upper,
            lower,
            strict_upper,
            above,
            below,
        })
    }

    /// Build from arbitrary order relations `a < b`, keeping only the covers
    /// of their transitive closure. Every cover gets `kind`.
    pub fn from_relations(n: usize, relations: &[(usize, usize)], kind: EdgeKind) -> Result<Self> {
        if n > MAX_ELEMENTS {
            return Err(Error::InvalidPoset(format!(
                "{n} elements exceeds the supported maximum {MAX_ELEMENTS}"
            )));
        }
        let mut succ = vec![0u64; n];
        for &(a, b) in relations {
            if a >= n || b >= n || a == b {
                return Err(Error::InvalidPoset(format!("bad relation {} < {}", a + 1, b + 1)));
            }
            succ[a] |= bit(b);
        }
        let above = transitive_closure(n, &succ).ok_or(Error::Cyclic)?;
        let mut covers = Vec::new();
        for a in 0..n {
            let mut implied = 0u64;
            for c in elements(above[a]) {
                implied |= above[c];
            }
            for b in elements(above[a] & !implied) {
                covers.push(Cover::new(a, b, kind));
            }
        }
        LabeledPoset::new(n, covers)
    }

    /// `n` pairwise incomparable elements.
    pub fn antichain(n: usize) -> Self {
        LabeledPoset::new(n, []).expect("antichain is valid")
    }

    /// `0 < 1 < ... < n-1`, every cover of the given kind.
    pub fn chain(n: usize, kind: EdgeKind) -> Self {
        LabeledPoset::new(n, (1..n).map(|i| Cover::new(i - 1, i, kind))).expect("chain is valid")
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn covers(&self) -> &[Cover] {
        &self.covers
    }

    pub fn upper_covers(&self, x: usize) -> u64 {
        self.upper[x]
    }

    pub fn lower_covers(&self, x: usize) -> u64 {
        self.lower[x]
    }

    /// Upper covers of `x` joined to it by a strict edge.
    pub fn strict_upper_covers(&self, x: usize) -> u64 {
        self.strict_upper[x]
    }

    /// Elements strictly above `x`.
    pub fn above(&self, x: usize) -> u64 {
        self.above[x]
    }

    /// Elements strictly below `x`.
    pub fn below(&self, x: usize) -> u64 {
        self.below[x]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.above[a] & bit(b) != 0
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        a == b || self.lt(a, b) || self.lt(b, a)
    }

    /// Kind of the cover `a < b`, if it is one.
    pub fn cover_kind(&self, a: usize, b: usize) -> Option<EdgeKind> {
        if self.upper[a] & bit(b) == 0 {
            None
        } else if self.strict_upper[a] & bit(b) != 0 {
            Some(EdgeKind::Strict)
        } else {
            Some(EdgeKind::Weak)
        }
    }

    pub fn minimal_elements(&self) -> u64 {
        (0..self.n).filter(|&i| self.lower[i] == 0).fold(0, |m, i| m | bit(i))
    }

    pub fn maximal_elements(&self) -> u64 {
        (0..self.n).filter(|&i| self.upper[i] == 0).fold(0, |m, i| m | bit(i))
    }

    /// Neighbours of `x` in the undirected Hasse diagram.
    pub fn hasse_neighbours(&self, x: usize) -> u64 {
        self.upper[x] | self.lower[x]
    }

    /// Connected components of the Hasse diagram restricted to `mask`.
    pub fn components_within(&self, mask: u64) -> Vec<u64> {
        let mut rest = mask;
        let mut out = Vec::new();
        while rest != 0 {
            let start = rest.trailing_zeros() as usize;
            let mut comp = bit(start);
            let mut frontier = comp;
            while frontier != 0 {
                let x = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let new = self.hasse_neighbours(x) & mask & !comp;
                comp |= new;
                frontier |= new;
            }
            out.push(comp);
            rest &= !comp;
        }
        out
    }

    pub fn components(&self) -> Vec<u64> {
        self.components_within(full_mask(self.n))
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// The Hasse diagram, read as an undirected graph, is a tree.
    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.covers.len() == self.n - 1 && self.is_connected()
    }

    /// A tree with a unique minimal element.
    pub fn is_rooted_tree(&self) -> bool {
        self.is_tree() && self.minimal_elements().count_ones() == 1
    }

    pub fn is_all_weak(&self) -> bool {
        self.covers.iter().all(|c| c.kind == EdgeKind::Weak)
    }

    pub fn is_all_strict(&self) -> bool {
        self.covers.iter().all(|c| c.kind == EdgeKind::Strict)
    }

    fn map_covers(&self, f: impl Fn(&Cover) -> Cover) -> Self {
        LabeledPoset::new(self.n, self.covers.iter().map(f)).expect("same Hasse diagram")
    }

    /// Same Hasse diagram with every cover weak.
    pub fn all_weak(&self) -> Self {
        self.map_covers(|c| Cover::new(c.lo, c.hi, EdgeKind::Weak))
    }

    /// Same Hasse diagram with every cover strict.
    pub fn all_strict(&self) -> Self {
        self.map_covers(|c| Cover::new(c.lo, c.hi, EdgeKind::Strict))
    }

    /// Swap weak and strict on every cover.
    pub fn bar(&self) -> Self {
        self.map_covers(|c| Cover::new(c.lo, c.hi, c.kind.flip()))
    }

    /// Reverse the order, keeping each cover's kind.
    pub fn dual(&self) -> Self {
        self.map_covers(|c| Cover::new(c.hi, c.lo, c.kind))
    }

    /// Rename element `i` to `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.n];
        if perm.len() != self.n
            || perm
                .iter()
                .any(|&p| p >= self.n || std::mem::replace(&mut seen[p], true))
        {
            return Err(Error::InvalidPoset("relabeling is not a permutation".into()));
        }
        Ok(self.map_covers(|c| Cover::new(perm[c.lo], perm[c.hi], c.kind)))
    }

    fn shifted_covers(&self, by: usize) -> impl Iterator<Item = Cover> + '_ {
        self.covers
            .iter()
            .map(move |c| Cover::new(c.lo + by, c.hi + by, c.kind))
    }

    /// `P ⊔ Q`; elements of `Q` are renumbered after those of `P`.
    pub fn disjoint_union(&self, other: &Self) -> Result<Self> {
        LabeledPoset::new(
            self.n + other.n,
            self.covers.iter().copied().chain(other.shifted_covers(self.n)),
        )
    }

    /// Ordinal sum placing `other` above `self`, joining every maximal element
    /// of `self` to every minimal element of `other` by an edge of `kind`.
    pub fn ordinal_sum(&self, other: &Self, kind: EdgeKind) -> Result<Self> {
        let mut covers: Vec<Cover> = self.covers.clone();
        covers.extend(other.shifted_covers(self.n));
        for a in elements(self.maximal_elements()) {
            for b in elements(other.minimal_elements()) {
                covers.push(Cover::new(a, b + self.n, kind));
            }
        }
        LabeledPoset::new(self.n + other.n, covers)
    }

    /// `P ↑ Q`: ordinal sum with weak joining edges.
    pub fn ordsum_weak(&self, other: &Self) -> Result<Self> {
        self.ordinal_sum(other, EdgeKind::Weak)
    }

    /// `P ⇑ Q`: ordinal sum with strict joining edges.
    pub fn ordsum_strict(&self, other: &Self) -> Result<Self> {
        self.ordinal_sum(other, EdgeKind::Strict)
    }

    /// A linear order of the elements compatible with the poset, preferring
    /// small indices.
    pub fn natural_order(&self) -> Vec<usize> {
        let mut placed = 0u64;
        let mut out = Vec::with_capacity(self.n);
        while out.len() < self.n {
            let x = (0..self.n)
                .find(|&x| placed & bit(x) == 0 && self.lower[x] & !placed == 0)
                .expect("posets are acyclic");
            placed |= bit(x);
            out.push(x);
        }
        out
    }
}

impl PartialEq for LabeledPoset {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.covers == other.covers
    }
}

impl Eq for LabeledPoset {}

impl std::hash::Hash for LabeledPoset {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.covers.hash(state);
    }
}

impl fmt::Debug for LabeledPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LabeledPoset({})", self.to_inline())
    }
}

impl LabeledPoset {
    /// One-line form `3; 1<2 W; 1<3 S`.
    pub fn to_inline(&self) -> String {
        let mut s = self.n.to_string();
        for c in &self.covers {
            s.push_str(&format!("; {}<{} {}", c.lo + 1, c.hi + 1, c.kind.letter()));
        }
        s
    }
}

#[derive(Serialize, Deserialize)]
struct RawCover {
    a: usize,
    b: usize,
    kind: EdgeKind,
}

#[derive(Serialize, Deserialize)]
struct RawPoset {
    n: usize,
    covers: Vec<RawCover>,
}

impl Serialize for LabeledPoset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawPoset {
            n: self.n,
            covers: self
                .covers
                .iter()
                .map(|c| RawCover {
                    a: c.lo + 1,
                    b: c.hi + 1,
                    kind: c.kind,
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LabeledPoset {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawPoset::deserialize(d)?;
        let mut covers = Vec::with_capacity(raw.covers.len());
        for c in raw.covers {
            if c.a == 0 || c.b == 0 {
                return Err(serde::de::Error::custom("elements are numbered from 1"));
            }
            covers.push(Cover::new(c.a - 1, c.b - 1, c.kind));
        }
        LabeledPoset::new(raw.n, covers).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use EdgeKind::*;

    #[test]
    fn rejects_cycles_and_non_covers() {
        let cyc = LabeledPoset::new(2, [Cover::new(0, 1, Weak), Cover::new(1, 0, Weak)]);
        assert!(matches!(cyc, Err(Error::InvalidPoset(_))));
        let implied = LabeledPoset::new(
            3,
            [Cover::new(0, 1, Weak), Cover::new(1, 2, Weak), Cover::new(0, 2, Strict)],
        );
        assert!(matches!(implied, Err(Error::InvalidPoset(m)) if m.contains("not a cover")));
        assert!(LabeledPoset::new(2, [Cover::new(0, 2, Weak)]).is_err());
    }

    #[test]
    fn relations_reduce_to_covers() {
        let p = LabeledPoset::from_relations(3, &[(0, 1), (1, 2), (0, 2)], Strict).unwrap();
        assert_eq!(p, LabeledPoset::chain(3, Strict));
        assert_eq!(
            LabeledPoset::from_relations(2, &[(0, 1), (1, 0)], Weak),
            Err(Error::Cyclic)
        );
    }

    #[test]
    fn order_queries() {
        let p = LabeledPoset::chain(4, Weak);
        assert!(p.lt(0, 3));
        assert!(!p.lt(3, 0));
        assert_eq!(p.minimal_elements(), 1);
        assert_eq!(p.maximal_elements(), 8);
        assert!(p.is_rooted_tree());
        let a = LabeledPoset::antichain(3);
        assert_eq!(a.components().len(), 3);
        assert!(!a.is_tree());
    }

    #[test]
    fn constructions() {
        let one = LabeledPoset::antichain(1);
        assert_eq!(one.ordsum_weak(&one).unwrap(), LabeledPoset::chain(2, Weak));
        assert_eq!(one.ordsum_strict(&one).unwrap(), LabeledPoset::chain(2, Strict));
        let v = LabeledPoset::new(3, [Cover::new(0, 1, Weak), Cover::new(0, 2, Strict)]).unwrap();
        assert_eq!(v.dual().dual(), v);
        assert_eq!(v.bar().bar(), v);
        assert_eq!(v.bar().cover_kind(0, 1), Some(Strict));
        let u = v.disjoint_union(&one).unwrap();
        assert_eq!(u.len(), 4);
        assert_eq!(u.components().len(), 2);
        // Two maxima of v joined to the single element above.
        let s = v.ordsum_weak(&one).unwrap();
        assert_eq!(s.covers().len(), 4);
    }

    #[test]
    fn json_roundtrip() {
        let v = LabeledPoset::new(3, [Cover::new(0, 1, Weak), Cover::new(0, 2, Strict)]).unwrap();
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(
            s,
            r#"{"n":3,"covers":[{"a":1,"b":2,"kind":"W"},{"a":1,"b":3,"kind":"S"}]}"#
        );
        assert_eq!(serde_json::from_str::<LabeledPoset>(&s).unwrap(), v);
        assert_eq!(v.to_inline(), "3; 1<2 W; 1<3 S");
    }
}
