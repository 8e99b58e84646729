//! Compositions and their descent-set encoding.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite sequence of positive integers.
///
/// Ordering is lexicographic on the parts, which is also the canonical term
/// order of [`QSymExpr`](super::QSymExpr). The empty composition is the
/// index of the unit `1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidComposition(format!("zero part in {parts:?}")));
        }
        Ok(Composition(parts))
    }

    /// The empty composition (weight 0).
    pub fn empty() -> Self {
        Composition(Vec::new())
    }

    /// `(n)`, the one-part composition.
    pub fn single(n: u32) -> Self {
        assert!(n > 0, "single-part composition needs a positive part");
        Composition(vec![n])
    }

    /// `(1, 1, ..., 1)` of weight `n`.
    pub fn ones(n: usize) -> Self {
        Composition(vec![1; n])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().map(|&p| p as usize).sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Partial sums `{a1, a1+a2, ..., a1+...+a_{l-1}}`.
    pub fn descent_set(&self) -> BTreeSet<usize> {
        let mut acc = 0usize;
        let mut out = BTreeSet::new();
        for &p in self.0.iter().take(self.0.len().saturating_sub(1)) {
            acc += p as usize;
            out.insert(acc);
        }
        out
    }

    /// Inverse of [`descent_set`](Self::descent_set) for a declared weight.
    pub fn from_descent_set(set: &BTreeSet<usize>, n: usize) -> Result<Self> {
        if n == 0 {
            return if set.is_empty() {
                Ok(Composition::empty())
            } else {
                Err(Error::InvalidComposition("non-empty subset for weight 0".into()))
            };
        }
        let mut parts = Vec::with_capacity(set.len() + 1);
        let mut prev = 0usize;
        for &s in set {
            if s == 0 || s >= n {
                return Err(Error::InvalidComposition(format!(
                    "subset element {s} outside [1, {}]",
                    n - 1
                )));
            }
            parts.push((s - prev) as u32);
            prev = s;
        }
        parts.push((n - prev) as u32);
        Ok(Composition(parts))
    }

    /// Descent set as a bitmask: bit `i - 1` set when `i` is in `S(alpha)`.
    pub fn descent_mask(&self) -> u64 {
        let mut acc = 0usize;
        let mut mask = 0u64;
        for &p in self.0.iter().take(self.0.len().saturating_sub(1)) {
            acc += p as usize;
            mask |= 1u64 << (acc - 1);
        }
        mask
    }

    /// Inverse of [`descent_mask`](Self::descent_mask); `n` must be at most 64.
    pub fn from_descent_mask(mask: u64, n: usize) -> Self {
        if n == 0 {
            return Composition::empty();
        }
        debug_assert!(n <= 64 && (n == 64 || mask >> (n - 1) == 0));
        let mut parts = Vec::with_capacity(mask.count_ones() as usize + 1);
        let mut prev = 0usize;
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize + 1;
            parts.push((i - prev) as u32);
            prev = i;
            m &= m - 1;
        }
        parts.push((n - prev) as u32);
        Composition(parts)
    }

    pub fn reversed(&self) -> Self {
        Composition(self.0.iter().rev().copied().collect())
    }

    /// Composition of the complementary descent set in `[n-1]`.
    pub fn complement(&self) -> Self {
        let n = self.weight();
        if n == 0 {
            return Composition::empty();
        }
        let full = if n == 1 { 0 } else { u64::MAX >> (65 - n) };
        Composition::from_descent_mask(!self.descent_mask() & full, n)
    }

    /// `(a1, ..., ak + b1, b2, ..., bl)`.
    pub fn glue(&self, other: &Self) -> Result<Self> {
        if self.is_empty() || other.is_empty() {
            return Err(Error::EmptyOperand);
        }
        let mut parts = self.0.clone();
        *parts.last_mut().unwrap() += other.0[0];
        parts.extend_from_slice(&other.0[1..]);
        Ok(Composition(parts))
    }

    /// Concatenation `(a1, ..., ak, b1, ..., bl)`.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        if self.is_empty() || other.is_empty() {
            return Err(Error::EmptyOperand);
        }
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        Ok(Composition(parts))
    }

    /// Sorted parts, i.e. the partition this composition rearranges.
    pub fn sorted_parts(&self) -> Vec<u32> {
        let mut p = self.0.clone();
        p.sort_unstable_by(|a, b| b.cmp(a));
        p
    }

    /// All compositions of `n`, in lexicographic order.
    pub fn all_of_weight(n: usize) -> Vec<Composition> {
        let mut out: Vec<Composition> = if n == 0 {
            vec![Composition::empty()]
        } else {
            (0..1u64 << (n - 1))
                .map(|m| Composition::from_descent_mask(m, n))
                .collect()
        };
        out.sort();
        out
    }
}

/// Descent composition of a word of distinct integers.
pub fn descent_composition(word: &[u32]) -> Result<Composition> {
    if word.is_empty() {
        return Err(Error::InvalidComposition(
            "empty word has no descent composition".into(),
        ));
    }
    let distinct: BTreeSet<_> = word.iter().collect();
    if distinct.len() != word.len() {
        return Err(Error::InvalidComposition(format!(
            "word entries must be distinct: {word:?}"
        )));
    }
    let mut parts = Vec::new();
    let mut run = 1u32;
    for w in word.windows(2) {
        if w[0] > w[1] {
            parts.push(run);
            run = 1;
        } else {
            run += 1;
        }
    }
    parts.push(run);
    Ok(Composition(parts))
}

impl TryFrom<Vec<u32>> for Composition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Composition::new(v)
    }
}

impl From<Composition> for Vec<u32> {
    fn from(c: Composition) -> Self {
        c.0
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// Shorthand for tests and fixtures: `comp![2, 2]`.
#[macro_export]
macro_rules! comp {
    ($($p:expr),* $(,)?) => {
        $crate::qsym::Composition::new(vec![$($p),*]).expect("valid composition")
    };
}
