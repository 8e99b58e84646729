//! Labelings, linear extensions and the `(P, ω)`-partition enumerator.

use std::collections::HashMap;

use num_bigint::BigInt;

use super::{bit, elements, EdgeKind, LabeledPoset};
use crate::error::{Error, Result};
use crate::guard;
use crate::qsym::{Basis, Composition, QPolynomial, QSymExpr};

/// Default ceiling on `k^n` for [`LabeledPoset::partition_count_oracle`].
pub const DEFAULT_ORACLE_CAP: u128 = 1 << 28;

/// A bijection `ω` from elements to `1..=n`, stored as `ω(i)` at index `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Labeling(Vec<u32>);

impl Labeling {
    pub fn new(values: Vec<u32>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n];
        for &v in &values {
            if v == 0 || v as usize > n || std::mem::replace(&mut seen[v as usize - 1], true) {
                return Err(Error::InvalidPoset(format!(
                    "labeling {values:?} is not a bijection onto 1..={n}"
                )));
            }
        }
        Ok(Labeling(values))
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn label(&self, x: usize) -> u32 {
        self.0[x]
    }

    /// Weak covers increase `ω`, strict covers decrease it.
    pub fn is_compatible(&self, p: &LabeledPoset) -> bool {
        self.0.len() == p.len()
            && p.covers().iter().all(|c| match c.kind {
                EdgeKind::Weak => self.0[c.lo] < self.0[c.hi],
                EdgeKind::Strict => self.0[c.lo] > self.0[c.hi],
            })
    }
}

impl LabeledPoset {
    /// `x -> y` whenever the labeling must satisfy `ω(x) < ω(y)`.
    fn constraint_graph(&self) -> Vec<u64> {
        let mut succ = vec![0u64; self.len()];
        for c in self.covers() {
            match c.kind {
                EdgeKind::Weak => succ[c.lo] |= bit(c.hi),
                EdgeKind::Strict => succ[c.hi] |= bit(c.lo),
            }
        }
        succ
    }

    /// A labeling realizing the strictness marks, built as the
    /// smallest-index-first topological order of the constraint graph.
    pub fn realize_labeling(&self) -> Result<Labeling> {
        let n = self.len();
        let succ = self.constraint_graph();
        let mut pred = vec![0u64; n];
        for (x, s) in succ.iter().enumerate() {
            for y in elements(*s) {
                pred[y] |= bit(x);
            }
        }
        let mut placed = 0u64;
        let mut labels = vec![0u32; n];
        for next in 1..=n as u32 {
            let x = (0..n)
                .find(|&x| placed & bit(x) == 0 && pred[x] & !placed == 0)
                .ok_or(Error::Unrealizable)?;
            labels[x] = next;
            placed |= bit(x);
        }
        Ok(Labeling(labels))
    }

    pub fn is_realizable(&self) -> bool {
        self.realize_labeling().is_ok()
    }

    /// Every labeling realizing the strictness marks.
    pub fn labelings(&self) -> Result<Vec<Labeling>> {
        guard::check("labeling enumeration", self.len(), 10)?;
        let n = self.len();
        let succ = self.constraint_graph();
        let mut pred = vec![0u64; n];
        for (x, s) in succ.iter().enumerate() {
            for y in elements(*s) {
                pred[y] |= bit(x);
            }
        }
        fn go(pred: &[u64], placed: u64, labels: &mut Vec<u32>, depth: u32, out: &mut Vec<Labeling>) {
            let n = pred.len();
            if depth as usize == n {
                out.push(Labeling(labels.clone()));
                return;
            }
            for x in 0..n {
                if placed & bit(x) == 0 && pred[x] & !placed == 0 {
                    labels[x] = depth + 1;
                    go(pred, placed | bit(x), labels, depth + 1, out);
                }
            }
        }
        let mut out = Vec::new();
        go(&pred, 0, &mut vec![0; n], 0, &mut out);
        if out.is_empty() && n > 0 {
            return Err(Error::Unrealizable);
        }
        Ok(out)
    }

    /// Stream of linear extensions, each as the word of `ω`-labels.
    pub fn linear_extensions<'a>(&'a self, labeling: &'a Labeling) -> LinearExtensions<'a> {
        LinearExtensions::new(self, labeling)
    }

    pub fn count_linear_extensions(&self) -> u128 {
        let n = self.len();
        let mut ways: HashMap<u64, u128> = HashMap::new();
        ways.insert(0, 1);
        for _ in 0..n {
            let mut next: HashMap<u64, u128> = HashMap::new();
            for (ideal, w) in ways {
                for x in elements(self.addable(ideal)) {
                    *next.entry(ideal | bit(x)).or_insert(0) += w;
                }
            }
            ways = next;
        }
        ways.values().sum()
    }

    /// Elements outside `ideal` all of whose lower covers are inside it.
    pub(crate) fn addable(&self, ideal: u64) -> u64 {
        let mut m = 0u64;
        for x in 0..self.len() {
            if ideal & bit(x) == 0 && self.lower_covers(x) & !ideal == 0 {
                m |= bit(x);
            }
        }
        m
    }

    /// `K_(P,ω)` in the fundamental basis: one `F_co(π)` per linear extension.
    pub fn enumerator_f(&self) -> Result<QSymExpr> {
        let labeling = self.realize_labeling()?;
        self.enumerator_f_with(&labeling)
    }

    /// [`enumerator_f`](Self::enumerator_f) using a caller-chosen labeling.
    ///
    /// Extensions are aggregated with a dynamic program over order ideals
    /// keyed by the last element placed, so the work is bounded by the number
    /// of (ideal, last, descent set) states rather than the extension count.
    pub fn enumerator_f_with(&self, labeling: &Labeling) -> Result<QSymExpr> {
        if !labeling.is_compatible(self) {
            return Err(Error::InvalidPoset(
                "labeling does not realize the strictness marks".into(),
            ));
        }
        let n = self.len();
        guard::check_hard("enumerator", n, 20)?;
        if n == 0 {
            return Ok(QSymExpr::one(Basis::F));
        }
        type Layer = HashMap<(u64, u8), HashMap<u64, u64>>;
        let mut layer: Layer = HashMap::new();
        for x in elements(self.minimal_elements()) {
            layer.entry((bit(x), x as u8)).or_default().insert(0, 1);
        }
        for pos in 1..n {
            let mut next: Layer = HashMap::new();
            for ((ideal, last), masks) in layer {
                let last_label = labeling.label(last as usize);
                for y in elements(self.addable(ideal)) {
                    let d = if last_label > labeling.label(y) {
                        1u64 << (pos - 1)
                    } else {
                        0
                    };
                    let slot = next.entry((ideal | bit(y), y as u8)).or_default();
                    for (&m, &c) in &masks {
                        *slot.entry(m | d).or_insert(0) += c;
                    }
                }
            }
            layer = next;
        }
        let mut out = QSymExpr::zero(Basis::F);
        for (_, masks) in layer {
            for (m, c) in masks {
                out.add_term(Composition::from_descent_mask(m, n), BigInt::from(c));
            }
        }
        Ok(out)
    }

    /// `K_(P,ω)` by walking every linear extension one at a time.
    pub fn enumerator_f_by_extensions(&self) -> Result<QSymExpr> {
        let labeling = self.realize_labeling()?;
        let mut counts: HashMap<Composition, u64> = HashMap::new();
        for word in self.linear_extensions(&labeling) {
            let co = if word.is_empty() {
                Composition::empty()
            } else {
                crate::qsym::descent_composition(&word)?
            };
            *counts.entry(co).or_insert(0) += 1;
        }
        Ok(QSymExpr::from_terms(Basis::F, counts))
    }

    /// Count maps `f: P -> {0, ..., k-1}` with `f(a) <= f(b)` on weak covers
    /// and `f(a) < f(b)` on strict covers, as a polynomial in `q` graded by
    /// `sum f(p)`. Works for unrealizable strictness marks too. Fails when
    /// `k^n` exceeds `cap`.
    pub fn partition_count_oracle(&self, k: usize, cap: u128) -> Result<QPolynomial> {
        let n = self.len();
        let space = (k as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        if space > cap && !guard::forced() {
            return Err(Error::GuardExceeded {
                what: "partition oracle k^n",
                n: space.min(usize::MAX as u128) as usize,
                max: cap.min(usize::MAX as u128) as usize,
            });
        }
        if k == 0 {
            return Ok(if n == 0 {
                QPolynomial::one()
            } else {
                QPolynomial::zero()
            });
        }
        let order = self.natural_order();
        let mut counts = vec![0u64; n * (k - 1) + 1];
        let mut values = vec![0usize; n];

        fn go(
            p: &LabeledPoset,
            order: &[usize],
            idx: usize,
            k: usize,
            sum: usize,
            values: &mut [usize],
            counts: &mut [u64],
        ) {
            if idx == order.len() {
                counts[sum] += 1;
                return;
            }
            let x = order[idx];
            let mut lo = 0usize;
            for y in elements(p.lower_covers(x)) {
                let need = match p.cover_kind(y, x) {
                    Some(EdgeKind::Strict) => values[y] + 1,
                    _ => values[y],
                };
                lo = lo.max(need);
            }
            for v in lo..k {
                values[x] = v;
                go(p, order, idx + 1, k, sum + v, values, counts);
            }
        }
        go(self, &order, 0, k, 0, &mut values, &mut counts);
        Ok(QPolynomial::from_coeffs(
            counts.into_iter().enumerate().map(|(e, c)| (e as u32, BigInt::from(c))),
        ))
    }
}

/// Lazy backtracking stream of linear extensions.
pub struct LinearExtensions<'a> {
    poset: &'a LabeledPoset,
    labeling: &'a Labeling,
    chosen: Vec<usize>,
    // candidates still to try at each depth; always one longer than `chosen`
    pending: Vec<u64>,
    placed: u64,
    fresh: bool,
    done: bool,
}

impl<'a> LinearExtensions<'a> {
    fn new(poset: &'a LabeledPoset, labeling: &'a Labeling) -> Self {
        LinearExtensions {
            poset,
            labeling,
            chosen: Vec::with_capacity(poset.len()),
            pending: Vec::with_capacity(poset.len() + 1),
            placed: 0,
            fresh: true,
            done: false,
        }
    }

    fn unplace(&mut self) {
        let x = self.chosen.pop().expect("nonempty");
        self.placed &= !bit(x);
        self.pending.pop();
    }
}

impl Iterator for LinearExtensions<'_> {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        let n = self.poset.len();
        if self.fresh {
            self.fresh = false;
            self.pending.push(self.poset.addable(0));
        } else if n == 0 {
            self.done = true;
            return None;
        } else {
            self.unplace();
        }
        loop {
            let depth = self.chosen.len();
            if depth == n {
                return Some(self.chosen.iter().map(|&x| self.labeling.label(x)).collect());
            }
            let cands = self.pending[depth];
            if cands == 0 {
                if depth == 0 {
                    self.done = true;
                    return None;
                }
                self.unplace();
                continue;
            }
            let x = cands.trailing_zeros() as usize;
            self.pending[depth] &= cands - 1;
            self.chosen.push(x);
            self.placed |= bit(x);
            self.pending.push(self.poset.addable(self.placed));
        }
    }
}
