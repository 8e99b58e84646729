//! Sparse quasisymmetric functions in the monomial (`M`) and fundamental (`F`)
//! bases.
//!
//! Expressions are immutable values: every operation returns a new
//! expression. Terms are kept in a `BTreeMap` keyed by composition, so the
//! iteration order (and therefore every serialization) is canonical.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::AddAssign;
use std::rc::Rc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{Composition, QPolynomial};
use crate::error::{Error, Result};

/// Which basis an expression is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Basis {
    M,
    F,
}

impl Basis {
    pub fn letter(self) -> char {
        match self {
            Basis::M => 'M',
            Basis::F => 'F',
        }
    }
}

impl std::str::FromStr for Basis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "M" | "m" => Ok(Basis::M),
            "F" | "f" => Ok(Basis::F),
            other => Err(Error::Parse {
                line: 0,
                msg: format!("unknown basis {other:?}"),
            }),
        }
    }
}

/// A finite integer combination of basis elements `M_alpha` or `F_alpha`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSymExpr {
    basis: Basis,
    terms: BTreeMap<Composition, BigInt>,
}

impl QSymExpr {
    pub fn zero(basis: Basis) -> Self {
        QSymExpr {
            basis,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(basis: Basis) -> Self {
        Self::term(basis, Composition::empty(), BigInt::one())
    }

    pub fn term(basis: Basis, comp: Composition, coeff: impl Into<BigInt>) -> Self {
        let mut e = Self::zero(basis);
        e.add_term(comp, coeff.into());
        e
    }

    /// `F_alpha`.
    pub fn f(comp: Composition) -> Self {
        Self::term(Basis::F, comp, 1)
    }

    /// `M_alpha`.
    pub fn m(comp: Composition) -> Self {
        Self::term(Basis::M, comp, 1)
    }

    pub fn from_terms<I, C>(basis: Basis, terms: I) -> Self
    where
        I: IntoIterator<Item = (Composition, C)>,
        C: Into<BigInt>,
    {
        let mut e = Self::zero(basis);
        for (c, k) in terms {
            e.add_term(c, k.into());
        }
        e
    }

    pub(crate) fn add_term(&mut self, comp: Composition, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(comp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> std::collections::btree_map::Iter<'_, Composition, BigInt> {
        self.terms.iter()
    }

    pub fn coeff(&self, comp: &Composition) -> BigInt {
        self.terms.get(comp).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Largest weight among the terms; `None` for the zero expression.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Composition::weight).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut w = self.terms.keys().map(Composition::weight);
        match w.next() {
            None => true,
            Some(first) => w.all(|x| x == first),
        }
    }

    fn expect_basis(&self, basis: Basis) -> Result<()> {
        if self.basis != basis {
            return Err(Error::BasisMismatch {
                expected: basis.letter(),
                found: self.basis.letter(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.expect_basis(other.basis)?;
        let mut out = self.clone();
        for (c, k) in &other.terms {
            out.add_term(c.clone(), k.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(self.basis);
        }
        QSymExpr {
            basis: self.basis,
            terms: self.terms.iter().map(|(c, v)| (c.clone(), v * k)).collect(),
        }
    }

    /// Set of compositions with nonzero `F` coefficient.
    pub fn f_support(&self) -> Result<BTreeSet<Composition>> {
        self.expect_basis(Basis::F)?;
        Ok(self.terms.keys().cloned().collect())
    }

    /// Expand an `F`-basis expression in the monomial basis.
    pub fn f_to_m(&self) -> Result<Self> {
        self.expect_basis(Basis::F)?;
        Ok(self.transform(Basis::M, Transform::SubsetSum))
    }

    /// Expand an `M`-basis expression in the fundamental basis.
    pub fn m_to_f(&self) -> Result<Self> {
        self.expect_basis(Basis::M)?;
        Ok(self.transform(Basis::F, Transform::Mobius))
    }

    pub fn to_m(&self) -> Self {
        match self.basis {
            Basis::M => self.clone(),
            Basis::F => self.transform(Basis::M, Transform::SubsetSum),
        }
    }

    pub fn to_f(&self) -> Self {
        match self.basis {
            Basis::F => self.clone(),
            Basis::M => self.transform(Basis::F, Transform::Mobius),
        }
    }

    pub fn to_basis(&self, basis: Basis) -> Self {
        match basis {
            Basis::M => self.to_m(),
            Basis::F => self.to_f(),
        }
    }

    fn transform(&self, target: Basis, kind: Transform) -> Self {
        let mut by_weight: BTreeMap<usize, Vec<(&Composition, &BigInt)>> = BTreeMap::new();
        for (c, k) in &self.terms {
            by_weight.entry(c.weight()).or_default().push((c, k));
        }
        let mut out = Self::zero(target);
        for (n, terms) in by_weight {
            if n <= 1 {
                for (c, k) in terms {
                    out.add_term(c.clone(), k.clone());
                }
                continue;
            }
            transform_weight(n, &terms, kind, &mut out);
        }
        out
    }

    /// Product in QSym. Both factors are moved to the `F` basis and multiplied
    /// by shuffling the labelings of two labeled chains; the result is returned
    /// in the basis of `self`.
    pub fn mul(&self, other: &Self) -> Self {
        let a = self.to_f();
        let b = other.to_f();
        let mut out = Self::zero(Basis::F);
        for (alpha, ca) in &a.terms {
            for (beta, cb) in &b.terms {
                let coef = ca * cb;
                for (gamma, count) in shuffle_chains(alpha, beta) {
                    out.add_term(gamma, &coef * BigInt::from(count));
                }
            }
        }
        out.to_basis(self.basis)
    }

    /// Quasi-shuffle (overlapping shuffle) product of monomial functions.
    pub fn mul_quasishuffle(&self, other: &Self) -> Result<Self> {
        self.expect_basis(Basis::M)?;
        other.expect_basis(Basis::M)?;
        let mut out = Self::zero(Basis::M);
        let mut memo = HashMap::new();
        for (alpha, ca) in &self.terms {
            for (beta, cb) in &other.terms {
                let coef = ca * cb;
                for (gamma, count) in quasishuffle(alpha.parts(), beta.parts(), &mut memo).iter() {
                    let g = Composition::new(gamma.clone()).expect("sums of positive parts");
                    out.add_term(g, &coef * BigInt::from(*count));
                }
            }
        }
        Ok(out)
    }

    /// The bar involution `F_{S,n} -> F_{[n-1] \ S, n}`.
    pub fn bar(&self) -> Result<Self> {
        self.expect_basis(Basis::F)?;
        Ok(QSymExpr {
            basis: Basis::F,
            terms: self.terms.iter().map(|(c, k)| (c.complement(), k.clone())).collect(),
        })
    }

    /// Bilinear extension of `F_a ↑ F_b = F_{(a_1, ..., a_k + b_1, ..., b_l)}`.
    pub fn up(&self, other: &Self) -> Result<Self> {
        self.ordinal_product(other, Composition::glue)
    }

    /// Bilinear extension of `F_a ⇑ F_b = F_{a . b}` (concatenation).
    pub fn upup(&self, other: &Self) -> Result<Self> {
        self.ordinal_product(other, Composition::concat)
    }

    fn ordinal_product(&self, other: &Self, op: fn(&Composition, &Composition) -> Result<Composition>) -> Result<Self> {
        self.expect_basis(Basis::F)?;
        other.expect_basis(Basis::F)?;
        let mut out = Self::zero(Basis::F);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(op(a, b)?, ca * cb);
            }
        }
        Ok(out)
    }

    /// Principal specialization of order `k`: `x_i = q^{i-1}` for `i <= k`
    /// and `x_i = 0` beyond. Computed on the monomial expansion.
    pub fn principal_specialization(&self, k: usize) -> QPolynomial {
        let m = self.to_m();
        let mut out = QPolynomial::zero();
        for (alpha, c) in &m.terms {
            if alpha.len() > k {
                continue;
            }
            let poly = monomial_specialization(alpha, k);
            for (e, v) in poly.iter().enumerate() {
                if *v != 0 {
                    out.add_term(e as u32, c * BigInt::from(*v));
                }
            }
        }
        out
    }

    /// Deterministic byte string identifying this expression (canonical JSON).
    pub fn canonical_bytes(&self) -> Vec<u8> {
        serde_json::to_vec(self).expect("expression serializes")
    }
}

#[derive(Clone, Copy)]
enum Transform {
    /// `b[T] = sum over S ⊆ T of a[S]` (F to M).
    SubsetSum,
    /// Inverse of `SubsetSum` (M to F).
    Mobius,
}

fn transform_weight(n: usize, terms: &[(&Composition, &BigInt)], kind: Transform, out: &mut QSymExpr) {
    let bits = n - 1;
    let dense_cost = (bits as u128) << bits;
    let sparse_cost: u128 = terms.iter().map(|(c, _)| 1u128 << (bits - (c.len() - 1))).sum();
    if bits <= 24 && dense_cost <= sparse_cost.saturating_mul(4) {
        if let Some(done) = transform_dense_i128(n, terms, kind) {
            for (mask, v) in done {
                out.add_term(Composition::from_descent_mask(mask, n), BigInt::from(v));
            }
            return;
        }
    }
    // Sparse superset enumeration with arbitrary precision.
    let full: u64 = if bits == 64 { u64::MAX } else { (1u64 << bits) - 1 };
    for (c, k) in terms {
        let s = c.descent_mask();
        let free = full & !s;
        let mut sub = free;
        loop {
            let t = s | sub;
            let coeff = match kind {
                Transform::SubsetSum => (*k).clone(),
                Transform::Mobius => {
                    if sub.count_ones() % 2 == 1 {
                        -(*k).clone()
                    } else {
                        (*k).clone()
                    }
                }
            };
            out.add_term(Composition::from_descent_mask(t, n), coeff);
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & free;
        }
    }
}

fn transform_dense_i128(n: usize, terms: &[(&Composition, &BigInt)], kind: Transform) -> Option<Vec<(u64, i128)>> {
    let bits = n - 1;
    let size = 1usize << bits;
    let mut a = vec![0i128; size];
    for (c, k) in terms {
        a[c.descent_mask() as usize] = k.to_i128()?;
    }
    for b in 0..bits {
        let bit = 1usize << b;
        for mask in 0..size {
            if mask & bit != 0 {
                let src = a[mask ^ bit];
                if src != 0 {
                    a[mask] = match kind {
                        Transform::SubsetSum => a[mask].checked_add(src)?,
                        Transform::Mobius => a[mask].checked_sub(src)?,
                    };
                }
            }
        }
    }
    Some(
        a.into_iter()
            .enumerate()
            .filter(|(_, v)| *v != 0)
            .map(|(m, v)| (m as u64, v))
            .collect(),
    )
}

/// Word of a labeled chain whose enumerator is `F_alpha`, using the values
/// `offset + 1 ..= offset + |alpha|`: increasing runs, each run below the
/// previous one.
fn chain_word(alpha: &Composition, offset: u32) -> Vec<u32> {
    let n = alpha.weight() as u32;
    let mut word = Vec::with_capacity(n as usize);
    let mut top = offset + n;
    for &p in alpha.parts() {
        let start = top - p;
        word.extend(start + 1..=top);
        top = start;
    }
    word
}

/// `F_alpha * F_beta` as descent compositions of all shuffles of two chain
/// words on disjoint value ranges.
fn shuffle_chains(alpha: &Composition, beta: &Composition) -> Vec<(Composition, u64)> {
    if alpha.is_empty() {
        return vec![(beta.clone(), 1)];
    }
    if beta.is_empty() {
        return vec![(alpha.clone(), 1)];
    }
    let u = chain_word(alpha, 0);
    let v = chain_word(beta, u.len() as u32);
    let (m, n) = (u.len(), v.len());
    assert!(m + n <= 64, "shuffle product limited to total weight 64");

    // Forward DP over (i, j, last letter taken from u?) carrying descent masks.
    type Layer = HashMap<(usize, usize, bool), HashMap<u64, u64>>;
    let mut layer: Layer = HashMap::new();
    layer.entry((1, 0, true)).or_default().insert(0, 1);
    layer.entry((0, 1, false)).or_default().insert(0, 1);
    for _ in 1..m + n {
        let mut next: Layer = HashMap::new();
        for ((i, j, from_u), masks) in layer {
            let prev = if from_u { u[i - 1] } else { v[j - 1] };
            let pos = i + j; // 1-based position of `prev`
            let mut push = |ni: usize, nj: usize, fu: bool, letter: u32| {
                let bit = if prev > letter { 1u64 << (pos - 1) } else { 0 };
                let slot = next.entry((ni, nj, fu)).or_default();
                for (&mask, &cnt) in &masks {
                    *slot.entry(mask | bit).or_insert(0) += cnt;
                }
            };
            if i < m {
                push(i + 1, j, true, u[i]);
            }
            if j < n {
                push(i, j + 1, false, v[j]);
            }
        }
        layer = next;
    }
    let mut totals: BTreeMap<u64, u64> = BTreeMap::new();
    for (_, masks) in layer {
        for (mask, cnt) in masks {
            *totals.entry(mask).or_insert(0) += cnt;
        }
    }
    totals
        .into_iter()
        .map(|(mask, cnt)| (Composition::from_descent_mask(mask, m + n), cnt))
        .collect()
}

type QshMemo = HashMap<(Vec<u32>, Vec<u32>), Rc<BTreeMap<Vec<u32>, u64>>>;

fn quasishuffle(a: &[u32], b: &[u32], memo: &mut QshMemo) -> Rc<BTreeMap<Vec<u32>, u64>> {
    if a.is_empty() || b.is_empty() {
        let mut single = BTreeMap::new();
        single.insert(if a.is_empty() { b.to_vec() } else { a.to_vec() }, 1);
        return Rc::new(single);
    }
    let key = (a.to_vec(), b.to_vec());
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let mut out: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
    let mut prepend = |head: u32, rest: &BTreeMap<Vec<u32>, u64>| {
        for (w, c) in rest {
            let mut word = Vec::with_capacity(w.len() + 1);
            word.push(head);
            word.extend_from_slice(w);
            *out.entry(word).or_insert(0) += c;
        }
    };
    prepend(a[0], &quasishuffle(&a[1..], b, memo));
    prepend(b[0], &quasishuffle(a, &b[1..], memo));
    prepend(a[0] + b[0], &quasishuffle(&a[1..], &b[1..], memo));
    let out = Rc::new(out);
    memo.insert(key, out.clone());
    out
}

/// Dense specialization coefficients keyed by `(alpha, k)`.
type SpecCache = HashMap<(Composition, usize), Rc<Vec<u128>>>;

thread_local! {
    static SPEC_CACHE: RefCell<SpecCache> =
        RefCell::new(HashMap::new());
}

const SPEC_CACHE_LIMIT: usize = 1 << 16;

/// Dense coefficients of `M_alpha(1, q, ..., q^{k-1})`. Each coefficient is at
/// most `binomial(k, l(alpha))`, so `u128` is exact for `k <= 127`.
fn monomial_specialization(alpha: &Composition, k: usize) -> Rc<Vec<u128>> {
    assert!(k <= 127, "principal specialization order above 127 is not supported");
    let key = (alpha.clone(), k);
    if let Some(hit) = SPEC_CACHE.with(|c| c.borrow().get(&key).cloned()) {
        return hit;
    }
    let poly = Rc::new(specialization_dp::<u128>(alpha.parts(), k));
    SPEC_CACHE.with(|c| {
        let mut c = c.borrow_mut();
        if c.len() >= SPEC_CACHE_LIMIT {
            c.clear();
        }
        c.insert(key, poly.clone());
    });
    poly
}

/// Sum over `0 <= i_1 < ... < i_l <= k-1` of `q^{sum_j parts_j * i_j}`.
fn specialization_dp<T>(parts: &[u32], k: usize) -> Vec<T>
where
    T: Zero + One + Clone + for<'a> AddAssign<&'a T>,
{
    let l = parts.len();
    if l > k {
        return vec![];
    }
    let weight: usize = parts.iter().map(|&p| p as usize).sum();
    let max_exp = weight * k.saturating_sub(1);
    // dp[j] = generating polynomial with the first j parts placed.
    let mut dp: Vec<Vec<T>> = vec![vec![T::zero(); max_exp + 1]; l + 1];
    dp[0][0] = T::one();
    for i in 0..k {
        for j in (1..=l).rev() {
            let shift = parts[j - 1] as usize * i;
            let (lo, hi) = dp.split_at_mut(j);
            let src = &lo[j - 1];
            let dst = &mut hi[0];
            for e in 0..=max_exp - shift.min(max_exp) {
                if !src[e].is_zero() && e + shift <= max_exp {
                    dst[e + shift] += &src[e];
                }
            }
        }
    }
    dp.pop().unwrap()
}

impl fmt::Display for QSymExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let letter = self.basis.letter();
        for (i, (c, k)) in self.terms.iter().enumerate() {
            let mag = k.abs();
            if i == 0 {
                if k.is_negative() {
                    write!(f, "-")?;
                }
            } else if k.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if c.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{letter}{c}")?;
            } else {
                write!(f, "{mag}·{letter}{c}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct RawTerm {
    comp: Composition,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct RawExpr {
    basis: Basis,
    terms: Vec<RawTerm>,
}

impl Serialize for QSymExpr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawExpr {
            basis: self.basis,
            terms: self
                .terms
                .iter()
                .map(|(c, k)| RawTerm {
                    comp: c.clone(),
                    coeff: k.to_string(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QSymExpr {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawExpr::deserialize(d)?;
        let mut e = QSymExpr::zero(raw.basis);
        for t in raw.terms {
            let k: BigInt = t.coeff.parse().map_err(serde::de::Error::custom)?;
            e.add_term(t.comp, k);
        }
        Ok(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comp;

    fn fsum(terms: &[(Composition, i64)]) -> QSymExpr {
        QSymExpr::from_terms(Basis::F, terms.iter().cloned())
    }

    fn msum(terms: &[(Composition, i64)]) -> QSymExpr {
        QSymExpr::from_terms(Basis::M, terms.iter().cloned())
    }

    #[test]
    fn f_to_m_worked_example() {
        let k = fsum(&[(comp![2, 2], 1), (comp![3, 1], 1)]);
        let expected = msum(&[
            (comp![2, 2], 1),
            (comp![3, 1], 1),
            (comp![1, 1, 2], 1),
            (comp![2, 1, 1], 2),
            (comp![1, 2, 1], 1),
            (comp![1, 1, 1, 1], 2),
        ]);
        assert_eq!(k.f_to_m().unwrap(), expected);
        assert_eq!(expected.m_to_f().unwrap(), k);
    }

    #[test]
    fn small_conversions() {
        assert_eq!(
            QSymExpr::f(Composition::ones(4)).f_to_m().unwrap(),
            QSymExpr::m(Composition::ones(4))
        );
        assert_eq!(
            QSymExpr::f(comp![2]).f_to_m().unwrap(),
            msum(&[(comp![2], 1), (comp![1, 1], 1)])
        );
        assert_eq!(QSymExpr::m(comp![1, 1]).m_to_f().unwrap(), QSymExpr::f(comp![1, 1]));
        assert_eq!(
            QSymExpr::m(comp![2]).m_to_f().unwrap(),
            fsum(&[(comp![2], 1), (comp![1, 1], -1)])
        );
        assert!(QSymExpr::m(comp![2]).f_to_m().is_err());
    }

    #[test]
    fn sparse_and_dense_transforms_agree() {
        // Weight 20 single term takes the sparse path; compare against a dense run.
        let big = QSymExpr::f(comp![5, 5, 5, 5]);
        let m = big.f_to_m().unwrap();
        assert_eq!(m.len(), 1 << 16);
        assert_eq!(m.m_to_f().unwrap(), big);
    }

    #[test]
    fn add_and_scale() {
        let f1 = QSymExpr::f(comp![1]);
        assert_eq!(f1.try_add(&f1).unwrap(), fsum(&[(comp![1], 2)]));
        let g = fsum(&[(comp![2, 1], 3), (comp![1], -2)]);
        assert!(g.try_add(&g.scale(&BigInt::from(-1))).unwrap().is_zero());
        let a = msum(&[(comp![2], 1), (comp![1, 1], 1)]);
        let b = msum(&[(comp![2], 1), (comp![1, 1], -1)]);
        assert_eq!(a.try_add(&b).unwrap(), msum(&[(comp![2], 2)]));
        assert!(matches!(
            a.try_add(&f1),
            Err(Error::BasisMismatch {
                expected: 'F',
                found: 'M'
            })
        ));
    }

    #[test]
    fn products() {
        let f1 = QSymExpr::f(comp![1]);
        assert_eq!(f1.mul(&f1), fsum(&[(comp![2], 1), (comp![1, 1], 1)]));
        assert_eq!(
            f1.mul(&QSymExpr::f(comp![2])),
            fsum(&[(comp![3], 1), (comp![2, 1], 1), (comp![1, 2], 1)])
        );
        let g = fsum(&[(comp![3, 1], 2), (comp![1, 2], -1)]);
        assert_eq!(QSymExpr::one(Basis::F).mul(&g), g);
        let m1 = QSymExpr::m(comp![1]);
        assert_eq!(
            m1.mul_quasishuffle(&m1).unwrap(),
            msum(&[(comp![1, 1], 2), (comp![2], 1)])
        );
        assert_eq!(
            m1.mul_quasishuffle(&QSymExpr::m(comp![2])).unwrap(),
            msum(&[(comp![1, 2], 1), (comp![2, 1], 1), (comp![3], 1)])
        );
        let ma = QSymExpr::m(comp![2, 1, 3]);
        assert_eq!(ma.mul_quasishuffle(&QSymExpr::one(Basis::M)).unwrap(), ma);
    }

    #[test]
    fn bar_and_ordinal_products() {
        assert_eq!(
            QSymExpr::f(comp![3, 1, 2]).bar().unwrap(),
            QSymExpr::f(comp![1, 1, 3, 1])
        );
        assert_eq!(QSymExpr::f(comp![1]).bar().unwrap(), QSymExpr::f(comp![1]));
        assert_eq!(QSymExpr::f(comp![5]).bar().unwrap(), QSymExpr::f(Composition::ones(5)));
        let a = QSymExpr::f(comp![3, 1]);
        let b = QSymExpr::f(comp![2, 2]);
        assert_eq!(a.up(&b).unwrap(), QSymExpr::f(comp![3, 3, 2]));
        assert_eq!(a.upup(&b).unwrap(), QSymExpr::f(comp![3, 1, 2, 2]));
        let f1 = QSymExpr::f(comp![1]);
        assert_eq!(f1.up(&f1).unwrap(), QSymExpr::f(comp![2]));
        assert_eq!(f1.upup(&f1).unwrap(), QSymExpr::f(comp![1, 1]));
        assert_eq!(f1.up(&QSymExpr::one(Basis::F)), Err(Error::EmptyOperand));
        assert_eq!(QSymExpr::one(Basis::F).upup(&f1), Err(Error::EmptyOperand));
    }

    #[test]
    fn specialization_examples() {
        assert_eq!(
            QSymExpr::m(comp![1]).principal_specialization(2),
            QPolynomial::from_dense(&[1, 1])
        );
        assert_eq!(
            QSymExpr::f(comp![1, 3, 1]).principal_specialization(5),
            QSymExpr::f(comp![2, 1, 2]).principal_specialization(5)
        );
        assert!(QSymExpr::f(comp![1]).principal_specialization(0).is_zero());
        assert_eq!(QSymExpr::one(Basis::F).principal_specialization(0), QPolynomial::one());
        // M_{21}(1, q, q^2) = q^1 + q^2 + q^4 (pairs i<j: 2i + j)
        assert_eq!(
            QSymExpr::m(comp![2, 1]).principal_specialization(3),
            QPolynomial::from_coeffs([(1u32, 1), (2, 1), (4, 1)])
        );
    }

    #[test]
    fn bigint_specialization_matches_u128() {
        let a: Vec<u128> = specialization_dp(&[2, 1, 3], 6);
        let b: Vec<BigInt> = specialization_dp(&[2, 1, 3], 6);
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(BigInt::from(*x), *y);
        }
    }

    #[test]
    fn display_and_json() {
        let k = fsum(&[(comp![2, 2], 1), (comp![3, 1], 1)]);
        assert_eq!(k.to_string(), "F[2,2] + F[3,1]");
        let m = msum(&[(comp![2, 1, 1], 2), (comp![1], -1), (Composition::empty(), 3)]);
        assert_eq!(m.to_string(), "3 - M[1] + 2·M[2,1,1]");
        let s = serde_json::to_string(&k).unwrap();
        assert_eq!(
            s,
            r#"{"basis":"F","terms":[{"comp":[2,2],"coeff":"1"},{"comp":[3,1],"coeff":"1"}]}"#
        );
        let back: QSymExpr = serde_json::from_str(&s).unwrap();
        assert_eq!(back, k);
        assert_eq!(QSymExpr::zero(Basis::M).to_string(), "0");
    }

    #[test]
    fn f_support_and_degree() {
        let k = fsum(&[(comp![2, 2], 1), (comp![3, 1], 1)]);
        let sup: Vec<_> = k.f_support().unwrap().into_iter().collect();
        assert_eq!(sup, vec![comp![2, 2], comp![3, 1]]);
        assert!(QSymExpr::zero(Basis::F).f_support().unwrap().is_empty());
        assert_eq!(k.degree(), Some(4));
        assert_eq!(QSymExpr::zero(Basis::F).degree(), None);
    }
}
