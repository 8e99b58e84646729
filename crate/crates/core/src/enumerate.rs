//! Duplicate-free generation of the tree families the conjectures range over.
//!
//! Every generator returns its objects sorted by canonical key, so the output
//! is deterministic and can be sliced by index range for sharding.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::guard;
use crate::poset::{bit, full_mask, tree_code, CanonicalKey, Cover, EdgeKind, LabeledPoset};

/// Default ceiling on `n` for every tree family.
pub const TREE_GUARD: usize = 12;

/// An undirected tree on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FreeTree {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<u64>,
}

impl FreeTree {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut edges: Vec<(usize, usize)> = edges.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
        edges.sort_unstable();
        edges.dedup();
        if n == 0 || n > 64 || edges.len() + 1 != n {
            return Err(Error::InvalidPoset(format!(
                "a tree on {n} vertices needs {} distinct edges",
                n.saturating_sub(1)
            )));
        }
        let mut adj = vec![0u64; n];
        for &(u, v) in &edges {
            if v >= n || u == v {
                return Err(Error::InvalidPoset(format!("bad tree edge {} {}", u + 1, v + 1)));
            }
            adj[u] |= bit(v);
            adj[v] |= bit(u);
        }
        let tree = FreeTree { n, edges, adj };
        let mut seen = 1u64;
        let mut frontier = 1u64;
        while frontier != 0 {
            let x = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = tree.adj[x] & !seen;
            seen |= new;
            frontier |= new;
        }
        if seen != full_mask(n) {
            return Err(Error::InvalidPoset("tree edges are not connected".into()));
        }
        Ok(tree)
    }

    /// Tree with `parent[i]` the parent of vertex `i` (ignored for the root).
    fn from_parents(parent: &[usize]) -> Self {
        FreeTree::new(parent.len(), (1..parent.len()).map(|i| (parent[i], i))).expect("valid parents")
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(|a| a.count_ones() as usize).collect()
    }

    pub fn canonical_key(&self) -> CanonicalKey {
        CanonicalKey::from_bytes(tree_code(full_mask(self.n), &|v| self.adj[v], &|_, _| b'e'))
    }

    /// The `2^(n-1)` ways of directing the edges, as all-weak posets; bit `i`
    /// of the index reverses edge `i`.
    pub fn orientations(&self) -> impl Iterator<Item = LabeledPoset> + '_ {
        (0..1u64 << self.edges.len()).map(move |m| self.orient(m, EdgeKind::Weak))
    }

    fn orient(&self, mask: u64, kind: EdgeKind) -> LabeledPoset {
        LabeledPoset::new(
            self.n,
            self.edges.iter().enumerate().map(|(i, &(u, v))| {
                if mask & bit(i) == 0 {
                    Cover::new(u, v, kind)
                } else {
                    Cover::new(v, u, kind)
                }
            }),
        )
        .expect("tree orientations are posets")
    }

    /// One-line form `4; 1-2; 2-3; 2-4`.
    pub fn to_inline(&self) -> String {
        let mut s = self.n.to_string();
        for &(u, v) in &self.edges {
            s.push_str(&format!("; {}-{}", u + 1, v + 1));
        }
        s
    }
}

impl fmt::Debug for FreeTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreeTree({})", self.to_inline())
    }
}

#[derive(Serialize, Deserialize)]
struct RawTree {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Serialize for FreeTree {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawTree {
            n: self.n,
            edges: self.edges.iter().map(|&(u, v)| (u + 1, v + 1)).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FreeTree {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawTree::deserialize(d)?;
        if raw.edges.iter().any(|&(u, v)| u == 0 || v == 0) {
            return Err(serde::de::Error::custom("vertices are numbered from 1"));
        }
        FreeTree::new(raw.n, raw.edges.into_iter().map(|(u, v)| (u - 1, v - 1))).map_err(serde::de::Error::custom)
    }
}

/// The families of objects the generators produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    FreeTree,
    TreePoset,
    RootedTreePoset,
    LabeledTreePoset,
    LabeledRootedTreePoset,
    FairTree,
    DirectedTree,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::FreeTree,
        Family::TreePoset,
        Family::RootedTreePoset,
        Family::LabeledTreePoset,
        Family::LabeledRootedTreePoset,
        Family::FairTree,
        Family::DirectedTree,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::FreeTree => "free_tree",
            Family::TreePoset => "tree_poset",
            Family::RootedTreePoset => "rooted_tree_poset",
            Family::LabeledTreePoset => "labeled_tree_poset",
            Family::LabeledRootedTreePoset => "labeled_rooted_tree_poset",
            Family::FairTree => "fair_tree",
            Family::DirectedTree => "directed_tree",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse {
                line: 0,
                msg: format!("unknown family {s:?}"),
            })
    }
}

/// A family together with the object size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    pub n: usize,
}

impl FamilySpec {
    pub fn new(family: Family, n: usize) -> Self {
        FamilySpec { family, n }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(n={})", self.family, self.n)
    }
}

/// One generated object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Tree(FreeTree),
    Poset(LabeledPoset),
    Digraph(Digraph),
}

impl Item {
    pub fn canonical_key(&self) -> Result<CanonicalKey> {
        match self {
            Item::Tree(t) => Ok(t.canonical_key()),
            Item::Poset(p) => p.canonical_key(),
            Item::Digraph(g) => g.canonical_key(),
        }
    }

    pub fn as_poset(&self) -> Option<&LabeledPoset> {
        match self {
            Item::Poset(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_digraph(&self) -> Option<&Digraph> {
        match self {
            Item::Digraph(g) => Some(g),
            _ => None,
        }
    }

    pub fn to_inline(&self) -> String {
        match self {
            Item::Tree(t) => t.to_inline(),
            Item::Poset(p) => p.to_inline(),
            Item::Digraph(g) => g.to_inline(),
        }
    }
}

/// How to attach strict/weak marks to the covers of a tree poset.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LabelPolicy {
    AllStrict,
    AllWeak,
    AllAssignments,
    Fair,
}

/// Rooted trees on `n` vertices as canonical level sequences, from the path
/// down to the star.
pub fn rooted_level_sequences(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![];
    }
    let mut level: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    loop {
        out.push(level.clone());
        let Some(p) = (1..n).rev().find(|&i| level[i] > 1) else {
            break;
        };
        let q = (0..p)
            .rev()
            .find(|&j| level[j] == level[p] - 1)
            .expect("parent level exists");
        for i in p..n {
            level[i] = level[i - (p - q)];
        }
    }
    out
}

fn parents_of(level: &[usize]) -> Vec<usize> {
    (0..level.len())
        .map(|i| {
            if i == 0 {
                0
            } else {
                (0..i).rev().find(|&j| level[j] + 1 == level[i]).unwrap()
            }
        })
        .collect()
}

fn dedup_sorted<T>(items: impl IntoIterator<Item = Result<(CanonicalKey, T)>>) -> Result<Vec<T>> {
    let mut map = BTreeMap::new();
    for item in items {
        let (k, v) = item?;
        map.entry(k).or_insert(v);
    }
    Ok(map.into_values().collect())
}

pub fn gen_free_trees(n: usize) -> Result<Vec<FreeTree>> {
    guard::check("tree enumeration", n, TREE_GUARD)?;
    dedup_sorted(rooted_level_sequences(n).into_iter().map(|l| {
        let t = FreeTree::from_parents(&parents_of(&l));
        Ok((t.canonical_key(), t))
    }))
}

/// Every orientation of every free tree, one per isomorphism class, all weak.
pub fn gen_tree_posets(n: usize) -> Result<Vec<LabeledPoset>> {
    let trees = gen_free_trees(n)?;
    dedup_sorted(
        trees
            .iter()
            .flat_map(|t| t.orientations())
            .map(|p| Ok((p.canonical_key()?, p))),
    )
}

/// Tree posets with a unique minimal element, all weak.
pub fn gen_rooted_tree_posets(n: usize) -> Result<Vec<LabeledPoset>> {
    guard::check("tree enumeration", n, TREE_GUARD)?;
    dedup_sorted(rooted_level_sequences(n).into_iter().map(|l| {
        let parent = parents_of(&l);
        let p = LabeledPoset::new(n, (1..n).map(|i| Cover::new(parent[i], i, EdgeKind::Weak)))?;
        Ok((p.canonical_key()?, p))
    }))
}

fn assign(p: &LabeledPoset, kinds: impl Fn(usize, &Cover) -> EdgeKind) -> LabeledPoset {
    LabeledPoset::new(
        p.len(),
        p.covers()
            .iter()
            .enumerate()
            .map(|(i, c)| Cover::new(c.lo, c.hi, kinds(i, c))),
    )
    .expect("same Hasse diagram")
}

fn kind_of_bit(mask: u64, i: usize) -> EdgeKind {
    if mask & bit(i) == 0 {
        EdgeKind::Weak
    } else {
        EdgeKind::Strict
    }
}

/// Expand base posets by strictness assignments, deduplicating up to
/// isomorphism of labeled posets.
pub fn gen_labeled_variants(base: &[LabeledPoset], policy: LabelPolicy) -> Result<Vec<LabeledPoset>> {
    let mut out: Vec<Result<(CanonicalKey, LabeledPoset)>> = Vec::new();
    for p in base {
        match policy {
            LabelPolicy::AllStrict => out.push(keyed(p.all_strict())),
            LabelPolicy::AllWeak => out.push(keyed(p.all_weak())),
            LabelPolicy::AllAssignments => {
                for m in 0..1u64 << p.covers().len() {
                    out.push(keyed(assign(p, |i, _| kind_of_bit(m, i))));
                }
            }
            LabelPolicy::Fair => {
                // one choice per element that has upper covers
                let parents: Vec<usize> = (0..p.len()).filter(|&x| p.upper_covers(x) != 0).collect();
                for m in 0..1u64 << parents.len() {
                    let q = assign(p, |_, c| {
                        let i = parents.iter().position(|&x| x == c.lo).unwrap();
                        kind_of_bit(m, i)
                    });
                    if q.is_fair_tree() {
                        out.push(keyed(q));
                    }
                }
            }
        }
    }
    dedup_sorted(out)
}

fn keyed(p: LabeledPoset) -> Result<(CanonicalKey, LabeledPoset)> {
    Ok((p.canonical_key()?, p))
}

/// Every orientation of every free tree as a digraph, one per isomorphism
/// class.
pub fn gen_directed_trees(n: usize) -> Result<Vec<Digraph>> {
    let trees = gen_free_trees(n)?;
    let mut all = Vec::new();
    for t in &trees {
        for m in 0..1u64 << t.edges().len() {
            let g = Digraph::new(
                n,
                t.edges()
                    .iter()
                    .enumerate()
                    .map(|(i, &(u, v))| if m & bit(i) == 0 { (u, v) } else { (v, u) }),
            )?;
            all.push(Ok((g.canonical_key()?, g)));
        }
    }
    dedup_sorted(all)
}

/// All objects of a family, sorted by canonical key.
pub fn generate(spec: FamilySpec) -> Result<Vec<Item>> {
    let n = spec.n;
    if n == 0 {
        return Err(Error::InvalidPoset("family size must be at least 1".into()));
    }
    Ok(match spec.family {
        Family::FreeTree => gen_free_trees(n)?.into_iter().map(Item::Tree).collect(),
        Family::TreePoset => gen_tree_posets(n)?.into_iter().map(Item::Poset).collect(),
        Family::RootedTreePoset => gen_rooted_tree_posets(n)?.into_iter().map(Item::Poset).collect(),
        Family::LabeledTreePoset => gen_labeled_variants(&gen_tree_posets(n)?, LabelPolicy::AllAssignments)?
            .into_iter()
            .map(Item::Poset)
            .collect(),
        Family::LabeledRootedTreePoset => {
            gen_labeled_variants(&gen_rooted_tree_posets(n)?, LabelPolicy::AllAssignments)?
                .into_iter()
                .map(Item::Poset)
                .collect()
        }
        Family::FairTree => gen_labeled_variants(&gen_rooted_tree_posets(n)?, LabelPolicy::Fair)?
            .into_iter()
            .map(Item::Poset)
            .collect(),
        Family::DirectedTree => gen_directed_trees(n)?.into_iter().map(Item::Digraph).collect(),
    })
}

/// The objects with index in `range` (clamped to the family size).
pub fn generate_range(spec: FamilySpec, range: Range<usize>) -> Result<Vec<Item>> {
    let all = generate(spec)?;
    let end = range.end.min(all.len());
    let start = range.start.min(end);
    Ok(all.into_iter().skip(start).take(end - start).collect())
}

/// Labeled trees on `0..n` from Prüfer sequences: the brute-force oracle
/// for [`gen_free_trees`].
pub fn all_labeled_trees(n: usize) -> Vec<FreeTree> {
    match n {
        0 => return vec![],
        1 => return vec![FreeTree::new(1, []).unwrap()],
        2 => return vec![FreeTree::new(2, [(0, 1)]).unwrap()],
        _ => {}
    }
    let len = n - 2;
    let total = n.pow(len as u32);
    let mut out = Vec::with_capacity(total);
    let mut seq = vec![0usize; len];
    for mut code in 0..total {
        for s in seq.iter_mut() {
            *s = code % n;
            code /= n;
        }
        let mut degree = vec![1usize; n];
        for &s in &seq {
            degree[s] += 1;
        }
        let mut edges = Vec::with_capacity(n - 1);
        for &s in &seq {
            let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
            edges.push((leaf, s));
            degree[leaf] -= 1;
            degree[s] -= 1;
        }
        let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
        edges.push((rest[0], rest[1]));
        out.push(FreeTree::new(n, edges).expect("Prüfer decoding yields a tree"));
    }
    out
}
