//! Collision scans: group a family by an invariant and report classes of
//! non-isomorphic objects that share a value.
//!
//! Objects are processed in fixed-size chunks in index order. Within a chunk
//! the invariant is evaluated in parallel, and the group table is merged in
//! index order, so reports do not depend on the number of worker threads or
//! on where a run was interrupted and resumed.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::digraph::Digraph;
use crate::enumerate::{generate, Family, FamilySpec, Item};
use crate::error::{Error, Result};
use crate::guard;
use crate::io;
use crate::poset::LabeledPoset;

type EvalFn = dyn Fn(&Item) -> Result<Vec<u8>> + Send + Sync;

/// A named invariant mapping an object to canonical bytes.
#[derive(Clone)]
pub struct Invariant {
    name: String,
    eval: Arc<EvalFn>,
}

impl Invariant {
    pub fn new(name: impl Into<String>, eval: impl Fn(&Item) -> Result<Vec<u8>> + Send + Sync + 'static) -> Self {
        Invariant {
            name: name.into(),
            eval: Arc::new(eval),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, item: &Item) -> Result<Vec<u8>> {
        (self.eval)(item)
    }

    /// The canonical key itself: never collides.
    pub fn canonical_key() -> Self {
        Invariant::new("canonical_key", |it| Ok(it.canonical_key()?.as_bytes().to_vec()))
    }

    /// K of the poset with its own strictness marks, in the F basis.
    pub fn enumerator() -> Self {
        Invariant::new("K", |it| Ok(poset(it)?.enumerator_f()?.canonical_bytes()))
    }

    /// K of the all-strict version.
    pub fn strict_enumerator() -> Self {
        Invariant::new("Kbar", |it| {
            Ok(poset(it)?.all_strict().enumerator_f()?.canonical_bytes())
        })
    }

    /// K of the all-weak version.
    pub fn weak_enumerator() -> Self {
        Invariant::new("K_weak", |it| {
            Ok(poset(it)?.all_weak().enumerator_f()?.canonical_bytes())
        })
    }

    /// The set of compositions in the F-expansion of the all-strict K.
    pub fn strict_f_support() -> Self {
        Invariant::new("Kbar_F_support", |it| {
            let support = poset(it)?.all_strict().enumerator_f()?.f_support()?;
            Ok(serde_json::to_vec(&support).expect("support serializes"))
        })
    }

    /// Order-`k` principal specialization of the all-strict (or all-weak) K.
    pub fn specialization(k: usize, weak: bool) -> Self {
        let name = if weak {
            format!("ps{k}(K_weak)")
        } else {
            format!("ps{k}(Kbar)")
        };
        Invariant::new(name, move |it| {
            let p = poset(it)?;
            let p = if weak { p.all_weak() } else { p.all_strict() };
            Ok(p.enumerator_f()?.principal_specialization(k).to_string().into_bytes())
        })
    }

    /// The chromatic quasisymmetric function with the ascent variable.
    pub fn chromatic() -> Self {
        Invariant::new("X_G", |it| Ok(digraph(it)?.chromatic_qsym_t()?.canonical_bytes()))
    }

    /// The multiset of chromatic functions over all orientations of a tree.
    pub fn orientation_multiset() -> Self {
        Invariant::new("orientation_multiset", |it| {
            let Item::Tree(t) = it else {
                return Err(Error::InvalidPoset("expected a free tree".into()));
            };
            let mut values = Vec::with_capacity(1 << t.edges().len());
            for m in 0..1u64 << t.edges().len() {
                let g = Digraph::new(
                    t.len(),
                    t.edges()
                        .iter()
                        .enumerate()
                        .map(|(i, &(u, v))| if m >> i & 1 == 0 { (u, v) } else { (v, u) }),
                )?;
                values.push(g.chromatic_qsym_t()?.canonical_bytes());
            }
            values.sort();
            Ok(values.concat())
        })
    }
}

impl std::fmt::Debug for Invariant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Invariant({})", self.name)
    }
}

fn poset(it: &Item) -> Result<&LabeledPoset> {
    it.as_poset()
        .ok_or_else(|| Error::InvalidPoset("expected a poset".into()))
}

fn digraph(it: &Item) -> Result<&Digraph> {
    it.as_digraph()
        .ok_or_else(|| Error::InvalidDigraph("expected a digraph".into()))
}

/// One set of objects sharing an invariant value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollisionClass {
    pub value_hash: String,
    /// Text serializations of the members.
    pub members: Vec<String>,
    /// Canonical keys of the members, in hex.
    pub keys: Vec<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub uninformative: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollisionReport {
    pub family: String,
    pub invariant: String,
    pub n: usize,
    pub scanned: usize,
    pub collisions: Vec<CollisionClass>,
    pub runtime_ms: u64,
}

impl CollisionReport {
    pub fn is_clean(&self) -> bool {
        self.collisions.is_empty()
    }

    /// Equality ignoring the runtime.
    pub fn same_findings(&self, other: &Self) -> bool {
        (&self.family, &self.invariant, self.n, self.scanned, &self.collisions)
            == (
                &other.family,
                &other.invariant,
                other.n,
                other.scanned,
                &other.collisions,
            )
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "{} n={} invariant={}: scanned {}, {} collision class(es), {} ms\n",
            self.family,
            self.n,
            self.invariant,
            self.scanned,
            self.collisions.len(),
            self.runtime_ms
        );
        for (i, c) in self.collisions.iter().enumerate() {
            s.push_str(&format!("\nclass {} value {}", i + 1, &c.value_hash[..16]));
            if c.uninformative {
                s.push_str(" (uninformative invariant)");
            }
            s.push('\n');
            for m in &c.members {
                s.push_str(m);
                s.push('\n');
            }
        }
        s
    }
}

#[derive(Clone, Debug)]
pub struct ScanOptions {
    /// Worker threads; 0 means the rayon default.
    pub jobs: usize,
    pub chunk_size: usize,
    pub checkpoint: Option<PathBuf>,
    /// Stop with [`Error::Checkpoint`] after this many chunks in this run.
    pub max_chunks: Option<usize>,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            jobs: 0,
            chunk_size: 256,
            checkpoint: None,
            max_chunks: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct Progress {
    family: String,
    invariant: String,
    n: usize,
    total: usize,
    chunk_size: usize,
    next: usize,
    groups: BTreeMap<String, Vec<usize>>,
    elapsed_ms: u64,
}

#[derive(Serialize, Deserialize)]
struct CheckpointFile {
    progress: Progress,
    sha256: String,
}

fn digest(progress: &Progress) -> String {
    hex::encode(Sha256::digest(
        serde_json::to_vec(progress).expect("progress serializes"),
    ))
}

fn save_checkpoint(path: &PathBuf, progress: &Progress) -> Result<()> {
    let file = CheckpointFile {
        sha256: digest(progress),
        progress: progress.clone(),
    };
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, serde_json::to_vec_pretty(&file).expect("checkpoint serializes"))?;
    fs::rename(&tmp, path)?;
    Ok(())
}

fn load_checkpoint(path: &PathBuf) -> Result<Option<Progress>> {
    if !path.exists() {
        return Ok(None);
    }
    let bytes = fs::read(path)?;
    let file: CheckpointFile =
        serde_json::from_slice(&bytes).map_err(|e| Error::Checkpoint(format!("unreadable checkpoint: {e}")))?;
    if digest(&file.progress) != file.sha256 {
        return Err(Error::Checkpoint("integrity digest mismatch".into()));
    }
    Ok(Some(file.progress))
}

fn hash_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Io(e.to_string()))
}

/// Scan an explicit list of objects. `label` names the list in the report.
pub fn collision_scan_items(
    label: &str,
    n: usize,
    items: &[Item],
    invariant: &Invariant,
    opts: &ScanOptions,
) -> Result<CollisionReport> {
    let start = Instant::now();
    let chunk = opts.chunk_size.max(1);
    let fresh = Progress {
        family: label.to_string(),
        invariant: invariant.name.clone(),
        n,
        total: items.len(),
        chunk_size: chunk,
        next: 0,
        groups: BTreeMap::new(),
        elapsed_ms: 0,
    };
    let mut progress = match opts.checkpoint.as_ref().map(load_checkpoint).transpose()?.flatten() {
        Some(saved) => {
            let same_job = (&saved.family, &saved.invariant, saved.n, saved.total, saved.chunk_size)
                == (&fresh.family, &fresh.invariant, fresh.n, fresh.total, fresh.chunk_size);
            if !same_job {
                return Err(Error::Checkpoint(format!(
                    "checkpoint is for {} n={} invariant={}, not {} n={} invariant={}",
                    saved.family, saved.n, saved.invariant, fresh.family, fresh.n, fresh.invariant
                )));
            }
            saved
        }
        None => fresh,
    };
    let workers = pool(opts.jobs)?;
    let mut done_here = 0usize;
    while progress.next < items.len() {
        if opts.max_chunks.is_some_and(|m| done_here >= m) {
            return Err(Error::Checkpoint(format!(
                "interrupted after {} of {} objects",
                progress.next,
                items.len()
            )));
        }
        let lo = progress.next;
        let hi = (lo + chunk).min(items.len());
        let hashes: Vec<Result<String>> = workers.install(|| {
            items[lo..hi]
                .par_iter()
                .map(|it| evaluate(invariant, it).map(|v| hash_hex(&v)))
                .collect()
        });
        for (i, h) in (lo..hi).zip(hashes) {
            progress.groups.entry(h?).or_default().push(i);
        }
        progress.next = hi;
        done_here += 1;
        if let Some(path) = &opts.checkpoint {
            let mut snapshot = progress.clone();
            snapshot.elapsed_ms += start.elapsed().as_millis() as u64;
            save_checkpoint(path, &snapshot)?;
        }
    }

    let mut collisions = Vec::new();
    for (hash, members) in &progress.groups {
        if members.len() < 2 {
            continue;
        }
        // recompute full values and split on any hash accident
        let mut by_value: BTreeMap<Vec<u8>, Vec<usize>> = BTreeMap::new();
        for &i in members {
            by_value.entry(evaluate(invariant, &items[i])?).or_default().push(i);
        }
        for (value, idx) in by_value {
            if idx.len() < 2 {
                continue;
            }
            let keys: Vec<String> = idx
                .iter()
                .map(|&i| items[i].canonical_key().map(|k| k.to_hex()))
                .collect::<Result<_>>()?;
            if keys.iter().collect::<BTreeSet<_>>().len() != keys.len() {
                return Err(Error::InvalidPoset(format!(
                    "duplicate objects in {label}: the family is not reduced"
                )));
            }
            collisions.push(CollisionClass {
                value_hash: hash.clone(),
                members: idx.iter().map(|&i| io::item_text(&items[i])).collect(),
                keys,
                uninformative: is_zero_value(&value),
            });
        }
    }
    Ok(CollisionReport {
        family: progress.family,
        invariant: progress.invariant,
        n,
        scanned: items.len(),
        collisions,
        runtime_ms: progress.elapsed_ms + start.elapsed().as_millis() as u64,
    })
}

fn is_zero_value(value: &[u8]) -> bool {
    value == b"0"
}

fn evaluate(invariant: &Invariant, item: &Item) -> Result<Vec<u8>> {
    invariant.eval(item).map_err(|e| Error::Invariant {
        key: item.to_inline(),
        source: Box::new(e),
    })
}

/// Generate a family and scan it.
pub fn collision_scan(spec: FamilySpec, invariant: &Invariant, opts: &ScanOptions) -> Result<CollisionReport> {
    let items = generate(spec)?;
    collision_scan_items(spec.family.name(), spec.n, &items, invariant, opts)
}

/// Tree posets under the all-strict enumerator.
pub fn conjecture2_scan(n: usize, opts: &ScanOptions) -> Result<CollisionReport> {
    guard::check("tree poset scan", n, 10)?;
    collision_scan(
        FamilySpec::new(Family::TreePoset, n),
        &Invariant::strict_enumerator(),
        opts,
    )
}

/// Labeled rooted-tree posets under their own enumerator.
pub fn conjecture3_scan(n: usize, opts: &ScanOptions) -> Result<CollisionReport> {
    guard::check("labeled rooted tree scan", n, 8)?;
    collision_scan(
        FamilySpec::new(Family::LabeledRootedTreePoset, n),
        &Invariant::enumerator(),
        opts,
    )
}

/// As [`conjecture3_scan`] without the rootedness hypothesis; collisions
/// are expected.
pub fn conjecture3_unrooted_scan(n: usize, opts: &ScanOptions) -> Result<CollisionReport> {
    guard::check("labeled tree scan", n, 7)?;
    collision_scan(
        FamilySpec::new(Family::LabeledTreePoset, n),
        &Invariant::enumerator(),
        opts,
    )
}

/// Fair trees under their enumerator. Any collision is a bug.
pub fn fair_tree_scan(n: usize, opts: &ScanOptions) -> Result<CollisionReport> {
    fair_tree_scan_with(n, &Invariant::enumerator(), opts)
}

/// [`fair_tree_scan`] with a substitute invariant, for testing the harness.
pub fn fair_tree_scan_with(n: usize, invariant: &Invariant, opts: &ScanOptions) -> Result<CollisionReport> {
    guard::check("fair tree scan", n, 8)?;
    collision_scan(FamilySpec::new(Family::FairTree, n), invariant, opts)
}

/// Tree posets under the order-`k` principal specialization of the
/// all-strict enumerator, or of the all-weak one when `weak` is set.
pub fn spec_scan(n: usize, k: usize, weak: bool, opts: &ScanOptions) -> Result<CollisionReport> {
    guard::check("specialization scan", n, 9)?;
    collision_scan(
        FamilySpec::new(Family::TreePoset, n),
        &Invariant::specialization(k, weak),
        opts,
    )
}

/// Directed trees under the chromatic quasisymmetric function. Every
/// reported pair is checked to have equal all-strict enumerators on the
/// associated posets.
pub fn xgt_scan(n: usize, opts: &ScanOptions) -> Result<CollisionReport> {
    guard::check("directed tree scan", n, 8)?;
    let report = collision_scan(FamilySpec::new(Family::DirectedTree, n), &Invariant::chromatic(), opts)?;
    for class in &report.collisions {
        let graphs: Vec<Digraph> = class
            .members
            .iter()
            .map(|m| io::parse_digraph(m))
            .collect::<Result<_>>()?;
        for pair in graphs.windows(2) {
            if !xgt_kbar_consistent(&pair[0], &pair[1])? {
                return Err(Error::InvalidDigraph(format!(
                    "equal X but unequal Kbar for {} and {}",
                    pair[0].to_inline(),
                    pair[1].to_inline()
                )));
            }
        }
    }
    Ok(report)
}

/// For two acyclic digraphs with equal X: the associated strict posets are
/// isomorphic or share the all-strict enumerator.
pub fn xgt_kbar_consistent(g: &Digraph, h: &Digraph) -> Result<bool> {
    if g.chromatic_qsym_t()? != h.chromatic_qsym_t()? {
        return Ok(true);
    }
    let (p, q) = (g.to_poset()?, h.to_poset()?);
    Ok(p.is_isomorphic(&q)? || p.enumerator_f()? == q.enumerator_f()?)
}

/// Free trees compared by the multiset of X over their orientations.
pub fn multiset_question_scan(n: usize, opts: &ScanOptions) -> Result<CollisionReport> {
    guard::check("orientation multiset scan", n, 7)?;
    collision_scan(
        FamilySpec::new(Family::FreeTree, n),
        &Invariant::orientation_multiset(),
        opts,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_key_never_collides() {
        let r = collision_scan(
            FamilySpec::new(Family::TreePoset, 5),
            &Invariant::canonical_key(),
            &ScanOptions::default(),
        )
        .unwrap();
        assert_eq!(r.scanned, 27);
        assert!(r.is_clean());
    }

    #[test]
    fn small_scans_are_clean() {
        let o = ScanOptions::default();
        assert!(conjecture2_scan(5, &o).unwrap().is_clean());
        assert!(conjecture3_scan(4, &o).unwrap().is_clean());
        assert!(fair_tree_scan(4, &o).unwrap().is_clean());
        assert!(xgt_scan(4, &o).unwrap().is_clean());
        assert!(multiset_question_scan(5, &o).unwrap().is_clean());
    }

    #[test]
    fn unrooted_labeled_trees_collide() {
        let r = conjecture3_unrooted_scan(3, &ScanOptions::default()).unwrap();
        assert!(!r.is_clean());
    }

    #[test]
    fn corrupted_enumerator_is_caught() {
        let r = fair_tree_scan_with(2, &Invariant::weak_enumerator(), &ScanOptions::default()).unwrap();
        assert_eq!(r.collisions.len(), 1);
        assert_eq!(r.collisions[0].members.len(), 2);
    }

    #[test]
    fn small_order_specialization_is_flagged() {
        // a strict 4-chain needs four distinct values, so order 3 gives zero
        let r = spec_scan(5, 3, false, &ScanOptions::default()).unwrap();
        assert!(r.collisions.iter().any(|c| c.uninformative));
    }
}
