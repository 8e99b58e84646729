//! Canonical keys for labeled posets.
//!
//! Tree-shaped components get an AHU encoding rooted at a centroid, each edge
//! tagged with its direction and kind. Other components are canonically
//! labeled by colour refinement followed by a lexicographically pruned
//! backtracking search. A disconnected poset's key is the sorted list of its
//! component keys.

use std::fmt;

use serde::{Serialize, Serializer};

use super::{bit, elements, EdgeKind, LabeledPoset};
use crate::error::Result;
use crate::guard;

/// Byte string identifying a labeled poset up to isomorphism.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(pub(crate) Vec<u8>);

impl CanonicalKey {
    pub(crate) fn from_bytes(bytes: Vec<u8>) -> Self {
        CanonicalKey(bytes)
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({})", self.to_hex())
    }
}

impl Serialize for CanonicalKey {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

/// Default size ceiling for the backtracking canonical labeling.
const GENERAL_GUARD: usize = 11;

// Edge tags seen from the current vertex towards a neighbour.
const UP_WEAK: u8 = b'a';
const UP_STRICT: u8 = b'b';
const DOWN_WEAK: u8 = b'c';
const DOWN_STRICT: u8 = b'd';

impl LabeledPoset {
    fn edge_tag(&self, from: usize, to: usize) -> u8 {
        match (self.cover_kind(from, to), self.cover_kind(to, from)) {
            (Some(EdgeKind::Weak), _) => UP_WEAK,
            (Some(EdgeKind::Strict), _) => UP_STRICT,
            (_, Some(EdgeKind::Weak)) => DOWN_WEAK,
            (_, Some(EdgeKind::Strict)) => DOWN_STRICT,
            _ => 0,
        }
    }

    pub fn canonical_key(&self) -> Result<CanonicalKey> {
        let comps = self.components();
        if comps.len() == 1 {
            return self.component_key(comps[0]).map(CanonicalKey);
        }
        let mut keys = comps
            .into_iter()
            .map(|c| self.component_key(c))
            .collect::<Result<Vec<_>>>()?;
        keys.sort();
        let mut out = vec![b'U'];
        for k in keys {
            out.extend_from_slice(&(k.len() as u32).to_be_bytes());
            out.extend(k);
        }
        Ok(CanonicalKey(out))
    }

    pub fn is_isomorphic(&self, other: &Self) -> Result<bool> {
        Ok(self.len() == other.len() && self.canonical_key()? == other.canonical_key()?)
    }

    fn edges_within(&self, mask: u64) -> usize {
        elements(mask)
            .map(|x| (self.upper_covers(x) & mask).count_ones() as usize)
            .sum()
    }

    fn component_key(&self, mask: u64) -> Result<Vec<u8>> {
        let size = mask.count_ones() as usize;
        if self.edges_within(mask) + 1 == size {
            Ok(self.tree_key(mask))
        } else {
            guard::check("canonical labeling of a non-tree component", size, GENERAL_GUARD)?;
            Ok(self.general_key(mask))
        }
    }

    fn tree_key(&self, mask: u64) -> Vec<u8> {
        tree_code(mask, &|v| self.hasse_neighbours(v), &|a, b| self.edge_tag(a, b))
    }

    /// Stable colour classes of the vertices in `mask`, as dense ranks.
    fn refine_colours(&self, verts: &[usize]) -> Vec<usize> {
        let mask = verts.iter().fold(0u64, |m, &v| m | bit(v));
        let local = |v: usize| verts.iter().position(|&x| x == v).unwrap();
        let mut colour: Vec<usize> = {
            let sigs: Vec<[u32; 4]> = verts
                .iter()
                .map(|&v| {
                    let up = self.upper_covers(v) & mask;
                    let su = self.strict_upper_covers(v) & mask;
                    let down = self.lower_covers(v) & mask;
                    let sd = elements(down)
                        .filter(|&u| self.cover_kind(u, v) == Some(EdgeKind::Strict))
                        .count() as u32;
                    [(up & !su).count_ones(), su.count_ones(), down.count_ones() - sd, sd]
                })
                .collect();
            rank(&sigs)
        };
        let mut classes = count_distinct(&colour);
        loop {
            let sigs: Vec<(usize, Vec<(u8, usize)>)> = verts
                .iter()
                .map(|&v| {
                    let mut nb: Vec<(u8, usize)> = elements(self.hasse_neighbours(v) & mask)
                        .map(|u| (self.edge_tag(v, u), colour[local(u)]))
                        .collect();
                    nb.sort_unstable();
                    (colour[local(v)], nb)
                })
                .collect();
            let next = rank(&sigs);
            let c = count_distinct(&next);
            colour = next;
            if c == classes {
                return colour;
            }
            classes = c;
        }
    }

    fn general_key(&self, mask: u64) -> Vec<u8> {
        let verts: Vec<usize> = elements(mask).collect();
        let m = verts.len();
        let colour = self.refine_colours(&verts);
        // code[i][j]: relation of local i to local j as seen from i
        let code: Vec<Vec<u8>> = (0..m)
            .map(|i| (0..m).map(|j| self.edge_tag(verts[i], verts[j])).collect())
            .collect();
        let mut order_by_colour: Vec<usize> = (0..m).collect();
        order_by_colour.sort_by_key(|&i| (colour[i], i));
        // position p must be filled from the colour class of order_by_colour[p]
        let slot_colour: Vec<usize> = order_by_colour.iter().map(|&i| colour[i]).collect();

        struct Search<'a> {
            code: &'a [Vec<u8>],
            colour: &'a [usize],
            slot_colour: &'a [usize],
            best: Option<Vec<u8>>,
        }

        impl Search<'_> {
            fn go(&mut self, placed: &mut Vec<usize>, used: u64, cur: &mut Vec<u8>) {
                let p = placed.len();
                if p == self.code.len() {
                    if self.best.as_ref().is_none_or(|b| cur[..] < b[..]) {
                        self.best = Some(cur.clone());
                    }
                    return;
                }
                for v in 0..self.code.len() {
                    if used & bit(v) != 0 || self.colour[v] != self.slot_colour[p] {
                        continue;
                    }
                    let mark = cur.len();
                    for &q in placed.iter() {
                        cur.push(self.code[v][q]);
                        cur.push(self.code[q][v]);
                    }
                    let prune = self.best.as_ref().is_some_and(|b| cur[..] > b[..cur.len()]);
                    if !prune {
                        placed.push(v);
                        self.go(placed, used | bit(v), cur);
                        placed.pop();
                    }
                    cur.truncate(mark);
                }
            }
        }

        let mut search = Search {
            code: &code,
            colour: &colour,
            slot_colour: &slot_colour,
            best: None,
        };
        search.go(&mut Vec::with_capacity(m), 0, &mut Vec::new());
        let mut out = vec![b'G', m as u8];
        out.extend(search.best.expect("at least one ordering"));
        out
    }
}

/// AHU encoding of the tree spanned by `mask`, rooted at a centroid (the
/// smaller encoding when there are two). `tag(v, u)` labels the edge from
/// `v` to its child `u`.
pub(crate) fn tree_code(mask: u64, neighbours: &dyn Fn(usize) -> u64, tag: &dyn Fn(usize, usize) -> u8) -> Vec<u8> {
    let best = centroids(mask, neighbours)
        .into_iter()
        .map(|c| encode_rooted(c, None, mask, neighbours, tag))
        .min()
        .expect("nonempty tree");
    let mut out = vec![b'T'];
    out.extend(best);
    out
}

fn centroids(mask: u64, neighbours: &dyn Fn(usize) -> u64) -> Vec<usize> {
    let size = mask.count_ones() as usize;
    let verts: Vec<usize> = elements(mask).collect();
    let root = verts[0];
    let mut parent = [usize::MAX; 64];
    let mut order = Vec::with_capacity(size);
    let mut stack = vec![root];
    parent[root] = root;
    while let Some(v) = stack.pop() {
        order.push(v);
        for u in elements(neighbours(v) & mask) {
            if parent[u] == usize::MAX {
                parent[u] = v;
                stack.push(u);
            }
        }
    }
    let mut sub = [1usize; 64];
    for &v in order.iter().rev() {
        if v != root {
            sub[parent[v]] += sub[v];
        }
    }
    let mut best = usize::MAX;
    let mut out = Vec::new();
    for &v in &verts {
        let mut heaviest = size - sub[v];
        for u in elements(neighbours(v) & mask) {
            if parent[u] == v && u != root {
                heaviest = heaviest.max(sub[u]);
            }
        }
        if heaviest < best {
            best = heaviest;
            out.clear();
        }
        if heaviest == best {
            out.push(v);
        }
    }
    out
}

fn encode_rooted(
    v: usize,
    parent: Option<usize>,
    mask: u64,
    neighbours: &dyn Fn(usize) -> u64,
    tag: &dyn Fn(usize, usize) -> u8,
) -> Vec<u8> {
    let mut children: Vec<Vec<u8>> = elements(neighbours(v) & mask)
        .filter(|&u| Some(u) != parent)
        .map(|u| {
            let mut e = vec![tag(v, u)];
            e.extend(encode_rooted(u, Some(v), mask, neighbours, tag));
            e
        })
        .collect();
    children.sort();
    let mut out = vec![b'('];
    for c in children {
        out.extend(c);
    }
    out.push(b')');
    out
}

fn rank<T: Ord + Clone>(sigs: &[T]) -> Vec<usize> {
    let mut sorted: Vec<T> = sigs.to_vec();
    sorted.sort();
    sorted.dedup();
    sigs.iter().map(|s| sorted.binary_search(s).unwrap()).collect()
}

fn count_distinct(v: &[usize]) -> usize {
    let mut s = v.to_vec();
    s.sort_unstable();
    s.dedup();
    s.len()
}

/// Isomorphism test by direct backtracking over element bijections; used as
/// an oracle for [`LabeledPoset::canonical_key`].
pub fn is_isomorphic_bruteforce(p: &LabeledPoset, q: &LabeledPoset) -> bool {
    let n = p.len();
    if n != q.len() || p.covers().len() != q.covers().len() {
        return false;
    }
    let profile = |x: &LabeledPoset, v: usize| -> [u32; 4] {
        let mut d = [0u32; 4];
        for u in elements(x.hasse_neighbours(v)) {
            d[(x.edge_tag(v, u) - b'a') as usize] += 1;
        }
        d
    };
    let pp: Vec<[u32; 4]> = (0..n).map(|v| profile(p, v)).collect();
    let qp: Vec<[u32; 4]> = (0..n).map(|v| profile(q, v)).collect();
    fn go(
        p: &LabeledPoset,
        q: &LabeledPoset,
        pp: &[[u32; 4]],
        qp: &[[u32; 4]],
        map: &mut Vec<usize>,
        used: u64,
    ) -> bool {
        let i = map.len();
        if i == p.len() {
            return true;
        }
        for j in 0..q.len() {
            if used & bit(j) != 0 || pp[i] != qp[j] {
                continue;
            }
            let consistent = (0..i).all(|k| p.edge_tag(i, k) == q.edge_tag(j, map[k]));
            if consistent {
                map.push(j);
                if go(p, q, pp, qp, map, used | bit(j)) {
                    return true;
                }
                map.pop();
            }
        }
        false
    }
    go(p, q, &pp, &qp, &mut Vec::with_capacity(n), 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::Cover;
    use EdgeKind::*;

    #[test]
    fn permuted_chains_share_a_key() {
        let a = LabeledPoset::chain(3, Weak);
        let b = a.relabel(&[2, 0, 1]).unwrap();
        assert_ne!(a, b);
        assert_eq!(a.canonical_key().unwrap(), b.canonical_key().unwrap());
        assert!(is_isomorphic_bruteforce(&a, &b));
        assert_ne!(
            a.canonical_key().unwrap(),
            LabeledPoset::chain(3, Strict).canonical_key().unwrap()
        );
    }

    #[test]
    fn orientation_and_kind_matter() {
        let v = LabeledPoset::new(3, [Cover::new(0, 1, Weak), Cover::new(0, 2, Weak)]).unwrap();
        let wedge = v.dual();
        assert_ne!(v.canonical_key().unwrap(), wedge.canonical_key().unwrap());
        let mixed = LabeledPoset::new(3, [Cover::new(0, 1, Weak), Cover::new(0, 2, Strict)]).unwrap();
        let mixed2 = LabeledPoset::new(3, [Cover::new(0, 1, Strict), Cover::new(0, 2, Weak)]).unwrap();
        assert_eq!(mixed.canonical_key().unwrap(), mixed2.canonical_key().unwrap());
        assert_ne!(mixed.canonical_key().unwrap(), v.canonical_key().unwrap());
    }

    #[test]
    fn non_tree_components() {
        // diamond vs the same diamond presented differently
        let d = LabeledPoset::new(
            4,
            [
                Cover::new(0, 1, Weak),
                Cover::new(0, 2, Strict),
                Cover::new(1, 3, Weak),
                Cover::new(2, 3, Weak),
            ],
        )
        .unwrap();
        for perm in [[1, 0, 2, 3], [3, 2, 1, 0], [2, 3, 0, 1]] {
            let e = d.relabel(&perm).unwrap();
            assert_eq!(d.canonical_key().unwrap(), e.canonical_key().unwrap());
        }
        let swapped = LabeledPoset::new(
            4,
            [
                Cover::new(0, 1, Weak),
                Cover::new(0, 2, Weak),
                Cover::new(1, 3, Strict),
                Cover::new(2, 3, Weak),
            ],
        )
        .unwrap();
        assert_ne!(d.canonical_key().unwrap(), swapped.canonical_key().unwrap());
        assert!(!is_isomorphic_bruteforce(&d, &swapped));
    }

    #[test]
    fn disconnected_keys_ignore_component_order() {
        let a = LabeledPoset::chain(2, Weak)
            .disjoint_union(&LabeledPoset::chain(2, Strict))
            .unwrap();
        let b = LabeledPoset::chain(2, Strict)
            .disjoint_union(&LabeledPoset::chain(2, Weak))
            .unwrap();
        assert_eq!(a.canonical_key().unwrap(), b.canonical_key().unwrap());
    }
}
