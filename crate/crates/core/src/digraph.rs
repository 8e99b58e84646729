//! Directed graphs and their chromatic quasisymmetric functions `X_G(x, t)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::guard;
use crate::poset::{bit, elements, full_mask, tree_code, CanonicalKey, EdgeKind, LabeledPoset, MAX_ELEMENTS};
use crate::qsym::{Basis, Composition, QSymExpr, TQSymPoly};

/// Default ceiling on vertex count for [`Digraph::chromatic_qsym_t`].
pub const XGT_GUARD: usize = 9;

/// Default ceiling for canonical forms of digraphs that are not trees.
pub const CANON_GUARD: usize = 12;

struct CanonSearch<'a> {
    g: &'a Digraph,
    colour: &'a [usize],
    best: Option<Vec<u8>>,
    cur: Vec<u8>,
    placed: Vec<usize>,
}

impl CanonSearch<'_> {
    /// Place vertices in colour order, appending for each new vertex its arcs
    /// to and from the vertices already placed; keep the smallest code.
    fn run(&mut self, used: u64) {
        if let Some(b) = &self.best {
            if self.cur[..] > b[..self.cur.len()] {
                return;
            }
        }
        let n = self.g.n;
        if self.placed.len() == n {
            if self.best.as_ref().is_none_or(|b| self.cur < *b) {
                self.best = Some(self.cur.clone());
            }
            return;
        }
        let next = elements(full_mask(n) & !used).map(|v| self.colour[v]).min().unwrap();
        for v in elements(full_mask(n) & !used) {
            if self.colour[v] != next {
                continue;
            }
            let mark = self.cur.len();
            for &u in &self.placed {
                let out = (self.g.out[v] >> u & 1) as u8;
                let inn = (self.g.inn[v] >> u & 1) as u8;
                self.cur.push(out << 1 | inn);
            }
            self.placed.push(v);
            self.run(used | bit(v));
            self.placed.pop();
            self.cur.truncate(mark);
        }
    }
}

/// Vertices `0..n` and arcs `u -> v`, without loops or repeated arcs.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    arcs: Vec<(usize, usize)>,
    out: Vec<u64>,
    inn: Vec<u64>,
}

impl Digraph {
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n > MAX_ELEMENTS {
            return Err(Error::InvalidDigraph(format!(
                "{n} vertices exceeds the supported maximum {MAX_ELEMENTS}"
            )));
        }
        let mut arcs: Vec<(usize, usize)> = arcs.into_iter().collect();
        arcs.sort_unstable();
        let mut out = vec![0u64; n];
        let mut inn = vec![0u64; n];
        for &(u, v) in &arcs {
            if u >= n || v >= n {
                return Err(Error::InvalidDigraph(format!(
                    "arc {} -> {} names a vertex outside 1..={n}",
                    u + 1,
                    v + 1
                )));
            }
            if u == v {
                return Err(Error::InvalidDigraph(format!("self-loop at {}", u + 1)));
            }
            if out[u] & bit(v) != 0 {
                return Err(Error::InvalidDigraph(format!("duplicate arc {} -> {}", u + 1, v + 1)));
            }
            out[u] |= bit(v);
            inn[v] |= bit(u);
        }
        Ok(Digraph { n, arcs, out, inn })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn out_neighbours(&self, v: usize) -> u64 {
        self.out[v]
    }

    pub fn in_neighbours(&self, v: usize) -> u64 {
        self.inn[v]
    }

    /// Every arc flipped.
    pub fn reverse(&self) -> Self {
        Digraph::new(self.n, self.arcs.iter().map(|&(u, v)| (v, u))).expect("reversal is valid")
    }

    pub fn is_acyclic(&self) -> bool {
        crate::poset::transitive_closure(self.n, &self.out).is_some()
    }

    /// The underlying undirected graph is a tree.
    pub fn is_tree(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let mut undirected = 0usize;
        for &(u, v) in &self.arcs {
            if u < v || self.out[v] & bit(u) == 0 {
                undirected += 1;
            }
        }
        if undirected != self.n - 1 {
            return false;
        }
        let mut seen = 1u64;
        let mut frontier = 1u64;
        while frontier != 0 {
            let x = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = (self.out[x] | self.inn[x]) & !seen;
            seen |= new;
            frontier |= new;
        }
        seen == full_mask(self.n)
    }

    /// Reachability order of an acyclic digraph, as its Hasse diagram with
    /// every cover strict. Redundant arcs disappear.
    pub fn to_poset(&self) -> Result<LabeledPoset> {
        LabeledPoset::from_relations(self.n, &self.arcs, EdgeKind::Strict)
    }

    /// Isomorphism key. Oriented trees use a linear-time tree code; other
    /// digraphs take the smallest adjacency code over vertex orders that
    /// respect colour refinement.
    pub fn canonical_key(&self) -> Result<CanonicalKey> {
        if self.arcs.len() + 1 == self.n && self.is_tree() {
            let code = tree_code(full_mask(self.n), &|v| self.out[v] | self.inn[v], &|a, b| {
                if self.out[a] & bit(b) != 0 {
                    b'o'
                } else {
                    b'i'
                }
            });
            return Ok(CanonicalKey::from_bytes(code));
        }
        guard::check("digraph canonical form", self.n, CANON_GUARD)?;
        let colour = self.refined_colours();
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&v| colour[v]);
        let mut search = CanonSearch {
            g: self,
            colour: &colour,
            best: None,
            cur: Vec::new(),
            placed: Vec::new(),
        };
        search.run(0);
        let mut key = vec![b'D', self.n as u8];
        key.extend(order.iter().map(|&v| colour[v] as u8));
        key.extend(search.best.unwrap_or_default());
        Ok(CanonicalKey::from_bytes(key))
    }

    /// Stable colouring by iterated (colour, out-colours, in-colours)
    /// signatures; colours are ranks of sorted signatures, so they do not
    /// depend on the vertex numbering.
    fn refined_colours(&self) -> Vec<usize> {
        let mut colour = vec![0usize; self.n];
        let mut classes = 1;
        loop {
            let sigs: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..self.n)
                .map(|v| {
                    let mut o: Vec<usize> = elements(self.out[v]).map(|w| colour[w]).collect();
                    let mut i: Vec<usize> = elements(self.inn[v]).map(|w| colour[w]).collect();
                    o.sort_unstable();
                    i.sort_unstable();
                    (colour[v], o, i)
                })
                .collect();
            let mut distinct = sigs.clone();
            distinct.sort();
            distinct.dedup();
            for v in 0..self.n {
                colour[v] = distinct.binary_search(&sigs[v]).unwrap();
            }
            if distinct.len() == classes {
                return colour;
            }
            classes = distinct.len();
        }
    }

    /// `X_G(x, t)` in the monomial basis, computed over ordered partitions of
    /// the vertices into independent sets: `(B_1, ..., B_k)` contributes
    /// `t^asc M_(|B_1|, ..., |B_k|)` with `asc` the arcs running from an
    /// earlier block to a later one.
    pub fn chromatic_qsym_t(&self) -> Result<TQSymPoly> {
        guard::check("chromatic quasisymmetric function", self.n, XGT_GUARD)?;
        guard::check_hard("chromatic quasisymmetric function", self.n, 20)?;
        let n = self.n;
        let adj: Vec<u64> = (0..n).map(|v| self.out[v] | self.inn[v]).collect();
        type Table = HashMap<(Vec<u32>, u32), u64>;
        let mut memo: HashMap<u64, Table> = HashMap::new();

        fn solve(g: &Digraph, adj: &[u64], s: u64, memo: &mut HashMap<u64, Table>) -> Table {
            if s == 0 {
                let mut t = Table::new();
                t.insert((vec![], 0), 1);
                return t;
            }
            if let Some(hit) = memo.get(&s) {
                return hit.clone();
            }
            let mut out = Table::new();
            // every nonempty independent subset of s may come first
            let mut b = s;
            while b != 0 {
                if elements(b).all(|v| adj[v] & b == 0) {
                    let rest = s & !b;
                    let asc: u32 = elements(b).map(|v| (g.out[v] & rest).count_ones()).sum();
                    let size = b.count_ones();
                    for ((comp, t), c) in solve(g, adj, rest, memo) {
                        let mut parts = Vec::with_capacity(comp.len() + 1);
                        parts.push(size);
                        parts.extend(comp);
                        *out.entry((parts, t + asc)).or_insert(0) += c;
                    }
                }
                b = (b - 1) & s;
            }
            memo.insert(s, out.clone());
            out
        }

        let table = solve(self, &adj, full_mask(n), &mut memo);
        let mut poly = TQSymPoly::zero(Basis::M);
        for ((parts, t), c) in table {
            poly.add_term(t, Composition::new(parts)?, BigInt::from(c));
        }
        Ok(poly)
    }

    /// `X_G(x, 1)`, Stanley's chromatic symmetric function, in the `M` basis.
    pub fn chromatic_sym(&self) -> Result<QSymExpr> {
        Ok(self.chromatic_qsym_t()?.eval_t1())
    }

    /// Number of proper colourings with `k` colours, via `M_α(1^k) = C(k, ℓ(α))`.
    pub fn chromatic_poly(&self, k: u64) -> Result<BigInt> {
        let x = self.chromatic_sym()?;
        Ok(x.terms().map(|(a, c)| c * binomial(k, a.len() as u64)).sum())
    }

    /// Coefficient of the highest power of `t`; requires an acyclic digraph.
    pub fn top_t_coefficient(&self) -> Result<QSymExpr> {
        if !self.is_acyclic() {
            return Err(Error::Cyclic);
        }
        let x = self.chromatic_qsym_t()?;
        Ok(x.top_coefficient()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| QSymExpr::one(Basis::M)))
    }

    /// Whether every `M_α` coefficient of `X_G` equals the `M_{α^rev}`
    /// coefficient. This is sufficient for `X_G = X_{reverse(G)}`.
    pub fn reversal_invariance_check(&self) -> Result<bool> {
        let grouped = self.chromatic_qsym_t()?.by_composition();
        let empty = BTreeMap::new();
        Ok(grouped
            .iter()
            .all(|(a, p)| grouped.get(&a.reversed()).unwrap_or(&empty) == p))
    }

    /// `X_G` restricted to compositions of length at most `k`, computed from
    /// raw proper colourings with colours `1..=k`. Exponential in `n`; a test
    /// oracle for [`chromatic_qsym_t`](Self::chromatic_qsym_t).
    pub fn chromatic_qsym_t_by_colorings(&self, k: usize) -> Result<TQSymPoly> {
        let n = self.n;
        let space = (k as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        if space > 1 << 26 && !guard::forced() {
            return Err(Error::GuardExceeded {
                what: "colouring oracle k^n",
                n: space.min(usize::MAX as u128) as usize,
                max: 1 << 26,
            });
        }
        let mut poly = TQSymPoly::zero(Basis::M);
        let mut colour = vec![0usize; n];
        loop {
            let proper = self.arcs.iter().all(|&(u, v)| colour[u] != colour[v]);
            if proper {
                // keep colourings using exactly the colours 1..=l; their
                // monomials x_1^{a_1} ... x_l^{a_l} read off M_a directly
                let mut counts = vec![0u32; k];
                for &c in &colour {
                    counts[c] += 1;
                }
                let l = counts.iter().take_while(|&&c| c > 0).count();
                if counts[l..].iter().all(|&c| c == 0) && (l > 0 || n == 0) {
                    let asc = self.arcs.iter().filter(|&&(u, v)| colour[u] < colour[v]).count() as u32;
                    poly.add_term(asc, Composition::new(counts[..l].to_vec())?, BigInt::from(1));
                }
            }
            // next colouring in base k
            let mut i = 0;
            while i < n {
                colour[i] += 1;
                if colour[i] < k {
                    break;
                }
                colour[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
        }
        Ok(poly)
    }

    /// One-line form `3; 1->2; 3->2`.
    pub fn to_inline(&self) -> String {
        let mut s = self.n.to_string();
        for &(u, v) in &self.arcs {
            s.push_str(&format!("; {}->{}", u + 1, v + 1));
        }
        s
    }
}

fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let mut r = BigInt::from(1);
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digraph({})", self.to_inline())
    }
}

#[derive(Serialize, Deserialize)]
struct RawDigraph {
    n: usize,
    arcs: Vec<(usize, usize)>,
}

impl Serialize for Digraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawDigraph {
            n: self.n,
            arcs: self.arcs.iter().map(|&(u, v)| (u + 1, v + 1)).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Digraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawDigraph::deserialize(d)?;
        if raw.arcs.iter().any(|&(u, v)| u == 0 || v == 0) {
            return Err(serde::de::Error::custom("vertices are numbered from 1"));
        }
        Digraph::new(raw.n, raw.arcs.into_iter().map(|(u, v)| (u - 1, v - 1))).map_err(serde::de::Error::custom)
    }
}
