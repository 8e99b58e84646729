//! Text, JSON and inline formats for posets, digraphs and trees.
//!
//! Text files are line based with 1-based element numbers:
//!
//! ```text
//! poset 3
//! cover 1 2 W
//! cover 1 3 S
//! ```
//!
//! `digraph n` blocks take `arc u v` lines and `tree n` blocks take
//! `edge u v` lines. `#` starts a comment. A file may hold several objects;
//! each header line starts a new one.

use std::fs;
use std::path::Path;

use crate::digraph::Digraph;
use crate::enumerate::{FreeTree, Item};
use crate::error::{Error, Result};
use crate::poset::{Cover, EdgeKind, LabeledPoset};

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn element(tok: &str, line: usize) -> Result<usize> {
    let v: usize = tok
        .parse()
        .map_err(|_| perr(line, format!("expected an element number, found {tok:?}")))?;
    if v == 0 {
        return Err(perr(line, "elements are numbered from 1"));
    }
    Ok(v - 1)
}

fn kind(tok: &str, line: usize) -> Result<EdgeKind> {
    match tok {
        "W" | "w" => Ok(EdgeKind::Weak),
        "S" | "s" => Ok(EdgeKind::Strict),
        _ => Err(perr(line, format!("edge kind must be W or S, found {tok:?}"))),
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Header {
    Poset,
    Digraph,
    Tree,
}

struct Block {
    header: Header,
    line: usize,
    n: usize,
    pairs: Vec<(usize, usize, EdgeKind)>,
}

impl Block {
    fn build(self) -> Result<Item> {
        let wrap = |e: Error| match e {
            Error::Parse { .. } => e,
            other => perr(self.line, other.to_string()),
        };
        Ok(match self.header {
            Header::Poset => Item::Poset(
                LabeledPoset::new(self.n, self.pairs.iter().map(|&(a, b, k)| Cover::new(a, b, k))).map_err(wrap)?,
            ),
            Header::Digraph => {
                Item::Digraph(Digraph::new(self.n, self.pairs.iter().map(|&(a, b, _)| (a, b))).map_err(wrap)?)
            }
            Header::Tree => {
                Item::Tree(FreeTree::new(self.n, self.pairs.iter().map(|&(a, b, _)| (a, b))).map_err(wrap)?)
            }
        })
    }
}

/// Parse every object in a text document.
pub fn parse_items(text: &str) -> Result<Vec<Item>> {
    let mut out = Vec::new();
    let mut cur: Option<Block> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let toks: Vec<&str> = content.split_whitespace().collect();
        let header = match toks[0] {
            "poset" => Some(Header::Poset),
            "digraph" => Some(Header::Digraph),
            "tree" => Some(Header::Tree),
            _ => None,
        };
        if let Some(header) = header {
            if toks.len() != 2 {
                return Err(perr(line, format!("expected `{} <n>`", toks[0])));
            }
            let n = toks[1]
                .parse()
                .map_err(|_| perr(line, format!("bad size {:?}", toks[1])))?;
            if let Some(b) = cur.take() {
                out.push(b.build()?);
            }
            cur = Some(Block {
                header,
                line,
                n,
                pairs: Vec::new(),
            });
            continue;
        }
        let Some(block) = cur.as_mut() else {
            return Err(perr(line, "expected a `poset`, `digraph` or `tree` header"));
        };
        let (word, arity) = match block.header {
            Header::Poset => ("cover", 4),
            Header::Digraph => ("arc", 3),
            Header::Tree => ("edge", 3),
        };
        if toks[0] != word {
            return Err(perr(line, format!("expected `{word}`, found {:?}", toks[0])));
        }
        let arity_ok = toks.len() == arity || (block.header == Header::Poset && toks.len() == 3);
        if !arity_ok {
            return Err(perr(line, format!("wrong number of fields for `{word}`")));
        }
        let a = element(toks[1], line)?;
        let b = element(toks[2], line)?;
        if a >= block.n || b >= block.n {
            return Err(perr(line, format!("element out of range 1..={}", block.n)));
        }
        let k = match toks.get(3) {
            Some(t) => kind(t, line)?,
            None => EdgeKind::Weak,
        };
        block.pairs.push((a, b, k));
    }
    if let Some(b) = cur {
        out.push(b.build()?);
    }
    Ok(out)
}

fn single(text: &str) -> Result<Item> {
    let mut items = if text.trim_start().starts_with('{') {
        vec![parse_json(text)?]
    } else {
        parse_items(text)?
    };
    match items.len() {
        1 => Ok(items.pop().unwrap()),
        0 => Err(perr(1, "no object found")),
        k => Err(perr(1, format!("expected one object, found {k}"))),
    }
}

fn parse_json(text: &str) -> Result<Item> {
    let v: serde_json::Value = serde_json::from_str(text).map_err(|e| perr(e.line(), e.to_string()))?;
    let jerr = |e: serde_json::Error| perr(1, e.to_string());
    if v.get("covers").is_some() {
        Ok(Item::Poset(serde_json::from_value(v).map_err(jerr)?))
    } else if v.get("arcs").is_some() {
        Ok(Item::Digraph(serde_json::from_value(v).map_err(jerr)?))
    } else if v.get("edges").is_some() {
        Ok(Item::Tree(serde_json::from_value(v).map_err(jerr)?))
    } else {
        Err(perr(1, "JSON object needs `covers`, `arcs` or `edges`"))
    }
}

/// A labeled poset from text or JSON.
pub fn parse_poset(text: &str) -> Result<LabeledPoset> {
    match single(text)? {
        Item::Poset(p) => Ok(p),
        _ => Err(perr(1, "expected a poset")),
    }
}

/// A digraph from text or JSON.
pub fn parse_digraph(text: &str) -> Result<Digraph> {
    match single(text)? {
        Item::Digraph(g) => Ok(g),
        _ => Err(perr(1, "expected a digraph")),
    }
}

pub fn read_poset(path: impl AsRef<Path>) -> Result<LabeledPoset> {
    parse_poset(&fs::read_to_string(path)?)
}

pub fn read_digraph(path: impl AsRef<Path>) -> Result<Digraph> {
    parse_digraph(&fs::read_to_string(path)?)
}

fn inline_parts(s: &str) -> Result<(usize, Vec<&str>)> {
    let mut parts = s.split(';').map(str::trim);
    let head = parts.next().unwrap_or("");
    let n = head
        .parse()
        .map_err(|_| perr(1, format!("inline literal must start with the size, found {head:?}")))?;
    Ok((n, parts.filter(|p| !p.is_empty()).collect()))
}

/// `3; 1<2 W; 1<3 S` (the kind defaults to W; `a>b` is read as `b<a`).
pub fn parse_poset_inline(s: &str) -> Result<LabeledPoset> {
    let (n, parts) = inline_parts(s)?;
    let mut covers = Vec::new();
    for p in parts {
        let (rel, k) = match p.split_once(char::is_whitespace) {
            Some((r, k)) => (r.trim(), kind(k.trim(), 1)?),
            None => (p, EdgeKind::Weak),
        };
        let (a, b) = if let Some((a, b)) = rel.split_once('<') {
            (element(a.trim(), 1)?, element(b.trim(), 1)?)
        } else if let Some((a, b)) = rel.split_once('>') {
            (element(b.trim(), 1)?, element(a.trim(), 1)?)
        } else {
            return Err(perr(1, format!("expected `a<b`, found {rel:?}")));
        };
        covers.push(Cover::new(a, b, k));
    }
    LabeledPoset::new(n, covers)
}

/// `3; 1->2; 3->2`.
pub fn parse_digraph_inline(s: &str) -> Result<Digraph> {
    let (n, parts) = inline_parts(s)?;
    let mut arcs = Vec::new();
    for p in parts {
        let (a, b) = p
            .split_once("->")
            .ok_or_else(|| perr(1, format!("expected `u->v`, found {p:?}")))?;
        arcs.push((element(a.trim(), 1)?, element(b.trim(), 1)?));
    }
    Digraph::new(n, arcs)
}

pub fn poset_text(p: &LabeledPoset) -> String {
    let mut s = format!("poset {}\n", p.len());
    for c in p.covers() {
        s.push_str(&format!("cover {} {} {}\n", c.lo + 1, c.hi + 1, c.kind.letter()));
    }
    s
}

pub fn digraph_text(g: &Digraph) -> String {
    let mut s = format!("digraph {}\n", g.len());
    for &(u, v) in g.arcs() {
        s.push_str(&format!("arc {} {}\n", u + 1, v + 1));
    }
    s
}

pub fn tree_text(t: &FreeTree) -> String {
    let mut s = format!("tree {}\n", t.len());
    for &(u, v) in t.edges() {
        s.push_str(&format!("edge {} {}\n", u + 1, v + 1));
    }
    s
}

pub fn item_text(item: &Item) -> String {
    match item {
        Item::Poset(p) => poset_text(p),
        Item::Digraph(g) => digraph_text(g),
        Item::Tree(t) => tree_text(t),
    }
}

pub fn item_json(item: &Item) -> serde_json::Value {
    match item {
        Item::Poset(p) => serde_json::to_value(p),
        Item::Digraph(g) => serde_json::to_value(g),
        Item::Tree(t) => serde_json::to_value(t),
    }
    .expect("objects serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_roundtrip() {
        let p = parse_poset_inline("4; 1<3 W; 3<4 W; 3<2 S").unwrap();
        let text = poset_text(&p);
        assert_eq!(parse_poset(&text).unwrap(), p);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(parse_poset(&json).unwrap(), p);
    }

    #[test]
    fn digraph_formats() {
        let g = parse_digraph_inline("3; 1->2; 3->2").unwrap();
        assert_eq!(parse_digraph(&digraph_text(&g)).unwrap(), g);
        assert_eq!(g.to_inline(), "3; 1->2; 3->2");
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_poset("poset 3\ncover 1 2 W\n\ncover 1 x W\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 4,
                msg: "expected an element number, found \"x\"".into()
            }
        );
        let err = parse_poset("poset 2\ncover 1 5\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_poset("cover 1 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = parse_poset("poset 2\ncover 1 2 W\ncover 2 1 W\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn multiple_blocks() {
        let items = parse_items("tree 2\nedge 1 2\n\ndigraph 2\narc 2 1\n# done\n").unwrap();
        assert_eq!(items.len(), 2);
        assert!(matches!(items[0], Item::Tree(_)));
        assert!(items[1].as_digraph().is_some());
    }
}
