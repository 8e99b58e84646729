use std::fs;
use std::path::Path;

use qsym_core::digraph::Digraph;
use qsym_core::enumerate::{generate, generate_range, Family, FamilySpec, Item};
use qsym_core::io;
use qsym_core::poset::LabeledPoset;
use qsym_core::qsym::{Basis, Composition};
use qsym_core::verify::{self, CollisionReport, ScanOptions};
use qsym_core::Error;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::args::{BasisArg, Cli, Command, Conjecture, DigraphInput, Output, PosetInput};
use crate::Failure;

type Outcome = Result<String, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

/// Inline literals are part of the command line, so their parse errors are
/// usage errors.
fn inline<T>(r: qsym_core::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| match e {
        Error::Parse { msg, .. } => usage(format!("bad literal: {msg}")),
        other => Failure::Domain(other),
    })
}

fn read_item(path: &Path) -> Result<Item, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let item = if text.trim_start().starts_with('{') {
        io::parse_poset(&text)
            .map(Item::Poset)
            .or_else(|_| io::parse_digraph(&text).map(Item::Digraph))?
    } else {
        let mut items = io::parse_items(&text)?;
        if items.len() != 1 {
            return Err(Error::Parse {
                line: 1,
                msg: format!("expected one object in {}, found {}", path.display(), items.len()),
            }
            .into());
        }
        items.pop().unwrap()
    };
    Ok(item)
}

fn poset_of(item: Item) -> Result<LabeledPoset, Failure> {
    match item {
        Item::Poset(p) => Ok(p),
        Item::Digraph(g) => Ok(g.to_poset()?),
        Item::Tree(_) => Err(usage("expected a poset or digraph, found a tree")),
    }
}

fn load_poset(input: &PosetInput) -> Result<LabeledPoset, Failure> {
    if let Some(path) = &input.file {
        poset_of(read_item(path)?)
    } else if let Some(s) = &input.poset {
        inline(io::parse_poset_inline(s))
    } else if let Some(s) = &input.digraph {
        Ok(inline(io::parse_digraph_inline(s))?.to_poset()?)
    } else {
        Err(usage("no input given"))
    }
}

fn load_digraph(input: &DigraphInput) -> Result<Digraph, Failure> {
    if let Some(path) = &input.file {
        match read_item(path)? {
            Item::Digraph(g) => Ok(g),
            _ => Err(usage(format!("{} does not hold a digraph", path.display()))),
        }
    } else if let Some(s) = &input.digraph {
        inline(io::parse_digraph_inline(s))
    } else {
        Err(usage("no input given"))
    }
}

fn render(cli: &Cli, value: Value, text: String) -> Outcome {
    Ok(match cli.output {
        Output::Json => serde_json::to_string_pretty(&value).expect("json renders"),
        Output::Text => text,
    })
}

pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Kpw {
            input,
            basis,
            random_labeling,
        } => kpw(cli, input, *basis, *random_labeling),
        Command::Xgt { input, k } => xgt(cli, input, *k),
        Command::Spec { input, k } => spec(cli, input, *k),
        Command::Invariants { input, pointed } => invariants(cli, input, pointed.as_deref()),
        Command::Enumerate {
            family,
            n,
            count_only,
            range,
        } => enumerate(cli, family, *n, *count_only, range.as_deref()),
        Command::Verify {
            conjecture,
            n,
            k,
            weak,
            jobs,
            checkpoint,
        } => {
            let opts = ScanOptions {
                jobs: *jobs,
                checkpoint: checkpoint.clone(),
                ..ScanOptions::default()
            };
            let report = scan(*conjecture, *n, *k, *weak, &opts)?;
            render(
                cli,
                serde_json::to_value(&report).expect("report serializes"),
                report.to_text(),
            )
        }
        Command::Iso { file, poset, digraph } => iso(cli, file, poset, digraph),
    }
}

fn kpw(cli: &Cli, input: &PosetInput, basis: BasisArg, random_labeling: bool) -> Outcome {
    let p = load_poset(input)?;
    let k = if random_labeling {
        let labelings = p.labelings()?;
        let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
        let chosen = labelings.choose(&mut rng).ok_or(Error::Unrealizable)?;
        p.enumerator_f_with(chosen)?
    } else {
        p.enumerator_f()?
    };
    let k = match basis {
        BasisArg::F => k,
        BasisArg::M => k.to_basis(Basis::M),
    };
    let value = json!({ "poset": p, "enumerator": k });
    render(cli, value, k.to_string())
}

fn xgt(cli: &Cli, input: &DigraphInput, k: Option<u64>) -> Outcome {
    let g = load_digraph(input)?;
    let x = g.chromatic_qsym_t()?;
    let t1 = x.eval_t1();
    let mut value = json!({
        "digraph": g,
        "xgt": x,
        "t1": t1,
        "reversal_check": g.reversal_invariance_check()?,
    });
    let mut text = x.to_string();
    if let Some(k) = k {
        let chi = g.chromatic_poly(k)?;
        value["chromatic_poly"] = json!({ "k": k, "value": chi.to_string() });
        text.push_str(&format!("\nchi({k}) = {chi}"));
    }
    render(cli, value, text)
}

fn spec(cli: &Cli, input: &PosetInput, k: usize) -> Outcome {
    if k > 127 {
        return Err(usage("--k must be at most 127"));
    }
    let p = load_poset(input)?;
    let ps = p.enumerator_f()?.principal_specialization(k);
    let value = json!({ "poset": p, "k": k, "specialization": ps });
    render(cli, value, ps.to_string())
}

fn invariants(cli: &Cli, input: &PosetInput, pointed: Option<&[u32]>) -> Outcome {
    let p = load_poset(input)?;
    let anti = p.anti_table()?;
    let jump_pairs: Vec<Value> = p.jump_pairs().into_iter().map(|((i, j), c)| json!([i, j, c])).collect();
    let anti_rows: Vec<Value> = anti.0.iter().map(|(&(k, i, j), &c)| json!([k, i, j, c])).collect();
    let antichains: Vec<Value> = anti
        .antichain_counts()
        .into_iter()
        .map(|(size, c)| json!([size, c]))
        .collect();
    let lead = p.leading_term_check().ok();
    let mut value = json!({
        "poset": p,
        "canonical_key": p.canonical_key()?.to_hex(),
        "jump_vector": p.jump_vector().0,
        "strict_jump_vector": p.strict_jump_vector().0,
        "jump_pairs": jump_pairs,
        "greene_shape": p.greene_shape()?.0,
        "antichain_counts": antichains,
        "anti_table": anti_rows,
        "fair_tree": p.is_fair_tree(),
        "class_c": p.is_in_class_c(),
        "leading_term": lead.as_ref().map(|l| json!({
            "exponents": l.exponents,
            "coeff": l.coeff.to_string(),
            "matches_jump": l.matches,
        })),
    });
    let mut text = format!(
        "jump vector: {}\nstrict jump vector: {}\ngreene shape: {}\nantichains by size: {}\nfair tree: {}\nclass C: {}\n",
        p.jump_vector(),
        p.strict_jump_vector(),
        p.greene_shape()?,
        anti.antichain_counts()
            .iter()
            .map(|(s, c)| format!("{s}:{c}"))
            .collect::<Vec<_>>()
            .join(" "),
        p.is_fair_tree(),
        p.is_in_class_c(),
    );
    if let Some(l) = &lead {
        text.push_str(&format!(
            "leading exponents: {:?} (matches jump: {})\n",
            l.exponents, l.matches
        ));
    }
    if let Some(parts) = pointed {
        let w = Composition::new(parts.to_vec()).map_err(|e| usage(e.to_string()))?;
        let exists = p.pointed_partition_exists(&w)?;
        value["pointed_partition"] = json!({ "weight": parts, "exists": exists });
        text.push_str(&format!("pointed partition of weight {w}: {exists}\n"));
    }
    render(cli, value, text)
}

fn parse_range(s: &str) -> Result<std::ops::Range<usize>, Failure> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| usage(format!("range must look like a..b, found {s:?}")))?;
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| usage(format!("bad range bound {t:?}")))
    };
    Ok(num(a)?..num(b)?)
}

fn enumerate(cli: &Cli, family: &str, n: usize, count_only: bool, range: Option<&str>) -> Outcome {
    let family: Family = family.parse().map_err(|_| {
        let names: Vec<&str> = Family::ALL.iter().map(|f| f.name()).collect();
        usage(format!(
            "unknown family {family:?}; expected one of {}",
            names.join(", ")
        ))
    })?;
    if n == 0 {
        return Err(usage("--n must be at least 1"));
    }
    let spec = FamilySpec::new(family, n);
    let items = match range {
        Some(r) => generate_range(spec, parse_range(r)?)?,
        None => generate(spec)?,
    };
    if count_only {
        let value = json!({ "family": family.name(), "n": n, "count": items.len() });
        return render(cli, value, items.len().to_string());
    }
    let value = json!({
        "family": family.name(),
        "n": n,
        "count": items.len(),
        "objects": items.iter().map(io::item_json).collect::<Vec<_>>(),
    });
    let text = items.iter().map(io::item_text).collect::<Vec<_>>().join("\n");
    render(cli, value, text)
}

fn scan(c: Conjecture, n: usize, k: Option<usize>, weak: bool, opts: &ScanOptions) -> Result<CollisionReport, Failure> {
    if n == 0 {
        return Err(usage("--n must be at least 1"));
    }
    if k.is_some() && c != Conjecture::Spec {
        return Err(usage("--k only applies to --conjecture spec"));
    }
    if weak && c != Conjecture::Spec {
        return Err(usage("--weak only applies to --conjecture spec"));
    }
    Ok(match c {
        Conjecture::C2 => verify::conjecture2_scan(n, opts)?,
        Conjecture::C3 => verify::conjecture3_scan(n, opts)?,
        Conjecture::C3Unrooted => verify::conjecture3_unrooted_scan(n, opts)?,
        Conjecture::Fair => verify::fair_tree_scan(n, opts)?,
        Conjecture::Spec => {
            let k = k.unwrap_or(n);
            if k == 0 || k > 127 {
                return Err(usage("--k must be between 1 and 127"));
            }
            verify::spec_scan(n, k, weak, opts)?
        }
        Conjecture::Xgt => verify::xgt_scan(n, opts)?,
        Conjecture::Multiset => verify::multiset_question_scan(n, opts)?,
    })
}

fn iso(cli: &Cli, files: &[std::path::PathBuf], posets: &[String], digraphs: &[String]) -> Outcome {
    let items: Vec<Item> = if !files.is_empty() {
        files.iter().map(|f| read_item(f)).collect::<Result<_, _>>()?
    } else if !posets.is_empty() {
        posets
            .iter()
            .map(|s| inline(io::parse_poset_inline(s)).map(Item::Poset))
            .collect::<Result<_, _>>()?
    } else {
        digraphs
            .iter()
            .map(|s| inline(io::parse_digraph_inline(s)).map(Item::Digraph))
            .collect::<Result<_, _>>()?
    };
    let [a, b] =
        <[Item; 2]>::try_from(items).map_err(|v| usage(format!("iso needs exactly two objects, got {}", v.len())))?;
    let isomorphic = a.canonical_key()? == b.canonical_key()?;
    let (name, equal) = match (&a, &b) {
        (Item::Poset(p), Item::Poset(q)) => {
            let name = if p.is_all_weak() && q.is_all_weak() { "K_P" } else { "K" };
            (name, p.enumerator_f()? == q.enumerator_f()?)
        }
        (Item::Digraph(g), Item::Digraph(h)) => ("X", g.chromatic_qsym_t()? == h.chromatic_qsym_t()?),
        _ => return Err(usage("iso compares two posets or two digraphs")),
    };
    let text = format!(
        "{}; {name} {}",
        if isomorphic { "isomorphic" } else { "non-isomorphic" },
        if equal { "equal" } else { "differ" }
    );
    let value = json!({
        "isomorphic": isomorphic,
        "invariant": name,
        "invariant_equal": equal,
        "keys": [a.canonical_key()?.to_hex(), b.canonical_key()?.to_hex()],
    });
    render(cli, value, text)
}
