//! End-to-end acceptance checks, one PASS/FAIL line each.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use qsym_core::comp;
use qsym_core::digraph::Digraph;
use qsym_core::enumerate::{generate, Family, FamilySpec};
use qsym_core::poset::{EdgeKind, LabeledPoset, DEFAULT_ORACLE_CAP};
use qsym_core::qsym::{Basis, Composition, QPolynomial, QSymExpr};
use qsym_core::verify::{self, CollisionReport, ScanOptions};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

type Check = std::result::Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn qpoly(coeffs: &[(u32, i64)]) -> QPolynomial {
    let mut p = QPolynomial::zero();
    for &(e, c) in coeffs {
        p.add_term(e, BigInt::from(c));
    }
    p
}

fn directed_path() -> Check {
    let g = directed_path3();
    let x = ok(g.chromatic_qsym_t())?;
    ensure(x.to_string() == "(2+2t+2t²)·M[1,1,1] + t²·M[2,1] + M[1,2]", || {
        format!("X = {x}")
    })?;
    let sym = ok(g.chromatic_sym())?;
    let want = QSymExpr::from_terms(Basis::M, [(comp![1, 1, 1], 6), (comp![2, 1], 1), (comp![1, 2], 1)]);
    // the t = 1 value is symmetric: m_111 = M_111 and m_21 = M_21 + M_12
    ensure(sym == want, || format!("X(t=1) = {sym}"))?;
    for k in 1..=6u64 {
        let chi = ok(g.chromatic_poly(k))?;
        ensure(chi == BigInt::from(k * (k - 1) * (k - 1)), || {
            format!("chi({k}) = {chi}")
        })?;
    }
    Ok(())
}

fn worked_example() -> Check {
    let k = ok(worked_poset().enumerator_f())?;
    ensure(
        k == QSymExpr::from_terms(Basis::F, [(comp![2, 2], 1), (comp![3, 1], 1)]),
        || format!("K = {k}"),
    )?;
    let m = k.to_m();
    let want = QSymExpr::from_terms(
        Basis::M,
        [
            (comp![2, 2], 1),
            (comp![3, 1], 1),
            (comp![1, 1, 2], 1),
            (comp![2, 1, 1], 2),
            (comp![1, 2, 1], 1),
            (comp![1, 1, 1, 1], 2),
        ],
    );
    ensure(m == want, || format!("M-expansion {m}"))?;
    ensure(ok(m.m_to_f())? == k, || "M to F does not return K".into())
}

fn digraph_pairs() -> Check {
    let pairs = equal_x_digraph_pairs();
    for (i, (g, h)) in pairs.iter().enumerate() {
        let (xg, xh) = (ok(g.chromatic_qsym_t())?, ok(h.chromatic_qsym_t())?);
        ensure(xg == xh, || format!("pair {}: {xg} vs {xh}", i + 1))?;
    }
    ensure(pairs[0].1 == pairs[0].0.reverse(), || {
        "first pair is not a reversal".into()
    })
}

fn poset_pairs() -> Check {
    for (i, (p, q)) in equal_k_poset_pairs().iter().enumerate() {
        ensure(ok(p.canonical_key())? != ok(q.canonical_key())?, || {
            format!("pair {} isomorphic", i + 1)
        })?;
        let (kp, kq) = (ok(p.enumerator_f())?, ok(q.enumerator_f())?);
        ensure(kp == kq, || format!("pair {}: K differ", i + 1))?;
    }
    Ok(())
}

fn strict_tree_pair() -> Check {
    let (left, right) = same_support_strict_trees();
    let (kl, kr) = (ok(left.enumerator_f())?, ok(right.enumerator_f())?);
    let support: BTreeSet<Composition> = [
        comp![2, 2, 1],
        comp![2, 1, 2],
        comp![1, 2, 2],
        comp![2, 1, 1, 1],
        comp![1, 2, 1, 1],
        comp![1, 1, 2, 1],
        comp![1, 1, 1, 2],
        comp![1, 1, 1, 1, 1],
    ]
    .into();
    ensure(ok(kl.f_support())? == support, || format!("left support of {kl}"))?;
    ensure(ok(kr.f_support())? == support, || format!("right support of {kr}"))?;
    ensure(kl != kr, || "enumerators agree".into())?;
    let pl = kl.principal_specialization(4);
    let pr = kr.principal_specialization(4);
    let want_l = qpoly(&[(4, 1), (5, 2), (6, 4), (7, 4), (8, 5), (9, 4), (10, 2), (11, 1)]);
    let want_r = qpoly(&[(4, 1), (5, 2), (6, 4), (7, 5), (8, 4), (9, 4), (10, 2), (11, 1)]);
    ensure(pl == want_l, || format!("left ps4 = {pl}"))?;
    ensure(pr == want_r, || format!("right ps4 = {pr}"))?;
    let (n, k) = (5u32, 4u32);
    for big_n in 0..=n * (k - 1) {
        ensure(pl.coeff(big_n) == pr.coeff(n * (k - 1) - big_n), || {
            format!("duality fails at q^{big_n}")
        })?;
    }
    Ok(())
}

fn labeled_pairs() -> Check {
    for (i, (p, q)) in equal_k_labeled_tree_pairs().iter().enumerate() {
        ensure(ok(p.canonical_key())? != ok(q.canonical_key())?, || {
            format!("pair {} isomorphic", i + 1)
        })?;
        ensure(ok(p.enumerator_f())? == ok(q.enumerator_f())?, || {
            format!("pair {}: K differ", i + 1)
        })?;
    }
    let (left, right) = pointed_partition_pair();
    let w = comp![4, 1, 4, 2];
    ensure(!ok(left.pointed_partition_exists(&w))?, || {
        "left has a pointed partition".into()
    })?;
    ensure(ok(right.pointed_partition_exists(&w))?, || {
        "right has no pointed partition".into()
    })?;
    ensure(ok(left.enumerator_f())? != ok(right.enumerator_f())?, || {
        "the pair has equal K".into()
    })
}

fn clean(r: CollisionReport) -> Check {
    ensure(r.is_clean(), || {
        format!(
            "{} n={} {}: {} collision class(es)",
            r.family,
            r.n,
            r.invariant,
            r.collisions.len()
        )
    })
}

fn conjecture_scans() -> Check {
    let o = ScanOptions::default();
    for n in 1..=9 {
        clean(ok(verify::conjecture2_scan(n, &o))?)?;
        for k in [n.saturating_sub(1).max(1), n] {
            clean(ok(verify::spec_scan(n, k, false, &o))?)?;
            clean(ok(verify::spec_scan(n, k, true, &o))?)?;
        }
    }
    for n in 1..=8 {
        clean(ok(verify::conjecture3_scan(n, &o))?)?;
    }
    for n in 1..=7 {
        clean(ok(verify::xgt_scan(n, &o))?)?;
    }
    Ok(())
}

fn fair_gate() -> Check {
    let o = ScanOptions::default();
    for n in 1..=8 {
        clean(ok(verify::fair_tree_scan(n, &o))?)?;
    }
    Ok(())
}

fn seed() -> u64 {
    std::env::var("QSYM_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0x5eed)
}

fn random_poset(rng: &mut ChaCha8Rng, max_n: usize) -> LabeledPoset {
    loop {
        let n = rng.gen_range(1..=max_n);
        let mut rel = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if rng.gen_bool(0.4) {
                    rel.push((a, b));
                }
            }
        }
        let base = LabeledPoset::from_relations(n, &rel, EdgeKind::Weak).expect("upper triangular");
        let p = LabeledPoset::new(
            n,
            base.covers().iter().map(|c| {
                let kind = if rng.gen_bool(0.5) {
                    EdgeKind::Strict
                } else {
                    EdgeKind::Weak
                };
                qsym_core::poset::Cover::new(c.lo, c.hi, kind)
            }),
        )
        .expect("same covers");
        if p.is_realizable() {
            return p;
        }
    }
}

fn all_dags(n: usize) -> impl Iterator<Item = Digraph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    (0..1u64 << pairs.len()).map(move |m| {
        Digraph::new(
            n,
            pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| m >> i & 1 == 1)
                .map(|(_, &p)| p),
        )
        .unwrap()
    })
}

fn property_suites() -> Check {
    // specialization against direct counting
    for n in 1..=6 {
        for item in ok(generate(FamilySpec::new(Family::LabeledTreePoset, n)))? {
            let p = item.as_poset().unwrap();
            let kp = ok(p.enumerator_f())?;
            for k in 1..=4 {
                let want = ok(p.partition_count_oracle(k, DEFAULT_ORACLE_CAP))?;
                ensure(kp.principal_specialization(k) == want, || format!("ps{k} of {p:?}"))?;
            }
        }
    }
    // top t-coefficient against the strict poset
    for n in 1..=6 {
        for g in all_dags(n) {
            let top = ok(g.top_t_coefficient())?;
            let kbar = ok(ok(g.to_poset())?.all_strict().enumerator_f())?;
            ensure(top == kbar.to_m(), || format!("top coefficient of {g:?}"))?;
        }
    }
    // products, ordinal sums and bar on random labeled posets
    let mut rng = ChaCha8Rng::seed_from_u64(seed());
    for case in 0..1000 {
        let p = random_poset(&mut rng, 4);
        let q = random_poset(&mut rng, 4);
        let (kp, kq) = (ok(p.enumerator_f())?, ok(q.enumerator_f())?);
        let ctx = || format!("case {case}: {p:?}, {q:?}");
        ensure(ok(ok(p.disjoint_union(&q))?.enumerator_f())? == kp.mul(&kq), ctx)?;
        ensure(ok(ok(p.ordsum_weak(&q))?.enumerator_f())? == ok(kp.up(&kq))?, ctx)?;
        ensure(ok(ok(p.ordsum_strict(&q))?.enumerator_f())? == ok(kp.upup(&kq))?, ctx)?;
        ensure(ok(p.bar().enumerator_f())? == ok(kp.bar())?, ctx)?;
    }
    // basis changes and the two products on small compositions
    let comps: Vec<Composition> = (1..=5).flat_map(Composition::all_of_weight).collect();
    for a in &comps {
        let fa = QSymExpr::f(a.clone());
        ensure(ok(fa.to_m().m_to_f())? == fa, || format!("F round trip at {a}"))?;
        let ma = QSymExpr::m(a.clone());
        ensure(ok(ma.to_f().f_to_m())? == ma, || format!("M round trip at {a}"))?;
        for b in &comps {
            let fb = QSymExpr::f(b.clone());
            let via_m = ok(ok(fa.to_m().mul_quasishuffle(&fb.to_m()))?.m_to_f())?;
            ensure(fa.mul(&fb) == via_m, || format!("F product {a} * {b}"))?;
        }
    }
    Ok(())
}

fn specialization_counterexample() -> Check {
    let a = QSymExpr::f(comp![1, 3, 1]).principal_specialization(5);
    let b = QSymExpr::f(comp![2, 1, 2]).principal_specialization(5);
    ensure(a == b, || format!("{a} vs {b}"))?;
    ensure(!a.is_zero(), || "zero specialization".into())
}

type Criterion = (&'static str, fn() -> Check);

fn main() {
    let checks: [Criterion; 10] = [
        ("directed 3-path chromatic function", directed_path),
        ("worked labeled poset enumerator", worked_example),
        ("digraph pairs with equal X", digraph_pairs),
        ("non-isomorphic posets with equal K", poset_pairs),
        ("strict trees with equal F-support", strict_tree_pair),
        ("labeled tree pairs and pointed partitions", labeled_pairs),
        ("conjecture scans", conjecture_scans),
        ("fair tree scan", fair_gate),
        ("oracle property suites", property_suites),
        ("specialization of F[1,3,1] and F[2,1,2]", specialization_counterexample),
    ];
    let mut failed = 0;
    for (i, (name, f)) in checks.iter().enumerate() {
        let start = Instant::now();
        let result = f();
        let took = fmt_duration(start.elapsed());
        match result {
            Ok(()) => println!("PASS {} {name} ({took})", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {} {name} ({took}): {e}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}

fn fmt_duration(d: Duration) -> String {
    if d.as_secs() >= 1 {
        format!("{:.1} s", d.as_secs_f64())
    } else {
        format!("{} ms", d.as_millis())
    }
}
