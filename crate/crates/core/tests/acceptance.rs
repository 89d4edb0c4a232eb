//! Acceptance suite: one check per criterion, each printed as a PASS or FAIL
//! line. Exits nonzero when any criterion fails.

mod common;

use std::collections::{BTreeSet, HashSet};
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;

use num_bigint::BigInt;

use common::{all_sandwiches, partition_by, sw, Oracle};
use sandwich_core::combinatorics::{binom, factorial, stirling2};
use sandwich_core::eggbox::{build_eggbox, render, Format, Scope};
use sandwich_core::generation::{is_generating, rank_exact, rank_formula, LowerBound};
use sandwich_core::greens::dclass_counts;
use sandwich_core::idempotents::{
    egen_membership, egen_rank_formula, egen_report, idempotent_count_formula, idempotents,
    EgenRank,
};
use sandwich_core::maps::enumerate;
use sandwich_core::regular::{
    compatible_pairs, hat_class_counts, phi, pullback_embed, reg_rank_formula, reg_size_formula,
    regular_dclass_dims, restricted_semigroup, top_hat_class, Restriction,
};
use sandwich_core::semigroup::DEFAULT_BUDGET;
use sandwich_core::{GreenKind, PartialMap, Sandwich, Variant};

/// Named PT sandwich elements used throughout, as (m, n, a).
const NAMED_PT: [(usize, usize, &str); 7] = [
    (3, 5, "1 1 2 2 -"),
    (3, 5, "1 1 2 2 2"),
    (3, 5, "1 2 - - -"),
    (4, 3, "1 2 3"),
    (3, 5, "1 2 3 3 -"),
    (3, 5, "1 1 2 2 3"),
    (3, 5, "1 2 3 - -"),
];

fn big(x: usize) -> BigInt {
    BigInt::from(x)
}

fn criterion_1() {
    for alpha in 0..=8usize {
        for beta in 0..=8usize {
            let pt: BigInt = (0..=alpha.min(beta))
                .map(|mu| factorial(mu) * binom(beta, mu) * stirling2(alpha + 1, mu + 1))
                .sum();
            assert_eq!(
                BigInt::from(beta + 1).pow(alpha as u32),
                pt,
                "PT {alpha} {beta}"
            );
            let t: BigInt = (0..=alpha.min(beta))
                .map(|mu| factorial(mu) * binom(beta, mu) * stirling2(alpha, mu))
                .sum();
            assert_eq!(BigInt::from(beta).pow(alpha as u32), t, "T {alpha} {beta}");
        }
    }
    // Partial injections by the recurrence on the last point: undefined there,
    // or sent to one of the targets.
    let mut inj = vec![vec![BigInt::from(1); 9]; 9];
    for alpha in 1..=8 {
        for beta in 0..=8 {
            let mapped = if beta == 0 {
                BigInt::from(0)
            } else {
                beta * &inj[alpha - 1][beta - 1]
            };
            inj[alpha][beta] = &inj[alpha - 1][beta] + mapped;
        }
    }
    for (alpha, row) in inj.iter().enumerate() {
        for (beta, count) in row.iter().enumerate() {
            let i: BigInt = (0..=alpha.min(beta))
                .map(|mu| factorial(mu) * binom(alpha, mu) * binom(beta, mu))
                .sum();
            assert_eq!(*count, i, "I {alpha} {beta}");
        }
    }
}

fn criterion_2() {
    for variant in Variant::ALL {
        let lo = usize::from(variant == Variant::T);
        for m in lo..=4 {
            for n in lo..=4 {
                let all: Vec<PartialMap> = enumerate(variant, m, n).unwrap().collect();
                for mu in 0..=m.min(n) {
                    let bucket: Vec<&PartialMap> = all.iter().filter(|f| f.rank() == mu).collect();
                    let Ok(counts) = dclass_counts(variant, m, n, mu) else {
                        assert!(bucket.is_empty(), "{variant} {m} {n} {mu}");
                        continue;
                    };
                    let r: HashSet<Vec<u32>> = bucket.iter().map(|f| f.kernel_labels()).collect();
                    let l: HashSet<Vec<bool>> = bucket.iter().map(|f| f.image_mask()).collect();
                    let h = partition_by(
                        &bucket
                            .iter()
                            .map(|f| (f.kernel_labels(), f.image_mask()))
                            .collect::<Vec<_>>(),
                    );
                    assert_eq!(big(bucket.len()), counts.total, "{variant} {m} {n} {mu}");
                    assert_eq!(big(r.len()), counts.r_classes, "{variant} {m} {n} {mu}");
                    assert_eq!(big(l.len()), counts.l_classes, "{variant} {m} {n} {mu}");
                    assert_eq!(big(h.len()), counts.h_classes, "{variant} {m} {n} {mu}");
                    assert!(
                        h.iter().all(|c| big(c.len()) == counts.h_size),
                        "{variant} {m} {n} {mu}"
                    );
                }
            }
        }
    }
}

fn criterion_3() {
    for variant in Variant::ALL {
        for s in all_sandwiches(variant, 3) {
            for f in s.elements().unwrap() {
                assert_eq!(
                    s.pset(&f),
                    s.pset_definitional(&f),
                    "{variant} a=[{}] f=[{f}]",
                    s.a()
                );
            }
        }
    }
}

fn check_classes(s: &Sandwich, oracle: &Oracle, kind: GreenKind, f: &PartialMap) {
    let class = s.green_class(kind, f).unwrap();
    assert_eq!(
        class.members,
        oracle.class(kind, oracle.index(f)),
        "{kind:?} a=[{}] f=[{f}]",
        s.a()
    );
}

fn criterion_4() {
    for s in all_sandwiches(Variant::PT, 2)
        .into_iter()
        .filter(|s| s.m() == 2 && s.n() == 2)
    {
        let oracle = Oracle::new(&s);
        for f in &oracle.elements {
            for kind in GreenKind::ALL {
                check_classes(&s, &oracle, kind, f);
            }
        }
    }
    for (m, n, a) in NAMED_PT {
        let s = sw(Variant::PT, m, n, a);
        let oracle = Oracle::new(&s);
        for kind in GreenKind::ALL {
            let keys: Vec<_> = oracle
                .elements
                .iter()
                .map(|f| s.class_key(kind, f))
                .collect();
            assert_eq!(
                partition_by(&keys),
                oracle.partition(kind),
                "{kind:?} a=[{a}]"
            );
            for f in oracle.elements.iter().step_by(11) {
                check_classes(&s, &oracle, kind, f);
            }
        }
    }
}

fn criterion_5() {
    for variant in Variant::ALL {
        for s in all_sandwiches(variant, 3) {
            let oracle = Oracle::new(&s);
            let regular = (0..oracle.len()).filter(|&i| oracle.is_regular(i)).count();
            assert_eq!(
                reg_size_formula(&s),
                big(regular),
                "{variant} a=[{}]",
                s.a()
            );
        }
    }
    let s = sw(Variant::PT, 3, 5, "1 1 2 2 -");
    assert_eq!(reg_size_formula(&s), big(49));
    let profile = hat_class_counts(&s, s.b()).unwrap();
    assert_eq!(
        (
            profile.rhat_mult.clone(),
            profile.lhat_mult.clone(),
            profile.h_size.clone()
        ),
        (big(3), big(4), big(2))
    );
    assert!(profile.is_group);
    let top = build_eggbox(&s, Scope::Regular).unwrap().dclasses[0].clone();
    assert_eq!((top.rows.len(), top.cols.len(), top.cell_size()), (3, 4, 2));
}

fn criterion_6() {
    for (variant, m, n, a) in [
        (Variant::PT, 3, 5, "1 1 2 2 -"),
        (Variant::PT, 3, 5, "1 2 3 3 -"),
        (Variant::PT, 4, 3, "1 2 3"),
    ] {
        let s = sw(variant, m, n, a);
        let p = s.regular_elements().unwrap();
        let image: BTreeSet<_> = p.iter().map(|f| pullback_embed(&s, f).unwrap()).collect();
        assert_eq!(image.len(), p.len(), "psi not injective for a=[{a}]");
        assert_eq!(
            image,
            compatible_pairs(&s).unwrap(),
            "psi not onto for a=[{a}]"
        );
    }
}

fn criterion_7() {
    for variant in [Variant::PT, Variant::T] {
        for s in all_sandwiches(variant, 3) {
            let exact = s
                .subsemigroup(s.regular_elements().unwrap())
                .unwrap()
                .rank(DEFAULT_BUDGET)
                .unwrap();
            assert_eq!(
                reg_rank_formula(&s).unwrap(),
                big(exact.rank),
                "{variant} a=[{}]",
                s.a()
            );
        }
    }
    let s = sw(Variant::PT, 3, 5, "1 1 2 2 -");
    assert_eq!(reg_rank_formula(&s).unwrap(), big(6));
    let range = restricted_semigroup(
        Variant::PT,
        &Restriction::Range {
            x: 4,
            b: vec![0, 1, 2],
        },
    )
    .unwrap();
    let exact = range
        .subsemigroup(range.regular_elements().unwrap())
        .unwrap()
        .rank(DEFAULT_BUDGET)
        .unwrap();
    let anchored = 2 + BigInt::from(3 + 1).pow(4 - 3);
    assert_eq!(anchored, big(6));
    assert_eq!(reg_rank_formula(&range).unwrap(), anchored);
    assert_eq!(big(exact.rank), anchored);
}

fn criterion_8() {
    for variant in Variant::ALL {
        for s in all_sandwiches(variant, 3) {
            let oracle = Oracle::new(&s);
            let idem: Vec<usize> = (0..oracle.len())
                .filter(|&i| oracle.is_idempotent(i))
                .collect();
            assert_eq!(
                idempotent_count_formula(&s),
                big(idem.len()),
                "{variant} a=[{}]",
                s.a()
            );
            assert_eq!(idempotents(&s).unwrap().len(), idem.len());
            let closure = oracle.closure(&idem);
            for (i, f) in oracle.elements.iter().enumerate() {
                assert_eq!(
                    egen_membership(&s, f),
                    closure.contains(&i),
                    "{variant} a=[{}] f=[{f}]",
                    s.a()
                );
            }
        }
    }
    let s = sw(Variant::PT, 3, 5, "1 1 2 2 -");
    assert_eq!(idempotent_count_formula(&s), big(29));
    let report = egen_report(&s, DEFAULT_BUDGET).unwrap();
    let EgenRank::Formula { rank, idrank } = egen_rank_formula(&s) else {
        unreachable!()
    };
    println!("    E-generated part of a=[1 1 2 2 -]: exact rank {}, idrank {}; formula rank {rank}, idrank {idrank}", report.rank, report.idrank);
    assert_eq!(report.rank, 7, "rank");
    assert_eq!(report.idrank, 7, "idrank");
}

fn criterion_9() {
    for variant in Variant::ALL {
        for s in all_sandwiches(variant, 3) {
            let report = rank_formula(&s).unwrap();
            let exact = rank_exact(&s, DEFAULT_BUDGET).unwrap();
            assert_eq!(
                report.rank_value,
                big(exact.rank),
                "{variant} a=[{}] {}",
                s.a(),
                report.case_tag
            );
        }
    }
    let fixed: [(Variant, usize, usize, &str, usize); 13] = [
        (Variant::PT, 3, 5, "1 1 2 2 -", 60),
        (Variant::PT, 3, 5, "1 1 2 2 2", 63),
        (Variant::PT, 3, 5, "1 2 - - -", 63),
        (Variant::PT, 4, 3, "1 2 3", 10),
        (Variant::PT, 3, 5, "1 2 3 3 -", 10),
        (Variant::PT, 3, 5, "1 1 2 2 3", 11),
        (Variant::PT, 3, 5, "1 2 3 - -", 12),
        (Variant::PT, 3, 3, "1 2 3", 4),
        (Variant::T, 3, 5, "1 1 2 2 2", 60),
        (Variant::T, 3, 5, "1 2 2 3 3", 10),
        (Variant::T, 4, 3, "1 2 3", 6),
        (Variant::I, 4, 4, "1 2 3 -", 24),
        (Variant::I, 4, 3, "1 2 3", 5),
    ];
    for (variant, m, n, a, value) in fixed {
        let s = sw(variant, m, n, a);
        let report = rank_formula(&s).unwrap();
        assert_eq!(report.rank_value, big(value), "{variant} a=[{a}]");
        assert_eq!(report.generating_set.len(), value, "{variant} a=[{a}]");
        assert!(
            is_generating(&s, &report.generating_set).unwrap(),
            "{variant} a=[{a}] does not generate"
        );
        let oracle = Oracle::new(&s);
        let indecomposable = oracle.indecomposables().len();
        match &report.lower_bound_witness {
            LowerBound::Indecomposables { count } => {
                assert_eq!(big(indecomposable), *count, "{variant} a=[{a}]")
            }
            LowerBound::CrossSections { maximal, .. } => {
                assert!(big(indecomposable) >= *maximal, "{variant} a=[{a}]")
            }
            LowerBound::Monoid { .. } | LowerBound::Trivial => {}
        }
        let exact = rank_exact(&s, DEFAULT_BUDGET).unwrap();
        assert_eq!(exact.rank, value, "{variant} a=[{a}] exact");
    }
    assert_eq!(stirling2(4, 3), big(6));
}

fn criterion_10() {
    for (m, n, a) in NAMED_PT {
        let s = sw(Variant::PT, m, n, a);
        let eggbox = build_eggbox(&s, Scope::Regular).unwrap();
        let k = eggbox.dclasses.len();
        let chain: Vec<(usize, usize)> = (1..k).map(|i| (i, i - 1)).collect();
        assert_eq!(eggbox.covers, chain, "a=[{a}] not a chain");
        for d in &eggbox.dclasses {
            let (rows, cols) = regular_dclass_dims(&s, d.rank).unwrap();
            assert_eq!(
                (big(d.rows.len()), big(d.cols.len())),
                (rows, cols),
                "a=[{a}] rank {}",
                d.rank
            );
            assert_eq!(big(d.cell_size()), factorial(d.rank));
            for (r, row) in d.cells.iter().enumerate() {
                for (c, cell) in row.iter().enumerate() {
                    let profile = hat_class_counts(&s, &cell[0]).unwrap();
                    assert_eq!(
                        d.groups[r][c], profile.is_group,
                        "a=[{a}] cell [{}]",
                        cell[0]
                    );
                }
            }
        }
        let dot = String::from_utf8(render(&eggbox, Format::Dot)).unwrap();
        graphviz_rust::parse(&dot).expect("DOT parses");
    }
    let s = sw(Variant::PT, 3, 3, "1 2 3");
    let eggbox = build_eggbox(&s, Scope::Full).unwrap();
    let mut sizes: Vec<usize> = eggbox.dclasses.iter().map(|d| d.size()).collect();
    sizes.sort();
    assert_eq!(sizes, vec![1, 6, 21, 36]);
    graphviz_rust::parse(&String::from_utf8(render(&eggbox, Format::Dot)).unwrap())
        .expect("DOT parses");
}

fn criterion_11() {
    for m in 0..=3 {
        for n in 0..=3 {
            let back: Vec<PartialMap> = enumerate(Variant::I, n, m).unwrap().collect();
            for f in enumerate(Variant::I, m, n).unwrap() {
                let inverses: Vec<&PartialMap> = back
                    .iter()
                    .filter(|g| {
                        let fg = f.then(g).unwrap();
                        fg.then(&f).unwrap() == f && g.then(&f).unwrap().then(g).unwrap() == **g
                    })
                    .collect();
                assert_eq!(inverses, vec![&f.pseudo_inverse()], "f=[{f}]");
                assert_eq!(f.inverse(), Some(f.pseudo_inverse()));
            }
        }
    }
    for s in all_sandwiches(Variant::I, 3) {
        let p = s.regular_elements().unwrap();
        let images: Vec<PartialMap> = p.iter().map(|f| phi(&s, f).unwrap()).collect();
        let distinct: BTreeSet<&PartialMap> = images.iter().collect();
        let target: BTreeSet<PartialMap> = enumerate(Variant::I, s.alpha(), s.alpha())
            .unwrap()
            .collect();
        assert_eq!(distinct.len(), p.len(), "a=[{}] phi not injective", s.a());
        assert_eq!(
            distinct.into_iter().cloned().collect::<BTreeSet<_>>(),
            target,
            "a=[{}] phi not onto",
            s.a()
        );
        for (f, pf) in p.iter().zip(&images) {
            for (g, pg) in p.iter().zip(&images) {
                assert_eq!(
                    phi(&s, &s.star(f, g).unwrap()).unwrap(),
                    pf.then(pg).unwrap(),
                    "a=[{}]",
                    s.a()
                );
            }
        }
    }
}

fn criterion_12() {
    for variant in [Variant::PT, Variant::T] {
        for s in all_sandwiches(variant, 3) {
            let p: BTreeSet<PartialMap> = s.regular_elements().unwrap().into_iter().collect();
            let hat = top_hat_class(&s).unwrap();
            let mut product = BTreeSet::new();
            for g in &hat {
                for f in &p {
                    let gf = s.star_unchecked(g, f);
                    for h in &hat {
                        product.insert(s.star_unchecked(&gf, h));
                    }
                }
            }
            assert_eq!(product, p, "{variant} a=[{}]", s.a());
        }
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn()); 12] = [
        ("counting identities", criterion_1),
        ("category census at m,n <= 4", criterion_2),
        ("P-set conformance", criterion_3),
        ("sandwich Green's conformance", criterion_4),
        ("regular subsemigroup size and inflation", criterion_5),
        ("pullback embedding", criterion_6),
        ("rank of the regular part", criterion_7),
        ("idempotents and the E-generated part", criterion_8),
        ("sandwich rank formulas", criterion_9),
        ("egg-box diagrams", criterion_10),
        ("inverse-category property", criterion_11),
        ("MI-factorization identity", criterion_12),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {:>2} PASS  {name} ({secs:.1}s)", i + 1),
            Err(payload) => {
                failed += 1;
                let msg = payload
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!(
                    "criterion {:>2} FAIL  {name} ({secs:.1}s): {}",
                    i + 1,
                    msg.replace('\n', " ")
                );
            }
        }
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
