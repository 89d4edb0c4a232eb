mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use common::{all_sandwiches, Oracle};
use sandwich_core::eggbox::{build_eggbox, EggBox, Scope};
use sandwich_core::generation::{closure, rank_formula};
use sandwich_core::maps::enumerate;
use sandwich_core::{parse_map, GreenKind, PartialMap, Sandwich, Variant};

fn pick(variant: Variant, m: usize, n: usize, seed: usize) -> PartialMap {
    let all: Vec<PartialMap> = enumerate(variant, m, n).unwrap().collect();
    all[seed % all.len()].clone()
}

fn sandwich_strategy(max: usize) -> impl Strategy<Value = Sandwich> {
    (0..3usize, 1..=max, 1..=max, any::<usize>()).prop_map(|(v, m, n, seed)| {
        let variant = Variant::ALL[v];
        Sandwich::new(variant, m, n, pick(variant, n, m, seed)).unwrap()
    })
}

#[test]
fn jorder_matches_ideal_containment() {
    for variant in Variant::ALL {
        for s in all_sandwiches(variant, 2) {
            let oracle = Oracle::new(&s);
            for (i, f) in oracle.elements.iter().enumerate() {
                for (j, g) in oracle.elements.iter().enumerate() {
                    let expected = oracle.two_sided[j][i];
                    assert_eq!(
                        s.jorder_leq(f, g).unwrap(),
                        expected,
                        "{variant} a=[{}] [{f}] [{g}]",
                        s.a()
                    );
                    assert_eq!(s.jorder_leq_reference(f, g), expected);
                }
            }
        }
    }
}

#[test]
fn class_keys_match_ideals_at_size_three() {
    for variant in Variant::ALL {
        for s in all_sandwiches(variant, 3).into_iter().step_by(5) {
            let oracle = Oracle::new(&s);
            for kind in GreenKind::ALL {
                let keys: Vec<_> = oracle
                    .elements
                    .iter()
                    .map(|f| s.class_key(kind, f))
                    .collect();
                assert_eq!(
                    common::partition_by(&keys),
                    oracle.partition(kind),
                    "{variant} a=[{}] {kind:?}",
                    s.a()
                );
            }
            let regular: Vec<PartialMap> = (0..oracle.len())
                .filter(|&i| oracle.is_regular(i))
                .map(|i| oracle.elements[i].clone())
                .collect();
            assert_eq!(s.regular_elements().unwrap(), regular);
        }
    }
}

#[test]
fn eggbox_covers_are_the_hasse_diagram() {
    for (variant, m, n, a) in [
        (Variant::PT, 2, 3, "1 1 -"),
        (Variant::T, 3, 2, "1 3"),
        (Variant::I, 3, 3, "1 2 -"),
    ] {
        let s = common::sw(variant, m, n, a);
        let oracle = Oracle::new(&s);
        let eggbox = build_eggbox(&s, Scope::Full).unwrap();
        let reps: Vec<usize> = eggbox
            .dclasses
            .iter()
            .map(|d| oracle.index(&d.rows[0]))
            .collect();
        let k = reps.len();
        let below = |x: usize, y: usize| x != y && oracle.two_sided[reps[y]][reps[x]];
        let mut hasse = Vec::new();
        for x in 0..k {
            for y in 0..k {
                if below(x, y) && !(0..k).any(|z| below(x, z) && below(z, y)) {
                    hasse.push((x, y));
                }
            }
        }
        assert_eq!(eggbox.covers, hasse, "{variant} a=[{a}]");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_is_associative(s in sandwich_strategy(4), i in any::<usize>(), j in any::<usize>(), k in any::<usize>()) {
        let f = pick(s.variant(), s.m(), s.n(), i);
        let g = pick(s.variant(), s.m(), s.n(), j);
        let h = pick(s.variant(), s.m(), s.n(), k);
        let left = s.star(&s.star(&f, &g).unwrap(), &h).unwrap();
        let right = s.star(&f, &s.star(&g, &h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn closed_tests_match_definitions(s in sandwich_strategy(4), i in any::<usize>(), j in any::<usize>()) {
        let f = pick(s.variant(), s.m(), s.n(), i);
        let g = pick(s.variant(), s.m(), s.n(), j);
        prop_assert_eq!(s.pset(&f), s.pset_definitional(&f));
        prop_assert_eq!(s.jorder_leq(&f, &g).unwrap(), s.jorder_leq_reference(&f, &g));
    }

    #[test]
    fn pseudo_inverse_is_an_inverse(s in sandwich_strategy(4), i in any::<usize>()) {
        let f = pick(s.variant(), s.m(), s.n(), i);
        let g = f.pseudo_inverse();
        prop_assert_eq!(f.then(&g).unwrap().then(&f).unwrap(), f.clone());
        prop_assert_eq!(g.then(&f).unwrap().then(&g).unwrap(), g.clone());
    }

    #[test]
    fn text_round_trip(s in sandwich_strategy(5), i in any::<usize>()) {
        let f = pick(s.variant(), s.m(), s.n(), i);
        prop_assert_eq!(parse_map(&f.to_string(), s.m(), s.n(), s.variant()).unwrap(), f);
    }

    #[test]
    fn eggbox_round_trips_and_partitions(s in sandwich_strategy(3), regular in any::<bool>()) {
        let scope = if regular { Scope::Regular } else { Scope::Full };
        let eggbox = build_eggbox(&s, scope).unwrap();
        prop_assert_eq!(&EggBox::from_json(&eggbox.to_json()).unwrap(), &eggbox);
        let cells: Vec<PartialMap> = eggbox.dclasses.iter().flat_map(|d| d.cells.iter().flatten().flatten().cloned()).collect();
        let distinct: BTreeSet<&PartialMap> = cells.iter().collect();
        prop_assert_eq!(distinct.len(), cells.len());
        for d in &eggbox.dclasses {
            for (r, row) in d.cells.iter().enumerate() {
                for (c, cell) in row.iter().enumerate() {
                    prop_assert!(cell.is_empty() || cell.len() == d.cell_size());
                    prop_assert_eq!(d.groups[r][c], cell.iter().any(|f| s.star_unchecked(f, f) == *f));
                }
            }
        }
        if scope == Scope::Regular {
            prop_assert!(eggbox.covers.iter().enumerate().all(|(i, &(l, u))| (l, u) == (i + 1, i)));
        }
    }

    #[test]
    fn constructed_generating_sets_generate(s in sandwich_strategy(3)) {
        let report = rank_formula(&s).unwrap();
        let all = closure(&s, &report.generating_set).unwrap();
        prop_assert_eq!(all, s.elements().unwrap());
    }
}
