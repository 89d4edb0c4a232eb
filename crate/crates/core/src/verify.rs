//! Differential suite: every closed form and closed test against brute force,
//! over all sandwich elements of all hom-sets up to a given size.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;

use crate::error::Result;
use crate::generation::{is_generating, rank_exact, rank_formula};
use crate::greens::{dclass_counts, GreenKind};
use crate::idempotents::{
    egen_closure, egen_membership, egen_rank_formula, egen_report, idempotent_count_formula,
    idempotents, EgenRank,
};
use crate::maps::{enumerate, Variant};
use crate::regular::{mi_factorization_check, reg_rank_formula, reg_size_formula};
use crate::sandwich::Sandwich;

/// Mismatch descriptions kept per check.
const KEPT_FAILURES: usize = 5;

/// Outcome of one family of comparisons.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub cases: u64,
    pub mismatches: u64,
    /// The first few mismatches.
    pub examples: Vec<String>,
}

impl CheckResult {
    fn new(name: &'static str) -> Self {
        CheckResult {
            name,
            cases: 0,
            mismatches: 0,
            examples: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.mismatches += 1;
            if self.examples.len() < KEPT_FAILURES {
                self.examples.push(what());
            }
        }
    }
}

/// Conformance report of [`verify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub variant: Variant,
    pub max_size: usize,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.mismatches == 0)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "variant {} with |X|, |Y| <= {}",
            self.variant, self.max_size
        )?;
        for c in &self.checks {
            let status = if c.mismatches == 0 { "ok" } else { "MISMATCH" };
            writeln!(
                f,
                "{:<24} {:>8} cases {:>6} mismatches  {status}",
                c.name, c.cases, c.mismatches
            )?;
            for e in &c.examples {
                writeln!(f, "    {e}")?;
            }
        }
        writeln!(
            f,
            "{}",
            if self.passed() {
                "all checks pass"
            } else {
                "verification failed"
            }
        )
    }
}

/// Whether two labellings induce the same partition.
fn same_partition<A: std::hash::Hash + Eq, B: std::hash::Hash + Eq>(x: &[A], y: &[B]) -> bool {
    let mut fwd: HashMap<&A, &B> = HashMap::new();
    let mut back: HashMap<&B, &A> = HashMap::new();
    x.iter()
        .zip(y)
        .all(|(p, q)| *fwd.entry(p).or_insert(q) == q && *back.entry(q).or_insert(p) == p)
}

/// Runs the differential suite for every `|X|, |Y| <= max_size` and every
/// sandwich element. Exact rank searches share `budget`.
pub fn verify(variant: Variant, max_size: usize, budget: u64) -> Result<VerifyReport> {
    let mut census = CheckResult::new("census");
    let mut pset = CheckResult::new("pset");
    let mut greens = CheckResult::new("greens");
    let mut jorder = CheckResult::new("jorder");
    let mut regular = CheckResult::new("regular_size");
    let mut reg_rank = CheckResult::new("regular_rank");
    let mut mi = CheckResult::new("mi_factorization");
    let mut idem = CheckResult::new("idempotent_count");
    let mut egen_member = CheckResult::new("egen_membership");
    let mut egen_rank = CheckResult::new("egen_rank");
    let mut gen_set = CheckResult::new("generating_set");
    let mut rank = CheckResult::new("rank");

    let lo = usize::from(variant == Variant::T);
    for m in lo..=max_size {
        for n in lo..=max_size {
            let all: Vec<_> = enumerate(variant, m, n)?.collect();
            for mu in 0..=m.min(n) {
                let bucket = all.iter().filter(|f| f.rank() == mu).count();
                let expected = dclass_counts(variant, m, n, mu)
                    .map(|c| c.total)
                    .unwrap_or_default();
                census.record(BigInt::from(bucket) == expected, || {
                    format!("{variant} {m}->{n} rank {mu}: {bucket} vs {expected}")
                });
            }
            for a in enumerate(variant, n, m)? {
                let s = Sandwich::new(variant, m, n, a)?;
                let tag = || format!("{variant} {m}->{n} a=[{}]", s.a());
                let sg = s.semigroup()?;
                let elements = sg.elements();

                for f in elements {
                    pset.record(s.pset(f) == s.pset_definitional(f), || {
                        format!("{} f=[{f}]", tag())
                    });
                }
                for kind in GreenKind::ALL {
                    let keys: Vec<_> = elements.iter().map(|f| s.class_key(kind, f)).collect();
                    greens.record(same_partition(&keys, &sg.green_labels(kind)), || {
                        format!("{} {kind:?}", tag())
                    });
                }
                let ideals = sg.two_sided_ideals();
                let mut order_ok = true;
                for (i, f) in elements.iter().enumerate() {
                    for (j, g) in elements.iter().enumerate() {
                        order_ok &= s.jorder_leq(f, g)? == ideals[j].contains(i);
                    }
                }
                jorder.record(order_ok, tag);

                let p = s.regular_elements()?;
                regular.record(reg_size_formula(&s) == BigInt::from(p.len()), tag);
                if variant != Variant::I {
                    let exact = s.subsemigroup(p)?.rank(budget)?.rank;
                    let formula = reg_rank_formula(&s)?;
                    reg_rank.record(formula == BigInt::from(exact), || {
                        format!("{}: {formula} vs {exact}", tag())
                    });
                    mi.record(mi_factorization_check(&s)?, tag);
                }

                let count = idempotents(&s)?.len();
                idem.record(idempotent_count_formula(&s) == BigInt::from(count), tag);
                let closure = egen_closure(&s)?;
                let member_ok = elements
                    .iter()
                    .all(|f| egen_membership(&s, f) == closure.binary_search(f).is_ok());
                egen_member.record(member_ok, tag);
                if let EgenRank::Formula { rank: r, idrank } = egen_rank_formula(&s) {
                    let exact = egen_report(&s, budget)?;
                    egen_rank.record(
                        r == BigInt::from(exact.rank) && idrank == BigInt::from(exact.idrank),
                        || {
                            format!(
                                "{}: ({r}, {idrank}) vs ({}, {})",
                                tag(),
                                exact.rank,
                                exact.idrank
                            )
                        },
                    );
                }

                let report = rank_formula(&s)?;
                gen_set.record(
                    BigInt::from(report.generating_set.len()) == report.rank_value
                        && is_generating(&s, &report.generating_set)?,
                    || format!("{} {}", tag(), report.case_tag),
                );
                let exact = rank_exact(&s, budget)?.rank;
                rank.record(report.rank_value == BigInt::from(exact), || {
                    format!(
                        "{} {}: {} vs {exact}",
                        tag(),
                        report.case_tag,
                        report.rank_value
                    )
                });
            }
        }
    }
    let mut checks = vec![census, pset, greens, jorder, regular];
    if variant != Variant::I {
        checks.extend([reg_rank, mi]);
    }
    checks.extend([idem, egen_member]);
    if variant != Variant::I {
        checks.push(egen_rank);
    }
    checks.extend([gen_set, rank]);
    Ok(VerifyReport {
        variant,
        max_size,
        checks,
    })
}
