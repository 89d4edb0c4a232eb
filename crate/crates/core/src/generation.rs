//! Generating sets of sandwich semigroups: closure, indecomposable elements,
//! exact rank search, and the closed-form rank with an explicit generating set
//! of that size.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::combinatorics::{binom, factorial, stirling2};
use crate::error::{Error, Result};
use crate::maps::{default_cap, enumerate, hom_size, PartialMap, Variant, UNDEF};
use crate::regular::symmetric_rank;
use crate::sandwich::Sandwich;

/// Which case of the rank formula applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseTag {
    /// One of the ground sets is empty; the semigroup is `{∅}`.
    TrivialEmpty,
    /// `α = 0`; every product is empty.
    AlphaZero,
    BelowXiNeither,
    BelowXiFull,
    BelowXiInjective,
    /// `α = |Y| < |X|`: `a` is full and injective.
    EqXiFullInjective,
    /// `α = |X| < |Y|` and `a` is neither full nor injective.
    EqXiSurjectiveNeither,
    EqXiSurjectiveFull,
    EqXiSurjectiveInjective,
    Bijective,
    /// T with `|X| = 1`: a right zero semigroup.
    TSingleSource,
    /// T with `|Y| = 1`: a single element.
    TSingleTarget,
}

impl CaseTag {
    pub fn name(self) -> &'static str {
        match self {
            CaseTag::TrivialEmpty => "trivial_empty",
            CaseTag::AlphaZero => "alpha_zero",
            CaseTag::BelowXiNeither => "below_xi_neither",
            CaseTag::BelowXiFull => "below_xi_full",
            CaseTag::BelowXiInjective => "below_xi_injective",
            CaseTag::EqXiFullInjective => "eq_xi_full_injective",
            CaseTag::EqXiSurjectiveNeither => "eq_xi_surjective_neither",
            CaseTag::EqXiSurjectiveFull => "eq_xi_surjective_full",
            CaseTag::EqXiSurjectiveInjective => "eq_xi_surjective_injective",
            CaseTag::Bijective => "bijective",
            CaseTag::TSingleSource => "t_single_source",
            CaseTag::TSingleTarget => "t_single_target",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The counting argument behind the lower bound of a rank value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LowerBound {
    /// The semigroup has a single element.
    Trivial,
    /// Each of `count` elements is indecomposable, so lies in every generating set.
    Indecomposables { count: BigInt },
    /// The `maximal` elements of rank above `α` are indecomposable, and a
    /// generating set also meets each of `classes` R- or L-classes of rank `α`,
    /// plus `extra` elements needed for the symmetric group or to drop rank.
    CrossSections {
        maximal: BigInt,
        classes: BigInt,
        extra: usize,
    },
    /// The semigroup is isomorphic to the full monoid `Hom(X, X)`, whose rank is
    /// classical.
    Monoid { degree: usize },
}

impl fmt::Display for LowerBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LowerBound::Trivial => write!(f, "one-element semigroup"),
            LowerBound::Indecomposables { count } => write!(f, "{count} indecomposable elements"),
            LowerBound::CrossSections { maximal, classes, extra } => write!(
                f,
                "{maximal} maximal elements, a transversal of {classes} classes of rank alpha, {extra} extra"
            ),
            LowerBound::Monoid { degree } => write!(f, "isomorphic to the full monoid of degree {degree}"),
        }
    }
}

/// Closed-form rank together with a generating set of that size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenReport {
    pub rank_value: BigInt,
    pub case_tag: CaseTag,
    pub generating_set: Vec<PartialMap>,
    pub lower_bound_witness: LowerBound,
}

/// A generating set of minimum size found by search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactRank {
    pub rank: usize,
    pub generators: Vec<PartialMap>,
}

fn check_cap(s: &Sandwich) -> Result<()> {
    let size = hom_size(s.variant(), s.m(), s.n());
    let cap = default_cap();
    if size > BigInt::from(cap) {
        return Err(Error::CapExceeded {
            size: size.to_string(),
            cap,
        });
    }
    Ok(())
}

/// The least set containing `omega` and closed under `⋆`.
pub fn closure(s: &Sandwich, omega: &[PartialMap]) -> Result<Vec<PartialMap>> {
    check_cap(s)?;
    for f in omega {
        if !s.contains(f) {
            return Err(Error::DimensionMismatch(format!(
                "{f} is not in the hom-set"
            )));
        }
    }
    let mut seen: HashSet<PartialMap> = HashSet::new();
    let mut list: Vec<PartialMap> = Vec::new();
    for f in omega {
        if seen.insert(f.clone()) {
            list.push(f.clone());
        }
    }
    let mut head = 0;
    while head < list.len() {
        let x = list[head].clone();
        head += 1;
        let mut idx = 0;
        while idx < list.len() {
            let y = list[idx].clone();
            idx += 1;
            for p in [s.star_unchecked(&x, &y), s.star_unchecked(&y, &x)] {
                if !seen.contains(&p) {
                    seen.insert(p.clone());
                    list.push(p);
                }
            }
        }
    }
    list.sort();
    Ok(list)
}

/// Whether `omega` generates the whole semigroup.
pub fn is_generating(s: &Sandwich, omega: &[PartialMap]) -> Result<bool> {
    Ok(BigInt::from(closure(s, omega)?.len()) == hom_size(s.variant(), s.m(), s.n()))
}

/// Elements that are not a product of two elements.
pub fn indecomposables(s: &Sandwich) -> Result<Vec<PartialMap>> {
    let sg = s.semigroup()?;
    Ok(sg
        .indecomposables()
        .into_iter()
        .map(|i| sg.element(i).clone())
        .collect())
}

/// Exact rank by search.
pub fn rank_exact(s: &Sandwich, budget: u64) -> Result<ExactRank> {
    let sg = s.semigroup()?;
    let found = sg.rank(budget)?;
    Ok(ExactRank {
        rank: found.rank,
        generators: found
            .generators
            .iter()
            .map(|&i| sg.element(i).clone())
            .collect(),
    })
}

/// Least number of idempotents generating `target`, which must be a
/// subsemigroup generated by its idempotents.
pub fn idrank_exact(s: &Sandwich, target: &[PartialMap], budget: u64) -> Result<ExactRank> {
    let sg = s.subsemigroup(target.to_vec())?;
    let idem: Vec<usize> = (0..sg.len()).filter(|&i| sg.is_idempotent(i)).collect();
    if sg.closure(&idem).count_ones(..) != sg.len() {
        return Err(Error::InvalidParams(
            "target is not idempotent-generated".into(),
        ));
    }
    let found = sg.rank_with(|i| sg.is_idempotent(i), budget)?;
    Ok(ExactRank {
        rank: found.rank,
        generators: found
            .generators
            .iter()
            .map(|&i| sg.element(i).clone())
            .collect(),
    })
}

/// The case of the rank formula that applies to `s`, after swapping the
/// ground sets for I when `|X| < |Y|`.
pub fn case_tag(s: &Sandwich) -> CaseTag {
    let (m, n, alpha) = (s.m(), s.n(), s.alpha());
    match s.variant() {
        Variant::T => {
            if n == 1 {
                CaseTag::TSingleTarget
            } else if m == 1 {
                CaseTag::TSingleSource
            } else if s.a_bijective() {
                CaseTag::Bijective
            } else if alpha < s.xi() {
                CaseTag::BelowXiFull
            } else if alpha == n {
                CaseTag::EqXiFullInjective
            } else {
                CaseTag::EqXiSurjectiveFull
            }
        }
        Variant::PT | Variant::I => {
            if m == 0 || n == 0 {
                CaseTag::TrivialEmpty
            } else if alpha == 0 {
                CaseTag::AlphaZero
            } else if s.a_bijective() {
                CaseTag::Bijective
            } else if s.variant() == Variant::I {
                if alpha < m.min(n) {
                    CaseTag::BelowXiInjective
                } else {
                    CaseTag::EqXiFullInjective
                }
            } else if alpha < s.xi() {
                match (s.a_full(), s.a_injective()) {
                    (true, _) => CaseTag::BelowXiFull,
                    (false, true) => CaseTag::BelowXiInjective,
                    (false, false) => CaseTag::BelowXiNeither,
                }
            } else if alpha == n {
                CaseTag::EqXiFullInjective
            } else if s.a_full() {
                CaseTag::EqXiSurjectiveFull
            } else if s.a_injective() {
                CaseTag::EqXiSurjectiveInjective
            } else {
                CaseTag::EqXiSurjectiveNeither
            }
        }
    }
}

/// Closed-form rank of the sandwich semigroup.
pub fn rank_value(s: &Sandwich) -> BigInt {
    let (m, n, alpha) = (s.m(), s.n(), s.alpha());
    let tag = case_tag(s);
    let one = || BigInt::from(1);
    match s.variant() {
        Variant::PT => match tag {
            CaseTag::TrivialEmpty => one(),
            CaseTag::AlphaZero => hom_size(Variant::PT, m, n) - 1,
            CaseTag::Bijective => BigInt::from(if m <= 2 { m + 1 } else { 4 }),
            CaseTag::BelowXiNeither | CaseTag::BelowXiFull | CaseTag::BelowXiInjective => {
                let top: BigInt = (alpha + 1..=s.xi())
                    .map(|mu| factorial(mu) * binom(n, mu) * stirling2(m + 1, mu + 1))
                    .sum();
                top + match tag {
                    CaseTag::BelowXiInjective => stirling2(m, alpha),
                    CaseTag::BelowXiFull => binom(m, alpha),
                    _ => BigInt::from(0),
                }
            }
            CaseTag::EqXiFullInjective => stirling2(m + 1, alpha + 1),
            CaseTag::EqXiSurjectiveNeither => binom(n, alpha),
            CaseTag::EqXiSurjectiveFull => binom(n, alpha) + 1,
            CaseTag::EqXiSurjectiveInjective => binom(n, alpha) + (alpha.min(3) - 1),
            CaseTag::TSingleSource | CaseTag::TSingleTarget => unreachable!(),
        },
        Variant::T => match tag {
            CaseTag::TSingleTarget => one(),
            CaseTag::TSingleSource => BigInt::from(n),
            CaseTag::Bijective => BigInt::from(m.min(3)),
            CaseTag::BelowXiFull => (alpha + 1..=s.xi())
                .map(|mu| factorial(mu) * binom(n, mu) * stirling2(m, mu))
                .sum(),
            CaseTag::EqXiFullInjective => stirling2(m, alpha),
            _ => binom(n, alpha),
        },
        Variant::I => {
            // The inversion anti-isomorphism lets us assume |Y| <= |X|.
            let (big, small) = (m.max(n), m.min(n));
            match tag {
                CaseTag::TrivialEmpty => one(),
                CaseTag::AlphaZero => hom_size(Variant::I, m, n) - 1,
                CaseTag::Bijective => BigInt::from(if m <= 2 { 2 } else { 3 }),
                CaseTag::BelowXiInjective => (alpha + 1..=small)
                    .map(|mu| factorial(mu) * binom(big, mu) * binom(small, mu))
                    .sum(),
                _ => binom(big, small) + usize::from(alpha >= 3),
            }
        }
    }
}

/// Closed-form rank, case tag, lower-bound argument and a generating set of
/// that size.
pub fn rank_formula(s: &Sandwich) -> Result<GenReport> {
    let rank_value = rank_value(s);
    let case_tag = case_tag(s);
    let generating_set = generating_set(s)?;
    let lower_bound_witness = lower_bound(s, case_tag, &rank_value);
    Ok(GenReport {
        rank_value,
        case_tag,
        generating_set,
        lower_bound_witness,
    })
}

fn lower_bound(s: &Sandwich, tag: CaseTag, value: &BigInt) -> LowerBound {
    let above = || -> BigInt {
        let (m, n) = (s.m(), s.n());
        (s.alpha() + 1..=s.xi())
            .map(|mu| crate::greens::dclass_counts(s.variant(), m, n, mu))
            .map(|c| c.expect("rank in range").total)
            .sum()
    };
    match tag {
        CaseTag::TrivialEmpty | CaseTag::TSingleTarget => LowerBound::Trivial,
        CaseTag::AlphaZero | CaseTag::TSingleSource | CaseTag::BelowXiNeither => {
            LowerBound::Indecomposables {
                count: value.clone(),
            }
        }
        CaseTag::BelowXiInjective if s.variant() == Variant::I => LowerBound::Indecomposables {
            count: value.clone(),
        },
        CaseTag::BelowXiFull if s.variant() == Variant::T => LowerBound::Indecomposables {
            count: value.clone(),
        },
        CaseTag::Bijective => LowerBound::Monoid { degree: s.m() },
        CaseTag::BelowXiFull | CaseTag::BelowXiInjective => {
            let maximal = above();
            LowerBound::CrossSections {
                classes: value - &maximal,
                maximal,
                extra: 0,
            }
        }
        _ => {
            let (m, n, alpha) = (s.m(), s.n(), s.alpha());
            let classes = match (s.variant(), tag) {
                (Variant::PT, CaseTag::EqXiFullInjective) => stirling2(m + 1, alpha + 1),
                (Variant::T, CaseTag::EqXiFullInjective) => stirling2(m, alpha),
                (Variant::I, _) => binom(m.max(n), m.min(n)),
                _ => binom(n, alpha),
            };
            let extra = (value - &classes).to_usize().unwrap_or(0);
            LowerBound::CrossSections {
                maximal: BigInt::from(0),
                classes,
                extra,
            }
        }
    }
}

/// A generating set whose size is the closed-form rank, built from the class
/// structure of the elements of rank `α` and above.
pub fn generating_set(s: &Sandwich) -> Result<Vec<PartialMap>> {
    check_cap(s)?;
    if s.variant() == Variant::I && s.m() < s.n() {
        let a_inv = s.a().inverse().expect("injective");
        let dual = Sandwich::new(Variant::I, s.n(), s.m(), a_inv)?;
        let mut gens: Vec<PartialMap> = generating_set(&dual)?
            .iter()
            .map(|f| f.inverse().expect("injective"))
            .collect();
        gens.sort();
        return Ok(gens);
    }
    let (m, n, alpha) = (s.m(), s.n(), s.alpha());
    let tag = case_tag(s);
    let above = || -> Result<Vec<PartialMap>> {
        Ok(enumerate(s.variant(), m, n)?
            .filter(|f| f.rank() > alpha)
            .collect())
    };
    let mut gens = match tag {
        CaseTag::TrivialEmpty | CaseTag::TSingleTarget | CaseTag::TSingleSource => s.elements()?,
        CaseTag::AlphaZero => above()?,
        CaseTag::Bijective => bijective_generators(s),
        CaseTag::BelowXiNeither => above()?,
        CaseTag::BelowXiFull | CaseTag::BelowXiInjective if s.variant() != Variant::PT => above()?,
        CaseTag::BelowXiInjective => {
            let mut g = above()?;
            g.extend(
                partial_partitions(m, alpha, false)
                    .into_iter()
                    .map(|labels| label_map(s, &labels)),
            );
            g
        }
        CaseTag::BelowXiFull => {
            let mut g = above()?;
            g.extend(subsets(m, alpha).into_iter().map(|c| {
                let mut labels = vec![UNDEF; m];
                for (k, &x) in c.iter().enumerate() {
                    labels[x] = k as u32;
                }
                label_map(s, &labels)
            }));
            g
        }
        CaseTag::EqXiFullInjective => {
            // Rank α = |Y|: one element per R-class of rank α, those in P
            // arranged to generate the top rectangular group.
            let mut g = top_generators(s);
            let partial = s.variant() != Variant::T;
            let injective = s.variant() == Variant::I;
            for labels in partial_partitions(m, alpha, partial) {
                let f = PartialMap::from_raw(n, labels);
                if injective && !f.is_injective() {
                    continue;
                }
                if !(s.in_p1(&f) && s.in_p2(&f)) {
                    g.push(f);
                }
            }
            g
        }
        CaseTag::EqXiSurjectiveNeither
        | CaseTag::EqXiSurjectiveFull
        | CaseTag::EqXiSurjectiveInjective => {
            // Rank α = |X|: one element per L-class of rank α, those in P
            // arranged to generate the top rectangular group, and possibly an
            // element of lower rank.
            let mut g = top_generators(s);
            for image in subsets(n, alpha) {
                let f = PartialMap::from_raw(n, image.iter().map(|&y| y as u32).collect());
                if !(s.in_p1(&f) && s.in_p2(&f)) {
                    g.push(f);
                }
            }
            if s.variant() == Variant::PT {
                let b = s.b_points();
                let pts = s.image_points();
                match tag {
                    CaseTag::EqXiSurjectiveFull => {
                        let mut labels = vec![UNDEF; m];
                        for k in 0..alpha - 1 {
                            labels[pts[k]] = b[k] as u32;
                        }
                        g.push(PartialMap::from_raw(n, labels));
                    }
                    CaseTag::EqXiSurjectiveInjective if alpha >= 2 => {
                        let mut labels = vec![UNDEF; m];
                        for k in 0..alpha - 1 {
                            labels[pts[k]] = b[k] as u32;
                        }
                        labels[pts[alpha - 1]] = b[alpha - 2] as u32;
                        g.push(PartialMap::from_raw(n, labels));
                    }
                    _ => {}
                }
            }
            g
        }
    };
    gens.sort();
    gens.dedup();
    Ok(gens)
}

/// The map sending each point labelled `k` to `b_k`.
fn label_map(s: &Sandwich, labels: &[u32]) -> PartialMap {
    let b = s.b_points();
    PartialMap::from_raw(
        s.n(),
        labels
            .iter()
            .map(|&k| {
                if k == UNDEF {
                    UNDEF
                } else {
                    b[k as usize] as u32
                }
            })
            .collect(),
    )
}

/// Generators of the symmetric group on `alpha` points as index maps.
fn symmetric_generators(alpha: usize) -> Vec<Vec<usize>> {
    let id: Vec<usize> = (0..alpha).collect();
    match alpha {
        0 | 1 => vec![id],
        2 => vec![vec![1, 0]],
        _ => {
            let mut swap = id.clone();
            swap.swap(0, 1);
            let cycle = (0..alpha).map(|i| (i + 1) % alpha).collect();
            vec![swap, cycle]
        }
    }
}

/// A generating set of the regular elements of rank `α`, a rectangular group
/// of rows × columns over the symmetric group: every row and every column is
/// used, and the permutations include generators of the symmetric group.
fn top_generators(s: &Sandwich) -> Vec<PartialMap> {
    let alpha = s.alpha();
    let pts = s.image_points();
    let outside: Vec<usize> = (0..s.m()).filter(|&x| s.point_index(x).is_none()).collect();
    // Rows: the block of each point outside im(a), or none.
    let choices_per_point: Vec<u32> = match s.variant() {
        Variant::PT => (0..alpha as u32).chain(std::iter::once(UNDEF)).collect(),
        Variant::T => (0..alpha as u32).collect(),
        Variant::I => vec![UNDEF],
    };
    let rows = product_choices(&vec![choices_per_point; outside.len()]);
    // Columns: a point of each kernel class.
    let cols = match s.variant() {
        Variant::I => vec![s.b_points().iter().map(|&y| y as u32).collect()],
        _ => product_choices(
            &s.kernel_classes()
                .iter()
                .map(|c| c.iter().map(|&y| y as u32).collect())
                .collect::<Vec<_>>(),
        ),
    };
    let perms = symmetric_generators(alpha);
    let count = rows.len().max(cols.len()).max(symmetric_rank(alpha));
    (0..count)
        .map(|t| {
            let row = &rows[t.min(rows.len() - 1)];
            let col = &cols[t.min(cols.len() - 1)];
            let perm: Vec<usize> = perms
                .get(t)
                .cloned()
                .unwrap_or_else(|| (0..alpha).collect());
            let mut images = vec![UNDEF; s.m()];
            for (i, &x) in pts.iter().enumerate() {
                images[x] = col[perm[i]];
            }
            for (k, &x) in outside.iter().enumerate() {
                if row[k] != UNDEF {
                    images[x] = col[perm[row[k] as usize]];
                }
            }
            PartialMap::from_raw(s.n(), images)
        })
        .collect()
}

/// Pulls back the standard generators of the full monoid on `X` along `a⁻¹`.
fn bijective_generators(s: &Sandwich) -> Vec<PartialMap> {
    let m = s.m();
    let a_inv = s.a().inverse().expect("bijective");
    let id: Vec<u32> = (0..m as u32).collect();
    let mut swap = id.clone();
    if m >= 2 {
        swap.swap(0, 1);
    }
    let cycle: Vec<u32> = (0..m as u32).map(|i| (i + 1) % m as u32).collect();
    let mut collapse = id.clone();
    if m >= 2 {
        collapse[1] = 0;
    }
    let mut restrict = id.clone();
    restrict[0] = UNDEF;
    let raw: Vec<Vec<u32>> = match (s.variant(), m) {
        (Variant::T, 1) => vec![id],
        (Variant::T, 2) => vec![swap, collapse],
        (Variant::T, _) => vec![swap, cycle, collapse],
        (Variant::PT, 1) => vec![id, restrict],
        (Variant::PT, 2) => vec![swap, collapse, restrict],
        (Variant::PT, _) => vec![swap, cycle, collapse, restrict],
        (Variant::I, 1) => vec![id, restrict],
        (Variant::I, 2) => vec![swap, restrict],
        (Variant::I, _) => vec![swap, cycle, restrict],
    };
    raw.into_iter()
        .map(|h| PartialMap::from_raw(m, h).then_unchecked(&a_inv))
        .collect()
}

/// All tuples with one entry from each choice list, in lexicographic order.
fn product_choices(choices: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for opts in choices {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                opts.iter().map(move |&o| {
                    let mut v = prefix.clone();
                    v.push(o);
                    v
                })
            })
            .collect();
    }
    out
}

/// `k`-subsets of `0..n` in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        out.push(c.clone());
        if !crate::semigroup::next_combination(&mut c, n) {
            break;
        }
    }
    out
}

/// Block labels of the partitions of a subset of `0..m` (of all of it unless
/// `partial`) into exactly `k` blocks, numbered in order of least element.
fn partial_partitions(m: usize, k: usize, partial: bool) -> Vec<Vec<u32>> {
    fn go(
        pos: usize,
        m: usize,
        k: usize,
        partial: bool,
        used: u32,
        cur: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if pos == m {
            if used as usize == k {
                out.push(cur.clone());
            }
            return;
        }
        let limit = (used + 1).min(k as u32);
        for l in 0..limit {
            cur.push(l);
            go(pos + 1, m, k, partial, used.max(l + 1), cur, out);
            cur.pop();
        }
        if partial {
            cur.push(UNDEF);
            go(pos + 1, m, k, partial, used, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, m, k, partial, 0, &mut Vec::new(), &mut out);
    out
}
