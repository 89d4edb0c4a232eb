//! A finite semigroup given by its Cayley table. It supplies the brute-force
//! side of every differential check: principal ideals and Green's classes,
//! closures, indecomposable elements and exact rank search.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::greens::GreenKind;
use crate::maps::PartialMap;

/// Default number of candidate generating sets tried by an exact rank search.
pub const DEFAULT_BUDGET: u64 = 5_000_000;

/// A finite semigroup of partial maps with a precomputed multiplication table.
#[derive(Clone, Debug)]
pub struct FiniteSemigroup {
    elements: Vec<PartialMap>,
    index: HashMap<PartialMap, usize>,
    table: Vec<u32>,
}

/// Outcome of an exact rank search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankSearch {
    pub rank: usize,
    /// Indices of a generating set of minimum size, sorted.
    pub generators: Vec<usize>,
}

impl FiniteSemigroup {
    /// Tabulates `mul` on `elements`, failing if a product leaves the set.
    pub fn new<F>(mut elements: Vec<PartialMap>, mul: F) -> Result<Self>
    where
        F: Fn(&PartialMap, &PartialMap) -> PartialMap,
    {
        elements.sort();
        elements.dedup();
        let index: HashMap<PartialMap, usize> = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, f)| (f, i))
            .collect();
        let n = elements.len();
        let mut table = Vec::with_capacity(n * n);
        for f in &elements {
            for g in &elements {
                let p = mul(f, g);
                match index.get(&p) {
                    Some(&k) => table.push(k as u32),
                    None => {
                        return Err(Error::InvalidParams(format!(
                            "product {p} leaves the element set"
                        )))
                    }
                }
            }
        }
        Ok(FiniteSemigroup {
            elements,
            index,
            table,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Elements in canonical order.
    pub fn elements(&self) -> &[PartialMap] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &PartialMap {
        &self.elements[i]
    }

    pub fn index_of(&self, f: &PartialMap) -> Option<usize> {
        self.index.get(f).copied()
    }

    /// Index of the product of elements `i` and `j`.
    #[inline]
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i * self.len() + j] as usize
    }

    pub fn is_idempotent(&self, i: usize) -> bool {
        self.mul(i, i) == i
    }

    /// Bit set of the given indices.
    pub fn set_of(&self, items: impl IntoIterator<Item = usize>) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.len());
        for i in items {
            s.insert(i);
        }
        s
    }

    /// Principal right ideals `x S¹`.
    pub fn right_ideals(&self) -> Vec<FixedBitSet> {
        (0..self.len())
            .map(|x| self.set_of(std::iter::once(x).chain((0..self.len()).map(|s| self.mul(x, s)))))
            .collect()
    }

    /// Principal left ideals `S¹ x`.
    pub fn left_ideals(&self) -> Vec<FixedBitSet> {
        (0..self.len())
            .map(|x| self.set_of(std::iter::once(x).chain((0..self.len()).map(|s| self.mul(s, x)))))
            .collect()
    }

    /// Principal two-sided ideals `S¹ x S¹`.
    pub fn two_sided_ideals(&self) -> Vec<FixedBitSet> {
        let right = self.right_ideals();
        let left = self.left_ideals();
        left.iter()
            .map(|l| {
                let mut j = FixedBitSet::with_capacity(self.len());
                for y in l.ones() {
                    j.union_with(&right[y]);
                }
                j
            })
            .collect()
    }

    /// Class label of every element under Green's relation `kind`, labels
    /// numbered in order of first occurrence.
    pub fn green_labels(&self, kind: GreenKind) -> Vec<usize> {
        match kind {
            GreenKind::R => labels_by_key(&self.right_ideals()),
            GreenKind::L => labels_by_key(&self.left_ideals()),
            GreenKind::H => {
                let r = labels_by_key(&self.right_ideals());
                let l = labels_by_key(&self.left_ideals());
                labels_by_key(&r.into_iter().zip(l).collect::<Vec<_>>())
            }
            // D = J in a finite semigroup.
            GreenKind::D | GreenKind::J => labels_by_key(&self.two_sided_ideals()),
        }
    }

    /// Closure of `gens` under multiplication.
    pub fn closure(&self, gens: &[usize]) -> FixedBitSet {
        let mut members = FixedBitSet::with_capacity(self.len());
        let mut list = Vec::new();
        self.extend_closure(&mut members, &mut list, gens, None);
        members
    }

    /// Extends a set that is already closed (within `allowed`) by `new`
    /// generators, keeping only products that lie in `allowed`.
    pub fn extend_closure(
        &self,
        members: &mut FixedBitSet,
        list: &mut Vec<usize>,
        new: &[usize],
        allowed: Option<&FixedBitSet>,
    ) {
        let mut head = list.len();
        for &g in new {
            if !members.contains(g) {
                members.insert(g);
                list.push(g);
            }
        }
        let ok = |p: usize| allowed.is_none_or(|a| a.contains(p));
        while head < list.len() {
            let x = list[head];
            head += 1;
            let mut idx = 0;
            while idx < list.len() {
                let y = list[idx];
                idx += 1;
                for p in [self.mul(x, y), self.mul(y, x)] {
                    if ok(p) && !members.contains(p) {
                        members.insert(p);
                        list.push(p);
                    }
                }
            }
        }
    }

    /// Elements that are not a product of two elements.
    pub fn indecomposables(&self) -> Vec<usize> {
        let mut hit = FixedBitSet::with_capacity(self.len());
        for &p in &self.table {
            hit.insert(p as usize);
        }
        (0..self.len()).filter(|&x| !hit.contains(x)).collect()
    }

    /// Minimum size of a generating set.
    pub fn rank(&self, budget: u64) -> Result<RankSearch> {
        self.rank_with(|_| true, budget)
    }

    /// Minimum size of a generating set drawn from the elements accepted by
    /// `candidate`.
    ///
    /// The search runs one J-class at a time. Every generating set meets a
    /// J-class `J` in a set `W` with `J ⊆ ⟨U ∪ W⟩`, where `U` is everything
    /// strictly above `J`, and conversely such choices for all classes together
    /// generate. So the rank is the sum over classes of the least such `|W|`,
    /// and each of these is found by iterative deepening over subsets of `J`.
    /// `budget` bounds the number of subsets tried.
    pub fn rank_with<P>(&self, candidate: P, budget: u64) -> Result<RankSearch>
    where
        P: Fn(usize) -> bool,
    {
        let ideals = self.two_sided_ideals();
        let labels = labels_by_key(&ideals);
        let classes = group_by_label(&labels);
        let mut product_hit = FixedBitSet::with_capacity(self.len());
        let mut generators = Vec::new();
        let mut spent = 0u64;
        for class in &classes {
            let rep = class[0];
            let in_class = self.set_of(class.iter().copied());
            let mut above = FixedBitSet::with_capacity(self.len());
            for (y, ideal) in ideals.iter().enumerate() {
                if ideal.contains(rep) && !in_class.contains(y) {
                    above.insert(y);
                }
            }
            let mut within = above.clone();
            within.union_with(&in_class);

            let mut base = FixedBitSet::with_capacity(self.len());
            let mut base_list = Vec::new();
            let above_list: Vec<usize> = above.ones().collect();
            self.extend_closure(&mut base, &mut base_list, &above_list, Some(&within));
            if class.iter().all(|&x| base.contains(x)) {
                continue;
            }

            // Members of the class that are not products of two elements above
            // or in it must be generators themselves.
            product_hit.clear();
            let within_list: Vec<usize> = within.ones().collect();
            for &y in &within_list {
                for &z in &within_list {
                    product_hit.insert(self.mul(y, z));
                }
            }
            let missing: Vec<usize> = class
                .iter()
                .copied()
                .filter(|&x| !base.contains(x))
                .collect();
            let mut required = Vec::new();
            let mut optional = Vec::new();
            for &x in &missing {
                let forced = !product_hit.contains(x);
                match (forced, candidate(x)) {
                    (true, true) => required.push(x),
                    (true, false) => {
                        return Err(Error::InvalidParams(format!(
                            "element {} is not generated by the allowed candidates",
                            self.elements[x]
                        )))
                    }
                    (false, true) => optional.push(x),
                    (false, false) => {}
                }
            }
            let mut seeded = base.clone();
            let mut seeded_list = base_list.clone();
            self.extend_closure(&mut seeded, &mut seeded_list, &required, Some(&within));

            let covers = |set: &FixedBitSet| class.iter().all(|&x| set.contains(x));
            let mut found = None;
            'depth: for k in 0..=optional.len() {
                let mut choice: Vec<usize> = (0..k).collect();
                loop {
                    spent += 1;
                    if spent > budget {
                        let lower = generators.len() + required.len() + k;
                        return Err(Error::BudgetExhausted {
                            lower,
                            upper: self.len(),
                        });
                    }
                    let extra: Vec<usize> = choice.iter().map(|&i| optional[i]).collect();
                    let mut trial = seeded.clone();
                    let mut trial_list = seeded_list.clone();
                    self.extend_closure(&mut trial, &mut trial_list, &extra, Some(&within));
                    if covers(&trial) {
                        found = Some(extra);
                        break 'depth;
                    }
                    if !next_combination(&mut choice, optional.len()) {
                        break;
                    }
                }
            }
            match found {
                Some(extra) => {
                    generators.extend(required);
                    generators.extend(extra);
                }
                None => {
                    return Err(Error::InvalidParams(
                        "the allowed candidates do not generate the semigroup".into(),
                    ))
                }
            }
        }
        generators.sort_unstable();
        Ok(RankSearch {
            rank: generators.len(),
            generators,
        })
    }
}

/// Labels equal keys with equal consecutive integers in order of first occurrence.
pub(crate) fn labels_by_key<K: std::hash::Hash + Eq + Clone>(keys: &[K]) -> Vec<usize> {
    let mut seen: HashMap<K, usize> = HashMap::new();
    keys.iter()
        .map(|k| {
            let next = seen.len();
            *seen.entry(k.clone()).or_insert(next)
        })
        .collect()
}

/// Groups indices by label; groups are listed by label and keep index order.
pub(crate) fn group_by_label(labels: &[usize]) -> Vec<Vec<usize>> {
    let count = labels.iter().copied().max().map_or(0, |m| m + 1);
    let mut groups = vec![Vec::new(); count];
    for (i, &l) in labels.iter().enumerate() {
        groups[l].push(i);
    }
    groups
}

/// Advances a strictly increasing `k`-subset of `0..n` in lexicographic order.
pub(crate) fn next_combination(choice: &mut [usize], n: usize) -> bool {
    let k = choice.len();
    for i in (0..k).rev() {
        if choice[i] < n - k + i {
            choice[i] += 1;
            for j in i + 1..k {
                choice[j] = choice[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
