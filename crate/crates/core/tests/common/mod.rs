//! Brute-force oracles shared by the integration tests. They use only the
//! product `⋆` and set operations, never the closed-form tests under check.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use sandwich_core::maps::enumerate;
use sandwich_core::{parse_map, GreenKind, PartialMap, Sandwich, Variant};

pub fn sw(variant: Variant, m: usize, n: usize, a: &str) -> Sandwich {
    Sandwich::new(variant, m, n, parse_map(a, n, m, variant).unwrap()).unwrap()
}

pub fn pm(variant: Variant, m: usize, n: usize, text: &str) -> PartialMap {
    parse_map(text, m, n, variant).unwrap()
}

/// Every sandwich element together with its semigroup, for all hom-sets with
/// `|X|, |Y| <= max`.
pub fn all_sandwiches(variant: Variant, max: usize) -> Vec<Sandwich> {
    let lo = usize::from(variant == Variant::T);
    let mut out = Vec::new();
    for m in lo..=max {
        for n in lo..=max {
            for a in enumerate(variant, n, m).unwrap() {
                out.push(Sandwich::new(variant, m, n, a).unwrap());
            }
        }
    }
    out
}

/// Multiplication table and principal ideals of a sandwich semigroup.
pub struct Oracle {
    pub elements: Vec<PartialMap>,
    pub table: Vec<Vec<usize>>,
    /// `right[i][j]`: `j ∈ x_i S¹`.
    pub right: Vec<Vec<bool>>,
    pub left: Vec<Vec<bool>>,
    pub two_sided: Vec<Vec<bool>>,
    r_label: Vec<usize>,
    l_label: Vec<usize>,
    j_label: Vec<usize>,
    /// Pairs of R- and L-labels whose classes meet.
    rl_pairs: BTreeSet<(usize, usize)>,
}

fn labels(sets: &[Vec<bool>]) -> Vec<usize> {
    let mut ids: HashMap<&Vec<bool>, usize> = HashMap::new();
    sets.iter()
        .map(|v| {
            let next = ids.len();
            *ids.entry(v).or_insert(next)
        })
        .collect()
}

impl Oracle {
    pub fn new(s: &Sandwich) -> Self {
        let elements: Vec<PartialMap> = enumerate(s.variant(), s.m(), s.n()).unwrap().collect();
        let index: HashMap<&PartialMap, usize> =
            elements.iter().enumerate().map(|(i, f)| (f, i)).collect();
        let k = elements.len();
        let table: Vec<Vec<usize>> = elements
            .iter()
            .map(|f| {
                elements
                    .iter()
                    .map(|g| index[&s.star_unchecked(f, g)])
                    .collect()
            })
            .collect();
        let mut right = vec![vec![false; k]; k];
        let mut left = vec![vec![false; k]; k];
        for i in 0..k {
            right[i][i] = true;
            left[i][i] = true;
            for j in 0..k {
                right[i][table[i][j]] = true;
                left[i][table[j][i]] = true;
            }
        }
        // S¹ x S¹ is the union of the left ideals of the members of x S¹.
        let mut two_sided = vec![vec![false; k]; k];
        for i in 0..k {
            for j in 0..k {
                if right[i][j] {
                    for t in 0..k {
                        two_sided[i][t] |= left[j][t];
                    }
                }
            }
        }
        let r_label = labels(&right);
        let l_label = labels(&left);
        let j_label = labels(&two_sided);
        let rl_pairs = (0..k).map(|i| (r_label[i], l_label[i])).collect();
        Oracle {
            elements,
            table,
            right,
            left,
            two_sided,
            r_label,
            l_label,
            j_label,
            rl_pairs,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn index(&self, f: &PartialMap) -> usize {
        self.elements.binary_search(f).unwrap()
    }

    /// Whether `i` and `j` are related under `kind`.
    pub fn related(&self, kind: GreenKind, i: usize, j: usize) -> bool {
        match kind {
            GreenKind::R => self.r_label[i] == self.r_label[j],
            GreenKind::L => self.l_label[i] == self.l_label[j],
            GreenKind::H => {
                self.r_label[i] == self.r_label[j] && self.l_label[i] == self.l_label[j]
            }
            GreenKind::J => self.j_label[i] == self.j_label[j],
            // D = R ∘ L: some h has h R i and h L j.
            GreenKind::D => self.rl_pairs.contains(&(self.r_label[i], self.l_label[j])),
        }
    }

    /// The class of `i` under `kind`, in canonical order.
    pub fn class(&self, kind: GreenKind, i: usize) -> Vec<PartialMap> {
        (0..self.len())
            .filter(|&j| self.related(kind, i, j))
            .map(|j| self.elements[j].clone())
            .collect()
    }

    /// The classes under `kind` as sets of indices.
    pub fn partition(&self, kind: GreenKind) -> BTreeSet<BTreeSet<usize>> {
        (0..self.len())
            .map(|i| {
                (0..self.len())
                    .filter(|&j| self.related(kind, i, j))
                    .collect()
            })
            .collect()
    }

    pub fn is_idempotent(&self, i: usize) -> bool {
        self.table[i][i] == i
    }

    pub fn is_regular(&self, i: usize) -> bool {
        (0..self.len()).any(|j| self.table[self.table[i][j]][i] == i)
    }

    /// Elements that are not a product of two elements.
    pub fn indecomposables(&self) -> Vec<usize> {
        let mut hit = vec![false; self.len()];
        for row in &self.table {
            for &p in row {
                hit[p] = true;
            }
        }
        (0..self.len()).filter(|&i| !hit[i]).collect()
    }

    /// Closure of `gens` under the product.
    pub fn closure(&self, gens: &[usize]) -> BTreeSet<usize> {
        let mut set: BTreeSet<usize> = gens.iter().copied().collect();
        let mut frontier: Vec<usize> = set.iter().copied().collect();
        while let Some(x) = frontier.pop() {
            let members: Vec<usize> = set.iter().copied().collect();
            for y in members {
                for p in [self.table[x][y], self.table[y][x]] {
                    if set.insert(p) {
                        frontier.push(p);
                    }
                }
            }
        }
        set
    }
}

/// Partition of `items` by a key, as sets of indices.
pub fn partition_by<K: std::hash::Hash + Eq>(keys: &[K]) -> BTreeSet<BTreeSet<usize>> {
    let mut groups: HashMap<&K, BTreeSet<usize>> = HashMap::new();
    for (i, k) in keys.iter().enumerate() {
        groups.entry(k).or_default().insert(i);
    }
    groups.into_values().collect()
}
