//! Finite partial transformations between the ground sets `X = {0, .., m-1}` and
//! `Y = {0, .., n-1}`.
//!
//! Points are 0-based in memory. The text format is 1-based, with `-` for an
//! undefined entry, and lists the images of the points of `X` in order.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{binom, factorial};
use crate::error::{Error, Result};

/// Sentinel stored for an undefined image. It is larger than every point, so the
/// derived ordering on image sequences puts undefined entries last.
pub const UNDEF: u32 = u32::MAX;

/// Default upper bound on the number of elements an enumeration may produce.
pub const DEFAULT_CAP: u64 = 10_000_000;

/// The enumeration cap, taken from `SANDWICH_CAP` when set and valid.
pub fn default_cap() -> u64 {
    std::env::var("SANDWICH_CAP")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .filter(|&c| c >= 1)
        .unwrap_or(DEFAULT_CAP)
}

/// The three categories of transformations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Variant {
    /// All partial transformations.
    #[serde(rename = "pt")]
    PT,
    /// All full transformations between nonempty sets.
    #[serde(rename = "t")]
    T,
    /// All injective partial transformations.
    #[serde(rename = "i")]
    I,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::PT, Variant::T, Variant::I];

    /// Lower-case name used by the text interfaces.
    pub fn name(self) -> &'static str {
        match self {
            Variant::PT => "pt",
            Variant::T => "t",
            Variant::I => "i",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::PT => "PT",
            Variant::T => "T",
            Variant::I => "I",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "pt" => Ok(Variant::PT),
            "t" => Ok(Variant::T),
            "i" => Ok(Variant::I),
            _ => Err(Error::BadToken(s.to_string())),
        }
    }
}

/// A partial map from `{0..m}` to `{0..n}`, stored as its image sequence.
///
/// The derived order is lexicographic on the images with undefined entries
/// greatest, which is the canonical order used for enumeration and for class
/// representatives.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialMap {
    images: Vec<u32>,
    n: u32,
}

/// Domain, image, kernel and rank of a map.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MapProfile {
    pub dom: Vec<usize>,
    pub im: Vec<usize>,
    /// Kernel blocks, each sorted, listed in order of least element.
    pub kernel: Vec<Vec<usize>>,
    pub rank: usize,
}

/// Fullness, injectivity and surjectivity of a map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ClassifyFlags {
    pub full: bool,
    pub injective: bool,
    pub surjective: bool,
}

/// How a set of points meets the blocks of a partition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct KernelRelation {
    pub saturates: bool,
    pub separates: bool,
    pub cross_section: bool,
}

impl PartialMap {
    /// Builds a map from 0-based optional images, checking that they lie in `0..n`.
    pub fn new(n: usize, images: &[Option<usize>]) -> Result<Self> {
        let mut raw = Vec::with_capacity(images.len());
        for img in images {
            match *img {
                None => raw.push(UNDEF),
                Some(y) if y < n => raw.push(y as u32),
                Some(y) => return Err(Error::OutOfRange { value: y + 1, n }),
            }
        }
        Ok(PartialMap {
            images: raw,
            n: n as u32,
        })
    }

    /// Builds a map from raw images without validation.
    pub(crate) fn from_raw(n: usize, images: Vec<u32>) -> Self {
        debug_assert!(images.iter().all(|&y| y == UNDEF || (y as usize) < n));
        PartialMap {
            images,
            n: n as u32,
        }
    }

    /// The empty map from `m` points to `n` points.
    pub fn empty(m: usize, n: usize) -> Self {
        PartialMap {
            images: vec![UNDEF; m],
            n: n as u32,
        }
    }

    /// The identity on `m` points.
    pub fn identity(m: usize) -> Self {
        PartialMap {
            images: (0..m as u32).collect(),
            n: m as u32,
        }
    }

    /// Size of the source set.
    pub fn m(&self) -> usize {
        self.images.len()
    }

    /// Size of the target set.
    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// Image of `x`, if defined.
    pub fn apply(&self, x: usize) -> Option<usize> {
        match self.images.get(x) {
            Some(&y) if y != UNDEF => Some(y as usize),
            _ => None,
        }
    }

    /// The raw image sequence, with [`UNDEF`] for undefined entries.
    pub fn raw(&self) -> &[u32] {
        &self.images
    }

    /// Left-to-right composite: `x` is sent to `g(self(x))`.
    pub fn then(&self, g: &PartialMap) -> Result<PartialMap> {
        if self.n() != g.m() {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose {}->{} with {}->{}",
                self.m(),
                self.n(),
                g.m(),
                g.n()
            )));
        }
        Ok(self.then_unchecked(g))
    }

    /// Composite without the dimension check.
    pub fn then_unchecked(&self, g: &PartialMap) -> PartialMap {
        let images = self
            .images
            .iter()
            .map(|&y| {
                if y == UNDEF {
                    UNDEF
                } else {
                    g.images[y as usize]
                }
            })
            .collect();
        PartialMap { images, n: g.n }
    }

    /// Sorted domain.
    pub fn dom(&self) -> Vec<usize> {
        (0..self.m()).filter(|&x| self.images[x] != UNDEF).collect()
    }

    /// Sorted image.
    pub fn image(&self) -> Vec<usize> {
        let seen = self.image_mask();
        (0..self.n()).filter(|&y| seen[y]).collect()
    }

    /// Image as a membership vector over the target.
    pub fn image_mask(&self) -> Vec<bool> {
        let mut seen = vec![false; self.n()];
        for &y in &self.images {
            if y != UNDEF {
                seen[y as usize] = true;
            }
        }
        seen
    }

    /// Number of image points.
    pub fn rank(&self) -> usize {
        self.image_mask().iter().filter(|&&b| b).count()
    }

    /// Kernel blocks in order of least element.
    pub fn kernel(&self) -> Vec<Vec<usize>> {
        let labels = self.kernel_labels();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (x, &l) in labels.iter().enumerate() {
            if l == UNDEF {
                continue;
            }
            let l = l as usize;
            if l == blocks.len() {
                blocks.push(Vec::new());
            }
            blocks[l].push(x);
        }
        blocks
    }

    /// Labels each point of the domain by the index of its kernel block, blocks
    /// numbered in order of least element; undefined points get [`UNDEF`].
    /// Two maps with the same source have equal labels exactly when they have
    /// the same domain and kernel.
    pub fn kernel_labels(&self) -> Vec<u32> {
        let mut label_of = vec![UNDEF; self.n()];
        let mut next = 0u32;
        self.images
            .iter()
            .map(|&y| {
                if y == UNDEF {
                    return UNDEF;
                }
                let slot = &mut label_of[y as usize];
                if *slot == UNDEF {
                    *slot = next;
                    next += 1;
                }
                *slot
            })
            .collect()
    }

    /// Domain, image, kernel and rank.
    pub fn profile(&self) -> MapProfile {
        let kernel = self.kernel();
        MapProfile {
            dom: self.dom(),
            im: self.image(),
            rank: kernel.len(),
            kernel,
        }
    }

    pub fn is_full(&self) -> bool {
        self.images.iter().all(|&y| y != UNDEF)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.n()];
        for &y in &self.images {
            if y != UNDEF {
                if seen[y as usize] {
                    return false;
                }
                seen[y as usize] = true;
            }
        }
        true
    }

    pub fn is_surjective(&self) -> bool {
        self.image_mask().iter().all(|&b| b)
    }

    pub fn classify(&self) -> ClassifyFlags {
        ClassifyFlags {
            full: self.is_full(),
            injective: self.is_injective(),
            surjective: self.is_surjective(),
        }
    }

    /// The injective map `g` sending each image point to the least element of its
    /// fiber. It satisfies `f g f = f` and `g f g = g`.
    pub fn pseudo_inverse(&self) -> PartialMap {
        let mut g = vec![UNDEF; self.n()];
        for (x, &y) in self.images.iter().enumerate() {
            if y != UNDEF && g[y as usize] == UNDEF {
                g[y as usize] = x as u32;
            }
        }
        PartialMap {
            images: g,
            n: self.m() as u32,
        }
    }

    /// Set-theoretic inverse of an injective map.
    pub fn inverse(&self) -> Option<PartialMap> {
        self.is_injective().then(|| self.pseudo_inverse())
    }

    /// Number of domain points moved by a self-map; errors unless `m = n`.
    pub fn shift(&self) -> Result<usize> {
        if self.m() != self.n() {
            return Err(Error::DimensionMismatch("shift needs a self-map".into()));
        }
        Ok((0..self.m())
            .filter(|&x| self.images[x] != UNDEF && self.images[x] as usize != x)
            .count())
    }

    /// `Σ (|y f⁻¹| - 1)` over the image points `y`.
    pub fn collapse(&self) -> usize {
        self.dom().len() - self.rank()
    }

    /// Number of target points outside the image.
    pub fn defect(&self) -> usize {
        self.n() - self.rank()
    }

    /// Number of source points outside the domain.
    pub fn codefect(&self) -> usize {
        self.m() - self.dom().len()
    }

    /// Checks the invariants of `variant`.
    pub fn check_variant(&self, variant: Variant) -> Result<()> {
        match variant {
            Variant::PT => Ok(()),
            Variant::T => {
                if self.m() == 0 || self.n() == 0 {
                    return Err(Error::EmptyGroundSet);
                }
                match self.images.iter().position(|&y| y == UNDEF) {
                    Some(x) => Err(Error::UndefinedInFull(x + 1)),
                    None => Ok(()),
                }
            }
            Variant::I => {
                let mut seen = vec![false; self.n()];
                for &y in &self.images {
                    if y != UNDEF {
                        if seen[y as usize] {
                            return Err(Error::DuplicateImage(y as usize + 1));
                        }
                        seen[y as usize] = true;
                    }
                }
                Ok(())
            }
        }
    }

    /// Whether the map belongs to the hom-set of `variant`.
    pub fn is_valid_for(&self, variant: Variant) -> bool {
        self.check_variant(variant).is_ok()
    }
}

impl fmt::Display for PartialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &y) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if y == UNDEF {
                f.write_str("-")?;
            } else {
                write!(f, "{}", y + 1)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PartialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self)
    }
}

/// Parses whitespace-separated 1-based images, `-` meaning undefined.
pub fn parse_map(text: &str, m: usize, n: usize, variant: Variant) -> Result<PartialMap> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    if tokens.len() != m {
        return Err(Error::TokenCount {
            expected: m,
            found: tokens.len(),
        });
    }
    let mut images = Vec::with_capacity(m);
    for tok in tokens {
        if tok == "-" {
            images.push(None);
            continue;
        }
        let v: usize = tok.parse().map_err(|_| Error::BadToken(tok.to_string()))?;
        if v == 0 || v > n {
            return Err(Error::OutOfRange { value: v, n });
        }
        images.push(Some(v - 1));
    }
    let f = PartialMap::new(n, &images)?;
    if variant == Variant::T && (m == 0 || n == 0) {
        return Err(Error::EmptyGroundSet);
    }
    f.check_variant(variant)?;
    Ok(f)
}

/// Left-to-right composite `fg`.
pub fn compose(f: &PartialMap, g: &PartialMap) -> Result<PartialMap> {
    f.then(g)
}

/// Compares a point set with a partition given by its blocks.
pub fn kernel_relation(set: &[usize], blocks: &[Vec<usize>]) -> KernelRelation {
    let mut saturates = true;
    let mut separates = true;
    for block in blocks {
        let hits = block.iter().filter(|x| set.contains(x)).count();
        saturates &= hits >= 1;
        separates &= hits <= 1;
    }
    KernelRelation {
        saturates,
        separates,
        cross_section: saturates && separates,
    }
}

/// Number of elements of the hom-set `m -> n` of `variant`.
pub fn hom_size(variant: Variant, m: usize, n: usize) -> BigInt {
    match variant {
        Variant::PT => BigInt::from(n + 1).pow(m as u32),
        Variant::T => {
            if m == 0 || n == 0 {
                BigInt::from(0)
            } else {
                BigInt::from(n).pow(m as u32)
            }
        }
        Variant::I => (0..=m.min(n))
            .map(|mu| factorial(mu) * binom(m, mu) * binom(n, mu))
            .sum(),
    }
}

/// Every element of the hom-set, in canonical order, subject to the default cap.
pub fn enumerate(variant: Variant, m: usize, n: usize) -> Result<HomSet> {
    enumerate_with_cap(variant, m, n, default_cap())
}

/// Every element of the hom-set, in canonical order, failing when the hom-set has
/// more than `cap` elements.
pub fn enumerate_with_cap(variant: Variant, m: usize, n: usize, cap: u64) -> Result<HomSet> {
    if variant == Variant::T && (m == 0 || n == 0) {
        return Err(Error::EmptyGroundSet);
    }
    let size = hom_size(variant, m, n);
    if size > BigInt::from(cap) {
        return Err(Error::CapExceeded {
            size: size.to_string(),
            cap,
        });
    }
    Ok(HomSet {
        variant,
        n,
        current: None,
        done: false,
        m,
    })
}

/// Iterator over a hom-set in canonical order.
#[derive(Clone, Debug)]
pub struct HomSet {
    variant: Variant,
    m: usize,
    n: usize,
    current: Option<Vec<u32>>,
    done: bool,
}

impl HomSet {
    fn first(&self) -> Vec<u32> {
        match self.variant {
            Variant::PT | Variant::T => vec![self.lowest(); self.m],
            Variant::I => {
                let mut v = vec![UNDEF; self.m];
                let mut used = vec![false; self.n];
                fill_injective(&mut v, 0, &mut used);
                v
            }
        }
    }

    fn lowest(&self) -> u32 {
        if self.n == 0 {
            UNDEF
        } else {
            0
        }
    }

    /// Successor value of `y` in the order `0 < 1 < .. < n-1 < UNDEF`.
    fn succ(&self, y: u32) -> Option<u32> {
        if y == UNDEF {
            return None;
        }
        if (y as usize) + 1 < self.n {
            Some(y + 1)
        } else if self.variant == Variant::T {
            None
        } else {
            Some(UNDEF)
        }
    }

    fn advance(&self, v: &mut [u32]) -> bool {
        match self.variant {
            Variant::PT | Variant::T => {
                for p in (0..self.m).rev() {
                    match self.succ(v[p]) {
                        Some(y) => {
                            v[p] = y;
                            return true;
                        }
                        None => v[p] = self.lowest(),
                    }
                }
                false
            }
            Variant::I => {
                let mut used = vec![false; self.n];
                for &y in v.iter() {
                    if y != UNDEF {
                        used[y as usize] = true;
                    }
                }
                for p in (0..self.m).rev() {
                    if v[p] != UNDEF {
                        used[v[p] as usize] = false;
                    }
                    let mut cand = self.succ(v[p]);
                    while let Some(y) = cand {
                        if y == UNDEF || !used[y as usize] {
                            break;
                        }
                        cand = self.succ(y);
                    }
                    if let Some(y) = cand {
                        v[p] = y;
                        if y != UNDEF {
                            used[y as usize] = true;
                        }
                        fill_injective(v, p + 1, &mut used);
                        return true;
                    }
                }
                false
            }
        }
    }
}

/// Fills `v[from..]` with the least injective continuation.
fn fill_injective(v: &mut [u32], from: usize, used: &mut [bool]) {
    for slot in v.iter_mut().skip(from) {
        match used.iter().position(|&u| !u) {
            Some(y) => {
                used[y] = true;
                *slot = y as u32;
            }
            None => *slot = UNDEF,
        }
    }
}

impl Iterator for HomSet {
    type Item = PartialMap;

    fn next(&mut self) -> Option<PartialMap> {
        if self.done {
            return None;
        }
        let next = match self.current.take() {
            None => Some(self.first()),
            Some(mut v) => self.advance(&mut v).then_some(v),
        };
        match next {
            Some(v) => {
                self.current = Some(v.clone());
                Some(PartialMap::from_raw(self.n, v))
            }
            None => {
                self.done = true;
                None
            }
        }
    }
}
