//! The sandwich semigroup `(Hom(X, Y), ⋆_a)` with `f ⋆ g = f a g`, its P-sets,
//! Green's classes and the order on its J-classes.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::combinatorics::product;
use crate::error::{Error, Result};
use crate::greens::{dom_ker_below, image_below, related, GreenKind};
use crate::maps::{enumerate, PartialMap, Variant, UNDEF};
use crate::semigroup::FiniteSemigroup;

/// A sandwich element `a: Y -> X` with its derived parameters.
///
/// The image points `a_1 < .. < a_α` index the kernel classes `A_i = a⁻¹(a_i)`.
/// The pseudo-inverse `b: X -> Y` sends `a_i` to `b_i = min A_i`; for T it also
/// sends every point outside `im(a)` to `b_1`. Then `aba = a` and `bab = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sandwich {
    variant: Variant,
    m: usize,
    n: usize,
    a: PartialMap,
    b: PartialMap,
    image_points: Vec<usize>,
    kernel_classes: Vec<Vec<usize>>,
    lambda: Vec<usize>,
    big_lambda: BigInt,
    /// For `y` in `dom(a)`, the index `i` with `a(y) = a_i`.
    class_of: Vec<u32>,
    /// For `x = a_i`, the index `i`.
    point_index: Vec<u32>,
}

/// Membership of an element in the sets `P₁`, `P₂`, `P₃` and `P = P₁ ∩ P₂`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PSetFlags {
    pub p1: bool,
    pub p2: bool,
    pub p3: bool,
    pub regular: bool,
}

/// Key identifying the class of an element under one of the sandwich Green's
/// relations: two elements are related exactly when their keys are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassKey {
    /// A singleton class.
    Single(PartialMap),
    /// Common domain and kernel (labels from [`PartialMap::kernel_labels`]).
    DomKer(Vec<u32>),
    /// Common image.
    Image(Vec<bool>),
    /// Common domain, kernel and image.
    DomKerImage(Vec<u32>, Vec<bool>),
    /// Regular elements of a given rank.
    RegularRank(usize),
    /// Elements of `P₃` of a given rank.
    P3Rank(usize),
}

/// A sandwich Green's class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassDescriptor {
    pub kind: GreenKind,
    pub representative: PartialMap,
    /// Members in canonical order.
    pub members: Vec<PartialMap>,
    pub is_singleton_non_p: bool,
}

/// The maximal J-classes of a sandwich semigroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MaximalJClasses {
    /// `α < ξ`: the singletons `{f}` with `rank(f) > α`.
    Singletons(Vec<PartialMap>),
    /// `α = ξ`: the maximum class `{f ∈ P₃ : rank(f) = α}`.
    Maximum(Vec<PartialMap>),
}

impl Sandwich {
    /// Builds the sandwich semigroup on `m -> n` maps with sandwich element
    /// `a: n -> m`.
    pub fn new(variant: Variant, m: usize, n: usize, a: PartialMap) -> Result<Self> {
        if a.m() != n || a.n() != m {
            return Err(Error::DimensionMismatch(format!(
                "sandwich element must map {n} points to {m}, got {}->{}",
                a.m(),
                a.n()
            )));
        }
        if variant == Variant::T && (m == 0 || n == 0) {
            return Err(Error::EmptyGroundSet);
        }
        a.check_variant(variant)?;
        let image_points = a.image();
        let mut point_index = vec![UNDEF; m];
        for (i, &x) in image_points.iter().enumerate() {
            point_index[x] = i as u32;
        }
        let mut kernel_classes = vec![Vec::new(); image_points.len()];
        let mut class_of = vec![UNDEF; n];
        for (y, slot) in class_of.iter_mut().enumerate() {
            if let Some(x) = a.apply(y) {
                let i = point_index[x];
                *slot = i;
                kernel_classes[i as usize].push(y);
            }
        }
        let lambda: Vec<usize> = kernel_classes.iter().map(Vec::len).collect();
        let mut b = vec![UNDEF; m];
        for (i, &x) in image_points.iter().enumerate() {
            b[x] = kernel_classes[i][0] as u32;
        }
        if variant == Variant::T {
            let b1 = kernel_classes[0][0] as u32;
            for slot in b.iter_mut().filter(|s| **s == UNDEF) {
                *slot = b1;
            }
        }
        let b = PartialMap::from_raw(n, b);
        Ok(Sandwich {
            variant,
            m,
            n,
            big_lambda: product(&lambda),
            a,
            b,
            image_points,
            kernel_classes,
            lambda,
            class_of,
            point_index,
        })
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// `|X|`.
    pub fn m(&self) -> usize {
        self.m
    }

    /// `|Y|`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// The sandwich element `a: Y -> X`.
    pub fn a(&self) -> &PartialMap {
        &self.a
    }

    /// The pseudo-inverse `b: X -> Y`.
    pub fn b(&self) -> &PartialMap {
        &self.b
    }

    /// `α = rank(a)`.
    pub fn alpha(&self) -> usize {
        self.image_points.len()
    }

    /// `β = |X \ im(a)|`.
    pub fn beta(&self) -> usize {
        self.m - self.alpha()
    }

    /// `ξ = min(|X|, |Y|)`.
    pub fn xi(&self) -> usize {
        self.m.min(self.n)
    }

    /// The image points `a_1 < .. < a_α` of `a`.
    pub fn image_points(&self) -> &[usize] {
        &self.image_points
    }

    /// The kernel classes `A_i = a⁻¹(a_i)`.
    pub fn kernel_classes(&self) -> &[Vec<usize>] {
        &self.kernel_classes
    }

    /// The sizes `λ_i = |A_i|`.
    pub fn lambda(&self) -> &[usize] {
        &self.lambda
    }

    /// `Λ = ∏ λ_i`.
    pub fn big_lambda(&self) -> &BigInt {
        &self.big_lambda
    }

    /// The points `b_i = min A_i`.
    pub fn b_points(&self) -> Vec<usize> {
        self.kernel_classes.iter().map(|c| c[0]).collect()
    }

    /// Index `i` of the kernel class containing `y`, if `y ∈ dom(a)`.
    pub fn class_of(&self, y: usize) -> Option<usize> {
        (self.class_of[y] != UNDEF).then(|| self.class_of[y] as usize)
    }

    /// Index `i` with `x = a_i`, if `x ∈ im(a)`.
    pub fn point_index(&self, x: usize) -> Option<usize> {
        (self.point_index[x] != UNDEF).then(|| self.point_index[x] as usize)
    }

    /// `im(a) = X`.
    pub fn a_surjective(&self) -> bool {
        self.alpha() == self.m
    }

    /// `dom(a) = Y`.
    pub fn a_full(&self) -> bool {
        self.a.is_full()
    }

    /// `ker(a)` trivial.
    pub fn a_injective(&self) -> bool {
        self.alpha() == self.a.dom().len()
    }

    /// `a` is a bijection `Y -> X`.
    pub fn a_bijective(&self) -> bool {
        self.a_full() && self.a_injective() && self.a_surjective()
    }

    fn check(&self, f: &PartialMap) -> Result<()> {
        if f.m() != self.m || f.n() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "element maps {}->{}, expected {}->{}",
                f.m(),
                f.n(),
                self.m,
                self.n
            )));
        }
        Ok(())
    }

    /// Whether `f` belongs to the hom-set of this semigroup.
    pub fn contains(&self, f: &PartialMap) -> bool {
        self.check(f).is_ok() && f.is_valid_for(self.variant)
    }

    /// `f ⋆ g = f a g`.
    pub fn star(&self, f: &PartialMap, g: &PartialMap) -> Result<PartialMap> {
        self.check(f)?;
        self.check(g)?;
        Ok(self.star_unchecked(f, g))
    }

    /// `f ⋆ g` without dimension checks.
    pub fn star_unchecked(&self, f: &PartialMap, g: &PartialMap) -> PartialMap {
        let fr = f.raw();
        let (ar, gr) = (self.a.raw(), g.raw());
        let images = fr
            .iter()
            .map(|&y| {
                if y == UNDEF {
                    return UNDEF;
                }
                let x = ar[y as usize];
                if x == UNDEF {
                    UNDEF
                } else {
                    gr[x as usize]
                }
            })
            .collect();
        PartialMap::from_raw(self.n, images)
    }

    /// `f ∈ P₁`: `im(f) ⊆ dom(a)` and `ker(a)` separates `im(f)`.
    pub fn in_p1(&self, f: &PartialMap) -> bool {
        let mut used = vec![false; self.alpha()];
        for y in f.image() {
            match self.class_of(y) {
                None => return false,
                Some(i) if used[i] => return false,
                Some(i) => used[i] = true,
            }
        }
        true
    }

    /// `f ∈ P₂`: `im(a)` saturates `ker(f)`.
    pub fn in_p2(&self, f: &PartialMap) -> bool {
        let mut hit = vec![false; self.n];
        for &x in &self.image_points {
            if let Some(y) = f.apply(x) {
                hit[y] = true;
            }
        }
        f.raw().iter().all(|&y| y == UNDEF || hit[y as usize])
    }

    /// `f ∈ P₃`: `rank(afa) = rank(f)`.
    pub fn in_p3(&self, f: &PartialMap) -> bool {
        self.a.then_unchecked(f).then_unchecked(&self.a).rank() == f.rank()
    }

    /// The P-set flags from the closed forms.
    pub fn pset(&self, f: &PartialMap) -> PSetFlags {
        let (p1, p2) = (self.in_p1(f), self.in_p2(f));
        PSetFlags {
            p1,
            p2,
            p3: self.in_p3(f),
            regular: p1 && p2,
        }
    }

    /// The P-set flags from their definitions: `fa R f`, `af L f` and
    /// `afa J f` in the category.
    pub fn pset_definitional(&self, f: &PartialMap) -> PSetFlags {
        let v = self.variant;
        let fa = f.then_unchecked(&self.a);
        let af = self.a.then_unchecked(f);
        let afa = af.then_unchecked(&self.a);
        let p1 = related(GreenKind::R, &fa, f, v).expect("common source");
        let p2 = related(GreenKind::L, &af, f, v).expect("common target");
        let p3 = related(GreenKind::J, &afa, f, v).expect("J compares any maps");
        PSetFlags {
            p1,
            p2,
            p3,
            regular: p1 && p2,
        }
    }

    /// Key of the class of `f` under the sandwich relation `kind`.
    pub fn class_key(&self, kind: GreenKind, f: &PartialMap) -> ClassKey {
        let flags = self.pset(f);
        let r_key = |f: &PartialMap| ClassKey::DomKer(f.kernel_labels());
        let l_key = |f: &PartialMap| ClassKey::Image(f.image_mask());
        match kind {
            GreenKind::R if flags.p1 => r_key(f),
            GreenKind::L if flags.p2 => l_key(f),
            GreenKind::H if flags.regular => {
                ClassKey::DomKerImage(f.kernel_labels(), f.image_mask())
            }
            GreenKind::J if flags.p3 => ClassKey::P3Rank(f.rank()),
            GreenKind::D | GreenKind::J => match (flags.p1, flags.p2) {
                (true, true) => ClassKey::RegularRank(f.rank()),
                (false, true) => l_key(f),
                (true, false) => r_key(f),
                (false, false) => ClassKey::Single(f.clone()),
            },
            _ => ClassKey::Single(f.clone()),
        }
    }

    /// All elements of the hom-set in canonical order.
    pub fn elements(&self) -> Result<Vec<PartialMap>> {
        Ok(enumerate(self.variant, self.m, self.n)?.collect())
    }

    /// The regular elements `P = P₁ ∩ P₂` in canonical order.
    pub fn regular_elements(&self) -> Result<Vec<PartialMap>> {
        Ok(enumerate(self.variant, self.m, self.n)?
            .filter(|f| self.in_p1(f) && self.in_p2(f))
            .collect())
    }

    /// The sandwich Green's class of `f`.
    pub fn green_class(&self, kind: GreenKind, f: &PartialMap) -> Result<ClassDescriptor> {
        self.check(f)?;
        let key = self.class_key(kind, f);
        let members: Vec<PartialMap> = match &key {
            ClassKey::Single(g) => vec![g.clone()],
            _ => enumerate(self.variant, self.m, self.n)?
                .filter(|g| self.class_key(kind, g) == key)
                .collect(),
        };
        let flags = self.pset(f);
        Ok(ClassDescriptor {
            kind,
            representative: members[0].clone(),
            is_singleton_non_p: members.len() == 1 && !flags.regular,
            members,
        })
    }

    /// The four-clause order test: `J_f ≤ J_g` iff `f = g`, `rank(f) ≤ rank(aga)`,
    /// `im(f) ⊆ im(ag)`, or `dom(f) ⊆ dom(ga)` with `ker(f) ⊇ ker(ga)|dom(f)`.
    pub fn jorder_leq_reference(&self, f: &PartialMap, g: &PartialMap) -> bool {
        if f == g {
            return true;
        }
        let ag = self.a.then_unchecked(g);
        let ga = g.then_unchecked(&self.a);
        let aga = ag.then_unchecked(&self.a);
        f.rank() <= aga.rank() || image_below(f, &ag) || dom_ker_below(f, &ga)
    }

    /// `J_f ≤ J_g` in the sandwich semigroup, using the rank shortcuts when `f`
    /// or `g` lies in `P₃`.
    pub fn jorder_leq(&self, f: &PartialMap, g: &PartialMap) -> Result<bool> {
        self.check(f)?;
        self.check(g)?;
        if f == g {
            return Ok(true);
        }
        if self.in_p3(g) {
            return Ok(f.rank() <= g.rank());
        }
        if self.in_p3(f) {
            let aga = self.a.then_unchecked(g).then_unchecked(&self.a);
            return Ok(f.rank() <= aga.rank());
        }
        Ok(self.jorder_leq_reference(f, g))
    }

    /// Sizes of the regular D-classes `{f ∈ P : rank(f) = μ}`, by rank.
    pub fn regular_dclasses(&self) -> Result<Vec<(usize, usize)>> {
        let mut sizes = vec![0usize; self.alpha() + 1];
        for f in self.regular_elements()? {
            sizes[f.rank()] += 1;
        }
        Ok(sizes
            .into_iter()
            .enumerate()
            .filter(|&(_, c)| c > 0)
            .collect())
    }

    /// The maximal J-classes.
    pub fn maximal_jclasses(&self) -> Result<MaximalJClasses> {
        let alpha = self.alpha();
        let all = enumerate(self.variant, self.m, self.n)?;
        if alpha < self.xi() {
            Ok(MaximalJClasses::Singletons(
                all.filter(|f| f.rank() > alpha).collect(),
            ))
        } else {
            Ok(MaximalJClasses::Maximum(
                all.filter(|f| f.rank() == alpha && self.in_p3(f)).collect(),
            ))
        }
    }

    /// The whole sandwich semigroup with its multiplication table.
    pub fn semigroup(&self) -> Result<FiniteSemigroup> {
        self.subsemigroup(self.elements()?)
    }

    /// A subsemigroup given by its elements, which must be closed under `⋆`.
    pub fn subsemigroup(&self, elements: Vec<PartialMap>) -> Result<FiniteSemigroup> {
        FiniteSemigroup::new(elements, |f, g| self.star_unchecked(f, g))
    }
}
