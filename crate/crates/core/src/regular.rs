//! The regular part `P = Reg(S)` of a sandwich semigroup: the epimorphism
//! `φ: P -> PT_α`, the inflation of its classes, the pullback embedding, the
//! restricted semigroups it is built from, and its size and rank.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;

use crate::combinatorics::{binom, elementary_symmetric, factorial, product, stirling2};
use crate::error::{Error, Result};
use crate::maps::{enumerate, PartialMap, Variant, UNDEF};
use crate::sandwich::Sandwich;

/// How the regular class of an element inflates the corresponding class of the
/// base monoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InflationProfile {
    pub mu: usize,
    /// Number of R-classes of `P` inside the hat-R-class.
    pub rhat_mult: BigInt,
    /// Number of L-classes of `P` inside the hat-L-class.
    pub lhat_mult: BigInt,
    /// Size of each H-class, `μ!`.
    pub h_size: BigInt,
    /// Whether the hat-H-class is a rectangular group.
    pub is_group: bool,
    pub rect_rows: BigInt,
    pub rect_cols: BigInt,
}

/// The pair `(fa, af)` attached to a regular element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PullbackPair {
    /// `fa`, an element of `PT(X, im a)`.
    pub left: PartialMap,
    /// `af`, an element of `PT(Y, ker a)`.
    pub right: PartialMap,
}

/// Parameters of a restricted semigroup realised as a sandwich semigroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Restriction {
    /// Maps of an `x`-set whose image lies in `b`.
    Range { x: usize, b: Vec<usize> },
    /// Maps of a `y`-set defined on the union of `blocks` and constant on each block.
    Kernel { y: usize, blocks: Vec<Vec<usize>> },
    /// Injective maps of an `x`-set whose domain lies in `a` (variant I only).
    Domain { x: usize, a: Vec<usize> },
}

fn require_regular(s: &Sandwich, f: &PartialMap) -> Result<()> {
    if !s.contains(f) {
        return Err(Error::DimensionMismatch(format!(
            "{f} is not in the hom-set"
        )));
    }
    if !(s.in_p1(f) && s.in_p2(f)) {
        return Err(Error::NotRegular);
    }
    Ok(())
}

/// `φ(f) = (fa)|im(a)`, a map of the `α` image points reindexed to `0..α`.
pub fn phi(s: &Sandwich, f: &PartialMap) -> Result<PartialMap> {
    require_regular(s, f)?;
    Ok(phi_unchecked(s, f))
}

/// `φ` applied to any element of the hom-set.
pub fn phi_unchecked(s: &Sandwich, f: &PartialMap) -> PartialMap {
    let images = s
        .image_points()
        .iter()
        .map(|&x| match f.apply(x).and_then(|y| s.a().apply(y)) {
            Some(z) => s.point_index(z).expect("image of a") as u32,
            None => UNDEF,
        })
        .collect();
    PartialMap::from_raw(s.alpha(), images)
}

/// Inflation data of the regular class of `f`.
pub fn hat_class_counts(s: &Sandwich, f: &PartialMap) -> Result<InflationProfile> {
    require_regular(s, f)?;
    let mu = f.rank();
    let beta = s.beta() as u32;
    let lambda_j: Vec<usize> = f
        .image()
        .iter()
        .map(|&y| s.lambda()[s.class_of(y).expect("P1")])
        .collect();
    let (rhat_mult, lhat_mult) = match s.variant() {
        Variant::PT => (BigInt::from(mu + 1).pow(beta), product(&lambda_j)),
        Variant::T => (BigInt::from(mu).pow(beta), product(&lambda_j)),
        Variant::I => (BigInt::from(1), BigInt::from(1)),
    };
    let bar = phi_unchecked(s, f);
    let is_group = bar.then_unchecked(&bar).rank() == bar.rank();
    Ok(InflationProfile {
        mu,
        rect_rows: rhat_mult.clone(),
        rect_cols: lhat_mult.clone(),
        rhat_mult,
        lhat_mult,
        h_size: factorial(mu),
        is_group,
    })
}

/// Number of R-classes and L-classes in the regular D-class of rank `mu`.
pub fn regular_dclass_dims(s: &Sandwich, mu: usize) -> Result<(BigInt, BigInt)> {
    let alpha = s.alpha();
    let lo = usize::from(s.variant() == Variant::T);
    if mu > alpha || mu < lo {
        return Err(Error::InvalidParams(format!(
            "no regular class of rank {mu}"
        )));
    }
    let beta = s.beta() as u32;
    Ok(match s.variant() {
        Variant::PT => (
            BigInt::from(mu + 1).pow(beta) * stirling2(alpha + 1, mu + 1),
            elementary_symmetric(s.lambda(), mu),
        ),
        Variant::T => (
            BigInt::from(mu).pow(beta) * stirling2(alpha, mu),
            elementary_symmetric(s.lambda(), mu),
        ),
        Variant::I => (binom(alpha, mu), binom(alpha, mu)),
    })
}

/// `|P|` by the closed form.
pub fn reg_size_formula(s: &Sandwich) -> BigInt {
    let alpha = s.alpha();
    let beta = s.beta() as u32;
    match s.variant() {
        Variant::PT => (0..=alpha)
            .map(|mu| {
                factorial(mu)
                    * BigInt::from(mu + 1).pow(beta)
                    * stirling2(alpha + 1, mu + 1)
                    * elementary_symmetric(s.lambda(), mu)
            })
            .sum(),
        Variant::T => (1..=alpha)
            .map(|mu| {
                factorial(mu)
                    * BigInt::from(mu).pow(beta)
                    * stirling2(alpha, mu)
                    * elementary_symmetric(s.lambda(), mu)
            })
            .sum(),
        Variant::I => (0..=alpha)
            .map(|mu| factorial(mu) * binom(alpha, mu).pow(2))
            .sum(),
    }
}

/// Rank of the symmetric group on `alpha` points as a semigroup, floored at 1.
pub(crate) fn symmetric_rank(alpha: usize) -> usize {
    if alpha <= 2 {
        1
    } else {
        2
    }
}

/// `rank(P)` by the closed form (PT and T only).
pub fn reg_rank_formula(s: &Sandwich) -> Result<BigInt> {
    let alpha = s.alpha();
    let beta = s.beta() as u32;
    let lam = s.big_lambda().clone();
    match s.variant() {
        Variant::PT => Ok(match alpha {
            0 => BigInt::from(1),
            1 => 1 + BigInt::from(2).pow(beta).max(lam),
            2 => 2 + BigInt::from(3).pow(beta).max(lam),
            _ => {
                2 + BigInt::from(alpha + 1)
                    .pow(beta)
                    .max(lam)
                    .max(BigInt::from(2))
            }
        }),
        Variant::T => Ok(if alpha == 1 {
            BigInt::from(s.n())
        } else {
            1 + BigInt::from(alpha)
                .pow(beta)
                .max(lam)
                .max(BigInt::from(symmetric_rank(alpha)))
        }),
        Variant::I => Err(Error::Unsupported(
            "no closed form for the rank of the regular part in I",
        )),
    }
}

/// `ψ(f) = (fa, af)`.
pub fn pullback_embed(s: &Sandwich, f: &PartialMap) -> Result<PullbackPair> {
    require_regular(s, f)?;
    Ok(PullbackPair {
        left: f.then_unchecked(s.a()),
        right: s.a().then_unchecked(f),
    })
}

/// Whether `g: X -> X` lies in `PT(X, im a)`: its image lies in `im(a)`.
pub fn in_range_semigroup(s: &Sandwich, g: &PartialMap) -> bool {
    g.m() == s.m()
        && g.n() == s.m()
        && g.is_valid_for(s.variant())
        && g.image().iter().all(|&x| s.point_index(x).is_some())
}

/// Whether `h: Y -> Y` lies in `PT(Y, ker a)`: it is defined only on `dom(a)`
/// and constant on each kernel class of `a`.
pub fn in_kernel_semigroup(s: &Sandwich, h: &PartialMap) -> bool {
    h.m() == s.n()
        && h.n() == s.n()
        && h.is_valid_for(s.variant())
        && (0..s.n()).all(|y| match s.class_of(y) {
            None => h.apply(y).is_none(),
            Some(i) => h.apply(y) == h.apply(s.kernel_classes()[i][0]),
        })
}

/// Regular elements of `PT(X, im a)`: those whose kernel is saturated by `im(a)`.
pub fn range_regular(s: &Sandwich) -> Result<Vec<PartialMap>> {
    Ok(enumerate(s.variant(), s.m(), s.m())?
        .filter(|g| in_range_semigroup(s, g))
        .filter(|g| {
            let mut hit = vec![false; s.m()];
            for &x in s.image_points() {
                if let Some(z) = g.apply(x) {
                    hit[z] = true;
                }
            }
            g.raw().iter().all(|&z| z == UNDEF || hit[z as usize])
        })
        .collect())
}

/// Regular elements of `PT(Y, ker a)`: those whose image lies in `dom(a)` and is
/// separated by `ker(a)`.
pub fn kernel_regular(s: &Sandwich) -> Result<Vec<PartialMap>> {
    Ok(enumerate(s.variant(), s.n(), s.n())?
        .filter(|h| in_kernel_semigroup(s, h))
        .filter(|h| {
            let mut used = vec![false; s.alpha()];
            h.image().iter().all(|&y| match s.class_of(y) {
                Some(i) if !used[i] => {
                    used[i] = true;
                    true
                }
                _ => false,
            })
        })
        .collect())
}

/// The compatible pairs `(g, h)` of regular elements with `a g = h a`.
pub fn compatible_pairs(s: &Sandwich) -> Result<BTreeSet<PullbackPair>> {
    let mut by_ag: HashMap<PartialMap, Vec<PartialMap>> = HashMap::new();
    for g in range_regular(s)? {
        by_ag.entry(s.a().then_unchecked(&g)).or_default().push(g);
    }
    let mut out = BTreeSet::new();
    for h in kernel_regular(s)? {
        if let Some(gs) = by_ag.get(&h.then_unchecked(s.a())) {
            for g in gs {
                out.insert(PullbackPair {
                    left: g.clone(),
                    right: h.clone(),
                });
            }
        }
    }
    Ok(out)
}

/// A sandwich semigroup isomorphic to the requested restricted semigroup.
///
/// `Range` uses the inclusion `b -> X`, which is injective and full, so that
/// `f ↦ fa` is an isomorphism. `Kernel` uses the quotient map onto the blocks,
/// which is surjective, so that `f ↦ af` is an isomorphism. `Domain` is the
/// injective analogue of `Kernel` with singleton blocks.
pub fn restricted_semigroup(variant: Variant, restriction: &Restriction) -> Result<Sandwich> {
    let invalid = |msg: &str| Error::InvalidParams(msg.to_string());
    match restriction {
        Restriction::Range { x, b } => {
            let set: BTreeSet<usize> = b.iter().copied().collect();
            if set.len() != b.len() || set.iter().any(|&p| p >= *x) {
                return Err(invalid("range must be distinct points of X"));
            }
            let images: Vec<Option<usize>> = set.iter().map(|&p| Some(p)).collect();
            let a = PartialMap::new(*x, &images)?;
            Sandwich::new(variant, *x, set.len(), a)
        }
        Restriction::Kernel { y, blocks } => {
            let mut images = vec![None; *y];
            for (i, block) in blocks.iter().enumerate() {
                if block.is_empty() {
                    return Err(invalid("blocks must be nonempty"));
                }
                for &p in block {
                    if p >= *y || images[p].is_some() {
                        return Err(invalid("blocks must be disjoint subsets of Y"));
                    }
                    images[p] = Some(i);
                }
            }
            let a = PartialMap::new(blocks.len(), &images)?;
            Sandwich::new(variant, blocks.len(), *y, a)
        }
        Restriction::Domain { x, a } => {
            if variant != Variant::I {
                return Err(invalid("domain restriction is defined for I only"));
            }
            let set: BTreeSet<usize> = a.iter().copied().collect();
            if set.len() != a.len() || set.iter().any(|&p| p >= *x) {
                return Err(invalid("domain must be distinct points"));
            }
            let mut images = vec![None; *x];
            for (k, &p) in set.iter().enumerate() {
                images[p] = Some(k);
            }
            let map = PartialMap::new(set.len(), &images)?;
            Sandwich::new(variant, set.len(), *x, map)
        }
    }
}

/// The regular elements of top rank `α`: the hat-H-class of `b`.
pub fn top_hat_class(s: &Sandwich) -> Result<Vec<PartialMap>> {
    let alpha = s.alpha();
    Ok(s.regular_elements()?
        .into_iter()
        .filter(|f| f.rank() == alpha)
        .collect())
}

/// Elements `g, h` of the hat-H-class of `b` with `f = g ⋆ f ⋆ h`.
///
/// `g` fixes the image points of `a` under `φ` and sends the rest of each kernel
/// block of `f` to the `b_i` of an image point in that block; `h` sends `a_j` to
/// the image point of `f` in `A_j`, and every other `a_l` to `b_l`.
pub fn mi_factor(s: &Sandwich, f: &PartialMap) -> Result<(PartialMap, PartialMap)> {
    require_regular(s, f)?;
    let b_pts = s.b_points();
    let fill = if s.variant() == Variant::T {
        b_pts[0] as u32
    } else {
        UNDEF
    };
    // For each image point y of f, the index of the first a_i in its fiber.
    let mut witness = vec![UNDEF; s.n()];
    for (i, &x) in s.image_points().iter().enumerate() {
        if let Some(y) = f.apply(x) {
            if witness[y] == UNDEF {
                witness[y] = i as u32;
            }
        }
    }
    let g = (0..s.m())
        .map(|x| match (s.point_index(x), f.apply(x)) {
            (Some(i), _) => b_pts[i] as u32,
            (None, Some(y)) => b_pts[witness[y] as usize] as u32,
            (None, None) => fill,
        })
        .collect();
    let mut h = vec![fill; s.m()];
    for (l, &x) in s.image_points().iter().enumerate() {
        h[x] = b_pts[l] as u32;
    }
    for y in f.image() {
        let j = s.class_of(y).expect("P1");
        h[s.image_points()[j]] = y as u32;
    }
    Ok((
        PartialMap::from_raw(s.n(), g),
        PartialMap::from_raw(s.n(), h),
    ))
}

/// Whether `P = Ĥ_b ⋆ P ⋆ Ĥ_b`, checked by enumeration.
pub fn mi_factorization_check(s: &Sandwich) -> Result<bool> {
    let p = s.regular_elements()?;
    let hat = top_hat_class(s)?;
    let left: BTreeSet<PartialMap> = hat
        .iter()
        .flat_map(|g| p.iter().map(move |f| s.star_unchecked(g, f)))
        .collect();
    let both: BTreeSet<PartialMap> = left
        .iter()
        .flat_map(|gf| hat.iter().map(move |h| s.star_unchecked(gf, h)))
        .collect();
    Ok(both == p.into_iter().collect())
}
