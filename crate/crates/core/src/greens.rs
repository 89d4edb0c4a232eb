//! Green's preorders and relations in the categories PT, T and I, and the
//! census of their D-classes.
//!
//! The tests are the closed forms: `f <=R g` compares domains and kernels, `f <=L g`
//! compares images and `f <=J g` compares ranks. They are also meaningful between
//! hom-sets: `R` needs a common source, `L` a common target and `J` nothing.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{binom, factorial, stirling2};
use crate::error::{Error, Result};
use crate::maps::{PartialMap, Variant, UNDEF};

/// One of Green's relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GreenKind {
    R,
    L,
    H,
    D,
    J,
}

impl GreenKind {
    pub const ALL: [GreenKind; 5] = [
        GreenKind::R,
        GreenKind::L,
        GreenKind::H,
        GreenKind::D,
        GreenKind::J,
    ];
}

impl std::str::FromStr for GreenKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "R" => Ok(GreenKind::R),
            "L" => Ok(GreenKind::L),
            "H" => Ok(GreenKind::H),
            "D" => Ok(GreenKind::D),
            "J" => Ok(GreenKind::J),
            _ => Err(Error::BadToken(s.to_string())),
        }
    }
}

/// Sizes attached to the D-class of rank `mu` in a hom-set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DClassCounts {
    pub mu: usize,
    pub r_classes: BigInt,
    pub l_classes: BigInt,
    pub h_classes: BigInt,
    pub h_size: BigInt,
    pub total: BigInt,
}

fn check_shapes(kind: GreenKind, f: &PartialMap, g: &PartialMap) -> Result<()> {
    let ok = match kind {
        GreenKind::R => f.m() == g.m(),
        GreenKind::L => f.n() == g.n(),
        GreenKind::H => f.m() == g.m() && f.n() == g.n(),
        GreenKind::D | GreenKind::J => true,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(format!(
            "{kind:?} compares {}->{} with {}->{}",
            f.m(),
            f.n(),
            g.m(),
            g.n()
        )))
    }
}

/// `dom(f) ⊆ dom(g)` and `ker(f) ⊇ ker(g)|dom(f)`, where the restriction keeps
/// the pairs of `ker(g)` whose first point lies in `dom(f)`. Equivalently `f`
/// factors through `g`: on `dom(g)`, `f(x)` is determined by `g(x)`. Both maps
/// share their source.
pub(crate) fn dom_ker_below(f: &PartialMap, g: &PartialMap) -> bool {
    let (fr, gr) = (f.raw(), g.raw());
    // Per point of im(g): the common f-value of its fiber, once seen.
    let mut seen = vec![false; g.n()];
    let mut value = vec![UNDEF; g.n()];
    for x in 0..fr.len() {
        let gy = gr[x];
        if gy == UNDEF {
            if fr[x] != UNDEF {
                return false;
            }
            continue;
        }
        let y = gy as usize;
        if !seen[y] {
            seen[y] = true;
            value[y] = fr[x];
        } else if value[y] != fr[x] {
            return false;
        }
    }
    true
}

/// `im(f) ⊆ im(g)`, both maps sharing their target.
pub(crate) fn image_below(f: &PartialMap, g: &PartialMap) -> bool {
    let gm = g.image_mask();
    f.raw().iter().all(|&y| y == UNDEF || gm[y as usize])
}

/// Green's preorder `f <=K g` for `K` in `{R, L, J}`; `H` and `D` are read as
/// the conjunction `R ∧ L` and as `J`.
///
/// The partial-map test serves all three variants: full maps share their domain
/// and injective kernels are trivial, so it reduces to the kernel test in T and
/// to the domain test in I.
pub fn leq(kind: GreenKind, f: &PartialMap, g: &PartialMap, _variant: Variant) -> Result<bool> {
    check_shapes(kind, f, g)?;
    Ok(match kind {
        GreenKind::R => dom_ker_below(f, g),
        GreenKind::L => image_below(f, g),
        GreenKind::H => dom_ker_below(f, g) && image_below(f, g),
        GreenKind::D | GreenKind::J => f.rank() <= g.rank(),
    })
}

/// Green's relation `f K g`.
pub fn related(kind: GreenKind, f: &PartialMap, g: &PartialMap, _variant: Variant) -> Result<bool> {
    check_shapes(kind, f, g)?;
    Ok(match kind {
        GreenKind::R => f.kernel_labels() == g.kernel_labels(),
        GreenKind::L => f.image_mask() == g.image_mask(),
        GreenKind::H => f.kernel_labels() == g.kernel_labels() && f.image_mask() == g.image_mask(),
        GreenKind::D | GreenKind::J => f.rank() == g.rank(),
    })
}

/// Counts for the D-class of rank `mu` in the hom-set from `alpha` points to
/// `beta` points.
pub fn dclass_counts(
    variant: Variant,
    alpha: usize,
    beta: usize,
    mu: usize,
) -> Result<DClassCounts> {
    if mu > alpha.min(beta) || (variant == Variant::T && (mu == 0 || alpha == 0 || beta == 0)) {
        return Err(Error::InvalidParams(format!(
            "rank {mu} out of range for {variant} with {alpha} and {beta} points"
        )));
    }
    let r_classes = match variant {
        Variant::PT => stirling2(alpha + 1, mu + 1),
        Variant::T => stirling2(alpha, mu),
        Variant::I => binom(alpha, mu),
    };
    let l_classes = binom(beta, mu);
    let h_classes = &r_classes * &l_classes;
    let h_size = factorial(mu);
    let total = &h_classes * &h_size;
    Ok(DClassCounts {
        mu,
        r_classes,
        l_classes,
        h_classes,
        h_size,
        total,
    })
}
