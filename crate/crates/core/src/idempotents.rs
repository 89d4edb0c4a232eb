//! Idempotents of a sandwich semigroup, their number, the subsemigroup they
//! generate and its rank and idempotent rank.

use num_bigint::BigInt;

use crate::combinatorics::{binom, elementary_symmetric};
use crate::error::Result;
use crate::maps::{enumerate, PartialMap, Variant};
use crate::regular::phi_unchecked;
use crate::sandwich::Sandwich;
use crate::semigroup::FiniteSemigroup;

/// The idempotent-generated subsemigroup with its exact rank data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EgenReport {
    /// Members in canonical order.
    pub members: Vec<PartialMap>,
    pub rank: usize,
    pub idrank: usize,
    /// Idempotents of size `idrank` generating `members`.
    pub witness_generators: Vec<PartialMap>,
}

/// Rank data of the idempotent-generated subsemigroup from closed forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EgenRank {
    /// Variants PT and T.
    Formula { rank: BigInt, idrank: BigInt },
    /// Variant I, where the subsemigroup is the semilattice of idempotents; the
    /// count of idempotents is reported instead of a rank.
    Semilattice { idempotents: BigInt },
}

/// `f ⋆ f = f`, by the closed test: every image point `y` lies in `dom(a)` and
/// `f(a(y)) = y`.
pub fn is_idempotent(s: &Sandwich, f: &PartialMap) -> bool {
    f.image()
        .into_iter()
        .all(|y| s.a().apply(y).and_then(|x| f.apply(x)) == Some(y))
}

/// All idempotents in canonical order.
pub fn idempotents(s: &Sandwich) -> Result<Vec<PartialMap>> {
    Ok(enumerate(s.variant(), s.m(), s.n())?
        .filter(|f| is_idempotent(s, f))
        .collect())
}

/// Number of idempotents by the closed form.
pub fn idempotent_count_formula(s: &Sandwich) -> BigInt {
    let alpha = s.alpha();
    let m = s.m();
    match s.variant() {
        Variant::PT => (0..=alpha)
            .map(|mu| {
                BigInt::from(mu + 1).pow((m - mu) as u32) * elementary_symmetric(s.lambda(), mu)
            })
            .sum(),
        Variant::T => (1..=alpha)
            .map(|mu| BigInt::from(mu).pow((m - mu) as u32) * elementary_symmetric(s.lambda(), mu))
            .sum(),
        Variant::I => (0..=alpha).map(|mu| binom(alpha, mu)).sum(),
    }
}

/// The subsemigroup generated by the idempotents, by closure.
pub fn egen_closure(s: &Sandwich) -> Result<Vec<PartialMap>> {
    let sg = s.semigroup()?;
    let gens: Vec<usize> = (0..sg.len()).filter(|&i| sg.is_idempotent(i)).collect();
    Ok(sg
        .closure(&gens)
        .ones()
        .map(|i| sg.element(i).clone())
        .collect())
}

/// Membership in the idempotent-generated subsemigroup. For PT and T this is
/// `f ∈ P` with `rank(f) < α` or `f` an idempotent of rank `α`; for I it is
/// being idempotent.
pub fn egen_membership(s: &Sandwich, f: &PartialMap) -> bool {
    if !s.contains(f) {
        return false;
    }
    match s.variant() {
        Variant::I => is_idempotent(s, f),
        Variant::PT | Variant::T => {
            s.in_p1(f) && s.in_p2(f) && (f.rank() < s.alpha() || is_idempotent(s, f))
        }
    }
}

/// Membership via the base monoid: `f ∈ P` and `φ(f)` lies in
/// `{id} ∪ (PT_α \ S_α)` (or its T analogue), the idempotent-generated
/// submonoid of the base.
pub fn egen_membership_via_phi(s: &Sandwich, f: &PartialMap) -> bool {
    if !s.contains(f) || !(s.in_p1(f) && s.in_p2(f)) {
        return false;
    }
    if s.variant() == Variant::I {
        return is_idempotent(s, f);
    }
    let bar = phi_unchecked(s, f);
    let permutation = bar.is_full() && bar.is_injective();
    !permutation || bar == PartialMap::identity(s.alpha())
}

/// Rank and idempotent rank by the closed forms.
///
/// At `α = 2` one more generator is needed: for the idempotent rank in PT, and
/// for both values in T.
pub fn egen_rank_formula(s: &Sandwich) -> EgenRank {
    let alpha = s.alpha();
    let beta = s.beta() as u32;
    let lam = s.big_lambda().clone();
    match s.variant() {
        Variant::PT => {
            let rank = binom(alpha + 1, 2) + BigInt::from(alpha + 1).pow(beta).max(lam);
            let idrank = &rank + usize::from(alpha == 2);
            EgenRank::Formula { rank, idrank }
        }
        Variant::T => {
            let rank =
                binom(alpha, 2) + BigInt::from(alpha).pow(beta).max(lam) + usize::from(alpha == 2);
            EgenRank::Formula {
                idrank: rank.clone(),
                rank,
            }
        }
        Variant::I => EgenRank::Semilattice {
            idempotents: idempotent_count_formula(s),
        },
    }
}

/// The idempotent-generated subsemigroup as a semigroup with its table.
pub fn egen_semigroup(s: &Sandwich) -> Result<FiniteSemigroup> {
    s.subsemigroup(egen_closure(s)?)
}

/// Exact rank and idempotent rank of the idempotent-generated subsemigroup.
pub fn egen_report(s: &Sandwich, budget: u64) -> Result<EgenReport> {
    let sg = egen_semigroup(s)?;
    let rank = sg.rank(budget)?;
    let idrank = sg.rank_with(|i| sg.is_idempotent(i), budget)?;
    let witness = idrank
        .generators
        .iter()
        .map(|&i| sg.element(i).clone())
        .collect();
    Ok(EgenReport {
        members: sg.elements().to_vec(),
        rank: rank.rank,
        idrank: idrank.rank,
        witness_generators: witness,
    })
}
