//! Sandwich semigroups of finite partial, full and injective transformations.
//!
//! For ground sets `X` and `Y` and a fixed map `a: Y -> X`, the maps `X -> Y`
//! form a semigroup under `f ⋆ g = f a g` (composition left to right). This
//! crate builds these semigroups for the categories PT, T and I, computes their
//! Green's structure, regular and idempotent-generated parts, counting formulas
//! and ranks, checks every closed form against brute force, and renders egg-box
//! diagrams.
//!
//! ```
//! use sandwich_core::generation::rank_formula;
//! use sandwich_core::{parse_map, Sandwich, Variant};
//!
//! // a: Y -> X with |X| = 3, |Y| = 5, written as 1-based images.
//! let a = parse_map("1 1 2 2 -", 5, 3, Variant::PT).unwrap();
//! let s = Sandwich::new(Variant::PT, 3, 5, a).unwrap();
//! assert_eq!((s.alpha(), s.beta(), s.xi()), (2, 1, 3));
//!
//! let report = rank_formula(&s).unwrap();
//! assert_eq!(report.rank_value, 60.into());
//! assert_eq!(report.case_tag.name(), "below_xi_neither");
//! ```

pub mod combinatorics;
pub mod eggbox;
pub mod error;
pub mod generation;
pub mod greens;
pub mod idempotents;
pub mod maps;
pub mod regular;
pub mod sandwich;
pub mod semigroup;
pub mod verify;

pub use error::{Error, Result};
pub use greens::GreenKind;
pub use maps::{parse_map, PartialMap, Variant};
pub use sandwich::{PSetFlags, Sandwich};
