//! Exact finite-group algebra for orbifold invariants of global quotients twisted
//! by discrete torsion.
//!
//! The crate is `no_std` (it needs `alloc`). Everything is exact: group elements
//! are dense indices into a Cayley table, cocycle values are roots of unity with
//! rational exponents, and sums of roots of unity live in cyclotomic fields.
//!
//! Module map:
//!
//! - [`group`]: finite groups, conjugacy classes, centralizers, cyclic subgroups.
//! - [`arith`]: roots of unity, cyclotomic numbers, phase accumulators.
//! - [`modular`]: Smith and Hermite normal forms over `Z/M`.
//! - [`cocycle`]: normalized 2-cocycles, coboundaries, the γ-twist, Schur
//!   multipliers, central extensions and cyclic trivializations.
//! - [`sectors`]: inertia and multisectors of global quotients, ages.
//! - [`local_system`]: the γ-twisted inner local system, twisted orbifold
//!   cohomology and the twisted class algebra.
//! - [`surface`]: surface-group homomorphisms, holonomy weights, partition sums,
//!   gluing and the fundamental-class multiplier.
#![cfg_attr(not(feature = "std"), no_std)]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod arith;
pub mod cocycle;
pub mod group;
pub mod local_system;
pub mod modular;
pub mod sectors;
pub mod surface;

pub use arith::{Cyclotomic, PhaseSum, Rational, RootOfUnity};
pub use cocycle::{Cochain1, Cocycle2, CocycleError, CohomologyReport, Trivialization};
pub use group::{default_corpus, ConjugacyClass, Element, FiniteGroup, GroupError, Subgroup, DEFAULT_CORPUS};
pub use local_system::{InnerLocalSystem, TwistedClassAlgebra, TwistedCohomology};
pub use sectors::{MultiSector, OrbifoldPresentation, Sector};
pub use surface::{SurfaceHom, SurfaceSignature};

/// Default bound on enumerated tuple candidates (`|G|^(2g+k)` and `|G|^k`).
pub const DEFAULT_ENUMERATION_CAP: u64 = 10_000_000;
