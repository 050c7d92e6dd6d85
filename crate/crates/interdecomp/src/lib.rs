//! Decomposition of poset-indexed projector families into interaction
//! subspaces, with exact rational arithmetic throughout.
//!
//! Given a finite poset `A` and a family of projectors `π_a : V → V` (one per
//! element, with `π_a ∘ π_b = π_b` whenever `b ≤ a`), this crate decides
//! whether the family arises from a direct-sum decomposition
//! `V = ⊕_{a ∈ A ∪ {⊤}} S_a` with `π_a` projecting onto `⊕_{b ≤ a} S_b`, and
//! constructs the decomposition when it exists. The key tool is Möbius
//! inversion over the poset, which turns the family `π` into interaction
//! terms `s_a`; the family is decomposable exactly when the pairwise
//! intersection identity `π_a·π_b = Σ_{c ≤ a, c ≤ b} s_c` holds.
//!
//! Two richer inputs reduce to this test:
//!
//! * **Probability measures on finite product spaces** ([`factor_spaces`]):
//!   conditional expectations onto the factors of a product space form a
//!   projector family over the powerset lattice; the family is decomposable
//!   exactly when the measure is a product measure, and the summands are the
//!   classical interaction subspaces.
//! * **Split functors** ([`split_functors`]): a functor/presheaf pair
//!   `(G, F)` with `F ∘ G = id` over the poset induces a projector family at
//!   every element; when the intersection test passes at every element the
//!   whole pair is isomorphic to a direct sum of one-component functors, and
//!   the isomorphism is constructed explicitly.
//!
//! # Examples
//!
//! The `examples/` directory is the front door, one runnable program per
//! capability:
//!
//! * `posets_and_mobius` — building posets, Möbius tables, zeta/Möbius
//!   transforms of coefficient families.
//! * `projector_decomposition` — checking and decomposing an explicit
//!   projector family.
//! * `planted_decomposition` — round-tripping a randomly planted
//!   decomposable family.
//! * `measure_interaction` — interaction decomposition of measures; product
//!   versus coupled.
//! * `split_functor_decomposition` — decomposing a split functor into
//!   one-component blocks and rebuilding it.
//! * `cli_files` — the JSON file formats consumed by the `interdecomp`
//!   binary.
//!
//! Run one with `cargo run --example posets_and_mobius`.
//!
//! A thin CLI wraps the same entry points: `interdecomp check|decompose
//! --kind projectors|measure|split --input file.json`.

pub mod cli;
pub mod factor_spaces;
pub mod generate;
pub mod io;
pub mod linalg;
pub mod poset;
pub mod projectors;
pub mod split_functors;

pub use factor_spaces::{ConfigurationSpace, Measure, MeasureError};
pub use io::LoadError;
pub use linalg::{Matrix, Rat, Subspace};
pub use poset::{AugmentedPoset, FinitePoset, MobiusTable, PosetError};
pub use projectors::{
    Decomposition, InteractionTerms, NotDecomposable, ProjectorError, ProjectorFamily,
};
pub use split_functors::{SplitDecomposition, SplitError, SplitFunctor, SplitWitness};
