//! Finitely presented congruence-free monoids containing a given finite
//! semigroup.
//!
//! Starting from a Cayley table, [`presentation::Presentation`] generates a
//! finite complete rewriting system over the letters `s_i`, `x_i`, `y_i` and a
//! zero. The remaining modules check the pieces: the coloring conditions,
//! critical pairs, and executable collapse witnesses showing that any
//! identification of two distinct elements forces `1 = 0`.

pub mod cli;
pub mod coloring;
pub mod presentation;
pub mod rewrite;
pub mod semigroup;
pub mod witness;

pub use coloring::{coloring_entry, Coloring, ConditionReport};
pub use presentation::{Family, Letter, Presentation, Rule, Word};
pub use rewrite::{check_local_confluence, critical_pairs, Rewriter};
pub use semigroup::CayleyTable;
pub use witness::{collapse, decompose, unit_context, verify_trace, WitnessTrace};
