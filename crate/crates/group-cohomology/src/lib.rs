//! Finite matrix groups, their modules over finite fields, and group
//! cohomology in degrees 0-2 computed on the normalized inhomogeneous
//! cochain complex, together with restriction, inflation, and cup products.
//!
//! Groups are stored fully enumerated (breadth-first closure from the
//! generators, capped); every representation, character, and cocycle given
//! on generators is extended along the BFS tree and then re-verified on all
//! (element, generator) pairs, which pins it down everywhere.

pub mod cohomology;
pub mod error;
pub mod group;
pub mod module;

pub use cohomology::{
    cochain_dim, cohomology, cup_product, differential_apply, differential_matrix, eval_cochain,
    inflate_class, is_cocycle, kron_product, restrict_class, trace_pairing_ad0, twist_module,
    Cohomology, CohomologyClass, Pairing, DEFAULT_BUDGET_CELLS,
};
pub use error::{CohomologyError, Result};
pub use group::{homomorphism_from_generators, FiniteGroup, DEFAULT_GROUP_CAP};
pub use module::{ad0_basis, ad0_coords, ad_basis, ad_coords, adjoint_module, GModule, GroupCharacter};
