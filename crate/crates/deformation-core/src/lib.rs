//! Liftings of residual representations to finite local coefficient rings.
//!
//! A lifting problem pairs a finitely presented group with generator images
//! over a finite field; test rings are enumerable Artinian local rings.  The
//! crate enumerates all liftings by pruned search, partitions them into
//! conjugation orbits under the kernel of reduction, computes the
//! tangent-space dimensions from a linearization of the relators, and
//! decides kernel-conjugacy of two liftings from their traces.

pub mod artinian;
pub mod error;
pub mod problem;
pub mod tangent;

pub use artinian::ArtinianTestRing;
pub use error::{DeformationError, Result};
pub use problem::{
    carayol_conjugator, deformation_classes, endomorphism_dim, enumerate_liftings,
    verify_lifting, CarayolOutcome, Lifting, LiftingProblem, DEFAULT_ENUM_BUDGET,
    DEFAULT_PAIR_CAP,
};
pub use tangent::{tangent_report, TangentReport};
