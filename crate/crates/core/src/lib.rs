//! Finite models of Weyl groups acting on doubles of boundaries.
//!
//! The crate provides
//!
//! * [`coxeter`]: type-A Weyl groups and elementary abelian 2-groups as
//!   permutation groups, subgroup lattices and pinned homomorphism search;
//! * [`galois`]: the correspondence between subgroups of a group acting on
//!   pairs and quotients of the underlying set, with its closure operators;
//! * [`building`]: complete flags over prime fields, relative position,
//!   opposition, frames and the Weyl action on opposite pairs;
//! * [`morphism`]: equivariance and opposition checks for chamber maps;
//! * [`scenario`]: report-producing drivers used by the command line tool.

pub mod building;
pub mod coxeter;
mod error;
pub mod galois;
pub mod morphism;
pub mod partition;
pub mod scenario;
pub mod subspace;

pub use error::{Error, Result};

/// Seed used by every randomized routine unless the caller supplies one.
pub const DEFAULT_SEED: u64 = 42;
