//! Lower algebraic K-theory of the hyperbolic 3-simplex reflection groups.
//!
//! This crate computes the Whitehead group, reduced projective class group,
//! and negative K-groups of the 32 hyperbolic tetrahedral Coxeter groups
//! from their diagrams: it classifies the finite and Euclidean special
//! subgroups, enumerates the infinite cell stabilizers along axes in the
//! simplex, runs the equivariant spectral-sequence assembly over an exact
//! integer kernel, and cross-checks every computable rank against
//! brute-force counting oracles on concrete permutation groups.

pub mod assembly;
pub mod catalog;
pub mod complex;
pub mod coxeter;
pub mod groups;
pub mod kvalue;
pub mod smith;
pub mod stabilizers;

pub use coxeter::{parse_diagram, CoxeterDiagram, CoxeterMatrix, DiagramError};
pub use groups::FiniteGroupType;
pub use kvalue::KValue;

/// The scalar type used for Gram-matrix signature checks.
pub type GramScalar = f64;

/// The exact integer matrix type used by the homology kernel.
pub type IntegerMatrix = smith::Mat<num_bigint::BigInt>;
