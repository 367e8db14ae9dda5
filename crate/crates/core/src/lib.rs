//! Exact symbolic engine for the extended q-deformed KdV hierarchy, the
//! fractional Volterra hierarchy and the loop equation of the one-dimensional
//! generalized Frobenius manifold with potential `v^4/12`.

pub mod combinatorics;
pub mod epsops;
pub mod hierarchy;
pub mod invariants;
pub mod jetring;
pub mod lattice;
pub mod loopeq;
pub mod report;
pub mod verify;
