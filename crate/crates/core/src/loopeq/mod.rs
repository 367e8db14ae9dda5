//! Loop equations of the one-dimensional generalized Frobenius manifold with
//! potential `v^4/12` and of the `(-1/2, 1, 1)` fractional Volterra
//! hierarchy, solved genus by genus in the jets of `v`.

mod checks;
pub mod fixtures;
mod models;
mod ring;
mod solver;

use thiserror::Error;

use crate::epsops::EpsError;
use crate::hierarchy::HierarchyError;
use crate::jetring::JetError;

pub use checks::{
    compare_f_h, genus1_canonical_check, matches_reference, quasimiura_field, quasimiura_verify,
    verify_linearization_identities,
};
pub use models::{Kernels, LoopModel};
pub use ring::{Basis, LambdaRingElem};
pub use solver::{build_residual, compatibility_check, integrate_genus, solve_genus, solve_through, GenusSolution};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LoopError {
    #[error(transparent)]
    Jet(#[from] JetError),
    #[error(transparent)]
    Eps(#[from] EpsError),
    #[error(transparent)]
    Hierarchy(#[from] HierarchyError),
    #[error("genus {genus}: inconsistent system ({detail})")]
    InconsistentSystem { genus: u32, detail: String },
    #[error("genus {genus}: gradient {s} leaves the Laurent ring ({detail})")]
    RingEscape { genus: u32, s: usize, detail: String },
    #[error("gradients {r} and {s} are not compatible: difference {difference}")]
    CompatibilityFailure { r: usize, s: usize, difference: String },
    #[error("{check}: mismatch, difference {difference}")]
    Mismatch { check: String, difference: String },
    #[error("genus {0} has not been solved")]
    MissingGenus(u32),
    #[error("genus {0} has no free energy yet")]
    NotIntegrated(u32),
    #[error("unknown loop model `{0}`")]
    UnknownModel(String),
    #[error("malformed solution record: {0}")]
    Json(String),
}

#[cfg(test)]
mod tests;
