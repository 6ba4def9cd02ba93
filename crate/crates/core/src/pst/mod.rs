//! Finite (φ, N, Gal(L/K))-modules over L_0 ⊗ E = E^f: validation,
//! semi-stability tests, tensor and Schur constructions, inertia characters
//! and the twist pipelines.

mod character;
pub mod generator;
mod group;
mod module;
mod pipeline;

use thiserror::Error;

use crate::exactfield::AlgebraError;
use crate::schur::SchurError;

pub use character::{
    extend_character, extract_scalars, inertia_scalar_extract, twist_in_place, twist_module, Character, Context,
    ExtendedCharacter,
};
pub use group::{alternating4, cyclic, dicyclic, dihedral, split_product, GaloisShape};
pub use module::{
    is_crystalline, is_semistable, module_schur, module_tensor, PhiNGalModule, RelationFailure, ValidationReport,
    N_COMMUTES, N_NILPOTENT, N_PHI, PHI_COMMUTES, PHI_INVERTIBLE, RHO_COCYCLE, RHO_IDENTITY,
};
pub use pipeline::{monodromy_descend, pipeline_sst_schur, pipeline_sst_tensor, PipelineOutcome, Verdict};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PstError {
    #[error("invalid group data: {0}")]
    InvalidShape(String),
    #[error("inconsistent sizes: {0}")]
    Dimension(String),
    #[error("invalid module: {0}")]
    InvalidModule(RelationFailure),
    #[error("modules have different groups, primes or coefficients")]
    ShapeMismatch,
    #[error("the Schur module is zero")]
    EmptySchur,
    #[error("rank {rank} is below the bound {needed}")]
    RankTooSmall { rank: usize, needed: usize },
    #[error("inertia element {element} acts nontrivially on the context construction")]
    ContextNotSemistable { element: usize },
    #[error("inertia element {element} does not act by a scalar")]
    NotScalar { element: usize },
    #[error("the scalar of inertia element {element} is not Frobenius-invariant")]
    NotInFixedRing { element: usize },
    #[error("character is not invariant under conjugation by omega at {element}")]
    NotConjInvariant { element: usize },
    #[error("not multiplicative at ({g}, {h})")]
    NotACharacter { g: usize, h: usize },
    #[error("eta(omega^f) is not a unit")]
    NotAUnit,
    #[error("the supplied polynomial does not divide x^f - eta(omega^f)")]
    BadFactor,
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Schur(#[from] SchurError),
}

#[cfg(test)]
pub(crate) fn validate_ok<S: crate::exactfield::Ring>(d: &PhiNGalModule<S>) -> bool {
    d.validate().is_valid()
}
