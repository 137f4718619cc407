//! Derivations, inner derivations and `HH¹(A, A) = Der(A)/IDer(A)` with its
//! bracket and p-map.

mod derivation;
mod hh1;
mod smash;

pub use derivation::{bracket, leibniz_violation, p_power, DerSystem, Derivation};
pub use hh1::{
    dense_derivation_space, derivation_space, hh1, hh1_seeded, hh1_with_complement,
    inner_derivations, BracketTable, HH1Presentation, Hh1Report, PmapTable, DEFAULT_SEED,
};
pub use smash::{
    named_inner, named_outer, outer_family, outer_labels, outer_laws_on_generator, smash_hh1,
    verify_complement, ComplementReport, OuterLawReport,
};

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::linalg::LinalgError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HochschildError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("Leibniz rule fails on basis pair ({0}, {1})")]
    LeibnizViolation(usize, usize),
    #[error("derivation and algebra dimensions do not match")]
    DimensionMismatch,
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("well-definedness failure: {0}")]
    WellDefinednessFailure(String),
    #[error("not a complement of IDer: {0}")]
    NotAComplement(String),
    #[error("bracket or p-map depends on representatives: {0}")]
    RepresentativeDependence(String),
    #[error("map is not a derivation")]
    NotADerivation,
}
