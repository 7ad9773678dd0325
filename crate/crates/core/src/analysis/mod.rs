//! Structural analysis of blocking sets: sublines and subplanes, plane censuses,
//! the bound suite and the linearity certifier.

pub mod bounds;
pub mod certify;
pub mod planes;
pub mod subline;
pub mod suite;

use thiserror::Error;

use crate::field::FieldError;
use crate::geometry::GeometryError;
use crate::reduction::ReductionError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("the points are not collinear")]
    NotCollinear,
    #[error("the points do not span a plane")]
    NotPlanar,
    #[error("expected {expected} points, got {got}")]
    WrongSize { expected: usize, got: usize },
    #[error("unknown lemma id {0:?}")]
    UnknownLemma(String),
    #[error("missing parameters: {0}")]
    MissingParameters(&'static str),
    #[error("the line does not meet the set in q0+1 points")]
    NotASecant,
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error("the set is not a small minimal blocking set")]
    NotSmallMinimal,
    #[error("no (q0+1)-secant to anchor on")]
    NoSecant,
    #[error("exponent {e} does not divide t = {t}")]
    NonIntegralDegree { e: u32, t: u32 },
}
