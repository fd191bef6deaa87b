//! Equational-constraint CAD projection: pivot selection, level projection,
//! the iterated and multivariate-resultant pivot strategies, genuine and
//! spurious factor splitting, Bézout filtering and degree prediction.

pub mod basis;
pub mod pipeline;
pub mod predict;
pub mod split;

pub use basis::squarefree_basis;
pub use pipeline::{
    ec_project_level, full_project_level, run_pipeline, select_pivot, BasisFactor, PivotKind,
    ProjFactor, ProjectionInput, ProjectionLevel, ProjectionTrace, Provenance, ProvenanceKind,
    Strategy,
};
pub use predict::{predict_degrees, LevelPrediction, Prediction, SymDegree};
pub use split::{
    bezout_filter, bezout_filter_with_bound, classify_split, split_genuine_spurious, BezoutBound,
    Evidence, FactorClassification, Split, Tag,
};

use thiserror::Error;

use crate::elim::ElimError;
use crate::poly::PolyError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProjError {
    #[error(transparent)]
    Elim(#[from] ElimError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("pivot has degree 0 in `{0}`")]
    PivotDegree(String),
    #[error("no pivot candidates")]
    EmptyCandidates,
    #[error("multivariate resultant does not divide the iterated resultant")]
    NotDivisible,
    #[error("{0}")]
    Invalid(String),
}
