//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error: {message}")]
pub struct ParseError {
    pub message: String,
}

impl ParseError {
    pub fn new(message: impl Into<String>) -> ParseError {
        ParseError { message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("arrays have different lengths")]
    LengthMismatch,
    #[error("{0} is not a permutation")]
    NotPermutation(&'static str),
    #[error("tau is not a fixed-point-free involution")]
    TauNotFixedPointFreeInvolution,
    #[error("positive set is not a section of the tau-orbits")]
    ThetaNotSection,
    #[error("a sigma-infinity orbit mixes orientations")]
    OrientationMixedWithinOrbit,
    #[error("prediagram is not minimal")]
    NotMinimal,
    #[error("prediagram is not stable")]
    NotStable,
    #[error("prediagram is not alternating")]
    NotAlternating,
    #[error("unequal numbers of positive ({0}) and negative ({1}) cylinder components")]
    UnequalComponentCounts(usize, usize),
    #[error("invalid pairing: {0}")]
    InvalidPairing(String),
    #[error("invalid metric: {0}")]
    InvalidMetric(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("unsupported profile: {0}")]
    UnsupportedProfile(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("cylinder {0} has non-positive height")]
    NonPositiveHeight(usize),
    #[error("length mismatch: {0}")]
    LengthMismatch(String),
    #[error("singularity {0} has cone angle 2pi (marked point)")]
    ZeroOrderSingularity(usize),
    #[error("singularity {0} has odd order")]
    OddOrderSingularity(usize),
    #[error("surface has more than two singularities")]
    MoreThanTwoSingularities,
    #[error("surface does not have exactly two singularities")]
    NotTwoSingularities,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix determinant is not positive")]
    NonPositiveDeterminant,
    #[error("cylinder {0} collapses before the requested time")]
    HeightCollapse(usize),
    #[error("separatrix tracing exceeded the step cap")]
    StepCapExceeded,
    #[error("direction is zero or outside the working field")]
    NonFieldDirection,
    #[error("mixed discriminants {0} and {1}")]
    MixedDiscriminants(u64, u64),
    #[error("singularities collide during deformation")]
    Collision,
    #[error("invalid surface: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstraintError {
    #[error("mixed discriminants {0} and {1}")]
    MixedDiscriminants(u64, u64),
    #[error("value {0} is zero")]
    ZeroValue(usize),
    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),
    #[error("scenario assertion failed at step {step}: {message}")]
    ScenarioAssertionFailed { step: usize, message: String },
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}
