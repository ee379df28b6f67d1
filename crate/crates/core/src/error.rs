use thiserror::Error;

use crate::scalar::FieldSpec;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: FieldSpec, right: FieldSpec },

    #[error("division by zero")]
    DivisionByZero,

    #[error("GF(2) is not supported: characteristic 2 is excluded (the unit and alternativity arguments divide by 2)")]
    CharacteristicTwo,

    #[error("invalid field modulus {0}: expected an odd prime below 2^32")]
    InvalidModulus(u64),

    #[error("unknown field spec {0:?}: expected `Q` or `GF(p)`")]
    UnknownField(String),

    #[error("invalid scalar literal {literal:?} for {field}")]
    InvalidScalar { literal: String, field: FieldSpec },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("probe set must be non-empty")]
    EmptyProbeSet,

    #[error("element is not a probe of the table")]
    MissingProbe,

    #[error("map {index} is not a derivation")]
    NotADerivation { index: usize },

    #[error("maps are linearly dependent: span has dimension {span} but {count} maps were given")]
    DependentMaps { span: usize, count: usize },

    #[error("commutator of basis maps {left} and {right} leaves the span")]
    ClosureViolation { left: usize, right: usize },
}
