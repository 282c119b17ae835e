use thiserror::Error;

use crate::grading::RODegree;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradingError {
    #[error("torsion of order {0} is not representable; only Z/2 summands occur")]
    UnsupportedTorsion(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("degree {0} lies outside the computed region p >= q")]
    OutOfRegion(RODegree),
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("series order {order} is too small for the coefficient of s^{k} t^{l}")]
    OrderTooSmall { k: u32, l: u32, order: u32 },
}

impl RingError {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        RingError::Parse {
            position,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CalcError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("family {0} has no FI-module presentation")]
    UnsupportedFamily(String),
    #[error(transparent)]
    Ring(#[from] RingError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix {index} is not unitary (defect {defect:.3e})")]
    NotUnitary { index: usize, defect: f64 },
    #[error("matrices {i} and {j} do not commute (commutator norm {norm:.3e})")]
    NotCommuting { i: usize, j: usize, norm: f64 },
    #[error("tuple is not real: {0}")]
    NotReal(String),
    #[error("blocks {i} and {j} are not orthogonal (overlap {overlap:.3e})")]
    NonOrthogonalBlocks { i: usize, j: usize, overlap: f64 },
    #[error("configuration is not closed under conjugation: {0}")]
    NotConjugationClosed(String),
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
}
