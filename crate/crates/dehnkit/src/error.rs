use thiserror::Error;

/// Errors produced while parsing PD text or assembling a diagram.
#[derive(Debug, Error)]
pub enum PdError {
    #[error("empty input: no crossings or unknot components")]
    EmptyInput,
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("crossing {index} needs 4 slots, got {got}")]
    BadArity { index: usize, got: usize },
    #[error("edge label {label} appears {count} times (must be exactly 2)")]
    EdgeMultiplicity { label: i64, count: usize },
    #[error("orientation inconsistency at crossing {crossing}")]
    Orientation { crossing: usize },
    #[error("rotation system is not planar: piece {piece} has {faces} faces, expected {expected}")]
    NotPlanar { piece: usize, faces: usize, expected: usize },
    #[error("nesting directive IN({piece},{face}) is invalid: {msg}")]
    BadNesting { piece: usize, face: usize, msg: String },
    #[error("face {face} does not exist (diagram has {count} faces)")]
    NoSuchFace { face: usize, count: usize },
}

/// Errors from the algebraic pipeline on a valid diagram.
#[derive(Debug, Error)]
pub enum ComputeError {
    #[error("diagram is not special: shaded region {region} has inconsistent boundary orientation")]
    NotSpecial { region: usize },
    #[error("diagram is split; {0}")]
    Split(String),
    #[error("abelianization is inconsistent across edge {edge} (corrupted diagram)")]
    AlphaInconsistent { edge: i64 },
    #[error("generator {0} has no image under the requested specialization")]
    MissingImage(String),
    #[error("wirtinger presentation needs every component to cross; component {0} has no crossings")]
    NoCrossings(usize),
    #[error("return value of region {region} does not contain exactly one S-letter")]
    BadReturnValue { region: usize },
    #[error("internal check failed: {0}")]
    CheckFailed(String),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Pd(#[from] PdError),
    #[error(transparent)]
    Compute(#[from] ComputeError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
