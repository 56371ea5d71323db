use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at {locus}: {message}")]
    Parse { locus: String, message: String },
    #[error("{locus}: non-positive weight {value}")]
    NonPositiveWeight { locus: String, value: String },
    #[error("{locus}: bad weight {value}: {reason}")]
    BadWeight {
        locus: String,
        value: String,
        reason: String,
    },
    #[error("dangling id {0}")]
    DanglingId(String),
    #[error("duplicate id {0}")]
    DuplicateId(String),
    #[error("unsupported format {0:?}")]
    UnsupportedFormat(String),
    #[error("complex has no cells")]
    EmptyComplex,
    #[error("disconnected dual graph: cell {0} unreachable")]
    Disconnected(String),
    #[error("unknown face id {0}")]
    UnknownFace(String),
    #[error("unknown cell id {0}")]
    UnknownCell(String),
    #[error("unknown surface {0}")]
    UnknownSurface(String),
    #[error("reserved id {0} (SOURCE and SINK are terminal names)")]
    ReservedId(String),

    #[error("cut surface is empty")]
    EmptyCutSurface,
    #[error("cut surface is separating: cell {0} unreachable in the complement")]
    SeparatingCut(String),
    #[error("non-coherent side assignment: cut face {0} is one-sided")]
    OneSidedCutFace(String),
    #[error("terminals not separated: {0}")]
    TerminalsNotSeparated(String),
    #[error("barrier region must be a proper nonempty subset of the cells")]
    BarrierNotProper,

    #[error("cell cap exceeded: {cells} cells > cap {cap}; use local search or raise the cap")]
    CapExceeded { cells: usize, cap: usize },
    #[error("homology class of the surface is trivial; class operations are refused")]
    TrivialClass,
    #[error("profile has fewer than {0} points")]
    ProfileTooSmall(usize),
    #[error("profile endpoints differ; not a closed-class profile")]
    NotClassProfile,
    #[error("parameter {0} outside the swept domain")]
    OutOfDomain(String),
    #[error("volume {0} is not achieved by the profile")]
    VolumeNotAchieved(String),
    #[error("invalid generator parameters: {0}")]
    InvalidGenParams(String),
    #[error("sweep range is empty: {0}")]
    EmptySweepRange(String),
}

pub type Result<T> = std::result::Result<T, Error>;
