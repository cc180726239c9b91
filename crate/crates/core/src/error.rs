use thiserror::Error;

use crate::surface::{Arc, BoundaryPoint};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("surface needs at least one accumulation point")]
    NoAccumulationPoints,
    #[error("point {0} does not belong to a surface with {1} accumulation point(s)")]
    PointOutOfSurface(BoundaryPoint, usize),
    #[error("points must be pairwise distinct: {0}")]
    RepeatedPoint(BoundaryPoint),
    #[error("degenerate arc {0}-{1}: {2}")]
    InvalidArc(BoundaryPoint, BoundaryPoint, &'static str),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("schema error at {path}: {msg}")]
    Schema { path: String, msg: String },
    #[error("no nonzero extension between {0} and {1}")]
    NoExtension(Arc, Arc),
    #[error("character input must be T[1]-free: {0} is a shifted tilting arc")]
    ShiftedTiltingSummand(Arc),
    #[error("module is not finitely generated: {0}")]
    NotFinitelyGenerated(String),
    #[error("no arc realization for module {0}")]
    NoArcRealization(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal consistency: {0}")]
    Inconsistent(String),
    #[error("tilting spec is not cluster-tilting: {0}")]
    NotClusterTilting(String),
}

pub type Result<T> = std::result::Result<T, Error>;
