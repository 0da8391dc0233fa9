use thiserror::Error;

use crate::geometry::Point;

/// Errors shared across the crate. Verdicts ("nonexistent", "inconclusive")
/// are not errors; they are ordinary return values.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("tile does not embed in Z_q^n: {0:?} and {1:?} collide modulo q = {2}")]
    TileOverlapModQ(Point, Point, i64),

    #[error("group order {group} does not match tile size {tile}")]
    GroupOrderMismatch { group: u64, tile: u64 },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
