use thiserror::Error;

/// Errors produced by the surface model, snake-graph construction, expansion
/// and polytope routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid surface: {0}")]
    InvalidSurface(String),

    #[error("invalid arc {arc}: {reason}")]
    InvalidArc { arc: String, reason: String },

    #[error("arc {0} does not belong to this surface")]
    DomainMismatch(String),

    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),

    #[error("tagged triangulation does not correspond to an ideal triangulation; flip its tagging first")]
    NotIdealCorresponding,

    #[error("operation requires a {expected} surface")]
    WrongSurface { expected: &'static str },

    #[error("{0} is not a radius")]
    NotARadius(String),

    #[error("arc {0} belongs to the triangulation and crosses nothing")]
    NoCrossing(String),

    #[error("radius end subgraphs of size {d} do not fit in a {tiles}-tile snake graph")]
    MalformedLoop { d: usize, tiles: usize },

    #[error("snake graph parse error{}: {message}", tile.map(|t| format!(" at tile {t}")).unwrap_or_default())]
    Parse { tile: Option<usize>, message: String },

    #[error("integrity violation: {0}")]
    Integrity(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("polytope needs at least one generator")]
    EmptyGenerators,

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
