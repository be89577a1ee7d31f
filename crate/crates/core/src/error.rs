use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero vector has no primitive direction")]
    ZeroVector,
    #[error("coordinate magnitude exceeds supported range")]
    MagnitudeOverflow,
    #[error("degenerate polygon: {0}")]
    DegeneratePolygon(String),
    #[error("unbounded input where a bounded set is required")]
    Unbounded,
    #[error("Gram matrix is not positive definite")]
    DegenerateGram,
    #[error("matrix list is not closed under products and inverses")]
    GroupNotClosed,
    #[error("group element is not a lattice symmetry (integer, det ±1)")]
    NotUnimodular,
    #[error("cone of kind {0} is not supported by this operation")]
    UnsupportedCone(&'static str),
    #[error("no admissible perturbation direction in the fallback sequence")]
    NoGenericDirection,
    #[error("window cap exceeded while {0}; construction assumption violated")]
    WindowCap(String),
    #[error("counts do not interpolate to a polynomial of the expected degree")]
    InconsistentCounts,
    #[error("face value missing from table: {0}")]
    MissingFace(String),
    #[error("invalid job configuration: {0}")]
    BadConfig(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
