use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("shape has no vertices or an empty interior")]
    Empty,
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("polygon is not strictly convex at vertex {index}")]
    NotConvex { index: usize },
    #[error("ellipse parameters are invalid: {0}")]
    InvalidEllipse(&'static str),
    #[error("shapes overlap (penetration depth {penetration:e})")]
    Overlap { penetration: f64 },
    #[error("point is not on the shape boundary (off by {0:e})")]
    NotOnBoundary(f64),
    #[error("point lies inside the shape")]
    Inside,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SceneError {
    #[error("epsilon must lie in (0, 1), got {0}")]
    Epsilon(f64),
    #[error("region {index}: {source}")]
    Region { index: usize, source: GeomError },
    #[error("regions {0} and {1} overlap")]
    Overlap(usize, usize),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EngineError {
    #[error(transparent)]
    Scene(#[from] SceneError),
    #[error("query point ({x}, {y}) lies inside obstacle {region}")]
    InsideObstacle { x: f64, y: f64, region: usize },
    #[error("no path between the query points")]
    NoPath,
    #[error("query point is not finite")]
    NonFinite,
    #[error("internal error: {0}")]
    Internal(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TrapError {
    #[error("point lies inside region {0}")]
    InsideRegion(usize),
    #[error("segment walk left the map (overlapping or degenerate input)")]
    Walk,
}
