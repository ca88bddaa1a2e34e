//! Finite metric spaces and the comparison-geometry toolkit: distance
//! matrix validation, Hausdorff distance, approximation maps and gluing,
//! a searched Gromov-Hausdorff upper bound, model comparison triangles
//! with the discrete curvature check, and seeded samples of closed-form
//! geometries.

mod approx;
mod comparison;
mod sampling;
mod space;

pub use approx::{
    extract_approx_from_embedding, gh_upper_bound, glue_disjoint_union, happrox_of_map,
    ApproximationCert, PointMap,
};
pub use comparison::{
    alexandrov_check, comparison_triangle, curve_length, intrinsic_check,
    model_side_distance, AlexandrovReport, AlexandrovViolation, ComparisonTriangle, Side,
};
pub use sampling::{gh_convergence_experiment, sample_model_space, GhRow};
pub use space::{
    hausdorff_distance, validate_metric, FiniteMetricSpace, MetricViolation,
};

/// Errors for metric-space construction, file IO, and the comparison
/// toolkit.
#[derive(Debug, thiserror::Error)]
pub enum MetricError {
    #[error("empty distance matrix")]
    Empty,
    #[error("matrix is not square: {rows} rows but a row of width {cols}")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix is not a metric ({} violations; first: {})",
        .0.len(),
        .0.first().map(|v| v.to_string()).unwrap_or_default())]
    InvalidMetric(Vec<MetricViolation>),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("point index {index} out of range for {len} points")]
    BadIndex { index: usize, len: usize },
    #[error("unreadable matrix file: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("side lengths ({a}, {b}, {c}) violate the triangle inequality")]
    TriangleInequality { a: f64, b: f64, c: f64 },
    #[error("perimeter {perimeter} reaches the model bound {limit}")]
    PerimeterBound { perimeter: f64, limit: f64 },
    #[error("arclength {s} outside the side of length {len}")]
    ArcOutOfRange { s: f64, len: f64 },
    #[error("family {0} has no closed-form sampler")]
    UnsupportedFamily(String),
}
