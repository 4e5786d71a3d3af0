//! Error types shared across the crate.

use thiserror::Error;

/// Errors raised by the geometry kernels and the operators built on them.
#[derive(Debug, Clone, Error)]
pub enum GeometryError {
    /// A tangent or cotangent vector was used at a point other than its base.
    #[error("base point mismatch in {op}")]
    BaseMismatch { op: &'static str },

    /// Coordinates do not describe a point of the manifold.
    #[error("not a point of {manifold}: {reason}")]
    NotOnManifold { manifold: String, reason: String },

    /// The logarithm (or a transport along the connecting geodesic) is not
    /// defined for an antipodal pair on the sphere.
    #[error("antipodal pair on the 2-sphere: log/transport undefined")]
    AntipodalPair,

    /// A symmetric matrix fell below the positive-definiteness floor.
    /// Clamping is never applied; the caller must decide.
    #[error("eigenvalue {value:.3e} below SPD floor {floor:.1e}")]
    EigenvalueFloor { value: f64, floor: f64 },

    /// Grid or field shapes do not agree.
    #[error("shape mismatch in {op}: {expected} vs {got}")]
    ShapeMismatch {
        op: &'static str,
        expected: String,
        got: String,
    },

    /// Coordinate vector of unexpected length.
    #[error("dimension mismatch in {op}: expected {expected}, got {got}")]
    DimensionMismatch {
        op: &'static str,
        expected: usize,
        got: usize,
    },
}

/// Errors raised by the solvers.
#[derive(Debug, Error)]
pub enum SolverError {
    /// The step-size product violates the admissibility condition
    /// sigma * tau * L^2 < 1 and no override was requested.
    #[error("step sizes rejected: sigma*tau*L^2 = {product:.6} >= 1 (L = {l:.6})")]
    StepSizeCondition { product: f64, l: f64 },

    /// The requested variant does not support the given configuration.
    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    /// A geometry operation failed during iteration `iter`.
    #[error("geometry failure at iteration {iter}: {source}")]
    Geometry {
        iter: usize,
        #[source]
        source: GeometryError,
    },

    /// Invalid solver configuration.
    #[error("invalid configuration: {0}")]
    Config(String),
}

impl From<GeometryError> for SolverError {
    fn from(source: GeometryError) -> Self {
        SolverError::Geometry { iter: 0, source }
    }
}
