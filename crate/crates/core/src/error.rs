use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("vector is not unit length (|n| = {norm})")]
    NotUnit { norm: f64 },

    #[error("matrix is not a proper rotation (orthogonality defect {orthogonality:e}, det {det})")]
    NotRotation { orthogonality: f64, det: f64 },

    #[error("basis is not orthonormal (defect {defect:e})")]
    NotOrthonormal { defect: f64 },

    #[error("matrix is not skew-symmetric (defect {defect:e})")]
    NotSkew { defect: f64 },

    #[error("non-finite component")]
    NonFinite,

    #[error("polynomial degree {degree} exceeds the supported maximum {max}")]
    DegreeOverflow { degree: usize, max: usize },

    #[error("gradient of a rank-{rank} field is not supported")]
    UnsupportedOrder { rank: usize },

    #[error("divergence of a rank-0 field is undefined")]
    DivergenceOfScalar,

    #[error("quadrature exact to degree {order} cannot integrate degree {needed}")]
    QuadratureOrder { needed: usize, order: usize },

    #[error("coordinate edge needs two distinct axes, got ({j}, {k})")]
    DegenerateEdge { j: usize, k: usize },

    #[error("axis index {0} out of range")]
    BadAxis(usize),

    #[error("invalid edge frame: {0}")]
    InvalidFrame(String),

    #[error("face {face} is not planar (deviation {deviation:e})")]
    NonPlanarFace { face: usize, deviation: f64 },

    #[error("face {face} is degenerate")]
    DegenerateFace { face: usize },

    #[error("vertex index {index} out of range in face {face}")]
    BadVertexIndex { face: usize, index: usize },

    #[error("edge ({a}, {b}) is shared by {count} faces; expected 2")]
    NonManifoldEdge { a: usize, b: usize, count: usize },

    #[error("edge ({a}, {b}) is traversed twice in the same direction")]
    InconsistentOrientation { a: usize, b: usize },

    #[error("part orientation is inverted (signed volume {volume})")]
    InvertedOrientation { volume: f64 },

    #[error("parameter must be positive, got {0}")]
    NonPositive(f64),

    #[error("rotated edge probe detects a non-spherical hyperstress (|f| = {magnitude:e} on {probe})")]
    NonSpherical { probe: String, magnitude: f64 },

    #[error("shape mismatch: {0}")]
    Shape(String),
}
