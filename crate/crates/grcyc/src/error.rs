use thiserror::Error;

/// Errors shared across the library. Numerical failure modes are distinct
/// variants so callers can react to them (e.g. `ZeroCoordinate` from the
/// torus test must not be read as "not equivalent").
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix has rank below {k}: every {k}x{k} minor is numerically zero")]
    RankDeficient { k: usize },

    #[error("shape mismatch: ({k1},{n1}) vs ({k2},{n2})")]
    ShapeMismatch {
        k1: usize,
        n1: usize,
        k2: usize,
        n2: usize,
    },

    #[error("coordinate {subset} has modulus below threshold; torus comparison undefined")]
    ZeroCoordinate { subset: String },

    #[error("linear map is numerically singular")]
    SingularMap,

    #[error("parameter must be nonzero")]
    ZeroParameter,

    #[error("parameter must be a positive real")]
    NonPositiveParameter,

    #[error("|arg z| = {arg} exceeds the admissible bound {bound}")]
    ArgumentOutOfRange { arg: f64, bound: f64 },

    #[error("no global phase makes all coordinates real (max residual imaginary part {residual})")]
    NotRealizable { residual: f64 },

    #[error("invalid roots: {reason}")]
    InvalidRoots { reason: String },

    #[error("evaluation points are too close together (min pairwise distance {dist})")]
    CoincidentPoints { dist: f64 },

    #[error("denominator Plucker coordinate {subset} vanishes")]
    ZeroDenominator { subset: String },

    #[error("point lies outside the open positroid cell: cyclic minor {subset} vanishes")]
    OutsidePiCircle { subset: String },

    #[error("torus chart undefined: Plucker coordinate {subset} vanishes")]
    ChartUndefined { subset: String },

    #[error("invalid tableau: {reason}")]
    InvalidTableau { reason: String },

    #[error("degenerate toggle at ({r},{s}): a neighbour sum vanishes")]
    DegenerateToggle { r: usize, s: usize },

    #[error("input must be nonzero")]
    ZeroInput,

    #[error("invalid configuration: {reason}")]
    InvalidConfig { reason: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
