use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("configuration needs at least 2 centers, got {0}")]
    TooFewCenters(usize),

    #[error("centers {first} and {second} coincide (distance {distance:e})")]
    CoincidentCenters {
        first: usize,
        second: usize,
        distance: f64,
    },

    #[error("center {0} has a non-finite coordinate")]
    NonFiniteCoordinate(usize),

    #[error("strength {0} is not finite")]
    NonFiniteStrength(usize),

    #[error("scale factor must be positive, got {0}")]
    NonpositiveScale(f64),

    #[error("could not place {n} centers with minimum gap {min_gap} after {attempts} attempts")]
    SamplingExhausted {
        n: usize,
        min_gap: f64,
        attempts: usize,
    },

    #[error("size mismatch: expected {expected}, got {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("invalid permutation image {0:?}")]
    InvalidPermutation(Vec<usize>),

    #[error("N = {n} exceeds the enumeration cap {cap}")]
    TooLarge { n: usize, cap: usize },

    #[error("contour at radius {radius} passes through a zero")]
    ContourThroughZero { radius: f64 },

    #[error("quadrature did not converge at radius {radius} (residual {residual:e}, {points} points)")]
    QuadratureDivergence {
        radius: f64,
        residual: f64,
        points: usize,
    },

    #[error("need at least 3 points for a slope fit, got {0}")]
    TooFewPoints(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
