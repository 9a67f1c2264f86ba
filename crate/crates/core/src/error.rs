use num_complex::Complex64;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("root finder did not converge within {iterations} iterations")]
    NonConvergence { iterations: usize },

    #[error("function vanishes on the circle (min modulus {min_modulus:e} <= {tolerance:e})")]
    VanishingOnCircle { min_modulus: f64, tolerance: f64 },

    #[error("grid of {n} samples under-resolves the argument (max step {max_step_angle:.4} rad)")]
    UnderResolved { n: usize, max_step_angle: f64 },

    #[error("dominance premise fails: max|h-q| = {perturbation:e} >= min|f+h| = {min_modulus:e}")]
    PremiseFails { perturbation: f64, min_modulus: f64 },

    #[error("winding {on_grid} on the grid disagrees with {predicted} from the zero count")]
    WindingMismatch { on_grid: i64, predicted: i64 },

    #[error("function vanishes on the contour |z| = {radius}")]
    VanishingOnContour {
        radius: f64,
        suggested_radii: Vec<f64>,
    },

    #[error("evaluation point |z| = {modulus} is closer than {margin} to the unit circle")]
    TooCloseToCircle { modulus: f64, margin: f64 },

    #[error("expected {expected} roots, contour count {contour}, located {located}")]
    RootCountMismatch {
        expected: usize,
        contour: i64,
        located: usize,
    },

    #[error("expected {expected} zeros, contour count {contour}, located {located}")]
    ZeroCountMismatch {
        expected: usize,
        contour: i64,
        located: usize,
    },

    #[error("no singular value gap exceeds {threshold:e} (best split {best_split}, ratio {best_ratio:e})")]
    AmbiguousRank {
        threshold: f64,
        best_split: usize,
        best_ratio: f64,
    },

    #[error("reconstructed pole {pole} lies outside the open unit disk")]
    PoleOutsideDisk { pole: Complex64 },

    #[error("level {a} is outside the disk |a| < 4^-{m}")]
    OutsideHaymanDisk { a: Complex64, m: usize },

    #[error("level {a} is within {margin} of the slit [0, 4^-m]")]
    OnSlit { a: Complex64, margin: f64 },

    #[error("integer coefficient overflow while building coefficient polynomials")]
    CoefficientOverflow,

    #[error("invalid input `{field}`: {message}")]
    InvalidInput { field: String, message: String },
}

impl Error {
    pub(crate) fn invalid(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::InvalidInput {
            field: field.into(),
            message: message.into(),
        }
    }
}
