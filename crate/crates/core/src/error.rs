use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("singular jacobian at newton iteration {iteration}")]
    SingularJacobian { iteration: usize },

    #[error("newton iteration did not converge after {iterations} iterations (best residual {residual_norm:e})")]
    NoConvergence {
        iterations: usize,
        residual_norm: f64,
        /// Iterate with the smallest residual norm seen.
        best_iterate: Vec<Complex64>,
    },

    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("panel count must be even and at least 2, got {0}")]
    BadPanelCount(usize),

    #[error("invalid newton configuration: {0}")]
    InvalidConfig(&'static str),

    #[error("perturbative shift undefined at U = -4 (vanishing denominator)")]
    DegenerateDenominator,

    #[error("state ({n}, {m}) does not belong to this solve path")]
    WrongSolvePath { n: u32, m: u32 },

    #[error("invalid state label ({n}, {m}): quantum numbers start at 1")]
    InvalidLabel { n: u32, m: u32 },

    #[error("state ({n}, {m}) not found among the CI eigenstates")]
    LabelNotFound { n: u32, m: u32 },

    #[error("CI basis cutoff must be at least 1")]
    EmptyBasis,

    #[error("requested {levels} levels but the basis only has {size} states")]
    TooManyLevels { levels: usize, size: usize },

    #[error("reduced parameters give E + rho^2 < 0")]
    InvalidReduction,

    #[error("energy-constrained reduction failed: {0}")]
    ReductionFailed(&'static str),

    #[error("solution rejected: {0}")]
    SolutionRejected(String),

    #[error("wavefunction has vanishing norm")]
    DegenerateState,

    #[error("triplet wavefunction vanishes identically for n = m")]
    IdenticallyZero,

    #[error("grid resolution must be odd and at least 3, got {0}")]
    BadResolution(usize),

    #[error("point ({x1}, {x2}) must lie at least {margin} from the boundary and the diagonal")]
    PointOutsideRegion { x1: f64, x2: f64, margin: f64 },

    #[error("non-finite input: {0}")]
    NonFinite(&'static str),
}

impl Error {
    /// True for failures of the numerical machinery, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::SingularJacobian { .. }
                | Error::NoConvergence { .. }
                | Error::ReductionFailed(_)
                | Error::SolutionRejected(_)
                | Error::DegenerateState
                | Error::LabelNotFound { .. }
        )
    }
}
