use thiserror::Error;

/// Errors raised by the rosette library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum RosetteError {
    #[error("argument {value} outside the domain: {reason}")]
    Domain { value: f64, reason: &'static str },

    #[error("series did not reach tolerance {abs_tol:e} within {max_terms} terms (last tail bound {tail_bound:e})")]
    NoConvergence {
        abs_tol: f64,
        max_terms: usize,
        tail_bound: f64,
    },

    #[error("derivative undefined: z is within {tol:e} of a 2n-th root of unity")]
    SingularPoint { tol: f64 },

    #[error("boundary parameter t = {t} is a multiple of pi/n where the derivative is undefined")]
    SingularParameter { t: f64 },

    #[error("beta = {beta} is not canonical; reduce it into (-pi/2, pi/2] first")]
    NonCanonicalBeta { beta: f64 },

    #[error("operation requires beta = pi/2, got {beta}")]
    WrongBeta { beta: f64 },

    #[error("interval [{t0}, {t1}] crosses a cusp or leaves the active half of a petal")]
    IntervalCrossesCusp { t0: f64, t1: f64 },

    #[error("point lies within {distance:e} of the curve (exclusion radius {radius:e})")]
    TooCloseToCurve { distance: f64, radius: f64 },

    #[error("curve is not closed: endpoint gap {gap:e}")]
    OpenCurve { gap: f64 },

    #[error(
        "adaptive quadrature failed: error estimate {estimate:e} after {intervals} subintervals"
    )]
    QuadratureFailure { estimate: f64, intervals: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, RosetteError>;
