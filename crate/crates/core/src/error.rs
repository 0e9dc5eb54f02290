use thiserror::Error;

/// Every failure the toolkit can report.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("degenerate frame: third singular value {sigma3:e} is below the rank threshold {threshold:e}")]
    DegenerateFrame { sigma3: f64, threshold: f64 },

    #[error("ill-conditioned cell classification: {0}")]
    IllConditioned(String),

    #[error("intersection is not transverse: |det| = {det:e} below {tol:e}")]
    TransversalityFailure { det: f64, tol: f64 },

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    #[error("finite-difference stencil leaves the ball: |p - base| = {distance}, reach = {reach}, radius = {radius}")]
    StencilOutOfDomain { distance: f64, reach: f64, radius: f64 },

    #[error("inconsistent limit data: {0}")]
    InconsistentLimit(String),

    #[error("N = {n} exceeds the configured cap {cap} (set GRASSMANN_MU_CAP to raise it)")]
    ResourceLimit { n: usize, cap: usize },

    #[error("parse error at `{path}`: {message}")]
    Parse { path: String, message: String },

    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            message: message.into(),
        }
    }
}
