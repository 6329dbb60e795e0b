use thiserror::Error;

pub type Result<T> = std::result::Result<T, AueError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AueError {
    /// A configuration or input value is outside its validity domain.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// Eig-diff would divide by a (near-)vanishing characteristic function.
    #[error("characteristic function too small: |alpha| = {alpha:.3e} <= {min:.1e}")]
    AlphaTooSmall { alpha: f64, min: f64 },

    #[error("output error: {0}")]
    Output(String),

    /// An error raised while evaluating one point of a sweep.
    #[error("{axis} = {value}: {source}")]
    AtPoint {
        axis: String,
        value: f64,
        source: Box<AueError>,
    },
}

impl AueError {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        AueError::Config(msg.into())
    }

    /// True for estimator-domain failures (as opposed to bad configuration).
    pub fn is_domain_error(&self) -> bool {
        match self {
            AueError::AlphaTooSmall { .. } => true,
            AueError::AtPoint { source, .. } => source.is_domain_error(),
            AueError::Config(_) | AueError::Output(_) => false,
        }
    }
}
