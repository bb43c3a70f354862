use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("non-manifold mesh: edge ({0}, {1}) is shared by more than two triangles")]
    Topology(usize, usize),

    #[error("factorization failed: {0}")]
    Factorization(String),

    #[error("linear solve residual {residual:.3e} exceeds tolerance {tolerance:.1e}")]
    Residual { residual: f64, tolerance: f64 },

    #[error("non-finite value in {field} at step {step}")]
    NonFinite { field: &'static str, step: usize },

    #[error("material constants violate {0}")]
    Material(String),

    #[error("coupling condition a1*a2 - gamma^2 > 0 violated (a1 = {a1}, a2 = {a2}, gamma = {gamma})")]
    Coupling { a1: f64, a2: f64, gamma: f64 },

    #[error("point ({0}, {1}) lies inside the excluded ball around the singular corner")]
    ExcludedPoint(f64, f64),

    #[error("config: {0}")]
    Config(String),

    #[error("level n = {level}: {source}")]
    Level {
        level: usize,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
