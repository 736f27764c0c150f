//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("pencil (E, A) is singular (no lambda with det(A - lambda E) != 0)")]
    SingularPencil,
    #[error("transfer evaluation point s = {0} is (numerically) a pole")]
    SingularAtPoint(num_complex::Complex<f64>),
    #[error("E matrix is singular where an invertible E is required")]
    SingularE,
    #[error("integration step dt = {dt} too large for spectral radius {rho} (suggest dt <= {suggested})")]
    StepTooLarge { dt: f64, rho: f64, suggested: f64 },
    #[error("feedback interconnection is ill-posed")]
    IllPosedLoop,
    #[error("operation requires a stable system")]
    UnstableSystem,
    #[error("operation requires a strictly proper system (no feed-through)")]
    NotStrictlyProper,
    #[error("input traces have mismatched lengths or sample times")]
    LengthMismatch,
    #[error("no data points survived the selection: {0}")]
    EmptyResult(String),
    #[error("left node mu = {0} collides with a right node")]
    NodeCollision(num_complex::Complex<f64>),
    #[error("requested order {requested} exceeds available dimension {available}")]
    OrderTooLarge { requested: usize, available: usize },
    #[error("no stable modes exist; nothing to keep")]
    NothingStable,
    #[error("reduction input must be stable")]
    UnstableInput,
    #[error("no convergence after {0} iterations")]
    NoConvergence(usize),
    #[error("2/Ts is an eigenvalue of the pencil; Tustin transform undefined")]
    SingularAtTustinPole,
    #[error("every optimizer start failed to stabilize the loop")]
    NoStabilizingController,
    #[error("missing upstream artifact: {0}")]
    MissingArtifact(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// CLI exit-code taxonomy: 2 for domain/usage errors, 3 for convergence
    /// failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NoConvergence(_) | Error::NoStabilizingController => 3,
            _ => 2,
        }
    }
}
