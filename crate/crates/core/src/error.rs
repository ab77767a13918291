use thiserror::Error;

/// Errors raised by the cumulant-polynomial layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("order too large: {order} exceeds the configured cap of {cap}")]
    OrderTooLarge { order: usize, cap: usize },
    #[error("oracle cap exceeded: {order} exceeds the partition-oracle cap of {cap}")]
    OracleCapExceeded { order: usize, cap: usize },
    #[error("derivative index {index} out of range 1..={order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("order must be at least {min}, got {order}")]
    OrderTooSmall { order: usize, min: usize },
    #[error("identity {identity} failed at order {order}")]
    IdentityFailed { identity: &'static str, order: usize },
    #[error("empty sequence")]
    EmptySequence,
    #[error("malformed polynomial: {0}")]
    Malformed(String),
}

/// Errors raised while building, validating or evaluating a process spec.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("cumulant order {0} is undefined (orders start at 2)")]
    CumulantOrder(usize),
    #[error("time must be finite and non-negative, got {0}")]
    NegativeTime(f64),
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    #[error("invalid function `{kind}`: {reason}")]
    InvalidFunction { kind: &'static str, reason: String },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Errors raised by the simulator and the martingale harness.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("decomposition check requires pure-jump spec")]
    NotPureJump,
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}
