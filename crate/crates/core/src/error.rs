use thiserror::Error;

/// Errors surfaced by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("invalid scroll parameters (e={e}, b={b}, k={k}): {reason}")]
    InvalidParams {
        e: i64,
        b: i64,
        k: i64,
        reason: String,
    },

    #[error("symmetric power exponent must be non-negative, got {0}")]
    NegativeSymPower(i64),

    #[error("tower must contain at least one constituent")]
    EmptyTower,

    #[error("constituent {label} is not an Ulrich line bundle for these parameters: {reason}")]
    ConstituentUnavailable { label: String, reason: String },

    #[error("unknown constituent label '{0}' (expected L1, L2, M1 or M2)")]
    UnknownConstituent(String),

    #[error("Euler characteristic evaluated to the non-integer {0}; the intersection relations are inconsistent")]
    NonIntegralChi(String),

    #[error("two independent routes disagree for {what}: {left} vs {right}")]
    OracleMismatch {
        what: String,
        left: String,
        right: String,
    },

    #[error("rank must be positive")]
    ZeroRank,

    #[error("claim registry: {0}")]
    Registry(String),

    #[error("formula '{formula}': {reason}")]
    Formula { formula: String, reason: String },
}

pub type Result<T, E = EngineError> = std::result::Result<T, E>;
