use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TropError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("unknown label x{0}")]
    UnknownLabel(usize),

    #[error("invalid network: {0}")]
    InvalidNetwork(String),

    #[error("variable x{0} is not eliminable")]
    NotEliminable(usize),

    #[error("invalid elimination plan: {0}")]
    InvalidPlan(String),

    #[error(
        "step {step} (eliminating x{var}) would build a tensor with {legs:.1} binary-equivalent legs, cap is {cap}"
    )]
    RankCap {
        step: usize,
        var: usize,
        legs: f64,
        cap: f64,
    },

    #[error("witness tables were not recorded for this contraction")]
    MissingWitness,

    #[error("no admissible cycle")]
    NoCycle,

    #[error("eigenvector verification failed: {0}")]
    Eigen(String),

    #[error("invalid spec: {0}")]
    InvalidSpec(String),

    #[error("brute-force enumeration of {size} assignments exceeds the cap of {cap}")]
    OracleCap { size: f64, cap: u64 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, TropError>;
