use thiserror::Error;

use crate::config::ConfigError;
use crate::sequence::SequenceError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Config(#[from] ConfigError),

    #[error(transparent)]
    Sequence(#[from] SequenceError),

    #[error("sequence is only materialized up to {limit}, but order {order} was requested")]
    InsufficientMaterialization { limit: u64, order: usize },

    #[error("input series has order {have}, at least {need} is required")]
    InsufficientOrder { have: usize, need: usize },

    #[error("evaluation point {0} is outside [0, 1)")]
    EvaluationPoint(f64),

    #[error("difference order {order} exceeds table order {table_order}")]
    DifferenceOrder { order: usize, table_order: usize },

    #[error(
        "window [{window_start}, {order}] has {usable} points, at least {needed} are required"
    )]
    WindowTooShort {
        window_start: usize,
        order: usize,
        usable: usize,
        needed: usize,
    },

    #[error("configuration degree is {degree}, this check requires degree >= {required}")]
    DegreeTooSmall { degree: u64, required: u64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("polynomial declares degree {0} but its leading coefficient is zero")]
    DegreeOverstated(usize),

    #[error("the zero polynomial has no rational tail form")]
    ZeroPolynomial,

    #[error("constant c must be positive, got {0}")]
    NonPositiveConstant(String),

    #[error("table order {order} is below the minimum of {minimum}")]
    TableTooShort { order: usize, minimum: usize },

    #[error("table is identically zero")]
    DegenerateTable,

    #[error("epsilon {0} is outside (0, 1/4)")]
    Epsilon(f64),

    #[error("partial-sum series has {len} terms, at least {minimum} are required")]
    PartialSumsTooShort { len: usize, minimum: usize },

    #[error("kernel length M must be at least 1")]
    KernelLength,

    #[error("r^2 = {0} is outside (0, 1)")]
    Radius(f64),

    #[error("order {order} leaves a tail r^(2N) = {tail:e}; at least {required} is needed for r^(2N) < 1e-12")]
    TailNotNegligible {
        order: usize,
        required: usize,
        tail: f64,
    },
}
