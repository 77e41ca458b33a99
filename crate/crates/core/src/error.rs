use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("order {0} is out of range: {1}")]
    Order(i64, &'static str),

    #[error("value {value} is not in the border pool of inner order {n}")]
    NotInPool { value: i64, n: usize },

    #[error("inner order {0} must be odd for this operation")]
    NotOdd(usize),

    #[error("inner order {0} must be even for this operation")]
    NotEven(usize),

    #[error("invalid corner pair ({v}, {w}): {reason}")]
    InvalidCorners { v: i64, w: i64, reason: String },

    /// Corners with equal parity at an even order admit no magic border.
    #[error(
        "no magic border of inner order {n} has upper corners ({v}, {w}): \
         at even orders the corners (reduced to 1..2n+2) must have opposite parity, \
         here {rv} and {rw} do not"
    )]
    Infeasible {
        n: usize,
        v: i64,
        w: i64,
        rv: i64,
        rw: i64,
    },

    #[error("invalid border plan: {0}")]
    InvalidPlan(String),

    #[error("invalid pairing: {0}")]
    InvalidPairing(String),

    #[error("not a permutation of 0..{len}: {detail}")]
    NotPermutation { len: usize, detail: String },

    #[error("invalid extension shift {0}; expected one of 0, 2, 4, 6, 8")]
    InvalidShift(usize),

    #[error("search budget exhausted after {nodes} nodes")]
    BudgetExhausted { nodes: u64 },

    #[error("search completed without a solution for inner order {n}, corners ({v}, {w})")]
    NoSolution { n: usize, v: i64, w: i64 },

    #[error("seed table entry not found: {0}")]
    MissingSeed(String),

    #[error("seed table: {0}")]
    Table(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
