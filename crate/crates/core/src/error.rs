use thiserror::Error;

/// Failures shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("cone is not full-dimensional (rank {rank} < {dim})")]
    NotFullDimensional { rank: usize, dim: usize },
    #[error("cone is not pointed")]
    NotPointed,
    #[error("search space exceeded: n = {n} is above the exhaustive limit {limit}")]
    SearchSpaceExceeded { n: usize, limit: usize },
    #[error("rank function is not nondecreasing: rho({smaller:#b}) > rho({larger:#b})")]
    NotMonotone { smaller: u64, larger: u64 },
    #[error("rank function is not submodular on ({first:#b}, {second:#b})")]
    NotSubmodular { first: u64, second: u64 },
    #[error("inconclusive: search stopped at degree cutoff {cutoff}")]
    Inconclusive { cutoff: u32 },
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
