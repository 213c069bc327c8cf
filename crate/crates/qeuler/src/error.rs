//! Errors shared by the enumeration oracles and the recursion entry points.

use thiserror::Error;

/// An enumeration oracle was asked for more candidates than its budget allows.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("enumeration budget exceeded: {candidates} candidates, limit {limit}")]
pub struct BudgetExceeded {
    /// Number of objects the enumeration would have to visit.
    pub candidates: u128,
    /// The hard budget the oracle enforces.
    pub limit: u64,
}

/// The descent period `k` was below 2.
///
/// For `k = 1` the descent condition degenerates (every position must be a
/// descent, so `E_{n|1}(q) = q^{n(n-1)/2}`); rejecting `k < 2` keeps that
/// untested branch out of the recursion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("descent period k must be at least 2, got {0}")]
pub struct PeriodError(pub u32);

/// A sequence that is not a rearrangement of `1..=n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("not a permutation of 1..={len}: offending value {value}")]
pub struct InvalidPermutation {
    pub len: usize,
    pub value: u32,
}

/// Failure modes of the brute-force permutation oracle.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Period(#[from] PeriodError),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}
