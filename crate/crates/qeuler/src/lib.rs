//! Generalized q-Euler numbers and their arithmetic properties.
//!
//! The generalized Euler number `E_{n|k}` counts the permutations of
//! `{1..n}` whose descent set is exactly the multiples of `k` below `n`;
//! its q-analog `E_{n|k}(q)` refines the count by the inversion statistic.
//! This crate computes these polynomials exactly and mechanically checks
//! the divisibility facts they satisfy:
//!
//! - [`polyarith`]: dense polynomials in `q` with [`BigInt`] coefficients,
//!   including exact division and the q-integers `[k]_{q^i}`
//! - [`qcombinat`]: q-factorials, Gaussian binomial coefficients, and a
//!   binary-word enumeration oracle
//! - [`euler`]: the `E_{n|k}(q)` recursion with memoization, permutation
//!   statistics, and a brute-force permutation oracle
//! - [`divisibility`]: verifiers that establish each divisibility claim by
//!   exact polynomial or integer division, reporting quotient witnesses
//! - [`cache`]: a versioned text format for persisting computed polynomials
//!
//! Everything is exact: no floating point, no rounding, no modular shortcuts.

pub mod cache;
pub mod divisibility;
mod error;
pub mod euler;
pub mod polyarith;
pub mod qcombinat;

pub use error::{BudgetExceeded, InvalidPermutation, OracleError, PeriodError};
pub use num_bigint::BigInt;
pub use polyarith::QPolynomial;
