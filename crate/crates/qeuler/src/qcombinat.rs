//! q-integers, q-factorials, and Gaussian binomial coefficients, together
//! with an independent enumeration oracle over binary words.
//!
//! The Gaussian binomial `[n choose k]_q` equals the inversion generating
//! function over all words with `k` zeros and `n-k` ones; the oracle
//! enumerates those words directly and is the ground truth the Pascal-style
//! computation is tested against.

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::BudgetExceeded;
use crate::polyarith::{q_bracket, QPolynomial};

/// Hard cap on the number of words an enumeration oracle may visit.
pub const WORD_BUDGET: u64 = 10_000_000;

/// The q-integer `[n] = 1 + q + ... + q^{n-1}`; `[0]` is the empty sum 0.
pub fn q_int(n: u32) -> QPolynomial {
    if n == 0 {
        QPolynomial::zero()
    } else {
        q_bracket(n, 1)
    }
}

/// The q-factorial `[n]! = [n][n-1]...[1]`, with `[0]! = 1`.
pub fn q_factorial(n: u32) -> QPolynomial {
    let mut acc = QPolynomial::one();
    for j in 1..=n {
        acc = &acc * &q_int(j);
    }
    acc
}

/// The Gaussian binomial coefficient `[n choose k]_q`, zero when `k < 0` or
/// `k > n`.
///
/// Computed by the Pascal-style recursion
/// `[n choose k] = [n-1 choose k-1] + q^k [n-1 choose k]`, which stays in
/// integer polynomials throughout; the quotient-of-factorials form is an
/// identity the tests check, not the implementation.
pub fn gaussian(n: u32, k: i64) -> QPolynomial {
    if k < 0 || k > i64::from(n) {
        return QPolynomial::zero();
    }
    let k = k as usize;
    let mut row = vec![QPolynomial::zero(); k + 1];
    row[0] = QPolynomial::one();
    for r in 1..=n as usize {
        for c in (1..=k.min(r)).rev() {
            let shifted = &QPolynomial::monomial(BigInt::one(), c) * &row[c];
            row[c] = &row[c - 1] + &shifted;
        }
    }
    row.pop().expect("row is nonempty")
}

/// Row `n` of the Gaussian triangle: `[n choose 0]_q ..= [n choose n]_q`.
///
/// One pass produces every entry; the Euler recursion reads several entries
/// of the same row, so this avoids recomputing the triangle per entry.
pub(crate) fn gaussian_row(n: u32) -> Vec<QPolynomial> {
    let n = n as usize;
    let mut row = vec![QPolynomial::zero(); n + 1];
    row[0] = QPolynomial::one();
    for r in 1..=n {
        row[r] = QPolynomial::one();
        for c in (1..r).rev() {
            let shifted = &QPolynomial::monomial(BigInt::one(), c) * &row[c];
            row[c] = &row[c - 1] + &shifted;
        }
    }
    row
}

/// A word of `k` zeros and `n-k` ones, the objects the Gaussian binomial
/// enumerates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryWord {
    /// `false` is a zero, `true` is a one.
    bits: Vec<bool>,
}

impl BinaryWord {
    pub fn new(bits: Vec<bool>) -> Self {
        BinaryWord { bits }
    }

    /// The word of length `n` whose zeros sit exactly at the given positions
    /// (which must be strictly increasing and below `n`).
    pub fn from_zero_positions(n: u32, zeros: &[u32]) -> Self {
        debug_assert!(zeros.windows(2).all(|w| w[0] < w[1]));
        let mut bits = vec![true; n as usize];
        for &p in zeros {
            bits[p as usize] = false;
        }
        BinaryWord { bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn zero_count(&self) -> usize {
        self.bits.iter().filter(|&&b| !b).count()
    }

    /// Number of out-of-order pairs: positions `i < j` with a one at `i` and
    /// a zero at `j`.
    pub fn inversions(&self) -> u64 {
        let mut ones_seen = 0u64;
        let mut inv = 0u64;
        for &b in &self.bits {
            if b {
                ones_seen += 1;
            } else {
                inv += ones_seen;
            }
        }
        inv
    }
}

/// Enumeration oracle for the Gaussian binomial: sums `q^inv` over every
/// binary word with `k` zeros and `n-k` ones.
///
/// Refuses to enumerate more than [`WORD_BUDGET`] words.
pub fn gaussian_oracle(n: u32, k: u32) -> Result<QPolynomial, BudgetExceeded> {
    let words = binomial_int(n, k);
    if words > BigInt::from(WORD_BUDGET) {
        return Err(BudgetExceeded {
            candidates: u128::try_from(words.clone()).unwrap_or(u128::MAX),
            limit: WORD_BUDGET,
        });
    }
    // max inversions: every one before every zero
    let max_inv = (k * n.saturating_sub(k)) as usize;
    let mut counts = vec![0u64; max_inv + 1];
    for zeros in (0..n).combinations(k as usize) {
        let word = BinaryWord::from_zero_positions(n, &zeros);
        counts[word.inversions() as usize] += 1;
    }
    Ok(QPolynomial::from_coeffs(
        counts.into_iter().map(BigInt::from).collect(),
    ))
}

/// The ordinary binomial coefficient `C(n, j)`, exactly; zero when `j > n`.
pub fn binomial_int(n: u32, j: u32) -> BigInt {
    if j > n {
        return BigInt::zero();
    }
    let j = j.min(n - j);
    let mut acc = BigInt::one();
    for t in 1..=j {
        acc = acc * BigInt::from(n - j + t) / BigInt::from(t);
    }
    acc
}
