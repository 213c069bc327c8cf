//! Generalized q-Euler numbers `E_{n|k}(q)`.
//!
//! `E_{n|k}(q)` sums `q^inv(pi)` over the permutations of `{1..n}` whose
//! descent set is exactly `{k, 2k, 3k, ...}`. At `q = 1` this is the count
//! `E_{n|k}`; for `k = 2` those are the classical Euler numbers (tangent
//! and secant numbers).
//!
//! Two independent routes produce the polynomial:
//!
//! - [`euler_oracle`] enumerates the symmetric group directly (the
//!   definition, viable for `n <= 10`);
//! - [`EulerCache::euler_q`] runs the recursion
//!   `E_{(n+1)|k} = sum_m [n choose mk-1]_q q^{n-mk+1} E_{(mk-1)|k} E_{(n-mk+1)|k}
//!   + chi(k does not divide n) E_{n|k}`
//!   bottom-up with memoization.
//!
//! The recursion as stated yields `E_{1|k} = 0` when applied at `n = 0`
//! (the chi term vanishes because k divides 0 and the sum is empty), which
//! contradicts the definition. We therefore take `E_0 = E_1 = 1` as base
//! cases and apply the recursion only from `n >= 1`; the oracle-equivalence
//! suite pins this down.

use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;
use num_bigint::BigInt;

use crate::cache::CacheStore;
use crate::error::{BudgetExceeded, InvalidPermutation, OracleError, PeriodError};
use crate::polyarith::QPolynomial;
use crate::qcombinat::gaussian_row;

/// Longest permutation the brute-force oracle will enumerate (10! words).
pub const ORACLE_MAX_LEN: u32 = 10;

/// Identifies one generalized q-Euler number: length `n`, descent period `k`.
///
/// `k >= 2` always; construction rejects smaller periods.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EulerKey {
    n: u32,
    k: u32,
}

impl EulerKey {
    pub fn new(n: u32, k: u32) -> Result<Self, PeriodError> {
        if k < 2 {
            return Err(PeriodError(k));
        }
        Ok(EulerKey { n, k })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }
}

/// Keys sort by period first, so persisted stores group into per-k runs.
impl Ord for EulerKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.k, self.n).cmp(&(other.k, other.n))
    }
}

impl PartialOrd for EulerKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A permutation of `{1..n}`, validated on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation {
    elems: Vec<u32>,
}

impl Permutation {
    pub fn new(elems: Vec<u32>) -> Result<Self, InvalidPermutation> {
        let n = elems.len();
        let mut seen = vec![false; n];
        for &a in &elems {
            let bad = InvalidPermutation { len: n, value: a };
            let idx = a.checked_sub(1).ok_or(bad)? as usize;
            if idx >= n || seen[idx] {
                return Err(bad);
            }
            seen[idx] = true;
        }
        Ok(Permutation { elems })
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elems(&self) -> &[u32] {
        &self.elems
    }

    /// Des(pi): the 1-based positions `i < n` with `a_i > a_{i+1}`.
    pub fn descent_set(&self) -> BTreeSet<u32> {
        descents(&self.elems).collect()
    }

    /// inv(pi): the number of out-of-order pairs `i < j` with `a_i > a_j`.
    pub fn inversion_count(&self) -> u64 {
        inversions(&self.elems)
    }
}

fn descents(word: &[u32]) -> impl Iterator<Item = u32> + '_ {
    word.windows(2)
        .enumerate()
        .filter(|(_, w)| w[0] > w[1])
        .map(|(i, _)| i as u32 + 1)
}

fn inversions(word: &[u32]) -> u64 {
    let mut inv = 0u64;
    for (i, a) in word.iter().enumerate() {
        inv += word[i + 1..].iter().filter(|&b| a > b).count() as u64;
    }
    inv
}

/// The descent set every counted permutation must have:
/// `{k, 2k, 3k, ...}` intersected with the valid positions `1..n-1`.
///
/// Requires `k >= 2`.
pub fn required_descents(n: u32, k: u32) -> BTreeSet<u32> {
    assert!(k >= 2, "descent period must be at least 2");
    (1..)
        .map(|m| m * k)
        .take_while(|&p| n > 0 && p <= n - 1)
        .collect()
}

/// Brute-force definition of `E_{n|k}(q)`: enumerate all of `S_n`, keep the
/// permutations whose descent set is exactly [`required_descents`], and sum
/// `q^inv`.
///
/// This is the ground truth the recursion is tested against. Enumeration is
/// capped at `n <=` [`ORACLE_MAX_LEN`].
pub fn euler_oracle(n: u32, k: u32) -> Result<QPolynomial, OracleError> {
    EulerKey::new(n, k)?;
    if n > ORACLE_MAX_LEN {
        let candidates = (2..=u128::from(n)).product();
        return Err(OracleError::Budget(BudgetExceeded {
            candidates,
            limit: factorial_u64(ORACLE_MAX_LEN),
        }));
    }
    let required: Vec<u32> = required_descents(n, k).into_iter().collect();
    let max_inv = (n * n.saturating_sub(1) / 2) as usize;
    let mut counts = vec![0u64; max_inv + 1];
    for perm in (1..=n).permutations(n as usize) {
        if descents(&perm).eq(required.iter().copied()) {
            counts[inversions(&perm) as usize] += 1;
        }
    }
    Ok(QPolynomial::from_coeffs(
        counts.into_iter().map(BigInt::from).collect(),
    ))
}

fn factorial_u64(n: u32) -> u64 {
    (2..=u64::from(n)).product()
}

/// Memo table for the `E_{n|k}(q)` recursion.
///
/// All `E_{j|k}` for `j` below the requested `n` are computed bottom-up and
/// retained, so a warm table answers repeat and smaller queries without
/// recomputation. One table may hold entries for several periods `k` at
/// once. The table is single-writer by construction (`&mut self`); values,
/// once inserted, are never altered.
#[derive(Debug, Default)]
pub struct EulerCache {
    table: HashMap<EulerKey, QPolynomial>,
}

impl EulerCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Seeds the table from a persisted store. Entries are trusted as-is;
    /// the store format guarantees normalization.
    pub fn warm_from(store: &CacheStore) -> Self {
        let mut cache = Self::new();
        for (key, poly) in store.iter() {
            cache.table.insert(*key, poly.clone());
        }
        cache
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&EulerKey, &QPolynomial)> {
        self.table.iter()
    }

    /// `E_{n|k}(q)` by the memoized recursion. Rejects `k < 2`.
    pub fn euler_q(&mut self, n: u32, k: u32) -> Result<QPolynomial, PeriodError> {
        let key = EulerKey::new(n, k)?;
        if let Some(p) = self.table.get(&key) {
            return Ok(p.clone());
        }
        // Bottom-up: every E_{j|k} below n is needed anyway, and an iterative
        // fill keeps the call depth flat.
        for j in 0..=n {
            let key_j = EulerKey::new(j, k).expect("k validated above");
            if self.table.contains_key(&key_j) {
                continue;
            }
            let value = if j <= 1 {
                QPolynomial::one()
            } else {
                self.apply_recursion(j, k)
            };
            self.table.insert(key_j, value);
        }
        Ok(self.table[&key].clone())
    }

    /// One step of the recursion, producing `E_{j|k}` from the entries below
    /// it (all already in the table). `j >= 2`.
    fn apply_recursion(&self, j: u32, k: u32) -> QPolynomial {
        let n = j - 1;
        let row = gaussian_row(n);
        let mut acc = QPolynomial::zero();
        for m in 1..=n / k {
            let left = &self.table[&EulerKey { n: m * k - 1, k }];
            let right = &self.table[&EulerKey { n: n - m * k + 1, k }];
            let shift = QPolynomial::monomial(BigInt::from(1), (n - m * k + 1) as usize);
            let term = &(&row[(m * k - 1) as usize] * &shift) * &(left * right);
            acc = &acc + &term;
        }
        if n % k != 0 {
            acc = &acc + &self.table[&EulerKey { n, k }];
        }
        acc
    }

    /// The count `E_{n|k}`: the polynomial evaluated at `q = 1`.
    pub fn euler_count(&mut self, n: u32, k: u32) -> Result<BigInt, PeriodError> {
        Ok(self.euler_q(n, k)?.eval_at_one())
    }

    /// Copies every entry into a persistable store.
    pub fn flush_to(&self, store: &mut CacheStore) {
        for (key, poly) in &self.table {
            store.insert(*key, poly.clone());
        }
    }
}

/// One-shot `E_{n|k}(q)` with a throwaway memo table.
pub fn euler_q(n: u32, k: u32) -> Result<QPolynomial, PeriodError> {
    EulerCache::new().euler_q(n, k)
}

/// One-shot count `E_{n|k}`.
pub fn euler_count(n: u32, k: u32) -> Result<BigInt, PeriodError> {
    EulerCache::new().euler_count(n, k)
}
