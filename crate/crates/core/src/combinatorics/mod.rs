//! Combinatorial number system: exact binomials, ranking and unranking of
//! k-combinations, and an independent enumeration oracle.
//!
//! A rank `X` in `[0, C(n, k))` is written uniquely as
//! `X = C(c_k, k) + ... + C(c_2, 2) + C(c_1, 1)` with
//! `n - 1 >= c_k > ... > c_1 >= 0`. Unranking recovers the coefficients from
//! `X`; ranking sums the binomials back. The coefficients double as the
//! indexes of the active subcarriers of one subblock.
//!
//! Two algorithm pairs are provided:
//!
//! * [`unrank_original`] / [`rank_original`]: every candidate binomial is
//!   rebuilt from scratch with the multiplicative formula, `O(n k)` and
//!   `O(k^2)` coefficient updates respectively.
//! * [`unrank_linear`] / [`rank_linear`]: one binomial is built from scratch
//!   and every later candidate is derived from its predecessor with one
//!   multiply/divide pair, at most `n + k` coefficient updates.
//!
//! Every algorithm reports its work through an [`OpCounter`] owned by the
//! caller.

mod binomial;
mod coefficients;
mod linear;
mod oracle;
mod original;
mod selector;
pub mod verify;

pub use binomial::{binom, binom_uncounted, p1_bits};
pub use coefficients::IndexCoefficients;
pub use linear::{rank_linear, unrank_linear};
pub use oracle::{colex_count, oracle_colex_enumerate, oracle_colex_enumerate_with_limit, ORACLE_LIMIT};
pub use original::{rank_original, unrank_original};
pub use selector::{IndexSelector, LinearCombinadic, OriginalCombinadic, SelectorKind};

use serde::Serialize;
use thiserror::Error;

/// RAM-model step counter for binomial arithmetic.
///
/// `coeff_updates` counts multiply/divide pairs applied to a binomial value;
/// `from_scratch_builds` counts full multiplicative-formula evaluations.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct OpCounter {
    pub coeff_updates: u64,
    pub from_scratch_builds: u64,
}

impl OpCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn reset(&mut self) {
        *self = Self::default();
    }

    #[inline]
    pub(crate) fn update(&mut self) {
        self.coeff_updates += 1;
    }

    #[inline]
    pub(crate) fn build(&mut self) {
        self.from_scratch_builds += 1;
    }
}

impl std::ops::AddAssign for OpCounter {
    fn add_assign(&mut self, rhs: Self) {
        self.coeff_updates += rhs.coeff_updates;
        self.from_scratch_builds += rhs.from_scratch_builds;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CombinatoricsError {
    #[error("rank out of range: rank must be below C({n}, {k})")]
    RankOutOfRange { n: usize, k: usize },
    #[error("invalid parameters: need 1 <= k <= n, got n={n}, k={k}")]
    InvalidParameters { n: usize, k: usize },
    #[error("invalid coefficients: {0}")]
    InvalidCoefficients(String),
    #[error("coefficients describe (n={found_n}, k={found_k}) but (n={n}, k={k}) was requested")]
    ParameterMismatch {
        n: usize,
        k: usize,
        found_n: usize,
        found_k: usize,
    },
    #[error("oracle scale exceeded: C({n}, {k}) is above the enumeration limit {limit}")]
    OracleScaleExceeded { n: usize, k: usize, limit: u64 },
}

pub(crate) fn check_params(n: usize, k: usize) -> Result<(), CombinatoricsError> {
    if k == 0 || k > n {
        return Err(CombinatoricsError::InvalidParameters { n, k });
    }
    Ok(())
}
