use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{
    rank_linear, rank_original, unrank_linear, unrank_original, CombinatoricsError, IndexCoefficients, OpCounter,
};
use crate::exact::ExactNat;

/// Pluggable index selector: unranking on transmit, ranking on receive.
///
/// Implementations are stateless and shared across threads; all mutable state
/// lives in the caller's [`OpCounter`].
pub trait IndexSelector: Send + Sync {
    fn name(&self) -> &str;

    fn unrank(
        &self,
        rank: ExactNat,
        n: usize,
        k: usize,
        ops: &mut OpCounter,
    ) -> Result<IndexCoefficients, CombinatoricsError>;

    fn rank(
        &self,
        coefficients: &IndexCoefficients,
        n: usize,
        k: usize,
        ops: &mut OpCounter,
    ) -> Result<ExactNat, CombinatoricsError>;
}

/// From-scratch binomials on every candidate.
#[derive(Debug, Clone, Copy, Default)]
pub struct OriginalCombinadic;

/// Incrementally updated binomials.
#[derive(Debug, Clone, Copy, Default)]
pub struct LinearCombinadic;

impl IndexSelector for OriginalCombinadic {
    fn name(&self) -> &str {
        "original"
    }

    fn unrank(
        &self,
        rank: ExactNat,
        n: usize,
        k: usize,
        ops: &mut OpCounter,
    ) -> Result<IndexCoefficients, CombinatoricsError> {
        unrank_original(rank, n, k, ops)
    }

    fn rank(
        &self,
        coefficients: &IndexCoefficients,
        n: usize,
        k: usize,
        ops: &mut OpCounter,
    ) -> Result<ExactNat, CombinatoricsError> {
        rank_original(coefficients, n, k, ops)
    }
}

impl IndexSelector for LinearCombinadic {
    fn name(&self) -> &str {
        "linear"
    }

    fn unrank(
        &self,
        rank: ExactNat,
        n: usize,
        k: usize,
        ops: &mut OpCounter,
    ) -> Result<IndexCoefficients, CombinatoricsError> {
        unrank_linear(rank, n, k, ops)
    }

    fn rank(
        &self,
        coefficients: &IndexCoefficients,
        n: usize,
        k: usize,
        ops: &mut OpCounter,
    ) -> Result<ExactNat, CombinatoricsError> {
        rank_linear(coefficients, n, k, ops)
    }
}

/// Named choice between the built-in selectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SelectorKind {
    Original,
    Linear,
}

impl SelectorKind {
    pub const ALL: [SelectorKind; 2] = [SelectorKind::Original, SelectorKind::Linear];

    pub fn selector(self) -> &'static dyn IndexSelector {
        match self {
            SelectorKind::Original => &OriginalCombinadic,
            SelectorKind::Linear => &LinearCombinadic,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SelectorKind::Original => "original",
            SelectorKind::Linear => "linear",
        }
    }
}

impl fmt::Display for SelectorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SelectorKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "original" | "orig" => Ok(SelectorKind::Original),
            "linear" | "prop" | "proposed" => Ok(SelectorKind::Linear),
            other => Err(format!("unknown selector '{other}' (expected original or linear)")),
        }
    }
}
