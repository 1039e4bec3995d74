//! Exhaustive and randomized cross-checks of a pair of index selectors.
//!
//! The exhaustive sweep walks every `(n, k, X)` with `n <= max_n` and checks:
//! the reference unranking against the colex oracle, both bijections, and
//! pointwise agreement of the two selectors. The random sweep checks
//! agreement at sizes too large to enumerate.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{
    binom_uncounted, colex_count, oracle_colex_enumerate_with_limit, CombinatoricsError, IndexCoefficients,
    IndexSelector, OpCounter,
};
use crate::exact::ExactNat;

/// First disagreement found, enough to replay it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub n: usize,
    pub k: usize,
    pub rank: ExactNat,
    pub check: &'static str,
    pub detail: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} failed at n={} k={} X={}: {}",
            self.check, self.n, self.k, self.rank, self.detail
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerifyReport {
    /// Number of `(n, k, X)` triples fully checked.
    pub cases_checked: u64,
    pub mismatch: Option<Mismatch>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }

    fn absorb(&mut self, other: VerifyReport) {
        self.cases_checked += other.cases_checked;
        if self.mismatch.is_none() {
            self.mismatch = other.mismatch;
        }
    }
}

/// Largest `C(n, k)` over `k` for this `n`.
fn widest(n: usize) -> Option<u128> {
    colex_count(n, n / 2)
}

/// Refuses up front if any `C(n, k)` with `n <= max_n` exceeds `limit`.
pub fn check_guard(max_n: usize, limit: u64) -> Result<(), CombinatoricsError> {
    match widest(max_n) {
        Some(c) if c <= u128::from(limit) => Ok(()),
        _ => Err(CombinatoricsError::OracleScaleExceeded {
            n: max_n,
            k: max_n / 2,
            limit,
        }),
    }
}

/// Every `1 <= k <= n <= max_n` and every rank `X < C(n, k)`.
pub fn verify_exhaustive(
    max_n: usize,
    limit: u64,
    reference: &dyn IndexSelector,
    candidate: &dyn IndexSelector,
) -> Result<VerifyReport, CombinatoricsError> {
    check_guard(max_n, limit)?;
    let mut report = VerifyReport::default();
    for n in 1..=max_n {
        for k in 1..=n {
            report.absorb(verify_size(n, k, limit, reference, candidate)?);
            if !report.passed() {
                return Ok(report);
            }
        }
    }
    Ok(report)
}

/// All ranks of a single `(n, k)`.
pub fn verify_size(
    n: usize,
    k: usize,
    limit: u64,
    reference: &dyn IndexSelector,
    candidate: &dyn IndexSelector,
) -> Result<VerifyReport, CombinatoricsError> {
    let oracle = oracle_colex_enumerate_with_limit(n, k, limit)?;
    let mut report = VerifyReport::default();
    for (x, expected) in oracle.iter().enumerate() {
        let rank = ExactNat::from_u64(x as u64);
        if let Err(m) = check_rank(n, k, &rank, Some(expected), reference, candidate) {
            report.mismatch = Some(m);
            return Ok(report);
        }
        report.cases_checked += 1;
    }
    Ok(report)
}

/// `samples` uniform ranks below `C(n, k)`; no oracle at this scale.
pub fn verify_random(
    n: usize,
    k: usize,
    samples: usize,
    seed: u64,
    reference: &dyn IndexSelector,
    candidate: &dyn IndexSelector,
) -> Result<VerifyReport, CombinatoricsError> {
    super::check_params(n, k)?;
    let bound = binom_uncounted(n, k);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = VerifyReport::default();
    for _ in 0..samples {
        let rank = ExactNat::random_below(&bound, &mut rng);
        if let Err(m) = check_rank(n, k, &rank, None, reference, candidate) {
            report.mismatch = Some(m);
            return Ok(report);
        }
        report.cases_checked += 1;
    }
    Ok(report)
}

fn check_rank(
    n: usize,
    k: usize,
    rank: &ExactNat,
    expected: Option<&IndexCoefficients>,
    reference: &dyn IndexSelector,
    candidate: &dyn IndexSelector,
) -> Result<(), Mismatch> {
    let fail = |check: &'static str, detail: String| Mismatch {
        n,
        k,
        rank: rank.clone(),
        check,
        detail,
    };
    let mut ops = OpCounter::new();

    let ref_coeffs = reference
        .unrank(rank.clone(), n, k, &mut ops)
        .map_err(|e| fail("reference unrank", e.to_string()))?;
    if let Some(expected) = expected {
        if ref_coeffs != *expected {
            return Err(fail(
                "oracle agreement",
                format!(
                    "{} gave {:?}, oracle {:?}",
                    reference.name(),
                    ref_coeffs.as_slice(),
                    expected.as_slice()
                ),
            ));
        }
    }
    if !sums_to(&ref_coeffs, rank) {
        return Err(fail("combinadic identity", format!("{:?}", ref_coeffs.as_slice())));
    }

    let cand_coeffs = candidate
        .unrank(rank.clone(), n, k, &mut ops)
        .map_err(|e| fail("candidate unrank", e.to_string()))?;
    if cand_coeffs != ref_coeffs {
        return Err(fail(
            "unrank equivalence",
            format!(
                "{} gave {:?}, {} gave {:?}",
                candidate.name(),
                cand_coeffs.as_slice(),
                reference.name(),
                ref_coeffs.as_slice()
            ),
        ));
    }

    for (sel, coeffs, label) in [
        (reference, &ref_coeffs, "reference bijection"),
        (candidate, &cand_coeffs, "candidate bijection"),
    ] {
        let back = sel
            .rank(coeffs, n, k, &mut ops)
            .map_err(|e| fail(label, e.to_string()))?;
        if back != *rank {
            return Err(fail(
                label,
                format!("{} ranked {:?} to {back}", sel.name(), coeffs.as_slice()),
            ));
        }
    }
    Ok(())
}

/// Re-evaluates `sum C(c_i, i)` from scratch, independent of both selectors.
fn sums_to(coeffs: &IndexCoefficients, rank: &ExactNat) -> bool {
    let mut total = ExactNat::zero();
    for i in 1..=coeffs.k() {
        total += &binom_uncounted(coeffs.coefficient(i), i);
    }
    total == *rank
}
