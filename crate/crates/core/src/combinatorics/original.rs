//! The combinadic pair used by the original index selector. Every candidate
//! binomial is rebuilt from scratch.

use super::{binom, check_params, CombinatoricsError, IndexCoefficients, OpCounter};
use crate::exact::ExactNat;

/// Greedy unranking: for `i = k..1`, scan candidates downwards from the last
/// rejected value and keep the first `cc` with `C(cc, i) <= X`.
///
/// Candidates start at `n - 1`. Each test costs one from-scratch [`binom`].
pub fn unrank_original(
    rank: ExactNat,
    n: usize,
    k: usize,
    ops: &mut OpCounter,
) -> Result<IndexCoefficients, CombinatoricsError> {
    check_params(n, k)?;
    let mut rest = rank;
    let mut coefficients = Vec::with_capacity(k);
    let mut cc = n;
    for i in (1..=k).rev() {
        // C(i - 1, i) = 0 always passes, so cc never drops below i - 1.
        let term = loop {
            cc -= 1;
            let candidate = binom(cc, i, ops);
            if candidate <= rest {
                break candidate;
            }
        };
        coefficients.push(cc);
        rest -= &term;
    }
    // a rank >= C(n, k) leaves a remainder the greedy pass cannot absorb
    if !rest.is_zero() {
        return Err(CombinatoricsError::RankOutOfRange { n, k });
    }
    Ok(IndexCoefficients::from_raw(coefficients, n))
}

/// `sum_{i=1..k} C(c_i, i)`, each term built from scratch.
pub fn rank_original(
    coefficients: &IndexCoefficients,
    n: usize,
    k: usize,
    ops: &mut OpCounter,
) -> Result<ExactNat, CombinatoricsError> {
    check_params(n, k)?;
    coefficients.check_against(n, k)?;
    let mut rank = ExactNat::zero();
    for i in 1..=k {
        rank += &binom(coefficients.coefficient(i), i, ops);
    }
    Ok(rank)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unrank(x: u64, n: usize, k: usize) -> Vec<usize> {
        unrank_original(ExactNat::from_u64(x), n, k, &mut OpCounter::new())
            .unwrap()
            .into_vec()
    }

    fn rank(c: &[usize], n: usize) -> u64 {
        let c = IndexCoefficients::new(c.to_vec(), n).unwrap();
        rank_original(&c, n, c.k(), &mut OpCounter::new())
            .unwrap()
            .to_u64()
            .unwrap()
    }

    #[test]
    fn unrank_examples() {
        assert_eq!(unrank(0, 8, 4), vec![3, 2, 1, 0]);
        assert_eq!(unrank(69, 8, 4), vec![7, 6, 5, 4]);
        assert_eq!(unrank(5, 6, 3), vec![4, 2, 0]);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&[3, 2, 1, 0], 8), 0);
        assert_eq!(rank(&[7, 6, 5, 4], 8), 69);
        assert_eq!(rank(&[4, 2, 0], 6), 5);
    }

    #[test]
    fn out_of_range_rank_is_rejected() {
        let err = unrank_original(ExactNat::from_u64(70), 8, 4, &mut OpCounter::new());
        assert_eq!(err, Err(CombinatoricsError::RankOutOfRange { n: 8, k: 4 }));
        let err = unrank_original(ExactNat::pow2(200), 8, 4, &mut OpCounter::new());
        assert!(err.unwrap_err().to_string().contains("rank out of range"));
    }

    #[test]
    fn rank_rejects_mismatched_shape() {
        let c = IndexCoefficients::new(vec![4, 2, 0], 6).unwrap();
        assert!(rank_original(&c, 8, 3, &mut OpCounter::new()).is_err());
        assert!(rank_original(&c, 6, 2, &mut OpCounter::new()).is_err());
    }

    #[test]
    fn one_build_per_candidate_test() {
        // X = 0 with n = 8, k = 4: c_4 tests 7..3 (5 tests), then 2, 1, 0 pass at once
        let mut ops = OpCounter::new();
        unrank_original(ExactNat::zero(), 8, 4, &mut ops).unwrap();
        assert_eq!(ops.from_scratch_builds, 8);
        // builds C(7..3, 4) cost 4 each (C(3,4)=0 costs nothing), then C(2,3), C(1,2), C(0,1) are zero
        assert_eq!(ops.coeff_updates, 4 * 4);
    }

    #[test]
    fn rank_costs_triangular_updates() {
        let c = IndexCoefficients::new(vec![7, 6, 5, 4], 8).unwrap();
        let mut ops = OpCounter::new();
        rank_original(&c, 8, 4, &mut ops).unwrap();
        assert_eq!(ops.from_scratch_builds, 4);
        assert_eq!(ops.coeff_updates, 1 + 2 + 3 + 4);
    }
}
