//! Linear-time combinadic ranking and unranking.
//!
//! Only one binomial is built from scratch; each later candidate comes from
//! its predecessor in one step:
//!
//! * `C(c - 1, i)     = (c - i) * C(c, i) / c`
//! * `C(c - 1, i - 1) = i * C(c, i) / c`
//! * `C(c + 1, i)     = (c + 1) * C(c, i) / (c + 1 - i)`
//! * `C(c + 1, i + 1) = (c + 1) * C(c, i) / (i + 1)`
//!
//! Every update multiplies first, so the division is exact.

use super::{binom, check_params, CombinatoricsError, IndexCoefficients, OpCounter};
use crate::exact::ExactNat;

/// Unranks with one from-scratch build of `C(n - 1, k)` and at most
/// `n + k - 1` coefficient updates in total (the build included).
pub fn unrank_linear(
    rank: ExactNat,
    n: usize,
    k: usize,
    ops: &mut OpCounter,
) -> Result<IndexCoefficients, CombinatoricsError> {
    check_params(n, k)?;
    let mut rest = rank;
    let mut coefficients = vec![0usize; k];
    let mut cc = n - 1;
    // candidate value for C(c_k, k)
    let mut bin = binom(cc, k, ops);
    for i in (1..=k).rev() {
        let mut c = cc;
        while bin > rest {
            // bin > 0 here, so c >= i
            bin.mul_div_exact((c - i) as u64, c as u64);
            ops.update();
            c -= 1;
        }
        rest -= &bin;
        coefficients[k - i] = c;
        if i == 1 {
            break;
        }
        // invariant c >= i - 1 >= 1
        cc = c - 1;
        if cc == 0 {
            // only reachable with i == 2; c_1 = 0 contributes C(0, 1) = 0
            break;
        }
        bin.mul_div_exact(i as u64, c as u64);
        ops.update();
    }
    if !rest.is_zero() {
        return Err(CombinatoricsError::RankOutOfRange { n, k });
    }
    Ok(IndexCoefficients::from_raw(coefficients, n))
}

/// Ranks with at most one from-scratch build and one update per candidate
/// value between the first non-null coefficient and `c_k`.
///
/// Leading terms with `c_i < i` are null (`c_i = i - 1`) and are skipped, so
/// the seed binomial is nonzero. The sweep stops once `c_k` has been added.
pub fn rank_linear(
    coefficients: &IndexCoefficients,
    n: usize,
    k: usize,
    ops: &mut OpCounter,
) -> Result<ExactNat, CombinatoricsError> {
    check_params(n, k)?;
    coefficients.check_against(n, k)?;
    let c = |i: usize| coefficients.coefficient(i);

    let mut i = 1;
    while i <= k && c(i) < i {
        i += 1;
    }
    if i > k {
        return Ok(ExactNat::zero());
    }

    let mut bin = binom(c(i), i, ops);
    let mut rank = ExactNat::zero();
    for cc in c(i)..n {
        if c(i) == cc {
            rank += &bin;
            if i == k {
                break;
            }
            bin.mul_div_exact((cc + 1) as u64, (i + 1) as u64);
            i += 1;
        } else {
            bin.mul_div_exact((cc + 1) as u64, (cc + 1 - i) as u64);
        }
        ops.update();
    }
    Ok(rank)
}

#[cfg(test)]
mod tests {
    use super::super::{rank_original, unrank_original};
    use super::*;
    use proptest::prelude::*;

    fn coeffs(c: &[usize], n: usize) -> IndexCoefficients {
        IndexCoefficients::new(c.to_vec(), n).unwrap()
    }

    #[test]
    fn unrank_examples() {
        let mut ops = OpCounter::new();
        let got = unrank_linear(ExactNat::zero(), 8, 4, &mut ops).unwrap();
        assert_eq!(got.as_slice(), &[3, 2, 1, 0]);
        let got = unrank_linear(ExactNat::from_u64(5), 6, 3, &mut ops).unwrap();
        assert_eq!(got.as_slice(), &[4, 2, 0]);
        let got = unrank_linear(ExactNat::from_u64(69), 8, 4, &mut ops).unwrap();
        assert_eq!(got.as_slice(), &[7, 6, 5, 4]);
    }

    #[test]
    fn all_ranks_of_8_choose_4_agree_with_original() {
        for x in 0..70u64 {
            let a = unrank_linear(ExactNat::from_u64(x), 8, 4, &mut OpCounter::new()).unwrap();
            let b = unrank_original(ExactNat::from_u64(x), 8, 4, &mut OpCounter::new()).unwrap();
            assert_eq!(a, b, "X={x}");
        }
    }

    #[test]
    fn rank_examples() {
        let mut ops = OpCounter::new();
        assert!(rank_linear(&coeffs(&[2, 1, 0], 6), 6, 3, &mut ops).unwrap().is_zero());
        // the all-null early return builds nothing
        assert_eq!(ops, OpCounter::default());
        let r = rank_linear(&coeffs(&[4, 2, 0], 6), 6, 3, &mut ops).unwrap();
        assert_eq!(r, ExactNat::from_u64(5));
        let r = rank_linear(&coeffs(&[7, 6, 5, 4], 8), 8, 4, &mut ops).unwrap();
        assert_eq!(r, ExactNat::from_u64(69));
    }

    #[test]
    fn out_of_range_rank_is_rejected() {
        for x in [70u64, 71, 1000] {
            let err = unrank_linear(ExactNat::from_u64(x), 8, 4, &mut OpCounter::new());
            assert_eq!(err, Err(CombinatoricsError::RankOutOfRange { n: 8, k: 4 }));
        }
    }

    #[test]
    fn invalid_parameters() {
        assert!(unrank_linear(ExactNat::zero(), 4, 0, &mut OpCounter::new()).is_err());
        assert!(unrank_linear(ExactNat::zero(), 4, 5, &mut OpCounter::new()).is_err());
        let c = coeffs(&[3, 1], 4);
        assert!(rank_linear(&c, 5, 2, &mut OpCounter::new()).is_err());
    }

    #[test]
    fn k_equals_n_and_k_equals_one() {
        let got = unrank_linear(ExactNat::zero(), 5, 5, &mut OpCounter::new()).unwrap();
        assert_eq!(got.as_slice(), &[4, 3, 2, 1, 0]);
        for x in 0..9u64 {
            let got = unrank_linear(ExactNat::from_u64(x), 9, 1, &mut OpCounter::new()).unwrap();
            assert_eq!(got.as_slice(), &[x as usize]);
            let r = rank_linear(&got, 9, 1, &mut OpCounter::new()).unwrap();
            assert_eq!(r, ExactNat::from_u64(x));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn update_bounds_hold_on_large_inputs(seed in any::<u64>(), n in 2usize..300) {
            let k = n / 2;
            let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
            let x = ExactNat::random_below(&super::super::binom_uncounted(n, k), &mut rng);

            let mut ops = OpCounter::new();
            let c = unrank_linear(x.clone(), n, k, &mut ops).unwrap();
            prop_assert_eq!(ops.from_scratch_builds, 1);
            prop_assert!(ops.coeff_updates <= (n + k) as u64);

            let mut ops = OpCounter::new();
            prop_assert_eq!(rank_linear(&c, n, k, &mut ops).unwrap(), x.clone());
            prop_assert!(ops.from_scratch_builds <= 1);
            prop_assert!(ops.coeff_updates <= (n + k) as u64);

            let reference = unrank_original(x.clone(), n, k, &mut OpCounter::new()).unwrap();
            prop_assert_eq!(&c, &reference);
            prop_assert_eq!(rank_original(&c, n, k, &mut OpCounter::new()).unwrap(), x);
        }
    }
}
