use super::OpCounter;
use crate::exact::ExactNat;

/// `C(n, k)` by the running product `prod_{i=1..k} (n - i + 1) / i`.
///
/// Each step multiplies by `n - i + 1` and then divides by `i`; after step `i`
/// the accumulator equals `C(n, i)`, so every division is exact. Counts one
/// from-scratch build and `k` coefficient updates. `k > n` yields zero and
/// counts the build only.
pub fn binom(n: usize, k: usize, ops: &mut OpCounter) -> ExactNat {
    ops.build();
    if k > n {
        return ExactNat::zero();
    }
    let mut acc = ExactNat::one();
    for i in 1..=k {
        acc.mul_div_exact((n - i + 1) as u64, i as u64);
        ops.update();
    }
    acc
}

/// [`binom`] without instrumentation, for bookkeeping outside the algorithms.
pub fn binom_uncounted(n: usize, k: usize) -> ExactNat {
    binom(n, k, &mut OpCounter::new())
}

/// `floor(log2 C(n, k))` as the bit length of `C(n, k)` minus one.
///
/// Requires `1 <= k <= n`, which makes `C(n, k) >= 1`.
pub fn p1_bits(n: usize, k: usize) -> usize {
    assert!(k >= 1 && k <= n, "p1_bits needs 1 <= k <= n (n={n}, k={k})");
    binom_uncounted(n, k).bit_len() as usize - 1
}
