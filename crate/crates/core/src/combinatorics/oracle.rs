//! Brute-force colexicographic enumeration, used only to check the rankers.
//!
//! Nothing here calls a ranking or unranking routine: the list position of a
//! combination is its rank by definition.

use super::{check_params, CombinatoricsError, IndexCoefficients};

/// Default cap on `C(n, k)` for enumeration.
pub const ORACLE_LIMIT: u64 = 10_000_000;

/// `C(n, k)` in checked `u128` arithmetic, `None` on overflow.
pub fn colex_count(n: usize, k: usize) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let mut acc: u128 = 1;
    for i in 1..=k as u128 {
        acc = acc.checked_mul(n as u128 + 1 - i)? / i;
    }
    Some(acc)
}

/// All k-subsets of `0..n` in colex order, as `(c_k, ..., c_1)` tuples.
pub fn oracle_colex_enumerate(n: usize, k: usize) -> Result<Vec<IndexCoefficients>, CombinatoricsError> {
    oracle_colex_enumerate_with_limit(n, k, ORACLE_LIMIT)
}

pub fn oracle_colex_enumerate_with_limit(
    n: usize,
    k: usize,
    limit: u64,
) -> Result<Vec<IndexCoefficients>, CombinatoricsError> {
    check_params(n, k)?;
    let total = match colex_count(n, k) {
        Some(t) if t <= u128::from(limit) => t as usize,
        _ => return Err(CombinatoricsError::OracleScaleExceeded { n, k, limit }),
    };

    let mut out = Vec::with_capacity(total);
    // ascending a[0] < ... < a[k-1]
    let mut a: Vec<usize> = (0..k).collect();
    loop {
        out.push(IndexCoefficients::from_raw(a.iter().rev().copied().collect(), n));
        // colex successor: bump the lowest element that has room, reset those below it
        let Some(j) = (0..k).find(|&j| {
            let ceiling = if j + 1 < k { a[j + 1] } else { n };
            a[j] + 1 < ceiling
        }) else {
            break;
        };
        a[j] += 1;
        for (t, slot) in a.iter_mut().enumerate().take(j) {
            *slot = t;
        }
    }
    debug_assert_eq!(out.len(), total);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
        oracle_colex_enumerate(n, k)
            .unwrap()
            .into_iter()
            .map(IndexCoefficients::into_vec)
            .collect()
    }

    #[test]
    fn three_choose_two() {
        assert_eq!(tuples(3, 2), vec![vec![1, 0], vec![2, 0], vec![2, 1]]);
    }

    #[test]
    fn single_combination() {
        assert_eq!(tuples(4, 4), vec![vec![3, 2, 1, 0]]);
    }

    #[test]
    fn six_choose_three_position_five() {
        let list = tuples(6, 3);
        assert_eq!(list.len(), 20);
        assert_eq!(list[5], vec![4, 2, 0]);
    }

    #[test]
    fn list_is_sorted_by_reversed_tuple() {
        let list = tuples(9, 4);
        assert_eq!(list.len(), 126);
        for w in list.windows(2) {
            assert!(w[0] < w[1], "{:?} !< {:?}", w[0], w[1]);
        }
    }

    #[test]
    fn guard_refuses_large_scale() {
        let err = oracle_colex_enumerate(40, 20).unwrap_err();
        assert!(err.to_string().contains("oracle scale exceeded"));
        assert!(oracle_colex_enumerate_with_limit(10, 5, 251).is_err());
        assert!(oracle_colex_enumerate_with_limit(10, 5, 252).is_ok());
    }

    #[test]
    fn count_helper() {
        assert_eq!(colex_count(8, 4), Some(70));
        assert_eq!(colex_count(3, 4), Some(0));
        assert_eq!(colex_count(1000, 500), None);
    }
}
