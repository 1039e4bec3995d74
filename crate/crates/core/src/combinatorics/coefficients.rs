use super::CombinatoricsError;

/// Strictly decreasing coefficients `(c_k, ..., c_1)` with `c_k <= n - 1`.
///
/// Ascending order of the same values gives the active local subcarrier
/// indexes of a subblock of width `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndexCoefficients {
    coefficients: Vec<usize>,
    n: usize,
}

impl IndexCoefficients {
    /// Validates the combinadic invariants against subblock width `n`.
    pub fn new(coefficients: Vec<usize>, n: usize) -> Result<Self, CombinatoricsError> {
        let k = coefficients.len();
        if k == 0 || k > n {
            return Err(CombinatoricsError::InvalidCoefficients(format!(
                "need 1 <= k <= n, got k={k}, n={n}"
            )));
        }
        if coefficients[0] >= n {
            return Err(CombinatoricsError::InvalidCoefficients(format!(
                "largest coefficient {} is not below n={n}",
                coefficients[0]
            )));
        }
        if let Some(pos) = coefficients.windows(2).position(|w| w[0] <= w[1]) {
            return Err(CombinatoricsError::InvalidCoefficients(format!(
                "not strictly decreasing at position {pos}: {} then {}",
                coefficients[pos],
                coefficients[pos + 1]
            )));
        }
        Ok(Self { coefficients, n })
    }

    /// From active local indexes in ascending order.
    pub fn from_ascending(mut locals: Vec<usize>, n: usize) -> Result<Self, CombinatoricsError> {
        locals.reverse();
        Self::new(locals, n)
    }

    /// Caller guarantees the invariants (algorithm outputs).
    pub(crate) fn from_raw(coefficients: Vec<usize>, n: usize) -> Self {
        debug_assert!(Self::new(coefficients.clone(), n).is_ok(), "{coefficients:?} n={n}");
        Self { coefficients, n }
    }

    pub fn k(&self) -> usize {
        self.coefficients.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `(c_k, ..., c_1)`.
    pub fn as_slice(&self) -> &[usize] {
        &self.coefficients
    }

    /// `c_i` for `1 <= i <= k`.
    #[inline]
    pub fn coefficient(&self, i: usize) -> usize {
        self.coefficients[self.coefficients.len() - i]
    }

    /// `c_1, ..., c_k`: the active local indexes, smallest first.
    pub fn ascending(&self) -> impl DoubleEndedIterator<Item = usize> + ExactSizeIterator + '_ {
        self.coefficients.iter().rev().copied()
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.coefficients
    }

    pub(crate) fn check_against(&self, n: usize, k: usize) -> Result<(), CombinatoricsError> {
        if self.n != n || self.k() != k {
            return Err(CombinatoricsError::ParameterMismatch {
                n,
                k,
                found_n: self.n,
                found_k: self.k(),
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_valid() {
        let c = IndexCoefficients::new(vec![4, 2, 0], 6).unwrap();
        assert_eq!(c.k(), 3);
        assert_eq!(c.coefficient(3), 4);
        assert_eq!(c.coefficient(1), 0);
        assert_eq!(c.ascending().collect::<Vec<_>>(), vec![0, 2, 4]);
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(IndexCoefficients::new(vec![], 4).is_err());
        assert!(IndexCoefficients::new(vec![4, 1], 4).is_err());
        assert!(IndexCoefficients::new(vec![2, 2], 4).is_err());
        assert!(IndexCoefficients::new(vec![1, 3], 4).is_err());
        assert!(IndexCoefficients::new(vec![3, 2, 1, 0, 0], 4).is_err());
    }

    #[test]
    fn from_ascending_reverses() {
        let c = IndexCoefficients::from_ascending(vec![1, 5], 6).unwrap();
        assert_eq!(c.as_slice(), &[5, 1]);
    }
}
