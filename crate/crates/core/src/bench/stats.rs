//! Running mean/variance and Student-t confidence intervals.

use statrs::distribution::{ContinuousCDF, Normal, StudentsT};

/// Two-sided normal quantile for 95%, a lower bound on every t quantile.
const Z_95: f64 = 1.959_963_984_540_054;

/// Welford accumulator.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RunningStats {
    count: u64,
    mean: f64,
    m2: f64,
}

impl RunningStats {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let d = x - self.mean;
        self.mean += d / self.count as f64;
        self.m2 += d * (x - self.mean);
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Unbiased sample variance; zero below two samples.
    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            (self.m2 / (self.count - 1) as f64).max(0.0)
        }
    }

    /// Half-width of the two-sided Student-t interval at `confidence`.
    /// Infinite below two samples.
    pub fn half_width(&self, confidence: f64) -> f64 {
        if self.count < 2 {
            return f64::INFINITY;
        }
        let se = (self.variance() / self.count as f64).sqrt();
        if se == 0.0 {
            return 0.0;
        }
        t_quantile(confidence, self.count - 1) * se
    }

    /// `half_width <= precision * mean` at 95%, skipping the t quantile when
    /// even the normal bound fails.
    pub fn converged_95(&self, precision: f64) -> bool {
        if self.count < 2 {
            return false;
        }
        let se = (self.variance() / self.count as f64).sqrt();
        let target = precision * self.mean.abs();
        if Z_95 * se > target {
            return false;
        }
        self.half_width(0.95) <= target
    }
}

/// Two-sided quantile `t_{(1 + confidence) / 2, df}`.
///
/// The numeric inverse drifts just below the normal quantile for very large
/// `df`; the normal quantile is the exact lower bound, so it is used as a floor.
pub fn t_quantile(confidence: f64, df: u64) -> f64 {
    assert!(confidence > 0.0 && confidence < 1.0, "confidence must lie in (0, 1)");
    assert!(df >= 1, "need at least one degree of freedom");
    let p = 0.5 + confidence / 2.0;
    let t = StudentsT::new(0.0, 1.0, df as f64)
        .expect("valid Student-t parameters")
        .inverse_cdf(p);
    t.max(Normal::standard().inverse_cdf(p))
}

/// Mean and Student-t half-width of `samples`.
pub fn confidence_interval(samples: &[f64], confidence: f64) -> (f64, f64) {
    let mut s = RunningStats::new();
    for &x in samples {
        s.push(x);
    }
    (s.mean(), s.half_width(confidence))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_samples_have_zero_width() {
        let (mean, delta) = confidence_interval(&[1.36; 20], 0.95);
        assert!((mean - 1.36).abs() < 1e-12);
        assert_eq!(delta, 0.0);
    }

    #[test]
    fn known_quantiles() {
        assert!((t_quantile(0.95, 1) - 12.706_204_736).abs() < 1e-6);
        assert!((t_quantile(0.95, 9) - 2.262_157_163).abs() < 1e-6);
        assert!((t_quantile(0.95, 1_000_000) - Z_95).abs() < 1e-5);
        for df in [100, 1000, 10_000, 100_000, 1_000_000] {
            assert!(t_quantile(0.95, df) >= Z_95 - 1e-12);
        }
    }

    #[test]
    fn textbook_interval() {
        // mean 5, sample sd sqrt(2.5), n 5: 2.776445 * sqrt(0.5)
        let (mean, delta) = confidence_interval(&[3.0, 4.0, 5.0, 6.0, 7.0], 0.95);
        assert!((mean - 5.0).abs() < 1e-12);
        assert!((delta - 1.963_243_6).abs() < 1e-6);
    }

    #[test]
    fn convergence_check_matches_direct_computation() {
        let mut s = RunningStats::new();
        for i in 0..50 {
            s.push(100.0 + (i % 7) as f64);
            let direct = s.half_width(0.95) <= 0.05 * s.mean();
            assert_eq!(s.converged_95(0.05), direct, "at {i}");
        }
        assert!(s.converged_95(0.05));
        assert!(!RunningStats::new().converged_95(0.05));
    }
}
