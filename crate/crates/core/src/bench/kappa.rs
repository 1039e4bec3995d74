use serde::Serialize;

use super::campaign::ThroughputRecord;

/// Average wall time per counted instruction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KappaEstimate {
    #[serde(rename = "N")]
    pub n: usize,
    pub kappa_us: f64,
}

/// `kappa = (3/2) T(N) / m(N)`: the linear mapper executes about `3N/2`
/// dominant instructions while `m(N)` approaches `N` bits.
pub fn estimate_kappa(record: &ThroughputRecord) -> KappaEstimate {
    KappaEstimate {
        n: record.n,
        kappa_us: kappa_from_runtime(record.runtime_us, record.m_bits),
    }
}

pub fn kappa_from_runtime(runtime_us: f64, m_bits: usize) -> f64 {
    1.5 * runtime_us / m_bits as f64
}

/// Same constant from a throughput in Mbit/s.
pub fn kappa_from_throughput(throughput_mbps: f64) -> f64 {
    1.5 / throughput_mbps
}

/// Campaign average of the estimates.
pub fn mean_kappa(estimates: &[KappaEstimate]) -> Option<f64> {
    if estimates.is_empty() {
        return None;
    }
    Some(estimates.iter().map(|e| e.kappa_us).sum::<f64>() / estimates.len() as f64)
}

/// `(max - min) / mean` across the estimates.
pub fn kappa_spread(estimates: &[KappaEstimate]) -> Option<f64> {
    let mean = mean_kappa(estimates)?;
    let (lo, hi) = estimates
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), e| {
            (lo.min(e.kappa_us), hi.max(e.kappa_us))
        });
    Some((hi - lo) / mean)
}
