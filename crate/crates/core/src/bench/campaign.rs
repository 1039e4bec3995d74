//! Sequential timing campaigns with a relative-precision stopping rule.
//!
//! For each `(direction, N, selector)` the campaign discards a warmup, then
//! draws samples until the 95% Student-t half-width falls within the
//! requested fraction of the running mean, or a sample/time cap is hit.
//! Everything runs serially on the calling thread.

use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use super::stats::RunningStats;
use super::timing::{time_prepared, Direction, PreparedInput, TimingError};
use crate::combinatorics::{OpCounter, SelectorKind};
use crate::imcodec::{CodecError, ConfigError, ImConfig};

pub const DEFAULT_SEED: u64 = 1_973_272_912;

#[derive(Debug, Error)]
pub enum CampaignError {
    #[error("N={0} is not a valid even subcarrier count")]
    InvalidN(usize),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Codec(#[from] CodecError),
    #[error("no usable samples for N={n} ({rejected} rejected for clock resolution)")]
    NoSamples { n: usize, rejected: u64 },
}

#[derive(Debug, Clone)]
pub struct CampaignConfig {
    pub n_list: Vec<usize>,
    pub selectors: Vec<SelectorKind>,
    pub directions: Vec<Direction>,
    /// Samples discarded before measuring.
    pub warmup: usize,
    /// Stops the warmup early once spent.
    pub warmup_budget: Option<Duration>,
    /// Target half-width as a fraction of the mean.
    pub precision: f64,
    pub min_samples: usize,
    pub max_samples: usize,
    /// Wall-clock cap on the measuring phase of one record.
    pub sample_budget: Option<Duration>,
    pub seed: u64,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        Self {
            n_list: (2..=62).step_by(2).collect(),
            selectors: SelectorKind::ALL.to_vec(),
            directions: Direction::ALL.to_vec(),
            warmup: 300,
            warmup_budget: Some(Duration::from_secs(2)),
            precision: 0.05,
            min_samples: 10,
            max_samples: 100_000,
            sample_budget: Some(Duration::from_secs(10)),
            seed: DEFAULT_SEED,
        }
    }
}

/// One measured `(direction, N, selector)` point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThroughputRecord {
    #[serde(rename = "N")]
    pub n: usize,
    pub m_bits: usize,
    pub se_gain: f64,
    pub selector: SelectorKind,
    pub direction: Direction,
    pub runtime_us: f64,
    pub delta_us: f64,
    pub throughput_mbps: f64,
    pub samples: u64,
    pub converged: bool,
    /// Samples dropped because the clock was too coarse for them.
    pub rejected: u64,
    pub mean_coeff_updates: f64,
    pub mean_builds: f64,
    pub seed: u64,
    pub samples_us: Vec<f64>,
}

impl ThroughputRecord {
    /// CSV `mapper` column: selector and direction, e.g. `linear-map`.
    pub fn mapper_label(&self) -> String {
        format!("{}-{}", self.selector, self.direction)
    }

    /// `delta_us / runtime_us`.
    pub fn relative_error(&self) -> f64 {
        self.delta_us / self.runtime_us
    }
}

/// Bits per microsecond, i.e. Mbit/s.
pub fn throughput(m_bits: usize, runtime_us: f64) -> f64 {
    m_bits as f64 / runtime_us
}

/// Seed of sample `i`, spread so neighbouring samples get unrelated streams.
pub fn sample_seed(base: u64, i: u64) -> u64 {
    base ^ i.wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

pub fn run_campaign(cfg: &CampaignConfig) -> Result<Vec<ThroughputRecord>, CampaignError> {
    run_campaign_with(cfg, |_| {})
}

/// [`run_campaign`], handing each record to `progress` as soon as it is done.
pub fn run_campaign_with(
    cfg: &CampaignConfig,
    mut progress: impl FnMut(&ThroughputRecord),
) -> Result<Vec<ThroughputRecord>, CampaignError> {
    for &n in &cfg.n_list {
        if n < 2 || n % 2 != 0 {
            return Err(CampaignError::InvalidN(n));
        }
    }
    let mut out = Vec::new();
    for &direction in &cfg.directions {
        for &n in &cfg.n_list {
            for &selector in &cfg.selectors {
                let record = measure(n, selector, direction, cfg)?;
                progress(&record);
                out.push(record);
            }
        }
    }
    Ok(out)
}

/// Measures one point under the optimal configuration `g = 1, k = N/2, M = 2`.
pub fn measure(
    n: usize,
    selector: SelectorKind,
    direction: Direction,
    cfg: &CampaignConfig,
) -> Result<ThroughputRecord, CampaignError> {
    let im = ImConfig::optimal(n).map_err(|_| CampaignError::InvalidN(n))?;
    let sel = selector.selector();
    let mut index = 0u64;
    let mut next = |im: &ImConfig| -> Result<Result<_, TimingError>, CampaignError> {
        let input = PreparedInput::generate(im, sample_seed(cfg.seed, index), direction)?;
        index += 1;
        Ok(time_prepared(&input, im, sel))
    };

    let warm_start = Instant::now();
    for _ in 0..cfg.warmup {
        if cfg.warmup_budget.is_some_and(|b| warm_start.elapsed() >= b) {
            break;
        }
        if let Err(TimingError::Codec(e)) = next(&im)? {
            return Err(e.into());
        }
    }

    let mut stats = RunningStats::new();
    let mut ops = OpCounter::new();
    let mut samples_us = Vec::new();
    let mut rejected = 0u64;
    let start = Instant::now();
    let mut converged = false;
    while (samples_us.len() as u64 + rejected) < cfg.max_samples as u64 {
        match next(&im)? {
            Ok(s) => {
                let us = s.duration.as_secs_f64() * 1e6;
                stats.push(us);
                samples_us.push(us);
                ops += s.op_counts;
            }
            Err(TimingError::CoarseClock { .. }) => rejected += 1,
            Err(TimingError::Codec(e)) => return Err(e.into()),
        }
        if samples_us.len() >= cfg.min_samples.max(2) && stats.converged_95(cfg.precision) {
            converged = true;
            break;
        }
        if cfg.sample_budget.is_some_and(|b| start.elapsed() >= b) {
            break;
        }
    }
    if samples_us.is_empty() {
        return Err(CampaignError::NoSamples { n, rejected });
    }

    let count = samples_us.len() as f64;
    let runtime_us = stats.mean();
    let m_bits = im.symbol_bits();
    Ok(ThroughputRecord {
        n,
        m_bits,
        se_gain: m_bits as f64 / n as f64,
        selector,
        direction,
        runtime_us,
        delta_us: stats.half_width(0.95),
        throughput_mbps: throughput(m_bits, runtime_us),
        samples: samples_us.len() as u64,
        converged,
        rejected,
        mean_coeff_updates: ops.coeff_updates as f64 / count,
        mean_builds: ops.from_scratch_builds as f64 / count,
        seed: cfg.seed,
        samples_us,
    })
}
