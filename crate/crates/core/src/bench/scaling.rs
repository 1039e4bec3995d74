//! Log-log slope fits of cost against `N`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use super::campaign::{sample_seed, CampaignError, ThroughputRecord};
use super::timing::Direction;
use crate::combinatorics::{LinearCombinadic, OpCounter, SelectorKind};
use crate::imcodec::{demap_symbol_counted, map_symbol, map_symbol_counted, BitBuffer, ImConfig};

pub const MIN_FIT_POINTS: usize = 4;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScalingError {
    #[error("a slope fit needs at least {MIN_FIT_POINTS} points, got {0}")]
    TooFewPoints(usize),
    #[error("point ({n}, {value}) is not positive")]
    NonPositive { n: f64, value: f64 },
    #[error("all points share N={0}")]
    Degenerate(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScalingFit {
    /// Exponent `a` in `metric ~ c N^a`.
    pub slope: f64,
    /// `ln c`.
    pub intercept: f64,
}

/// Least-squares fit of `ln metric` against `ln N`.
pub fn fit_scaling(points: &[(f64, f64)]) -> Result<ScalingFit, ScalingError> {
    if points.len() < MIN_FIT_POINTS {
        return Err(ScalingError::TooFewPoints(points.len()));
    }
    let mut logs = Vec::with_capacity(points.len());
    for &(n, value) in points {
        if !(n > 0.0 && value > 0.0) {
            return Err(ScalingError::NonPositive { n, value });
        }
        logs.push((n.ln(), value.ln()));
    }
    let len = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / len;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / len;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return Err(ScalingError::Degenerate(points[0].0));
    }
    let slope = sxy / sxx;
    Ok(ScalingFit {
        slope,
        intercept: my - slope * mx,
    })
}

/// Wall-time fit over campaign records of one selector and direction.
pub fn fit_runtime(records: &[&ThroughputRecord]) -> Result<ScalingFit, ScalingError> {
    let pts: Vec<_> = records.iter().map(|r| (r.n as f64, r.runtime_us)).collect();
    fit_scaling(&pts)
}

/// Selector work at one `N`, over `inputs` seeded random symbols.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CounterPoint {
    #[serde(rename = "N")]
    pub n: usize,
    pub mean_coeff_updates: f64,
    pub max_coeff_updates: u64,
    pub mean_builds: f64,
    pub max_builds: u64,
}

/// Counts selector work under the optimal configuration; no timing involved.
pub fn counter_series(
    selector: SelectorKind,
    direction: Direction,
    n_list: &[usize],
    inputs: usize,
    seed: u64,
) -> Result<Vec<CounterPoint>, CampaignError> {
    assert!(inputs > 0, "need at least one input per N");
    let sel = selector.selector();
    let mut out = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let cfg = ImConfig::optimal(n).map_err(|_| CampaignError::InvalidN(n))?;
        let mut total = OpCounter::new();
        let (mut max_updates, mut max_builds) = (0, 0);
        for i in 0..inputs as u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(sample_seed(seed, i));
            let bits = BitBuffer::random(cfg.symbol_bits(), &mut rng);
            let mut ops = OpCounter::new();
            match direction {
                Direction::Map => {
                    map_symbol_counted(&bits, &cfg, sel, &mut ops)?;
                }
                Direction::Demap => {
                    let sym = map_symbol(&bits, &cfg, &LinearCombinadic)?;
                    demap_symbol_counted(&sym, &cfg, sel, &mut ops)?;
                }
            }
            max_updates = max_updates.max(ops.coeff_updates);
            max_builds = max_builds.max(ops.from_scratch_builds);
            total += ops;
        }
        out.push(CounterPoint {
            n,
            mean_coeff_updates: total.coeff_updates as f64 / inputs as f64,
            max_coeff_updates: max_updates,
            mean_builds: total.from_scratch_builds as f64 / inputs as f64,
            max_builds,
        });
    }
    Ok(out)
}

/// Slope of mean `coeff_updates` over a counter series.
pub fn fit_counters(series: &[CounterPoint]) -> Result<ScalingFit, ScalingError> {
    let pts: Vec<_> = series.iter().map(|p| (p.n as f64, p.mean_coeff_updates)).collect();
    fit_scaling(&pts)
}
