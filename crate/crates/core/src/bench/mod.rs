//! Spectro-computational benchmarking: wall-time campaigns with confidence
//! intervals, throughput `m(N) / T(N)`, the per-instruction constant kappa,
//! and log-log scaling fits over wall time or operation counts.
//!
//! Wall time depends on the machine and on big-integer word growth, so
//! asymptotic claims are best checked against the hardware-independent
//! counters from [`counter_series`].

mod campaign;
mod csv;
mod kappa;
mod scaling;
mod stats;
mod timing;

pub use campaign::{
    measure, run_campaign, run_campaign_with, sample_seed, throughput, CampaignConfig, CampaignError, ThroughputRecord,
    DEFAULT_SEED,
};
pub use csv::{csv_row, write_csv, write_json, CSV_HEADER};
pub use kappa::{estimate_kappa, kappa_from_runtime, kappa_from_throughput, kappa_spread, mean_kappa, KappaEstimate};
pub use scaling::{
    counter_series, fit_counters, fit_runtime, fit_scaling, CounterPoint, ScalingError, ScalingFit, MIN_FIT_POINTS,
};
pub use stats::{confidence_interval, t_quantile, RunningStats};
pub use timing::{clock_resolution, time_once, time_prepared, Direction, PreparedInput, RuntimeSample, TimingError};
