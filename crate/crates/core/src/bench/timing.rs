//! Single timed (de)mapping calls.
//!
//! Input generation and validation stay outside the timed region. The output
//! is folded into a checksum passed through `black_box` so the call cannot
//! be optimised away.

use std::fmt;
use std::hint::black_box;
use std::str::FromStr;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::combinatorics::{IndexSelector, LinearCombinadic, OpCounter};
use crate::imcodec::{
    demap_symbol_counted, map_symbol, map_symbol_counted, BitBuffer, CodecError, FrequencySymbol, ImConfig,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Map,
    Demap,
}

impl Direction {
    pub const ALL: [Direction; 2] = [Direction::Map, Direction::Demap];

    pub fn name(self) -> &'static str {
        match self {
            Direction::Map => "map",
            Direction::Demap => "demap",
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Direction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "map" | "mapper" => Ok(Direction::Map),
            "demap" | "demapper" => Ok(Direction::Demap),
            other => Err(format!("unknown direction '{other}' (expected map or demap)")),
        }
    }
}

#[derive(Debug, Error)]
pub enum TimingError {
    #[error("clock resolution {resolution:?} exceeds 10% of the measured {duration:?}; sample rejected")]
    CoarseClock { resolution: Duration, duration: Duration },
    #[error(transparent)]
    Codec(#[from] CodecError),
}

/// One timed call and the selector work it performed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RuntimeSample {
    pub duration: Duration,
    pub op_counts: OpCounter,
}

/// Untimed input for one call: bits to map, or a symbol to demap.
#[derive(Debug, Clone)]
pub enum PreparedInput {
    Map(BitBuffer),
    Demap(FrequencySymbol),
}

impl PreparedInput {
    /// Seeded random input. Demap inputs are produced by mapping random bits
    /// with the linear selector, so every selector sees the same symbol.
    pub fn generate(cfg: &ImConfig, seed: u64, direction: Direction) -> Result<Self, CodecError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let bits = BitBuffer::random(cfg.symbol_bits(), &mut rng);
        Ok(match direction {
            Direction::Map => PreparedInput::Map(bits),
            Direction::Demap => PreparedInput::Demap(map_symbol(&bits, cfg, &LinearCombinadic)?),
        })
    }
}

/// Generates the input for `seed` and times one call on it.
pub fn time_once(
    cfg: &ImConfig,
    sel: &dyn IndexSelector,
    seed: u64,
    direction: Direction,
) -> Result<RuntimeSample, TimingError> {
    let input = PreparedInput::generate(cfg, seed, direction)?;
    time_prepared(&input, cfg, sel)
}

pub fn time_prepared(
    input: &PreparedInput,
    cfg: &ImConfig,
    sel: &dyn IndexSelector,
) -> Result<RuntimeSample, TimingError> {
    let mut ops = OpCounter::new();
    let (duration, checksum) = match input {
        PreparedInput::Map(bits) => {
            let start = Instant::now();
            let out = map_symbol_counted(black_box(bits), cfg, sel, &mut ops);
            let duration = start.elapsed();
            (duration, symbol_checksum(&out?))
        }
        PreparedInput::Demap(sym) => {
            let start = Instant::now();
            let out = demap_symbol_counted(black_box(sym), cfg, sel, &mut ops);
            let duration = start.elapsed();
            (duration, bits_checksum(&out?))
        }
    };
    black_box(checksum);
    let resolution = clock_resolution();
    if duration.is_zero() || resolution * 10 > duration {
        return Err(TimingError::CoarseClock { resolution, duration });
    }
    Ok(RuntimeSample {
        duration,
        op_counts: ops,
    })
}

fn symbol_checksum(sym: &FrequencySymbol) -> u64 {
    sym.samples.iter().fold(0u64, |acc, s| {
        acc.rotate_left(5) ^ s.re.to_bits() ^ s.im.to_bits().rotate_left(32)
    })
}

fn bits_checksum(bits: &BitBuffer) -> u64 {
    bits.as_bytes()
        .iter()
        .fold(bits.len() as u64, |acc, &b| acc.rotate_left(7) ^ u64::from(b))
}

/// Resolution of the monotonic clock behind [`Instant`], measured once.
pub fn clock_resolution() -> Duration {
    static RES: OnceLock<Duration> = OnceLock::new();
    *RES.get_or_init(|| os_resolution().unwrap_or_else(empirical_resolution))
}

#[cfg(unix)]
fn os_resolution() -> Option<Duration> {
    let mut ts = libc::timespec { tv_sec: 0, tv_nsec: 0 };
    // SAFETY: `ts` is a valid, writable timespec for the duration of the call.
    let rc = unsafe { libc::clock_getres(libc::CLOCK_MONOTONIC, &mut ts) };
    (rc == 0).then(|| Duration::new(ts.tv_sec as u64, ts.tv_nsec as u32))
}

#[cfg(not(unix))]
fn os_resolution() -> Option<Duration> {
    None
}

/// Smallest nonzero step observed between consecutive clock reads.
fn empirical_resolution() -> Duration {
    let mut best = Duration::MAX;
    for _ in 0..1000 {
        let a = Instant::now();
        let mut b = Instant::now();
        while b == a {
            b = Instant::now();
        }
        best = best.min(b - a);
    }
    best
}
