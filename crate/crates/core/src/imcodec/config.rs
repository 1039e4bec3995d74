use serde::Serialize;
use thiserror::Error;

use crate::combinatorics::p1_bits;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("N must be at least 1")]
    NoSubcarriers,
    #[error("g must be at least 1")]
    NoSubblocks,
    #[error("g={subblocks} does not divide N={subcarriers}")]
    Indivisible { subcarriers: usize, subblocks: usize },
    #[error("k={active} must satisfy 1 <= k <= n={subblock_len}")]
    ActiveOutOfRange { active: usize, subblock_len: usize },
    #[error("M={0} is not a supported constellation size (expected 2 or 4)")]
    UnsupportedOrder(usize),
    #[error("C(n={subblock_len}, k={active}) < 2 leaves no index bits")]
    NoIndexBits { subblock_len: usize, active: usize },
    #[error("the optimal configuration needs an even N >= 2, got N={0}")]
    OddSubcarriers(usize),
}

/// Symbol-level OFDM-IM configuration: `N` subcarriers split into `g`
/// subblocks of `n = N / g`, `k` active per subblock, `M`-point constellation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ImConfig {
    subcarriers: usize,
    subblocks: usize,
    subblock_len: usize,
    active: usize,
    order: usize,
    index_bits: usize,
}

impl ImConfig {
    pub fn new(subcarriers: usize, subblocks: usize, active: usize, order: usize) -> Result<Self, ConfigError> {
        if subcarriers == 0 {
            return Err(ConfigError::NoSubcarriers);
        }
        if subblocks == 0 {
            return Err(ConfigError::NoSubblocks);
        }
        if !subcarriers.is_multiple_of(subblocks) {
            return Err(ConfigError::Indivisible { subcarriers, subblocks });
        }
        let subblock_len = subcarriers / subblocks;
        if active == 0 || active > subblock_len {
            return Err(ConfigError::ActiveOutOfRange { active, subblock_len });
        }
        if !matches!(order, 2 | 4) {
            return Err(ConfigError::UnsupportedOrder(order));
        }
        let index_bits = p1_bits(subblock_len, active);
        if index_bits == 0 {
            return Err(ConfigError::NoIndexBits { subblock_len, active });
        }
        Ok(Self {
            subcarriers,
            subblocks,
            subblock_len,
            active,
            order,
            index_bits,
        })
    }

    /// `g = 1`, `k = N / 2`, `M = 2`: the configuration with the largest
    /// spectral-efficiency gain over plain OFDM.
    pub fn optimal(subcarriers: usize) -> Result<Self, ConfigError> {
        if subcarriers < 2 || !subcarriers.is_multiple_of(2) {
            return Err(ConfigError::OddSubcarriers(subcarriers));
        }
        Self::new(subcarriers, 1, subcarriers / 2, 2)
    }

    /// `N`
    pub fn subcarriers(&self) -> usize {
        self.subcarriers
    }

    /// `g`
    pub fn subblocks(&self) -> usize {
        self.subblocks
    }

    /// `n = N / g`
    pub fn subblock_len(&self) -> usize {
        self.subblock_len
    }

    /// `k`
    pub fn active(&self) -> usize {
        self.active
    }

    /// `M`
    pub fn order(&self) -> usize {
        self.order
    }

    /// `log2 M`
    pub fn bits_per_active(&self) -> usize {
        self.order.trailing_zeros() as usize
    }

    /// `p1 = floor(log2 C(n, k))`
    pub fn index_bits(&self) -> usize {
        self.index_bits
    }

    /// `p2 = k log2 M`
    pub fn modulation_bits(&self) -> usize {
        self.active * self.bits_per_active()
    }

    /// `p = p1 + p2`
    pub fn subblock_bits(&self) -> usize {
        self.index_bits + self.modulation_bits()
    }

    /// `m = g p`
    pub fn symbol_bits(&self) -> usize {
        self.subblocks * self.subblock_bits()
    }
}

/// Per-subblock and per-symbol bit accounting.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BitAccounting {
    pub p1: usize,
    pub p2: usize,
    pub m: usize,
    pub subcarriers: usize,
    /// `m / N`, the spectral-efficiency gain over BPSK OFDM.
    pub se_gain: f64,
}

impl BitAccounting {
    /// `m / N` truncated to two decimals, in exact integer arithmetic.
    pub fn se_gain_2dp(&self) -> String {
        format_ratio_2dp(self.m, self.subcarriers)
    }
}

pub fn derive_params(cfg: &ImConfig) -> BitAccounting {
    BitAccounting {
        p1: cfg.index_bits(),
        p2: cfg.modulation_bits(),
        m: cfg.symbol_bits(),
        subcarriers: cfg.subcarriers(),
        se_gain: cfg.symbol_bits() as f64 / cfg.subcarriers() as f64,
    }
}

/// `num / den` truncated (not rounded) to two decimals.
pub fn format_ratio_2dp(num: usize, den: usize) -> String {
    let hundredths = num as u128 * 100 / den as u128;
    format!("{}.{:02}", hundredths / 100, hundredths % 100)
}
