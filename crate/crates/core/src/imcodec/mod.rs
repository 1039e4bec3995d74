//! OFDM-IM frequency-domain mapper and demapper.
//!
//! Each subblock of `n = N / g` subcarriers consumes `p = p1 + p2` input
//! bits. The first `p1` bits, read MSB-first, form a rank `X` that the index
//! selector unranks into `k` active subcarriers. The remaining `p2 = k log2 M`
//! bits are modulated `log2 M` at a time onto the active subcarriers in
//! ascending index order. Inactive subcarriers carry exactly zero.

mod bits;
mod config;
mod mapper;
mod modulation;
mod symbol;

pub use bits::{BitBuffer, BitBufferError};
pub use config::{derive_params, format_ratio_2dp, BitAccounting, ConfigError, ImConfig};
pub use mapper::{demap_symbol, demap_symbol_counted, map_symbol, map_symbol_counted, symbol_from_real, CodecError};
pub use modulation::{modulate, ComplexSample, Constellation, DEMAP_TOLERANCE};
pub use symbol::{FrequencySymbol, SymbolParseError};

pub use crate::combinatorics::{IndexSelector, SelectorKind};
