//! OFDM with index modulation: a bit-exact frequency-domain mapper and
//! demapper with two interchangeable combinadic index selectors, and a
//! benchmark harness measuring how their throughput scales with the number
//! of subcarriers.
//!
//! * [`combinatorics`]: exact binomials, ranking/unranking of k-combinations
//!   in colex order (original and linear-time variants), an enumeration
//!   oracle and a cross-checking sweep.
//! * [`imcodec`]: configuration, bit accounting, modulation and the symbol
//!   mapper/demapper.
//! * [`bench`]: timing campaigns, CSV/JSON tables, kappa and scaling fits.
//! * [`exact`]: the arbitrary-precision natural numbers underneath.

pub mod bench;
pub mod combinatorics;
pub mod exact;
pub mod imcodec;

pub use combinatorics::{IndexCoefficients, IndexSelector, OpCounter, SelectorKind};
pub use exact::ExactNat;
pub use imcodec::{demap_symbol, map_symbol, BitBuffer, FrequencySymbol, ImConfig};
