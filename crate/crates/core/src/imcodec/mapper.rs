use num_complex::Complex64;
use thiserror::Error;

use super::bits::BitBuffer;
use super::config::ImConfig;
use super::modulation::Constellation;
use super::symbol::{is_active, FrequencySymbol};
use crate::combinatorics::{CombinatoricsError, IndexCoefficients, IndexSelector, OpCounter};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("bit length mismatch: expected {expected} bits, got {actual}")]
    BitLength { expected: usize, actual: usize },
    #[error("symbol has {actual} samples, configuration needs {expected}")]
    SampleCount { expected: usize, actual: usize },
    #[error("symbol was built for {found}, demapping with {expected}")]
    ConfigMismatch { expected: String, found: String },
    /// `subblock` is 1-based.
    #[error("malformed symbol in subblock {subblock}: {reason}")]
    MalformedSymbol { subblock: usize, reason: String },
    #[error(transparent)]
    Selector(#[from] CombinatoricsError),
}

/// Maps exactly `m` bits to one frequency-domain symbol.
pub fn map_symbol(bits: &BitBuffer, cfg: &ImConfig, sel: &dyn IndexSelector) -> Result<FrequencySymbol, CodecError> {
    map_symbol_counted(bits, cfg, sel, &mut OpCounter::new())
}

/// [`map_symbol`], accumulating the selector's work into `ops`.
pub fn map_symbol_counted(
    bits: &BitBuffer,
    cfg: &ImConfig,
    sel: &dyn IndexSelector,
    ops: &mut OpCounter,
) -> Result<FrequencySymbol, CodecError> {
    if bits.len() != cfg.symbol_bits() {
        return Err(CodecError::BitLength {
            expected: cfg.symbol_bits(),
            actual: bits.len(),
        });
    }
    let constellation = Constellation::from_order(cfg.order()).expect("validated by ImConfig");
    let (n, k, p1) = (cfg.subblock_len(), cfg.active(), cfg.index_bits());
    let width = constellation.bits_per_symbol();

    let mut symbol = FrequencySymbol::zeros(*cfg);
    for beta in 0..cfg.subblocks() {
        let start = beta * cfg.subblock_bits();
        let rank = bits.read_nat(start, p1);
        let coeffs = sel.unrank(rank, n, k, ops)?;
        let mut pos = start + p1;
        for local in coeffs.ascending() {
            symbol.samples[beta * n + local] = constellation.modulate(bits.read_uint(pos, width));
            pos += width;
        }
    }
    Ok(symbol)
}

/// Inverse of [`map_symbol`] for noiseless symbols.
pub fn demap_symbol(sym: &FrequencySymbol, cfg: &ImConfig, sel: &dyn IndexSelector) -> Result<BitBuffer, CodecError> {
    demap_symbol_counted(sym, cfg, sel, &mut OpCounter::new())
}

pub fn demap_symbol_counted(
    sym: &FrequencySymbol,
    cfg: &ImConfig,
    sel: &dyn IndexSelector,
    ops: &mut OpCounter,
) -> Result<BitBuffer, CodecError> {
    if sym.config != *cfg {
        return Err(CodecError::ConfigMismatch {
            expected: describe(cfg),
            found: describe(&sym.config),
        });
    }
    if sym.samples.len() != cfg.subcarriers() {
        return Err(CodecError::SampleCount {
            expected: cfg.subcarriers(),
            actual: sym.samples.len(),
        });
    }
    let constellation = Constellation::from_order(cfg.order()).expect("validated by ImConfig");
    let (n, k, p1) = (cfg.subblock_len(), cfg.active(), cfg.index_bits());
    let width = constellation.bits_per_symbol();

    let mut out = BitBuffer::with_capacity(cfg.symbol_bits());
    let mut values = Vec::with_capacity(k);
    for beta in 0..cfg.subblocks() {
        let malformed = |reason: String| CodecError::MalformedSymbol {
            subblock: beta + 1,
            reason,
        };
        let block = sym.subblock(beta);
        let mut locals = Vec::with_capacity(k);
        values.clear();
        for (local, &s) in block.iter().enumerate() {
            if !is_active(s) {
                continue;
            }
            if locals.len() == k {
                return Err(malformed(format!("more than {k} active samples")));
            }
            let v = constellation.demodulate(s).ok_or_else(|| {
                malformed(format!(
                    "sample {} = {s} is not a constellation point",
                    beta * n + local
                ))
            })?;
            locals.push(local);
            values.push(v);
        }
        if locals.len() != k {
            return Err(malformed(format!("{} active samples, expected {k}", locals.len())));
        }
        let coeffs = IndexCoefficients::from_ascending(locals, n)?;
        let rank = sel.rank(&coeffs, n, k, ops)?;
        if rank.bit_len() > p1 as u64 {
            return Err(malformed(format!("active pattern has rank {rank}, at or above 2^{p1}")));
        }
        out.push_nat(&rank, p1);
        for &v in &values {
            out.push_uint(v, width);
        }
    }
    Ok(out)
}

fn describe(cfg: &ImConfig) -> String {
    format!(
        "N={} g={} k={} M={}",
        cfg.subcarriers(),
        cfg.subblocks(),
        cfg.active(),
        cfg.order()
    )
}

/// Symbol from real BPSK amplitudes, for tests and examples.
pub fn symbol_from_real(cfg: ImConfig, values: &[f64]) -> FrequencySymbol {
    FrequencySymbol {
        samples: values.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        config: cfg,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{LinearCombinadic, OriginalCombinadic, SelectorKind};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cfg4() -> ImConfig {
        ImConfig::new(4, 1, 2, 2).unwrap()
    }

    fn bits(s: &str) -> BitBuffer {
        s.parse().unwrap()
    }

    fn reals(sym: &FrequencySymbol) -> Vec<f64> {
        sym.samples.iter().map(|s| s.re).collect()
    }

    #[test]
    fn zeros_select_the_first_two_subcarriers() {
        let sym = map_symbol(&bits("0000"), &cfg4(), &LinearCombinadic).unwrap();
        assert_eq!(reals(&sym), vec![1.0, 1.0, 0.0, 0.0]);
        assert!(sym.samples.iter().all(|s| s.im == 0.0));
    }

    #[test]
    fn ones_select_the_outer_subcarriers() {
        // X = 3 is (3, 0) in colex order: C(3, 2) + C(0, 1)
        let sym = map_symbol(&bits("1111"), &cfg4(), &OriginalCombinadic).unwrap();
        assert_eq!(reals(&sym), vec![-1.0, 0.0, 0.0, -1.0]);
    }

    #[test]
    fn demap_inverts_the_examples() {
        for (input, expected) in [(&[1.0, 1.0, 0.0, 0.0], "0000"), (&[-1.0, 0.0, 0.0, -1.0], "1111")] {
            let sym = symbol_from_real(cfg4(), input);
            for kind in SelectorKind::ALL {
                assert_eq!(demap_symbol(&sym, &cfg4(), kind.selector()).unwrap(), bits(expected));
            }
        }
    }

    #[test]
    fn three_active_is_malformed() {
        let sym = symbol_from_real(cfg4(), &[1.0, 1.0, -1.0, 0.0]);
        let err = demap_symbol(&sym, &cfg4(), &LinearCombinadic).unwrap_err();
        assert!(matches!(err, CodecError::MalformedSymbol { subblock: 1, .. }), "{err}");
    }

    #[test]
    fn malformed_reports_the_offending_subblock() {
        let cfg = ImConfig::new(8, 2, 2, 2).unwrap();
        let good = map_symbol(&bits("00110011"), &cfg, &LinearCombinadic).unwrap();

        let mut one_active = good.clone();
        let i = one_active.active_indices()[3];
        one_active.samples[i] = Complex64::new(0.0, 0.0);
        let err = demap_symbol(&one_active, &cfg, &LinearCombinadic).unwrap_err();
        assert!(matches!(err, CodecError::MalformedSymbol { subblock: 2, .. }), "{err}");

        let mut off_grid = good.clone();
        let i = off_grid.active_indices()[0];
        off_grid.samples[i] = Complex64::new(0.5, 0.0);
        let err = demap_symbol(&off_grid, &cfg, &LinearCombinadic).unwrap_err();
        assert!(err.to_string().contains("subblock 1"), "{err}");
    }

    #[test]
    fn rank_beyond_index_bits_is_malformed() {
        // C(4, 2) = 6 but p1 = 2, so {1, 3} (rank 4) and {2, 3} (rank 5) never occur
        let sym = symbol_from_real(cfg4(), &[0.0, 1.0, 0.0, 1.0]);
        let err = demap_symbol(&sym, &cfg4(), &OriginalCombinadic).unwrap_err();
        assert!(err.to_string().contains("rank 4"), "{err}");
    }

    #[test]
    fn length_and_config_checks() {
        assert_eq!(
            map_symbol(&bits("00000"), &cfg4(), &LinearCombinadic),
            Err(CodecError::BitLength { expected: 4, actual: 5 })
        );
        let sym = symbol_from_real(cfg4(), &[1.0, 1.0, 0.0, 0.0]);
        let other = ImConfig::new(4, 1, 2, 4).unwrap();
        assert!(matches!(
            demap_symbol(&sym, &other, &LinearCombinadic),
            Err(CodecError::ConfigMismatch { .. })
        ));
        let short = symbol_from_real(cfg4(), &[1.0, 1.0, 0.0]);
        assert!(matches!(
            demap_symbol(&short, &cfg4(), &LinearCombinadic),
            Err(CodecError::SampleCount { expected: 4, actual: 3 })
        ));
    }

    #[test]
    fn qpsk_bits_follow_ascending_locals() {
        // N=4, k=2, M=4: p1 = 2, then two 2-bit QPSK fields
        let cfg = ImConfig::new(4, 1, 2, 4).unwrap();
        let sym = map_symbol(&bits("11_01_10"), &cfg, &LinearCombinadic).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert_eq!(sym.active_indices(), vec![0, 3]);
        assert_eq!(sym.samples[0], Complex64::new(h, -h));
        assert_eq!(sym.samples[3], Complex64::new(-h, h));
    }

    #[test]
    fn counted_variants_accumulate() {
        let cfg = ImConfig::optimal(64).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let b = BitBuffer::random(cfg.symbol_bits(), &mut rng);
        let mut orig = OpCounter::new();
        let mut lin = OpCounter::new();
        let s1 = map_symbol_counted(&b, &cfg, &OriginalCombinadic, &mut orig).unwrap();
        let s2 = map_symbol_counted(&b, &cfg, &LinearCombinadic, &mut lin).unwrap();
        assert_eq!(s1, s2);
        assert!(orig.coeff_updates > lin.coeff_updates);
        assert!(lin.coeff_updates <= 64 + 32);
    }

    fn grid() -> Vec<ImConfig> {
        let mut out = Vec::new();
        for n_total in (2..=64).step_by(2) {
            for g in [1, 2, 4] {
                for m in [2, 4] {
                    if n_total % g != 0 {
                        continue;
                    }
                    let n = n_total / g;
                    if let Ok(cfg) = ImConfig::new(n_total, g, (n / 2).max(1), m) {
                        out.push(cfg);
                    }
                }
            }
        }
        out
    }

    proptest! {
        #[test]
        fn roundtrip_sparsity_energy(idx in 0usize..1000, seed in any::<u64>()) {
            let configs = grid();
            let cfg = configs[idx % configs.len()];
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let b = BitBuffer::random(cfg.symbol_bits(), &mut rng);
            let orig = map_symbol(&b, &cfg, &OriginalCombinadic).unwrap();
            let lin = map_symbol(&b, &cfg, &LinearCombinadic).unwrap();
            prop_assert_eq!(&orig, &lin);
            prop_assert_eq!(lin.active_count(), cfg.subblocks() * cfg.active());
            for s in &lin.samples {
                prop_assert!(s.norm_sqr() == 0.0 || (s.norm_sqr() - 1.0).abs() < 1e-12);
            }
            for kind in SelectorKind::ALL {
                prop_assert_eq!(&demap_symbol(&lin, &cfg, kind.selector()).unwrap(), &b);
            }
        }

        #[test]
        fn subblocks_map_independently(seed in any::<u64>(), m in prop::sample::select(vec![2usize, 4])) {
            let cfg = ImConfig::new(24, 2, 6, m).unwrap();
            let half = ImConfig::new(12, 1, 6, m).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let b = BitBuffer::random(cfg.symbol_bits(), &mut rng);
            let whole = map_symbol(&b, &cfg, &LinearCombinadic).unwrap();
            let p = cfg.subblock_bits();
            let mut spliced = Vec::new();
            for beta in 0..2 {
                let part = map_symbol(&b.slice(beta * p, p), &half, &LinearCombinadic).unwrap();
                spliced.extend(part.samples);
            }
            prop_assert_eq!(whole.samples, spliced);
        }
    }
}
