//! Unit-energy BPSK and Gray-coded QPSK.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use super::config::ConfigError;

pub type ComplexSample = Complex64;

/// Distance below which a sample counts as zero or as a constellation point.
pub const DEMAP_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Constellation {
    Bpsk,
    Qpsk,
}

impl Constellation {
    pub fn from_order(order: usize) -> Result<Self, ConfigError> {
        match order {
            2 => Ok(Constellation::Bpsk),
            4 => Ok(Constellation::Qpsk),
            m => Err(ConfigError::UnsupportedOrder(m)),
        }
    }

    pub fn order(self) -> usize {
        match self {
            Constellation::Bpsk => 2,
            Constellation::Qpsk => 4,
        }
    }

    pub fn bits_per_symbol(self) -> usize {
        match self {
            Constellation::Bpsk => 1,
            Constellation::Qpsk => 2,
        }
    }

    /// Maps the low `bits_per_symbol` bits of `value` (MSB-first).
    ///
    /// QPSK: the first bit picks the sign of the real part, the second the
    /// sign of the imaginary part, 0 meaning positive. This is Gray coded.
    pub fn modulate(self, value: u64) -> ComplexSample {
        let sign = |bit: u64| if bit == 0 { 1.0 } else { -1.0 };
        match self {
            Constellation::Bpsk => Complex64::new(sign(value & 1), 0.0),
            Constellation::Qpsk => {
                Complex64::new(sign((value >> 1) & 1) * FRAC_1_SQRT_2, sign(value & 1) * FRAC_1_SQRT_2)
            }
        }
    }

    /// Inverse of [`modulate`](Self::modulate) for points within
    /// [`DEMAP_TOLERANCE`]; `None` for anything else.
    pub fn demodulate(self, sample: ComplexSample) -> Option<u64> {
        let value = match self {
            Constellation::Bpsk => u64::from(sample.re < 0.0),
            Constellation::Qpsk => (u64::from(sample.re < 0.0) << 1) | u64::from(sample.im < 0.0),
        };
        ((sample - self.modulate(value)).norm() <= DEMAP_TOLERANCE).then_some(value)
    }
}

/// Modulates exactly `log2 M` bits given as booleans, first bit most significant.
pub fn modulate(bits: &[bool], order: usize) -> Result<ComplexSample, ConfigError> {
    let c = Constellation::from_order(order)?;
    assert_eq!(
        bits.len(),
        c.bits_per_symbol(),
        "M={order} takes {} bits",
        c.bits_per_symbol()
    );
    let value = bits.iter().fold(0u64, |acc, &b| (acc << 1) | u64::from(b));
    Ok(c.modulate(value))
}
