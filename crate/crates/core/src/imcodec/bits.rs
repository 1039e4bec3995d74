//! Bit sequences with MSB-first field extraction.
//!
//! Bits are packed MSB-first into bytes, the same layout as the on-disk
//! bitstream format. Padding bits past `len` are kept at zero so equality and
//! serialization are structural.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use thiserror::Error;

use crate::exact::ExactNat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BitBufferError {
    #[error("{nbits} bits need {expected} bytes, got {actual}")]
    ByteCount {
        nbits: usize,
        expected: usize,
        actual: usize,
    },
    #[error("invalid bit character {0:?}")]
    InvalidChar(char),
}

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BitBuffer {
    bytes: Vec<u8>,
    len: usize,
}

impl BitBuffer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(bits: usize) -> Self {
        Self {
            bytes: Vec::with_capacity(bits.div_ceil(8)),
            len: 0,
        }
    }

    /// Takes the first `nbits` bits of `bytes`; the byte count must be exactly
    /// `ceil(nbits / 8)`. Trailing pad bits are ignored.
    pub fn from_bytes(bytes: &[u8], nbits: usize) -> Result<Self, BitBufferError> {
        let expected = nbits.div_ceil(8);
        if bytes.len() != expected {
            return Err(BitBufferError::ByteCount {
                nbits,
                expected,
                actual: bytes.len(),
            });
        }
        let mut out = Self {
            bytes: bytes.to_vec(),
            len: nbits,
        };
        out.clear_padding();
        Ok(out)
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut out = Self::with_capacity(bits.len());
        for &b in bits {
            out.push(b);
        }
        out
    }

    /// `len` uniformly random bits.
    pub fn random<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Self {
        let mut bytes = vec![0u8; len.div_ceil(8)];
        rng.fill(bytes.as_mut_slice());
        let mut out = Self { bytes, len };
        out.clear_padding();
        out
    }

    fn clear_padding(&mut self) {
        let used = self.len % 8;
        if used != 0 {
            if let Some(last) = self.bytes.last_mut() {
                *last &= 0xFFu8 << (8 - used);
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Packed bytes, MSB-first, zero padded.
    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        self.bytes[i / 8] & (0x80 >> (i % 8)) != 0
    }

    pub fn push(&mut self, bit: bool) {
        if self.len.is_multiple_of(8) {
            self.bytes.push(0);
        }
        if bit {
            self.bytes[self.len / 8] |= 0x80 >> (self.len % 8);
        }
        self.len += 1;
    }

    /// Appends the low `width` bits of `value`, most significant first.
    pub fn push_uint(&mut self, value: u64, width: usize) {
        assert!(width <= 64);
        debug_assert!(width == 64 || value >> width == 0, "{value} wider than {width} bits");
        let mut remaining = width;
        while remaining > 0 {
            let offset = self.len % 8;
            if offset == 0 {
                self.bytes.push(0);
            }
            let room = 8 - offset;
            let take = room.min(remaining);
            let chunk = ((value >> (remaining - take)) & ((1u64 << take) - 1)) as u8;
            let last = self.bytes.len() - 1;
            self.bytes[last] |= chunk << (room - take);
            self.len += take;
            remaining -= take;
        }
    }

    /// The `width`-bit field starting at `pos`, read MSB-first.
    pub fn read_uint(&self, pos: usize, width: usize) -> u64 {
        assert!(width <= 64);
        assert!(
            pos + width <= self.len,
            "field [{pos}, {}) past length {}",
            pos + width,
            self.len
        );
        let mut value = 0u64;
        let mut at = pos;
        let mut remaining = width;
        while remaining > 0 {
            let offset = at % 8;
            let room = 8 - offset;
            let take = room.min(remaining);
            let byte = u64::from(self.bytes[at / 8]);
            let chunk = (byte >> (room - take)) & ((1u64 << take) - 1);
            // take < 64 here, the shift cannot overflow
            value = (value << take) | chunk;
            at += take;
            remaining -= take;
        }
        value
    }

    /// The `width`-bit field starting at `pos` as an exact integer, MSB-first.
    pub fn read_nat(&self, pos: usize, width: usize) -> ExactNat {
        let words = width.div_ceil(64);
        let mut limbs = Vec::with_capacity(words);
        let mut end = pos + width;
        while end > pos {
            let start = end.saturating_sub(64).max(pos);
            limbs.push(self.read_uint(start, end - start));
            end = start;
        }
        ExactNat::from_limbs(limbs)
    }

    /// Appends `value` as exactly `width` bits, MSB-first.
    ///
    /// Panics if `value >= 2^width`.
    pub fn push_nat(&mut self, value: &ExactNat, width: usize) {
        assert!(
            value.bit_len() <= width as u64,
            "value needs {} bits, field has {width}",
            value.bit_len()
        );
        let mut remaining = width;
        while remaining > 0 {
            let take = match remaining % 64 {
                0 => 64,
                r => r,
            };
            let lo = remaining - take;
            self.push_uint(value.bits_at(lo as u64, take as u32), take);
            remaining = lo;
        }
    }

    /// Copy of bits `[start, start + len)`.
    pub fn slice(&self, start: usize, len: usize) -> BitBuffer {
        let mut out = BitBuffer::with_capacity(len);
        out.extend_from(self, start, len);
        out
    }

    /// Appends bits `[start, start + len)` of `other`.
    pub fn extend_from(&mut self, other: &BitBuffer, start: usize, len: usize) {
        let mut at = start;
        let end = start + len;
        while at < end {
            let take = (end - at).min(64);
            self.push_uint(other.read_uint(at, take), take);
            at += take;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }
}

impl fmt::Display for BitBuffer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitBuffer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitBuffer({self})")
    }
}

/// Parses a string of `0`/`1`; `_` and whitespace are ignored.
impl FromStr for BitBuffer {
    type Err = BitBufferError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut out = BitBuffer::new();
        for ch in s.chars() {
            match ch {
                '0' => out.push(false),
                '1' => out.push(true),
                '_' => {}
                c if c.is_whitespace() => {}
                c => return Err(BitBufferError::InvalidChar(c)),
            }
        }
        Ok(out)
    }
}
