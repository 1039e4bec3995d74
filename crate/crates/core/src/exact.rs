//! Arbitrary-precision natural numbers sized for binomial coefficients.
//!
//! [`ExactNat`] stores little-endian 64-bit limbs with no trailing zero limbs,
//! so the empty limb vector is zero and equality is structural. The hot path of
//! every combinadic algorithm is [`ExactNat::mul_div_exact`], which multiplies
//! by a small factor and divides by a small divisor that is known to divide the
//! product. The division uses the 2-adic inverse of the odd part of the divisor
//! (no hardware divide), fused into the same low-to-high pass as the multiply.

use std::cmp::Ordering;
use std::fmt;

use rand::Rng;

/// Non-negative integer of unbounded size. Arithmetic never wraps.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct ExactNat {
    limbs: Vec<u64>,
}

/// Inverse of an odd `d` modulo 2^64 (Newton iteration, 6 steps from 1 bit).
fn inverse_mod_word(d: u64) -> u64 {
    debug_assert!(d & 1 == 1);
    let mut x = d; // correct to 3 bits for odd d
    for _ in 0..5 {
        x = x.wrapping_mul(2u64.wrapping_sub(d.wrapping_mul(x)));
    }
    x
}

impl ExactNat {
    pub fn zero() -> Self {
        Self { limbs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_u64(1)
    }

    pub fn from_u64(v: u64) -> Self {
        let mut n = Self { limbs: vec![v] };
        n.normalize();
        n
    }

    pub fn from_u128(v: u128) -> Self {
        Self::from_limbs(vec![v as u64, (v >> 64) as u64])
    }

    /// Builds a value from little-endian limbs; trailing zero limbs are dropped.
    pub fn from_limbs(limbs: Vec<u64>) -> Self {
        let mut n = Self { limbs };
        n.normalize();
        n
    }

    /// 2^exp.
    pub fn pow2(exp: u64) -> Self {
        let word = (exp / 64) as usize;
        let mut limbs = vec![0u64; word + 1];
        limbs[word] = 1 << (exp % 64);
        Self { limbs }
    }

    /// Little-endian limbs, most significant limb nonzero.
    pub fn limbs(&self) -> &[u64] {
        &self.limbs
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.is_empty()
    }

    /// Number of significant bits; zero has bit length 0.
    pub fn bit_len(&self) -> u64 {
        match self.limbs.last() {
            None => 0,
            Some(&top) => self.limbs.len() as u64 * 64 - u64::from(top.leading_zeros()),
        }
    }

    pub fn to_u64(&self) -> Option<u64> {
        match self.limbs.len() {
            0 => Some(0),
            1 => Some(self.limbs[0]),
            _ => None,
        }
    }

    pub fn to_u128(&self) -> Option<u128> {
        match self.limbs.len() {
            0 => Some(0),
            1 => Some(u128::from(self.limbs[0])),
            2 => Some(u128::from(self.limbs[0]) | (u128::from(self.limbs[1]) << 64)),
            _ => None,
        }
    }

    /// Bits `[lo, lo + width)` of the value as an integer, `width <= 64`.
    pub fn bits_at(&self, lo: u64, width: u32) -> u64 {
        debug_assert!(width <= 64);
        if width == 0 {
            return 0;
        }
        let word = (lo / 64) as usize;
        let shift = (lo % 64) as u32;
        let limb = |i: usize| self.limbs.get(i).copied().unwrap_or(0);
        let mut v = limb(word) >> shift;
        if shift != 0 {
            v |= limb(word + 1) << (64 - shift);
        }
        if width < 64 {
            v &= (1u64 << width) - 1;
        }
        v
    }

    fn normalize(&mut self) {
        while let Some(&0) = self.limbs.last() {
            self.limbs.pop();
        }
    }

    /// `self = self * mul / div`, where `div` must divide `self * mul`.
    ///
    /// Panics if `div` is zero or the division is not exact.
    pub fn mul_div_exact(&mut self, mul: u64, div: u64) {
        assert!(div != 0, "division by zero");
        if mul == 0 || self.is_zero() {
            self.limbs.clear();
            return;
        }
        let shift = div.trailing_zeros();
        let odd = div >> shift;
        let inv = inverse_mod_word(odd);

        let mut mul_carry = 0u64;
        let mut borrow = 0u64;
        for limb in self.limbs.iter_mut() {
            let p = u128::from(*limb) * u128::from(mul) + u128::from(mul_carry);
            mul_carry = (p >> 64) as u64;
            let (t, under) = (p as u64).overflowing_sub(borrow);
            let q = t.wrapping_mul(inv);
            *limb = q;
            borrow = ((u128::from(q) * u128::from(odd)) >> 64) as u64 + u64::from(under);
        }
        if mul_carry != 0 || borrow != 0 {
            let (t, under) = mul_carry.overflowing_sub(borrow);
            let q = t.wrapping_mul(inv);
            let rest = ((u128::from(q) * u128::from(odd)) >> 64) as u64 + u64::from(under);
            assert!(rest == 0, "inexact division by {div}");
            self.limbs.push(q);
        }
        if shift > 0 {
            assert!(self.limbs[0] & ((1u64 << shift) - 1) == 0, "inexact division by {div}");
            let len = self.limbs.len();
            for j in 0..len {
                let hi = if j + 1 < len {
                    self.limbs[j + 1] << (64 - shift)
                } else {
                    0
                };
                self.limbs[j] = (self.limbs[j] >> shift) | hi;
            }
        }
        self.normalize();
    }

    /// `self *= mul`.
    pub fn mul_small(&mut self, mul: u64) {
        self.mul_div_exact(mul, 1);
    }

    /// `self /= div`, returning the remainder.
    pub fn div_rem_small(&mut self, div: u64) -> u64 {
        assert!(div != 0, "division by zero");
        let mut rem = 0u128;
        for limb in self.limbs.iter_mut().rev() {
            let cur = (rem << 64) | u128::from(*limb);
            *limb = (cur / u128::from(div)) as u64;
            rem = cur % u128::from(div);
        }
        self.normalize();
        rem as u64
    }

    /// `self - other`, or `None` if `other > self`.
    pub fn checked_sub(&self, other: &ExactNat) -> Option<ExactNat> {
        if *self < *other {
            return None;
        }
        let mut out = self.clone();
        out.sub_in_place(other);
        Some(out)
    }

    fn sub_in_place(&mut self, other: &ExactNat) {
        assert!(other.limbs.len() <= self.limbs.len(), "ExactNat subtraction underflow");
        let mut borrow = false;
        for (j, limb) in self.limbs.iter_mut().enumerate() {
            let rhs = match other.limbs.get(j) {
                Some(&r) => r,
                None if !borrow => break,
                None => 0,
            };
            let (t1, b1) = limb.overflowing_sub(rhs);
            let (t2, b2) = t1.overflowing_sub(u64::from(borrow));
            *limb = t2;
            borrow = b1 || b2;
        }
        assert!(!borrow, "ExactNat subtraction underflow");
        self.normalize();
    }

    /// Uniform value in `[0, bound)` by rejection on the bit length of `bound`.
    pub fn random_below<R: Rng + ?Sized>(bound: &ExactNat, rng: &mut R) -> ExactNat {
        assert!(!bound.is_zero(), "empty range");
        let bits = bound.bit_len();
        let words = bits.div_ceil(64) as usize;
        let top_bits = bits % 64;
        loop {
            let mut limbs: Vec<u64> = (0..words).map(|_| rng.gen()).collect();
            if top_bits != 0 {
                limbs[words - 1] &= (1u64 << top_bits) - 1;
            }
            let candidate = ExactNat::from_limbs(limbs);
            if candidate < *bound {
                return candidate;
            }
        }
    }

    /// Uniform value in `[0, 2^bits)`.
    pub fn random_bits<R: Rng + ?Sized>(bits: u64, rng: &mut R) -> ExactNat {
        ExactNat::random_below(&ExactNat::pow2(bits), rng)
    }
}

impl From<u64> for ExactNat {
    fn from(v: u64) -> Self {
        Self::from_u64(v)
    }
}

impl From<usize> for ExactNat {
    fn from(v: usize) -> Self {
        Self::from_u64(v as u64)
    }
}

impl Ord for ExactNat {
    fn cmp(&self, other: &Self) -> Ordering {
        self.limbs
            .len()
            .cmp(&other.limbs.len())
            .then_with(|| self.limbs.iter().rev().cmp(other.limbs.iter().rev()))
    }
}

impl PartialOrd for ExactNat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::ops::AddAssign<&ExactNat> for ExactNat {
    fn add_assign(&mut self, rhs: &ExactNat) {
        if self.limbs.len() < rhs.limbs.len() {
            self.limbs.resize(rhs.limbs.len(), 0);
        }
        let mut carry = false;
        for (j, limb) in self.limbs.iter_mut().enumerate() {
            let r = match rhs.limbs.get(j) {
                Some(&r) => r,
                None if !carry => break,
                None => 0,
            };
            let (t1, c1) = limb.overflowing_add(r);
            let (t2, c2) = t1.overflowing_add(u64::from(carry));
            *limb = t2;
            carry = c1 || c2;
        }
        if carry {
            self.limbs.push(1);
        }
    }
}

/// Panics on underflow.
impl std::ops::SubAssign<&ExactNat> for ExactNat {
    fn sub_assign(&mut self, rhs: &ExactNat) {
        self.sub_in_place(rhs);
    }
}

impl fmt::Display for ExactNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const CHUNK: u64 = 10_000_000_000_000_000_000; // 10^19
        if self.is_zero() {
            return f.pad("0");
        }
        let mut rest = self.clone();
        let mut chunks = Vec::new();
        while !rest.is_zero() {
            chunks.push(rest.div_rem_small(CHUNK));
        }
        let mut s = chunks.pop().map(|c| c.to_string()).unwrap_or_default();
        for c in chunks.iter().rev() {
            s.push_str(&format!("{c:019}"));
        }
        f.pad(&s)
    }
}

impl fmt::Debug for ExactNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactNat({self})")
    }
}
