//! Bit-level number-system paths of a PU.
//!
//! LLR registers hold sign-magnitude words of `L` bits. The compare path
//! (f function, SPC minimum search) works on sign and magnitude directly.
//! The add path (g function, REP accumulation) converts both operands to
//! two's complement, adds, saturates, and converts back. Two's complement
//! cannot represent `-0`, so stored words stay sign-magnitude: the sign of a
//! zero-magnitude f output is the running parity of an SPC search.

use crate::quant::{QLlr, QuantSpec};

/// Conversion modules per PU: two sign-magnitude → two's-complement
/// converters in front of the adder and one back after it.
pub const CONVERTERS_PER_PU: usize = 3;

pub fn to_sign_magnitude(q: QLlr, bits: u32) -> u32 {
    let mag_mask = (1u32 << (bits - 1)) - 1;
    debug_assert!(q.magnitude() <= mag_mask as u64);
    ((q.is_negative() as u32) << (bits - 1)) | (q.magnitude() as u32 & mag_mask)
}

pub fn from_sign_magnitude(word: u32, bits: u32) -> QLlr {
    let mag_mask = (1u32 << (bits - 1)) - 1;
    QLlr::from_parts((word >> (bits - 1)) & 1 == 1, (word & mag_mask) as u64)
}

pub fn to_twos_complement(raw: i64, bits: u32) -> u32 {
    (raw as u32) & ((1u64 << bits) - 1) as u32
}

pub fn from_twos_complement(word: u32, bits: u32) -> i64 {
    let shift = 32 - bits;
    (((word << shift) as i32) >> shift) as i64
}

/// f datapath on two `L`-bit sign-magnitude words. Returns the output word
/// (XOR of signs, smaller magnitude) and whether input 2 had the strictly
/// smaller magnitude.
pub fn compare_path(a: u32, b: u32, bits: u32) -> (u32, bool) {
    let sign_bit = 1u32 << (bits - 1);
    let mag_mask = sign_bit - 1;
    let (ma, mb) = (a & mag_mask, b & mag_mask);
    let b_wins = mb < ma;
    let sign = (a ^ b) & sign_bit;
    (sign | if b_wins { mb } else { ma }, b_wins)
}

/// Add datapath: `near + far` (or `near - far` when `subtract`), saturated to
/// the symmetric `L`-bit range. A zero result keeps the sign of `near`.
pub fn add_path(near: u32, far: u32, subtract: bool, spec: &QuantSpec) -> u32 {
    let bits = spec.internal_bits();
    let wide = bits + 2;
    let near_q = from_sign_magnitude(near, bits);
    let mut far_q = from_sign_magnitude(far, bits);
    if subtract {
        far_q = QLlr::from_parts(!far_q.is_negative(), far_q.magnitude());
    }
    let x = to_twos_complement(near_q.raw(), wide);
    let y = to_twos_complement(far_q.raw(), wide);
    let sum = from_twos_complement(x.wrapping_add(y) & ((1u64 << wide) - 1) as u32, wide);
    let max = spec.internal_max() as i64;
    let sat = sum.clamp(-max, max);
    let out = if sat == 0 {
        QLlr::from_parts(near_q.is_negative(), 0)
    } else {
        QLlr::from_raw(sat)
    };
    to_sign_magnitude(out, bits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twos_complement_round_trip() {
        for bits in [4, 5, 7] {
            let max = (1i64 << (bits - 1)) - 1;
            for v in -max - 1..=max {
                assert_eq!(from_twos_complement(to_twos_complement(v, bits), bits), v);
            }
        }
    }

    #[test]
    fn sign_magnitude_round_trip() {
        for neg in [false, true] {
            for m in 0..16 {
                let q = QLlr::from_parts(neg, m);
                assert_eq!(from_sign_magnitude(to_sign_magnitude(q, 5), 5), q);
            }
        }
    }
}
