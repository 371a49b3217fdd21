//! Fixed-point LLRs in the `(C, L, F)` format: `C` bits for channel values,
//! `L` bits for internal values and `F` fraction bits shared by both.
//!
//! Values are sign-magnitude with a symmetric range `±(2^(bits-1) - 1)`, so the
//! compare path (sign-magnitude) and the add path (two's complement) of the
//! processing unit agree on every representable value.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::llr::LlrDomain;

/// Widest format accepted by [`QuantSpec::new`].
pub const MAX_BITS: u32 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuantSpec {
    channel_bits: u32,
    internal_bits: u32,
    frac_bits: u32,
}

impl QuantSpec {
    /// The scheme the reference hardware uses.
    pub const HARDWARE: QuantSpec = QuantSpec {
        channel_bits: 4,
        internal_bits: 5,
        frac_bits: 0,
    };

    pub fn new(channel_bits: u32, internal_bits: u32, frac_bits: u32) -> Result<Self> {
        if channel_bits < 1 || channel_bits > internal_bits || internal_bits > MAX_BITS {
            return Err(Error::InvalidQuantSpec(format!(
                "need 1 <= C <= L <= {MAX_BITS}, got C={channel_bits} L={internal_bits}"
            )));
        }
        if frac_bits >= channel_bits {
            return Err(Error::InvalidQuantSpec(format!(
                "need F < C, got F={frac_bits} C={channel_bits}"
            )));
        }
        Ok(QuantSpec {
            channel_bits,
            internal_bits,
            frac_bits,
        })
    }

    /// A 63-bit integer format that never saturates in practice. Used to
    /// compare fixed-point decoding against float decoding on integer inputs.
    pub fn wide() -> Self {
        QuantSpec {
            channel_bits: 63,
            internal_bits: 63,
            frac_bits: 0,
        }
    }

    pub fn channel_bits(&self) -> u32 {
        self.channel_bits
    }

    pub fn internal_bits(&self) -> u32 {
        self.internal_bits
    }

    pub fn frac_bits(&self) -> u32 {
        self.frac_bits
    }

    pub fn channel_max(&self) -> u64 {
        (1u64 << (self.channel_bits - 1)) - 1
    }

    pub fn internal_max(&self) -> u64 {
        (1u64 << (self.internal_bits - 1)) - 1
    }

    fn scale(&self) -> f64 {
        (1u64 << self.frac_bits) as f64
    }
}

impl fmt::Display for QuantSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{}",
            self.channel_bits, self.internal_bits, self.frac_bits
        )
    }
}

impl FromStr for QuantSpec {
    type Err = Error;

    /// Parses `"C,L,F"`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::InvalidQuantSpec(format!(
                "expected C,L,F, got {s:?}"
            )));
        }
        let mut v = [0u32; 3];
        for (slot, p) in v.iter_mut().zip(&parts) {
            *slot = p
                .parse()
                .map_err(|_| Error::InvalidQuantSpec(format!("not an integer: {p:?}")))?;
        }
        QuantSpec::new(v[0], v[1], v[2])
    }
}

/// A fixed-point LLR in sign-magnitude form. The raw integer is the value
/// scaled by `2^F`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub struct QLlr {
    negative: bool,
    magnitude: u64,
}

impl QLlr {
    /// Builds a value from a raw integer; zero is `+0`.
    pub fn from_raw(raw: i64) -> Self {
        QLlr {
            negative: raw < 0,
            magnitude: raw.unsigned_abs(),
        }
    }

    pub fn from_parts(negative: bool, magnitude: u64) -> Self {
        QLlr {
            negative,
            magnitude,
        }
    }

    pub fn raw(self) -> i64 {
        if self.negative {
            -(self.magnitude as i64)
        } else {
            self.magnitude as i64
        }
    }

    pub fn is_negative(self) -> bool {
        self.negative
    }

    pub fn magnitude(self) -> u64 {
        self.magnitude
    }

    pub fn to_f64(self, spec: &QuantSpec) -> f64 {
        let v = self.magnitude as f64 / spec.scale();
        if self.negative {
            -v
        } else {
            v
        }
    }
}

fn saturate(raw: i64, max: u64, zero_negative: bool) -> QLlr {
    let m = raw.unsigned_abs().min(max);
    if m == 0 {
        QLlr::from_parts(zero_negative, 0)
    } else {
        QLlr::from_parts(raw < 0, m)
    }
}

/// Rounds half away from zero to `F` fraction bits and saturates to the
/// `C`-bit channel range. The sign of `x` is kept when the result is zero.
pub fn quantize_channel(x: f64, spec: &QuantSpec) -> QLlr {
    let scaled = (x * spec.scale()).round();
    let max = spec.channel_max();
    let m = if scaled.abs() >= max as f64 {
        max
    } else {
        scaled.abs() as u64
    };
    QLlr::from_parts(x.is_sign_negative(), m)
}

pub fn quantize_frame(llr: &[f64], spec: &QuantSpec) -> Vec<QLlr> {
    llr.iter().map(|&x| quantize_channel(x, spec)).collect()
}

pub fn dequantize(q: QLlr, spec: &QuantSpec) -> f64 {
    q.to_f64(spec)
}

/// Integer add saturated to the `L`-bit internal range. A zero sum takes the
/// sign of `a`.
pub fn sat_add(a: QLlr, b: QLlr, spec: &QuantSpec) -> QLlr {
    saturate(
        a.raw().saturating_add(b.raw()),
        spec.internal_max(),
        a.negative,
    )
}

/// Saturating fixed-point arithmetic for the decoders.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuantDomain {
    pub spec: QuantSpec,
}

impl QuantDomain {
    pub fn new(spec: QuantSpec) -> Self {
        QuantDomain { spec }
    }
}

impl LlrDomain for QuantDomain {
    type Value = QLlr;

    #[inline]
    fn f(&self, a: QLlr, b: QLlr) -> QLlr {
        QLlr::from_parts(a.negative ^ b.negative, a.magnitude.min(b.magnitude))
    }

    #[inline]
    fn g(&self, beta: u8, near: QLlr, far: QLlr) -> QLlr {
        let far = if beta == 0 {
            far
        } else {
            QLlr::from_parts(!far.negative, far.magnitude)
        };
        sat_add(near, far, &self.spec)
    }

    #[inline]
    fn is_negative(&self, a: QLlr) -> bool {
        a.negative
    }

    #[inline]
    fn cmp_magnitude(&self, a: QLlr, b: QLlr) -> Ordering {
        a.magnitude.cmp(&b.magnitude)
    }

    fn zero(&self) -> QLlr {
        QLlr::default()
    }
}
