//! Polar code parameters, the frozen-set file format and encoding.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::construct::Construction;
use crate::error::{Error, Result};

/// An `(N, K)` polar code. `frozen[i]` is true when u-index `i` is frozen to 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolarCode {
    n: u32,
    k: usize,
    frozen: Vec<bool>,
    construction: Option<Construction>,
}

pub(crate) fn log2_len(len: usize) -> Result<u32> {
    if len < 2 || !len.is_power_of_two() {
        return Err(Error::InvalidLength(len));
    }
    Ok(len.trailing_zeros())
}

impl PolarCode {
    /// Builds a code from an explicit frozen mask.
    pub fn from_frozen(frozen: Vec<bool>) -> Result<Self> {
        let n = log2_len(frozen.len())?;
        let k = frozen.iter().filter(|&&f| !f).count();
        if k == 0 {
            return Err(Error::DimensionOutOfRange { n: frozen.len(), k });
        }
        Ok(PolarCode {
            n,
            k,
            frozen,
            construction: None,
        })
    }

    pub(crate) fn with_construction(mut self, c: Construction) -> Self {
        self.construction = Some(c);
        self
    }

    /// Builds a code from the sorted (or unsorted) list of frozen indices.
    pub fn from_frozen_indices(len: usize, indices: &[usize]) -> Result<Self> {
        log2_len(len)?;
        let mut frozen = vec![false; len];
        for &i in indices {
            if i >= len {
                return Err(Error::FrozenFile(format!(
                    "index {i} out of range for N={len}"
                )));
            }
            if frozen[i] {
                return Err(Error::FrozenFile(format!("index {i} listed twice")));
            }
            frozen[i] = true;
        }
        Self::from_frozen(frozen)
    }

    /// `log2(N)`.
    pub fn stages(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.frozen.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frozen.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.k
    }

    pub fn rate(&self) -> f64 {
        self.k as f64 / self.len() as f64
    }

    pub fn frozen(&self) -> &[bool] {
        &self.frozen
    }

    pub fn construction(&self) -> Option<&Construction> {
        self.construction.as_ref()
    }

    pub fn frozen_indices(&self) -> Vec<usize> {
        self.positions(true)
    }

    pub fn info_indices(&self) -> Vec<usize> {
        self.positions(false)
    }

    fn positions(&self, frozen: bool) -> Vec<usize> {
        self.frozen
            .iter()
            .enumerate()
            .filter(|(_, &f)| f == frozen)
            .map(|(i, _)| i)
            .collect()
    }

    /// Places `message` on the information positions; frozen positions are 0.
    pub fn scatter(&self, message: &[u8]) -> Result<Vec<u8>> {
        if message.len() != self.k {
            return Err(Error::LengthMismatch {
                expected: self.k,
                actual: message.len(),
            });
        }
        check_bits(message)?;
        let mut u = vec![0u8; self.len()];
        let mut msg = message.iter();
        for (slot, &f) in u.iter_mut().zip(&self.frozen) {
            if !f {
                *slot = *msg.next().expect("message length checked");
            }
        }
        Ok(u)
    }

    /// The information bits of a u-domain vector.
    pub fn gather(&self, u: &[u8]) -> Vec<u8> {
        u.iter()
            .zip(&self.frozen)
            .filter(|(_, &f)| !f)
            .map(|(&b, _)| b)
            .collect()
    }

    /// Serializes to the frozen-set text format: `"N K"` on the first line,
    /// the sorted frozen indices separated by spaces on the second.
    pub fn to_frozen_text(&self) -> String {
        let mut s = format!("{} {}\n", self.len(), self.k);
        let idx = self.frozen_indices();
        for (j, i) in idx.iter().enumerate() {
            if j > 0 {
                s.push(' ');
            }
            let _ = write!(s, "{i}");
        }
        s.push('\n');
        s
    }

    pub fn from_frozen_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::FrozenFile("empty file".into()))?;
        let hdr: Vec<usize> = header
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|_| Error::FrozenFile(format!("bad header token {t:?}")))
            })
            .collect::<Result<_>>()?;
        let [len, k] = hdr[..] else {
            return Err(Error::FrozenFile(format!(
                "header must be \"N K\", got {header:?}"
            )));
        };
        let indices: Vec<usize> = lines
            .next()
            .unwrap_or("")
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|_| Error::FrozenFile(format!("bad index {t:?}")))
            })
            .collect::<Result<_>>()?;
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::FrozenFile(
                "indices must be strictly increasing".into(),
            ));
        }
        if indices.len() + k != len {
            return Err(Error::FrozenFile(format!(
                "{} frozen indices do not match N={len} K={k}",
                indices.len()
            )));
        }
        Self::from_frozen_indices(len, &indices)
    }
}

pub(crate) fn check_bits(bits: &[u8]) -> Result<()> {
    match bits.iter().position(|&b| b > 1) {
        Some(index) => Err(Error::InvalidBit {
            index,
            value: bits[index],
        }),
        None => Ok(()),
    }
}

/// Multiplies by `F^{⊗n}` over GF(2) in place with the butterfly recursion.
pub fn polar_transform_in_place(v: &mut [u8]) {
    let len = v.len();
    let mut half = 1;
    while half < len {
        for block in v.chunks_exact_mut(2 * half) {
            let (lo, hi) = block.split_at_mut(half);
            for (a, b) in lo.iter_mut().zip(hi.iter()) {
                *a ^= *b;
            }
        }
        half *= 2;
    }
}

/// `v · F^{⊗n}` over GF(2). The transform is its own inverse.
pub fn polar_transform(v: &[u8]) -> Result<Vec<u8>> {
    if v.len() != 1 {
        log2_len(v.len())?;
    }
    check_bits(v)?;
    let mut out = v.to_vec();
    polar_transform_in_place(&mut out);
    Ok(out)
}

/// Non-systematic encoding: scatter the message into `u`, then `x = u·G`.
pub fn encode(code: &PolarCode, message: &[u8]) -> Result<Vec<u8>> {
    let mut u = code.scatter(message)?;
    polar_transform_in_place(&mut u);
    Ok(u)
}
