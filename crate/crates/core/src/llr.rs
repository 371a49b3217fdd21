//! LLR arithmetic shared by every decoder.
//!
//! LLRs are sign-magnitude quantities: a positive value favours bit 0 and the
//! hard decision reads the sign bit. Zero keeps its sign, so `+0` decides 0 and
//! `-0` decides 1. Three rules fix the behaviour on zeros and ties, and every
//! decoder in the crate follows them:
//!
//! - `f` takes the XOR of the input signs and the smaller magnitude, so the
//!   sign survives even when the magnitude is zero.
//! - `g` returns a zero result with the sign of its near operand
//!   (`α_v[i]`, the right-half input).
//! - comparator trees keep their first input on equal magnitudes.
//!
//! With these rules the fast constituent-node decoders reproduce the plain
//! SC recursion bit for bit, including on quantized frames where ties are
//! common.

use std::cmp::Ordering;
use std::fmt::Debug;

use crate::error::{Error, Result};

/// An LLR number system: the value type plus the decoder primitives on it.
pub trait LlrDomain: Sync {
    type Value: Copy + PartialEq + Debug + Send + Sync;

    /// Min-sum check-node update.
    fn f(&self, a: Self::Value, b: Self::Value) -> Self::Value;

    /// Variable-node update: `near + far` when `beta == 0`, `near - far`
    /// otherwise.
    fn g(&self, beta: u8, near: Self::Value, far: Self::Value) -> Self::Value;

    /// The sign bit.
    fn is_negative(&self, a: Self::Value) -> bool;

    fn cmp_magnitude(&self, a: Self::Value, b: Self::Value) -> Ordering;

    fn zero(&self) -> Self::Value;

    #[inline]
    fn hard_decision(&self, a: Self::Value) -> u8 {
        self.is_negative(a) as u8
    }
}

/// Real-valued LLRs in `f64`.
#[derive(Debug, Clone, Copy, Default)]
pub struct FloatDomain;

impl LlrDomain for FloatDomain {
    type Value = f64;

    #[inline]
    fn f(&self, a: f64, b: f64) -> f64 {
        f_min_sum(a, b)
    }

    #[inline]
    fn g(&self, beta: u8, near: f64, far: f64) -> f64 {
        g_function(beta, near, far)
    }

    #[inline]
    fn is_negative(&self, a: f64) -> bool {
        a.is_sign_negative()
    }

    #[inline]
    fn cmp_magnitude(&self, a: f64, b: f64) -> Ordering {
        a.abs().total_cmp(&b.abs())
    }

    fn zero(&self) -> f64 {
        0.0
    }
}

/// `sign(a)·sign(b)·min(|a|, |b|)`.
#[inline]
pub fn f_min_sum(a: f64, b: f64) -> f64 {
    let m = a.abs().min(b.abs());
    if a.is_sign_negative() != b.is_sign_negative() {
        -m
    } else {
        m
    }
}

/// `(-1)^beta · far + near`. `far` is the left-half input `α_v[i - N/2]`.
#[inline]
pub fn g_function(beta: u8, near: f64, far: f64) -> f64 {
    let r = if beta == 0 { near + far } else { near - far };
    if r == 0.0 {
        0.0f64.copysign(near)
    } else {
        r
    }
}

/// 0 for a non-negative LLR, 1 otherwise. `-0.0` decides 1.
#[inline]
pub fn hard_decision(a: f64) -> u8 {
    a.is_sign_negative() as u8
}

/// Merges the partial sums of two sibling nodes into the parent's:
/// `[beta_l ⊕ beta_r, beta_r]`.
pub fn combine_beta(beta_l: &[u8], beta_r: &[u8]) -> Result<Vec<u8>> {
    if beta_l.len() != beta_r.len() {
        return Err(Error::LengthMismatch {
            expected: beta_l.len(),
            actual: beta_r.len(),
        });
    }
    let mut out = Vec::with_capacity(2 * beta_l.len());
    out.extend(beta_l.iter().zip(beta_r).map(|(l, r)| l ^ r));
    out.extend_from_slice(beta_r);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_examples() {
        assert_eq!(f_min_sum(2.0, -3.0), -2.0);
        assert_eq!(f_min_sum(-5.0, -1.0), 1.0);
        for x in [-4.0, -0.5, 0.0, 3.0] {
            assert_eq!(f_min_sum(0.0, x), 0.0);
        }
    }

    #[test]
    fn f_keeps_sign_of_zero_magnitude() {
        assert!(f_min_sum(0.0, -3.0).is_sign_negative());
        assert!(!f_min_sum(-0.0, -3.0).is_sign_negative());
    }

    #[test]
    fn g_examples() {
        assert_eq!(g_function(0, 3.0, 2.0), 5.0);
        assert_eq!(g_function(1, 3.0, 2.0), 1.0);
        assert_eq!(g_function(1, 0.0, 0.0), 0.0);
    }

    #[test]
    fn g_zero_result_takes_near_sign() {
        assert!(g_function(0, -2.0, 2.0).is_sign_negative());
        assert!(!g_function(1, 2.0, 2.0).is_sign_negative());
        assert!(g_function(0, -0.0, 0.0).is_sign_negative());
    }

    #[test]
    fn hard_decision_examples() {
        assert_eq!(hard_decision(0.0), 0);
        assert_eq!(hard_decision(-0.5), 1);
        assert_eq!(hard_decision(7.0), 0);
        assert_eq!(hard_decision(-0.0), 1);
    }

    #[test]
    fn combine_examples() {
        assert_eq!(combine_beta(&[1, 0], &[1, 1]).unwrap(), vec![0, 1, 1, 1]);
        assert_eq!(
            combine_beta(&[1, 0, 1], &[0, 0, 0]).unwrap(),
            vec![1, 0, 1, 0, 0, 0]
        );
        assert_eq!(combine_beta(&[1], &[1]).unwrap(), vec![0, 1]);
        assert!(combine_beta(&[1], &[1, 0]).is_err());
    }
}
