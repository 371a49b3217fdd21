//! Plain successive-cancellation decoding.
//!
//! This is the correctness reference for [`crate::fast_ssc`] and
//! [`crate::hw`]: a direct depth-first recursion over the full decode tree
//! with no pruning and no scratch reuse.

use serde::{Deserialize, Serialize};

use crate::code::PolarCode;
use crate::error::{Error, Result};
use crate::llr::LlrDomain;

/// Output of a polar decoder.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decoded {
    /// Estimated u-domain vector, frozen positions included.
    pub u_hat: Vec<u8>,
    /// Re-encoding of `u_hat`, the estimated codeword.
    pub x_hat: Vec<u8>,
}

pub(crate) fn check_frame<T>(code: &PolarCode, llr: &[T]) -> Result<()> {
    if llr.len() != code.len() {
        return Err(Error::LengthMismatch {
            expected: code.len(),
            actual: llr.len(),
        });
    }
    Ok(())
}

pub fn sc_decode<D: LlrDomain>(domain: &D, code: &PolarCode, llr: &[D::Value]) -> Result<Decoded> {
    check_frame(code, llr)?;
    let mut u_hat = Vec::with_capacity(code.len());
    let x_hat = decode_node(domain, code.frozen(), llr, &mut u_hat);
    Ok(Decoded { u_hat, x_hat })
}

/// Decodes the subtree whose leaves carry `frozen`, appending the leaf
/// decisions to `u_hat` and returning the subtree's partial sums.
fn decode_node<D: LlrDomain>(
    domain: &D,
    frozen: &[bool],
    alpha: &[D::Value],
    u_hat: &mut Vec<u8>,
) -> Vec<u8> {
    if alpha.len() == 1 {
        let bit = if frozen[0] {
            0
        } else {
            domain.hard_decision(alpha[0])
        };
        u_hat.push(bit);
        return vec![bit];
    }
    let half = alpha.len() / 2;
    let (far, near) = alpha.split_at(half);
    let alpha_l: Vec<D::Value> = far
        .iter()
        .zip(near)
        .map(|(&a, &b)| domain.f(a, b))
        .collect();
    let beta_l = decode_node(domain, &frozen[..half], &alpha_l, u_hat);
    let alpha_r: Vec<D::Value> = far
        .iter()
        .zip(near)
        .zip(&beta_l)
        .map(|((&a, &b), &s)| domain.g(s, b, a))
        .collect();
    let beta_r = decode_node(domain, &frozen[half..], &alpha_r, u_hat);
    let mut beta: Vec<u8> = beta_l.iter().zip(&beta_r).map(|(l, r)| l ^ r).collect();
    beta.extend_from_slice(&beta_r);
    beta
}

/// Scheduling variants of the SC baseline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScVariant {
    /// One tree node per cycle: `2N - 2`.
    Conventional,
    /// f and both g candidates computed in the same cycle: `N - 1`.
    Precomputed,
}

pub fn sc_latency_cycles(len: usize, variant: ScVariant) -> u64 {
    let len = len as u64;
    match variant {
        ScVariant::Conventional => 2 * len - 2,
        ScVariant::Precomputed => len - 1,
    }
}

/// Latency of the 2-bit precomputation SC decoder (`0.75N - 1`), the
/// baseline for latency-reduction reports.
pub fn two_bit_precomputed_latency(len: usize) -> f64 {
    0.75 * len as f64 - 1.0
}
