//! Decoders for the four fast constituent codes. Each returns the node's
//! partial sums `β`, not u-domain bits.

use std::cmp::Ordering;

use crate::llr::LlrDomain;

pub fn decode_rate0(size: usize) -> Vec<u8> {
    vec![0; size]
}

pub fn decode_rate1<D: LlrDomain>(domain: &D, alpha: &[D::Value]) -> Vec<u8> {
    let mut out = vec![0; alpha.len()];
    rate1_into(domain, alpha, &mut out);
    out
}

/// Hard decisions, then the parity bit is applied to the least reliable
/// position found by [`spc_argmin`]. The result always has even weight.
pub fn decode_spc<D: LlrDomain>(domain: &D, alpha: &[D::Value]) -> Vec<u8> {
    let mut out = vec![0; alpha.len()];
    spc_into(domain, alpha, &mut out);
    out
}

/// All zeros when the tree sum of `alpha` is non-negative, all ones
/// otherwise.
pub fn decode_rep<D: LlrDomain>(domain: &D, alpha: &[D::Value]) -> Vec<u8> {
    let mut out = vec![0; alpha.len()];
    rep_into(domain, alpha, &mut out);
    out
}

pub(crate) fn rate1_into<D: LlrDomain>(domain: &D, alpha: &[D::Value], out: &mut [u8]) {
    for (o, &a) in out.iter_mut().zip(alpha) {
        *o = domain.hard_decision(a);
    }
}

pub(crate) fn spc_into<D: LlrDomain>(domain: &D, alpha: &[D::Value], out: &mut [u8]) {
    rate1_into(domain, alpha, out);
    let parity = out.iter().fold(0, |p, &b| p ^ b);
    if parity == 1 {
        out[spc_argmin(domain, alpha)] ^= 1;
    }
}

pub(crate) fn rep_into<D: LlrDomain>(domain: &D, alpha: &[D::Value], out: &mut [u8]) {
    let bit = domain.hard_decision(rep_sum(domain, alpha));
    out.fill(bit);
}

/// Index of the smallest magnitude, found by a comparator tree that pairs
/// `i` with `i + len/2` at each level and keeps the first input on a tie.
///
/// Among equal magnitudes this selects the index whose bit-reversed value is
/// smallest; that is the choice the plain SC recursion makes on an SPC node.
pub fn spc_argmin<D: LlrDomain>(domain: &D, alpha: &[D::Value]) -> usize {
    fn winner<D: LlrDomain>(
        domain: &D,
        alpha: &[D::Value],
        stride: usize,
        residue: usize,
    ) -> usize {
        if stride == alpha.len() {
            return residue;
        }
        let a = winner(domain, alpha, 2 * stride, residue);
        let b = winner(domain, alpha, 2 * stride, residue + stride);
        match domain.cmp_magnitude(alpha[b], alpha[a]) {
            Ordering::Less => b,
            _ => a,
        }
    }
    winner(domain, alpha, 1, 0)
}

/// Adder-tree sum: level by level, `v[i] <- g(0, v[i + h], v[i])`. In fixed
/// point every level saturates, so the order is part of the result.
pub fn rep_sum<D: LlrDomain>(domain: &D, alpha: &[D::Value]) -> D::Value {
    fn sum<D: LlrDomain>(
        domain: &D,
        alpha: &[D::Value],
        stride: usize,
        residue: usize,
    ) -> D::Value {
        if stride == alpha.len() {
            return alpha[residue];
        }
        let far = sum(domain, alpha, 2 * stride, residue);
        let near = sum(domain, alpha, 2 * stride, residue + stride);
        domain.g(0, near, far)
    }
    sum(domain, alpha, 1, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::llr::FloatDomain;

    #[test]
    fn rate0_examples() {
        assert_eq!(decode_rate0(4), vec![0; 4]);
        assert_eq!(decode_rate0(1), vec![0]);
        assert!(decode_rate0(1024).iter().all(|&b| b == 0));
    }

    #[test]
    fn rate1_examples() {
        assert_eq!(decode_rate1(&FloatDomain, &[1.0, -1.0]), vec![0, 1]);
        assert_eq!(decode_rate1(&FloatDomain, &[0.0; 4]), vec![0; 4]);
    }

    #[test]
    fn spc_examples() {
        assert_eq!(
            decode_spc(&FloatDomain, &[1.0, -2.0, 3.0, -4.0]),
            vec![0, 1, 0, 1]
        );
        assert_eq!(
            decode_spc(&FloatDomain, &[1.0, 2.0, 3.0, -4.0]),
            vec![1, 0, 0, 1]
        );
    }

    #[test]
    fn rep_examples() {
        assert_eq!(
            decode_rep(&FloatDomain, &[1.0, -2.0, 3.0, -4.0]),
            vec![1; 4]
        );
        assert_eq!(
            decode_rep(&FloatDomain, &[1.0, -2.0, 3.0, -1.0]),
            vec![0; 4]
        );
    }

    #[test]
    fn argmin_ties_follow_comparator_tree() {
        // Level one keeps 0 over 2 and 1 over 3; level two keeps position 0.
        assert_eq!(spc_argmin(&FloatDomain, &[1.0, 1.0, 1.0, 1.0]), 0);
        assert_eq!(spc_argmin(&FloatDomain, &[5.0, 1.0, 1.0, 5.0]), 2);
        assert_eq!(spc_argmin(&FloatDomain, &[5.0, 1.0, 5.0, 1.0]), 1);
        assert_eq!(spc_argmin(&FloatDomain, &[3.0, 2.0, -1.0, 4.0]), 2);
    }

    #[test]
    fn rep_sum_is_plain_sum_in_float() {
        let a = [1.0, -2.0, 3.0, -4.0, 0.5, 0.25, 8.0, -1.0];
        assert_eq!(rep_sum(&FloatDomain, &a), a.iter().sum::<f64>());
    }
}
