use crate::code::{polar_transform_in_place, PolarCode};
use crate::error::{Error, Result};
use crate::llr::LlrDomain;
use crate::sc::{check_frame, Decoded};

use super::nodes::{rate1_into, rep_into, spc_into};
use super::tree::{classify_tree, DecodeNode, NodeKind};

/// A reusable fast-SSC decoder for one code length.
///
/// The per-stage LLR and partial-sum memories are sized by the length only.
/// Switching to another frozen set re-classifies the tree and touches
/// nothing else.
#[derive(Debug, Clone)]
pub struct FastSscDecoder<D: LlrDomain> {
    domain: D,
    code: PolarCode,
    tree: DecodeNode,
    alpha: Vec<Vec<D::Value>>,
    beta: Vec<Vec<u8>>,
}

impl<D: LlrDomain> FastSscDecoder<D> {
    pub fn new(domain: D, code: &PolarCode) -> Self {
        let stages = code.stages() as usize;
        let zero = domain.zero();
        FastSscDecoder {
            alpha: (0..=stages).map(|s| vec![zero; 1 << s]).collect(),
            beta: (0..=stages).map(|s| vec![0; 1 << s]).collect(),
            tree: classify_tree(code),
            code: code.clone(),
            domain,
        }
    }

    /// Switches to another code of the same length.
    pub fn set_code(&mut self, code: &PolarCode) -> Result<()> {
        if code.len() != self.code.len() {
            return Err(Error::LengthMismatch {
                expected: self.code.len(),
                actual: code.len(),
            });
        }
        self.tree = classify_tree(code);
        self.code = code.clone();
        Ok(())
    }

    pub fn code(&self) -> &PolarCode {
        &self.code
    }

    pub fn tree(&self) -> &DecodeNode {
        &self.tree
    }

    pub fn decode(&mut self, llr: &[D::Value]) -> Result<Decoded> {
        check_frame(&self.code, llr)?;
        let top = self.code.stages() as usize;
        self.alpha[top].copy_from_slice(llr);
        let mut u_hat = vec![0u8; self.code.len()];
        decode_node(
            &self.domain,
            &self.tree,
            &mut self.alpha,
            &mut self.beta,
            &mut u_hat,
        );
        Ok(Decoded {
            u_hat,
            x_hat: self.beta[top].clone(),
        })
    }
}

/// One-shot fast-SSC decode; builds the tree and scratch memory per call.
pub fn fast_ssc_decode<D: LlrDomain + Clone>(
    domain: &D,
    code: &PolarCode,
    llr: &[D::Value],
) -> Result<Decoded> {
    FastSscDecoder::new(domain.clone(), code).decode(llr)
}

/// Decodes `node` whose LLRs sit in `alpha[node.stage]`, leaving its partial
/// sums in `beta[node.stage]`.
fn decode_node<D: LlrDomain>(
    domain: &D,
    node: &DecodeNode,
    alpha: &mut [Vec<D::Value>],
    beta: &mut [Vec<u8>],
    u_hat: &mut [u8],
) {
    let s = node.stage as usize;
    let len = node.len();
    match node.kind {
        NodeKind::Branch => {
            let [left, right] = &**node.children.as_ref().expect("branch has children");
            let half = len / 2;
            {
                let (lo, hi) = alpha.split_at_mut(s);
                let (far, near) = hi[0].split_at(half);
                for ((c, &a), &b) in lo[s - 1].iter_mut().zip(far).zip(near) {
                    *c = domain.f(a, b);
                }
            }
            decode_node(domain, left, alpha, beta, u_hat);
            {
                let (lo, hi) = beta.split_at_mut(s);
                hi[0][..half].copy_from_slice(&lo[s - 1]);
            }
            {
                let (lo, hi) = alpha.split_at_mut(s);
                let (far, near) = hi[0].split_at(half);
                let bl = &beta[s][..half];
                for (((c, &a), &b), &bit) in lo[s - 1].iter_mut().zip(far).zip(near).zip(bl) {
                    *c = domain.g(bit, b, a);
                }
            }
            decode_node(domain, right, alpha, beta, u_hat);
            let (lo, hi) = beta.split_at_mut(s);
            let br = &lo[s - 1];
            let (bl, bh) = hi[0].split_at_mut(half);
            for ((l, h), &r) in bl.iter_mut().zip(bh.iter_mut()).zip(br) {
                *l ^= r;
                *h = r;
            }
        }
        kind => {
            let a = &alpha[s];
            let b = &mut beta[s];
            match kind {
                NodeKind::Rate0 => b.fill(0),
                NodeKind::Rate1 => rate1_into(domain, a, b),
                NodeKind::Spc => spc_into(domain, a, b),
                NodeKind::Rep => rep_into(domain, a, b),
                NodeKind::Branch => unreachable!(),
            }
            // û = β · G over the node's own length.
            let u = &mut u_hat[node.range()];
            u.copy_from_slice(b);
            polar_transform_in_place(u);
        }
    }
}
