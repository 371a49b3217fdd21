use std::fmt;

use serde::{Deserialize, Serialize};

use crate::code::PolarCode;

/// Constituent-code class of a decode-tree node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeKind {
    /// Only frozen bits.
    Rate0,
    /// Only information bits.
    Rate1,
    /// Single parity check: only the first bit frozen.
    Spc,
    /// Repetition: only the last bit is information.
    Rep,
    /// No shortcut; recurse into both halves.
    Branch,
}

impl NodeKind {
    pub fn is_fast(self) -> bool {
        self != NodeKind::Branch
    }

    /// Classifies a constituent code by its frozen pattern. Checked in the
    /// order Rate0, Rate1, Rep, Spc, so the length-2 pattern `[frozen, info]`
    /// is a repetition node.
    pub fn of_pattern(frozen: &[bool]) -> NodeKind {
        let (first, rest) = frozen.split_first().expect("non-empty pattern");
        let (last, init) = frozen.split_last().expect("non-empty pattern");
        if frozen.iter().all(|&f| f) {
            NodeKind::Rate0
        } else if frozen.iter().all(|&f| !f) {
            NodeKind::Rate1
        } else if !last && init.iter().all(|&f| f) {
            NodeKind::Rep
        } else if *first && rest.iter().all(|&f| !f) {
            NodeKind::Spc
        } else {
            NodeKind::Branch
        }
    }
}

impl fmt::Display for NodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            NodeKind::Rate0 => "rate0",
            NodeKind::Rate1 => "rate1",
            NodeKind::Spc => "spc",
            NodeKind::Rep => "rep",
            NodeKind::Branch => "branch",
        };
        f.write_str(s)
    }
}

/// A node of the pruned decode tree covering u-indices
/// `offset..offset + 2^stage`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecodeNode {
    pub stage: u32,
    pub offset: usize,
    pub kind: NodeKind,
    pub children: Option<Box<[DecodeNode; 2]>>,
}

impl DecodeNode {
    pub fn len(&self) -> usize {
        1 << self.stage
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn range(&self) -> std::ops::Range<usize> {
        self.offset..self.offset + self.len()
    }

    /// Visits every node depth-first, parent before children.
    pub fn walk<'a>(&'a self, visit: &mut impl FnMut(&'a DecodeNode)) {
        visit(self);
        if let Some(ch) = &self.children {
            ch[0].walk(visit);
            ch[1].walk(visit);
        }
    }

    /// The fast (leaf) nodes in decoding order.
    pub fn fast_nodes(&self) -> Vec<&DecodeNode> {
        let mut out = Vec::new();
        self.walk(&mut |n| {
            if n.kind.is_fast() {
                out.push(n);
            }
        });
        out
    }

    pub fn count(&self) -> usize {
        let mut c = 0;
        self.walk(&mut |_| c += 1);
        c
    }
}

/// Builds the pruned decode tree. Each subtree is classified before its
/// children, so the largest matching constituent code always wins.
pub fn classify_tree(code: &PolarCode) -> DecodeNode {
    build(code.frozen(), code.stages(), 0)
}

fn build(frozen: &[bool], stage: u32, offset: usize) -> DecodeNode {
    let pattern = &frozen[offset..offset + (1 << stage)];
    let kind = NodeKind::of_pattern(pattern);
    let children = (kind == NodeKind::Branch).then(|| {
        let half = 1 << (stage - 1);
        Box::new([
            build(frozen, stage - 1, offset),
            build(frozen, stage - 1, offset + half),
        ])
    });
    DecodeNode {
        stage,
        offset,
        kind,
        children,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(mask: &[u8]) -> NodeKind {
        NodeKind::of_pattern(&mask.iter().map(|&b| b == 1).collect::<Vec<_>>())
    }

    #[test]
    fn pattern_examples() {
        assert_eq!(kinds(&[1, 0, 0, 0]), NodeKind::Spc);
        assert_eq!(kinds(&[1, 1, 1, 0]), NodeKind::Rep);
        assert_eq!(kinds(&[1, 1, 1, 1]), NodeKind::Rate0);
        assert_eq!(kinds(&[0, 0, 0, 0]), NodeKind::Rate1);
        assert_eq!(kinds(&[1, 1, 0, 0]), NodeKind::Branch);
        assert_eq!(kinds(&[1, 0]), NodeKind::Rep);
        assert_eq!(kinds(&[0, 1]), NodeKind::Branch);
        assert_eq!(kinds(&[1]), NodeKind::Rate0);
        assert_eq!(kinds(&[0]), NodeKind::Rate1);
    }

    #[test]
    fn rate0_rate1_halves() {
        let code = PolarCode::from_frozen(vec![true, true, true, true, false, false, false, false])
            .unwrap();
        let t = classify_tree(&code);
        assert_eq!(t.kind, NodeKind::Branch);
        let ch = t.children.as_ref().unwrap();
        assert_eq!(
            (ch[0].kind, ch[0].stage, ch[0].offset),
            (NodeKind::Rate0, 2, 0)
        );
        assert_eq!(
            (ch[1].kind, ch[1].stage, ch[1].offset),
            (NodeKind::Rate1, 2, 4)
        );
        assert_eq!(t.count(), 3);
    }

    #[test]
    fn rep_spc_halves() {
        let code = PolarCode::from_frozen(vec![true, true, true, false, true, false, false, false])
            .unwrap();
        let t = classify_tree(&code);
        let fast: Vec<_> = t.fast_nodes().iter().map(|n| (n.kind, n.offset)).collect();
        assert_eq!(fast, vec![(NodeKind::Rep, 0), (NodeKind::Spc, 4)]);
    }

    #[test]
    fn root_fast_node() {
        let code = PolarCode::from_frozen(vec![false; 16]).unwrap();
        let t = classify_tree(&code);
        assert_eq!(t.kind, NodeKind::Rate1);
        assert!(t.children.is_none());
    }
}
