//! Cycle-cost model of the fast-SSC schedule on a PU tree.
//!
//! | node              | cycles                                   |
//! |-------------------|------------------------------------------|
//! | branch            | 1 (f and both g candidates in one cycle) |
//! | rate-0, rate-1    | 1                                        |
//! | REP at stage m    | m (adder tree)                           |
//! | SPC at stage m    | m + 1 (comparator tree, then parity fix) |
//!
//! Stage-0 leaves below a branch are decided inside the parent's cycle by
//! the stage-0 unit and cost nothing, so a tree with no fast node above stage
//! 0 costs exactly `N - 1`, the precomputed SC latency. Without
//! precomputation a branch costs 2 and the same tree costs `2N - 2`.

use serde::{Deserialize, Serialize};

use crate::construct::construct_code;
use crate::error::Result;
use crate::sc::two_bit_precomputed_latency;

use super::tree::{classify_tree, DecodeNode, NodeKind};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScheduleEntry {
    /// Pre-order index in the decode tree.
    pub node: usize,
    pub kind: NodeKind,
    pub stage: u32,
    pub offset: usize,
    pub cycles: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScheduleReport {
    pub entries: Vec<ScheduleEntry>,
    pub total_cycles: u64,
}

impl ScheduleReport {
    pub fn from_entries(entries: Vec<ScheduleEntry>) -> Self {
        let total_cycles = entries.iter().map(|e| e.cycles).sum();
        ScheduleReport {
            entries,
            total_cycles,
        }
    }

    /// The schedule as a JSON array of `{node, kind, stage, offset, cycles}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.entries).expect("schedule entries serialize")
    }

    /// Fraction of cycles saved relative to `baseline`.
    pub fn reduction_vs(&self, baseline: f64) -> f64 {
        1.0 - self.total_cycles as f64 / baseline
    }
}

pub fn node_cycles(kind: NodeKind, stage: u32, precompute: bool) -> u64 {
    let m = stage as u64;
    match kind {
        NodeKind::Branch => {
            if precompute {
                1
            } else {
                2
            }
        }
        NodeKind::Rate0 | NodeKind::Rate1 => (stage > 0) as u64,
        NodeKind::Rep => m,
        NodeKind::Spc => m + 1,
    }
}

/// The schedule with precomputation enabled.
pub fn latency_model(tree: &DecodeNode) -> ScheduleReport {
    latency_model_with(tree, true)
}

pub fn latency_model_with(tree: &DecodeNode, precompute: bool) -> ScheduleReport {
    let mut entries = Vec::new();
    tree.walk(&mut |n| {
        entries.push(ScheduleEntry {
            node: entries.len(),
            kind: n.kind,
            stage: n.stage,
            offset: n.offset,
            cycles: node_cycles(n.kind, n.stage, precompute),
        })
    });
    ScheduleReport::from_entries(entries)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub rate: f64,
    pub k: usize,
    pub cycles: u64,
    /// `1 - cycles / (0.75N - 1)`.
    pub reduction_vs_precomp_2b: f64,
}

/// Latency of GA-constructed codes of length `len` across `rates`.
pub fn latency_reduction_sweep(
    len: usize,
    rates: &[f64],
    design_snr_db: f64,
) -> Result<Vec<SweepRow>> {
    let baseline = two_bit_precomputed_latency(len);
    rates
        .iter()
        .map(|&rate| {
            let k = ((rate * len as f64).round() as usize).clamp(1, len);
            let code = construct_code(len, k, design_snr_db)?;
            let cycles = latency_model(&classify_tree(&code)).total_cycles;
            Ok(SweepRow {
                rate,
                k,
                cycles,
                reduction_vs_precomp_2b: 1.0 - cycles as f64 / baseline,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::PolarCode;

    fn tree(mask: Vec<bool>) -> DecodeNode {
        classify_tree(&PolarCode::from_frozen(mask).unwrap())
    }

    #[test]
    fn full_rate_root_costs_one() {
        assert_eq!(latency_model(&tree(vec![false; 1024])).total_cycles, 1);
    }

    #[test]
    fn spc_root_costs_log_plus_one() {
        let mut mask = vec![false; 1024];
        mask[0] = true;
        let r = latency_model(&tree(mask));
        assert_eq!(r.entries.len(), 1);
        assert_eq!(r.entries[0].kind, NodeKind::Spc);
        assert_eq!(r.total_cycles, 11);
    }

    #[test]
    fn rep_root_costs_log() {
        let mut mask = vec![true; 64];
        mask[63] = false;
        assert_eq!(latency_model(&tree(mask)).total_cycles, 6);
    }

    #[test]
    fn no_fast_nodes_matches_sc_baselines() {
        // Alternating info/frozen leaves: every stage-1 node is [info, frozen].
        let mask: Vec<bool> = (0..64).map(|i| i % 2 == 1).collect();
        let t = tree(mask);
        assert_eq!(latency_model(&t).total_cycles, 63);
        assert_eq!(latency_model_with(&t, false).total_cycles, 126);
    }

    #[test]
    fn json_shape() {
        let r = latency_model(&tree(vec![true, true, false, false]));
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        let first = &v.as_array().unwrap()[0];
        for key in ["node", "kind", "stage", "offset", "cycles"] {
            assert!(first.get(key).is_some(), "{key}");
        }
        assert_eq!(first["kind"], "branch");
    }
}
