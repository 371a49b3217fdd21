use crate::code::{polar_transform_in_place, PolarCode};
use crate::error::{Error, Result};
use crate::fast_ssc::{classify_tree, DecodeNode, NodeKind, ScheduleEntry, ScheduleReport};
use crate::quant::{QLlr, QuantSpec, MAX_BITS};
use crate::sc::check_frame;

use super::ptu::{ptu_route, PtuIo};
use super::pu::{pu_cycle, PuKind, PuOp, PuState};
use super::trace::TraceEvent;

/// The PU tree for one code length plus its LLR memories.
///
/// `mem[s]` holds the `2^s` LLRs of the node currently active at stage `s`;
/// `mem[n]` is the channel buffer and `mem[s]` for `s < n` is the output
/// register bank of the stage-`s` units.
#[derive(Debug, Clone)]
pub struct PuTree {
    spec: QuantSpec,
    stages: u32,
    precompute: bool,
    units: Vec<Vec<PuState>>,
    mem: Vec<Vec<QLlr>>,
    cycle: u64,
    pu0_loaded: bool,
    trace: Option<Vec<TraceEvent>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HwNodeResult {
    pub beta: Vec<u8>,
    pub cycles: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HwDecoded {
    pub u_hat: Vec<u8>,
    pub x_hat: Vec<u8>,
    /// Cycles spent per decode-tree node, as measured by the model.
    pub cycle_trace: ScheduleReport,
}

impl PuTree {
    pub fn new(len: usize, spec: QuantSpec) -> Result<Self> {
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::InvalidLength(len));
        }
        if spec.internal_bits() > MAX_BITS {
            return Err(Error::InvalidQuantSpec(format!(
                "PU datapath supports at most {MAX_BITS} bits"
            )));
        }
        let stages = len.trailing_zeros();
        Ok(PuTree {
            spec,
            stages,
            precompute: true,
            units: (0..stages)
                .map(|s| vec![PuState::default(); 1 << s])
                .collect(),
            mem: (0..=stages)
                .map(|s| vec![QLlr::default(); 1 << s])
                .collect(),
            cycle: 0,
            pu0_loaded: false,
            trace: None,
        })
    }

    /// Selects the schedule: with precomputation a branch node takes one
    /// cycle, without it two (f, then g).
    pub fn with_precompute(mut self, precompute: bool) -> Self {
        self.precompute = precompute;
        self
    }

    pub fn spec(&self) -> &QuantSpec {
        &self.spec
    }

    pub fn len(&self) -> usize {
        1 << self.stages
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn units_per_stage(&self) -> Vec<usize> {
        self.units.iter().map(Vec::len).collect()
    }

    pub fn pu_count(&self) -> usize {
        self.units.iter().map(Vec::len).sum()
    }

    pub fn unit(&self, stage: u32, lane: usize) -> &PuState {
        &self.units[stage as usize][lane]
    }

    pub fn cycles(&self) -> u64 {
        self.cycle
    }

    pub fn enable_trace(&mut self) {
        self.trace = Some(Vec::new());
    }

    pub fn take_trace(&mut self) -> Vec<TraceEvent> {
        self.trace.as_mut().map(std::mem::take).unwrap_or_default()
    }

    fn kind(stage: usize) -> PuKind {
        if stage == 0 {
            PuKind::Stage0
        } else {
            PuKind::Regular
        }
    }

    fn record(&mut self, stage: usize, unit: usize, op: &str, inputs: Vec<i64>, out: Vec<i64>) {
        if let Some(t) = self.trace.as_mut() {
            t.push(TraceEvent {
                cycle: self.cycle,
                stage: stage as u32,
                unit,
                op: op.to_string(),
                inputs,
                out,
            });
        }
    }

    /// Runs `body` as one clock cycle.
    fn clock(&mut self, body: impl FnOnce(&mut Self)) {
        self.cycle += 1;
        self.pu0_loaded = false;
        body(self);
        if !self.pu0_loaded {
            self.units[0][0].idle(PuKind::Stage0);
        }
    }

    /// Drives every lane of the stage-`stage` units from `mem[stage + 1]`.
    fn issue(&mut self, stage: usize, op: impl Fn(usize) -> PuOp) {
        let lanes = 1usize << stage;
        let kind = Self::kind(stage);
        for i in 0..lanes {
            let a = self.mem[stage + 1][i];
            let b = self.mem[stage + 1][i + lanes];
            let o = op(i);
            let (out, next) = pu_cycle(kind, &self.units[stage][i], a, b, o, &self.spec);
            self.units[stage][i] = next;
            self.mem[stage][i] = out;
            if self.trace.is_some() {
                self.record(stage, i, o.name(), vec![a.raw(), b.raw()], vec![out.raw()]);
            }
        }
        if stage == 0 {
            self.pu0_loaded = true;
        }
    }

    fn hard_decisions(&self, stage: usize) -> Vec<u8> {
        self.mem[stage]
            .iter()
            .map(|q| q.is_negative() as u8)
            .collect()
    }

    fn load(&mut self, alpha: &[QLlr]) -> Result<usize> {
        if alpha.len() < 2 || !alpha.len().is_power_of_two() || alpha.len() > self.len() {
            return Err(Error::InvalidLength(alpha.len()));
        }
        let max = self.spec.internal_max();
        if let Some(q) = alpha.iter().find(|q| q.magnitude() > max) {
            return Err(Error::InvalidArgument(format!(
                "LLR {} outside the {}-bit internal range",
                q.raw(),
                self.spec.internal_bits()
            )));
        }
        let stage = alpha.len().trailing_zeros() as usize;
        self.mem[stage].copy_from_slice(alpha);
        Ok(stage)
    }

    fn rep_node(&mut self, stage: usize) -> Vec<u8> {
        for s in (0..stage).rev() {
            self.clock(|t| t.issue(s, |_| PuOp::RepAccumulate));
        }
        let bit = self.mem[0][0].is_negative() as u8;
        vec![bit; 1 << stage]
    }

    fn spc_node(&mut self, stage: usize) -> Vec<u8> {
        for s in (0..stage).rev() {
            self.clock(|t| t.issue(s, |_| PuOp::SpcCompare));
        }
        let mut beta = Vec::new();
        self.clock(|t| {
            // The final sign at stage 0 is the XOR of all input signs.
            let mut pcb = vec![t.mem[0][0].is_negative()];
            for s in 0..stage {
                let lanes = 1 << s;
                let mut next = vec![false; 2 * lanes];
                for p in 0..lanes {
                    let io = ptu_route(PtuIo::inputs(pcb[p], t.units[s][p].cmp_flag));
                    next[p] = io.o1;
                    next[p + lanes] = io.o2;
                    if t.trace.is_some() {
                        t.record(
                            s,
                            p,
                            "ptu",
                            vec![io.pcb as i64, io.ss as i64],
                            vec![io.o1 as i64, io.o2 as i64],
                        );
                    }
                }
                pcb = next;
            }
            beta = t
                .hard_decisions(stage)
                .into_iter()
                .zip(&pcb)
                .map(|(h, &p)| h ^ p as u8)
                .collect();
            if t.trace.is_some() {
                let ins = pcb.iter().map(|&p| p as i64).collect();
                let outs = beta.iter().map(|&b| b as i64).collect();
                t.record(stage, 0, "spc_xor", ins, outs);
            }
        });
        beta
    }

    /// Decodes an SPC constituent code on the comparator tree:
    /// `log2(len)` compare cycles plus one parity-routing cycle.
    pub fn spc_hw_decode(&mut self, alpha: &[QLlr]) -> Result<HwNodeResult> {
        let stage = self.load(alpha)?;
        let start = self.cycle;
        let beta = self.spc_node(stage);
        Ok(HwNodeResult {
            beta,
            cycles: self.cycle - start,
        })
    }

    /// Decodes a repetition constituent code on the adder tree in
    /// `log2(len)` cycles.
    pub fn rep_hw_decode(&mut self, alpha: &[QLlr]) -> Result<HwNodeResult> {
        let stage = self.load(alpha)?;
        let start = self.cycle;
        let beta = self.rep_node(stage);
        Ok(HwNodeResult {
            beta,
            cycles: self.cycle - start,
        })
    }

    fn run(
        &mut self,
        node: &DecodeNode,
        u_hat: &mut [u8],
        entries: &mut Vec<ScheduleEntry>,
    ) -> Vec<u8> {
        let s = node.stage as usize;
        let slot = entries.len();
        entries.push(ScheduleEntry {
            node: slot,
            kind: node.kind,
            stage: node.stage,
            offset: node.offset,
            cycles: 0,
        });
        let start = self.cycle;
        let beta = match node.kind {
            NodeKind::Branch => {
                let [left, right] = &**node.children.as_ref().expect("branch has children");
                let f_op = if self.precompute {
                    PuOp::Precompute
                } else {
                    PuOp::F
                };
                self.clock(|t| t.issue(s - 1, |_| f_op));
                let mut own = self.cycle - start;
                let beta_l = self.run(left, u_hat, entries);
                let before_g = self.cycle;
                if self.precompute {
                    self.issue(s - 1, |i| PuOp::GSelect(beta_l[i]));
                } else {
                    self.clock(|t| t.issue(s - 1, |i| PuOp::G(beta_l[i])));
                }
                own += self.cycle - before_g;
                let beta_r = self.run(right, u_hat, entries);
                entries[slot].cycles = own;
                let mut beta: Vec<u8> = beta_l.iter().zip(&beta_r).map(|(l, r)| l ^ r).collect();
                beta.extend_from_slice(&beta_r);
                return beta;
            }
            // Stage-0 leaves are decided by PU₀ in its parent's cycle.
            NodeKind::Rate0 if s == 0 => vec![0],
            NodeKind::Rate1 if s == 0 => self.hard_decisions(0),
            NodeKind::Rate0 => {
                let mut beta = Vec::new();
                self.clock(|t| {
                    beta = vec![0; 1 << s];
                    t.record(s, 0, "rate0", vec![], vec![0; 1 << s]);
                });
                beta
            }
            NodeKind::Rate1 => {
                let mut beta = Vec::new();
                self.clock(|t| {
                    beta = t.hard_decisions(s);
                    if t.trace.is_some() {
                        let ins = t.mem[s].iter().map(|q| q.raw()).collect();
                        t.record(s, 0, "rate1", ins, beta.iter().map(|&b| b as i64).collect());
                    }
                });
                beta
            }
            NodeKind::Rep => self.rep_node(s),
            NodeKind::Spc => self.spc_node(s),
        };
        entries[slot].cycles = self.cycle - start;
        let u = &mut u_hat[node.range()];
        u.copy_from_slice(&beta);
        polar_transform_in_place(u);
        beta
    }

    /// Executes the fast-SSC schedule of `tree` on one frame.
    pub fn decode_tree(&mut self, tree: &DecodeNode, llr: &[QLlr]) -> Result<HwDecoded> {
        if llr.len() != self.len() || tree.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                actual: llr.len(),
            });
        }
        self.load(llr)?;
        let mut u_hat = vec![0u8; llr.len()];
        let mut entries = Vec::new();
        let x_hat = self.run(tree, &mut u_hat, &mut entries);
        Ok(HwDecoded {
            u_hat,
            x_hat,
            cycle_trace: ScheduleReport::from_entries(entries),
        })
    }
}

/// Classifies `code` and decodes one quantized frame on the PU tree.
pub fn hw_decode_frame(tree: &mut PuTree, code: &PolarCode, llr: &[QLlr]) -> Result<HwDecoded> {
    check_frame(code, llr)?;
    tree.decode_tree(&classify_tree(code), llr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fast_ssc::{decode_rep, decode_spc, latency_model, latency_model_with};
    use crate::quant::QuantDomain;

    fn q(v: &[i64]) -> Vec<QLlr> {
        v.iter().map(|&x| QLlr::from_raw(x)).collect()
    }

    #[test]
    fn tree_of_sixteen() {
        let t = PuTree::new(16, QuantSpec::HARDWARE).unwrap();
        assert_eq!(t.units_per_stage(), vec![1, 2, 4, 8]);
        assert_eq!(t.pu_count(), 15);
    }

    #[test]
    fn spc_example() {
        let mut t = PuTree::new(4, QuantSpec::HARDWARE).unwrap();
        let r = t.spc_hw_decode(&q(&[1, 2, 3, -4])).unwrap();
        assert_eq!(r.beta, vec![1, 0, 0, 1]);
        assert_eq!(r.cycles, 3);
    }

    #[test]
    fn spc_length_1024_cycles() {
        let mut t = PuTree::new(1024, QuantSpec::HARDWARE).unwrap();
        let alpha: Vec<QLlr> = (0..1024).map(|i| QLlr::from_raw((i % 15) - 7)).collect();
        let r = t.spc_hw_decode(&alpha).unwrap();
        assert_eq!(r.cycles, 11);
        assert_eq!(
            r.beta,
            decode_spc(&QuantDomain::new(QuantSpec::HARDWARE), &alpha)
        );
    }

    #[test]
    fn rep_examples() {
        let mut t = PuTree::new(8, QuantSpec::HARDWARE).unwrap();
        let r = t.rep_hw_decode(&q(&[1, -2, 3, -4])).unwrap();
        assert_eq!(r.beta, vec![1; 4]);
        assert_eq!(r.cycles, 2);
        let r = t.rep_hw_decode(&q(&[3, -1])).unwrap();
        assert_eq!(r.beta, vec![0; 2]);
        assert_eq!(r.cycles, 1);
        let a = q(&[7, 7, 7, -7, -7, -7, 1, 2]);
        let r = t.rep_hw_decode(&a).unwrap();
        assert_eq!(
            r.beta,
            decode_rep(&QuantDomain::new(QuantSpec::HARDWARE), &a)
        );
    }

    #[test]
    fn rejects_out_of_range_llr() {
        let mut t = PuTree::new(4, QuantSpec::HARDWARE).unwrap();
        assert!(t.spc_hw_decode(&q(&[16, 0, 0, 0])).is_err());
        assert!(t.spc_hw_decode(&q(&[1, 2, 3])).is_err());
    }

    #[test]
    fn cycle_trace_matches_latency_model() {
        let code = PolarCode::from_frozen(
            [1, 1, 1, 0, 1, 0, 0, 0, 1, 1, 0, 0, 0, 1, 0, 0]
                .iter()
                .map(|&b| b == 1)
                .collect(),
        )
        .unwrap();
        let llr = q(&[3, -1, 2, 0, -5, 7, 1, 1, -2, 4, 6, -7, 0, 1, -3, 2]);
        let tree = classify_tree(&code);
        for pre in [true, false] {
            let mut t = PuTree::new(16, QuantSpec::HARDWARE)
                .unwrap()
                .with_precompute(pre);
            let out = hw_decode_frame(&mut t, &code, &llr).unwrap();
            assert_eq!(out.cycle_trace, latency_model_with(&tree, pre));
            assert_eq!(t.cycles(), latency_model_with(&tree, pre).total_cycles);
        }
        let _ = latency_model(&tree);
    }

    #[test]
    fn trace_records_events() {
        let code = PolarCode::from_frozen(vec![true, false, false, false]).unwrap();
        let mut t = PuTree::new(4, QuantSpec::HARDWARE).unwrap();
        t.enable_trace();
        hw_decode_frame(&mut t, &code, &q(&[1, 2, 3, -4])).unwrap();
        let trace = t.take_trace();
        let ops: Vec<&str> = trace.iter().map(|e| e.op.as_str()).collect();
        assert_eq!(
            ops,
            vec![
                "spc_compare",
                "spc_compare",
                "spc_compare",
                "ptu",
                "ptu",
                "ptu",
                "spc_xor"
            ]
        );
        assert_eq!(trace.last().unwrap().cycle, 3);
    }
}
