use serde::{Deserialize, Serialize};

use crate::quant::{QLlr, QuantSpec};

use super::number::{add_path, compare_path, from_sign_magnitude, to_sign_magnitude};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PuKind {
    Regular,
    /// Stage-0 unit: no hold feedback on the comparison register.
    Stage0,
}

/// Operation issued to a PU for one cycle. Input 1 is `α[i]`, input 2 is
/// `α[i + h]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PuOp {
    /// f on the output, both g candidates into the registers.
    Precompute,
    /// f only (schedule without precomputation).
    F,
    /// g computed from the inputs (schedule without precomputation).
    G(u8),
    /// Output mux picks a stored g candidate with the partial sum.
    GSelect(u8),
    RepAccumulate,
    SpcCompare,
}

impl PuOp {
    pub fn name(&self) -> &'static str {
        match self {
            PuOp::Precompute => "precompute",
            PuOp::F => "f",
            PuOp::G(_) => "g",
            PuOp::GSelect(_) => "g_select",
            PuOp::RepAccumulate => "rep_accumulate",
            PuOp::SpcCompare => "spc_compare",
        }
    }

    pub fn signals(&self) -> ModeSignals {
        let (mode1, mode2, mode3) = match self {
            PuOp::Precompute | PuOp::F => (Mode1::Full, Mode2::F, Mode3::Hold),
            PuOp::G(_) | PuOp::GSelect(_) => (Mode1::Full, Mode2::G, Mode3::Hold),
            PuOp::RepAccumulate => (Mode1::AddOnly, Mode2::G, Mode3::Hold),
            PuOp::SpcCompare => (Mode1::Full, Mode2::F, Mode3::Load),
        };
        ModeSignals {
            mode1,
            mode2,
            mode3,
        }
    }
}

/// Datapath select: the full f/g datapath or the plain adder used for REP.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Mode1 {
    #[default]
    Full,
    AddOnly,
}

/// Output select between the f result and a g result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Mode2 {
    #[default]
    F,
    G,
}

/// Source of the comparison register: a new comparison or its own output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Mode3 {
    Load,
    #[default]
    Hold,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ModeSignals {
    pub mode1: Mode1,
    pub mode2: Mode2,
    pub mode3: Mode3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PuState {
    /// `α[i+h] + α[i]`, held until the partial sum arrives.
    pub reg_sum: QLlr,
    /// `α[i+h] - α[i]`.
    pub reg_diff: QLlr,
    /// Set when input 2 won the last SPC comparison; drives the PTU select.
    pub cmp_flag: bool,
    pub modes: ModeSignals,
}

impl PuState {
    /// Register update for a cycle in which the unit is not issued an
    /// operation. Regular units hold; PU₀ reloads its comparison register
    /// every cycle and so loses the flag.
    pub fn idle(&mut self, kind: PuKind) {
        if kind == PuKind::Stage0 {
            self.cmp_flag = false;
        }
    }
}

/// One clock cycle of a PU. Returns the output value and the next state.
pub fn pu_cycle(
    kind: PuKind,
    state: &PuState,
    a: QLlr,
    b: QLlr,
    op: PuOp,
    spec: &QuantSpec,
) -> (QLlr, PuState) {
    let bits = spec.internal_bits();
    let (wa, wb) = (to_sign_magnitude(a, bits), to_sign_magnitude(b, bits));
    let mut next = *state;
    next.modes = op.signals();
    if kind == PuKind::Stage0 {
        next.modes.mode3 = Mode3::Load;
        next.cmp_flag = false;
    }
    let out = match op {
        PuOp::Precompute => {
            next.reg_sum = from_sign_magnitude(add_path(wb, wa, false, spec), bits);
            next.reg_diff = from_sign_magnitude(add_path(wb, wa, true, spec), bits);
            compare_path(wa, wb, bits).0
        }
        PuOp::F => compare_path(wa, wb, bits).0,
        PuOp::G(beta) => add_path(wb, wa, beta == 1, spec),
        PuOp::GSelect(beta) => {
            let r = if beta == 0 {
                state.reg_sum
            } else {
                state.reg_diff
            };
            to_sign_magnitude(r, bits)
        }
        PuOp::RepAccumulate => add_path(wb, wa, false, spec),
        PuOp::SpcCompare => {
            let (w, b_wins) = compare_path(wa, wb, bits);
            next.cmp_flag = b_wins;
            w
        }
    };
    (from_sign_magnitude(out, bits), next)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> QLlr {
        QLlr::from_raw(v)
    }

    const SPEC: QuantSpec = QuantSpec::HARDWARE;

    #[test]
    fn f_mode() {
        let (out, _) = pu_cycle(
            PuKind::Regular,
            &PuState::default(),
            q(2),
            q(-3),
            PuOp::F,
            &SPEC,
        );
        assert_eq!(out.raw(), -2);
    }

    #[test]
    fn precompute_then_select() {
        let (out, st) = pu_cycle(
            PuKind::Regular,
            &PuState::default(),
            q(2),
            q(3),
            PuOp::Precompute,
            &SPEC,
        );
        assert_eq!(out.raw(), 2);
        assert_eq!(st.reg_sum.raw(), 5);
        assert_eq!(st.reg_diff.raw(), 1);
        let (g1, _) = pu_cycle(PuKind::Regular, &st, q(0), q(0), PuOp::GSelect(1), &SPEC);
        assert_eq!(g1.raw(), 1);
        let (g0, _) = pu_cycle(PuKind::Regular, &st, q(0), q(0), PuOp::GSelect(0), &SPEC);
        assert_eq!(g0.raw(), 5);
    }

    #[test]
    fn g_select_from_given_registers() {
        let st = PuState {
            reg_sum: q(5),
            reg_diff: q(1),
            ..Default::default()
        };
        let (out, _) = pu_cycle(PuKind::Regular, &st, q(0), q(0), PuOp::GSelect(1), &SPEC);
        assert_eq!(out.raw(), 1);
    }

    #[test]
    fn spc_compare_records_winner() {
        let (out, st) = pu_cycle(
            PuKind::Regular,
            &PuState::default(),
            q(-3),
            q(2),
            PuOp::SpcCompare,
            &SPEC,
        );
        assert_eq!(out.magnitude(), 2);
        // The forwarded sign is the XOR of the input signs.
        assert!(out.is_negative());
        assert!(st.cmp_flag);
        assert_eq!(st.modes.mode3, Mode3::Load);
    }

    #[test]
    fn rep_accumulate_saturates() {
        let (out, st) = pu_cycle(
            PuKind::Regular,
            &PuState::default(),
            q(12),
            q(9),
            PuOp::RepAccumulate,
            &SPEC,
        );
        assert_eq!(out.raw(), 15);
        assert_eq!(st.modes.mode1, Mode1::AddOnly);
    }

    #[test]
    fn regular_unit_holds_flag_stage0_does_not() {
        let (_, mut st) = pu_cycle(
            PuKind::Regular,
            &PuState::default(),
            q(3),
            q(1),
            PuOp::SpcCompare,
            &SPEC,
        );
        st.idle(PuKind::Regular);
        assert!(st.cmp_flag);
        let (_, mut st0) = pu_cycle(
            PuKind::Stage0,
            &PuState::default(),
            q(3),
            q(1),
            PuOp::SpcCompare,
            &SPEC,
        );
        assert!(st0.cmp_flag);
        st0.idle(PuKind::Stage0);
        assert!(!st0.cmp_flag);
    }
}
