//! Cycle-level model of the processing-unit (PU) tree decoder.
//!
//! A length-`N` tree has `2^s` units at stage `s` for `s = 0..n-1`, `N - 1`
//! in total. Units at stage `s` read the stage `s + 1` LLR memory and write
//! the stage `s` memory; the single stage-0 unit is the simplified PU₀. The
//! same units serve as the comparator tree of SPC nodes and the adder tree of
//! REP nodes. Parity-transmit units (PTUs) route the SPC parity bit back down
//! the comparator choices to the least reliable lane.
//!
//! Control signals come from a software sequencer walking the fast-SSC
//! decode tree; partial sums are combined functionally.

mod number;
mod ptu;
mod pu;
mod trace;
mod tree;

pub use number::{
    add_path, compare_path, from_sign_magnitude, from_twos_complement, to_sign_magnitude,
    to_twos_complement, CONVERTERS_PER_PU,
};
pub use ptu::{ptu_route, PtuIo};
pub use pu::{pu_cycle, Mode1, Mode2, Mode3, ModeSignals, PuKind, PuOp, PuState};
pub use trace::{write_trace_jsonl, TraceEvent};
pub use tree::{hw_decode_frame, HwDecoded, HwNodeResult, PuTree};
