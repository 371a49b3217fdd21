//! Fast-SSC decoding: the decode tree is pruned at constituent codes whose
//! frozen pattern admits a direct decision, and only the remaining branch
//! nodes run the f/g recursion.

mod decoder;
mod latency;
mod nodes;
mod tree;

pub use decoder::{fast_ssc_decode, FastSscDecoder};
pub use latency::{
    latency_model, latency_model_with, latency_reduction_sweep, node_cycles, ScheduleEntry,
    ScheduleReport, SweepRow,
};
pub use nodes::{decode_rate0, decode_rate1, decode_rep, decode_spc, rep_sum, spc_argmin};
pub use tree::{classify_tree, DecodeNode, NodeKind};
