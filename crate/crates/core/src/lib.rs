//! Polar codes with fast simplified successive-cancellation decoding.
//!
//! The crate is organised around the decoding pipeline:
//!
//! - [`code`] and [`construct`]: code construction, the frozen-set file
//!   format and the Kronecker-power encoder.
//! - [`llr`] and [`quant`]: the two LLR arithmetics (float and saturating
//!   fixed point) shared by every decoder.
//! - [`sc`]: the plain successive-cancellation reference decoder.
//! - [`fast_ssc`]: constituent-node classification, the pruned-tree decoder
//!   and its cycle-cost latency model.
//! - [`hw`]: a cycle-level model of the processing-unit tree that executes the
//!   fast-SSC schedule.
//! - [`sim`]: BPSK-AWGN Monte-Carlo simulation and throughput arithmetic.
//!
//! Bit vectors are `Vec<u8>` holding 0/1, indexed in natural order in the
//! u-domain: `x = u · F^{⊗n}` with `F = [[1, 0], [1, 1]]`, no bit reversal.

pub mod code;
pub mod construct;
pub mod error;
pub mod fast_ssc;
pub mod hw;
pub mod llr;
pub mod quant;
pub mod sc;
pub mod sim;

pub use code::{encode, polar_transform, PolarCode};
pub use construct::{construct_code, Construction, ConstructionMethod};
pub use error::{Error, Result};
pub use fast_ssc::{
    classify_tree, fast_ssc_decode, latency_model, DecodeNode, NodeKind, ScheduleReport,
};
pub use llr::{FloatDomain, LlrDomain};
pub use quant::{QLlr, QuantDomain, QuantSpec};
pub use sc::{sc_decode, sc_latency_cycles, Decoded, ScVariant};
