use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::Result;

/// One datapath event. `stage` and `unit` locate the PU (or PTU) in the
/// tree; `in`/`out` are raw fixed-point values or bits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEvent {
    pub cycle: u64,
    pub stage: u32,
    pub unit: usize,
    pub op: String,
    #[serde(rename = "in")]
    pub inputs: Vec<i64>,
    pub out: Vec<i64>,
}

/// Writes one JSON object per line.
pub fn write_trace_jsonl<W: Write>(events: &[TraceEvent], mut w: W) -> Result<()> {
    for e in events {
        serde_json::to_writer(&mut w, e)?;
        w.write_all(b"\n")?;
    }
    Ok(())
}
