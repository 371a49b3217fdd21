use serde::{Deserialize, Serialize};

/// Ports of a parity-transmit unit. The parity-check bit `pcb` leaves on
/// `o1` when the select signal `ss` is 0 and on `o2` when it is 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PtuIo {
    pub pcb: bool,
    pub ss: bool,
    pub o1: bool,
    pub o2: bool,
}

impl PtuIo {
    pub fn inputs(pcb: bool, ss: bool) -> Self {
        PtuIo {
            pcb,
            ss,
            ..Default::default()
        }
    }
}

/// `o1 = pcb & !ss`, `o2 = pcb & ss`.
pub fn ptu_route(io: PtuIo) -> PtuIo {
    PtuIo {
        o1: io.pcb && !io.ss,
        o2: io.pcb && io.ss,
        ..io
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truth_table() {
        let out = |pcb, ss| {
            let r = ptu_route(PtuIo::inputs(pcb, ss));
            (r.o1, r.o2)
        };
        assert_eq!(out(false, false), (false, false));
        assert_eq!(out(false, true), (false, false));
        assert_eq!(out(true, false), (true, false));
        assert_eq!(out(true, true), (false, true));
    }
}
