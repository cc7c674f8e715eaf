use std::ops::Range;

use crate::circuit::Circuit;

/// A labeled, contiguous run of gates inside a generated circuit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub label: String,
    pub gates: Range<usize>,
}

/// A generated circuit together with the facts its builder guarantees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Synthesis {
    pub circuit: Circuit,
    /// Registers the caller must prepare in the all-zero state.
    pub zeroed: Vec<String>,
    /// Register that holds the function output afterwards.
    pub result: String,
    pub blocks: Vec<Block>,
}

impl Synthesis {
    /// Number of wires in the zero-preconditioned registers.
    pub fn ancilla_count(&self) -> usize {
        self.zeroed
            .iter()
            .filter_map(|r| self.circuit.registers().get(r))
            .map(<[_]>::len)
            .sum()
    }

    pub fn block(&self, label: &str) -> Option<&Block> {
        self.blocks.iter().find(|b| b.label == label)
    }
}

/// Records block boundaries while a circuit is emitted.
pub(crate) struct BlockRecorder {
    start: usize,
    pub(crate) blocks: Vec<Block>,
}

impl BlockRecorder {
    pub(crate) fn new() -> Self {
        BlockRecorder {
            start: 0,
            blocks: Vec::new(),
        }
    }

    pub(crate) fn close(&mut self, label: impl Into<String>, circuit: &Circuit) {
        let end = circuit.len();
        self.blocks.push(Block {
            label: label.into(),
            gates: self.start..end,
        });
        self.start = end;
    }
}
