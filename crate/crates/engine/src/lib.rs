//! Symbolic slotted broadcast: packets are coefficient vectors over the
//! native packets, receptions are XOR superpositions, and every node keeps
//! an incremental row-echelon basis of what it heard.

mod decoder;
mod equation;
mod sim;

pub use decoder::Decoder;
pub use equation::{superpose, Equation, Layout};
pub use sim::{run, step, ReceptionModel, RunOptions, Scheme, SlotAction, Trace, TraceSummary};

use netgraph::NodeId;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("D={d} cannot be split into {streams} equal streams")]
    BadLayout { d: usize, streams: usize },
    #[error("expected {expected} coefficients, got {got}")]
    Length { expected: usize, got: usize },
    #[error("cannot parse equation from {0:?}")]
    Parse(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("node {node} transmitted something it does not know in slot {slot}")]
    Causality { slot: usize, node: NodeId },
    #[error("io: {0}")]
    Io(String),
}
