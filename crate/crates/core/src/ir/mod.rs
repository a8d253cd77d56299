//! Circuit representation, the `.real` format and cost metrics.

mod circuit;
mod gate;
mod metrics;
mod real;

pub use circuit::{Circuit, Line};
pub use gate::{Gate, GateKind};
pub use metrics::{circuit_nnc, gate_cost, gate_nnc, quantum_cost, toffoli_cost, CircuitStats, CostModel};
pub(crate) use metrics::split_options;
pub use real::{parse_real, parse_real_with_warnings, write_real, ParseError, Parsed};
