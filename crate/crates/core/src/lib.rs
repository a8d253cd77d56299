//! Synthesis of reversible and quantum circuits for linear nearest-neighbor
//! architectures.

pub mod decompose;
pub mod exact;
pub mod flow;
pub mod ir;
pub mod lnn;
pub mod sim;
pub mod templates;

pub use ir::{Circuit, CostModel, Gate, GateKind};
