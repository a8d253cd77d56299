//! Exact synthesis of small reversible functions over adjacent elementary gates.

mod function;
mod macros;
mod synth;

pub use function::ReversibleFunction;
pub use macros::{
    apply_macros, build_macro_library, macro_configurations, macro_library, write_macro_library, Macro,
    EMBEDDED_MANIFEST,
};
pub use synth::{exact_synthesize, gate_library, SynthError, MAX_SYNTH_COST, MAX_SYNTH_LINES};
