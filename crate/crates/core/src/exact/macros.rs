//! Precomputed minimal nearest-neighbor realizations of small Toffoli and
//! Peres placements.

use std::fmt::Write as _;
use std::path::Path;

use super::{exact_synthesize, SynthError, MAX_SYNTH_COST};
use crate::ir::{parse_real, write_real, Circuit, Gate, GateKind};
use crate::sim::as_reversible_function;

/// A gate placement over `width` consecutive lines and its minimal
/// adjacent-only replacement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Macro {
    pub name: &'static str,
    pub width: usize,
    pub pattern: Gate,
    pub replacement: Circuit,
}

impl Macro {
    pub fn cost(&self) -> usize {
        self.replacement.len()
    }

    /// Line offset at which `g` matches this macro inside an `n`-line circuit.
    pub fn offset_of(&self, g: &Gate, n: usize) -> Option<usize> {
        let offset = g.min_line();
        if offset + self.width > n || g.kind != self.pattern.kind {
            return None;
        }
        let moved = g.shifted(-(offset as isize));
        let key = |g: &Gate| {
            let mut controls = g.controls.clone();
            if g.kind == GateKind::Toffoli {
                controls.sort_unstable();
            }
            (controls, g.targets.clone())
        };
        (key(&moved) == key(&self.pattern)).then_some(offset)
    }
}

/// Each configuration as `(name, width, pattern)`. Lines are `a, b, c, d`
/// from the top; the name lists controls then target.
pub fn macro_configurations() -> Vec<(&'static str, usize, Gate)> {
    vec![
        ("peres_ab_c", 3, Gate::peres(0, 1, 2)),
        ("peres_cb_a", 3, Gate::peres(2, 1, 0)),
        ("peres_ac_b", 3, Gate::peres(0, 2, 1)),
        ("peres_ca_b", 3, Gate::peres(2, 0, 1)),
        ("peres_ab_d", 4, Gate::peres(0, 1, 3)),
        ("peres_dc_a", 4, Gate::peres(3, 2, 0)),
        ("toffoli_ab_c", 3, Gate::toffoli(vec![0, 1], 2)),
        ("toffoli_cb_a", 3, Gate::toffoli(vec![2, 1], 0)),
        ("toffoli_ab_d", 4, Gate::toffoli(vec![0, 1], 3)),
        ("toffoli_dc_a", 4, Gate::toffoli(vec![3, 2], 0)),
        ("toffoli_ac_b", 3, Gate::toffoli(vec![0, 2], 1)),
        ("toffoli_db_a", 4, Gate::toffoli(vec![3, 1], 0)),
        ("toffoli_ac_d", 4, Gate::toffoli(vec![0, 2], 3)),
    ]
}

/// Runs exact synthesis for every configuration.
pub fn build_macro_library() -> Result<Vec<Macro>, SynthError> {
    macro_configurations()
        .into_iter()
        .map(|(name, width, pattern)| {
            let f = as_reversible_function(&Circuit::from_gates(width, vec![pattern.clone()]))
                .expect("patterns are narrow")
                .expect("patterns are classical");
            let replacement = exact_synthesize(&f, MAX_SYNTH_COST)?;
            Ok(Macro { name, width, pattern, replacement })
        })
        .collect()
}

/// Writes one `.real` file per macro plus `manifest.txt` into `dir`.
pub fn write_macro_library(library: &[Macro], dir: &Path) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    let mut manifest = String::from("# pattern file cost\n");
    for m in library {
        std::fs::write(dir.join(format!("{}.real", m.name)), write_real(&m.replacement))?;
        let _ = writeln!(manifest, "{} {}.real {}", m.pattern, m.name, m.cost());
    }
    std::fs::write(dir.join("manifest.txt"), manifest)
}

macro_rules! embedded {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../../macros/", $name, ".real")))),*]
    };
}

const EMBEDDED: &[(&str, &str)] = embedded!(
    "peres_ab_c",
    "peres_cb_a",
    "peres_ac_b",
    "peres_ca_b",
    "peres_ab_d",
    "peres_dc_a",
    "toffoli_ab_c",
    "toffoli_cb_a",
    "toffoli_ab_d",
    "toffoli_dc_a",
    "toffoli_ac_b",
    "toffoli_db_a",
    "toffoli_ac_d",
);

pub const EMBEDDED_MANIFEST: &str = include_str!("../../macros/manifest.txt");

/// The library shipped with the crate, as produced by [`build_macro_library`].
pub fn macro_library() -> Vec<Macro> {
    macro_configurations()
        .into_iter()
        .map(|(name, width, pattern)| {
            let text = EMBEDDED.iter().find(|(n, _)| *n == name).map(|(_, t)| *t).expect("every macro is embedded");
            let replacement = parse_real(text).expect("embedded macros parse");
            Macro { name, width, pattern, replacement }
        })
        .collect()
}

/// Replaces every gate matching a macro by the macro's circuit at that offset.
pub fn apply_macros(c: &Circuit, library: &[Macro]) -> Circuit {
    let n = c.n();
    let mut gates = Vec::with_capacity(c.len());
    for g in &c.gates {
        match library.iter().find_map(|m| m.offset_of(g, n).map(|o| (m, o))) {
            Some((m, offset)) => gates.extend(m.replacement.gates.iter().map(|x| x.shifted(offset as isize))),
            None => gates.push(g.clone()),
        }
    }
    c.with_gates(gates)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ir::{circuit_nnc, quantum_cost, CostModel};
    use crate::sim::equivalent;

    #[test]
    fn embedded_library_is_sound() {
        let lib = macro_library();
        assert_eq!(lib.len(), 13);
        for m in &lib {
            let pattern = Circuit::from_gates(m.width, vec![m.pattern.clone()]);
            assert!(equivalent(&pattern, &m.replacement).unwrap(), "{}", m.name);
            assert_eq!(circuit_nnc(&m.replacement), 0);
        }
    }

    #[test]
    fn adjacent_toffoli_drops_from_eleven_to_nine() {
        let c = Circuit::from_gates(3, vec![Gate::toffoli(vec![0, 1], 2)]);
        let out = apply_macros(&c, &macro_library());
        assert_eq!(quantum_cost(&out, CostModel::SWAP3), 9);
        assert!(equivalent(&c, &out).unwrap());
    }

    #[test]
    fn matches_at_an_offset_and_in_any_control_order() {
        let lib = macro_library();
        let c = Circuit::from_gates(5, vec![Gate::toffoli(vec![2, 1], 4), Gate::cnot(0, 4)]);
        let out = apply_macros(&c, &lib);
        assert_eq!(out.len(), 13);
        assert!(equivalent(&c, &out).unwrap());
    }

    #[test]
    fn unmatched_gates_stay() {
        let c = Circuit::from_gates(5, vec![Gate::toffoli(vec![0, 4], 2), Gate::cnot(0, 4)]);
        assert_eq!(apply_macros(&c, &macro_library()), c);
    }
}
