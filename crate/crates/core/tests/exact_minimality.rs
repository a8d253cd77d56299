//! Exact synthesis against exhaustive enumeration of short 3-line circuits.

mod common;

use lnn_core::exact::{exact_synthesize, ReversibleFunction};
use lnn_core::Gate;

#[test]
fn minimal_for_every_function_within_cost_five() {
    let best = common::brute_force_costs(5);
    assert!(best.len() > 100);
    for (perm, &cost) in &best {
        let f = ReversibleFunction::from_perm(common::ORACLE_LINES, perm.clone()).unwrap();
        let c = exact_synthesize(&f, 5).unwrap_or_else(|e| panic!("{f}: {e}, brute force cost {cost}"));
        assert_eq!(c.len(), cost, "{f}");
    }
}

#[test]
fn no_macro_has_a_cheaper_realization() {
    use lnn_core::exact::{macro_configurations, macro_library, EMBEDDED_MANIFEST};
    use lnn_core::sim::as_reversible_function;
    use lnn_core::Circuit;

    let lib = macro_library();
    let costs: Vec<usize> = lib.iter().map(|m| m.cost()).collect();
    assert_eq!(costs, vec![8, 8, 12, 12, 11, 11, 9, 9, 12, 12, 13, 13, 13]);
    for ((name, width, pattern), m) in macro_configurations().into_iter().zip(&lib) {
        let f = as_reversible_function(&Circuit::from_gates(width, vec![pattern])).unwrap().unwrap();
        assert!(exact_synthesize(&f, m.cost() - 1).is_err(), "{name}");
        assert!(EMBEDDED_MANIFEST.contains(&format!("{name}.real {}", m.cost())));
    }
}

#[test]
fn function_then_inverse_is_identity() {
    use lnn_core::sim::as_reversible_function;

    use lnn_core::Circuit;

    let c = Circuit::from_gates(3, vec![Gate::toffoli(vec![0, 1], 2), Gate::cnot(2, 0)]);
    let f = as_reversible_function(&c).unwrap().unwrap();
    let a = exact_synthesize(&f, 15).unwrap();
    let b = exact_synthesize(&f.inverse(), 15).unwrap();
    assert_eq!(a.len(), b.len());
    let both = a.then(&b);
    assert!(as_reversible_function(&both).unwrap().unwrap().is_identity());
}
