use std::time::{Duration, Instant};

use lnn_core::ir::{circuit_nnc, parse_real, quantum_cost};
use lnn_core::sim::equivalent_up_to_phase;
use lnn_core::templates::{apply_templates, apply_templates_with, apply_templates_with_report, MovingRule};
use lnn_core::{Circuit, CostModel};

fn fixture(name: &str) -> Circuit {
    let path = format!("{}/tests/fixtures/{name}.real", env!("CARGO_MANIFEST_DIR"));
    parse_real(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn walkthrough_sixteen_to_ten() {
    let c = fixture("swap_walkthrough");
    assert_eq!(quantum_cost(&c, CostModel::SWAP3), 16);
    let t = Instant::now();
    let out = apply_templates(&c, CostModel::SWAP3);
    assert!(t.elapsed() < Duration::from_secs(1));
    assert_eq!(quantum_cost(&out, CostModel::SWAP3), 10);
    assert_eq!(circuit_nnc(&out), 0);
    assert!(equivalent_up_to_phase(&out, &c).unwrap());
}

#[test]
fn toffoli_cnot_forty_two_to_twenty_four() {
    let c = fixture("toffoli_cnot_naive");
    assert_eq!(quantum_cost(&c, CostModel::SWAP3), 42);
    let t = Instant::now();
    let (out, report) = apply_templates_with_report(&c, CostModel::SWAP3);
    assert!(t.elapsed() < Duration::from_secs(1), "{:?}", t.elapsed());
    assert_eq!(quantum_cost(&out, CostModel::SWAP3), 24, "{report:?}");
    assert_eq!(circuit_nnc(&out), 0);
    assert!(equivalent_up_to_phase(&out, &c).unwrap());
}

#[test]
fn aqft_swaps_at_most_twenty() {
    let c = fixture("aqft8");
    assert_eq!(c.swap_count(), 36);
    let t = Instant::now();
    let out = apply_templates(&c, CostModel::SWAP3);
    eprintln!("aqft: {} swaps in {:?}", out.swap_count(), t.elapsed());
    assert!(out.swap_count() <= 20);
    assert_eq!(circuit_nnc(&out), 0);
    assert!(equivalent_up_to_phase(&out, &c).unwrap());
    assert_eq!(apply_templates(&out, CostModel::SWAP3), out);
}

#[test]
fn shared_target_interchange_goes_further() {
    let c = fixture("toffoli_cnot_naive");
    let (out, _) = apply_templates_with(&c, CostModel::SWAP3, MovingRule::SharedTargets);
    assert_eq!(quantum_cost(&out, CostModel::SWAP3), 18);
    assert!(equivalent_up_to_phase(&out, &c).unwrap());
}
