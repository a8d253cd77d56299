mod common;

use common::random_circuit;
use lnn_core::flow::{run_flow, FlowConfig};
use lnn_core::ir::{circuit_nnc, parse_real, quantum_cost, write_real};
use lnn_core::sim::equivalent;
use lnn_core::templates::apply_templates;
use lnn_core::{Circuit, CostModel};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn circuit() -> impl Strategy<Value = Circuit> {
    (any::<u64>(), 2usize..=5, 1usize..=30)
        .prop_map(|(seed, n, len)| random_circuit(&mut ChaCha8Rng::seed_from_u64(seed), n, len))
}

fn model() -> impl Strategy<Value = CostModel> {
    prop_oneof![Just(CostModel::SWAP1), Just(CostModel::SWAP3)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn every_flow_is_equivalent_and_adjacent(c in circuit(), bits in 0usize..16, model in model()) {
        let cfg = FlowConfig::all(model)[bits];
        let r = run_flow(&c, cfg).unwrap();
        prop_assert_eq!(r.verified, Some(true));
        prop_assert_eq!(circuit_nnc(&r.circuit), 0);
    }

    #[test]
    fn templates_never_raise_cost(c in circuit(), model in model()) {
        let lowered = run_flow(&c, FlowConfig::naive(model)).unwrap().circuit;
        let out = apply_templates(&lowered, model);
        prop_assert!(quantum_cost(&out, model) <= quantum_cost(&lowered, model));
        prop_assert_eq!(equivalent(&lowered, &out), Ok(true));
        prop_assert_eq!(apply_templates(&out, model), out);
    }

    #[test]
    fn real_format_round_trips(c in circuit()) {
        let back = parse_real(&write_real(&c)).unwrap();
        prop_assert_eq!(back.gates, c.gates);
    }
}
