//! Helpers shared by the integration test targets.
#![allow(dead_code)]

use std::collections::HashMap;

use lnn_core::exact::gate_library;
use lnn_core::ir::parse_real;
use lnn_core::{Circuit, Gate, GateKind};
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn fixture(name: &str) -> Circuit {
    let path = format!("{}/tests/fixtures/{name}.real", env!("CARGO_MANIFEST_DIR"));
    parse_real(&std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))).unwrap()
}

/// A random reversible or elementary circuit on `n` lines.
pub fn random_circuit(rng: &mut impl Rng, n: usize, len: usize) -> Circuit {
    let mut gates = Vec::with_capacity(len);
    for _ in 0..len {
        let mut lines: Vec<usize> = (0..n).collect();
        lines.shuffle(rng);
        let pick = rng.gen_range(0..8);
        let g = match pick {
            0 => Gate::not(lines[0]),
            1 if n >= 2 => Gate::cnot(lines[0], lines[1]),
            2 if n >= 2 => Gate::cv(lines[0], lines[1]),
            3 if n >= 2 => Gate::cv_dag(lines[0], lines[1]),
            4 if n >= 2 => Gate::swap(lines[0], lines[1]),
            5 if n >= 3 => {
                let m = rng.gen_range(2..n.min(4));
                Gate::toffoli(lines[..m].to_vec(), lines[m])
            }
            6 if n >= 3 => Gate::peres(lines[0], lines[1], lines[2]),
            7 if n >= 3 => Gate::fredkin(vec![lines[0]], lines[1], lines[2]),
            _ => Gate::not(lines[0]),
        };
        gates.push(g);
    }
    Circuit::from_gates(n, gates)
}

pub const ORACLE_LINES: usize = 3;
const DIM: usize = 1 << ORACLE_LINES;
type State = [[Complex64; DIM]; DIM];

fn bit(l: usize) -> usize {
    1 << (ORACLE_LINES - 1 - l)
}

/// Applies one library gate to every column, written independently of the
/// crate's simulator.
fn apply(u: &State, g: &Gate) -> State {
    let v = Complex64::new(0.5, 0.5);
    let w = Complex64::new(0.5, -0.5);
    let t = bit(g.targets[0]);
    let c = g.controls.first().map_or(0, |&c| bit(c));
    let mut out = *u;
    for col in out.iter_mut() {
        for i in 0..DIM {
            if i & t != 0 || i & c != c {
                continue;
            }
            let (a, b) = (col[i], col[i | t]);
            let (na, nb) = match g.kind {
                GateKind::Not | GateKind::Cnot => (b, a),
                GateKind::Cv => (v * a + w * b, w * a + v * b),
                GateKind::CvDag => (w * a + v * b, v * a + w * b),
                k => panic!("{k:?} not in the library"),
            };
            col[i] = na;
            col[i | t] = nb;
        }
    }
    out
}

fn as_permutation(u: &State) -> Option<Vec<usize>> {
    u.iter()
        .map(|col| {
            let hits: Vec<usize> = (0..DIM).filter(|&i| col[i].norm() > 1e-9).collect();
            (hits.len() == 1 && (col[hits[0]] - Complex64::new(1.0, 0.0)).norm() < 1e-9).then(|| hits[0])
        })
        .collect()
}

fn enumerate(u: &State, depth: usize, max: usize, lib: &[Gate], best: &mut HashMap<Vec<usize>, usize>) {
    if let Some(p) = as_permutation(u) {
        let e = best.entry(p).or_insert(depth);
        *e = (*e).min(depth);
    }
    if depth == max {
        return;
    }
    for g in lib {
        enumerate(&apply(u, g), depth + 1, max, lib, best);
    }
}

/// Cheapest cost of every 3-line permutation reachable within `max` gates,
/// found by trying every gate sequence with full complex amplitudes.
pub fn brute_force_costs(max: usize) -> HashMap<Vec<usize>, usize> {
    let lib = gate_library(ORACLE_LINES);
    let mut id = [[Complex64::new(0.0, 0.0); DIM]; DIM];
    for (i, col) in id.iter_mut().enumerate() {
        col[i] = Complex64::new(1.0, 0.0);
    }
    let mut best = HashMap::new();
    enumerate(&id, 0, max, &lib, &mut best);
    best
}

/// Gate counts stated for Toffoli decompositions: `None` where no closed
/// form is given.
pub fn stated_toffoli_cost(m: usize, n: usize) -> Option<u64> {
    match m {
        0 | 1 => Some(1),
        2 => Some(5),
        _ if m + 1 == n => Some((1u64 << n) - 3),
        _ if n >= 5 && 2 * m <= n + 1 => Some(12 * m as u64 - 22),
        _ => None,
    }
}
