use std::fmt;

use super::circuit::Circuit;
use super::gate::{Gate, GateKind};

/// Quantum-cost parameters. Only the price of a Swap varies between models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CostModel {
    swap_cost: u64,
}

impl CostModel {
    /// A Swap realized by three CNOTs.
    pub const SWAP3: CostModel = CostModel { swap_cost: 3 };
    /// A Swap treated as a single elementary operation.
    pub const SWAP1: CostModel = CostModel { swap_cost: 1 };

    pub fn new(swap_cost: u64) -> Result<CostModel, String> {
        match swap_cost {
            1 => Ok(Self::SWAP1),
            3 => Ok(Self::SWAP3),
            other => Err(format!("swap cost must be 1 or 3, got {other}")),
        }
    }

    pub fn swap_cost(self) -> u64 {
        self.swap_cost
    }
}

impl Default for CostModel {
    fn default() -> Self {
        Self::SWAP3
    }
}

pub fn gate_nnc(g: &Gate) -> usize {
    g.nnc()
}

pub fn circuit_nnc(c: &Circuit) -> usize {
    c.gates.iter().map(Gate::nnc).sum()
}

/// Elementary gate count of an `m`-control Toffoli inside a circuit of
/// `n >= m + 1` lines, using the cheapest construction available.
///
/// * `m <= 1`: the gate itself.
/// * `m = 2`: five gates.
/// * `3 <= m` and `2m - 1 <= n`: `12m - 22`, borrowing `m - 2` idle lines.
/// * `m = n - 1`: `2^n - 3` controlled roots and CNOTs, no idle line needed.
/// * otherwise (at least one idle line `f`): `t_m = A B A B` with
///   `A = t_k(C1; f)` and `B = t_{m-k+1}(C2 + f; target)`, minimized over `k`.
pub fn toffoli_cost(m: usize, n: usize) -> u64 {
    assert!(n > m, "a {m}-control Toffoli needs at least {} lines", m + 1);
    match m {
        0 | 1 => 1,
        2 => 5,
        _ if 2 * m - 1 <= n => 12 * m as u64 - 22,
        _ if m + 1 == n => (1u64 << n.min(63)) - 3,
        _ => split_options(m).map(|(k, rest)| 2 * (toffoli_cost(k, n) + toffoli_cost(rest, n))).min().unwrap(),
    }
}

/// Ways to split `m` controls for the one-idle-line construction, as
/// `(controls of the first factor, controls of the second factor)`.
pub(crate) fn split_options(m: usize) -> impl Iterator<Item = (usize, usize)> {
    (2..m).map(move |k| (k, m - k + 1))
}

/// Quantum cost of one gate in a circuit of width `n`.
pub fn gate_cost(g: &Gate, n: usize, model: CostModel) -> u64 {
    match g.kind {
        GateKind::Swap => model.swap_cost,
        GateKind::Toffoli => toffoli_cost(g.controls.len(), n),
        GateKind::Fredkin => toffoli_cost(g.controls.len() + 1, n) + 2,
        GateKind::Peres => 4,
        _ => 1,
    }
}

pub fn quantum_cost(c: &Circuit, model: CostModel) -> u64 {
    c.gates.iter().map(|g| gate_cost(g, c.n(), model)).sum()
}

/// The flat statistics record printed for a circuit.
#[derive(Debug, Clone, PartialEq)]
pub struct CircuitStats {
    pub n: usize,
    pub gc: usize,
    pub qc: u64,
    pub nnc: usize,
    pub swap_count: usize,
    /// `qc / qc_original`; `1.0` when no reference is given.
    pub overhead: f64,
}

impl CircuitStats {
    pub fn of(c: &Circuit, model: CostModel) -> CircuitStats {
        CircuitStats {
            n: c.n(),
            gc: c.len(),
            qc: quantum_cost(c, model),
            nnc: circuit_nnc(c),
            swap_count: c.swap_count(),
            overhead: 1.0,
        }
    }

    /// Stats of `c` with the overhead taken relative to `original_qc`.
    pub fn relative_to(c: &Circuit, model: CostModel, original_qc: u64) -> CircuitStats {
        let mut s = CircuitStats::of(c, model);
        s.overhead = if original_qc == 0 { 1.0 } else { s.qc as f64 / original_qc as f64 };
        s
    }

    /// `key=value` pairs in a fixed order.
    pub fn fields(&self) -> Vec<(&'static str, String)> {
        vec![
            ("n", self.n.to_string()),
            ("gc", self.gc.to_string()),
            ("qc", self.qc.to_string()),
            ("nnc", self.nnc.to_string()),
            ("swap_count", self.swap_count.to_string()),
            ("overhead", format!("{:.2}", self.overhead)),
        ]
    }
}

impl fmt::Display for CircuitStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.fields().into_iter().map(|(k, v)| format!("{k}={v}")).collect();
        f.write_str(&parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig2a() -> Circuit {
        Circuit::from_gates(
            3,
            vec![Gate::cv(0, 2), Gate::cv(1, 2), Gate::cnot(0, 1), Gate::cv_dag(1, 2), Gate::cnot(0, 1)],
        )
    }

    #[test]
    fn standard_toffoli_network() {
        let c = fig2a();
        assert_eq!(circuit_nnc(&c), 1);
        assert_eq!(quantum_cost(&c, CostModel::SWAP3), 5);
    }

    #[test]
    fn single_gates() {
        let t2 = Circuit::from_gates(3, vec![Gate::toffoli(vec![0, 1], 2)]);
        assert_eq!(quantum_cost(&t2, CostModel::SWAP3), 5);
        let f1 = Circuit::from_gates(3, vec![Gate::fredkin(vec![0], 1, 2)]);
        assert_eq!(quantum_cost(&f1, CostModel::SWAP3), 7);
        let s = Circuit::from_gates(2, vec![Gate::swap(0, 1)]);
        assert_eq!(quantum_cost(&s, CostModel::SWAP3), 3);
        assert_eq!(quantum_cost(&s, CostModel::SWAP1), 1);
    }

    #[test]
    fn toffoli_cost_table() {
        assert_eq!(toffoli_cost(3, 5), 14);
        assert_eq!(toffoli_cost(3, 4), 13);
        assert_eq!(toffoli_cost(4, 5), 29);
        assert_eq!(toffoli_cost(4, 7), 26);
        assert_eq!(toffoli_cost(5, 7), 56);
        assert_eq!(toffoli_cost(2, 3), 5);
    }

    #[test]
    fn cost_model_rejects_other_prices() {
        assert!(CostModel::new(2).is_err());
        assert_eq!(CostModel::new(1).unwrap().swap_cost(), 1);
    }

    #[test]
    fn stats_record_order() {
        let s = CircuitStats::relative_to(&fig2a(), CostModel::SWAP3, 5);
        assert_eq!(s.to_string(), "n=3 gc=5 qc=5 nnc=1 swap_count=0 overhead=1.00");
    }
}
