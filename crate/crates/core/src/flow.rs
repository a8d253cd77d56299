//! The full lowering pipeline: macros, decomposition, line reordering,
//! swap insertion and template optimization.

use std::fmt;

use thiserror::Error;

use crate::decompose::{decompose_circuit, DecomposeError};
use crate::exact::{apply_macros, macro_library};
use crate::ir::{circuit_nnc, quantum_cost, Circuit, CircuitStats, CostModel};
use crate::lnn::{global_reorder, local_reorder, naive_swap_insertion, LineOrdering, WideGateError};
use crate::sim::equivalent;
use crate::templates::{apply_templates_with_report, TemplateReport};

/// Widest circuit checked against its input after every run.
pub const MAX_VERIFIED_LINES: usize = 6;

/// Which optional passes run. All off is the naive flow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FlowConfig {
    pub macros: bool,
    pub global_reorder: bool,
    pub local_reorder: bool,
    pub templates: bool,
    pub model: CostModel,
}

impl FlowConfig {
    pub fn naive(model: CostModel) -> FlowConfig {
        FlowConfig { macros: false, global_reorder: false, local_reorder: false, templates: false, model }
    }

    /// All sixteen pass combinations, naive first.
    pub fn all(model: CostModel) -> Vec<FlowConfig> {
        (0..16u8)
            .map(|bits| FlowConfig {
                macros: bits & 4 != 0,
                global_reorder: bits & 2 != 0,
                local_reorder: bits & 1 != 0,
                templates: bits & 8 != 0,
                model,
            })
            .collect()
    }

    /// Parses letter codes such as `N`, `MT` or `GLT`.
    pub fn from_code(code: &str, model: CostModel) -> Option<FlowConfig> {
        let mut cfg = FlowConfig::naive(model);
        if code == "N" {
            return Some(cfg);
        }
        for ch in code.chars() {
            let flag = match ch {
                'M' => &mut cfg.macros,
                'G' => &mut cfg.global_reorder,
                'L' => &mut cfg.local_reorder,
                'T' => &mut cfg.templates,
                _ => return None,
            };
            if std::mem::replace(flag, true) {
                return None;
            }
        }
        (!code.is_empty()).then_some(cfg)
    }

    pub fn code(&self) -> String {
        let mut s = String::new();
        for (on, ch) in [(self.macros, 'M'), (self.global_reorder, 'G'), (self.local_reorder, 'L'), (self.templates, 'T')] {
            if on {
                s.push(ch);
            }
        }
        if s.is_empty() {
            s.push('N');
        }
        s
    }
}

impl fmt::Display for FlowConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.code())
    }
}

#[derive(Debug, Error)]
pub enum FlowError {
    #[error(transparent)]
    Decompose(#[from] DecomposeError),
    #[error("gate left wider than two lines after decomposition: {0}")]
    Wide(String),
}

impl From<WideGateError> for FlowError {
    fn from(e: WideGateError) -> FlowError {
        FlowError::Wide(e.0)
    }
}

#[derive(Debug, Clone)]
pub struct FlowResult {
    pub config: FlowConfig,
    pub circuit: Circuit,
    pub stats: CircuitStats,
    /// Where each input line starts out on the output circuit.
    pub input_ordering: LineOrdering,
    /// Where each input line ends up on the output circuit.
    pub output_ordering: LineOrdering,
    /// Equivalence with the input, when the circuit was narrow enough to check.
    pub verified: Option<bool>,
    /// Rules fired by the template pass, if it ran.
    pub templates: Option<TemplateReport>,
}

/// Runs the pipeline; verification happens automatically on circuits of at
/// most [`MAX_VERIFIED_LINES`] lines.
pub fn run_flow(c: &Circuit, cfg: FlowConfig) -> Result<FlowResult, FlowError> {
    run_flow_with(c, cfg, c.n() <= MAX_VERIFIED_LINES)
}

pub fn run_flow_with(c: &Circuit, cfg: FlowConfig, verify: bool) -> Result<FlowResult, FlowError> {
    let mut current = if cfg.macros { apply_macros(c, &macro_library()) } else { c.clone() };
    current = decompose_circuit(&current)?;

    let mut input_ordering = LineOrdering::identity(c.n());
    if cfg.global_reorder {
        let (order, placed) = global_reorder(&current);
        input_ordering = order;
        current = placed;
    }
    let mut output_ordering = input_ordering.clone();
    if cfg.local_reorder {
        let (routed, order) = local_reorder(&current)?;
        output_ordering = input_ordering.then(&order);
        current = routed;
    }
    current = naive_swap_insertion(&current)?;
    let mut templates = None;
    if cfg.templates {
        let (optimized, report) = apply_templates_with_report(&current, cfg.model);
        current = optimized;
        templates = Some(report);
    }
    debug_assert_eq!(circuit_nnc(&current), 0);

    let verified = verify.then(|| {
        let framed = Circuit::from_gates(c.n(), input_ordering.applying_swaps())
            .then(&current)
            .then(&Circuit::from_gates(c.n(), output_ordering.restoring_swaps()));
        equivalent(c, &framed).unwrap_or(false)
    });
    let stats = CircuitStats::relative_to(&current, cfg.model, quantum_cost(c, cfg.model));
    Ok(FlowResult { config: cfg, circuit: current, stats, input_ordering, output_ordering, verified, templates })
}

#[derive(Debug, Clone)]
pub struct Sweep {
    pub naive: FlowResult,
    pub best: FlowResult,
    pub runs: Vec<FlowResult>,
}

impl Sweep {
    /// `100 * (naive - best) / naive`, rounded down.
    pub fn improvement(&self) -> u64 {
        let (n, b) = (self.naive.stats.qc, self.best.stats.qc);
        if n == 0 {
            0
        } else {
            100 * n.saturating_sub(b) / n
        }
    }
}

/// Runs all sixteen configurations and keeps the cheapest; among equal
/// costs the earliest in [`FlowConfig::all`] order wins.
pub fn sweep_best(c: &Circuit, model: CostModel) -> Result<Sweep, FlowError> {
    let runs = FlowConfig::all(model).into_iter().map(|cfg| run_flow(c, cfg)).collect::<Result<Vec<_>, _>>()?;
    let naive = runs[0].clone();
    let best = runs.iter().min_by_key(|r| r.stats.qc).expect("sixteen runs").clone();
    Ok(Sweep { naive, best, runs })
}

/// One `key=value` line per run followed by an aligned table.
pub fn report(original: &CircuitStats, sweep: &Sweep) -> String {
    use std::fmt::Write as _;
    let mut out = String::new();
    let _ = writeln!(out, "original {original}");
    for r in &sweep.runs {
        let verified = match r.verified {
            Some(true) => "yes",
            Some(false) => "FAILED",
            None => "skipped",
        };
        let _ = writeln!(out, "config={} {} verified={verified}", r.config, r.stats);
    }
    let _ = writeln!(out, "best={} improvement={}%", sweep.best.config, sweep.improvement());
    let _ = writeln!(out);
    let _ = writeln!(out, "{:<6} {:>6} {:>6} {:>6} {:>7}", "config", "gc", "qc", "swaps", "ohead");
    for r in &sweep.runs {
        let _ = writeln!(
            out,
            "{:<6} {:>6} {:>6} {:>6} {:>7.2}",
            r.config.code(),
            r.stats.gc,
            r.stats.qc,
            r.stats.swap_count,
            r.stats.overhead
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Gate;

    #[test]
    fn codes_round_trip() {
        let all = FlowConfig::all(CostModel::SWAP3);
        assert_eq!(all.len(), 16);
        assert_eq!(all[0].code(), "N");
        for cfg in all {
            assert_eq!(FlowConfig::from_code(&cfg.code(), CostModel::SWAP3), Some(cfg));
        }
        assert_eq!(FlowConfig::from_code("GL", CostModel::SWAP1).unwrap().code(), "GL");
        assert!(FlowConfig::from_code("TT", CostModel::SWAP3).is_none());
        assert!(FlowConfig::from_code("X", CostModel::SWAP3).is_none());
    }

    #[test]
    fn toffoli_chain() {
        let c = Circuit::from_gates(3, vec![Gate::toffoli(vec![0, 1], 2)]);
        let naive = run_flow(&c, FlowConfig::naive(CostModel::SWAP3)).unwrap();
        assert_eq!(naive.stats.qc, 11);
        assert_eq!(naive.verified, Some(true));
        let m = run_flow(&c, FlowConfig::from_code("M", CostModel::SWAP3).unwrap()).unwrap();
        assert_eq!(m.stats.qc, 9);
    }

    #[test]
    fn already_adjacent_circuit_needs_nothing() {
        let c = Circuit::from_gates(3, vec![Gate::cnot(0, 1), Gate::not(2)]);
        let sweep = sweep_best(&c, CostModel::SWAP3).unwrap();
        assert_eq!(sweep.best.config.code(), "N");
        assert_eq!(sweep.improvement(), 0);
        assert!((sweep.best.stats.overhead - 1.0).abs() < 1e-12);
    }

    #[test]
    fn every_config_verifies() {
        let c = Circuit::from_gates(4, vec![Gate::toffoli(vec![0, 3], 1), Gate::cnot(3, 0), Gate::peres(2, 0, 3)]);
        for r in sweep_best(&c, CostModel::SWAP3).unwrap().runs {
            assert_eq!(r.verified, Some(true), "{}", r.config);
            assert_eq!(circuit_nnc(&r.circuit), 0);
        }
    }
}
