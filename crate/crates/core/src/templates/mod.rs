//! Peephole optimization of nearest-neighbor circuits: the moving rule,
//! the deletion rule and the 1-, 2- and 3-SWAP templates.
//!
//! The swap templates, together with swap deletion, generate every
//! rearrangement of swaps that leaves the gate sequence alone, and the moving
//! rule reorders commuting gates. [`apply_templates`] therefore searches
//! directly for the cheapest circuit reachable under these rules: it strips
//! the swaps, cancels inverse gate pairs that the moving rule brings
//! together, and re-derives the swaps with the fewest adjacent exchanges.

mod route;
mod rules;

use std::collections::BTreeMap;

use crate::ir::{quantum_cost, Circuit, CostModel, Gate, GateKind};
use route::{Occ, Problem, Route, MAX_ROUTED_LINES, MAX_WINDOW};

pub use rules::{rule_catalog, verify_rule, RewriteRule, Slot};

/// Controls and targets as seen by the moving rule. Diagonal gates act as
/// pure controls on every line; a swap targets both of its lines.
fn roles(g: &Gate) -> (Vec<usize>, Vec<usize>) {
    if g.kind.is_diagonal() {
        (g.lines().collect(), vec![])
    } else {
        (g.controls.clone(), g.targets.clone())
    }
}

/// Gates that apply a power of NOT to their target, so any two of them
/// sharing only a target commute.
fn acts_as_not_power(g: &Gate) -> bool {
    matches!(
        g.kind,
        GateKind::Toffoli
            | GateKind::Not
            | GateKind::Cnot
            | GateKind::Cv
            | GateKind::CvDag
            | GateKind::Root(_)
            | GateKind::CRoot(_)
            | GateKind::CRootDag(_)
    )
}

/// How the moving rule treats two gates whose targets overlap.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum MovingRule {
    /// Gates are interchanged only if their targets are disjoint and neither
    /// target is a control of the other gate.
    #[default]
    Strict,
    /// Additionally interchanges NOT-power gates that share a target.
    SharedTargets,
}

impl MovingRule {
    pub fn allows(self, a: &Gate, b: &Gate) -> bool {
        let (ca, ta) = roles(a);
        let (cb, tb) = roles(b);
        let meets = |x: &[usize], y: &[usize]| x.iter().any(|l| y.contains(l));
        let targets_ok = !meets(&ta, &tb)
            || self == MovingRule::SharedTargets && acts_as_not_power(a) && acts_as_not_power(b);
        !meets(&ta, &cb) && !meets(&tb, &ca) && targets_ok
    }
}

/// Whether two neighbouring gates may be interchanged under [`MovingRule::Strict`].
pub fn commutes(a: &Gate, b: &Gate) -> bool {
    MovingRule::Strict.allows(a, b)
}

/// Interchanges gates `i` and `i + 1` if the moving rule allows it.
pub fn moving_rule(c: &Circuit, i: usize) -> Option<Circuit> {
    let (a, b) = (c.gates.get(i)?, c.gates.get(i + 1)?);
    if !commutes(a, b) {
        return None;
    }
    let mut out = c.clone();
    out.gates.swap(i, i + 1);
    Some(out)
}

/// Whether `b` undoes `a` when placed right after it.
fn cancels(a: &Gate, b: &Gate) -> bool {
    match (a.swap_pair(), b.swap_pair()) {
        (Some(x), Some(y)) => x == y,
        (None, None) => a.inverse().as_ref() == Some(b),
        _ => false,
    }
}

/// Removes neighbouring pairs of identical swaps and of mutually inverse
/// gates until none remain.
pub fn deletion_rule(c: &Circuit) -> Circuit {
    let mut out: Vec<Gate> = Vec::with_capacity(c.len());
    for g in &c.gates {
        if out.last().is_some_and(|top| cancels(top, g)) {
            out.pop();
        } else {
            out.push(g.clone());
        }
    }
    c.with_gates(out)
}

/// Rules applied by one call of [`apply_templates_with_report`], with counts.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TemplateReport {
    pub fired: BTreeMap<&'static str, usize>,
}

impl TemplateReport {
    fn add(&mut self, rule: &'static str, count: usize) {
        if count > 0 {
            *self.fired.entry(rule).or_default() += count;
        }
    }
}

pub fn apply_templates(c: &Circuit, model: CostModel) -> Circuit {
    apply_templates_with_report(c, model).0
}

/// States explored for a single routing search before giving up on it.
const WHOLE_BUDGET: usize = 2_000_000;
const WINDOW_BUDGET: usize = 200_000;
const MAX_SWEEPS: usize = 100;

pub fn apply_templates_with_report(c: &Circuit, model: CostModel) -> (Circuit, TemplateReport) {
    apply_templates_with(c, model, MovingRule::Strict)
}

pub fn apply_templates_with(c: &Circuit, model: CostModel, rule: MovingRule) -> (Circuit, TemplateReport) {
    let mut report = TemplateReport::default();
    let routable = c.n() >= 2
        && c.n() <= MAX_ROUTED_LINES
        && c.gates.iter().all(|g| g.kind == GateKind::Swap || (g.qubit_count() <= 2 && g.nnc() == 0));
    if !routable {
        let out = deletion_rule(c);
        report.add("deletion", (c.len() - out.len()) / 2);
        return (out, report);
    }

    let original_cost = quantum_cost(c, model);
    let mut traj = Trajectory::of(c, rule);
    for _ in 0..MAX_SWEEPS {
        let before = (traj.gates.len(), traj.swap_count());
        let cancelled = traj.cancel_inverse_pairs(&mut report);
        let improved = traj.reroute(&mut report);
        if !cancelled && !improved || (traj.gates.len(), traj.swap_count()) == before {
            break;
        }
    }
    let out = traj.to_circuit(c);
    if quantum_cost(&out, model) < original_cost {
        (out, report)
    } else {
        (c.clone(), TemplateReport::default())
    }
}

/// A circuit viewed as swap-free gates on logical lines plus the swaps
/// (as positions `p` meaning `Swap(p, p + 1)`) issued before each gate.
#[derive(Debug, Clone)]
struct Trajectory {
    n: usize,
    rule: MovingRule,
    gates: Vec<Gate>,
    swaps_before: Vec<Vec<usize>>,
    trailing: Vec<usize>,
}

impl Trajectory {
    fn of(c: &Circuit, rule: MovingRule) -> Trajectory {
        let n = c.n();
        let mut occ: Vec<usize> = (0..n).collect();
        let mut pending = Vec::new();
        let mut t = Trajectory { n, rule, gates: vec![], swaps_before: vec![], trailing: vec![] };
        for g in &c.gates {
            if let Some((a, b)) = g.swap_pair() {
                // long swaps are replaced by runs of adjacent ones
                for p in (a..b).chain((a..b - 1).rev()) {
                    pending.push(p);
                    occ.swap(p, p + 1);
                }
            } else {
                t.gates.push(g.relabeled(&occ));
                t.swaps_before.push(std::mem::take(&mut pending));
            }
        }
        t.trailing = pending;
        t
    }

    fn swap_count(&self) -> usize {
        self.swaps_before.iter().map(Vec::len).sum::<usize>() + self.trailing.len()
    }

    /// Ordering (position -> logical line) just before the swaps of gate `i`.
    fn occ_before(&self, i: usize) -> Vec<usize> {
        let mut occ: Vec<usize> = (0..self.n).collect();
        for s in &self.swaps_before[..i] {
            for &p in s {
                occ.swap(p, p + 1);
            }
        }
        occ
    }

    fn final_occ(&self) -> Vec<usize> {
        let mut occ = self.occ_before(self.gates.len());
        for &p in &self.trailing {
            occ.swap(p, p + 1);
        }
        occ
    }

    fn cancel_inverse_pairs(&mut self, report: &mut TemplateReport) -> bool {
        let mut any = false;
        'restart: loop {
            for i in 0..self.gates.len() {
                for j in i + 1..self.gates.len() {
                    if cancels(&self.gates[i], &self.gates[j]) {
                        self.remove(j);
                        self.remove(i);
                        report.add("deletion", 1);
                        any = true;
                        continue 'restart;
                    }
                    if !self.rule.allows(&self.gates[i], &self.gates[j]) {
                        break;
                    }
                }
            }
            return any;
        }
    }

    fn remove(&mut self, i: usize) {
        let swaps = self.swaps_before.remove(i);
        self.gates.remove(i);
        match self.swaps_before.get_mut(i) {
            Some(next) => {
                let mut merged = swaps;
                merged.append(next);
                *next = merged;
            }
            None => {
                let mut merged = swaps;
                merged.append(&mut self.trailing);
                self.trailing = merged;
            }
        }
    }

    /// Re-derives the swaps of the whole circuit, or of overlapping windows
    /// when the whole search is too large. Returns whether swaps were saved.
    fn reroute(&mut self, report: &mut TemplateReport) -> bool {
        let k = self.gates.len();
        if k <= MAX_WINDOW && self.try_window(0, k, WHOLE_BUDGET, report) {
            return true;
        }
        let mut improved = false;
        for width in [24usize, 12, 6] {
            let mut start = 0;
            while start < k {
                let end = (start + width).min(k);
                improved |= self.try_window(start, end, WINDOW_BUDGET, report);
                if end == k {
                    break;
                }
                start += width / 2;
            }
            if improved {
                break;
            }
        }
        improved
    }

    fn try_window(&mut self, start: usize, end: usize, budget: usize, report: &mut TemplateReport) -> bool {
        let gates = &self.gates[start..end];
        let rule = self.rule;
        let preds = (0..gates.len())
            .map(|j| (0..j).filter(|&i| !rule.allows(&gates[i], &gates[j])).fold(0u64, |m, i| m | 1 << i))
            .collect();
        let at_end = end == self.gates.len();
        let end_occ = if at_end { self.final_occ() } else { self.occ_before(end) };
        let old: usize = self.swaps_before[start..end].iter().map(Vec::len).sum::<usize>()
            + if at_end { self.trailing.len() } else { 0 };
        let problem = Problem {
            n: self.n,
            gates,
            preds,
            start: Occ::from_slice(&self.occ_before(start)),
            end: Occ::from_slice(&end_occ),
        };
        let Some(route) = problem.solve(budget) else {
            return false;
        };
        let saved = old.saturating_sub(route.swap_count());
        if saved == 0 {
            return false;
        }
        report.add("moving", displacement(&route));
        report.add("swap-templates", 1);
        report.add("deletion", saved / 2);
        self.splice(start, end, route, at_end);
        true
    }

    fn splice(&mut self, start: usize, end: usize, route: Route, at_end: bool) {
        let window: Vec<Gate> = self.gates[start..end].to_vec();
        let (swaps, gates): (Vec<_>, Vec<_>) =
            route.steps.into_iter().map(|(s, j)| (s, window[j].clone())).unzip();
        self.gates.splice(start..end, gates);
        self.swaps_before.splice(start..end, swaps);
        if at_end {
            self.trailing = route.trailing;
        } else {
            debug_assert!(route.trailing.is_empty() || end < self.gates.len());
            let mut tail = route.trailing;
            tail.append(&mut self.swaps_before[end]);
            self.swaps_before[end] = tail;
        }
    }

    fn to_circuit(&self, like: &Circuit) -> Circuit {
        let mut occ: Vec<usize> = (0..self.n).collect();
        let mut out = Vec::with_capacity(self.gates.len() + self.swap_count());
        let emit_swaps = |swaps: &[usize], occ: &mut Vec<usize>, out: &mut Vec<Gate>| {
            for &p in swaps {
                occ.swap(p, p + 1);
                out.push(Gate::swap(p, p + 1));
            }
        };
        for (g, swaps) in self.gates.iter().zip(&self.swaps_before) {
            emit_swaps(swaps, &mut occ, &mut out);
            let mut pos = vec![0; self.n];
            for (p, &l) in occ.iter().enumerate() {
                pos[l] = p;
            }
            out.push(g.relabeled(&pos));
        }
        emit_swaps(&self.trailing, &mut occ, &mut out);
        like.with_gates(out)
    }
}

/// Number of neighbouring interchanges separating the new gate order from the old.
fn displacement(route: &Route) -> usize {
    let order: Vec<usize> = route.steps.iter().map(|&(_, j)| j).collect();
    let mut count = 0;
    for a in 0..order.len() {
        for b in a + 1..order.len() {
            if order[a] > order[b] {
                count += 1;
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ir::circuit_nnc;
    use crate::sim::equivalent;

    fn fig4a() -> Circuit {
        Circuit::from_gates(
            3,
            vec![
                Gate::swap(0, 1),
                Gate::cnot(1, 2),
                Gate::swap(0, 1),
                Gate::cnot(2, 1),
                Gate::swap(0, 1),
                Gate::cv(1, 2),
                Gate::cnot(1, 0),
                Gate::swap(0, 1),
            ],
        )
    }

    #[test]
    fn moving_rule_cases() {
        let c = Circuit::from_gates(4, vec![Gate::cnot(0, 1), Gate::cnot(2, 3)]);
        assert_eq!(moving_rule(&c, 0).unwrap().gates, vec![Gate::cnot(2, 3), Gate::cnot(0, 1)]);
        let c = Circuit::from_gates(3, vec![Gate::cnot(0, 1), Gate::cnot(1, 2)]);
        assert!(moving_rule(&c, 0).is_none());
        let c = Circuit::from_gates(3, vec![Gate::cv(0, 1), Gate::cv(0, 2)]);
        let m = moving_rule(&c, 0).unwrap();
        assert!(equivalent(&m, &c).unwrap());
    }

    #[test]
    fn deletion_cases() {
        let c = Circuit::from_gates(3, vec![Gate::swap(1, 2), Gate::swap(1, 2)]);
        assert!(deletion_rule(&c).is_empty());
        let c = Circuit::from_gates(4, vec![Gate::swap(1, 2), Gate::swap(2, 3)]);
        assert_eq!(deletion_rule(&c), c);
        let c = Circuit::from_gates(2, vec![Gate::cnot(0, 1), Gate::cnot(0, 1)]);
        assert!(deletion_rule(&c).is_empty());
        let c = Circuit::from_gates(2, vec![Gate::cv(0, 1), Gate::cv_dag(0, 1), Gate::cnot(1, 0)]);
        assert_eq!(deletion_rule(&c).gates, vec![Gate::cnot(1, 0)]);
    }

    #[test]
    fn fig4_walkthrough() {
        let c = fig4a();
        assert_eq!(quantum_cost(&c, CostModel::SWAP3), 16);
        let (out, report) = apply_templates_with_report(&c, CostModel::SWAP3);
        assert_eq!(quantum_cost(&out, CostModel::SWAP3), 10);
        assert_eq!(circuit_nnc(&out), 0);
        assert!(equivalent(&out, &c).unwrap());
        assert!(report.fired.contains_key("deletion"));
    }

    #[test]
    fn idempotent() {
        let once = apply_templates(&fig4a(), CostModel::SWAP3);
        assert_eq!(apply_templates(&once, CostModel::SWAP3), once);
    }

    #[test]
    fn swap_free_circuit_only_cancels() {
        let c = Circuit::from_gates(2, vec![Gate::cnot(0, 1), Gate::not(0), Gate::cnot(0, 1)]);
        assert_eq!(apply_templates(&c, CostModel::SWAP3), c);
        let c = Circuit::from_gates(3, vec![Gate::cnot(0, 1), Gate::cnot(2, 1), Gate::cnot(0, 1)]);
        assert_eq!(apply_templates(&c, CostModel::SWAP3), c);
        let (out, _) = apply_templates_with(&c, CostModel::SWAP3, MovingRule::SharedTargets);
        assert_eq!(out.gates, vec![Gate::cnot(2, 1)]);
        let c = Circuit::from_gates(3, vec![Gate::cnot(0, 1), Gate::cnot(2, 0), Gate::cnot(0, 1)]);
        assert_eq!(apply_templates(&c, CostModel::SWAP3), c);
        let c = Circuit::from_gates(3, vec![Gate::cnot(1, 2), Gate::cv(1, 0), Gate::cnot(1, 2)]);
        assert_eq!(apply_templates(&c, CostModel::SWAP3).gates, vec![Gate::cv(1, 0)]);
    }
}
