//! Placement passes that make every gate act on adjacent lines.

use thiserror::Error;

use crate::ir::{circuit_nnc, Circuit, Gate};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("gate {0} acts on more than two lines; decompose the circuit first")]
pub struct WideGateError(pub String);

/// Where each logical line currently sits: `position(l)` is the physical
/// line holding logical line `l`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LineOrdering {
    placement: Vec<usize>,
}

impl LineOrdering {
    pub fn identity(n: usize) -> LineOrdering {
        LineOrdering { placement: (0..n).collect() }
    }

    pub fn from_placement(placement: Vec<usize>) -> Result<LineOrdering, String> {
        let mut seen = vec![false; placement.len()];
        for &p in &placement {
            if p >= placement.len() || std::mem::replace(&mut seen[p], true) {
                return Err(format!("{placement:?} is not a permutation"));
            }
        }
        Ok(LineOrdering { placement })
    }

    pub fn n(&self) -> usize {
        self.placement.len()
    }

    pub fn placement(&self) -> &[usize] {
        &self.placement
    }

    pub fn position(&self, logical: usize) -> usize {
        self.placement[logical]
    }

    /// Logical line found at each physical position.
    pub fn occupants(&self) -> Vec<usize> {
        let mut occ = vec![0; self.n()];
        for (l, &p) in self.placement.iter().enumerate() {
            occ[p] = l;
        }
        occ
    }

    pub fn is_identity(&self) -> bool {
        self.placement.iter().enumerate().all(|(l, &p)| l == p)
    }

    /// Exchanges the contents of two physical positions.
    pub fn swap_positions(&mut self, p: usize, q: usize) {
        for x in self.placement.iter_mut() {
            if *x == p {
                *x = q;
            } else if *x == q {
                *x = p;
            }
        }
    }

    /// `self` followed by `next`, where `next` acts on positions.
    pub fn then(&self, next: &LineOrdering) -> LineOrdering {
        LineOrdering { placement: self.placement.iter().map(|&p| next.placement[p]).collect() }
    }

    pub fn inverse(&self) -> LineOrdering {
        LineOrdering { placement: self.occupants() }
    }

    /// Adjacent swaps that carry every logical line from its current
    /// position back to position `l` (bubble sort on positions).
    pub fn restoring_swaps(&self) -> Vec<Gate> {
        let mut occ = self.occupants();
        let mut out = Vec::new();
        for _ in 0..occ.len() {
            for p in 0..occ.len().saturating_sub(1) {
                if occ[p] > occ[p + 1] {
                    occ.swap(p, p + 1);
                    out.push(Gate::swap(p, p + 1));
                }
            }
        }
        out
    }

    /// Adjacent swaps moving line `l` from position `l` to `position(l)`.
    pub fn applying_swaps(&self) -> Vec<Gate> {
        let mut v = self.restoring_swaps();
        v.reverse();
        v
    }
}

/// Each gate's NNC split evenly between the two lines of every interacting pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImpactVector {
    halves: Vec<u64>,
}

impl ImpactVector {
    pub fn of(c: &Circuit) -> ImpactVector {
        let mut halves = vec![0u64; c.n()];
        let mut add = |a: usize, b: usize| {
            let d = a.abs_diff(b).saturating_sub(1) as u64;
            halves[a] += d;
            halves[b] += d;
        };
        for g in &c.gates {
            for &ctl in &g.controls {
                for &t in &g.targets {
                    add(ctl, t);
                }
            }
            if let [t1, t2] = g.targets[..] {
                add(t1, t2);
            }
        }
        ImpactVector { halves }
    }

    pub fn get(&self, line: usize) -> f64 {
        self.halves[line] as f64 / 2.0
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.halves.len()).map(|l| self.get(l)).collect()
    }

    /// Twice the total, which equals twice the circuit NNC.
    pub fn total_halves(&self) -> u64 {
        self.halves.iter().sum()
    }

    /// Lines ordered by decreasing impact, lowest index first among equals.
    pub fn ranking(&self) -> Vec<usize> {
        let mut lines: Vec<usize> = (0..self.halves.len()).collect();
        lines.sort_by_key(|&l| (std::cmp::Reverse(self.halves[l]), l));
        lines
    }
}

fn two_lines(g: &Gate) -> Result<Option<(usize, usize)>, WideGateError> {
    match (g.controls.as_slice(), g.targets.as_slice()) {
        (_, [_]) if g.controls.is_empty() => Ok(None),
        ([c], [t]) => Ok(Some((*c, *t))),
        ([], [a, b]) => Ok(Some((*a, *b))),
        _ => Err(WideGateError(g.to_string())),
    }
}

/// Adjacent swaps moving the line at `from` to sit next to `to`.
fn walk(from: usize, to: usize) -> Vec<Gate> {
    if from < to {
        (from..to - 1).map(|p| Gate::swap(p, p + 1)).collect()
    } else {
        (to + 2..=from).rev().map(|p| Gate::swap(p - 1, p)).collect()
    }
}

/// Surrounds every non-adjacent gate with swaps that bring its control next
/// to its target and then restore the original order.
pub fn naive_swap_insertion(c: &Circuit) -> Result<Circuit, WideGateError> {
    let mut out = Vec::with_capacity(c.len());
    for g in &c.gates {
        let Some((a, b)) = two_lines(g)? else {
            out.push(g.clone());
            continue;
        };
        if a.abs_diff(b) <= 1 {
            out.push(g.clone());
            continue;
        }
        let there = walk(a, b);
        let landed = if a < b { b - 1 } else { b + 1 };
        let moved = g.relabeled(&(0..c.n()).map(|l| if l == a { landed } else { l }).collect::<Vec<_>>());
        out.extend(there.iter().cloned());
        out.push(moved);
        out.extend(there.into_iter().rev());
    }
    Ok(c.with_gates(out))
}

/// Brings each gate's target next to its control with swaps that are never
/// undone; later gates see the new order. Returns the circuit on physical
/// positions together with the ordering in force at the end.
pub fn local_reorder(c: &Circuit) -> Result<(Circuit, LineOrdering), WideGateError> {
    let mut order = LineOrdering::identity(c.n());
    let mut out = Vec::with_capacity(c.len());
    for g in &c.gates {
        let placed = g.relabeled(order.placement());
        let Some((ctl, tgt)) = two_lines(&placed)? else {
            out.push(placed);
            continue;
        };
        if ctl.abs_diff(tgt) > 1 {
            for s in walk(tgt, ctl) {
                order.swap_positions(s.targets[0], s.targets[1]);
                out.push(s);
            }
        }
        out.push(g.relabeled(order.placement()));
    }
    let mut result = c.with_gates(out);
    for (p, l) in order.occupants().into_iter().enumerate() {
        result.lines[p].output = c.lines[l].output.clone();
    }
    Ok((result, order))
}

/// Repeatedly exchanges the line with the highest impact and the middle
/// line while that lowers the circuit NNC. No gates are added; the returned
/// ordering maps the input's lines to their new positions.
pub fn global_reorder(c: &Circuit) -> (LineOrdering, Circuit) {
    let n = c.n();
    let mut order = LineOrdering::identity(n);
    let mut current = c.clone();
    if n < 3 {
        return (order, current);
    }
    let middle = n / 2;
    let mut nnc = circuit_nnc(&current);
    while nnc > 0 {
        let impact = ImpactVector::of(&current);
        let Some(pick) = impact.ranking().into_iter().find(|&l| l != middle) else {
            break;
        };
        let mut step = LineOrdering::identity(n);
        step.swap_positions(pick, middle);
        let candidate = current.relabeled(step.placement());
        let cand_nnc = circuit_nnc(&candidate);
        if cand_nnc >= nnc {
            break;
        }
        order = order.then(&step);
        current = candidate;
        nnc = cand_nnc;
    }
    (order, current)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ir::{quantum_cost, CostModel};
    use crate::sim::equivalent;

    fn fig7a() -> Circuit {
        Circuit::from_gates(4, vec![Gate::cnot(1, 0), Gate::cv(2, 0), Gate::cnot(0, 3)])
    }

    fn fig2a() -> Circuit {
        Circuit::from_gates(
            3,
            vec![Gate::cv(0, 2), Gate::cv(1, 2), Gate::cnot(0, 1), Gate::cv_dag(1, 2), Gate::cnot(0, 1)],
        )
    }

    #[test]
    fn naive_on_toffoli_network() {
        let out = naive_swap_insertion(&fig2a()).unwrap();
        assert_eq!(circuit_nnc(&out), 0);
        assert_eq!(quantum_cost(&out, CostModel::SWAP3), 11);
        assert_eq!(out.gates[0], Gate::swap(0, 1));
        assert_eq!(out.gates[1], Gate::cv(1, 2));
        assert!(equivalent(&out, &fig2a()).unwrap());
    }

    #[test]
    fn naive_long_swap() {
        let c = Circuit::from_gates(4, vec![Gate::swap(3, 0)]);
        let out = naive_swap_insertion(&c).unwrap();
        assert_eq!(out.len(), 5);
        assert_eq!(circuit_nnc(&out), 0);
        assert!(equivalent(&out, &c).unwrap());
    }

    #[test]
    fn naive_rejects_wide_gates() {
        let c = Circuit::from_gates(3, vec![Gate::toffoli(vec![0, 1], 2)]);
        assert!(naive_swap_insertion(&c).is_err());
    }

    #[test]
    fn impact_of_fig7() {
        let imp = ImpactVector::of(&fig7a());
        assert_eq!(imp.values(), vec![1.5, 0.0, 0.5, 1.0]);
        assert_eq!(imp.total_halves(), 2 * circuit_nnc(&fig7a()) as u64);
    }

    #[test]
    fn global_on_fig7() {
        let c = fig7a();
        assert_eq!(quantum_cost(&naive_swap_insertion(&c).unwrap(), CostModel::SWAP3), 21);
        let (order, g) = global_reorder(&c);
        assert_eq!(order.placement(), &[2, 1, 0, 3]);
        assert_eq!(circuit_nnc(&g), 1);
        assert_eq!(quantum_cost(&naive_swap_insertion(&g).unwrap(), CostModel::SWAP3), 9);
        assert_eq!(g, c.relabeled(order.placement()));
    }

    #[test]
    fn local_on_fig7() {
        let c = fig7a();
        let (out, order) = local_reorder(&c).unwrap();
        assert_eq!(circuit_nnc(&out), 0);
        assert_eq!(quantum_cost(&out, CostModel::SWAP3), 9);
        let mut back = out.clone();
        back.gates.extend(order.restoring_swaps());
        assert!(equivalent(&back, &c).unwrap());
    }

    #[test]
    fn local_single_cnot() {
        let c = Circuit::from_gates(3, vec![Gate::cnot(0, 2)]);
        let (out, _) = local_reorder(&c).unwrap();
        assert_eq!(out.gates, vec![Gate::swap(1, 2), Gate::cnot(0, 1)]);
        assert_eq!(quantum_cost(&out, CostModel::SWAP3), 4);
    }

    #[test]
    fn nnc_zero_circuits_untouched() {
        let c = Circuit::from_gates(3, vec![Gate::cnot(0, 1), Gate::cv(2, 1), Gate::not(0)]);
        assert_eq!(naive_swap_insertion(&c).unwrap(), c);
        assert_eq!(local_reorder(&c).unwrap().0, c);
        let (order, g) = global_reorder(&c);
        assert!(order.is_identity());
        assert_eq!(g, c);
    }

    #[test]
    fn ordering_swaps_round_trip() {
        let o = LineOrdering::from_placement(vec![2, 0, 3, 1]).unwrap();
        let c = Circuit::from_gates(4, vec![Gate::cnot(0, 1), Gate::cv(2, 3)]);
        // moving lines then running the relabeled circuit then moving back
        let mut lhs = Circuit::from_gates(4, o.applying_swaps());
        lhs.gates.extend(c.relabeled(o.placement()).gates);
        lhs.gates.extend(o.restoring_swaps());
        assert!(equivalent(&lhs, &c).unwrap());
    }
}
