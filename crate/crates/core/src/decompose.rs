//! Lowering of Toffoli, Fredkin and Peres gates to elementary gates.
//!
//! The emitted length of every gate equals [`gate_cost`] for that gate, so
//! the quantum cost of a circuit is the size of its decomposition.

use thiserror::Error;

use crate::ir::{gate_cost, split_options, toffoli_cost, Circuit, CostModel, Gate, GateKind};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("cannot decompose {gate}: {reason}")]
pub struct DecomposeError {
    pub gate: String,
    pub reason: String,
}

/// Elementary realization of `g` inside a circuit of `n` lines.
///
/// Swaps and elementary gates are returned unchanged.
pub fn decompose_gate(g: &Gate, n: usize) -> Result<Vec<Gate>, DecomposeError> {
    g.validate(n).map_err(|reason| DecomposeError { gate: g.to_string(), reason })?;
    let out = match g.kind {
        GateKind::Toffoli => toffoli(&g.controls, g.targets[0], n),
        GateKind::Fredkin => {
            let (t1, t2) = (g.targets[0], g.targets[1]);
            let mut controls = g.controls.clone();
            controls.push(t1);
            let mut out = vec![Gate::cnot(t2, t1)];
            out.extend(toffoli(&controls, t2, n));
            out.push(Gate::cnot(t2, t1));
            out
        }
        GateKind::Peres => {
            let (c, t1, t2) = (g.controls[0], g.targets[0], g.targets[1]);
            vec![Gate::cv(c, t2), Gate::cv(t1, t2), Gate::cnot(c, t1), Gate::cv_dag(t1, t2)]
        }
        _ => vec![g.clone()],
    };
    debug_assert_eq!(out.len() as u64, gate_cost(g, n, CostModel::SWAP1).max(1));
    Ok(out)
}

pub fn decompose_circuit(c: &Circuit) -> Result<Circuit, DecomposeError> {
    let mut gates = Vec::with_capacity(c.len());
    for g in &c.gates {
        gates.extend(decompose_gate(g, c.n())?);
    }
    Ok(c.with_gates(gates))
}

/// Lines of an `n`-line circuit not used by `busy`, nearest to `anchor` first.
fn idle_lines(busy: &[usize], anchor: usize, n: usize) -> Vec<usize> {
    let mut idle: Vec<usize> = (0..n).filter(|l| !busy.contains(l)).collect();
    idle.sort_by_key(|&l| (l.abs_diff(anchor), l));
    idle
}

fn toffoli(controls: &[usize], target: usize, n: usize) -> Vec<Gate> {
    let m = controls.len();
    match m {
        0 | 1 => vec![Gate::toffoli(controls.to_vec(), target)],
        2 => toffoli2(controls[0], controls[1], target),
        _ if 2 * m - 1 <= n => {
            let mut busy = controls.to_vec();
            busy.push(target);
            let dirty = idle_lines(&busy, target, n);
            borrowed_lines(controls, target, &dirty[..m - 2])
        }
        _ if m + 1 == n => gray_code(controls, target),
        _ => split(controls, target, n),
    }
}

/// Five-gate network; the control farther from the target drives the first
/// controlled-V and the CNOT pair.
fn toffoli2(a: usize, b: usize, t: usize) -> Vec<Gate> {
    let (far, near) = if (a.abs_diff(t), b) >= (b.abs_diff(t), a) { (a, b) } else { (b, a) };
    vec![Gate::cv(far, t), Gate::cv(near, t), Gate::cnot(far, near), Gate::cv_dag(near, t), Gate::cnot(far, near)]
}

/// `t ^= AND(controls)` in `12m - 22` gates using `m - 2` lines in unknown
/// states, all of which are restored.
fn borrowed_lines(controls: &[usize], t: usize, dirty: &[usize]) -> Vec<Gate> {
    let (c, rest) = (controls[0], &controls[1..]);
    let f = dirty[0];
    let toggle = and_toggle(rest, f, &dirty[1..]);
    let inverse = invert(&toggle);
    let mut out = vec![Gate::cv(f, t), Gate::cnot(c, f), Gate::cv_dag(f, t)];
    out.extend(toggle);
    out.extend([Gate::cv(f, t), Gate::cnot(c, f), Gate::cv_dag(f, t)]);
    out.extend(inverse);
    out
}

/// Toggles `f` by the AND of `controls`, leaving other lines scrambled in a
/// way that [`invert`] undoes. `6k - 8` gates for `k` controls.
fn and_toggle(controls: &[usize], f: usize, dirty: &[usize]) -> Vec<Gate> {
    if let [a, b] = *controls {
        return vec![Gate::cv(a, f), Gate::cv(b, f), Gate::cnot(a, b), Gate::cv_dag(b, f)];
    }
    let (c, rest) = (controls[0], &controls[1..]);
    let g = dirty[0];
    let mut out = vec![Gate::cv(g, f), Gate::cnot(c, g), Gate::cv_dag(g, f)];
    out.extend(and_toggle(rest, g, &dirty[1..]));
    out.extend([Gate::cv(g, f), Gate::cnot(c, g), Gate::cv_dag(g, f)]);
    out
}

fn invert(gates: &[Gate]) -> Vec<Gate> {
    gates.iter().rev().map(|g| g.inverse().expect("elementary gates here are invertible")).collect()
}

/// `2^(m+1) - 3` gates without any extra line: controlled `X^(1/2^(m-1))`
/// rotations driven by the parities of all control subsets, visited in
/// Gray-code order so each step needs one CNOT.
fn gray_code(controls: &[usize], t: usize) -> Vec<Gate> {
    let m = controls.len();
    // nearest control to the target becomes the top of the parity chain
    let mut c = controls.to_vec();
    c.sort_by_key(|&l| std::cmp::Reverse((l.abs_diff(t), l)));
    let root = m as u8;
    let mut out = Vec::with_capacity((1 << (m + 1)) - 3);
    let mut prev = 0usize;
    for i in 1usize..1 << m {
        let code = i ^ (i >> 1);
        let top = usize::BITS as usize - 1 - code.leading_zeros() as usize;
        if prev != 0 {
            let flipped = (code ^ prev).trailing_zeros() as usize;
            let prev_top = usize::BITS as usize - 1 - prev.leading_zeros() as usize;
            let src = if top == prev_top { flipped } else { top - 1 };
            out.push(Gate::cnot(c[src], c[top]));
        }
        out.push(if code.count_ones() % 2 == 1 {
            Gate::croot(root, c[top], t)
        } else {
            Gate::croot_dag(root, c[top], t)
        });
        prev = code;
    }
    out
}

/// `A B A B` with `A = t_k(C1; f)` and `B = t_{m-k+1}(C2 + f; t)` on an idle
/// line `f`, choosing the cheapest `k`.
fn split(controls: &[usize], t: usize, n: usize) -> Vec<Gate> {
    let m = controls.len();
    let (k, _) = split_options(m)
        .min_by_key(|&(k, rest)| toffoli_cost(k, n) + toffoli_cost(rest, n))
        .expect("at least three controls");
    let mut busy = controls.to_vec();
    busy.push(t);
    let f = idle_lines(&busy, t, n)[0];
    let (c1, c2) = controls.split_at(k);
    let first = toffoli(c1, f, n);
    let mut second_controls = c2.to_vec();
    second_controls.push(f);
    let second = toffoli(&second_controls, t, n);
    let mut out = Vec::with_capacity(2 * (first.len() + second.len()));
    for _ in 0..2 {
        out.extend(first.iter().cloned());
        out.extend(second.iter().cloned());
    }
    out
}
