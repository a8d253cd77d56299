//! Bidirectional breadth-first search for minimal adjacent-gate circuits.
//!
//! Every line carries a state `V^j |0>` with `j` in Z4, so a classical 0 is
//! `j = 0` and a classical 1 is `j = 2`. For each basis input the circuit
//! keeps such a product state as long as controls stay classical, which is
//! the only case the search admits. A whole search state is the `j` of every
//! line for every input, two bits each, packed into a `u128`.

use rustc_hash::FxHashMap;
use thiserror::Error;

use super::ReversibleFunction;
use crate::ir::{Circuit, Gate, GateKind};

pub const MAX_SYNTH_LINES: usize = 4;
pub const MAX_SYNTH_COST: usize = 15;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SynthError {
    #[error("exact synthesis supports at most {MAX_SYNTH_LINES} lines, got {0}")]
    TooWide(usize),
    #[error("cost bound {0} exceeds {MAX_SYNTH_COST}")]
    BoundTooLarge(usize),
    #[error("no circuit of cost at most {0}")]
    NotFound(usize),
}

/// Adjacent elementary gates on `n` lines in search order: NOTs by line,
/// then CNOT, CV and CV-dagger for each pair, downward orientation first.
pub fn gate_library(n: usize) -> Vec<Gate> {
    let mut gates: Vec<Gate> = (0..n).map(Gate::not).collect();
    for make in [Gate::cnot, Gate::cv, Gate::cv_dag] {
        for p in 0..n.saturating_sub(1) {
            gates.push(make(p, p + 1));
            gates.push(make(p + 1, p));
        }
    }
    gates
}

#[derive(Clone, Copy)]
struct Move {
    kind: GateKind,
    control: u32,
    target: u32,
}

struct Space {
    n: usize,
    /// Bit 0 of every input's chunk.
    lo: u128,
    moves: Vec<Move>,
}

impl Space {
    fn new(n: usize, library: &[Gate]) -> Space {
        let inputs = 1usize << n;
        let lo = (0..inputs).fold(0u128, |m, i| m | 1 << (2 * n * i));
        let moves = library
            .iter()
            .map(|g| Move {
                kind: g.kind,
                control: g.controls.first().map_or(0, |&c| c as u32),
                target: g.targets[0] as u32,
            })
            .collect();
        Space { n, lo, moves }
    }

    fn encode(&self, f: &ReversibleFunction) -> u128 {
        let n = self.n;
        let mut s = 0u128;
        for (i, &out) in f.perm().iter().enumerate() {
            for l in 0..n {
                if out >> (n - 1 - l) & 1 == 1 {
                    s |= 2 << (2 * (n * i + l));
                }
            }
        }
        s
    }

    /// Applies move `m` (or its inverse), or `None` if a control is not classical.
    #[inline]
    fn apply(&self, s: u128, m: Move, inverse: bool) -> Option<u128> {
        let t = 2 * m.target;
        if m.kind == GateKind::Not {
            return Some(s ^ self.lo << (t + 1));
        }
        let c = 2 * m.control;
        if (s >> c) & self.lo != 0 {
            return None;
        }
        let active = (s >> (c + 1)) & self.lo;
        let t_lo = (s >> t) & self.lo;
        let step = match (m.kind, inverse) {
            (GateKind::Cnot, _) => return Some(s ^ active << (t + 1)),
            (GateKind::Cv, false) | (GateKind::CvDag, true) => 1,
            _ => 3,
        };
        let carry = if step == 1 { active & t_lo } else { active & !t_lo & self.lo };
        Some(s ^ active << t ^ carry << (t + 1))
    }
}

/// Minimal-cost circuit of adjacent NOT, CNOT, CV and CV-dagger gates
/// realizing `f`, with classical values on every control. Among minimal
/// circuits the lexicographically least sequence of [`gate_library`]
/// indices is returned.
pub fn exact_synthesize(f: &ReversibleFunction, max_cost: usize) -> Result<Circuit, SynthError> {
    let n = f.n();
    if n > MAX_SYNTH_LINES {
        return Err(SynthError::TooWide(n));
    }
    if max_cost > MAX_SYNTH_COST {
        return Err(SynthError::BoundTooLarge(max_cost));
    }
    let library = gate_library(n);
    let space = Space::new(n, &library);
    let start = space.encode(&ReversibleFunction::identity(n));
    let goal = space.encode(f);
    let path = search(&space, start, goal, max_cost).ok_or(SynthError::NotFound(max_cost))?;
    Ok(Circuit::from_gates(n, path.into_iter().map(|i| library[i].clone()).collect()))
}

fn search(space: &Space, start: u128, goal: u128, max_cost: usize) -> Option<Vec<usize>> {
    if start == goal {
        return Some(vec![]);
    }
    let mut fwd_layers = vec![vec![start]];
    let mut fwd: FxHashMap<u128, u8> = FxHashMap::default();
    fwd.insert(start, 0);
    let mut bwd_layers = vec![vec![goal]];
    let mut bwd: FxHashMap<u128, u8> = FxHashMap::default();
    bwd.insert(goal, 0);

    loop {
        let (a, b) = (fwd_layers.len() - 1, bwd_layers.len() - 1);
        if a + b >= max_cost {
            return None;
        }
        let forward = a <= b;
        let (layers, seen, other, inverse) = if forward {
            (&mut fwd_layers, &mut fwd, &bwd, false)
        } else {
            (&mut bwd_layers, &mut bwd, &fwd, true)
        };
        let depth = layers.len() as u8;
        let last = a + b + 1 == max_cost;
        let mut next = Vec::new();
        let mut meets = Vec::new();
        for &s in layers.last().unwrap() {
            for &m in &space.moves {
                let Some(t) = space.apply(s, m, inverse) else { continue };
                if seen.contains_key(&t) {
                    continue;
                }
                if other.get(&t) == Some(&(if forward { b } else { a } as u8)) {
                    meets.push(t);
                }
                if !last || !meets.is_empty() {
                    seen.insert(t, depth);
                    next.push(t);
                }
            }
        }
        let empty = next.is_empty();
        layers.push(next);
        if !meets.is_empty() {
            return Some(reconstruct(space, &fwd_layers, &fwd, &bwd, &meets, forward));
        }
        if empty {
            return None;
        }
    }
}

/// Lexicographically least path through the meeting states.
fn reconstruct(
    space: &Space,
    fwd_layers: &[Vec<u128>],
    fwd: &FxHashMap<u128, u8>,
    bwd: &FxHashMap<u128, u8>,
    meets: &[u128],
    met_forward: bool,
) -> Vec<usize> {
    // meeting states sit on the deepest forward layer
    let top = if met_forward { fwd_layers.len() - 1 } else { fwd[&meets[0]] as usize };
    let total = top + bwd[&meets[0]] as usize;
    let mut good: Vec<rustc_hash::FxHashSet<u128>> = vec![Default::default(); top + 1];
    good[top] = meets.iter().copied().collect();
    for k in (0..top).rev() {
        let (lower, upper) = good.split_at_mut(k + 1);
        for &s in &fwd_layers[k] {
            if space.moves.iter().any(|&m| space.apply(s, m, false).is_some_and(|t| upper[0].contains(&t))) {
                lower[k].insert(s);
            }
        }
    }
    let mut path = Vec::with_capacity(total);
    let mut s = fwd_layers[0][0];
    for k in 0..total {
        let (i, t) = space
            .moves
            .iter()
            .enumerate()
            .find_map(|(i, &m)| {
                let t = space.apply(s, m, false)?;
                let on_path = if k < top {
                    good[k + 1].contains(&t)
                } else {
                    bwd.get(&t) == Some(&((total - k - 1) as u8))
                };
                on_path.then_some((i, t))
            })
            .expect("a meeting state lies on every reconstructed prefix");
        path.push(i);
        s = t;
    }
    path
}
