//! Swap-trajectory search.
//!
//! A swap-free gate list together with the line ordering in force at each
//! gate determines a circuit; every rewrite among the swap templates keeps
//! the gates and changes only that trajectory. This module finds the
//! trajectory with the fewest adjacent swaps, optionally letting gates
//! overtake each other when the moving rule allows it.

use rustc_hash::FxHashMap;

use crate::ir::Gate;

/// Positions packed four bits per entry; `occ[p]` is the logical line at position `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) struct Occ(u64);

pub(crate) const MAX_ROUTED_LINES: usize = 16;
pub(crate) const MAX_WINDOW: usize = 64;

impl Occ {
    pub fn from_slice(occ: &[usize]) -> Occ {
        debug_assert!(occ.len() <= MAX_ROUTED_LINES);
        Occ(occ.iter().enumerate().fold(0, |acc, (p, &l)| acc | ((l as u64) << (4 * p))))
    }

    pub fn get(self, p: usize) -> usize {
        ((self.0 >> (4 * p)) & 0xf) as usize
    }

    #[cfg(test)]
    pub fn to_vec(self, n: usize) -> Vec<usize> {
        (0..n).map(|p| self.get(p)).collect()
    }

    pub fn swapped(self, p: usize) -> Occ {
        let (a, b) = (self.get(p), self.get(p + 1));
        let cleared = self.0 & !(0xffu64 << (4 * p));
        Occ(cleared | ((b as u64) << (4 * p)) | ((a as u64) << (4 * (p + 1))))
    }

    fn positions(self, n: usize) -> [u8; MAX_ROUTED_LINES] {
        let mut pos = [0u8; MAX_ROUTED_LINES];
        for p in 0..n {
            pos[self.get(p)] = p as u8;
        }
        pos
    }
}

/// Adjacent swaps needed to turn `from` into `to`.
fn inversions(from: Occ, to: Occ, n: usize) -> u32 {
    let target = to.positions(n);
    let seq: Vec<u8> = (0..n).map(|p| target[from.get(p)]).collect();
    let mut count = 0;
    for i in 0..n {
        for j in i + 1..n {
            if seq[i] > seq[j] {
                count += 1;
            }
        }
    }
    count
}

/// A routing problem over a window of swap-free gates on logical lines.
pub(crate) struct Problem<'a> {
    pub n: usize,
    pub gates: &'a [Gate],
    /// `preds[j]`: gates of the window that must run before gate `j`.
    pub preds: Vec<u64>,
    pub start: Occ,
    pub end: Occ,
}

/// Result of a search: the order gates ran in and the swap positions
/// emitted before each of them, plus trailing swaps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Route {
    /// `(swaps before, gate index)` in execution order.
    pub steps: Vec<(Vec<usize>, usize)>,
    pub trailing: Vec<usize>,
}

impl Route {
    pub fn swap_count(&self) -> usize {
        self.steps.iter().map(|(s, _)| s.len()).sum::<usize>() + self.trailing.len()
    }
}

struct Node {
    mask: u64,
    occ: Occ,
    g: u32,
    parent: u32,
    swap: u8,
}

const ROOT: u32 = u32::MAX;

impl Problem<'_> {
    fn full(&self) -> u64 {
        if self.gates.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.gates.len()) - 1
        }
    }

    fn pair(&self, j: usize) -> Option<(usize, usize)> {
        let g = &self.gates[j];
        let mut it = g.lines();
        match (it.next(), it.next()) {
            (Some(a), Some(b)) => Some((a, b)),
            _ => None,
        }
    }

    fn executable(&self, j: usize, pos: &[u8; MAX_ROUTED_LINES]) -> bool {
        match self.pair(j) {
            None => true,
            Some((a, b)) => pos[a].abs_diff(pos[b]) == 1,
        }
    }

    /// Runs every ready gate that is adjacent under `occ`, repeatedly.
    fn closure(&self, mut mask: u64, occ: Occ, mut order: Option<&mut Vec<usize>>) -> u64 {
        let pos = occ.positions(self.n);
        loop {
            let mut progressed = false;
            for j in 0..self.gates.len() {
                let bit = 1u64 << j;
                if mask & bit == 0 && self.preds[j] & !mask == 0 && self.executable(j, &pos) {
                    mask |= bit;
                    progressed = true;
                    if let Some(o) = order.as_deref_mut() {
                        o.push(j);
                    }
                }
            }
            if !progressed {
                return mask;
            }
        }
    }

    fn heuristic(&self, mask: u64, occ: Occ) -> u32 {
        let mut h = inversions(occ, self.end, self.n);
        let pos = occ.positions(self.n);
        for j in 0..self.gates.len() {
            if mask & (1u64 << j) == 0 {
                if let Some((a, b)) = self.pair(j) {
                    h = h.max(pos[a].abs_diff(pos[b]) as u32 - 1);
                }
            }
        }
        h
    }

    /// Fewest-swap route, or `None` if more than `budget` states were needed.
    pub fn solve(&self, budget: usize) -> Option<Route> {
        let full = self.full();
        let mut nodes: Vec<Node> = Vec::new();
        let mut index: FxHashMap<(u64, u64), u32> = FxHashMap::default();
        let mut buckets: Vec<Vec<u32>> = Vec::new();
        let push = |buckets: &mut Vec<Vec<u32>>, f: u32, id: u32| {
            let f = f as usize;
            if buckets.len() <= f {
                buckets.resize_with(f + 1, Vec::new);
            }
            buckets[f].push(id);
        };

        let mask0 = self.closure(0, self.start, None);
        nodes.push(Node { mask: mask0, occ: self.start, g: 0, parent: ROOT, swap: 0 });
        index.insert((mask0, self.start.0), 0);
        push(&mut buckets, self.heuristic(mask0, self.start), 0);

        let mut f = 0;
        while f < buckets.len() {
            let Some(id) = buckets[f].pop() else {
                f += 1;
                continue;
            };
            let (mask, occ, g) = {
                let nd = &nodes[id as usize];
                (nd.mask, nd.occ, nd.g)
            };
            if g + self.heuristic(mask, occ) != f as u32 {
                continue; // stale entry
            }
            if mask == full && occ == self.end {
                return Some(self.reconstruct(&nodes, id));
            }
            for p in 0..self.n - 1 {
                let o = occ.swapped(p);
                let m = self.closure(mask, o, None);
                let key = (m, o.0);
                let ng = g + 1;
                let target = match index.get(&key) {
                    Some(&existing) if nodes[existing as usize].g <= ng => continue,
                    Some(&existing) => existing,
                    None => {
                        if nodes.len() >= budget {
                            return None;
                        }
                        nodes.push(Node { mask: m, occ: o, g: ng, parent: id, swap: p as u8 });
                        let nid = (nodes.len() - 1) as u32;
                        index.insert(key, nid);
                        let nf = ng + self.heuristic(m, o);
                        push(&mut buckets, nf, nid);
                        f = f.min(nf as usize);
                        continue;
                    }
                };
                let nd = &mut nodes[target as usize];
                nd.g = ng;
                nd.parent = id;
                nd.swap = p as u8;
                let nf = ng + self.heuristic(m, o);
                push(&mut buckets, nf, target);
                f = f.min(nf as usize);
            }
        }
        None
    }

    fn reconstruct(&self, nodes: &[Node], goal: u32) -> Route {
        let mut swaps = Vec::new();
        let mut id = goal;
        while nodes[id as usize].parent != ROOT {
            swaps.push(nodes[id as usize].swap as usize);
            id = nodes[id as usize].parent;
        }
        swaps.reverse();
        self.replay(&swaps)
    }

    /// Re-executes a swap sequence, recording which gates run after each swap.
    fn replay(&self, swaps: &[usize]) -> Route {
        let mut steps = Vec::new();
        let mut pending = Vec::new();
        let mut order = Vec::new();
        let mut occ = self.start;
        let mut mask = self.closure(0, occ, Some(&mut order));
        for &j in &order {
            steps.push((std::mem::take(&mut pending), j));
        }
        for &p in swaps {
            pending.push(p);
            occ = occ.swapped(p);
            order.clear();
            mask = self.closure(mask, occ, Some(&mut order));
            for &j in &order {
                steps.push((std::mem::take(&mut pending), j));
            }
        }
        debug_assert_eq!(mask, self.full());
        Route { steps, trailing: pending }
    }
}
