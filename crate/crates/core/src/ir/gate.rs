use std::fmt;

/// Gate families understood by the toolkit.
///
/// `Toffoli` and `Fredkin` carry their control count implicitly through
/// [`Gate::controls`]. Constructors normalize degenerate members: a Toffoli
/// with no control is a [`GateKind::Not`], one control is a
/// [`GateKind::Cnot`], a control-free Fredkin is a [`GateKind::Swap`], and
/// `Root(1)`/`CRoot(1)`/`CRoot(2)` collapse onto `Not`/`Cnot`/`Cv`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind {
    Toffoli,
    Fredkin,
    Peres,
    Not,
    Cnot,
    Cv,
    CvDag,
    Swap,
    Hadamard,
    /// Single-qubit `X^(1/2^(k-1))`.
    Root(u8),
    /// Controlled `X^(1/2^(k-1))`, `k >= 3`.
    CRoot(u8),
    /// Controlled `X^(-1/2^(k-1))`, `k >= 3`.
    CRootDag(u8),
    /// Rotation `diag(1, e^(2 pi i / 2^k))`.
    Phase(u8),
    /// Controlled [`GateKind::Phase`].
    CPhase(u8),
}

impl GateKind {
    /// Kinds that cost one unit regardless of the cost model.
    pub fn is_elementary(self) -> bool {
        !matches!(
            self,
            GateKind::Toffoli | GateKind::Fredkin | GateKind::Peres | GateKind::Swap
        )
    }

    /// Diagonal in the computational basis: every line behaves like a control.
    pub fn is_diagonal(self) -> bool {
        matches!(self, GateKind::Phase(_) | GateKind::CPhase(_))
    }
}

/// One circuit element. Line indices are 0-based with line 0 drawn on top.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gate {
    pub kind: GateKind,
    pub controls: Vec<usize>,
    pub targets: Vec<usize>,
}

impl Gate {
    /// Multiple-control Toffoli; normalizes to `Not`/`Cnot` for fewer than two controls.
    pub fn toffoli(controls: Vec<usize>, target: usize) -> Gate {
        let kind = match controls.len() {
            0 => GateKind::Not,
            1 => GateKind::Cnot,
            _ => GateKind::Toffoli,
        };
        Gate { kind, controls, targets: vec![target] }
    }

    pub fn fredkin(controls: Vec<usize>, t1: usize, t2: usize) -> Gate {
        let kind = if controls.is_empty() { GateKind::Swap } else { GateKind::Fredkin };
        Gate { kind, controls, targets: vec![t1, t2] }
    }

    /// Peres gate: `t2({c, t1}, t2)` followed by `t1({c}, t1)`.
    pub fn peres(control: usize, t1: usize, t2: usize) -> Gate {
        Gate { kind: GateKind::Peres, controls: vec![control], targets: vec![t1, t2] }
    }

    pub fn not(target: usize) -> Gate {
        Gate { kind: GateKind::Not, controls: vec![], targets: vec![target] }
    }

    pub fn cnot(control: usize, target: usize) -> Gate {
        Gate { kind: GateKind::Cnot, controls: vec![control], targets: vec![target] }
    }

    pub fn cv(control: usize, target: usize) -> Gate {
        Gate { kind: GateKind::Cv, controls: vec![control], targets: vec![target] }
    }

    pub fn cv_dag(control: usize, target: usize) -> Gate {
        Gate { kind: GateKind::CvDag, controls: vec![control], targets: vec![target] }
    }

    pub fn swap(a: usize, b: usize) -> Gate {
        Gate { kind: GateKind::Swap, controls: vec![], targets: vec![a, b] }
    }

    pub fn hadamard(target: usize) -> Gate {
        Gate { kind: GateKind::Hadamard, controls: vec![], targets: vec![target] }
    }

    pub fn root(k: u8, target: usize) -> Gate {
        let kind = if k <= 1 { GateKind::Not } else { GateKind::Root(k) };
        Gate { kind, controls: vec![], targets: vec![target] }
    }

    pub fn croot(k: u8, control: usize, target: usize) -> Gate {
        let kind = match k {
            0 | 1 => GateKind::Cnot,
            2 => GateKind::Cv,
            _ => GateKind::CRoot(k),
        };
        Gate { kind, controls: vec![control], targets: vec![target] }
    }

    pub fn croot_dag(k: u8, control: usize, target: usize) -> Gate {
        let kind = match k {
            0 | 1 => GateKind::Cnot,
            2 => GateKind::CvDag,
            _ => GateKind::CRootDag(k),
        };
        Gate { kind, controls: vec![control], targets: vec![target] }
    }

    pub fn phase(k: u8, target: usize) -> Gate {
        Gate { kind: GateKind::Phase(k), controls: vec![], targets: vec![target] }
    }

    pub fn cphase(k: u8, control: usize, target: usize) -> Gate {
        Gate { kind: GateKind::CPhase(k), controls: vec![control], targets: vec![target] }
    }

    /// All lines touched, controls first.
    pub fn lines(&self) -> impl Iterator<Item = usize> + '_ {
        self.controls.iter().chain(self.targets.iter()).copied()
    }

    pub fn qubit_count(&self) -> usize {
        self.controls.len() + self.targets.len()
    }

    pub fn touches(&self, line: usize) -> bool {
        self.lines().any(|l| l == line)
    }

    pub fn max_line(&self) -> usize {
        self.lines().max().unwrap_or(0)
    }

    pub fn min_line(&self) -> usize {
        self.lines().min().unwrap_or(0)
    }

    pub fn is_elementary(&self) -> bool {
        self.kind.is_elementary()
    }

    /// Checks arity, duplicate lines and bounds against a width of `n` lines.
    pub fn validate(&self, n: usize) -> Result<(), String> {
        let (c, t) = (self.controls.len(), self.targets.len());
        let arity_ok = match self.kind {
            GateKind::Toffoli => c >= 2 && t == 1,
            GateKind::Fredkin => c >= 1 && t == 2,
            GateKind::Peres => c == 1 && t == 2,
            GateKind::Swap => c == 0 && t == 2,
            GateKind::Not | GateKind::Hadamard | GateKind::Root(_) | GateKind::Phase(_) => {
                c == 0 && t == 1
            }
            GateKind::Cnot
            | GateKind::Cv
            | GateKind::CvDag
            | GateKind::CRoot(_)
            | GateKind::CRootDag(_)
            | GateKind::CPhase(_) => c == 1 && t == 1,
        };
        if !arity_ok {
            return Err(format!("{self}: wrong number of lines for {:?}", self.kind));
        }
        let mut seen: Vec<usize> = self.lines().collect();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(format!("{self}: a line is used twice"));
        }
        if let Some(&l) = seen.last() {
            if l >= n {
                return Err(format!("{self}: line {l} out of range for {n} lines"));
            }
        }
        Ok(())
    }

    /// Nearest-neighbor cost: `|c - t| - 1` per interacting pair.
    ///
    /// Multi-qubit gates sum every control/target pair and, for two-target
    /// gates, the target/target pair.
    pub fn nnc(&self) -> usize {
        let dist = |a: usize, b: usize| a.abs_diff(b).saturating_sub(1);
        let mut total: usize = self
            .controls
            .iter()
            .flat_map(|&c| self.targets.iter().map(move |&t| dist(c, t)))
            .sum();
        if let [t1, t2] = self.targets[..] {
            total += dist(t1, t2);
        }
        total
    }

    /// The gate with every line `l` replaced by `map[l]`.
    pub fn relabeled(&self, map: &[usize]) -> Gate {
        Gate {
            kind: self.kind,
            controls: self.controls.iter().map(|&l| map[l]).collect(),
            targets: self.targets.iter().map(|&l| map[l]).collect(),
        }
    }

    /// The gate with every line shifted by `offset`.
    pub fn shifted(&self, offset: isize) -> Gate {
        let mv = |l: &usize| (*l as isize + offset) as usize;
        Gate {
            kind: self.kind,
            controls: self.controls.iter().map(mv).collect(),
            targets: self.targets.iter().map(mv).collect(),
        }
    }

    /// Inverse gate, if it is again a single gate of this IR.
    ///
    /// Peres and single-qubit roots/phases have no single-gate inverse here.
    pub fn inverse(&self) -> Option<Gate> {
        let kind = match self.kind {
            GateKind::Cv => GateKind::CvDag,
            GateKind::CvDag => GateKind::Cv,
            GateKind::CRoot(k) => GateKind::CRootDag(k),
            GateKind::CRootDag(k) => GateKind::CRoot(k),
            GateKind::Toffoli
            | GateKind::Fredkin
            | GateKind::Not
            | GateKind::Cnot
            | GateKind::Swap
            | GateKind::Hadamard => self.kind,
            GateKind::Peres | GateKind::Root(_) | GateKind::Phase(_) | GateKind::CPhase(_) => {
                return None
            }
        };
        Some(Gate { kind, controls: self.controls.clone(), targets: self.targets.clone() })
    }

    /// Same gate on the same lines with the roles of the two lines exchanged,
    /// for two-line elementary gates. Symmetric gates map to themselves.
    pub fn role_swapped(&self) -> Option<Gate> {
        match (self.controls.as_slice(), self.targets.as_slice()) {
            (&[c], &[t]) => Some(Gate { kind: self.kind, controls: vec![t], targets: vec![c] }),
            (&[], &[a, b]) if self.kind == GateKind::Swap => Some(Gate::swap(b, a)),
            _ => None,
        }
    }

    /// Swap gates on the same unordered pair compare equal under this key.
    pub(crate) fn swap_pair(&self) -> Option<(usize, usize)> {
        if self.kind == GateKind::Swap {
            let (a, b) = (self.targets[0], self.targets[1]);
            Some((a.min(b), a.max(b)))
        } else {
            None
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.kind)?;
        if !self.controls.is_empty() {
            write!(f, "{:?}", self.controls)?;
        }
        write!(f, "->{:?}", self.targets)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors_normalize() {
        assert_eq!(Gate::toffoli(vec![], 0).kind, GateKind::Not);
        assert_eq!(Gate::toffoli(vec![1], 0).kind, GateKind::Cnot);
        assert_eq!(Gate::toffoli(vec![1, 2], 0).kind, GateKind::Toffoli);
        assert_eq!(Gate::fredkin(vec![], 0, 1).kind, GateKind::Swap);
        assert_eq!(Gate::croot(2, 0, 1).kind, GateKind::Cv);
        assert_eq!(Gate::croot_dag(2, 0, 1).kind, GateKind::CvDag);
        assert_eq!(Gate::root(1, 0).kind, GateKind::Not);
    }

    #[test]
    fn nnc_two_qubit() {
        assert_eq!(Gate::cnot(0, 2).nnc(), 1);
        assert_eq!(Gate::cnot(1, 2).nnc(), 0);
        assert_eq!(Gate::cnot(2, 1).nnc(), 0);
        assert_eq!(Gate::swap(0, 3).nnc(), 2);
        assert_eq!(Gate::not(4).nnc(), 0);
    }

    #[test]
    fn nnc_multi_qubit_pairwise() {
        assert_eq!(Gate::toffoli(vec![0, 1], 2).nnc(), 1);
        assert_eq!(Gate::toffoli(vec![0, 2], 1).nnc(), 0);
        // control/target pairs 0 + 2, target pair 1
        assert_eq!(Gate::peres(0, 1, 3).nnc(), 3);
        assert_eq!(Gate::fredkin(vec![2], 0, 1).nnc(), 1);
    }

    #[test]
    fn validate_catches_bad_gates() {
        assert!(Gate::cnot(0, 0).validate(2).is_err());
        assert!(Gate::cnot(0, 2).validate(2).is_err());
        assert!(Gate::cnot(0, 1).validate(2).is_ok());
        let bad = Gate { kind: GateKind::Peres, controls: vec![0, 1], targets: vec![2] };
        assert!(bad.validate(3).is_err());
    }

    #[test]
    fn inverse_and_roles() {
        assert_eq!(Gate::cv(0, 1).inverse(), Some(Gate::cv_dag(0, 1)));
        assert_eq!(Gate::cnot(0, 1).role_swapped(), Some(Gate::cnot(1, 0)));
        assert_eq!(Gate::toffoli(vec![0, 1], 2).role_swapped(), None);
    }
}
