//! Swap templates as explicit rewrite rules over a small window of lines.

use crate::ir::{Circuit, Gate};
use crate::sim::equivalent;

/// One entry of a rule pattern. `Gate(a, b)` stands for the rule's free
/// two-line gate with its first line (control) on `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    Swap(usize),
    Gate(usize, usize),
}

/// `lhs` may be replaced by `rhs`; both act on `width` adjacent lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteRule {
    pub name: String,
    pub width: usize,
    pub lhs: Vec<Slot>,
    pub rhs: Vec<Slot>,
}

impl RewriteRule {
    fn new(name: &str, width: usize, lhs: Vec<Slot>, rhs: Vec<Slot>) -> RewriteRule {
        RewriteRule { name: name.to_string(), width, lhs, rhs }
    }

    /// Net change in swap count when the rule is applied left to right.
    pub fn swap_delta(&self) -> isize {
        let swaps = |s: &[Slot]| s.iter().filter(|x| matches!(x, Slot::Swap(_))).count() as isize;
        swaps(&self.rhs) - swaps(&self.lhs)
    }

    /// Same rule with line `p` renamed to `width - 1 - p`.
    pub fn mirrored(&self) -> RewriteRule {
        let w = self.width;
        let flip = |s: &Slot| match *s {
            Slot::Swap(p) => Slot::Swap(w - 2 - p),
            Slot::Gate(a, b) => Slot::Gate(w - 1 - a, w - 1 - b),
        };
        RewriteRule {
            name: format!("{}-mirror", self.name),
            width: w,
            lhs: self.lhs.iter().map(flip).collect(),
            rhs: self.rhs.iter().map(flip).collect(),
        }
    }

    /// Builds both sides with `make(control, target)` in the gate slots.
    pub fn instantiate(&self, make: impl Fn(usize, usize) -> Gate) -> (Circuit, Circuit) {
        let build = |side: &[Slot]| {
            let gates = side
                .iter()
                .map(|s| match *s {
                    Slot::Swap(p) => Gate::swap(p, p + 1),
                    Slot::Gate(a, b) => make(a, b),
                })
                .collect();
            Circuit::from_gates(self.width, gates)
        };
        (build(&self.lhs), build(&self.rhs))
    }
}

/// The 1-, 2- and 3-SWAP templates and their mirror images.
pub fn rule_catalog() -> Vec<RewriteRule> {
    use Slot::{Gate as G, Swap as S};
    let base = [
        RewriteRule::new("1-swap", 2, vec![S(0), G(0, 1)], vec![G(1, 0), S(0)]),
        RewriteRule::new("1-swap-pair", 2, vec![S(0), G(0, 1), S(0)], vec![G(1, 0)]),
        RewriteRule::new("2-swap-a", 3, vec![S(1), G(0, 1), S(1)], vec![S(0), G(1, 2), S(0)]),
        RewriteRule::new("2-swap-b", 3, vec![G(0, 1), S(1), S(0)], vec![S(1), S(0), G(1, 2)]),
        RewriteRule::new("3-swap", 3, vec![S(0), S(1), S(0)], vec![S(1), S(0), S(1)]),
    ];
    let mut out = Vec::new();
    for rule in base {
        let mirror = rule.mirrored();
        let distinct = mirror.lhs != rule.lhs || mirror.rhs != rule.rhs;
        out.push(rule);
        if distinct {
            out.push(mirror);
        }
    }
    out
}

/// Checks a rule by simulation for every elementary two-line gate in its slots.
pub fn verify_rule(rule: &RewriteRule) -> bool {
    let makers: [fn(usize, usize) -> Gate; 3] = [Gate::cnot, Gate::cv, Gate::cv_dag];
    makers.iter().all(|make| {
        let (lhs, rhs) = rule.instantiate(make);
        equivalent(&lhs, &rhs).unwrap_or(false)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_rule_holds() {
        let rules = rule_catalog();
        assert!(rules.len() >= 8);
        for r in &rules {
            assert!(verify_rule(r), "{}", r.name);
        }
    }

    #[test]
    fn broken_rule_is_rejected() {
        let bad = RewriteRule::new("bad", 2, vec![Slot::Swap(0), Slot::Gate(0, 1)], vec![Slot::Gate(0, 1), Slot::Swap(0)]);
        assert!(!verify_rule(&bad));
    }

    #[test]
    fn swap_deltas() {
        let rules = rule_catalog();
        assert_eq!(rules.iter().find(|r| r.name == "1-swap-pair").unwrap().swap_delta(), -2);
        assert!(rules.iter().all(|r| r.swap_delta() <= 0));
    }
}
