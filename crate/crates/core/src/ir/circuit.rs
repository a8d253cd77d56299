use super::gate::Gate;

/// Per-line metadata carried over from `.real` headers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Line {
    pub label: String,
    pub input: String,
    pub output: String,
    /// `Some('0')`/`Some('1')` for a constant input, `None` for a primary input.
    pub constant: Option<char>,
    pub garbage: bool,
}

impl Line {
    pub fn named(label: impl Into<String>) -> Line {
        let label = label.into();
        Line { input: label.clone(), output: label.clone(), label, constant: None, garbage: false }
    }
}

/// An ordered cascade of gates over `n` lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    pub version: String,
    pub lines: Vec<Line>,
    pub gates: Vec<Gate>,
}

impl Circuit {
    /// Empty circuit on `n` lines labelled `a`, `b`, ... (then `x26`, `x27`, ...).
    pub fn new(n: usize) -> Circuit {
        Circuit { version: "2.0".into(), lines: (0..n).map(|i| Line::named(default_label(i))).collect(), gates: vec![] }
    }

    pub fn from_gates(n: usize, gates: Vec<Gate>) -> Circuit {
        let mut c = Circuit::new(n);
        c.gates = gates;
        c
    }

    /// A circuit with the same line metadata and no gates.
    pub fn empty_like(&self) -> Circuit {
        Circuit { version: self.version.clone(), lines: self.lines.clone(), gates: vec![] }
    }

    pub fn with_gates(&self, gates: Vec<Gate>) -> Circuit {
        Circuit { version: self.version.clone(), lines: self.lines.clone(), gates }
    }

    pub fn n(&self) -> usize {
        self.lines.len()
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, g: Gate) {
        self.gates.push(g);
    }

    pub fn validate(&self) -> Result<(), String> {
        self.gates.iter().try_for_each(|g| g.validate(self.n()))
    }

    pub fn swap_count(&self) -> usize {
        self.gates.iter().filter(|g| g.swap_pair().is_some()).count()
    }

    /// Moves logical line `l` to position `placement[l]`; gates and line
    /// metadata follow their lines.
    pub fn relabeled(&self, placement: &[usize]) -> Circuit {
        let mut lines = self.lines.clone();
        for (l, &p) in placement.iter().enumerate() {
            lines[p] = self.lines[l].clone();
        }
        Circuit {
            version: self.version.clone(),
            lines,
            gates: self.gates.iter().map(|g| g.relabeled(placement)).collect(),
        }
    }

    /// Concatenation; widths must agree.
    pub fn then(&self, other: &Circuit) -> Circuit {
        assert_eq!(self.n(), other.n(), "concatenating circuits of different widths");
        let mut out = self.clone();
        out.gates.extend(other.gates.iter().cloned());
        out
    }
}

pub(crate) fn default_label(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("x{i}")
    }
}
