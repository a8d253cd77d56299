use std::fmt;

/// A bijection on `{0, ..., 2^n - 1}`; `perm[i]` is the image of input `i`.
///
/// Bit `n - 1 - l` of an index is the value of line `l`, so line 0 is the
/// most significant bit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReversibleFunction {
    n: usize,
    perm: Vec<usize>,
}

impl ReversibleFunction {
    pub fn identity(n: usize) -> ReversibleFunction {
        ReversibleFunction { n, perm: (0..1usize << n).collect() }
    }

    pub fn from_perm(n: usize, perm: Vec<usize>) -> Result<ReversibleFunction, String> {
        let size = 1usize << n;
        if perm.len() != size {
            return Err(format!("expected {size} images, got {}", perm.len()));
        }
        let mut seen = vec![false; size];
        for &p in &perm {
            if p >= size || std::mem::replace(&mut seen[p], true) {
                return Err(format!("not a permutation of 0..{size}"));
            }
        }
        Ok(ReversibleFunction { n, perm })
    }

    /// Parses a whitespace- or comma-separated list of images, e.g. `7 1 4 3 0 2 6 5`.
    pub fn parse(text: &str) -> Result<ReversibleFunction, String> {
        let perm = text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<usize>().map_err(|e| format!("`{s}`: {e}")))
            .collect::<Result<Vec<_>, _>>()?;
        if !perm.len().is_power_of_two() || perm.len() < 2 {
            return Err(format!("{} images is not a power of two", perm.len()));
        }
        ReversibleFunction::from_perm(perm.len().trailing_zeros() as usize, perm)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn apply(&self, x: usize) -> usize {
        self.perm[x]
    }

    pub fn inverse(&self) -> ReversibleFunction {
        let mut inv = vec![0; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p] = i;
        }
        ReversibleFunction { n: self.n, perm: inv }
    }

    /// `self` first, then `next`.
    pub fn then(&self, next: &ReversibleFunction) -> ReversibleFunction {
        assert_eq!(self.n, next.n);
        ReversibleFunction { n: self.n, perm: self.perm.iter().map(|&p| next.perm[p]).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }
}

impl fmt::Display for ReversibleFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.perm.iter().map(usize::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}
