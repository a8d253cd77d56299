//! Circuit simulation and equivalence checking.
//!
//! Gates built from NOT, CNOT, Toffoli, Swap, Fredkin, Peres, V and V+ (and
//! the phases 1, -1, i) are simulated exactly over Gaussian dyadic numbers.
//! Anything else falls back to `f64` complex arithmetic compared with an
//! absolute tolerance of [`TOLERANCE`].

mod exact_complex;

use std::f64::consts::PI;

use num_complex::Complex64;
use thiserror::Error;

pub use exact_complex::ExactComplex;

use crate::exact::ReversibleFunction;
use crate::ir::{Circuit, Gate, GateKind};

pub const TOLERANCE: f64 = 1e-9;
pub const MAX_EXACT_LINES: usize = 8;
pub const MAX_FLOAT_LINES: usize = 10;
/// Width limit of the permutation fast path.
pub const MAX_PERMUTATION_LINES: usize = 24;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SimError {
    #[error("circuit has {n} lines; the {mode} simulator handles at most {max}")]
    TooWide { n: usize, max: usize, mode: &'static str },
    #[error("gate {0} is outside the exactly representable gate set")]
    NotExact(String),
    #[error("circuits have different widths ({0} vs {1})")]
    WidthMismatch(usize, usize),
    #[error("malformed gate: {0}")]
    Malformed(String),
}

/// Amplitude arithmetic shared by both backends.
pub trait Amplitude: Copy + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(self, o: Self) -> Self;
    fn mul(self, o: Self) -> Self;
    fn conj(self) -> Self;
    fn close_to(self, o: Self) -> bool;
}

impl Amplitude for ExactComplex {
    fn zero() -> Self {
        ExactComplex::ZERO
    }
    fn one() -> Self {
        ExactComplex::ONE
    }
    fn add(self, o: Self) -> Self {
        self + o
    }
    fn mul(self, o: Self) -> Self {
        self * o
    }
    fn conj(self) -> Self {
        ExactComplex::conj(self)
    }
    fn close_to(self, o: Self) -> bool {
        self == o
    }
}

impl Amplitude for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn add(self, o: Self) -> Self {
        self + o
    }
    fn mul(self, o: Self) -> Self {
        self * o
    }
    fn conj(self) -> Self {
        Complex64::conj(&self)
    }
    fn close_to(self, o: Self) -> bool {
        (self - o).norm() < TOLERANCE
    }
}

/// Dense `2^n x 2^n` matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    dim: usize,
    data: Vec<T>,
}

impl<T: Amplitude> Matrix<T> {
    pub fn identity(dim: usize) -> Matrix<T> {
        let mut data = vec![T::zero(); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = T::one();
        }
        Matrix { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> T {
        self.data[row * self.dim + col]
    }

    fn row_mut(&mut self, r: usize) -> &mut [T] {
        &mut self.data[r * self.dim..(r + 1) * self.dim]
    }

    fn two_rows(&mut self, a: usize, b: usize) -> (&mut [T], &mut [T]) {
        debug_assert!(a < b);
        let d = self.dim;
        let (lo, hi) = self.data.split_at_mut(b * d);
        (&mut lo[a * d..(a + 1) * d], &mut hi[..d])
    }

    pub fn approx_eq(&self, other: &Matrix<T>) -> bool {
        self.dim == other.dim && self.data.iter().zip(&other.data).all(|(a, b)| a.close_to(*b))
    }

    /// Equality up to a global phase factor.
    pub fn approx_eq_up_to_phase(&self, other: &Matrix<T>, abs: impl Fn(T) -> f64) -> bool {
        if self.dim != other.dim {
            return false;
        }
        let Some(p) = (0..self.data.len()).max_by(|&a, &b| abs(self.data[a]).total_cmp(&abs(self.data[b]))) else {
            return true;
        };
        let (x, y) = (self.data[p], other.data[p]);
        // a[j] * y == b[j] * x for all j; with unitarity this pins |y| = |x|
        abs(y) > 0.0
            && (abs(x) - abs(y)).abs() < TOLERANCE
            && self.data.iter().zip(&other.data).all(|(a, b)| a.mul(y).close_to(b.mul(x)))
    }

    /// `U * U^dagger == I`.
    pub fn is_unitary(&self) -> bool {
        let d = self.dim;
        (0..d).all(|i| {
            (0..d).all(|j| {
                let mut s = T::zero();
                for k in 0..d {
                    s = s.add(self.get(i, k).mul(self.get(j, k).conj()));
                }
                s.close_to(if i == j { T::one() } else { T::zero() })
            })
        })
    }

    pub fn to_float(&self, conv: impl Fn(T) -> Complex64) -> Matrix<Complex64> {
        Matrix { dim: self.dim, data: self.data.iter().map(|&z| conv(z)).collect() }
    }
}

/// Unitary of a circuit in whichever backend was able to represent it.
#[derive(Debug, Clone, PartialEq)]
pub enum Unitary {
    Exact(Matrix<ExactComplex>),
    Float(Matrix<Complex64>),
}

impl Unitary {
    pub fn dim(&self) -> usize {
        match self {
            Unitary::Exact(m) => m.dim(),
            Unitary::Float(m) => m.dim(),
        }
    }

    pub fn to_float(&self) -> Matrix<Complex64> {
        match self {
            Unitary::Exact(m) => m.to_float(exact_to_float),
            Unitary::Float(m) => m.clone(),
        }
    }

    pub fn is_unitary(&self) -> bool {
        match self {
            Unitary::Exact(m) => m.is_unitary(),
            Unitary::Float(m) => m.is_unitary(),
        }
    }
}

fn exact_to_float(z: ExactComplex) -> Complex64 {
    let (re, im) = z.to_f64();
    Complex64::new(re, im)
}

fn bit(n: usize, line: usize) -> usize {
    1 << (n - 1 - line)
}

fn controls_mask(n: usize, g: &Gate) -> usize {
    g.controls.iter().fold(0, |m, &c| m | bit(n, c))
}

/// Basis-index map of a classical gate, `None` for gates that create superpositions.
fn classical_action(n: usize, g: &Gate) -> Option<impl Fn(usize) -> usize> {
    let cm = controls_mask(n, g);
    let t: Vec<usize> = g.targets.iter().map(|&t| bit(n, t)).collect();
    let swap = |x: usize, a: usize, b: usize| {
        if ((x & a) != 0) != ((x & b) != 0) {
            x ^ a ^ b
        } else {
            x
        }
    };
    let kind = match g.kind {
        GateKind::Not | GateKind::Cnot | GateKind::Toffoli => 0,
        GateKind::Root(1) => 0,
        GateKind::Swap | GateKind::Fredkin => 1,
        GateKind::Peres => 2,
        _ => return None,
    };
    Some(move |x: usize| match kind {
        0 if x & cm == cm => x ^ t[0],
        1 if x & cm == cm => swap(x, t[0], t[1]),
        2 if x & cm == cm => {
            // t2({c, t1}, t2) then t1({c}, t1)
            let y = if x & t[0] != 0 { x ^ t[1] } else { x };
            y ^ t[0]
        }
        _ => x,
    })
}

/// Whether every gate of `c` is a classical (basis-permuting) gate.
pub fn is_classical(c: &Circuit) -> bool {
    c.gates.iter().all(|g| classical_action(c.n(), g).is_some())
}

/// The function computed by a classical circuit, without building matrices.
pub fn classical_permutation(c: &Circuit) -> Option<ReversibleFunction> {
    let n = c.n();
    if n > MAX_PERMUTATION_LINES {
        return None;
    }
    let mut perm: Vec<usize> = (0..1usize << n).collect();
    for g in &c.gates {
        let f = classical_action(n, g)?;
        for p in perm.iter_mut() {
            *p = f(*p);
        }
    }
    Some(ReversibleFunction::from_perm(n, perm).expect("classical gates are bijective"))
}

/// 2x2 matrix on the target line, applied when all controls are 1.
fn single_target_exact(kind: GateKind) -> Option<[ExactComplex; 4]> {
    let z = ExactComplex::ZERO;
    let o = ExactComplex::ONE;
    let p = ExactComplex::new(1, 1, 1);
    let m = ExactComplex::new(1, -1, 1);
    Some(match kind {
        GateKind::Not | GateKind::Cnot | GateKind::Toffoli => [z, o, o, z],
        GateKind::Cv | GateKind::Root(2) => [p, m, m, p],
        GateKind::CvDag => [m, p, p, m],
        GateKind::Phase(0) | GateKind::CPhase(0) => [o, z, z, o],
        GateKind::Phase(1) | GateKind::CPhase(1) => [o, z, z, -o],
        GateKind::Phase(2) | GateKind::CPhase(2) => [o, z, z, ExactComplex::I],
        _ => return None,
    })
}

/// `X^a` for `a = 1/2^(k-1)`, or its inverse.
fn x_power(k: u8, dagger: bool) -> [Complex64; 4] {
    let a = 1.0 / f64::from(k.saturating_sub(1)).exp2();
    let theta = PI * a / 2.0;
    let phase = Complex64::from_polar(1.0, theta);
    let c = phase * theta.cos();
    let s = phase * Complex64::new(0.0, -theta.sin());
    if dagger {
        [c.conj(), s.conj(), s.conj(), c.conj()]
    } else {
        [c, s, s, c]
    }
}

fn single_target_float(kind: GateKind) -> Option<[Complex64; 4]> {
    if let Some(m) = single_target_exact(kind) {
        return Some(m.map(exact_to_float));
    }
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let re = |x: f64| Complex64::new(x, 0.0);
    Some(match kind {
        GateKind::Hadamard => [re(r), re(r), re(r), re(-r)],
        GateKind::Root(k) | GateKind::CRoot(k) => x_power(k, false),
        GateKind::CRootDag(k) => x_power(k, true),
        GateKind::Phase(k) | GateKind::CPhase(k) => {
            let w = Complex64::from_polar(1.0, 2.0 * PI / f64::from(k).exp2());
            [re(1.0), re(0.0), re(0.0), w]
        }
        _ => return None,
    })
}

fn apply_gate<T: Amplitude>(
    u: &mut Matrix<T>,
    n: usize,
    g: &Gate,
    single: impl Fn(GateKind) -> Option<[T; 4]>,
) -> Result<(), SimError> {
    g.validate(n).map_err(SimError::Malformed)?;
    if let Some(f) = classical_action(n, g) {
        let old = u.clone();
        for r in 0..u.dim {
            let dst = f(r);
            u.row_mut(dst).copy_from_slice(old.row_mut_ref(r));
        }
        return Ok(());
    }
    let m = single(g.kind).ok_or_else(|| SimError::NotExact(g.to_string()))?;
    let cm = controls_mask(n, g);
    let tb = bit(n, g.targets[0]);
    for r0 in 0..u.dim {
        if r0 & tb != 0 || r0 & cm != cm {
            continue;
        }
        let (a, b) = u.two_rows(r0, r0 | tb);
        for (x, y) in a.iter_mut().zip(b.iter_mut()) {
            let (p, q) = (*x, *y);
            *x = m[0].mul(p).add(m[1].mul(q));
            *y = m[2].mul(p).add(m[3].mul(q));
        }
    }
    Ok(())
}

impl<T> Matrix<T> {
    fn row_mut_ref(&self, r: usize) -> &[T] {
        &self.data[r * self.dim..(r + 1) * self.dim]
    }
}

/// Whether the exact backend can represent every gate of `c`.
pub fn is_exactly_representable(c: &Circuit) -> bool {
    c.gates
        .iter()
        .all(|g| classical_action(c.n(), g).is_some() || single_target_exact(g.kind).is_some())
}

pub fn exact_unitary(c: &Circuit) -> Result<Matrix<ExactComplex>, SimError> {
    let n = c.n();
    if n > MAX_EXACT_LINES {
        return Err(SimError::TooWide { n, max: MAX_EXACT_LINES, mode: "exact" });
    }
    let mut u = Matrix::identity(1 << n);
    for g in &c.gates {
        apply_gate(&mut u, n, g, single_target_exact)?;
    }
    Ok(u)
}

pub fn float_unitary(c: &Circuit) -> Result<Matrix<Complex64>, SimError> {
    let n = c.n();
    if n > MAX_FLOAT_LINES {
        return Err(SimError::TooWide { n, max: MAX_FLOAT_LINES, mode: "floating-point" });
    }
    let mut u = Matrix::identity(1 << n);
    for g in &c.gates {
        apply_gate(&mut u, n, g, single_target_float)?;
    }
    Ok(u)
}

/// Unitary of `c`, exact when possible. The leftmost gate is applied first.
pub fn circuit_unitary(c: &Circuit) -> Result<Unitary, SimError> {
    if is_exactly_representable(c) && c.n() <= MAX_EXACT_LINES {
        exact_unitary(c).map(Unitary::Exact)
    } else {
        float_unitary(c).map(Unitary::Float)
    }
}

/// Functional equality, with no allowance for a global phase.
pub fn equivalent(a: &Circuit, b: &Circuit) -> Result<bool, SimError> {
    compare(a, b, false)
}

/// Functional equality up to a global phase factor.
pub fn equivalent_up_to_phase(a: &Circuit, b: &Circuit) -> Result<bool, SimError> {
    compare(a, b, true)
}

fn compare(a: &Circuit, b: &Circuit, up_to_phase: bool) -> Result<bool, SimError> {
    if a.n() != b.n() {
        return Err(SimError::WidthMismatch(a.n(), b.n()));
    }
    if let (Some(fa), Some(fb)) = (classical_permutation(a), classical_permutation(b)) {
        return Ok(fa == fb);
    }
    let norm_exact = |z: ExactComplex| exact_to_float(z).norm();
    match (circuit_unitary(a)?, circuit_unitary(b)?) {
        (Unitary::Exact(x), Unitary::Exact(y)) if up_to_phase => Ok(x.approx_eq_up_to_phase(&y, norm_exact)),
        (Unitary::Exact(x), Unitary::Exact(y)) => Ok(x == y),
        (x, y) => {
            let (x, y) = (x.to_float(), y.to_float());
            Ok(if up_to_phase { x.approx_eq_up_to_phase(&y, |z| z.norm()) } else { x.approx_eq(&y) })
        }
    }
}

/// The permutation realized by `c`, or `None` if some basis state is mapped
/// to a superposition or picks up a phase.
pub fn as_reversible_function(c: &Circuit) -> Result<Option<ReversibleFunction>, SimError> {
    if let Some(f) = classical_permutation(c) {
        return Ok(Some(f));
    }
    let u = circuit_unitary(c)?;
    let dim = u.dim();
    let mut perm = vec![0; dim];
    for (col, slot) in perm.iter_mut().enumerate() {
        let mut hit = None;
        for row in 0..dim {
            let (is_one, is_zero) = match &u {
                Unitary::Exact(m) => (m.get(row, col) == ExactComplex::ONE, m.get(row, col).is_zero()),
                Unitary::Float(m) => {
                    let z = m.get(row, col);
                    (z.close_to(Complex64::one()), z.close_to(Complex64::zero()))
                }
            };
            match (is_one, is_zero, hit) {
                (true, _, None) => hit = Some(row),
                (_, true, _) => {}
                _ => return Ok(None),
            }
        }
        match hit {
            Some(r) => *slot = r,
            None => return Ok(None),
        }
    }
    Ok(ReversibleFunction::from_perm(c.n(), perm).ok())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig2a() -> Circuit {
        Circuit::from_gates(
            3,
            vec![Gate::cv(0, 2), Gate::cv(1, 2), Gate::cnot(0, 1), Gate::cv_dag(1, 2), Gate::cnot(0, 1)],
        )
    }

    #[test]
    fn v_matrix_entries() {
        let u = exact_unitary(&Circuit::from_gates(1, vec![Gate::root(2, 0)])).unwrap();
        let p = ExactComplex::new(1, 1, 1);
        let m = ExactComplex::new(1, -1, 1);
        assert_eq!((u.get(0, 0), u.get(0, 1), u.get(1, 0), u.get(1, 1)), (p, m, m, p));
    }

    #[test]
    fn v_squared_is_not() {
        let vv = Circuit::from_gates(1, vec![Gate::root(2, 0), Gate::root(2, 0)]);
        assert!(equivalent(&vv, &Circuit::from_gates(1, vec![Gate::not(0)])).unwrap());
    }

    #[test]
    fn toffoli_network() {
        let t = Circuit::from_gates(3, vec![Gate::toffoli(vec![0, 1], 2)]);
        assert!(equivalent(&fig2a(), &t).unwrap());
        let f = as_reversible_function(&t).unwrap().unwrap();
        assert_eq!(f.perm(), &[0, 1, 2, 3, 4, 5, 7, 6]);
        assert_eq!(as_reversible_function(&fig2a()).unwrap().unwrap(), f);
    }

    #[test]
    fn v_is_not_boolean() {
        let v = Circuit::from_gates(1, vec![Gate::root(2, 0)]);
        assert_eq!(as_reversible_function(&v).unwrap(), None);
    }

    #[test]
    fn cnot_directions_differ() {
        let a = Circuit::from_gates(2, vec![Gate::cnot(0, 1)]);
        let b = Circuit::from_gates(2, vec![Gate::cnot(1, 0)]);
        assert!(!equivalent(&a, &b).unwrap());
        assert!(equivalent(&Circuit::new(2), &Circuit::new(2)).unwrap());
        assert!(equivalent(&a, &Circuit::new(3)).is_err());
    }

    #[test]
    fn float_roots_compose() {
        let mut c = Circuit::new(2);
        for _ in 0..4 {
            c.push(Gate::croot(3, 0, 1));
        }
        assert!(equivalent(&c, &Circuit::from_gates(2, vec![Gate::cnot(0, 1)])).unwrap());
        let hh = Circuit::from_gates(1, vec![Gate::hadamard(0), Gate::hadamard(0)]);
        assert!(equivalent(&hh, &Circuit::new(1)).unwrap());
        let q = Circuit::from_gates(1, vec![Gate::phase(3, 0); 4]);
        assert!(equivalent(&q, &Circuit::from_gates(1, vec![Gate::phase(1, 0)])).unwrap());
    }

    #[test]
    fn global_phase_mode() {
        // Z X Z X = -I
        let zxzx = Circuit::from_gates(1, vec![Gate::phase(1, 0), Gate::not(0), Gate::phase(1, 0), Gate::not(0)]);
        assert!(!equivalent(&zxzx, &Circuit::new(1)).unwrap());
        assert!(equivalent_up_to_phase(&zxzx, &Circuit::new(1)).unwrap());
    }

    #[test]
    fn unitarity() {
        assert!(circuit_unitary(&fig2a()).unwrap().is_unitary());
        let c = Circuit::from_gates(2, vec![Gate::hadamard(0), Gate::croot_dag(4, 0, 1)]);
        assert!(circuit_unitary(&c).unwrap().is_unitary());
    }

    #[test]
    fn peres_permutation() {
        let p = Circuit::from_gates(3, vec![Gate::peres(0, 1, 2)]);
        let q = Circuit::from_gates(3, vec![Gate::toffoli(vec![0, 1], 2), Gate::cnot(0, 1)]);
        assert_eq!(classical_permutation(&p), classical_permutation(&q));
        assert!(equivalent(&p, &q).unwrap());
    }
}
