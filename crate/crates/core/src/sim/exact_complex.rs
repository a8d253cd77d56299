use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// The Gaussian dyadic `(re + im*i) / 2^k`, always stored with minimal `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExactComplex {
    re: i128,
    im: i128,
    k: u32,
}

impl ExactComplex {
    pub const ZERO: ExactComplex = ExactComplex { re: 0, im: 0, k: 0 };
    pub const ONE: ExactComplex = ExactComplex { re: 1, im: 0, k: 0 };
    pub const I: ExactComplex = ExactComplex { re: 0, im: 1, k: 0 };

    pub fn new(re: i128, im: i128, k: u32) -> ExactComplex {
        let mut z = ExactComplex { re, im, k };
        z.reduce();
        z
    }

    pub fn re_num(self) -> i128 {
        self.re
    }

    pub fn im_num(self) -> i128 {
        self.im
    }

    pub fn exponent(self) -> u32 {
        self.k
    }

    pub fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }

    pub fn conj(self) -> ExactComplex {
        ExactComplex { re: self.re, im: -self.im, k: self.k }
    }

    pub fn to_f64(self) -> (f64, f64) {
        let scale = (self.k as f64).exp2();
        (self.re as f64 / scale, self.im as f64 / scale)
    }

    fn reduce(&mut self) {
        if self.re == 0 && self.im == 0 {
            self.k = 0;
            return;
        }
        let shift = (self.re | self.im).trailing_zeros().min(self.k);
        self.re >>= shift;
        self.im >>= shift;
        self.k -= shift;
    }

    fn aligned(self, k: u32) -> (i128, i128) {
        let s = k - self.k;
        let lift = |v: i128| v.checked_mul(1i128 << s).expect("exact arithmetic overflow");
        (lift(self.re), lift(self.im))
    }
}

impl Add for ExactComplex {
    type Output = ExactComplex;
    fn add(self, rhs: ExactComplex) -> ExactComplex {
        let k = self.k.max(rhs.k);
        let (a, b) = self.aligned(k);
        let (c, d) = rhs.aligned(k);
        ExactComplex::new(a + c, b + d, k)
    }
}

impl Neg for ExactComplex {
    type Output = ExactComplex;
    fn neg(self) -> ExactComplex {
        ExactComplex { re: -self.re, im: -self.im, k: self.k }
    }
}

impl Sub for ExactComplex {
    type Output = ExactComplex;
    fn sub(self, rhs: ExactComplex) -> ExactComplex {
        self + (-rhs)
    }
}

impl Mul for ExactComplex {
    type Output = ExactComplex;
    fn mul(self, rhs: ExactComplex) -> ExactComplex {
        let m = |x: i128, y: i128| x.checked_mul(y).expect("exact arithmetic overflow");
        let re = m(self.re, rhs.re) - m(self.im, rhs.im);
        let im = m(self.re, rhs.im) + m(self.im, rhs.re);
        ExactComplex::new(re, im, self.k + rhs.k)
    }
}

impl fmt::Display for ExactComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.im < 0 { '-' } else { '+' };
        if self.k == 0 {
            write!(f, "({}{sign}{}i)", self.re, self.im.abs())
        } else {
            write!(f, "({}{sign}{}i)/{}", self.re, self.im.abs(), 1u128 << self.k)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        assert_eq!(ExactComplex::new(2, 4, 1), ExactComplex::new(1, 2, 0));
        assert_eq!(ExactComplex::new(0, 0, 5), ExactComplex::ZERO);
        assert_eq!(ExactComplex::new(2, 1, 3).exponent(), 3);
    }

    #[test]
    fn half_plus_half_i_squared_is_i_over_two() {
        let h = ExactComplex::new(1, 1, 1);
        assert_eq!(h * h, ExactComplex::new(0, 1, 1));
        assert_eq!(h + h.conj(), ExactComplex::ONE);
        assert_eq!(h - h, ExactComplex::ZERO);
    }
}
