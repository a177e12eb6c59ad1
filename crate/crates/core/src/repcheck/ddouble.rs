//! Double-double floats: an unevaluated sum `hi + lo` with about 32
//! significant digits, built from error-free transformations.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::exactnum::rational::{from_f64, to_f64};
use crate::exactnum::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct DoubleDouble {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

impl DoubleDouble {
    pub fn new(x: f64) -> Self {
        DoubleDouble { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn from_rational(q: &Rational) -> Self {
        let hi = to_f64(q);
        let rest = from_f64(hi).map(|h| q - h).unwrap_or_default();
        let (hi, lo) = quick_two_sum(hi, to_f64(&rest));
        DoubleDouble { hi, lo }
    }

    /// Square root of a nonnegative rational, one Newton step past `f64`.
    pub fn sqrt_rational(q: &Rational) -> Self {
        let x = DoubleDouble::from_rational(q);
        if x.hi <= 0.0 {
            return DoubleDouble::zero();
        }
        let s = DoubleDouble::new(x.hi.sqrt());
        let r = x - s * s;
        s + DoubleDouble::new(r.to_f64() / (2.0 * s.hi))
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        DoubleDouble { hi, lo }
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        DoubleDouble { hi: -self.hi, lo: -self.lo }
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e);
        DoubleDouble { hi, lo }
    }
}

impl Zero for DoubleDouble {
    fn zero() -> Self {
        DoubleDouble::new(0.0)
    }

    fn is_zero(&self) -> bool {
        self.hi == 0.0 && self.lo == 0.0
    }
}

impl One for DoubleDouble {
    fn one() -> Self {
        DoubleDouble::new(1.0)
    }
}

impl fmt::Display for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    #[test]
    fn sqrt_two_squared() {
        let s = DoubleDouble::sqrt_rational(&int(2));
        let r = s * s - DoubleDouble::new(2.0);
        assert!(r.to_f64().abs() < 1e-30, "{r:?}");
    }

    #[test]
    fn third_is_accurate() {
        let x = DoubleDouble::from_rational(&rat(1, 3));
        let r = x * DoubleDouble::new(3.0) - DoubleDouble::one();
        assert!(r.to_f64().abs() < 1e-31);
    }
}
