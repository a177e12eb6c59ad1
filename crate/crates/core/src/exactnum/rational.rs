//! Arbitrary-precision rationals.
//!
//! `num-rational` keeps `BigRational` in lowest terms with a positive
//! denominator, which is exactly the invariant this crate relies on.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn to_f64(q: &Rational) -> f64 {
    // Scale down huge operands so the conversion does not overflow to inf/NaN.
    match (q.numer().to_f64(), q.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            let nb = q.numer().bits() as i64;
            let db = q.denom().bits() as i64;
            let shift = (nb.max(db) - 900).max(0) as u32;
            let n = (q.numer() >> shift).to_f64().unwrap_or(0.0);
            let d = (q.denom() >> shift).to_f64().unwrap_or(1.0);
            n / d
        }
    }
}

/// Exact conversion of a finite `f64`.
pub fn from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

/// The simplest rational (smallest denominator) in the closed interval `[lo, hi]`.
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    debug_assert!(lo <= hi);
    if lo.is_negative() && hi.is_positive() || lo.is_zero() || hi.is_zero() {
        return Rational::zero();
    }
    if hi.is_negative() {
        return -simplest_between(&-hi, &-lo);
    }
    // Continued-fraction descent on 0 < lo <= hi.
    let fl = lo.floor();
    if fl == *lo {
        return fl;
    }
    let next = &fl + Rational::one();
    if next <= *hi {
        return next;
    }
    let inner = simplest_between(&(hi - &fl).recip(), &(lo - &fl).recip());
    fl + inner.recip()
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

/// Least common multiple of the denominators.
pub fn denominator_lcm<'a>(it: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    it.into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

pub fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplest_rational_in_interval() {
        assert_eq!(simplest_between(&rat(1, 3), &rat(1, 2)), rat(1, 2));
        assert_eq!(simplest_between(&rat(13, 10), &rat(14, 10)), rat(4, 3));
        assert_eq!(simplest_between(&rat(-7, 5), &rat(-13, 10)), rat(-4, 3));
        assert_eq!(simplest_between(&rat(-1, 5), &rat(3, 10)), int(0));
        assert_eq!(simplest_between(&rat(3, 2), &rat(3, 2)), rat(3, 2));
        assert_eq!(simplest_between(&rat(5, 2), &rat(7, 2)), int(3));
    }

    #[test]
    fn float_conversion() {
        assert_eq!(to_f64(&rat(1, 4)), 0.25);
        assert_eq!(from_f64(0.5), Some(rat(1, 2)));
    }
}
