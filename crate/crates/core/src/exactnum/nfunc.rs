//! Univariate polynomials and rational functions in the shifted number
//! operator `nu = N + u`, with [`PolyFraction`] coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::frac::{Atom, PolyFraction};
use super::poly::MultiPoly;
use super::rational::Rational;
use super::symbol::Symbol;

/// Dense polynomial in `nu`, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    coeffs: Vec<PolyFraction>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<PolyFraction>) -> UPoly {
        while coeffs.last().is_some_and(PolyFraction::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> UPoly {
        UPoly::default()
    }

    pub fn constant(c: PolyFraction) -> UPoly {
        UPoly::new(vec![c])
    }

    pub fn one() -> UPoly {
        UPoly::constant(PolyFraction::one())
    }

    /// The polynomial `nu`.
    pub fn nu() -> UPoly {
        UPoly::new(vec![PolyFraction::zero(), PolyFraction::one()])
    }

    pub fn from_rationals(cs: &[Rational]) -> UPoly {
        UPoly::new(cs.iter().cloned().map(PolyFraction::from).collect())
    }

    pub fn coeffs(&self) -> &[PolyFraction] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> PolyFraction {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lc(&self) -> PolyFraction {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &PolyFraction) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, e: u32) -> UPoly {
        (0..e).fold(UPoly::one(), |acc, _| &acc * self)
    }

    /// `p(nu + k)`.
    pub fn shift(&self, k: i64) -> UPoly {
        if k == 0 || self.coeffs.len() <= 1 {
            return self.clone();
        }
        // Horner with (nu + k).
        let lin = UPoly::new(vec![PolyFraction::int(k), PolyFraction::one()]);
        let mut acc = UPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &UPoly::constant(c.clone());
        }
        acc
    }

    pub fn eval(&self, at: &PolyFraction) -> PolyFraction {
        let mut acc = PolyFraction::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * at) + c;
        }
        acc
    }

    /// Rewrites `p(nu)` as a fraction in the given polynomial substituted for `nu`.
    pub fn compose_poly(&self, value: &MultiPoly) -> PolyFraction {
        self.eval(&PolyFraction::from(value.clone()))
    }

    /// Division with remainder; fails when the divisor's leading coefficient
    /// is not invertible in the coefficient field.
    pub fn div_rem(&self, d: &UPoly, atoms: &[Atom]) -> Option<(UPoly, UPoly)> {
        if d.is_zero() {
            return None;
        }
        let inv = d.lc().try_inv(atoms).ok()?;
        let mut rem = self.coeffs.clone();
        let dd = d.degree();
        if self.is_zero() || self.degree() < dd {
            return Some((UPoly::zero(), self.clone()));
        }
        let mut quot = vec![PolyFraction::zero(); self.degree() - dd + 1];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&c * dc);
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Some((UPoly::new(quot), UPoly::new(rem)))
    }

    pub fn monic(&self, atoms: &[Atom]) -> Option<UPoly> {
        let inv = self.lc().try_inv(atoms).ok()?;
        Some(self.scale(&inv))
    }

    /// Monic gcd by the Euclidean algorithm, when every step stays in the field.
    pub fn gcd(&self, other: &UPoly, atoms: &[Atom]) -> Option<UPoly> {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b, atoms)?;
            a = b;
            b = r;
        }
        if a.is_zero() {
            return Some(a);
        }
        a.monic(atoms)
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(&Rational::from_integer((k as i64).into())))
                .collect(),
        )
    }

    /// Applies a coefficient map, e.g. partial evaluation.
    pub fn try_map<E>(&self, f: impl Fn(&PolyFraction) -> Result<PolyFraction, E>) -> Result<UPoly, E> {
        Ok(UPoly::new(self.coeffs.iter().map(f).collect::<Result<_, _>>()?))
    }

    /// Coefficients if all are rational numbers.
    pub fn rational_coeffs(&self) -> Option<Vec<Rational>> {
        self.coeffs.iter().map(PolyFraction::constant_value).collect()
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*nu")?,
                _ => write!(f, "({c})*nu^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<'a> Add<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn add(self, rhs: &'a UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::new((0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &'a UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::new((0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }
}

impl<'a> Mul<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &'a UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut buckets: Vec<Vec<PolyFraction>> = vec![Vec::new(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    buckets[i + j].push(a * b);
                }
            }
        }
        UPoly::new(buckets.iter().map(|b| PolyFraction::sum(b.iter())).collect())
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Rational function `num / den` in `nu`.
///
/// The denominator is kept monic and the pair reduced by their gcd whenever
/// the coefficient field operations needed for that are available.
#[derive(Clone, Eq)]
pub struct NFunc {
    num: UPoly,
    den: UPoly,
}

impl NFunc {
    pub fn new(num: UPoly, den: UPoly) -> NFunc {
        assert!(!den.is_zero(), "zero denominator in NFunc");
        let mut f = NFunc { num, den };
        f.normalize();
        f
    }

    pub fn poly(p: UPoly) -> NFunc {
        NFunc { num: p, den: UPoly::one() }
    }

    pub fn constant(c: PolyFraction) -> NFunc {
        NFunc::poly(UPoly::constant(c))
    }

    pub fn zero() -> NFunc {
        NFunc::poly(UPoly::zero())
    }

    pub fn one() -> NFunc {
        NFunc::poly(UPoly::one())
    }

    pub fn nu() -> NFunc {
        NFunc::poly(UPoly::nu())
    }

    pub fn num(&self) -> &UPoly {
        &self.num
    }

    pub fn den(&self) -> &UPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == 0
    }

    /// The polynomial this function equals, if any.
    pub fn as_poly(&self) -> Option<UPoly> {
        if self.den.degree() == 0 {
            let inv = self.den.lc().try_inv(&[]).ok()?;
            return Some(self.num.scale(&inv));
        }
        let (q, r) = self.num.div_rem(&self.den, &[])?;
        r.is_zero().then_some(q)
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = UPoly::one();
            return;
        }
        if self.den.degree() > 0 {
            if let Some(g) = self.num.gcd(&self.den, &[]) {
                if g.degree() > 0 {
                    if let (Some((n, _)), Some((d, _))) = (self.num.div_rem(&g, &[]), self.den.div_rem(&g, &[])) {
                        self.num = n;
                        self.den = d;
                    }
                }
            }
        }
        if let Ok(inv) = self.den.lc().try_inv(&[]) {
            if !inv.is_one() {
                self.num = self.num.scale(&inv);
                self.den = self.den.scale(&inv);
            }
        }
    }

    pub fn shift(&self, k: i64) -> NFunc {
        NFunc { num: self.num.shift(k), den: self.den.shift(k) }
    }

    pub fn scale(&self, c: &PolyFraction) -> NFunc {
        NFunc::new(self.num.scale(c), self.den.clone())
    }

    pub fn inv(&self) -> NFunc {
        NFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: u32) -> NFunc {
        NFunc { num: self.num.pow(e), den: self.den.pow(e) }
    }

    pub fn eval(&self, at: &PolyFraction, atoms: &[Atom]) -> Result<PolyFraction, super::ExactError> {
        let d = self.den.eval(at);
        if d.is_zero() {
            return Err(super::ExactError::Pole { atom: format!("nu = {at}") });
        }
        self.num.eval(at).try_div(&d, atoms)
    }

    pub fn try_map<E>(&self, f: impl Fn(&PolyFraction) -> Result<PolyFraction, E>) -> Result<NFunc, E> {
        Ok(NFunc::new(self.num.try_map(&f)?, self.den.try_map(&f)?))
    }
}

impl PartialEq for NFunc {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        (&self.num * &other.den) == (&other.num * &self.den)
    }
}

impl fmt::Display for NFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == 0 && self.den.lc().is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "[{}] / [{}]", self.num, self.den)
        }
    }
}

impl fmt::Debug for NFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<'a> Add<&'a NFunc> for &'a NFunc {
    type Output = NFunc;
    fn add(self, rhs: &'a NFunc) -> NFunc {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.den == rhs.den {
            return NFunc::new(&self.num + &rhs.num, self.den.clone());
        }
        NFunc::new(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl<'a> Sub<&'a NFunc> for &'a NFunc {
    type Output = NFunc;
    fn sub(self, rhs: &'a NFunc) -> NFunc {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a NFunc> for &'a NFunc {
    type Output = NFunc;
    fn mul(self, rhs: &'a NFunc) -> NFunc {
        if self.is_zero() || rhs.is_zero() {
            return NFunc::zero();
        }
        NFunc::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &NFunc {
    type Output = NFunc;
    fn neg(self) -> NFunc {
        NFunc { num: -&self.num, den: self.den.clone() }
    }
}

/// Converts `p(nu)` into a fraction in `x` and `u` via `nu = x + u`.
pub fn in_x_and_u(p: &UPoly, x: Symbol, u: Symbol) -> PolyFraction {
    let nu = &MultiPoly::var(x) + &MultiPoly::var(u);
    p.compose_poly(&nu)
}
