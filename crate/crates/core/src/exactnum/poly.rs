//! Sparse multivariate polynomials over the rationals.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use super::rational::{fmt_rational, Rational};
use super::symbol::Symbol;
use super::ExactError;

/// A power product `s1^e1 * s2^e2 * ...` with symbols sorted and exponents positive.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[(Symbol, u32); 4]>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(SmallVec::new())
    }

    pub fn var(s: Symbol, e: u32) -> Monomial {
        let mut v = SmallVec::new();
        if e > 0 {
            v.push((s, e));
        }
        Monomial(v)
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Symbol, u32)>) -> Monomial {
        let mut m = Monomial::one();
        for (s, e) in pairs {
            m = m.mul(&Monomial::var(s, e)).0;
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, s: Symbol) -> u32 {
        self.0
            .iter()
            .find(|(t, _)| *t == s)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Symbol, u32)> + '_ {
        self.0.iter().copied()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    /// Product of two monomials. The flag is set when `i^2 = -1` flipped the sign.
    pub fn mul(&self, other: &Monomial) -> (Monomial, bool) {
        let mut out: SmallVec<[(Symbol, u32); 4]> = SmallVec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, ea) = self.0[i];
            let (b, eb) = other.0[j];
            match a.cmp(&b) {
                Ordering::Less => {
                    out.push((a, ea));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b, eb));
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a, ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        let mut negate = false;
        if let Some(pos) = out.iter().position(|(s, _)| s.is_imag()) {
            let e = out[pos].1;
            if e >= 2 {
                negate = (e / 2) % 2 == 1;
                if e.is_multiple_of(2) {
                    out.remove(pos);
                } else {
                    out[pos].1 = 1;
                }
            }
        }
        (Monomial(out), negate)
    }

    /// `self / other` when every exponent of `other` is covered.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = self.0.clone();
        for &(s, e) in other.0.iter() {
            let pos = out.iter().position(|(t, _)| *t == s)?;
            if out[pos].1 < e {
                return None;
            }
            out[pos].1 -= e;
            if out[pos].1 == 0 {
                out.remove(pos);
            }
        }
        Some(Monomial(out))
    }

    pub fn without(&self, s: Symbol) -> Monomial {
        Monomial(self.0.iter().copied().filter(|(t, _)| *t != s).collect())
    }

    pub fn with_exponent(&self, s: Symbol, e: u32) -> Monomial {
        let base = self.without(s);
        base.mul(&Monomial::var(s, e)).0
    }

    /// Componentwise minimum of exponents.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .filter_map(|&(s, e)| {
                    let f = other.exponent(s);
                    (f > 0).then_some((s, e.min(f)))
                })
                .collect(),
        )
    }
}

impl Ord for Monomial {
    /// Lexicographic order; symbols earlier in name order are more significant.
    fn cmp(&self, other: &Self) -> Ordering {
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some(&(a, ea)), Some(&(b, eb))) => match a.cmp(&b) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, &(s, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Multivariate polynomial with rational coefficients; zero terms are never stored.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero() -> MultiPoly {
        MultiPoly::default()
    }

    pub fn one() -> MultiPoly {
        MultiPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> MultiPoly {
        MultiPoly::term(c, Monomial::one())
    }

    pub fn int(n: i64) -> MultiPoly {
        MultiPoly::constant(super::rational::int(n))
    }

    pub fn var(s: Symbol) -> MultiPoly {
        MultiPoly::term(Rational::one(), Monomial::var(s, 1))
    }

    pub fn term(c: Rational, m: Monomial) -> MultiPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, Rational)>) -> MultiPoly {
        let mut p = MultiPoly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, Rational)> {
        self.terms.into_iter()
    }

    /// The value if this polynomial has no symbols.
    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.constant_value().is_some()
    }

    /// The single term of a monomial polynomial.
    pub fn as_monomial(&self) -> Option<(&Monomial, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (n, c) in &self.terms {
            let (p, neg) = n.mul(m);
            out.add_term(p, if neg { -c.clone() } else { c.clone() });
        }
        out
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.terms
            .keys()
            .flat_map(|m| m.iter().map(|(s, _)| s))
            .collect()
    }

    pub fn contains(&self, s: Symbol) -> bool {
        self.terms.keys().any(|m| m.exponent(s) > 0)
    }

    pub fn degree_in(&self, s: Symbol) -> u32 {
        self.terms.keys().map(|m| m.exponent(s)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::total_degree).max().unwrap_or(0)
    }

    /// Coefficients as a univariate polynomial in `s`, lowest degree first.
    pub fn coeffs_in(&self, s: Symbol) -> Vec<MultiPoly> {
        let deg = self.degree_in(s) as usize;
        let mut out = vec![MultiPoly::zero(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exponent(s) as usize;
            out[e].add_term(m.without(s), c.clone());
        }
        out
    }

    pub fn from_coeffs_in(s: Symbol, coeffs: &[MultiPoly]) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            out = &out + &c.mul_monomial(&Monomial::var(s, k as u32));
        }
        out
    }

    pub fn substitute(&self, s: Symbol, value: &MultiPoly) -> MultiPoly {
        if !self.contains(s) {
            return self.clone();
        }
        let coeffs = self.coeffs_in(s);
        let mut acc = MultiPoly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * value) + c;
        }
        acc
    }

    /// Substitutes rational values for the listed symbols, leaving the rest symbolic.
    pub fn eval_partial(&self, assignment: &BTreeMap<Symbol, Rational>) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut coef = c.clone();
            let mut rest = Monomial::one();
            for (s, e) in m.iter() {
                match assignment.get(&s) {
                    Some(v) => coef *= num_traits::pow(v.clone(), e as usize),
                    None => rest = rest.mul(&Monomial::var(s, e)).0,
                }
            }
            out.add_term(rest, coef);
        }
        out
    }

    pub fn evaluate(&self, assignment: &BTreeMap<Symbol, Rational>) -> Result<Rational, ExactError> {
        let p = self.eval_partial(assignment);
        p.constant_value().ok_or_else(|| ExactError::UnassignedSymbol {
            symbol: p.symbols().into_iter().next().map(|s| s.name().to_string()).unwrap_or_default(),
        })
    }

    pub fn derivative(&self, s: Symbol) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(s);
            if e > 0 {
                out.add_term(m.with_exponent(s, e - 1), c * Rational::from_integer(e.into()));
            }
        }
        out
    }

    /// Exact quotient by `(var - shift)`, where `shift` does not contain `var`.
    pub fn div_linear(&self, var: Symbol, shift: &MultiPoly) -> Option<MultiPoly> {
        let coeffs = self.coeffs_in(var);
        if coeffs.len() == 1 {
            return if coeffs[0].is_zero() { Some(MultiPoly::zero()) } else { None };
        }
        let n = coeffs.len() - 1;
        let mut q = vec![MultiPoly::zero(); n];
        q[n - 1] = coeffs[n].clone();
        for j in (1..n).rev() {
            q[j - 1] = &coeffs[j] + &(shift * &q[j]);
        }
        let rem = &coeffs[0] + &(shift * &q[0]);
        rem.is_zero().then(|| MultiPoly::from_coeffs_in(var, &q))
    }

    /// Exact multivariate division, `None` when `d` does not divide `self`.
    ///
    /// `d` must not contain the imaginary unit.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        let (dm, dc) = d.leading()?;
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let mut rem = self.clone();
        let mut q = MultiPoly::zero();
        while let Some((lm, lc)) = rem.leading() {
            let m = lm.div(dm)?;
            let c = lc / dc;
            let step = d.mul_monomial(&m).scale(&c);
            q.add_term(m, c);
            rem = &rem - &step;
        }
        Some(q)
    }

    /// Splits `p = re + i*im` with `re`, `im` free of the imaginary unit.
    pub fn split_imag(&self) -> (MultiPoly, MultiPoly) {
        let i = Symbol::imag();
        let mut re = MultiPoly::zero();
        let mut im = MultiPoly::zero();
        for (m, c) in &self.terms {
            if m.exponent(i) > 0 {
                im.add_term(m.without(i), c.clone());
            } else {
                re.add_term(m.clone(), c.clone());
            }
        }
        (re, im)
    }

    /// Rational content and monomial content: `self = c * m * primitive`.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else { return Monomial::one() };
        it.fold(first.clone(), |g, m| g.gcd(m))
    }

    pub fn map_coeffs(&self, f: impl Fn(&Rational) -> Rational) -> MultiPoly {
        MultiPoly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                f.write_str(&fmt_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_rational(&a))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &'a MultiPoly) -> MultiPoly {
        let (big, small) = if self.terms.len() >= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &'a MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &'a MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let (m, neg) = m1.mul(m2);
                let c = c1 * c2;
                out.add_term(m, if neg { -c } else { c });
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::{int, rat};
    use crate::exactnum::symbol::sym;

    fn v(s: &str) -> MultiPoly {
        MultiPoly::var(sym(s))
    }

    #[test]
    fn difference_of_squares() {
        let nu = v("nu");
        let half = MultiPoly::constant(rat(1, 2));
        let lhs = &(&nu * &nu) - &MultiPoly::constant(rat(1, 4));
        let rhs = &(&nu - &half) * &(&nu + &half);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn imaginary_unit_reduces() {
        let i = MultiPoly::var(Symbol::imag());
        assert_eq!(&i * &i, MultiPoly::int(-1));
        assert_eq!(i.pow(3), -&i);
        assert_eq!(i.pow(4), MultiPoly::one());
    }

    #[test]
    fn exact_division() {
        let x = v("x");
        let a = v("a");
        let p = &(&x - &a) * &(&(&x * &x) + &a);
        assert_eq!(p.div_exact(&(&x - &a)), Some(&(&x * &x) + &a));
        assert_eq!(p.div_linear(sym("x"), &a), Some(&(&x * &x) + &a));
        assert_eq!(p.div_linear(sym("x"), &-&a), None);
        assert_eq!((&x + &MultiPoly::one()).div_exact(&a), None);
    }

    #[test]
    fn substitution_and_evaluation() {
        let x = v("x");
        let p = &(&x * &x) + &x.scale(&int(3));
        let q = p.substitute(sym("x"), &(&v("y") + &MultiPoly::one()));
        let mut asg = BTreeMap::new();
        asg.insert(sym("y"), int(1));
        assert_eq!(q.evaluate(&asg).unwrap(), int(10));
        assert!(MultiPoly::zero().evaluate(&BTreeMap::new()).unwrap().is_zero());
        assert!(p.evaluate(&BTreeMap::new()).is_err());
    }

    #[test]
    fn display_orders_leading_first() {
        let p = &(&v("x").pow(2).scale(&rat(-3, 2)) + &v("y")) + &MultiPoly::int(7);
        assert_eq!(p.to_string(), "-3/2*x^2 + y + 7");
    }
}
