//! Differential operators in `x, y` with fractional coefficients, kept in
//! normal form (all derivatives to the right).

mod basis;
mod q5;

pub use basis::{express_in_basis, WeylError};
pub use q5::{build_q5, q5_atoms, Q5Operators};

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use crate::exactnum::{Atom, MultiPoly, PolyFraction, Rational, Symbol};

pub fn x_sym() -> Symbol {
    Symbol::new("x")
}

pub fn y_sym() -> Symbol {
    Symbol::new("y")
}

/// Reduced Planck constant.
pub fn hbar_sym() -> Symbol {
    Symbol::new("h")
}

/// Length scale of the Q5 potential.
pub fn a_sym() -> Symbol {
    Symbol::new("a")
}

/// `sum f_{ij}(x, y) dx^i dy^j`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct DiffOp {
    terms: BTreeMap<(u32, u32), PolyFraction>,
}

fn binomial(n: u32, k: u32) -> Rational {
    let mut r = BigInt::from(1);
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    Rational::from_integer(r)
}

impl DiffOp {
    pub fn zero() -> DiffOp {
        DiffOp::default()
    }

    pub fn identity() -> DiffOp {
        DiffOp::scalar(PolyFraction::one())
    }

    /// Multiplication by a function.
    pub fn scalar(f: PolyFraction) -> DiffOp {
        DiffOp::term(0, 0, f)
    }

    pub fn term(i: u32, j: u32, f: PolyFraction) -> DiffOp {
        let mut terms = BTreeMap::new();
        if !f.is_zero() {
            terms.insert((i, j), f);
        }
        DiffOp { terms }
    }

    pub fn dx() -> DiffOp {
        DiffOp::term(1, 0, PolyFraction::one())
    }

    pub fn dy() -> DiffOp {
        DiffOp::term(0, 1, PolyFraction::one())
    }

    /// Momentum `-i h d/dx`.
    pub fn px() -> DiffOp {
        DiffOp::term(1, 0, momentum_factor())
    }

    pub fn py() -> DiffOp {
        DiffOp::term(0, 1, momentum_factor())
    }

    pub fn from_terms(it: impl IntoIterator<Item = ((u32, u32), PolyFraction)>) -> DiffOp {
        let mut op = DiffOp::zero();
        for (k, f) in it {
            op.add_term(k, f);
        }
        op
    }

    fn add_term(&mut self, key: (u32, u32), f: PolyFraction) {
        if f.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(f);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &f;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), PolyFraction> {
        &self.terms
    }

    pub fn coeff(&self, i: u32, j: u32) -> PolyFraction {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total derivative order.
    pub fn order(&self) -> u32 {
        self.terms.keys().map(|(i, j)| i + j).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &PolyFraction) -> DiffOp {
        DiffOp::from_terms(self.terms.iter().map(|(k, f)| (*k, f * c)))
    }

    /// Every denominator atom that occurs in a coefficient.
    pub fn atoms(&self) -> Vec<Atom> {
        let mut out: Vec<Atom> = self.terms.values().flat_map(|f| f.den().keys().cloned()).collect();
        out.sort();
        out.dedup();
        out
    }

    /// Fails when a coefficient has a denominator atom outside `allowed`
    /// (plain symbols are always allowed).
    pub fn check_atoms(&self, allowed: &[Atom]) -> Result<(), WeylError> {
        match self.atoms().into_iter().find(|a| !a.is_symbol() && !allowed.contains(a)) {
            Some(a) => Err(WeylError::UndeclaredAtom(a.to_string())),
            None => Ok(()),
        }
    }

    /// `self ∘ rhs`, normal ordered by the Leibniz rule.
    pub fn compose(&self, rhs: &DiffOp) -> DiffOp {
        let (x, y) = (x_sym(), y_sym());
        let max_i = self.terms.keys().map(|k| k.0).max().unwrap_or(0);
        let max_j = self.terms.keys().map(|k| k.1).max().unwrap_or(0);
        let mut buckets: BTreeMap<(u32, u32), Vec<PolyFraction>> = BTreeMap::new();
        for (&(k, l), g) in &rhs.terms {
            // derivs[s][t] = dx^s dy^t g
            let mut derivs: Vec<Vec<PolyFraction>> = Vec::with_capacity(max_i as usize + 1);
            for s in 0..=max_i {
                let first = if s == 0 { g.clone() } else { derivs[s as usize - 1][0].derivative(x) };
                let mut row = vec![first];
                for t in 1..=max_j {
                    let next = row[t as usize - 1].derivative(y);
                    row.push(next);
                }
                derivs.push(row);
            }
            for (&(i, j), f) in &self.terms {
                for s in 0..=i {
                    for t in 0..=j {
                        let d = &derivs[s as usize][t as usize];
                        if d.is_zero() {
                            continue;
                        }
                        let c = binomial(i, s) * binomial(j, t);
                        buckets
                            .entry((i - s + k, j - t + l))
                            .or_default()
                            .push((f * d).scale(&c));
                    }
                }
            }
        }
        DiffOp::from_terms(buckets.into_iter().map(|(k, v)| (k, PolyFraction::sum(v.iter()))))
    }

    pub fn pow(&self, e: u32) -> DiffOp {
        (1..e).fold(if e == 0 { DiffOp::identity() } else { self.clone() }, |acc, _| acc.compose(self))
    }

    /// `[self, rhs]`.
    pub fn commutator(&self, rhs: &DiffOp) -> DiffOp {
        &self.compose(rhs) - &rhs.compose(self)
    }

    /// `{self, rhs}`.
    pub fn anticommutator(&self, rhs: &DiffOp) -> DiffOp {
        &self.compose(rhs) + &rhs.compose(self)
    }

    /// The operator after `x -> -x` (when `flip_x`) and/or `y -> -y`.
    pub fn reflect(&self, flip_x: bool, flip_y: bool) -> DiffOp {
        let mut out = DiffOp::zero();
        for (&(i, j), f) in &self.terms {
            let mut g = f.clone();
            let mut sign = 1i64;
            if flip_x {
                g = reflect_fraction(&g, x_sym());
                if i % 2 == 1 {
                    sign = -sign;
                }
            }
            if flip_y {
                g = reflect_fraction(&g, y_sym());
                if j % 2 == 1 {
                    sign = -sign;
                }
            }
            out.add_term((i, j), g.scale(&Rational::from_integer(sign.into())));
        }
        out
    }
}

fn momentum_factor() -> PolyFraction {
    PolyFraction::from(&MultiPoly::var(Symbol::imag()) * &MultiPoly::var(hbar_sym())).scale(&Rational::from_integer((-1).into()))
}

/// `f(-s)` for a fraction whose atoms are linear in `s` with `s`-free shifts.
fn reflect_fraction(f: &PolyFraction, s: Symbol) -> PolyFraction {
    let minus = -MultiPoly::var(s);
    let num = f.num().substitute(s, &minus);
    let mut den = BTreeMap::new();
    let mut sign = 1i64;
    for (atom, &k) in f.den() {
        if atom.var() == s && !atom.is_symbol() {
            // s - c  ->  -(s + c)
            let shifted = Atom::linear(s, atom.poly().substitute(s, &MultiPoly::zero()));
            den.insert(shifted, k);
            if k % 2 == 1 {
                sign = -sign;
            }
        } else if atom.var() == s {
            den.insert(atom.clone(), k);
            if k % 2 == 1 {
                sign = -sign;
            }
        } else {
            den.insert(atom.clone(), k);
        }
    }
    PolyFraction::new(num.scale(&Rational::from_integer(sign.into())), den)
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (&(i, j), c) in self.terms.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            if i > 0 {
                write!(f, "*dx^{i}")?;
            }
            if j > 0 {
                write!(f, "*dy^{j}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<'a> Add<&'a DiffOp> for &'a DiffOp {
    type Output = DiffOp;
    fn add(self, rhs: &'a DiffOp) -> DiffOp {
        let mut out = self.clone();
        for (k, f) in &rhs.terms {
            out.add_term(*k, f.clone());
        }
        out
    }
}

impl<'a> Sub<&'a DiffOp> for &'a DiffOp {
    type Output = DiffOp;
    fn sub(self, rhs: &'a DiffOp) -> DiffOp {
        self + &(-rhs)
    }
}

impl Neg for &DiffOp {
    type Output = DiffOp;
    fn neg(self) -> DiffOp {
        DiffOp { terms: self.terms.iter().map(|(k, f)| (*k, -f)).collect() }
    }
}

impl<'a> Mul<&'a DiffOp> for &'a DiffOp {
    type Output = DiffOp;
    fn mul(self, rhs: &'a DiffOp) -> DiffOp {
        self.compose(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{parse_expr, SymbolTable};

    fn f(s: &str) -> PolyFraction {
        parse_expr(s, &SymbolTable::open().with_atoms(q5_atoms())).unwrap()
    }

    #[test]
    fn leibniz() {
        let xop = DiffOp::scalar(f("x"));
        assert_eq!(DiffOp::dx().compose(&xop), DiffOp::from_terms([((1, 0), f("x")), ((0, 0), f("1"))]));
        let pole = DiffOp::scalar(f("1/(x - a)"));
        assert_eq!(DiffOp::dx().commutator(&pole), DiffOp::scalar(f("-1/(x - a)^2")));
    }

    #[test]
    fn momentum_squared() {
        assert_eq!(DiffOp::px().compose(&DiffOp::px()), DiffOp::term(2, 0, f("-h^2")));
    }

    #[test]
    fn reflection() {
        let op = DiffOp::from_terms([((1, 0), f("x/(x - a)")), ((0, 1), f("y"))]);
        let r = op.reflect(true, false);
        assert_eq!(r.coeff(1, 0), f("-x/(x + a)"));
        assert_eq!(r.reflect(true, false), op);
        assert_eq!(op.reflect(false, true).coeff(0, 1), f("y"));
    }
}
