//! Polynomial fractions whose denominators are products of declared atoms.
//!
//! An atom is a monic linear form `var - shift` where `shift` does not
//! involve `var`; a bare symbol is the atom with zero shift. Atoms are
//! pairwise coprime irreducibles, so cancelling common atom powers yields a
//! unique representation without any multivariate gcd.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::{Monomial, MultiPoly};
use super::rational::Rational;
use super::symbol::Symbol;
use super::ExactError;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    var: Symbol,
    shift: MultiPoly,
}

impl Atom {
    pub fn symbol(s: Symbol) -> Atom {
        Atom { var: s, shift: MultiPoly::zero() }
    }

    /// Normalizes a linear polynomial to `c * atom`.
    ///
    /// The atom variable is the greatest symbol that occurs with degree one and
    /// a constant coefficient.
    pub fn from_poly(p: &MultiPoly) -> Option<(Rational, Atom)> {
        for s in p.symbols().into_iter().rev() {
            if s.is_imag() || p.degree_in(s) != 1 {
                continue;
            }
            let cs = p.coeffs_in(s);
            let Some(c) = cs[1].constant_value() else { continue };
            let shift = cs[0].scale(&-c.recip());
            return Some((c, Atom { var: s, shift }));
        }
        None
    }

    pub fn linear(var: Symbol, shift: MultiPoly) -> Atom {
        let p = &MultiPoly::var(var) - &shift;
        Atom::from_poly(&p).expect("linear atom").1
    }

    pub fn var(&self) -> Symbol {
        self.var
    }

    pub fn is_symbol(&self) -> bool {
        self.shift.is_zero()
    }

    pub fn poly(&self) -> MultiPoly {
        &MultiPoly::var(self.var) - &self.shift
    }

    pub fn pow_poly(&self, k: u32) -> MultiPoly {
        if self.is_symbol() {
            MultiPoly::term(Rational::one(), Monomial::var(self.var, k))
        } else {
            self.poly().pow(k)
        }
    }

    fn divide(&self, p: &MultiPoly) -> Option<MultiPoly> {
        if p.is_zero() {
            return Some(MultiPoly::zero());
        }
        if self.is_symbol() {
            if p.monomial_content().exponent(self.var) == 0 {
                return None;
            }
            let one = Monomial::var(self.var, 1);
            return Some(MultiPoly::from_terms(
                p.terms().map(|(m, c)| (m.div(&one).unwrap(), c.clone())),
            ));
        }
        p.div_linear(self.var, &self.shift)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_symbol() {
            write!(f, "{}", self.var)
        } else {
            write!(f, "({})", self.poly())
        }
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `num / prod(atom^k)` in lowest terms.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PolyFraction {
    num: MultiPoly,
    den: BTreeMap<Atom, u32>,
}

impl From<MultiPoly> for PolyFraction {
    fn from(num: MultiPoly) -> Self {
        PolyFraction { num, den: BTreeMap::new() }
    }
}

impl From<Rational> for PolyFraction {
    fn from(q: Rational) -> Self {
        PolyFraction::from(MultiPoly::constant(q))
    }
}

impl PolyFraction {
    pub fn zero() -> Self {
        PolyFraction::default()
    }

    pub fn one() -> Self {
        MultiPoly::one().into()
    }

    pub fn int(n: i64) -> Self {
        MultiPoly::int(n).into()
    }

    pub fn rational(q: Rational) -> Self {
        q.into()
    }

    pub fn var(s: Symbol) -> Self {
        MultiPoly::var(s).into()
    }

    pub fn new(num: MultiPoly, den: BTreeMap<Atom, u32>) -> Self {
        let mut f = PolyFraction { num, den };
        f.canonicalize();
        f
    }

    /// `1 / atom^k`.
    pub fn atom_inverse(atom: Atom, k: u32) -> Self {
        let mut den = BTreeMap::new();
        if k > 0 {
            den.insert(atom, k);
        }
        PolyFraction { num: MultiPoly::one(), den }
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &BTreeMap<Atom, u32> {
        &self.den
    }

    pub fn den_poly(&self) -> MultiPoly {
        self.den
            .iter()
            .fold(MultiPoly::one(), |acc, (a, &k)| &acc * &a.pow_poly(k))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_empty() && self.num.is_one()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.den.is_empty() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn as_poly(&self) -> Option<&MultiPoly> {
        self.den.is_empty().then_some(&self.num)
    }

    pub fn contains(&self, s: Symbol) -> bool {
        self.num.contains(s) || self.den.keys().any(|a| a.poly().contains(s))
    }

    pub fn symbols(&self) -> std::collections::BTreeSet<Symbol> {
        let mut out = self.num.symbols();
        for a in self.den.keys() {
            out.extend(a.poly().symbols());
        }
        out
    }

    fn canonicalize(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let atoms: Vec<Atom> = self.den.keys().cloned().collect();
        for atom in atoms {
            let k = self.den.get_mut(&atom).unwrap();
            while *k > 0 {
                match atom.divide(&self.num) {
                    Some(q) => {
                        self.num = q;
                        *k -= 1;
                    }
                    None => break,
                }
            }
            if *k == 0 {
                self.den.remove(&atom);
            }
        }
    }

    fn lcm_den<'a>(items: impl IntoIterator<Item = &'a PolyFraction>) -> BTreeMap<Atom, u32> {
        let mut l: BTreeMap<Atom, u32> = BTreeMap::new();
        for f in items {
            for (a, &k) in &f.den {
                let e = l.entry(a.clone()).or_insert(0);
                *e = (*e).max(k);
            }
        }
        l
    }

    fn lifted_num(&self, target: &BTreeMap<Atom, u32>) -> MultiPoly {
        let mut mono = Monomial::one();
        let mut out = self.num.clone();
        for (a, &k) in target {
            let have = self.den.get(a).copied().unwrap_or(0);
            if k > have {
                if a.is_symbol() {
                    mono = mono.mul(&Monomial::var(a.var, k - have)).0;
                } else {
                    out = &out * &a.pow_poly(k - have);
                }
            }
        }
        if mono.is_one() {
            out
        } else {
            out.mul_monomial(&mono)
        }
    }

    /// Sum of many fractions over one common denominator.
    pub fn sum<'a>(items: impl IntoIterator<Item = &'a PolyFraction> + Clone) -> PolyFraction {
        let den = Self::lcm_den(items.clone());
        let mut num = MultiPoly::zero();
        for f in items {
            if !f.is_zero() {
                num = &num + &f.lifted_num(&den);
            }
        }
        PolyFraction::new(num, den)
    }

    pub fn scale(&self, c: &Rational) -> PolyFraction {
        if c.is_zero() {
            return PolyFraction::zero();
        }
        PolyFraction { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul_poly(&self, p: &MultiPoly) -> PolyFraction {
        PolyFraction::new(&self.num * p, self.den.clone())
    }

    pub fn pow(&self, e: u32) -> PolyFraction {
        PolyFraction {
            num: self.num.pow(e),
            den: self.den.iter().map(|(a, &k)| (a.clone(), k * e)).collect(),
        }
    }

    /// Writes `p = c * prod(atom^k)` using symbol atoms and the extra atoms given.
    fn factor_into_atoms(p: &MultiPoly, extra: &[Atom]) -> Option<(Rational, BTreeMap<Atom, u32>)> {
        if p.is_zero() {
            return None;
        }
        let mut rest = p.clone();
        let mut factors = BTreeMap::new();
        let content = rest.monomial_content();
        if !content.is_one() {
            rest = MultiPoly::from_terms(rest.terms().map(|(m, c)| (m.div(&content).unwrap(), c.clone())));
            for (s, e) in content.iter() {
                factors.insert(Atom::symbol(s), e);
            }
        }
        for atom in extra.iter().filter(|a| !a.is_symbol()) {
            while !rest.is_constant() {
                match atom.divide(&rest) {
                    Some(q) => {
                        rest = q;
                        *factors.entry(atom.clone()).or_insert(0) += 1;
                    }
                    None => break,
                }
            }
        }
        if !rest.is_constant() {
            if let Some((c, atom)) = Atom::from_poly(&rest) {
                *factors.entry(atom).or_insert(0) += 1;
                return Some((c, factors));
            }
        }
        rest.constant_value().map(|c| (c, factors))
    }

    /// Multiplicative inverse when the numerator is a product of declared atoms.
    pub fn try_inv(&self, extra_atoms: &[Atom]) -> Result<PolyFraction, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let (c, factors) = Self::factor_into_atoms(&self.num, extra_atoms)
            .filter(|(_, f)| f.keys().all(|a| a.is_symbol() || extra_atoms.contains(a)))
            .ok_or_else(|| ExactError::NonMonomialDenominator { expr: self.num.to_string() })?;
        let num = self.den_poly().scale(&c.recip());
        Ok(PolyFraction::new(num, factors))
    }

    /// Square root of `c * monomial / atoms` with square `c`, even exponents,
    /// and `c > 0`; the root has positive coefficient.
    pub fn try_sqrt(&self) -> Option<PolyFraction> {
        use num_traits::Signed;
        let (m, c) = self.num.as_monomial()?;
        if !c.is_positive() || m.iter().any(|(_, e)| e % 2 == 1) || self.den.values().any(|k| k % 2 == 1) {
            return None;
        }
        let (n, d) = (c.numer().sqrt(), c.denom().sqrt());
        if &(&n * &n) != c.numer() || &(&d * &d) != c.denom() {
            return None;
        }
        let root = Monomial::from_pairs(m.iter().map(|(s, e)| (s, e / 2)));
        let num = MultiPoly::term(Rational::new(n, d), root);
        Some(PolyFraction::new(num, self.den.iter().map(|(a, k)| (a.clone(), k / 2)).collect()))
    }

    pub fn try_div(&self, other: &PolyFraction, extra_atoms: &[Atom]) -> Result<PolyFraction, ExactError> {
        Ok(self * &other.try_inv(extra_atoms)?)
    }

    pub fn derivative(&self, s: Symbol) -> PolyFraction {
        let dnum = self.num.derivative(s);
        if self.den.is_empty() {
            return dnum.into();
        }
        // d(n / prod a_i^k_i) = (n' * prod a_i - n * sum k_i a_i' prod_{j != i} a_j) / (den * prod a_i)
        let moving: Vec<(&Atom, u32, MultiPoly)> = self
            .den
            .iter()
            .filter_map(|(a, &k)| {
                let da = a.poly().derivative(s);
                (!da.is_zero()).then_some((a, k, da))
            })
            .collect();
        if moving.is_empty() {
            return PolyFraction::new(dnum, self.den.clone());
        }
        let prod_all = moving.iter().fold(MultiPoly::one(), |acc, (a, _, _)| &acc * &a.poly());
        let mut num = &dnum * &prod_all;
        for (i, (_, k, da)) in moving.iter().enumerate() {
            let others = moving
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .fold(MultiPoly::one(), |acc, (_, (b, _, _))| &acc * &b.poly());
            let t = &(&self.num * da) * &others;
            num = &num - &t.scale(&Rational::from_integer((*k).into()));
        }
        let mut den = self.den.clone();
        for (a, _, _) in &moving {
            *den.get_mut(*a).unwrap() += 1;
        }
        PolyFraction::new(num, den)
    }

    /// Substitutes rational values; atoms that become constants are folded in.
    pub fn eval_partial(&self, assignment: &BTreeMap<Symbol, Rational>) -> Result<PolyFraction, ExactError> {
        let num = self.num.eval_partial(assignment);
        let mut scale = Rational::one();
        let mut den = BTreeMap::new();
        for (a, &k) in &self.den {
            let p = a.poly().eval_partial(assignment);
            if let Some(c) = p.constant_value() {
                if c.is_zero() {
                    return Err(ExactError::Pole { atom: a.to_string() });
                }
                scale *= num_traits::pow(c, k as usize);
            } else if let Some((c, atom)) = Atom::from_poly(&p) {
                scale *= num_traits::pow(c, k as usize);
                *den.entry(atom).or_insert(0) += k;
            } else {
                return Err(ExactError::NonMonomialDenominator { expr: p.to_string() });
            }
        }
        Ok(PolyFraction::new(num.scale(&scale.recip()), den))
    }

    pub fn evaluate(&self, assignment: &BTreeMap<Symbol, Rational>) -> Result<Rational, ExactError> {
        let f = self.eval_partial(assignment)?;
        f.constant_value().ok_or_else(|| ExactError::UnassignedSymbol {
            symbol: f.symbols().into_iter().next().map(|s| s.name().to_string()).unwrap_or_default(),
        })
    }

    /// Substitutes a polynomial for a symbol that does not occur in any denominator atom.
    pub fn substitute(&self, s: Symbol, value: &MultiPoly) -> Result<PolyFraction, ExactError> {
        if self.den.keys().any(|a| a.poly().contains(s)) {
            return Err(ExactError::NonMonomialDenominator {
                expr: format!("substitution of {s} into denominator"),
            });
        }
        Ok(PolyFraction::new(self.num.substitute(s, value), self.den.clone()))
    }

    /// Splits into parts free of the imaginary unit: `self = re + i*im`.
    pub fn split_imag(&self) -> (PolyFraction, PolyFraction) {
        let (re, im) = self.num.split_imag();
        (PolyFraction::new(re, self.den.clone()), PolyFraction::new(im, self.den.clone()))
    }
}

impl fmt::Display for PolyFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        if self.num.len() == 1 {
            write!(f, "{}", self.num)?;
        } else {
            write!(f, "({})", self.num)?;
        }
        f.write_str("/")?;
        let parts: Vec<String> = self
            .den
            .iter()
            .map(|(a, &k)| if k == 1 { a.to_string() } else { format!("{a}^{k}") })
            .collect();
        if parts.len() == 1 {
            f.write_str(&parts[0])
        } else {
            write!(f, "({})", parts.join("*"))
        }
    }
}

impl fmt::Debug for PolyFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<'a> Add<&'a PolyFraction> for &'a PolyFraction {
    type Output = PolyFraction;
    fn add(self, rhs: &'a PolyFraction) -> PolyFraction {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.den == rhs.den {
            return PolyFraction::new(&self.num + &rhs.num, self.den.clone());
        }
        PolyFraction::sum([self, rhs])
    }
}

impl<'a> Sub<&'a PolyFraction> for &'a PolyFraction {
    type Output = PolyFraction;
    fn sub(self, rhs: &'a PolyFraction) -> PolyFraction {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a PolyFraction> for &'a PolyFraction {
    type Output = PolyFraction;
    fn mul(self, rhs: &'a PolyFraction) -> PolyFraction {
        if self.is_zero() || rhs.is_zero() {
            return PolyFraction::zero();
        }
        let mut den = self.den.clone();
        for (a, &k) in &rhs.den {
            *den.entry(a.clone()).or_insert(0) += k;
        }
        if self.den.is_empty() || rhs.den.is_empty() {
            // Only cross cancellation is possible.
            let mut f = PolyFraction { num: &self.num * &rhs.num, den };
            f.canonicalize();
            return f;
        }
        PolyFraction::new(&self.num * &rhs.num, den)
    }
}

impl Neg for &PolyFraction {
    type Output = PolyFraction;
    fn neg(self) -> PolyFraction {
        PolyFraction { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for PolyFraction {
    type Output = PolyFraction;
    fn neg(self) -> PolyFraction {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<PolyFraction> for PolyFraction {
            type Output = PolyFraction;
            fn $m(self, rhs: PolyFraction) -> PolyFraction { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::int;
    use crate::exactnum::symbol::sym;

    fn v(s: &str) -> MultiPoly {
        MultiPoly::var(sym(s))
    }

    #[test]
    fn cancellation_to_one() {
        let h4 = PolyFraction::from(v("h").pow(4));
        let a4 = PolyFraction::from(v("a").pow(4));
        let delta = h4.try_div(&a4, &[]).unwrap();
        assert_eq!(delta.to_string(), "h^4/a^4");
        let inv = a4.try_div(&h4, &[]).unwrap();
        assert!((&delta * &inv).is_one());
    }

    #[test]
    fn linear_atoms_cancel() {
        let xa = Atom::linear(sym("x"), v("a"));
        let f = PolyFraction::atom_inverse(xa.clone(), 2);
        let g = PolyFraction::from(&v("x") - &v("a"));
        assert_eq!(&f * &g, PolyFraction::atom_inverse(xa, 1));
    }

    #[test]
    fn derivative_of_inverse_linear() {
        let xa = Atom::linear(sym("x"), v("a"));
        let f = PolyFraction::atom_inverse(xa.clone(), 1);
        assert_eq!(f.derivative(sym("x")), -PolyFraction::atom_inverse(xa.clone(), 2));
        assert!(f.derivative(sym("y")).is_zero());
        // d/da 1/(x-a) = 1/(x-a)^2
        assert_eq!(f.derivative(sym("a")), PolyFraction::atom_inverse(xa, 2));
    }

    #[test]
    fn sums_over_common_denominator() {
        let xm = Atom::linear(sym("x"), v("a"));
        let xp = Atom::linear(sym("x"), -&v("a"));
        // 1/(x-a) - 1/(x+a) = 2a/((x-a)(x+a))
        let s = &PolyFraction::atom_inverse(xm.clone(), 1) - &PolyFraction::atom_inverse(xp.clone(), 1);
        let mut den = BTreeMap::new();
        den.insert(xm, 1);
        den.insert(xp, 1);
        assert_eq!(s, PolyFraction::new(v("a").scale(&int(2)), den));
    }

    #[test]
    fn pole_reported() {
        let xa = Atom::linear(sym("x"), v("a"));
        let f = PolyFraction::atom_inverse(xa, 1);
        let mut asg = BTreeMap::new();
        asg.insert(sym("x"), int(1));
        asg.insert(sym("a"), int(1));
        assert!(matches!(f.evaluate(&asg), Err(ExactError::Pole { .. })));
        asg.insert(sym("a"), int(3));
        assert_eq!(f.evaluate(&asg).unwrap(), crate::exactnum::rational::rat(-1, 2));
    }

    #[test]
    fn non_monomial_division_rejected() {
        let p = PolyFraction::from(&v("a") + &v("h").pow(2));
        assert!(PolyFraction::one().try_div(&p, &[]).is_err());
    }
}
