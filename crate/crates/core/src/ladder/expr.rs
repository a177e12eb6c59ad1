//! Normal-ordered expressions in `b`, `b^+` and functions of `N`.
//!
//! Offset `k > 0` stands for `(b^+)^k f(N)`, offset `k < 0` for
//! `f(N) b^|k|`. Coefficients are polynomials in the unknown values
//! `Phi(N + j)` with rational-function coefficients in `nu = N + u`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::exactnum::{NFunc, PolyFraction};

/// Multiset of shifts `j` standing for `prod Phi(N + j)`, sorted.
pub type PhiMono = Vec<i64>;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct PhiPoly {
    terms: BTreeMap<PhiMono, NFunc>,
}

impl PhiPoly {
    pub fn zero() -> PhiPoly {
        PhiPoly::default()
    }

    pub fn func(f: NFunc) -> PhiPoly {
        let mut p = PhiPoly::zero();
        p.add_term(Vec::new(), f);
        p
    }

    pub fn constant(c: PolyFraction) -> PhiPoly {
        PhiPoly::func(NFunc::constant(c))
    }

    /// `Phi(N + j)`.
    pub fn phi(j: i64) -> PhiPoly {
        let mut p = PhiPoly::zero();
        p.add_term(vec![j], NFunc::one());
        p
    }

    /// `prod_{j in js} Phi(N + j)`.
    pub fn phi_product(js: impl IntoIterator<Item = i64>) -> PhiPoly {
        let mut m: Vec<i64> = js.into_iter().collect();
        m.sort();
        let mut p = PhiPoly::zero();
        p.add_term(m, NFunc::one());
        p
    }

    fn add_term(&mut self, m: PhiMono, f: NFunc) {
        if f.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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

    pub fn terms(&self) -> &BTreeMap<PhiMono, NFunc> {
        &self.terms
    }

    pub fn coeff(&self, m: &[i64]) -> NFunc {
        self.terms.get(m).cloned().unwrap_or_else(NFunc::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `N -> N + m` throughout.
    pub fn shift(&self, m: i64) -> PhiPoly {
        if m == 0 {
            return self.clone();
        }
        PhiPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, f)| (k.iter().map(|j| j + m).collect(), f.shift(m)))
                .collect(),
        }
    }

    pub fn scale(&self, c: &NFunc) -> PhiPoly {
        let mut out = PhiPoly::zero();
        for (m, f) in &self.terms {
            out.add_term(m.clone(), f * c);
        }
        out
    }

    /// Replaces every `Phi(N + j)` by `phi(nu + j)`.
    pub fn substitute(&self, phi: &NFunc) -> NFunc {
        let mut acc = NFunc::zero();
        for (m, f) in &self.terms {
            let mut t = f.clone();
            for &j in m {
                t = &t * &phi.shift(j);
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Largest `|j|` among the unknowns.
    pub fn max_shift(&self) -> i64 {
        self.terms.keys().flatten().map(|j| j.abs()).max().unwrap_or(0)
    }
}

impl<'a> Add<&'a PhiPoly> for &'a PhiPoly {
    type Output = PhiPoly;
    fn add(self, rhs: &'a PhiPoly) -> PhiPoly {
        let mut out = self.clone();
        for (m, f) in &rhs.terms {
            out.add_term(m.clone(), f.clone());
        }
        out
    }
}

impl Neg for &PhiPoly {
    type Output = PhiPoly;
    fn neg(self) -> PhiPoly {
        PhiPoly { terms: self.terms.iter().map(|(m, f)| (m.clone(), -f)).collect() }
    }
}

impl<'a> Mul<&'a PhiPoly> for &'a PhiPoly {
    type Output = PhiPoly;
    fn mul(self, rhs: &'a PhiPoly) -> PhiPoly {
        let mut out = PhiPoly::zero();
        for (m1, f1) in &self.terms {
            for (m2, f2) in &rhs.terms {
                let mut m: Vec<i64> = m1.iter().chain(m2).copied().collect();
                m.sort();
                out.add_term(m, f1 * f2);
            }
        }
        out
    }
}

impl fmt::Display for PhiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for j in m {
                match j {
                    0 => write!(f, "*Phi(N)")?,
                    j if *j > 0 => write!(f, "*Phi(N+{j})")?,
                    j => write!(f, "*Phi(N{j})")?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PhiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `sum_k term_k`, see the module docs for the offset convention.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LadderExpr {
    terms: BTreeMap<i64, PhiPoly>,
}

fn phi_range(js: impl Iterator<Item = i64>) -> PhiPoly {
    PhiPoly::phi_product(js)
}

/// Product of the canonical terms `(k, f)` and `(m, g)`.
fn term_product(k: i64, f: &PhiPoly, m: i64, g: &PhiPoly) -> (i64, PhiPoly) {
    if k >= 0 && m >= 0 {
        // (b+)^k f (b+)^m g = (b+)^{k+m} f(N+m) g
        return (k + m, &f.shift(m) * g);
    }
    if k <= 0 && m <= 0 {
        // f b^K g b^M = f g(N+K) b^{K+M}
        return (k + m, f * &g.shift(-k));
    }
    if k > 0 {
        // (b+)^k h b^M with h = f g
        let big_m = -m;
        let h = f * g;
        if k >= big_m {
            let p = phi_range((0..big_m).map(|i| -i));
            (k - big_m, &p * &h.shift(-big_m))
        } else {
            let p = phi_range((0..k).map(|i| -i));
            (k - big_m, &p * &h.shift(-k))
        }
    } else {
        // f b^K (b+)^m g
        let big_k = -k;
        if big_k >= m {
            let p = phi_range((1..=m).map(|i| i + big_k - m));
            (-(big_k - m), &(f * &p) * &g.shift(big_k - m))
        } else {
            let p = phi_range(1..=big_k);
            (m - big_k, &(f * &p).shift(m - big_k) * g)
        }
    }
}

impl LadderExpr {
    pub fn zero() -> LadderExpr {
        LadderExpr::default()
    }

    pub fn term(k: i64, f: PhiPoly) -> LadderExpr {
        let mut e = LadderExpr::zero();
        e.add_term(k, f);
        e
    }

    /// A function of `N` alone.
    pub fn func(f: NFunc) -> LadderExpr {
        LadderExpr::term(0, PhiPoly::func(f))
    }

    pub fn constant(c: PolyFraction) -> LadderExpr {
        LadderExpr::func(NFunc::constant(c))
    }

    pub fn identity() -> LadderExpr {
        LadderExpr::func(NFunc::one())
    }

    pub fn b() -> LadderExpr {
        LadderExpr::term(-1, PhiPoly::func(NFunc::one()))
    }

    pub fn b_dagger() -> LadderExpr {
        LadderExpr::term(1, PhiPoly::func(NFunc::one()))
    }

    fn add_term(&mut self, k: i64, f: PhiPoly) {
        if f.is_zero() {
            return;
        }
        let entry = self.terms.entry(k).or_default();
        *entry = &*entry + &f;
        if entry.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn offset(&self, k: i64) -> PhiPoly {
        self.terms.get(&k).cloned().unwrap_or_default()
    }

    pub fn offsets(&self) -> impl Iterator<Item = (&i64, &PhiPoly)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &NFunc) -> LadderExpr {
        let mut out = LadderExpr::zero();
        for (k, f) in &self.terms {
            out.add_term(*k, f.scale(c));
        }
        out
    }

    /// Normal-ordered product.
    pub fn compose(&self, rhs: &LadderExpr) -> LadderExpr {
        let mut out = LadderExpr::zero();
        for (&k, f) in &self.terms {
            for (&m, g) in &rhs.terms {
                let (o, h) = term_product(k, f, m, g);
                out.add_term(o, h);
            }
        }
        out
    }

    pub fn commutator(&self, rhs: &LadderExpr) -> LadderExpr {
        &self.compose(rhs) - &rhs.compose(self)
    }

    pub fn anticommutator(&self, rhs: &LadderExpr) -> LadderExpr {
        &self.compose(rhs) + &rhs.compose(self)
    }

    pub fn pow(&self, e: u32) -> LadderExpr {
        (0..e).fold(LadderExpr::identity(), |acc, _| acc.compose(self))
    }

    /// Substitutes a known structure function; every offset becomes a
    /// function of `nu`.
    pub fn substitute(&self, phi: &NFunc) -> BTreeMap<i64, NFunc> {
        self.terms
            .iter()
            .map(|(k, f)| (*k, f.substitute(phi)))
            .filter(|(_, f)| !f.is_zero())
            .collect()
    }
}

impl<'a> Add<&'a LadderExpr> for &'a LadderExpr {
    type Output = LadderExpr;
    fn add(self, rhs: &'a LadderExpr) -> LadderExpr {
        let mut out = self.clone();
        for (k, f) in &rhs.terms {
            out.add_term(*k, f.clone());
        }
        out
    }
}

impl<'a> Sub<&'a LadderExpr> for &'a LadderExpr {
    type Output = LadderExpr;
    fn sub(self, rhs: &'a LadderExpr) -> LadderExpr {
        self + &(-rhs)
    }
}

impl Neg for &LadderExpr {
    type Output = LadderExpr;
    fn neg(self) -> LadderExpr {
        LadderExpr { terms: self.terms.iter().map(|(k, f)| (*k, -f)).collect() }
    }
}

impl<'a> Mul<&'a LadderExpr> for &'a LadderExpr {
    type Output = LadderExpr;
    fn mul(self, rhs: &'a LadderExpr) -> LadderExpr {
        self.compose(rhs)
    }
}

impl fmt::Display for LadderExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.terms.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match *k {
                0 => write!(f, "[{c}]")?,
                1 => write!(f, "b+ [{c}]")?,
                -1 => write!(f, "[{c}] b")?,
                k if k > 0 => write!(f, "b+^{k} [{c}]")?,
                k => write!(f, "[{c}] b^{}", -k)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LadderExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
