//! Linear factors `var - r(param)` of a bivariate polynomial, with `r` a
//! polynomial of bounded degree, found by sampling, matching and exact
//! division.

use std::fmt;

use num_traits::Zero;

use crate::exactnum::{interpolate, rat, rational_roots, MultiPoly, QPoly, Rational, Symbol};

/// A root `var = root(param)` with its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LinearFactor {
    pub root: MultiPoly,
    pub multiplicity: u32,
}

/// `content(param) * prod (var - root_i)^m_i * residual`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub var: Symbol,
    pub content: MultiPoly,
    pub factors: Vec<LinearFactor>,
    /// Part of positive degree in `var` without linear factors of the
    /// allowed shape; the constant one when fully factored.
    pub residual: MultiPoly,
}

impl Factorization {
    pub fn is_complete(&self) -> bool {
        self.residual.is_one()
    }

    pub fn expand(&self) -> MultiPoly {
        let v = MultiPoly::var(self.var);
        self.factors.iter().fold(&self.content * &self.residual, |acc, f| &acc * &(&v - &f.root).pow(f.multiplicity))
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.content.is_one() {
            parts.push(wrap(&self.content));
        }
        for fac in &self.factors {
            let lin = &MultiPoly::var(self.var) - &fac.root;
            let s = wrap(&lin);
            parts.push(if fac.multiplicity > 1 { format!("{s}^{}", fac.multiplicity) } else { s });
        }
        if !self.residual.is_one() {
            parts.push(wrap(&self.residual));
        }
        if parts.is_empty() {
            return write!(f, "1");
        }
        write!(f, "{}", parts.join("*"))
    }
}

fn wrap(p: &MultiPoly) -> String {
    if p.len() > 1 {
        format!("({p})")
    } else {
        p.to_string()
    }
}

/// Distinct sample points; irregular values keep accidental coincidences rare.
fn sample_points() -> impl Iterator<Item = Rational> {
    [(2, 7), (-3, 11), (5, 13), (17, 19), (-7, 23), (29, 31), (-37, 41), (43, 47), (53, 59), (-61, 67), (71, 73), (79, 83)]
        .into_iter()
        .map(|(n, d)| rat(n, d))
}

fn specialize(f: &MultiPoly, param: Symbol, at: &Rational, var: Symbol) -> QPoly {
    QPoly::from_multipoly(&f.substitute(param, &MultiPoly::constant(at.clone())), var)
        .expect("bivariate polynomial")
}

/// Tries every combination of one rational root per sample.
fn find_factor(f: &MultiPoly, var: Symbol, param: Symbol, degree_bound: usize) -> Option<MultiPoly> {
    let deg = f.degree_in(var) as usize;
    let mut samples: Vec<(Rational, Vec<Rational>)> = Vec::new();
    for s in sample_points() {
        if samples.len() > degree_bound {
            break;
        }
        let q = specialize(f, param, &s, var);
        if q.degree() != deg {
            continue;
        }
        let roots: Vec<Rational> = rational_roots(&q).into_iter().map(|(r, _)| r).collect();
        if roots.is_empty() {
            return None;
        }
        samples.push((s, roots));
    }
    if samples.len() <= degree_bound {
        return None;
    }
    let mut idx = vec![0usize; samples.len()];
    loop {
        let points: Vec<(Rational, Rational)> =
            samples.iter().zip(&idx).map(|((s, roots), &i)| (s.clone(), roots[i].clone())).collect();
        if let Ok(r) = interpolate(&points, degree_bound) {
            let root = r.to_multipoly(param);
            if f.div_linear(var, &root).is_some() {
                return Some(root);
            }
        }
        // next combination
        let mut k = 0;
        loop {
            if k == idx.len() {
                return None;
            }
            idx[k] += 1;
            if idx[k] < samples[k].1.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Splits off every linear factor `var - r(param)` with `deg r <= degree_bound`.
///
/// `f` must involve no symbols other than `var` and `param`.
pub fn linear_factors(f: &MultiPoly, var: Symbol, param: Symbol, degree_bound: usize) -> Factorization {
    let mut residual = f.clone();
    let mut factors: Vec<LinearFactor> = Vec::new();
    while residual.degree_in(var) > 0 {
        let Some(root) = find_factor(&residual, var, param, degree_bound) else { break };
        let mut multiplicity = 0;
        while let Some(q) = residual.div_linear(var, &root) {
            residual = q;
            multiplicity += 1;
        }
        factors.push(LinearFactor { root, multiplicity });
    }
    let mut content = MultiPoly::one();
    if residual.degree_in(var) == 0 {
        std::mem::swap(&mut content, &mut residual);
    } else {
        // pull out the rational content so the residual is primitive
        let lc = leading_rational(&residual, var);
        if !lc.is_zero() {
            content = MultiPoly::constant(lc.clone());
            residual = residual.scale(&lc.recip());
        }
    }
    factors.sort();
    Factorization { var, content, factors, residual }
}

/// Leading rational coefficient of the top power of `var`.
fn leading_rational(p: &MultiPoly, var: Symbol) -> Rational {
    let top = p.coeffs_in(var).pop().unwrap_or_default();
    top.leading().map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
}
