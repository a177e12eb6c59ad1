//! Dense univariate polynomials over Q: Sturm isolation, rational roots,
//! interpolation.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::poly::{Monomial, MultiPoly};
use super::rational::{denominator_lcm, fmt_rational, simplest_between, to_f64, Rational};
use super::symbol::Symbol;
use super::ExactError;

/// Coefficients lowest degree first; no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<Rational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> QPoly {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn from_ints(cs: &[i64]) -> QPoly {
        QPoly::new(cs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn zero() -> QPoly {
        QPoly::default()
    }

    pub fn constant(c: Rational) -> QPoly {
        QPoly::new(vec![c])
    }

    /// `x - r`.
    pub fn linear_root(r: &Rational) -> QPoly {
        QPoly::new(vec![-r.clone(), Rational::one()])
    }

    /// Reads a polynomial in one symbol; `None` if other symbols appear.
    pub fn from_multipoly(p: &MultiPoly, s: Symbol) -> Option<QPoly> {
        let mut coeffs = vec![Rational::zero(); p.degree_in(s) as usize + 1];
        for (m, c) in p.terms() {
            let e = m.exponent(s);
            if m.total_degree() != e {
                return None;
            }
            coeffs[e as usize] += c;
        }
        Some(QPoly::new(coeffs))
    }

    pub fn to_multipoly(&self, s: Symbol) -> MultiPoly {
        MultiPoly::from_terms(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (Monomial::var(s, k as u32), c.clone())),
        )
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lc(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + to_f64(c))
    }

    pub fn scale(&self, c: &Rational) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn derivative(&self) -> QPoly {
        QPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn monic(&self) -> QPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().recip())
    }

    /// Integer coefficients with unit content and positive leading coefficient.
    pub fn primitive(&self) -> QPoly {
        if self.is_zero() {
            return self.clone();
        }
        let l = denominator_lcm(&self.coeffs);
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |g, c| num_integer::Integer::gcd(&g, c));
        let sign = if ints.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
        QPoly::new(ints.into_iter().map(|c| Rational::from_integer(c / &g * &sign)).collect())
    }

    pub fn div_rem(&self, d: &QPoly) -> (QPoly, QPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        if self.degree() < d.degree() || self.is_zero() {
            return (QPoly::zero(), self.clone());
        }
        let dd = d.degree();
        let inv = d.lc().recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.degree() - dd + 1];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (QPoly::new(quot), QPoly::new(rem))
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Yun's square-free decomposition: `(factor, multiplicity)` pairs with
    /// monic, pairwise coprime, square-free factors.
    pub fn square_free_decomposition(&self) -> Vec<(QPoly, u32)> {
        let mut out = Vec::new();
        if self.degree() == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_rem(&a0).0;
        let mut c = df.div_rem(&a0).0;
        let mut d = &c - &b.derivative();
        let mut i = 1;
        while b.degree() > 0 {
            let a = b.gcd(&d);
            b = b.div_rem(&a).0;
            c = d.div_rem(&a).0;
            if a.degree() > 0 {
                out.push((a, i));
            }
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    pub fn square_free_part(&self) -> QPoly {
        self.square_free_decomposition()
            .into_iter()
            .fold(QPoly::constant(Rational::one()), |acc, (f, _)| &acc * &f)
    }

    /// Canonical Sturm sequence `p, p', -rem(p, p'), ...`.
    pub fn sturm_sequence(&self) -> Vec<QPoly> {
        let mut seq = vec![self.clone(), self.derivative()];
        while !seq.last().unwrap().is_zero() {
            let n = seq.len();
            let r = seq[n - 2].div_rem(&seq[n - 1]).1;
            seq.push(-&r);
        }
        seq.pop();
        seq
    }

    /// Strict upper bound on the absolute value of any real root (Cauchy).
    pub fn root_bound(&self) -> Rational {
        let lc = self.lc().abs();
        let m = self.coeffs[..self.degree()]
            .iter()
            .map(|c| c.abs() / &lc)
            .fold(Rational::zero(), |a, b| if b > a { b } else { a });
        m + Rational::one()
    }
}

/// Sign changes of the Sturm sequence at `x`, zeros skipped.
pub fn sign_variations(seq: &[QPoly], x: &Rational) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for p in seq {
        let v = p.eval(x);
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Real root isolated in `[lo, hi]` (a point interval for exact roots).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Rational,
    pub hi: Rational,
    pub multiplicity: u32,
}

impl RootInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    pub fn approx(&self) -> f64 {
        to_f64(&self.midpoint())
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }
}

impl fmt::Display for RootInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "{} (x{})", fmt_rational(&self.lo), self.multiplicity)
        } else {
            write!(f, "[{}, {}] (x{})", fmt_rational(&self.lo), fmt_rational(&self.hi), self.multiplicity)
        }
    }
}

/// Default refinement width.
pub fn default_width() -> Rational {
    Rational::new(1.into(), 1_000_000_000.into())
}

/// Isolates the distinct real roots of a square-free `p` in `(lo, hi]`,
/// refined to width at most `width`.
fn isolate_square_free(p: &QPoly, lo: Rational, hi: Rational, width: &Rational) -> Vec<(Rational, Rational)> {
    let seq = p.sturm_sequence();
    let mut out = Vec::new();
    let mut stack = vec![(lo.clone(), hi.clone(), sign_variations(&seq, &lo) - sign_variations(&seq, &hi))];
    let two = Rational::from_integer(2.into());
    while let Some((a, b, n)) = stack.pop() {
        if n == 0 {
            continue;
        }
        if p.eval(&b).is_zero() && n == 1 {
            out.push((b.clone(), b));
            continue;
        }
        if n == 1 && &(&b - &a) <= width {
            out.push((a, b));
            continue;
        }
        let m = (&a + &b) / &two;
        let vm = sign_variations(&seq, &m);
        let left = sign_variations(&seq, &a) - vm;
        stack.push((m.clone(), b, n - left));
        stack.push((a, m, left));
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    out
}

/// Sturm-sequence isolation of real roots in the closed interval, or on the
/// whole line when `interval` is `None`. Multiplicities come from the
/// square-free decomposition.
pub fn isolate_real_roots(p: &QPoly, interval: Option<(Rational, Rational)>, width: Option<Rational>) -> Vec<RootInterval> {
    if p.degree() == 0 {
        return Vec::new();
    }
    let width = width.unwrap_or_else(default_width);
    let (lo, hi) = interval.unwrap_or_else(|| {
        let b = p.root_bound();
        (-b.clone(), b)
    });
    let mut out = Vec::new();
    // A root at `lo` is outside the half-open search interval; test it directly.
    let factors = p.square_free_decomposition();
    if p.eval(&lo).is_zero() {
        let m = factors.iter().find(|(f, _)| f.eval(&lo).is_zero()).map(|(_, m)| *m).unwrap_or(1);
        out.push(RootInterval { lo: lo.clone(), hi: lo.clone(), multiplicity: m });
    }
    let sf = p.square_free_part();
    for (a, b) in isolate_square_free(&sf, lo, hi, &width) {
        let multiplicity = factors
            .iter()
            .find(|(f, _)| {
                if a == b {
                    f.eval(&a).is_zero()
                } else {
                    let s = f.sturm_sequence();
                    sign_variations(&s, &a) > sign_variations(&s, &b)
                }
            })
            .map(|(_, m)| *m)
            .unwrap_or(1);
        out.push(RootInterval { lo: a, hi: b, multiplicity });
    }
    out
}

/// All rational roots with multiplicities, ascending.
pub fn rational_roots(p: &QPoly) -> Vec<(Rational, u32)> {
    if p.degree() == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (f, m) in p.square_free_decomposition() {
        let prim = f.primitive();
        let lc = prim.lc().abs();
        // Distinct rationals with denominators dividing lc are at least 1/lc^2 apart.
        let width = (&lc * &lc).recip() / Rational::from_integer(2.into());
        for iv in isolate_real_roots(&prim, None, Some(width)) {
            let cand = if iv.is_exact() { iv.lo.clone() } else { simplest_between(&iv.lo, &iv.hi) };
            if prim.eval(&cand).is_zero() {
                out.push((cand, m));
            }
        }
    }
    out.sort();
    out
}

/// Polynomial of degree at most `degree_bound` through the points; extra
/// points must be consistent.
pub fn interpolate(points: &[(Rational, Rational)], degree_bound: usize) -> Result<QPoly, ExactError> {
    if points.len() < degree_bound + 1 {
        return Err(ExactError::Invalid(format!(
            "interpolation needs at least {} points, got {}",
            degree_bound + 1,
            points.len()
        )));
    }
    for (i, (x, _)) in points.iter().enumerate() {
        if points[..i].iter().any(|(y, _)| y == x) {
            return Err(ExactError::Invalid(format!("repeated abscissa {}", fmt_rational(x))));
        }
    }
    let used = &points[..degree_bound + 1];
    // Newton divided differences.
    let n = used.len();
    let mut dd: Vec<Rational> = used.iter().map(|(_, y)| y.clone()).collect();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&used[i].0 - &used[i - j].0);
        }
    }
    let mut poly = QPoly::constant(dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        poly = &(&poly * &QPoly::linear_root(&used[i].0)) + &QPoly::constant(dd[i].clone());
    }
    if points.iter().any(|(x, y)| &poly.eval(x) != y) {
        return Err(ExactError::DegreeBoundExceeded { bound: degree_bound });
    }
    Ok(poly)
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_multipoly(Symbol::new("x")))
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<'a> Add<&'a QPoly> for &'a QPoly {
    type Output = QPoly;
    fn add(self, rhs: &'a QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let z = Rational::zero();
        QPoly::new(
            (0..n)
                .map(|k| self.coeffs.get(k).unwrap_or(&z) + rhs.coeffs.get(k).unwrap_or(&z))
                .collect(),
        )
    }
}

impl<'a> Sub<&'a QPoly> for &'a QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &'a QPoly) -> QPoly {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a QPoly> for &'a QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &'a QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::{int, rat};

    #[test]
    fn sqrt_two_isolated() {
        let p = QPoly::from_ints(&[-2, 0, 1]);
        let roots = isolate_real_roots(&p, Some((int(0), int(2))), Some(rat(1, 1_000_000)));
        assert_eq!(roots.len(), 1);
        assert!((roots[0].approx() - std::f64::consts::SQRT_2).abs() < 1e-6);
        assert_eq!(roots[0].multiplicity, 1);
    }

    #[test]
    fn multiplicities_and_exact_roots() {
        // (u + 3/2)(u - 1/2)(u - 3/2)^2
        let p = [rat(-3, 2), rat(1, 2), rat(3, 2), rat(3, 2)]
            .iter()
            .fold(QPoly::constant(int(1)), |acc, r| &acc * &QPoly::linear_root(r));
        let rr = rational_roots(&p);
        assert_eq!(rr, vec![(rat(-3, 2), 1), (rat(1, 2), 1), (rat(3, 2), 2)]);
        let iso = isolate_real_roots(&p, None, None);
        assert_eq!(iso.len(), 3);
        assert_eq!(iso.iter().map(|r| r.multiplicity).sum::<u32>(), 4);
    }

    #[test]
    fn constant_has_no_roots() {
        assert!(isolate_real_roots(&QPoly::from_ints(&[5]), None, None).is_empty());
    }

    #[test]
    fn interpolation() {
        let pts = vec![(int(0), int(0)), (int(1), int(1)), (int(2), int(4))];
        assert_eq!(interpolate(&pts, 2).unwrap(), QPoly::from_ints(&[0, 0, 1]));
        let u1 = vec![(int(0), rat(-1, 2)), (int(1), rat(-3, 2)), (int(2), rat(-5, 2))];
        assert_eq!(interpolate(&u1, 1).unwrap(), QPoly::new(vec![rat(-1, 2), int(-1)]));
        let bad = vec![(int(0), int(0)), (int(1), int(1)), (int(2), int(3))];
        assert!(matches!(interpolate(&bad, 1), Err(ExactError::DegreeBoundExceeded { bound: 1 })));
    }

    #[test]
    fn irrational_roots_are_not_rational() {
        assert!(rational_roots(&QPoly::from_ints(&[-2, 0, 1])).is_empty());
        assert_eq!(rational_roots(&QPoly::from_ints(&[-1, 0, 9])), vec![(rat(-1, 3), 1), (rat(1, 3), 1)]);
    }
}
