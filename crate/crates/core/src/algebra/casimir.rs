use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

use crate::exactnum::{solve_linear, LinSolveError, MultiPoly, PolyFraction, Symbol};

use super::pbw::{add_into, letter, Elem, Pbw, Word, A, B, C};
use super::{AlgebraError, CubicAlgebraSpec};

/// Ordered Casimir basis.
pub const CASIMIR_BASIS: [&str; 11] = ["C^2", "{A^2,B}", "{A,B^2}", "{A,B}", "B^2", "B", "A^4", "A^3", "A^2", "A", "1"];

/// Words spelling each basis element (anticommutators expanded).
pub fn basis_words(idx: usize) -> Vec<Word> {
    match idx {
        0 => vec![vec![C, C]],
        1 => vec![vec![A, A, B], vec![B, A, A]],
        2 => vec![vec![A, B, B], vec![B, B, A]],
        3 => vec![vec![A, B], vec![B, A]],
        4 => vec![vec![B, B]],
        5 => vec![vec![B]],
        6 => vec![vec![A; 4]],
        7 => vec![vec![A; 3]],
        8 => vec![vec![A; 2]],
        9 => vec![vec![A]],
        10 => vec![vec![]],
        _ => panic!("Casimir basis has 11 elements"),
    }
}

/// Coefficients on [`CASIMIR_BASIS`]; `C^2` has coefficient one and the
/// additive constant is fixed to zero.
#[derive(Clone, PartialEq, Eq)]
pub struct CasimirExpression {
    pub coeffs: [PolyFraction; 11],
}

impl CasimirExpression {
    pub fn as_elem(&self) -> Elem {
        let mut e = Elem::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            for w in basis_words(i) {
                add_into(&mut e, w, c.clone());
            }
        }
        e
    }
}

impl fmt::Display for CasimirExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, name) in self.coeffs.iter().zip(CASIMIR_BASIS) {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if c.is_one() {
                write!(f, "{name}")?;
            } else {
                write!(f, "({c})*{name}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CasimirExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn generic_symbols() -> [Symbol; 9] {
    ["alpha", "beta", "gamma", "delta", "epsilon", "mu", "nu", "xi", "zeta"].map(Symbol::new)
}

/// Casimir coefficients as polynomials in symbolic structure constants,
/// found by demanding `[A, K] = [B, K] = 0` in the normal-ordered algebra.
fn generic_casimir() -> &'static Result<[MultiPoly; 11], AlgebraError> {
    static CELL: OnceLock<Result<[MultiPoly; 11], AlgebraError>> = OnceLock::new();
    CELL.get_or_init(|| {
        let spec = CubicAlgebraSpec::generic();
        let mut pbw = Pbw::new(&spec);
        // unknowns: basis elements 1..=9; C^2 fixed to 1, constant to 0
        let mut per_unknown: Vec<(Elem, Elem)> = Vec::new();
        for i in 0..10 {
            let mut e = Elem::new();
            for w in basis_words(i) {
                add_into(&mut e, w, PolyFraction::one());
            }
            let ca = pbw.commutator(&letter(A), &e);
            let cb = pbw.commutator(&letter(B), &e);
            per_unknown.push((ca, cb));
        }
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for side in 0..2 {
            let pick = |p: &(Elem, Elem)| if side == 0 { p.0.clone() } else { p.1.clone() };
            let elems: Vec<Elem> = per_unknown.iter().map(pick).collect();
            let words: BTreeSet<&Word> = elems.iter().flat_map(|e| e.keys()).collect();
            for w in words {
                let get = |e: &Elem| e.get(w).cloned().unwrap_or_default();
                rows.push(elems[1..].iter().map(get).collect::<Vec<_>>());
                rhs.push(-get(&elems[0]));
            }
        }
        let sol = solve_linear(rows, rhs, &[]).map_err(|e| match e {
            LinSolveError::Ambiguous => AlgebraError::Underdetermined,
            LinSolveError::NotInSpan => AlgebraError::NoCasimir,
            LinSolveError::Exact(e) => AlgebraError::Exact(e),
        })?;
        let mut out: [MultiPoly; 11] = Default::default();
        out[0] = MultiPoly::one();
        for (i, c) in sol.into_iter().enumerate() {
            out[i + 1] = c.as_poly().cloned().ok_or(AlgebraError::NoCasimir)?;
        }
        Ok(out)
    })
}

/// Substitutes fractions for symbols in a polynomial.
pub fn substitute_fractions(p: &MultiPoly, values: &BTreeMap<Symbol, PolyFraction>) -> PolyFraction {
    let mut terms = Vec::new();
    for (m, c) in p.terms() {
        let mut t = PolyFraction::from(c.clone());
        for (s, e) in m.iter() {
            let v = values.get(&s).cloned().unwrap_or_else(|| PolyFraction::var(s));
            t = &t * &v.pow(e);
        }
        terms.push(t);
    }
    PolyFraction::sum(terms.iter())
}

/// The Casimir of the given algebra.
pub fn casimir_coefficients(spec: &CubicAlgebraSpec) -> Result<CasimirExpression, AlgebraError> {
    let generic = generic_casimir().as_ref().map_err(Clone::clone)?;
    let values: BTreeMap<Symbol, PolyFraction> = generic_symbols().into_iter().zip(spec.constants()).collect();
    let coeffs: [PolyFraction; 11] = std::array::from_fn(|i| substitute_fractions(&generic[i], &values));
    Ok(CasimirExpression { coeffs })
}

/// Symbolic coefficients, in the structure-constant names, for reports.
pub fn generic_casimir_text() -> Result<Vec<(String, String)>, AlgebraError> {
    let generic = generic_casimir().as_ref().map_err(Clone::clone)?;
    Ok(CASIMIR_BASIS.iter().zip(generic.iter()).map(|(b, c)| (b.to_string(), c.to_string())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{parse_expr, SymbolTable};

    fn p(s: &str) -> MultiPoly {
        parse_expr(s, &SymbolTable::open()).unwrap().as_poly().unwrap().clone()
    }

    #[test]
    fn generic_coefficients() {
        let g = generic_casimir().as_ref().unwrap();
        let want = [
            "1",
            "-alpha",
            "-beta",
            "alpha*beta - gamma",
            "beta^2 - delta",
            "beta*gamma - 2*epsilon",
            "mu/2",
            "2*beta*mu/3 + 2*nu/3",
            "alpha^2 - beta^2*mu/6 + beta*nu/3 + delta*mu/2 + xi",
            "alpha*gamma - beta*delta*mu/6 + delta*nu/3 + 2*zeta",
            "0",
        ];
        for (i, w) in want.iter().enumerate() {
            assert_eq!(g[i], p(w), "coefficient of {}", CASIMIR_BASIS[i]);
        }
    }

    #[test]
    fn zero_algebra_gives_c_squared() {
        let k = casimir_coefficients(&CubicAlgebraSpec::zero()).unwrap();
        assert!(k.coeffs[0].is_one());
        assert!(k.coeffs[1..].iter().all(PolyFraction::is_zero));
    }

    #[test]
    fn casimir_is_central() {
        let spec = CubicAlgebraSpec::generic();
        let k = casimir_coefficients(&spec).unwrap().as_elem();
        let mut pbw = Pbw::new(&spec);
        for l in [A, B, C] {
            let comm = pbw.commutator(&letter(l), &k);
            assert!(comm.is_empty(), "[{l}, K] = {comm:?}");
        }
    }
}
