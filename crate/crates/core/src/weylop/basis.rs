use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::exactnum::{solve_linear, Atom, ExactError, LinSolveError, Monomial, MultiPoly, PolyFraction, Symbol};

use super::{x_sym, y_sym, DiffOp};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylError {
    #[error("not in span: the target is not a constant combination of the basis")]
    NotInSpan,
    #[error("ambiguous: the basis operators are linearly dependent")]
    Ambiguous,
    #[error("coefficient has a pole at {0}, outside the declared atom set")]
    UndeclaredAtom(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

impl From<LinSolveError> for WeylError {
    fn from(e: LinSolveError) -> Self {
        match e {
            LinSolveError::NotInSpan => WeylError::NotInSpan,
            LinSolveError::Ambiguous => WeylError::Ambiguous,
            LinSolveError::Exact(e) => WeylError::Exact(e),
        }
    }
}

fn is_structural(s: Symbol) -> bool {
    s == x_sym() || s == y_sym() || s.is_imag()
}

/// Splits a polynomial by its `x, y, i` part.
fn by_structure(p: &MultiPoly) -> BTreeMap<Monomial, MultiPoly> {
    let mut out: BTreeMap<Monomial, MultiPoly> = BTreeMap::new();
    for (m, c) in p.terms() {
        let (st, rest): (Vec<_>, Vec<_>) = m.iter().partition(|(s, _)| is_structural(*s));
        out.entry(Monomial::from_pairs(st))
            .or_default()
            .add_term(Monomial::from_pairs(rest), c.clone());
    }
    out
}

/// Coefficients `c` free of `x, y, i` with `target = sum c_k basis_k`.
pub fn express_in_basis(target: &DiffOp, basis: &[DiffOp], atoms: &[Atom]) -> Result<Vec<PolyFraction>, WeylError> {
    let n = basis.len();
    let mut keys: BTreeSet<(u32, u32)> = target.terms().keys().copied().collect();
    for b in basis {
        keys.extend(b.terms().keys().copied());
    }
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for key in keys {
        let fracs: Vec<PolyFraction> =
            std::iter::once(target.coeff(key.0, key.1)).chain(basis.iter().map(|b| b.coeff(key.0, key.1))).collect();
        let mut common: BTreeMap<Atom, u32> = BTreeMap::new();
        for f in &fracs {
            for (a, &k) in f.den() {
                let e = common.entry(a.clone()).or_insert(0);
                *e = (*e).max(k);
            }
        }
        let cleared: Vec<BTreeMap<Monomial, MultiPoly>> = fracs
            .iter()
            .map(|f| {
                let mut p = f.num().clone();
                for (a, &k) in &common {
                    let have = f.den().get(a).copied().unwrap_or(0);
                    if k > have {
                        p = &p * &a.pow_poly(k - have);
                    }
                }
                by_structure(&p)
            })
            .collect();
        let monos: BTreeSet<&Monomial> = cleared.iter().flat_map(|m| m.keys()).collect();
        for mono in monos {
            let get = |k: usize| PolyFraction::from(cleared[k].get(mono).cloned().unwrap_or_default());
            rows.push((1..=n).map(get).collect::<Vec<_>>());
            rhs.push(get(0));
        }
    }
    if rows.is_empty() {
        return if n == 0 { Ok(Vec::new()) } else { Err(WeylError::Ambiguous) };
    }
    let coeffs = solve_linear(rows, rhs, atoms)?;
    let mut recon = DiffOp::zero();
    for (c, b) in coeffs.iter().zip(basis) {
        recon = &recon + &b.scale(c);
    }
    if &recon != target {
        return Err(WeylError::NotInSpan);
    }
    Ok(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weylop::{build_q5, q5_atoms};

    #[test]
    fn dependent_basis_is_ambiguous() {
        let q = build_q5();
        let r = express_in_basis(&q.h, &[q.h.clone(), q.h.clone()], &q5_atoms());
        assert_eq!(r, Err(WeylError::Ambiguous));
    }

    #[test]
    fn outside_span() {
        let q = build_q5();
        let r = express_in_basis(&q.b, &[q.h.clone(), q.a.clone()], &q5_atoms());
        assert_eq!(r, Err(WeylError::NotInSpan));
        let ok = express_in_basis(&(&q.h + &q.a), &[q.h.clone(), q.a.clone()], &q5_atoms()).unwrap();
        assert_eq!(ok, vec![PolyFraction::one(), PolyFraction::one()]);
    }
}
