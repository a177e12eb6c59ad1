//! Exact linear solves over the fraction field of the parameters.
//!
//! Pivots that are invertible as [`PolyFraction`]s are preferred; otherwise
//! rows are combined fraction-free (cross multiplication), and back
//! substitution falls back to exact polynomial division.

use thiserror::Error;

use super::frac::{Atom, PolyFraction};
use super::ExactError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinSolveError {
    #[error("target is not in the span of the basis")]
    NotInSpan,
    #[error("basis is linearly dependent; coefficients are ambiguous")]
    Ambiguous,
    #[error(transparent)]
    Exact(#[from] ExactError),
}

fn exact_quotient(n: &PolyFraction, d: &PolyFraction, atoms: &[Atom]) -> Result<PolyFraction, ExactError> {
    match n.try_div(d, atoms) {
        Ok(q) => Ok(q),
        Err(ExactError::NonMonomialDenominator { expr }) => {
            // n = nn / nd, d = dn / dd  =>  n/d = (nn * dd) / (nd * dn)
            let lhs = &PolyFraction::from(n.num().clone()) * &PolyFraction::new(d.den_poly(), Default::default());
            let q = lhs
                .num()
                .div_exact(d.num())
                .ok_or(ExactError::NonMonomialDenominator { expr })?;
            Ok(PolyFraction::new(q, n.den().clone()))
        }
        Err(e) => Err(e),
    }
}

/// Solves `rows · c = rhs` for a unique `c`; `rows` is `m × n` with `m ≥ n`
/// typically. Consistency of surplus equations is checked exactly.
pub fn solve_linear(
    mut rows: Vec<Vec<PolyFraction>>,
    mut rhs: Vec<PolyFraction>,
    atoms: &[Atom],
) -> Result<Vec<PolyFraction>, LinSolveError> {
    let n = rows.first().map_or(0, Vec::len);
    let m = rows.len();
    let mut pivot_rows = Vec::with_capacity(n);
    let mut used = vec![false; m];
    for col in 0..n {
        let candidates: Vec<usize> = (0..m).filter(|&r| !used[r] && !rows[r][col].is_zero()).collect();
        if candidates.is_empty() {
            return Err(LinSolveError::Ambiguous);
        }
        // Prefer an invertible pivot with the fewest terms.
        let piv = candidates
            .iter()
            .copied()
            .filter(|&r| rows[r][col].try_inv(atoms).is_ok())
            .min_by_key(|&r| rows[r].iter().map(|c| c.num().len()).sum::<usize>())
            .unwrap_or_else(|| *candidates.iter().min_by_key(|&&r| rows[r][col].num().len()).unwrap());
        used[piv] = true;
        pivot_rows.push(piv);
        let p = rows[piv][col].clone();
        let inv = p.try_inv(atoms).ok();
        for &r in &candidates {
            if r == piv {
                continue;
            }
            let e = rows[r][col].clone();
            match &inv {
                Some(inv) => {
                    let f = &e * inv;
                    for k in col..n {
                        let t = &f * &rows[piv][k];
                        rows[r][k] = &rows[r][k] - &t;
                    }
                    rhs[r] = &rhs[r] - &(&f * &rhs[piv]);
                }
                None => {
                    for k in col..n {
                        rows[r][k] = &(&p * &rows[r][k]) - &(&e * &rows[piv][k]);
                    }
                    rhs[r] = &(&p * &rhs[r]) - &(&e * &rhs[piv]);
                }
            }
        }
    }
    if (0..m).any(|r| !used[r] && !rhs[r].is_zero()) {
        return Err(LinSolveError::NotInSpan);
    }
    let mut sol = vec![PolyFraction::zero(); n];
    for col in (0..n).rev() {
        let r = pivot_rows[col];
        let mut acc = rhs[r].clone();
        for k in col + 1..n {
            acc = &acc - &(&rows[r][k] * &sol[k]);
        }
        sol[col] = exact_quotient(&acc, &rows[r][col], atoms)?;
    }
    Ok(sol)
}
