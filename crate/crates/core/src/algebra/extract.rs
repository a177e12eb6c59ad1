//! Reads the Q5 structure constants and Casimir value directly off the
//! differential operators.

use crate::exactnum::{PolyFraction, Symbol};
use crate::weylop::{build_q5, express_in_basis, q5_atoms, DiffOp, WeylError};

use super::{casimir_coefficients, energy_sym, jacobi_reduce, AlgebraError, CubicAlgebraSpec, RawConstants};

/// Result of the operator-level computation.
#[derive(Clone, Debug)]
pub struct Q5Extraction {
    pub raw: RawConstants,
    pub spec: CubicAlgebraSpec,
    /// `[B, C]` on `A^3, A^2 H, H^3, A^2, H A, H^2, A, H, 1`.
    pub bc_table: Vec<(&'static str, PolyFraction)>,
    /// `[A, C]` as a multiple of `B`.
    pub ac_over_b: PolyFraction,
}

fn weyl(e: WeylError) -> AlgebraError {
    AlgebraError::Extraction(e.to_string())
}

fn e_poly(parts: &[&PolyFraction]) -> PolyFraction {
    let e = PolyFraction::var(energy_sym());
    let mut acc = PolyFraction::zero();
    for (n, c) in parts.iter().enumerate() {
        acc = &acc + &(&e.pow(n as u32) * c);
    }
    acc
}

/// `sum_n c_n E^n` as coefficients `c_n`.
fn energy_coeffs(f: &PolyFraction, e: Symbol) -> Vec<PolyFraction> {
    f.num()
        .coeffs_in(e)
        .into_iter()
        .map(|c| PolyFraction::new(c, f.den().clone()))
        .collect()
}

/// Operator whose energy dependence is realized by powers of `H`.
fn with_hamiltonian(c: &PolyFraction, op: &DiffOp, h_pows: &mut Vec<DiffOp>) -> DiffOp {
    let mut out = DiffOp::zero();
    for (n, cn) in energy_coeffs(c, energy_sym()).iter().enumerate() {
        if cn.is_zero() {
            continue;
        }
        while h_pows.len() <= n {
            let next = h_pows.last().unwrap().compose(&h_pows[1]);
            h_pows.push(next);
        }
        out = &out + &h_pows[n].compose(op).scale(cn);
    }
    out
}

pub fn extract_q5_constants() -> Result<Q5Extraction, AlgebraError> {
    let q = build_q5();
    let atoms = q5_atoms();
    let (a, b, h) = (&q.a, &q.b, &q.h);
    let c = a.commutator(b);
    let id = DiffOp::identity();
    let a2 = a.compose(a);
    let h2 = h.compose(h);
    let ab = a.anticommutator(b);

    let ac = a.commutator(&c);
    let ac_basis = [a2.clone(), ab.clone(), a.clone(), h.compose(a), b.clone(), h.compose(b), id.clone(), h.clone(), h2.clone()];
    let x = express_in_basis(&ac, &ac_basis, &atoms).map_err(weyl)?;

    let bc = b.commutator(&c);
    let bc_basis = [
        a2.compose(a),
        a2.clone(),
        a2.compose(h),
        b.compose(b),
        ab.clone(),
        a.clone(),
        a.compose(h),
        a.compose(&h2),
        b.clone(),
        h.compose(b),
        id.clone(),
        h.clone(),
        h2.clone(),
        h2.compose(h),
    ];
    let y = express_in_basis(&bc, &bc_basis, &atoms).map_err(weyl)?;

    let mut raw = RawConstants {
        alpha: x[0].clone(),
        beta: x[1].clone(),
        gamma: e_poly(&[&x[2], &x[3]]),
        delta: e_poly(&[&x[4], &x[5]]),
        epsilon: e_poly(&[&x[6], &x[7], &x[8]]),
        mu: y[0].clone(),
        nu: e_poly(&[&y[1], &y[2]]),
        rho: y[3].clone(),
        sigma: y[4].clone(),
        xi: e_poly(&[&y[5], &y[6], &y[7]]),
        eta: e_poly(&[&y[8], &y[9]]),
        zeta: e_poly(&[&y[10], &y[11], &y[12], &y[13]]),
        k: PolyFraction::zero(),
    };
    let mut spec = jacobi_reduce(&raw)?;

    // Casimir as an operator, then as a polynomial in H.
    let kexpr = casimir_coefficients(&spec)?;
    let words_ops = [
        c.compose(&c),
        a2.anticommutator(b),
        a.anticommutator(&b.compose(b)),
        ab.clone(),
        b.compose(b),
        b.clone(),
        a2.compose(&a2),
        a2.compose(a),
        a2.clone(),
        a.clone(),
        id.clone(),
    ];
    let mut h_pows = vec![id.clone(), h.clone()];
    let mut k_op = DiffOp::zero();
    for (coef, op) in kexpr.coeffs.iter().zip(&words_ops) {
        if !coef.is_zero() {
            k_op = &k_op + &with_hamiltonian(coef, op, &mut h_pows);
        }
    }
    while h_pows.len() <= 4 {
        let next = h_pows.last().unwrap().compose(h);
        h_pows.push(next);
    }
    let kc = express_in_basis(&k_op, &h_pows[..5], &atoms).map_err(weyl)?;
    let k = e_poly(&kc.iter().collect::<Vec<_>>());
    raw.k = k.clone();
    spec.k = k;

    let bc_table = vec![
        ("A^3", y[0].clone()),
        ("A^2 H", y[2].clone()),
        ("H^3", y[13].clone()),
        ("A^2", y[1].clone()),
        ("H A", y[6].clone()),
        ("H^2", y[12].clone()),
        ("A", y[5].clone()),
        ("H", y[11].clone()),
        ("1", y[10].clone()),
    ];
    Ok(Q5Extraction { raw, spec, bc_table, ac_over_b: x[4].clone() })
}
