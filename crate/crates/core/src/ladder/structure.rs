use std::collections::BTreeMap;

use crate::algebra::{basis_words, casimir_coefficients, CubicAlgebraSpec};
use crate::exactnum::{nfunc::in_x_and_u, NFunc, PolyFraction, Symbol, UPoly};

use super::expr::{LadderExpr, PhiPoly};
use super::realize::{OscRealization, RealizationCase};
use super::LadderError;

/// The structure function, stored with the `rho` normalization cleared:
/// `Phi_true(N) = phi(nu) * gauge(nu)` with `phi` a polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureFunction {
    pub case: RealizationCase,
    /// Cleared polynomial in `nu = N + u`.
    pub phi: UPoly,
    /// `1 / rho(N - 1)`; the constant one when `rho = 1`.
    pub gauge: NFunc,
    pub realization: OscRealization,
}

impl StructureFunction {
    pub fn degree(&self) -> usize {
        self.phi.degree()
    }

    pub fn true_phi(&self) -> NFunc {
        &NFunc::poly(self.phi.clone()) * &self.gauge
    }

    /// `phi` as a fraction in `x` and `u` (with `nu = x + u`).
    pub fn phi_in_x(&self, x: Symbol, u: Symbol) -> PolyFraction {
        in_x_and_u(&self.phi, x, u)
    }
}

/// Generic (unordered) products of generators.
fn realize_word(word: &[u8], gens: &[LadderExpr; 3]) -> LadderExpr {
    word.iter().fold(LadderExpr::identity(), |acc, &l| acc.compose(&gens[l as usize]))
}

fn k_constant(x: &PolyFraction) -> LadderExpr {
    LadderExpr::constant(x.clone())
}

/// `[B, C]` minus its defining right-hand side.
pub fn bc_residual(spec: &CubicAlgebraSpec, a: &LadderExpr, b: &LadderExpr, c: &LadderExpr) -> LadderExpr {
    let k = |x: &PolyFraction| NFunc::constant(x.clone());
    let a2 = a.compose(a);
    let rhs = [
        a2.compose(a).scale(&k(&spec.mu)),
        a2.scale(&k(&spec.nu)),
        b.compose(b).scale(&k(&-&spec.beta)),
        a.anticommutator(b).scale(&k(&-&spec.alpha)),
        a.scale(&k(&spec.xi)),
        b.scale(&k(&-&spec.gamma)),
        k_constant(&spec.zeta),
    ]
    .iter()
    .fold(LadderExpr::zero(), |acc, t| &acc + t);
    &b.commutator(c) - &rhs
}

/// `[A, C]` minus its defining right-hand side.
pub fn ac_residual(spec: &CubicAlgebraSpec, a: &LadderExpr, b: &LadderExpr, c: &LadderExpr) -> LadderExpr {
    let k = |x: &PolyFraction| NFunc::constant(x.clone());
    let rhs = [
        a.compose(a).scale(&k(&spec.alpha)),
        a.anticommutator(b).scale(&k(&spec.beta)),
        a.scale(&k(&spec.gamma)),
        b.scale(&k(&spec.delta)),
        k_constant(&spec.epsilon),
    ]
    .iter()
    .fold(LadderExpr::zero(), |acc, t| &acc + t);
    &a.commutator(c) - &rhs
}

/// The Casimir element in the ladder calculus.
pub fn casimir_ladder(spec: &CubicAlgebraSpec, gens: &[LadderExpr; 3]) -> Result<LadderExpr, LadderError> {
    let kx = casimir_coefficients(spec)?;
    let mut out = LadderExpr::zero();
    for (i, coef) in kx.coeffs.iter().enumerate() {
        if coef.is_zero() {
            continue;
        }
        let mut t = LadderExpr::zero();
        for w in basis_words(i) {
            t = &t + &realize_word(&w, gens);
        }
        out = &out + &t.scale(&NFunc::constant(coef.clone()));
    }
    Ok(out)
}

/// Offset-zero relation `p Phi(N) + q Phi(N+1) + r = 0`.
fn linear_parts(rel: &PhiPoly, name: &str) -> Result<(NFunc, NFunc, NFunc), LadderError> {
    for m in rel.terms().keys() {
        if !(m.is_empty() || m == &[0] || m == &[1]) {
            return Err(LadderError::Inconsistent(format!("{name}: unexpected unknown {m:?}")));
        }
    }
    Ok((rel.coeff(&[0]), rel.coeff(&[1]), rel.coeff(&[])))
}

/// Solves the offset-zero parts of the `[B, C]` relation and of `K = k` for
/// `Phi`, checks shift consistency and every other offset, and clears the
/// `rho` normalization.
pub fn derive_structure_function(
    spec: &CubicAlgebraSpec,
    realization: &OscRealization,
    k: &PolyFraction,
) -> Result<StructureFunction, LadderError> {
    let (a, b, c) = realization.generators();
    let gens = [a.clone(), b.clone(), c.clone()];
    let bc = bc_residual(spec, &a, &b, &c);
    let kl = &casimir_ladder(spec, &gens)? - &LadderExpr::constant(k.clone());

    let (p1, q1, r1) = linear_parts(&bc.offset(0), "[B,C] relation")?;
    let (p2, q2, r2) = linear_parts(&kl.offset(0), "Casimir relation")?;
    let det = &(&p1 * &q2) - &(&p2 * &q1);
    if det.is_zero() {
        return Err(LadderError::SingularSystem);
    }
    let inv_det = det.inv();
    let phi_n = &(&(&q1 * &r2) - &(&q2 * &r1)) * &inv_det;
    let phi_n1 = &(&(&p2 * &r1) - &(&p1 * &r2)) * &inv_det;
    if phi_n.shift(1) != phi_n1 {
        return Err(LadderError::ShiftInconsistency);
    }
    for (name, e) in [("[B,C] relation", &bc), ("Casimir relation", &kl)] {
        if let Some((off, _)) = e.substitute(&phi_n).into_iter().find(|(_, f)| !f.is_zero()) {
            return Err(LadderError::Inconsistent(format!("{name} leaves a residual at ladder offset {off}")));
        }
    }
    let gauge = realization.rho_of_n.shift(-1).inv();
    let cleared = &phi_n * &realization.rho_of_n.shift(-1);
    let phi = cleared.as_poly().ok_or_else(|| LadderError::NonPolynomialPhi(cleared.to_string()))?;
    if phi.degree() > realization.case.degree_bound() {
        return Err(LadderError::NonPolynomialPhi(format!(
            "degree {} exceeds the bound {} for case {}",
            phi.degree(),
            realization.case.degree_bound(),
            realization.case.number()
        )));
    }
    Ok(StructureFunction { case: realization.case, phi, gauge, realization: realization.clone() })
}

/// Every relation of the algebra evaluated in the ladder calculus with a
/// known structure function; returns the relations with nonzero residual.
pub fn relation_residuals(spec: &CubicAlgebraSpec, sf: &StructureFunction, k: &PolyFraction) -> Result<BTreeMap<&'static str, usize>, LadderError> {
    let (a, b, c) = sf.realization.generators();
    let phi = sf.true_phi();
    let mut out = BTreeMap::new();
    let gens = [a.clone(), b.clone(), c.clone()];
    let kl = &casimir_ladder(spec, &gens)? - &LadderExpr::constant(k.clone());
    for (name, e) in [
        ("[A,C]", ac_residual(spec, &a, &b, &c)),
        ("[B,C]", bc_residual(spec, &a, &b, &c)),
        ("K", kl),
    ] {
        let nonzero = e.substitute(&phi).len();
        if nonzero > 0 {
            out.insert(name, nonzero);
        }
    }
    Ok(out)
}
