//! Cubic associative algebras
//!
//! ```text
//! [A, B] = C
//! [A, C] = alpha A^2 + beta {A,B} + gamma A + delta B + epsilon
//! [B, C] = mu A^3 + nu A^2 - beta B^2 - alpha {A,B} + xi A - gamma B + zeta
//! ```
//!
//! with constants that are polynomials in the energy `E` (the Hamiltonian is
//! central) and in the physical parameters.

mod casimir;
mod extract;
pub mod pbw;

pub use casimir::{
    basis_words, casimir_coefficients, generic_casimir_text, substitute_fractions, CasimirExpression, CASIMIR_BASIS,
};
pub use extract::{extract_q5_constants, Q5Extraction};

use std::collections::BTreeMap;

use thiserror::Error;

use crate::exactnum::{parse_expr, ExactError, PolyFraction, Rational, Symbol, SymbolTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("Jacobi violation: {0}")]
    JacobiViolation(String),
    #[error("underdetermined: Casimir coefficients are not fixed by commutation")]
    Underdetermined,
    #[error("no polynomial Casimir of the assumed shape exists")]
    NoCasimir,
    #[error("operator extraction failed: {0}")]
    Extraction(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

pub fn energy_sym() -> Symbol {
    Symbol::new("E")
}

/// Names of the nine structure constants, in order.
pub const CONSTANT_NAMES: [&str; 9] = ["alpha", "beta", "gamma", "delta", "epsilon", "mu", "nu", "xi", "zeta"];

/// Structure constants after Jacobi reduction, plus the Casimir value `k(E)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicAlgebraSpec {
    pub alpha: PolyFraction,
    pub beta: PolyFraction,
    pub gamma: PolyFraction,
    pub delta: PolyFraction,
    pub epsilon: PolyFraction,
    pub mu: PolyFraction,
    pub nu: PolyFraction,
    pub xi: PolyFraction,
    pub zeta: PolyFraction,
    pub k: PolyFraction,
}

/// Constants as read off `[A,C]` and `[B,C]` before imposing the Jacobi
/// identity; `rho`, `sigma`, `eta` multiply `B^2`, `{A,B}`, `B` in `[B,C]`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawConstants {
    pub alpha: PolyFraction,
    pub beta: PolyFraction,
    pub gamma: PolyFraction,
    pub delta: PolyFraction,
    pub epsilon: PolyFraction,
    pub mu: PolyFraction,
    pub nu: PolyFraction,
    pub rho: PolyFraction,
    pub sigma: PolyFraction,
    pub xi: PolyFraction,
    pub eta: PolyFraction,
    pub zeta: PolyFraction,
    pub k: PolyFraction,
}

/// Enforces `rho = -beta`, `sigma = -alpha`, `eta = -gamma`.
pub fn jacobi_reduce(raw: &RawConstants) -> Result<CubicAlgebraSpec, AlgebraError> {
    for (name, got, want, src) in [
        ("rho", &raw.rho, -&raw.beta, "beta"),
        ("sigma", &raw.sigma, -&raw.alpha, "alpha"),
        ("eta", &raw.eta, -&raw.gamma, "gamma"),
    ] {
        if *got != want {
            return Err(AlgebraError::JacobiViolation(format!("{name} = {got}, but the Jacobi identity needs -{src} = {want}")));
        }
    }
    Ok(CubicAlgebraSpec {
        alpha: raw.alpha.clone(),
        beta: raw.beta.clone(),
        gamma: raw.gamma.clone(),
        delta: raw.delta.clone(),
        epsilon: raw.epsilon.clone(),
        mu: raw.mu.clone(),
        nu: raw.nu.clone(),
        xi: raw.xi.clone(),
        zeta: raw.zeta.clone(),
        k: raw.k.clone(),
    })
}

fn q5_expr(text: &str) -> PolyFraction {
    parse_expr(text, &SymbolTable::open()).expect("built-in expression")
}

/// Published Q5 constants, with `H` replaced by `E`.
pub fn q5_spec() -> CubicAlgebraSpec {
    CubicAlgebraSpec {
        alpha: PolyFraction::zero(),
        beta: PolyFraction::zero(),
        gamma: PolyFraction::zero(),
        delta: q5_expr("h^4/a^4"),
        epsilon: PolyFraction::zero(),
        mu: q5_expr("-32*h^2"),
        nu: q5_expr("-48*h^2*E + 48*h^4/a^2"),
        xi: q5_expr("32*h^4/a^2*E + 8*h^6/a^4"),
        zeta: q5_expr("16*h^2*E^3 - 16*h^4/a^2*E^2 - 4*h^6/a^4*E - 12*h^8/a^6"),
        k: q5_expr("-16*h^2*E^4 + 32*h^4/a^2*E^3 + 16*h^6/a^4*E^2 - 40*h^8/a^6*E - 3*h^10/a^8"),
    }
}

impl CubicAlgebraSpec {
    pub fn zero() -> CubicAlgebraSpec {
        CubicAlgebraSpec::from_constants(std::array::from_fn(|_| PolyFraction::zero()), PolyFraction::zero())
    }

    /// Every constant a free symbol named after it; `k` is the symbol `k`.
    pub fn generic() -> CubicAlgebraSpec {
        CubicAlgebraSpec::from_constants(CONSTANT_NAMES.map(|n| PolyFraction::var(Symbol::new(n))), PolyFraction::var(Symbol::new("k")))
    }

    pub fn from_constants(c: [PolyFraction; 9], k: PolyFraction) -> CubicAlgebraSpec {
        let [alpha, beta, gamma, delta, epsilon, mu, nu, xi, zeta] = c;
        CubicAlgebraSpec { alpha, beta, gamma, delta, epsilon, mu, nu, xi, zeta, k }
    }

    /// The nine structure constants in [`CONSTANT_NAMES`] order.
    pub fn constants(&self) -> [PolyFraction; 9] {
        [
            self.alpha.clone(),
            self.beta.clone(),
            self.gamma.clone(),
            self.delta.clone(),
            self.epsilon.clone(),
            self.mu.clone(),
            self.nu.clone(),
            self.xi.clone(),
            self.zeta.clone(),
        ]
    }

    /// Applies `f` to every constant and to `k`.
    pub fn try_map(&self, f: impl Fn(&PolyFraction) -> Result<PolyFraction, ExactError>) -> Result<CubicAlgebraSpec, ExactError> {
        let c = self.constants();
        let mapped: Vec<PolyFraction> = c.iter().map(&f).collect::<Result<_, _>>()?;
        Ok(CubicAlgebraSpec::from_constants(mapped.try_into().expect("nine constants"), f(&self.k)?))
    }

    /// Partial evaluation at rational parameter values.
    pub fn specialize(&self, values: &BTreeMap<Symbol, Rational>) -> Result<CubicAlgebraSpec, ExactError> {
        self.try_map(|c| c.eval_partial(values))
    }

    /// Substitutes the energy with a polynomial expression (e.g. `E(p)`).
    pub fn with_energy(&self, energy: &crate::exactnum::MultiPoly) -> Result<CubicAlgebraSpec, ExactError> {
        self.try_map(|c| c.substitute(energy_sym(), energy))
    }

    pub fn named(&self) -> Vec<(&'static str, &PolyFraction)> {
        vec![
            ("alpha", &self.alpha),
            ("beta", &self.beta),
            ("gamma", &self.gamma),
            ("delta", &self.delta),
            ("epsilon", &self.epsilon),
            ("mu", &self.mu),
            ("nu", &self.nu),
            ("xi", &self.xi),
            ("zeta", &self.zeta),
            ("k", &self.k),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raw_from(spec: &CubicAlgebraSpec) -> RawConstants {
        RawConstants {
            alpha: spec.alpha.clone(),
            beta: spec.beta.clone(),
            gamma: spec.gamma.clone(),
            delta: spec.delta.clone(),
            epsilon: spec.epsilon.clone(),
            mu: spec.mu.clone(),
            nu: spec.nu.clone(),
            rho: -&spec.beta,
            sigma: -&spec.alpha,
            xi: spec.xi.clone(),
            eta: -&spec.gamma,
            zeta: spec.zeta.clone(),
            k: spec.k.clone(),
        }
    }

    #[test]
    fn jacobi_reduction() {
        let g = CubicAlgebraSpec::generic();
        assert_eq!(jacobi_reduce(&raw_from(&g)).unwrap(), g);
        let mut bad = raw_from(&g);
        bad.rho = g.beta.clone();
        assert!(matches!(jacobi_reduce(&bad), Err(AlgebraError::JacobiViolation(_))));
        assert_eq!(jacobi_reduce(&RawConstants::default()).unwrap(), CubicAlgebraSpec::zero());
    }

    #[test]
    fn q5_constants() {
        let s = q5_spec();
        assert_eq!(s.delta.to_string(), "h^4/a^4");
        assert_eq!(s.mu, q5_expr("-32*h^2"));
        assert!(s.alpha.is_zero() && s.beta.is_zero());
    }
}
