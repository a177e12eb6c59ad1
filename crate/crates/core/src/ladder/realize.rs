use crate::algebra::CubicAlgebraSpec;
use crate::exactnum::{rat, NFunc, PolyFraction, UPoly};

use super::expr::{LadderExpr, PhiPoly};
use super::LadderError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RealizationCase {
    /// `beta != 0`: `A(N)` quadratic in `N + u`.
    Case1,
    /// `beta = 0, delta != 0`: `A(N)` linear in `N + u`.
    Case2,
}

impl RealizationCase {
    pub fn number(self) -> u8 {
        match self {
            RealizationCase::Case1 => 1,
            RealizationCase::Case2 => 2,
        }
    }

    /// Largest degree the cleared structure function may have.
    pub fn degree_bound(self) -> usize {
        match self {
            RealizationCase::Case1 => 10,
            RealizationCase::Case2 => 4,
        }
    }
}

/// `A = A(N)`, `B = b(N) + b^+ rho(N) + rho(N) b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OscRealization {
    pub case: RealizationCase,
    pub a_of_n: NFunc,
    pub b_of_n: NFunc,
    pub rho_of_n: NFunc,
}

fn c(x: PolyFraction) -> NFunc {
    NFunc::constant(x)
}

fn q(n: i64, d: i64) -> PolyFraction {
    PolyFraction::from(rat(n, d))
}

fn inv(x: &PolyFraction, what: &str) -> Result<PolyFraction, LadderError> {
    x.try_inv(&[]).map_err(|_| LadderError::NonInvertible(format!("{what} = {x}")))
}

/// Normalization of `rho`; it does not affect the spectrum.
pub fn choose_rho(case: RealizationCase, beta: &PolyFraction) -> Result<NFunc, LadderError> {
    match case {
        RealizationCase::Case2 => Ok(NFunc::one()),
        RealizationCase::Case1 => {
            let nu = UPoly::nu();
            let nu1 = nu.shift(1);
            let two_nu1 = UPoly::new(vec![PolyFraction::one(), PolyFraction::int(2)]);
            let den = (&(&nu * &nu1) * &two_nu1.pow(2)).scale(&(&PolyFraction::int(3 * 4096) * &beta.pow(8)));
            Ok(NFunc::new(UPoly::one(), den))
        }
    }
}

/// Closed-form `A(N)`, `b(N)` solving the matching conditions of `[A, C]`.
pub fn derive_realization(spec: &CubicAlgebraSpec) -> Result<OscRealization, LadderError> {
    let (al, be, ga, de, ep) = (&spec.alpha, &spec.beta, &spec.gamma, &spec.delta, &spec.epsilon);
    let nu = NFunc::nu();
    let (case, a_of_n, b_of_n) = if !be.is_zero() {
        let ib = inv(be, "beta")?;
        let ib2 = ib.pow(2);
        // A = beta/2 (nu^2 - 1/4 - delta/beta^2)
        let a = NFunc::poly(UPoly::new(vec![
            &(&q(-1, 8) * be) - &(&q(1, 2) * &(de * &ib)),
            PolyFraction::zero(),
            &q(1, 2) * be,
        ]));
        // w = nu^2 - 1/4
        let w = NFunc::poly(UPoly::new(vec![q(-1, 4), PolyFraction::zero(), PolyFraction::one()]));
        let c0 = &(&(al * de) - &(ga * be)) * &(&q(1, 2) * &ib2);
        let cm = &(&(&(-al) * &de.pow(2)) + &(&PolyFraction::int(2) * &(&(ga * de) * be)))
            - &(&PolyFraction::int(4) * &(&be.pow(2) * ep));
        let cm = &cm * &(&q(1, 4) * &ib2.pow(2));
        let b = &(&w.scale(&(&q(-1, 4) * al)) + &c(c0)) + &w.inv().scale(&cm);
        (RealizationCase::Case1, a, b)
    } else if !de.is_zero() {
        let s = de.try_sqrt().ok_or_else(|| LadderError::NotPerfectSquare(de.to_string()))?;
        let is = inv(&s, "sqrt(delta)")?;
        let a = nu.scale(&s);
        let b = &(&nu.pow(2).scale(&-al) - &nu.scale(&(ga * &is))) - &c(ep * &inv(de, "delta")?);
        (RealizationCase::Case2, a, b)
    } else {
        return Err(LadderError::UnsupportedCase);
    };
    let rho_of_n = choose_rho(case, be)?;
    let real = OscRealization { case, a_of_n, b_of_n, rho_of_n };
    real.check_invariants(spec)?;
    Ok(real)
}

impl OscRealization {
    /// `Delta A^2 = beta (A(N+1) + A(N)) + delta` and
    /// `(2 beta A + delta) b + alpha A^2 + gamma A + epsilon = 0`.
    pub fn check_invariants(&self, spec: &CubicAlgebraSpec) -> Result<(), LadderError> {
        let a = &self.a_of_n;
        let a1 = a.shift(1);
        let da = &a1 - a;
        let lhs = &da.pow(2) - &(&(&a1 + a).scale(&spec.beta) + &c(spec.delta.clone()));
        if !lhs.is_zero() {
            return Err(LadderError::Inconsistent(format!("difference equation for A(N) fails: {lhs}")));
        }
        let two_ba = a.scale(&(&PolyFraction::int(2) * &spec.beta));
        let m = &(&(&(&two_ba + &c(spec.delta.clone())) * &self.b_of_n) + &a.pow(2).scale(&spec.alpha))
            + &(&a.scale(&spec.gamma) + &c(spec.epsilon.clone()));
        if !m.is_zero() {
            return Err(LadderError::Inconsistent(format!("matching equation for b(N) fails: {m}")));
        }
        Ok(())
    }

    pub fn with_rho(&self, rho: NFunc) -> OscRealization {
        OscRealization { rho_of_n: rho, ..self.clone() }
    }

    /// `(A, B, C)` in the ladder calculus.
    pub fn generators(&self) -> (LadderExpr, LadderExpr, LadderExpr) {
        let a = LadderExpr::func(self.a_of_n.clone());
        let rho = PhiPoly::func(self.rho_of_n.clone());
        let b = &(&LadderExpr::func(self.b_of_n.clone()) + &LadderExpr::term(1, rho.clone())) + &LadderExpr::term(-1, rho);
        let cc = a.commutator(&b);
        (a, b, cc)
    }
}
