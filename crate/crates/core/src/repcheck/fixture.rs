//! Random Case 1 algebras that admit a representation of a chosen dimension.

use std::collections::BTreeMap;

use rand::Rng;

use crate::algebra::CubicAlgebraSpec;
use crate::exactnum::{rat, solve_linear, PolyFraction, Rational, Symbol};
use crate::ladder::{derive_realization, derive_structure_function, StructureFunction};

use super::RepError;

/// A Case 1 spec with `Phi(0) = Phi(p+1) = 0` at shift `u`.
#[derive(Clone, Debug)]
pub struct Case1Fixture {
    pub spec: CubicAlgebraSpec,
    pub sf: StructureFunction,
    pub u: Rational,
    pub p: u32,
}

fn small<R: Rng>(rng: &mut R, nonzero: bool) -> Rational {
    loop {
        let q = rat(rng.gen_range(-4..=4), rng.gen_range(1..=3));
        if !nonzero || q != rat(0, 1) {
            return q;
        }
    }
}

/// Draws `alpha..xi` and `u` at random, then solves for `zeta` and the
/// Casimir value `k` (the structure function is affine in both) so that the
/// representation of dimension `p + 1` exists.
///
/// `u` has denominator 3, 5 or 7, away from the poles of `rho`.
pub fn random_case1<R: Rng>(rng: &mut R, p: u32) -> Result<Case1Fixture, RepError> {
    let (zeta, k) = (Symbol::new("zeta"), Symbol::new("k"));
    loop {
        let mut c: [PolyFraction; 9] = std::array::from_fn(|i| PolyFraction::from(small(rng, i == 1)));
        c[8] = PolyFraction::var(zeta);
        let generic = CubicAlgebraSpec::from_constants(c, PolyFraction::var(k));
        let u = rat(rng.gen_range(1..=12), [3, 5, 7][rng.gen_range(0..3)]);
        let real = derive_realization(&generic)?;
        let sf = derive_structure_function(&generic, &real, &generic.k)?;
        // cleared Phi at n = 0 and n = p + 1, linear in (zeta, k)
        let rows: Vec<PolyFraction> = [Rational::from_integer(0.into()), Rational::from_integer((p + 1).into())]
            .iter()
            .map(|n| sf.phi.eval(&PolyFraction::from(n + &u)))
            .collect();
        let coeff = |f: &PolyFraction, s: Symbol| f.num().derivative(s).constant_value();
        let mut a = Vec::new();
        let mut b = Vec::new();
        for f in &rows {
            let (Some(cz), Some(ck)) = (coeff(f, zeta), coeff(f, k)) else { unreachable!("affine in zeta and k") };
            let zero = BTreeMap::from([(zeta, rat(0, 1)), (k, rat(0, 1))]);
            let c0 = f.evaluate(&zero)?;
            a.push(vec![PolyFraction::from(cz), PolyFraction::from(ck)]);
            b.push(PolyFraction::from(-c0));
        }
        let Ok(sol) = solve_linear(a, b, &[]) else { continue };
        let values = BTreeMap::from([(zeta, sol[0].constant_value().expect("rational")), (k, sol[1].constant_value().expect("rational"))]);
        let spec = generic.specialize(&values)?;
        let real = derive_realization(&spec)?;
        let sf = derive_structure_function(&spec, &real, &spec.k)?;
        return Ok(Case1Fixture { spec, sf, u, p });
    }
}
