//! Finite Fock representations of the oscillator realization, with every
//! algebra relation checked as a matrix identity.
//!
//! Two gauges share the products `b+ b = Phi(N)` and `b b+ = Phi(N+1)`:
//! the triangular one (`b|n> = |n-1>`, `b+|n> = Phi(n+1)|n+1>`) is fully
//! rational, the symmetric one takes square roots and needs `Phi >= 0`.

mod ddouble;
mod fixture;
mod matrix;

pub use fixture::{random_case1, Case1Fixture};
pub use ddouble::DoubleDouble;
pub use matrix::{Dense, Scalar};

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::algebra::{basis_words, casimir_coefficients, energy_sym, AlgebraError, CubicAlgebraSpec};
use crate::exactnum::{ExactError, NFunc, PolyFraction, Rational, Symbol};
use crate::ladder::{LadderError, StructureFunction};
use crate::spectrum::{Catalog, SpectrumFamily};

/// Residual bound in the symmetric gauge.
pub const FLOAT_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("Phi({x}) = {value} is negative; no symmetric representation")]
    NegativePhi { x: u32, value: String },
    #[error("Phi(0) = {0} is not zero: no lowest-weight state")]
    NoLowestWeight(String),
    #[error("Phi(p+1) = {value} is not zero for p = {p}")]
    NotTruncated { p: u32, value: String },
    #[error("{0} is not a number after specialization")]
    Unspecialized(String),
    #[error(transparent)]
    Ladder(#[from] LadderError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gauge {
    TriangularExact,
    SymmetricFloat,
}

impl Gauge {
    pub fn name(self) -> &'static str {
        match self {
            Gauge::TriangularExact => "triangular-exact",
            Gauge::SymmetricFloat => "symmetric-float",
        }
    }
}

/// Everything a `(p + 1)`-dimensional representation needs, as numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepData {
    pub p: u32,
    pub u: Rational,
    pub energy: Rational,
    /// `Phi(n)` for `n = 0..=p+1`.
    pub phi: Vec<Rational>,
    /// `A(n + u)` for `n = 0..=p`.
    pub a_diag: Vec<Rational>,
    /// `b(n + u)` for `n = 0..=p`.
    pub b_diag: Vec<Rational>,
    /// `rho(n + u)` for `n = 0..=p`.
    pub rho: Vec<Rational>,
    /// alpha..zeta.
    pub constants: [Rational; 9],
    pub k: Rational,
    pub casimir: [Rational; 11],
}

fn number(f: &PolyFraction, what: &str) -> Result<Rational, RepError> {
    f.constant_value().ok_or_else(|| RepError::Unspecialized(format!("{what} = {f}")))
}

fn values_at(f: &NFunc, values: &BTreeMap<Symbol, Rational>, u: &Rational, range: std::ops::RangeInclusive<u32>, what: &str) -> Result<Vec<Rational>, RepError> {
    let g = f.try_map(|c| c.eval_partial(values))?;
    range
        .map(|n| {
            let nu = PolyFraction::from(Rational::from_integer(n.into()) + u);
            number(&g.eval(&nu, &[])?, what)
        })
        .collect()
}

/// Specializes the realization and structure function at `values`
/// (parameters and `E`), shift `u` and dimension `p + 1`.
pub fn rep_data(spec: &CubicAlgebraSpec, sf: &StructureFunction, values: &BTreeMap<Symbol, Rational>, u: &Rational, p: u32) -> Result<RepData, RepError> {
    let energy = values.get(&energy_sym()).cloned().unwrap_or_else(Rational::zero);
    let real = &sf.realization;
    let phi = values_at(&sf.true_phi(), values, u, 0..=p + 1, "Phi")?;
    if !phi[0].is_zero() {
        return Err(RepError::NoLowestWeight(phi[0].to_string()));
    }
    if !phi[p as usize + 1].is_zero() {
        return Err(RepError::NotTruncated { p, value: phi[p as usize + 1].to_string() });
    }
    let constants = spec.constants().each_ref().map(|c| c.eval_partial(values).map_err(RepError::from).and_then(|f| number(&f, "structure constant")));
    let constants: [Rational; 9] = try_array(constants)?;
    let k = number(&spec.k.eval_partial(values)?, "k")?;
    let kx = casimir_coefficients(spec)?;
    let casimir = try_array(kx.coeffs.each_ref().map(|c| c.eval_partial(values).map_err(RepError::from).and_then(|f| number(&f, "Casimir coefficient"))))?;
    Ok(RepData {
        p,
        u: u.clone(),
        energy,
        phi,
        a_diag: values_at(&real.a_of_n, values, u, 0..=p, "A")?,
        b_diag: values_at(&real.b_of_n, values, u, 0..=p, "b")?,
        rho: values_at(&real.rho_of_n, values, u, 0..=p, "rho")?,
        constants,
        k,
        casimir,
    })
}

fn try_array<T, const N: usize>(items: [Result<T, RepError>; N]) -> Result<[T; N], RepError> {
    let v: Vec<T> = items.into_iter().collect::<Result<_, _>>()?;
    Ok(v.try_into().unwrap_or_else(|_| unreachable!()))
}

/// Representation data for one catalog family at one `p`.
pub fn family_rep_data(spec: &CubicAlgebraSpec, sf: &StructureFunction, catalog: &Catalog, family: &SpectrumFamily, p: u32) -> Result<RepData, RepError> {
    let energy = family.energy_at(p).ok_or_else(|| RepError::Unspecialized("numeric family energy".into()))?;
    let mut values = catalog.values.clone();
    values.insert(energy_sym(), energy.clone());
    let u = family
        .u_branch
        .evaluate(&BTreeMap::from([(energy_sym(), energy)]))
        .map_err(RepError::from)?;
    rep_data(spec, sf, &values, &u, p)
}

impl RepData {
    /// Copy with `Phi(index)` shifted by `delta` (negative controls).
    pub fn perturbed(&self, index: usize, delta: &Rational) -> RepData {
        let mut out = self.clone();
        out.phi[index] = &out.phi[index] + delta;
        out
    }
}

/// Ladder and generator matrices of one representation.
#[derive(Clone, Debug, PartialEq)]
pub struct FockMatrices<T> {
    pub p: u32,
    pub gauge: Gauge,
    pub number: Dense<T>,
    pub b: Dense<T>,
    pub b_dagger: Dense<T>,
    pub a: Dense<T>,
    pub b_gen: Dense<T>,
    pub c: Dense<T>,
    /// The Casimir expression evaluated on the generators.
    pub casimir: Dense<T>,
}

fn assemble<T: Scalar>(data: &RepData, gauge: Gauge, b: Dense<T>, b_dagger: Dense<T>) -> FockMatrices<T> {
    let conv = |v: &[Rational]| Dense::diag(v.iter().map(T::from_rational));
    let n = data.p as usize + 1;
    let a = conv(&data.a_diag);
    let rho = conv(&data.rho);
    let b_gen = &(&conv(&data.b_diag) + &(&b_dagger * &rho)) + &(&rho * &b);
    let c = a.commutator(&b_gen);
    let gens = [&a, &b_gen, &c];
    let mut casimir = Dense::zeros(n);
    for (i, coef) in data.casimir.iter().enumerate() {
        if coef.is_zero() {
            continue;
        }
        let mut t = Dense::zeros(n);
        for w in basis_words(i) {
            t = &t + &w.iter().fold(Dense::identity(n), |acc, &l| &acc * gens[l as usize]);
        }
        casimir = &casimir + &t.scale(&T::from_rational(coef));
    }
    let number = Dense::diag((0..n).map(|i| T::from_rational(&Rational::from_integer(i.into()))));
    FockMatrices { p: data.p, gauge, number, b, b_dagger, a, b_gen, c, casimir }
}

/// Rational representation: `b` lowers with weight one, `b+` raises with
/// weight `Phi(n+1)`.
pub fn triangular_exact(data: &RepData) -> FockMatrices<Rational> {
    let n = data.p as usize + 1;
    let mut b = Dense::zeros(n);
    let mut bd = Dense::zeros(n);
    for j in 1..n {
        b.set(j - 1, j, Rational::from_integer(1.into()));
        bd.set(j, j - 1, data.phi[j].clone());
    }
    assemble(data, Gauge::TriangularExact, b, bd)
}

/// Floating representation with `b+|n> = sqrt(Phi(n+1))|n+1>`, carried in
/// double-double precision so residuals stay far below the tolerance even
/// for entries of size `1e6`.
pub fn symmetric_float(data: &RepData) -> Result<FockMatrices<DoubleDouble>, RepError> {
    let n = data.p as usize + 1;
    let mut b = Dense::zeros(n);
    let mut bd = Dense::zeros(n);
    for j in 1..n {
        if data.phi[j].is_negative() {
            return Err(RepError::NegativePhi { x: j as u32, value: data.phi[j].to_string() });
        }
        let s = DoubleDouble::sqrt_rational(&data.phi[j]);
        b.set(j - 1, j, s);
        bd.set(j, j - 1, s);
    }
    Ok(assemble(data, Gauge::SymmetricFloat, b, bd))
}

/// Max-norm residual of one relation.
#[derive(Clone, Debug, PartialEq)]
pub struct Residual {
    pub relation: &'static str,
    pub max_residual: f64,
    /// Every entry is exactly zero (meaningful in the exact gauge).
    pub exact_zero: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResidualReport {
    pub gauge: Gauge,
    pub p: u32,
    pub energy: Rational,
    pub rows: Vec<Residual>,
}

impl ResidualReport {
    pub fn max_residual(&self) -> f64 {
        self.rows.iter().map(|r| r.max_residual).fold(0.0, f64::max)
    }

    /// Exact zeros in the triangular gauge, `FLOAT_TOLERANCE` otherwise.
    pub fn passed(&self) -> bool {
        match self.gauge {
            Gauge::TriangularExact => self.rows.iter().all(|r| r.exact_zero),
            Gauge::SymmetricFloat => self.max_residual() <= FLOAT_TOLERANCE,
        }
    }

    pub fn failures(&self) -> Vec<&'static str> {
        self.rows
            .iter()
            .filter(|r| match self.gauge {
                Gauge::TriangularExact => !r.exact_zero,
                Gauge::SymmetricFloat => r.max_residual > FLOAT_TOLERANCE,
            })
            .map(|r| r.relation)
            .collect()
    }
}

/// Checks the commutation relations, the Casimir value and the oscillator
/// identities on the given matrices.
pub fn verify_relations<T: Scalar>(m: &FockMatrices<T>, data: &RepData) -> ResidualReport {
    let n = m.p as usize + 1;
    let s = |q: &Rational| T::from_rational(q);
    let [alpha, beta, gamma, delta, epsilon, mu, nu, xi, zeta] = data.constants.each_ref().map(s);
    let id = Dense::<T>::identity(n);
    let (a, b, c) = (&m.a, &m.b_gen, &m.c);
    let a2 = a * a;
    let ab = a.anticommutator(b);

    let ac_rhs = [a2.scale(&alpha), ab.scale(&beta), a.scale(&gamma), b.scale(&delta), id.scale(&epsilon)];
    let bc_rhs = [
        (&a2 * a).scale(&mu),
        a2.scale(&nu),
        (b * b).scale(&-beta.clone()),
        ab.scale(&-alpha.clone()),
        a.scale(&xi),
        b.scale(&-gamma.clone()),
        id.scale(&zeta),
    ];
    let sum = |ms: &[Dense<T>]| ms.iter().fold(Dense::zeros(n), |acc, x| &acc + x);
    let phi_n = Dense::diag(data.phi[..n].iter().map(s));
    let phi_n1 = Dense::diag(data.phi[1..=n].iter().map(s));
    let checks: [(&'static str, Dense<T>); 7] = [
        ("[A,B] = C", &a.commutator(b) - c),
        ("[A,C]", &a.commutator(c) - &sum(&ac_rhs)),
        ("[B,C]", &b.commutator(c) - &sum(&bc_rhs)),
        ("K = k(E)", &m.casimir - &id.scale(&s(&data.k))),
        ("b^(p+1) = 0", m.b.pow(m.p + 1)),
        ("b+ b = Phi(N)", &(&m.b_dagger * &m.b) - &phi_n),
        ("b b+ = Phi(N+1)", &(&m.b * &m.b_dagger) - &phi_n1),
    ];
    let rows = checks
        .into_iter()
        .map(|(relation, r)| Residual { relation, max_residual: r.max_abs(), exact_zero: r.is_zero() })
        .collect();
    ResidualReport { gauge: m.gauge, p: m.p, energy: data.energy.clone(), rows }
}

/// Both gauges for one representation; the symmetric one is skipped when
/// `Phi` is negative somewhere.
pub fn check_both(data: &RepData) -> (ResidualReport, Option<ResidualReport>) {
    let exact = verify_relations(&triangular_exact(data), data);
    let float = symmetric_float(data).ok().map(|m| verify_relations(&m, data));
    (exact, float)
}
