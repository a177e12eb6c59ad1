//! Energy spectra from a structure function.
//!
//! A finite representation of dimension `p + 1` needs `Phi(0) = 0`,
//! `Phi(p + 1) = 0` and `Phi(x) > 0` for `x = 1..p`. The first condition
//! fixes the shift `u` as a function of `E` (a branch), the second fixes
//! `E` as a function of `p` (a family), the third is unitarity.
//!
//! Everything here works at a rational specialization of the physical
//! parameters (`h`, `a`, ...), so `Phi` becomes a polynomial in `x`, `u`, `E`.

mod factor;

pub use factor::{linear_factors, Factorization, LinearFactor};

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{energy_sym, CubicAlgebraSpec};
use crate::exactnum::{isolate_real_roots, ExactError, MultiPoly, QPoly, Rational, RootInterval, Symbol};
use crate::ladder::{derive_realization, derive_structure_function, LadderError, StructureFunction};

/// Degree bound for `u(E)` and for `E(p)`.
pub const BRANCH_DEGREE: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectrumError {
    #[error("structure function still depends on {0} after specialization")]
    Unspecialized(String),
    #[error(transparent)]
    Ladder(#[from] LadderError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

pub fn x_sym() -> Symbol {
    Symbol::new("x")
}

pub fn u_sym() -> Symbol {
    Symbol::new("u")
}

pub fn p_sym() -> Symbol {
    Symbol::new("p")
}

/// `Phi` as a polynomial in `x`, `u`, `E` at the given parameter values.
pub fn specialize_phi(sf: &StructureFunction, values: &BTreeMap<Symbol, Rational>) -> Result<MultiPoly, SpectrumError> {
    let f = sf.phi_in_x(x_sym(), u_sym()).eval_partial(values)?;
    let allowed: BTreeSet<Symbol> = [x_sym(), u_sym(), energy_sym()].into();
    if let Some(s) = f.symbols().into_iter().find(|s| !allowed.contains(s)) {
        return Err(SpectrumError::Unspecialized(s.name().to_string()));
    }
    f.as_poly()
        .cloned()
        .ok_or_else(|| SpectrumError::Unspecialized(format!("denominator {}", f.den_poly())))
}

/// A solution `u = u(E)` of `Phi(0) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UBranch {
    pub u: MultiPoly,
    pub multiplicity: u32,
}

/// Branches found in closed form, plus the unresolved part of `Phi(0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchSearch {
    pub branches: Vec<UBranch>,
    /// `None` when `Phi(0)` splits completely.
    pub unresolved: Option<MultiPoly>,
}

/// Solves `Phi(0) = 0` for `u` as polynomials in `E` of degree at most two.
pub fn u_branches(phi: &MultiPoly) -> BranchSearch {
    let phi0 = phi.substitute(x_sym(), &MultiPoly::zero());
    let fac = linear_factors(&phi0, u_sym(), energy_sym(), BRANCH_DEGREE);
    let branches = fac.factors.iter().map(|f| UBranch { u: f.root.clone(), multiplicity: f.multiplicity }).collect();
    let unresolved = (!fac.is_complete()).then(|| fac.residual.clone());
    BranchSearch { branches, unresolved }
}

/// Unitarity at one `p`: `Phi(x) > 0` for `x = 1..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub pass: bool,
    pub first_failure: Option<u32>,
}

impl Verdict {
    fn from_values(values: impl IntoIterator<Item = (u32, bool)>) -> Verdict {
        match values.into_iter().find(|&(_, ok)| !ok) {
            Some((x, _)) => Verdict { pass: false, first_failure: Some(x) },
            None => Verdict { pass: true, first_failure: None },
        }
    }
}

/// A family without closed form: energies root-isolated per `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericLevel {
    pub p: u32,
    pub energy: RootInterval,
    /// Evaluated at the interval midpoint.
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyEnergy {
    /// `E(p)`, a polynomial in `p`.
    Closed(MultiPoly),
    /// Irreducible residual in `E` and `p`, solved per `p`.
    Numeric { residual: MultiPoly, levels: Vec<NumericLevel> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumFamily {
    /// Index into the catalog's branch list.
    pub branch: usize,
    pub u_branch: MultiPoly,
    pub energy: FamilyEnergy,
    /// `Phi(x)` on the family, a polynomial in `x` and `p` (zero for numeric
    /// families).
    pub phi: MultiPoly,
    pub phi_factored: Option<Factorization>,
    pub unitarity: BTreeMap<u32, Verdict>,
}

impl SpectrumFamily {
    pub fn closed_energy(&self) -> Option<&MultiPoly> {
        match &self.energy {
            FamilyEnergy::Closed(e) => Some(e),
            FamilyEnergy::Numeric { .. } => None,
        }
    }

    pub fn energy_at(&self, p: u32) -> Option<Rational> {
        let e = self.closed_energy()?;
        Some(eval_at(e, p_sym(), &Rational::from_integer(p.into())))
    }

    /// `Phi(x)` at a given `p`.
    pub fn phi_at(&self, p: u32) -> QPoly {
        let f = self.phi.substitute(p_sym(), &MultiPoly::int(p.into()));
        QPoly::from_multipoly(&f, x_sym()).expect("family phi is univariate in x")
    }

    /// Unitary for every `1 <= p <= p_max` that was evaluated.
    pub fn unitary_for_all_p(&self) -> bool {
        !self.unitarity.is_empty() && self.unitarity.values().all(|v| v.pass)
    }

    /// The values of `p >= 1` whose verdict differs from the majority verdict.
    pub fn exceptions(&self) -> Vec<u32> {
        let relevant: Vec<(u32, bool)> = self.unitarity.iter().filter(|(&p, _)| p >= 1).map(|(&p, v)| (p, v.pass)).collect();
        let passes = relevant.iter().filter(|(_, ok)| *ok).count();
        let majority = 2 * passes > relevant.len();
        relevant.into_iter().filter(|&(_, ok)| ok != majority).map(|(p, _)| p).collect()
    }

    /// Canonical key used to merge families reached from several branches.
    fn key(&self) -> Option<(MultiPoly, MultiPoly)> {
        self.closed_energy().map(|e| (e.clone(), self.phi.clone()))
    }
}

fn eval_at(f: &MultiPoly, s: Symbol, v: &Rational) -> Rational {
    f.substitute(s, &MultiPoly::constant(v.clone())).constant_value().expect("univariate")
}

/// Evaluates `Phi(x) > 0` exactly at `x = 1..p` for `p = 0..=p_max`.
pub fn unitarity_filter(family: &SpectrumFamily, p_max: u32) -> BTreeMap<u32, Verdict> {
    (0..=p_max)
        .map(|p| {
            let q = family.phi_at(p);
            let v = Verdict::from_values((1..=p).map(|x| (x, q.eval(&Rational::from_integer(x.into())) > Rational::zero())));
            (p, v)
        })
        .collect()
}

/// `Phi(p + 1) = 0` along one branch, split into closed-form energy families.
///
/// Returns the families and, when `Phi(p+1)` does not depend on `E`, a note.
pub fn energy_families(phi: &MultiPoly, branch_index: usize, branch: &UBranch, p_max: u32) -> (Vec<SpectrumFamily>, Option<String>) {
    let (e, p) = (energy_sym(), p_sym());
    let on_branch = phi.substitute(u_sym(), &branch.u);
    let top = on_branch.substitute(x_sym(), &(&MultiPoly::var(p) + &MultiPoly::one()));
    if !top.contains(e) {
        return (Vec::new(), Some(format!("no family on branch u = {}: Phi(p+1) does not depend on E", branch.u)));
    }
    let fac = linear_factors(&top, e, p, BRANCH_DEGREE);
    let mut out = Vec::new();
    for f in &fac.factors {
        let phi_fam = on_branch.substitute(e, &f.root);
        if phi_fam.is_zero() {
            continue;
        }
        let mut fam = SpectrumFamily {
            branch: branch_index,
            u_branch: branch.u.clone(),
            energy: FamilyEnergy::Closed(f.root.clone()),
            phi_factored: Some(linear_factors(&phi_fam, x_sym(), p, BRANCH_DEGREE)),
            phi: phi_fam,
            unitarity: BTreeMap::new(),
        };
        fam.unitarity = unitarity_filter(&fam, p_max);
        fam.unitarity.remove(&0);
        out.push(fam);
    }
    if !fac.is_complete() {
        out.push(numeric_family(&on_branch, branch_index, branch, &fac.residual, p_max));
    }
    (out, None)
}

fn numeric_family(on_branch: &MultiPoly, branch_index: usize, branch: &UBranch, residual: &MultiPoly, p_max: u32) -> SpectrumFamily {
    let (e, p) = (energy_sym(), p_sym());
    let mut levels = Vec::new();
    for pv in 0..=p_max {
        let at_p = residual.substitute(p, &MultiPoly::int(pv.into()));
        let Some(q) = QPoly::from_multipoly(&at_p, e) else { continue };
        if q.degree() == 0 {
            continue;
        }
        for root in isolate_real_roots(&q, None, None) {
            let ev = root.midpoint();
            let phi_x = on_branch.substitute(e, &MultiPoly::constant(ev));
            let qx = QPoly::from_multipoly(&phi_x, x_sym()).expect("univariate in x");
            let verdict = Verdict::from_values((1..=pv).map(|x| (x, qx.eval(&Rational::from_integer(x.into())) > Rational::zero())));
            levels.push(NumericLevel { p: pv, energy: root, verdict });
        }
    }
    SpectrumFamily {
        branch: branch_index,
        u_branch: branch.u.clone(),
        energy: FamilyEnergy::Numeric { residual: residual.clone(), levels },
        phi: MultiPoly::zero(),
        phi_factored: None,
        unitarity: BTreeMap::new(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumOptions {
    /// Values of the physical parameters (everything except `E`).
    pub values: BTreeMap<Symbol, Rational>,
    pub p_max: u32,
}

/// All families with verdicts, sorted by energy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Catalog {
    pub values: BTreeMap<Symbol, Rational>,
    pub p_max: u32,
    pub phi: MultiPoly,
    pub branches: BranchSearch,
    pub families: Vec<SpectrumFamily>,
    /// Non-fatal findings (missing branches or families).
    pub notes: Vec<String>,
}

/// One `(p + 1)`-fold degenerate level of a unitary closed family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level {
    pub energy: Rational,
    pub degeneracy: u32,
    pub family: usize,
    pub p: u32,
}

impl Catalog {
    /// Energies of unitary representations, ascending; `p = 0` included.
    pub fn unitary_levels(&self) -> Vec<Level> {
        let mut out = Vec::new();
        for (i, fam) in self.families.iter().enumerate() {
            for p in 0..=self.p_max {
                let ok = p == 0 || fam.unitarity.get(&p).is_some_and(|v| v.pass);
                if let (true, Some(energy)) = (ok, fam.energy_at(p)) {
                    out.push(Level { energy, degeneracy: p + 1, family: i, p });
                }
            }
        }
        out.sort_by(|a, b| a.energy.cmp(&b.energy).then(a.family.cmp(&b.family)));
        out
    }

    /// Families unitary at every `1 <= p <= p_max`.
    pub fn unitary_families(&self) -> Vec<&SpectrumFamily> {
        self.families.iter().filter(|f| f.unitary_for_all_p()).collect()
    }
}

fn family_order(a: &SpectrumFamily, b: &SpectrumFamily) -> Ordering {
    match (a.closed_energy(), b.closed_energy()) {
        (Some(_), Some(_)) => a
            .energy_at(0)
            .cmp(&b.energy_at(0))
            .then_with(|| a.energy_at(1).cmp(&b.energy_at(1)))
            .then_with(|| a.phi.cmp(&b.phi)),
        (Some(_), None) => Ordering::Less,
        (None, Some(_)) => Ordering::Greater,
        (None, None) => a.branch.cmp(&b.branch),
    }
}

/// Branches, families and verdicts for an already derived structure function.
pub fn analyze(sf: &StructureFunction, options: &SpectrumOptions) -> Result<Catalog, SpectrumError> {
    let phi = specialize_phi(sf, &options.values)?;
    let branches = u_branches(&phi);
    let mut notes = Vec::new();
    if let Some(r) = &branches.unresolved {
        notes.push(format!("no closed branch for the factor {r} of Phi(0); numeric fallback needed"));
    }
    let mut families: Vec<SpectrumFamily> = Vec::new();
    let mut seen = BTreeSet::new();
    for (i, br) in branches.branches.iter().enumerate() {
        let (fams, note) = energy_families(&phi, i, br, options.p_max);
        notes.extend(note);
        for fam in fams {
            if fam.key().is_none_or(|k| seen.insert(k)) {
                families.push(fam);
            }
        }
    }
    families.sort_by(family_order);
    Ok(Catalog { values: options.values.clone(), p_max: options.p_max, phi, branches, families, notes })
}

/// The full pipeline: realization, structure function, spectrum.
pub fn enumerate_catalog(spec: &CubicAlgebraSpec, options: &SpectrumOptions) -> Result<Catalog, SpectrumError> {
    let real = derive_realization(spec)?;
    let sf = derive_structure_function(spec, &real, &spec.k)?;
    analyze(&sf, options)
}
