//! Published closed forms for the Q5 system, kept verbatim (with `H`
//! written as `E`) so derived results can be diffed against them.
//!
//! Nothing in the pipeline reads these; they only feed delta reports.

use std::collections::BTreeMap;

use crate::exactnum::{parse_expr, ExactError, MultiPoly, PolyFraction, Rational, Symbol, SymbolTable};
use crate::ladder::StructureFunction;
use crate::spectrum::{linear_factors, p_sym, x_sym, Catalog, Factorization};

/// Expanded structure function in `nu = x + u`.
pub const PHI_EXPANDED: &str = "(4*a^4/h^2*E^4 - 12*a^2*E^3 + 11*h^4/a^2*E - 15/4*h^6/a^4) \
    + (8*a^2*E^3 - 8*h^2*E^2 - 14*h^4/a^2*E - 4*h^6/a^4)*nu \
    + (20*h^4/a^2*E - 14*h^6/a^4)*nu^2 \
    + (-8*h^4/a^2*E + 16*h^6/a^4)*nu^3 \
    - 4*h^8/a^4*nu^4";

/// Factored structure function.
pub const PHI_FACTORED: &str = "(-4*h^8/a^4)*(nu - (-a^2*E/h^2 - 1/2))*(nu - (a^2*E/h^2 + 1/2))\
    *(nu - (-a^2*E/h^2 + 3/2))*(nu - (-a^2*E/h^2 + 5/2))";

pub const U_BRANCHES: [&str; 4] = ["-a^2*E/h^2 - 1/2", "a^2*E/h^2 + 1/2", "-a^2*E/h^2 + 3/2", "-a^2*E/h^2 + 5/2"];

/// Casimir value with `H` replaced by `E`.
pub const CASIMIR: &str = "-16*h^2*E^4 + 32*h^4/a^2*E^3 + 16*h^6/a^4*E^2 - 40*h^8/a^6*E - 3*h^10/a^8";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PublishedFamily {
    /// Index into [`U_BRANCHES`].
    pub branch: usize,
    pub energy: &'static str,
    pub phi: &'static str,
}

pub const FAMILIES: [PublishedFamily; 6] = [
    PublishedFamily { branch: 0, energy: "h^2*p/(2*a^2)", phi: "4*h^8/a^4*x*(p+1-x)*(x-2)*(x-3)" },
    PublishedFamily { branch: 1, energy: "-h^2*(p+2)/(2*a^2)", phi: "4*h^8/a^4*x*(p+1-x)*(p+3-x)*(p+4-x)" },
    PublishedFamily { branch: 1, energy: "-h^2*p/(2*a^2)", phi: "4*h^8/a^4*x*(p+1-x)*(p-1-x)*(p-2-x)" },
    PublishedFamily { branch: 1, energy: "-h^2*(p-1)/(2*a^2)", phi: "4*h^8/a^4*x*(p+1-x)*(p-2-x)*(p-x)" },
    PublishedFamily { branch: 2, energy: "h^2*(p+2)/(2*a^2)", phi: "4*h^8/a^4*x*(p+1-x)*(x-1)*(x+2)" },
    PublishedFamily { branch: 3, energy: "h^2*(p+3)/(2*a^2)", phi: "4*h^8/a^4*x*(p+1-x)*(x+1)*(x+3)" },
];

/// Indices into [`FAMILIES`] of the families published as unitary.
pub const UNITARY: [usize; 2] = [1, 5];

pub fn parse(text: &str) -> Result<PolyFraction, ExactError> {
    parse_expr(text, &SymbolTable::open())
}

/// One printed-versus-derived discrepancy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Delta {
    pub item: String,
    pub printed: String,
    pub derived: String,
}

/// Coefficient-wise comparison of the derived structure function with the
/// expanded and factored printed forms.
pub fn phi_deltas(sf: &StructureFunction) -> Result<Vec<Delta>, ExactError> {
    let nu = Symbol::new("nu");
    let mut out = Vec::new();
    let derived = sf.phi_in_x(nu, Symbol::new("__zero"));
    let derived = derived.substitute(Symbol::new("__zero"), &MultiPoly::zero())?;
    for (label, text) in [("expanded", PHI_EXPANDED), ("factored", PHI_FACTORED)] {
        let printed = parse(text)?;
        let dn = derived.num();
        let pn = printed.num();
        // common denominators are monomials in h, a: compare numerators over the lcm
        let (dc, pc) = (coeffs_over(&derived, dn, nu), coeffs_over(&printed, pn, nu));
        for k in 0..dc.len().max(pc.len()) {
            let d = dc.get(k).cloned().unwrap_or_default();
            let p = pc.get(k).cloned().unwrap_or_default();
            if d != p {
                out.push(Delta { item: format!("{label} form, coefficient of nu^{k}"), printed: p.to_string(), derived: d.to_string() });
            }
        }
    }
    Ok(out)
}

fn coeffs_over(f: &PolyFraction, num: &MultiPoly, nu: Symbol) -> Vec<PolyFraction> {
    let den = PolyFraction::new(MultiPoly::one(), f.den().clone());
    num.coeffs_in(nu).into_iter().map(|c| &PolyFraction::from(c) * &den).collect()
}

/// How one published family compares with the derived catalog.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyComparison {
    pub published: PublishedFamily,
    /// Catalog index of the family with the same energy.
    pub matched: Option<usize>,
    /// Printed prefactor over derived prefactor at the specialization.
    pub prefactor_ratio: Option<Rational>,
    /// Roots of `Phi(x)` (as polynomials in `p`) only in the printed form.
    pub printed_only_roots: Vec<MultiPoly>,
    /// Roots only in the derived form.
    pub derived_only_roots: Vec<MultiPoly>,
}

impl FamilyComparison {
    pub fn roots_agree(&self) -> bool {
        self.matched.is_some() && self.printed_only_roots.is_empty() && self.derived_only_roots.is_empty()
    }
}

pub fn specialize(text: &str, values: &BTreeMap<Symbol, Rational>) -> Result<MultiPoly, ExactError> {
    let f = parse(text)?.eval_partial(values)?;
    f.as_poly().cloned().ok_or_else(|| ExactError::Invalid(format!("{text} is not polynomial after specialization")))
}

fn root_multiset(f: &Factorization) -> Vec<MultiPoly> {
    f.factors.iter().flat_map(|l| std::iter::repeat_n(l.root.clone(), l.multiplicity as usize)).collect()
}

fn multiset_minus(a: &[MultiPoly], b: &[MultiPoly]) -> Vec<MultiPoly> {
    let mut rest = b.to_vec();
    a.iter()
        .filter(|r| match rest.iter().position(|s| s == *r) {
            Some(i) => {
                rest.remove(i);
                false
            }
            None => true,
        })
        .cloned()
        .collect()
}

/// Matches every published family against the catalog by energy and
/// compares the factored structure functions.
pub fn compare_families(catalog: &Catalog) -> Result<Vec<FamilyComparison>, ExactError> {
    let mut out = Vec::new();
    for fam in FAMILIES {
        let energy = specialize(fam.energy, &catalog.values)?;
        let matched = catalog.families.iter().position(|f| f.closed_energy() == Some(&energy));
        let printed = linear_factors(&specialize(fam.phi, &catalog.values)?, x_sym(), p_sym(), 2);
        let (mut ratio, mut p_only, mut d_only) = (None, root_multiset(&printed), Vec::new());
        if let Some(i) = matched {
            if let Some(derived) = &catalog.families[i].phi_factored {
                let (pr, dr) = (root_multiset(&printed), root_multiset(derived));
                p_only = multiset_minus(&pr, &dr);
                d_only = multiset_minus(&dr, &pr);
                if let (Some(pc), Some(dc)) = (printed.content.constant_value(), derived.content.constant_value()) {
                    ratio = Some(pc / dc);
                }
            }
        }
        out.push(FamilyComparison { published: fam, matched, prefactor_ratio: ratio, printed_only_roots: p_only, derived_only_roots: d_only });
    }
    Ok(out)
}

/// The printed general structure function, restricted to a printed branch
/// and energy: the family form the general formula itself implies.
pub fn implied_family_phi(fam: &PublishedFamily, values: &BTreeMap<Symbol, Rational>) -> Result<MultiPoly, ExactError> {
    let nu = Symbol::new("nu");
    let general = parse(PHI_FACTORED)?;
    let u = parse(U_BRANCHES[fam.branch])?;
    let nu_val = &PolyFraction::var(x_sym()) + &u;
    let mut f = general.eval_partial(values)?;
    f = f.substitute(nu, nu_val.eval_partial(values)?.as_poly().expect("polynomial branch"))?;
    let e = specialize(fam.energy, values)?;
    let f = f.substitute(crate::algebra::energy_sym(), &e)?;
    f.as_poly().cloned().ok_or_else(|| ExactError::Invalid("non-polynomial family".into()))
}

/// `[A, C]` as a multiple of `B`.
pub const AC_OVER_B: &str = "h^4/a^4";

/// `[B, C]` coefficients, labelled by the operator they multiply.
pub const BC_TABLE: [(&str, &str); 9] = [
    ("A^3", "-32*h^2"),
    ("A^2 H", "-48*h^2"),
    ("H^3", "16*h^2"),
    ("A^2", "48*h^4/a^2"),
    ("H A", "32*h^4/a^2"),
    ("H^2", "-16*h^4/a^2"),
    ("A", "8*h^6/a^4"),
    ("H", "-4*h^6/a^4"),
    ("1", "-12*h^8/a^6"),
];
