//! Pipeline orchestration: each stage turns core results into a report
//! section plus pass/fail checks.

use std::collections::BTreeMap;

use superalg::algebra::{extract_q5_constants, q5_spec, AlgebraError, CubicAlgebraSpec};
use superalg::exactnum::rational::{fmt_rational, to_f64};
use superalg::exactnum::{ExactError, MultiPoly, PolyFraction, Rational, Symbol};
use superalg::ladder::{derive_realization, derive_structure_function, LadderError, StructureFunction};
use superalg::reference::{self, compare_families, implied_family_phi, phi_deltas};
use superalg::repcheck::{check_both, family_rep_data, RepError, FLOAT_TOLERANCE};
use superalg::schrodinger::{calibrations, compare, q5_levels, NumericLevel, SchrodingerError, Well};
use superalg::spectrum::{analyze, linear_factors, p_sym, x_sym, BRANCH_DEGREE, Catalog, FamilyEnergy, SpectrumError, SpectrumFamily, SpectrumOptions};
use superalg::weylop::build_q5;
use thiserror::Error;

use crate::config::{AlgebraSource, ConfigError, RunConfig};
use crate::report::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    VerifyQ5,
    Derive,
    Spectrum,
    Repcheck,
    Numeric,
    Compare,
    All,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::VerifyQ5 => "verify-q5",
            Command::Derive => "derive",
            Command::Spectrum => "spectrum",
            Command::Repcheck => "repcheck",
            Command::Numeric => "numeric",
            Command::Compare => "compare",
            Command::All => "all",
        }
    }
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error("config error: {0}")]
    Config(#[from] ConfigError),
    #[error("usage error: {0}")]
    Usage(String),
    /// A pipeline stage failed; `module` names the core module.
    #[error("{module} error: {message}")]
    Pipeline { module: &'static str, message: String },
    #[error("output error: {0}")]
    Output(String),
}

impl RunError {
    /// 2 for usage, configuration and output problems, 1 for pipeline failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Pipeline { .. } => 1,
            _ => 2,
        }
    }
}

fn fail(module: &'static str) -> impl Fn(String) -> RunError {
    move |message| RunError::Pipeline { module, message }
}

impl From<LadderError> for RunError {
    fn from(e: LadderError) -> Self {
        fail("ladder")(e.to_string())
    }
}

impl From<SpectrumError> for RunError {
    fn from(e: SpectrumError) -> Self {
        fail("spectrum")(e.to_string())
    }
}

impl From<RepError> for RunError {
    fn from(e: RepError) -> Self {
        fail("repcheck")(e.to_string())
    }
}

impl From<SchrodingerError> for RunError {
    fn from(e: SchrodingerError) -> Self {
        fail("schrodinger")(e.to_string())
    }
}

impl From<AlgebraError> for RunError {
    fn from(e: AlgebraError) -> Self {
        fail("algebra")(e.to_string())
    }
}

impl From<ExactError> for RunError {
    fn from(e: ExactError) -> Self {
        fail("exactnum")(e.to_string())
    }
}

fn named_constants(spec: &CubicAlgebraSpec) -> BTreeMap<String, String> {
    spec.named().into_iter().map(|(n, v)| (n.to_string(), v.to_string())).collect()
}

pub fn echo(cfg: &RunConfig) -> ConfigEcho {
    let (algebra, constants) = match &cfg.algebra {
        AlgebraSource::Preset(_) => ("q5".to_string(), BTreeMap::new()),
        AlgebraSource::Inline(spec) => ("inline".to_string(), named_constants(spec)),
    };
    let n = &cfg.numeric;
    ConfigEcho {
        algebra,
        constants,
        p_max: cfg.p_max,
        h: fmt_rational(&cfg.h),
        a: fmt_rational(&cfg.a),
        rep_p_max: cfg.rep_p_max,
        numeric: NumericEcho { a: n.a, grid: n.grid, wall: n.wall, cutoff: n.cutoff, bisection_tol: n.tol, match_tol: cfg.match_tol },
    }
}

fn coefficient(item: &str, printed: &str, derived: &PolyFraction) -> Result<CoefficientRow, RunError> {
    let p = reference::parse(printed)?;
    Ok(CoefficientRow { item: item.to_string(), printed: p.to_string(), derived: derived.to_string(), matches: &p == derived })
}

/// Integrals of motion and the coefficients of the cubic algebra, computed
/// on the differential operators.
pub fn verify_q5() -> Result<(VerifyReport, Vec<Check>), RunError> {
    let q = build_q5();
    let identities = vec![Check::new("[H,A] = 0", q.h.commutator(&q.a).is_zero()), Check::new("[H,B] = 0", q.h.commutator(&q.b).is_zero())];
    let ex = extract_q5_constants()?;
    let ac_over_b = coefficient("[A,C] / B", reference::AC_OVER_B, &ex.ac_over_b)?;
    let mut bc_table = Vec::new();
    for ((label, derived), (plabel, printed)) in ex.bc_table.iter().zip(reference::BC_TABLE) {
        debug_assert_eq!(*label, plabel);
        bc_table.push(coefficient(&format!("[B,C] : {label}"), printed, derived)?);
    }
    let published = q5_spec();
    let constants = ex
        .spec
        .named()
        .into_iter()
        .zip(published.named())
        .filter(|((n, _), _)| *n != "k")
        .map(|((n, d), (_, p))| CoefficientRow { item: n.to_string(), printed: p.to_string(), derived: d.to_string(), matches: d == p })
        .collect::<Vec<_>>();
    let casimir = coefficient("k(E)", reference::CASIMIR, &ex.spec.k)?;

    let mut checks = identities.clone();
    checks.push(Check::new("[A,C] coefficient", ac_over_b.matches));
    checks.push(Check::new("[B,C] coefficients", bc_table.iter().all(|r| r.matches)));
    checks.push(Check::new("structure constants", constants.iter().all(|r| r.matches)));
    checks.push(Check::new("Casimir value", casimir.matches));
    Ok((VerifyReport { identities, ac_over_b, bc_table, constants, casimir }, checks))
}

/// `h^6` over the printed `h^8`: the prefactor convention of the printed Phi.
fn printed_prefactor_fix() -> PolyFraction {
    reference::parse("1/h^2").expect("constant expression")
}

pub fn derive(cfg: &RunConfig) -> Result<(DeriveReport, StructureFunction, Vec<Check>), RunError> {
    let spec = cfg.spec();
    let real = derive_realization(&spec)?;
    let sf = derive_structure_function(&spec, &real, &spec.k)?;
    let mut checks = vec![Check::new("structure function", true).with_detail(format!("case {}, degree {}", sf.case.number(), sf.degree()))];
    let mut deltas = Vec::new();
    if cfg.is_q5() {
        deltas = phi_deltas(&sf)?
            .into_iter()
            .map(|d| CoefficientRow { item: d.item, printed: d.printed, derived: d.derived, matches: false })
            .collect();
        let nu = Symbol::new("nu");
        let derived = sf.phi_in_x(nu, Symbol::new("__u")).substitute(Symbol::new("__u"), &MultiPoly::zero())?;
        let printed = reference::parse(reference::PHI_FACTORED)?;
        checks.push(
            Check::new("Phi equals the printed factored form", &printed * &printed_prefactor_fix() == derived)
                .with_detail("after replacing the printed prefactor -4h^8/a^4 by -4h^6/a^4"),
        );
    }
    let report = DeriveReport {
        case: sf.case.number(),
        constants: named_constants(&spec),
        a_of_n: real.a_of_n.to_string(),
        b_of_n: real.b_of_n.to_string(),
        rho_of_n: real.rho_of_n.to_string(),
        phi: sf.phi.to_string(),
        phi_degree: sf.degree(),
        deltas,
    };
    Ok((report, sf, checks))
}

const ENERGY_SAMPLES: u32 = 4;

fn family_row(index: usize, f: &SpectrumFamily, p_max: u32) -> FamilyRow {
    let energy = match &f.energy {
        FamilyEnergy::Closed(e) => e.to_string(),
        FamilyEnergy::Numeric { residual, .. } => format!("root in E of {residual}"),
    };
    let energy_samples = (0..=p_max.min(ENERGY_SAMPLES))
        .filter_map(|p| f.energy_at(p).map(|e| EnergySample { p, exact: fmt_rational(&e), value: to_f64(&e) }))
        .collect();
    let numeric_roots = match &f.energy {
        FamilyEnergy::Numeric { levels, .. } => levels
            .iter()
            .map(|l| NumericRoot { p: l.p, lo: fmt_rational(&l.energy.lo), hi: fmt_rational(&l.energy.hi), unitary: l.verdict.pass })
            .collect(),
        FamilyEnergy::Closed(_) => Vec::new(),
    };
    let phi_factors = match &f.phi_factored {
        Some(fac) => {
            let x = MultiPoly::var(fac.var);
            let mut v = Vec::new();
            if !fac.content.is_one() {
                v.push(fac.content.to_string());
            }
            for l in &fac.factors {
                let lin = (&x - &l.root).to_string();
                v.push(if l.multiplicity > 1 { format!("({lin})^{}", l.multiplicity) } else { lin });
            }
            if !fac.residual.is_one() {
                v.push(fac.residual.to_string());
            }
            v
        }
        None => Vec::new(),
    };
    FamilyRow {
        index,
        branch: f.branch,
        u_branch: f.u_branch.to_string(),
        energy,
        energy_samples,
        phi: f.phi_factored.as_ref().map(|x| x.to_string()).unwrap_or_else(|| f.phi.to_string()),
        phi_factors,
        unitary_for_all_p: f.unitary_for_all_p(),
        exceptions: f.exceptions(),
        verdicts: f.unitarity.iter().map(|(p, v)| (*p, v.pass)).collect(),
        numeric_roots,
    }
}

fn published_checks(cat: &Catalog, h: &Rational) -> Result<(Vec<PublishedRow>, Vec<Check>), RunError> {
    let cmps = compare_families(cat)?;
    let mut rows = Vec::new();
    let mut general_ok = true;
    for (i, c) in cmps.iter().enumerate() {
        if let Some(m) = c.matched {
            let implied = implied_family_phi(&c.published, &cat.values)?;
            general_ok &= implied.scale(&(h * h).recip()) == cat.families[m].phi;
        }
        rows.push(PublishedRow {
            energy: reference::specialize(c.published.energy, &cat.values)?.to_string(),
            matched_family: c.matched,
            printed_phi: linear_factors(&reference::specialize(c.published.phi, &cat.values)?, x_sym(), p_sym(), BRANCH_DEGREE).to_string(),
            prefactor_ratio: c.prefactor_ratio.as_ref().map(fmt_rational),
            printed_only_roots: c.printed_only_roots.iter().map(ToString::to_string).collect(),
            derived_only_roots: c.derived_only_roots.iter().map(ToString::to_string).collect(),
            published_unitary: reference::UNITARY.contains(&i),
        });
    }
    let mut want: Vec<MultiPoly> = reference::U_BRANCHES.iter().map(|t| reference::specialize(t, &cat.values)).collect::<Result<_, _>>()?;
    let mut got: Vec<MultiPoly> = cat.branches.branches.iter().map(|b| b.u.clone()).collect();
    want.sort();
    got.sort();
    let mut unitary_want: Vec<Option<usize>> = reference::UNITARY.iter().map(|&k| cmps[k].matched).collect();
    unitary_want.sort();
    let unitary_got: Vec<Option<usize>> =
        cat.families.iter().enumerate().filter(|(_, f)| f.unitary_for_all_p()).map(|(i, _)| Some(i)).collect();
    let typos: Vec<String> = rows
        .iter()
        .filter(|r| r.matched_family.is_some() && !r.printed_only_roots.is_empty())
        .map(|r| format!("E = {}: printed root(s) {:?}, derived {:?}", r.energy, r.printed_only_roots, r.derived_only_roots))
        .collect();
    let mut general = Check::new("family Phi equals the printed general form on each family", general_ok);
    if !typos.is_empty() {
        general = general.with_detail(format!("printed family lines differ: {}", typos.join("; ")));
    }
    let checks = vec![
        Check::new("u-branches match printed", got == want && cat.branches.unresolved.is_none()),
        Check::new("family energies match printed", cmps.iter().all(|c| c.matched.is_some()) && cat.families.len() == cmps.len()),
        general,
        Check::new("all-p unitary families match printed", unitary_got == unitary_want),
    ];
    Ok((rows, checks))
}

pub fn spectrum(cfg: &RunConfig, sf: &StructureFunction) -> Result<(SpectrumReport, Catalog, Vec<Check>), RunError> {
    let cat = analyze(sf, &SpectrumOptions { values: cfg.values(), p_max: cfg.p_max })?;
    let (published, checks) = if cfg.is_q5() { published_checks(&cat, &cfg.h)? } else { (Vec::new(), Vec::new()) };
    let report = SpectrumReport {
        phi: cat.phi.to_string(),
        u_branches: cat.branches.branches.iter().map(|b| BranchRow { u: b.u.to_string(), multiplicity: b.multiplicity }).collect(),
        unresolved: cat.branches.unresolved.as_ref().map(ToString::to_string),
        families: cat.families.iter().enumerate().map(|(i, f)| family_row(i, f, cfg.p_max)).collect(),
        notes: cat.notes.clone(),
        published,
    };
    Ok((report, cat, checks))
}

/// Both gauges for every family unitary at all `p`, up to `rep_p_max`.
pub fn repcheck(cfg: &RunConfig, sf: &StructureFunction, cat: &Catalog) -> Result<(Vec<ResidualRow>, Vec<Check>), RunError> {
    let spec = cfg.spec();
    let mut rows = Vec::new();
    let (mut exact_ok, mut float_ok, mut worst, mut count) = (true, true, 0.0f64, 0);
    for (i, fam) in cat.families.iter().enumerate().filter(|(_, f)| f.unitary_for_all_p()) {
        for p in 0..=cfg.rep_p_max.min(cat.p_max) {
            let data = family_rep_data(&spec, sf, cat, fam, p)?;
            let (exact, float) = check_both(&data);
            count += 1;
            exact_ok &= exact.passed();
            match &float {
                Some(f) => {
                    float_ok &= f.passed();
                    worst = worst.max(f.max_residual());
                }
                None => float_ok = false,
            }
            for rep in std::iter::once(&exact).chain(float.as_ref()) {
                for r in &rep.rows {
                    rows.push(ResidualRow {
                        family: i,
                        p,
                        energy: fmt_rational(&rep.energy),
                        gauge: rep.gauge.name().to_string(),
                        relation: r.relation.to_string(),
                        max_residual: r.max_residual,
                        exact_zero: r.exact_zero,
                    });
                }
            }
        }
    }
    let checks = vec![
        Check::new("triangular-exact residuals are zero", exact_ok && count > 0).with_detail(format!("{count} representations")),
        Check::new("symmetric-float residuals within tolerance", float_ok && count > 0)
            .with_detail(format!("worst {worst:e}, tolerance {FLOAT_TOLERANCE:e}")),
    ];
    Ok((rows, checks))
}

fn require_q5(cfg: &RunConfig, what: &str) -> Result<(), RunError> {
    if cfg.is_q5() {
        Ok(())
    } else {
        Err(RunError::Usage(format!("{what} needs the q5 preset")))
    }
}

pub fn numeric(cfg: &RunConfig) -> Result<(NumericReport, Vec<NumericLevel>, Vec<Check>), RunError> {
    require_q5(cfg, "numeric")?;
    let cal = calibrations(cfg.numeric.tol)?;
    let levels = q5_levels(&cfg.numeric)?;
    let checks = cal
        .iter()
        .map(|c| Check::new(format!("{} calibration", c.name), c.passed()).with_detail(format!("deviation {:e}", c.deviation())))
        .collect();
    let report = NumericReport {
        calibrations: cal
            .iter()
            .map(|c| CalibrationRow {
                name: c.name.to_string(),
                computed: c.computed,
                exact: c.exact,
                deviation: c.deviation(),
                tolerance: c.tolerance,
                passed: c.passed(),
            })
            .collect(),
        levels: levels
            .iter()
            .enumerate()
            .map(|(index, l)| LevelRow {
                index,
                energy: l.energy,
                well: match l.well {
                    Well::Middle => "middle",
                    Well::Outer => "outer",
                }
                .to_string(),
                nx: l.nx,
                ny: l.ny,
            })
            .collect(),
    };
    Ok((report, levels, checks))
}

/// Levels of the all-`p` unitary families against the numeric spectrum.
pub fn cross_validate(cfg: &RunConfig, cat: &Catalog, levels: &[NumericLevel]) -> Result<(Vec<ComparisonRow>, Vec<f64>, Vec<Check>), RunError> {
    require_q5(cfg, "compare")?;
    if cfg.h != Rational::from_integer(1.into()) {
        return Err(ConfigError::Invalid("compare needs h = 1 (the numeric solver works in units with hbar = 1)".into()).into());
    }
    let predictions: Vec<_> = cat.unitary_levels().into_iter().filter(|l| cat.families[l.family].unitary_for_all_p()).collect();
    let report = compare(&predictions, levels, cfg.match_tol, cfg.numeric.cutoff);
    let rows: Vec<ComparisonRow> = report
        .rows
        .iter()
        .map(|r| ComparisonRow {
            family: r.family,
            p: r.p,
            predicted: r.predicted,
            nearest: r.nearest,
            deviation: r.deviation,
            representable: r.representable,
            matched: r.matched,
        })
        .collect();
    let missed: Vec<String> = rows
        .iter()
        .filter(|r| r.representable && !r.matched)
        .map(|r| format!("{} (nearest {})", r.predicted, r.nearest.map(|x| format!("{x:.6}")).unwrap_or_else(|| "none".into())))
        .collect();
    let mut check = Check::new("predicted levels match numeric levels", report.passed());
    if !missed.is_empty() {
        check = check.with_detail(format!("unmatched predictions: {}", missed.join(", ")));
    }
    Ok((rows, report.unmatched_numeric, vec![check]))
}

fn empty_document(command: Command, cfg: &RunConfig) -> Document {
    Document {
        command: command.name().to_string(),
        config: echo(cfg),
        verify_q5: None,
        derive: None,
        spectrum: None,
        residuals: None,
        numeric: None,
        comparison: None,
        unmatched_numeric: None,
        notes: Vec::new(),
        checks: Vec::new(),
        passed: true,
    }
}

/// Runs one subcommand; `Ok` documents may still contain failed checks.
pub fn run(command: Command, cfg: &RunConfig) -> Result<Document, RunError> {
    use Command::*;
    let mut doc = empty_document(command, cfg);
    let wants = |c: Command| command == c || command == All;
    let q5 = cfg.is_q5();
    if wants(VerifyQ5) {
        if command == VerifyQ5 {
            require_q5(cfg, "verify-q5")?;
        }
        if q5 {
            let (r, c) = verify_q5()?;
            doc.verify_q5 = Some(r);
            doc.checks.extend(c);
        } else {
            doc.notes.push("verify-q5 skipped: inline algebra".into());
        }
    }
    let needs_sf = command != VerifyQ5 && command != Numeric;
    let sf = if needs_sf {
        let (r, sf, c) = derive(cfg)?;
        if wants(Derive) {
            doc.derive = Some(r);
            doc.checks.extend(c);
        }
        Some(sf)
    } else {
        None
    };
    let cat = match (&sf, command) {
        (Some(sf), Spectrum | Repcheck | Compare | All) => {
            let (r, cat, c) = spectrum(cfg, sf)?;
            if wants(Spectrum) {
                doc.spectrum = Some(r);
                doc.checks.extend(c);
            }
            Some(cat)
        }
        _ => None,
    };
    if wants(Repcheck) {
        let (rows, c) = repcheck(cfg, sf.as_ref().expect("derived"), cat.as_ref().expect("catalog"))?;
        doc.residuals = Some(rows);
        doc.checks.extend(c);
    }
    let run_numeric = command == Numeric || command == Compare || (command == All && q5);
    let levels = if run_numeric {
        let (r, levels, c) = numeric(cfg)?;
        if wants(Numeric) {
            doc.numeric = Some(r);
            doc.checks.extend(c);
        }
        Some(levels)
    } else {
        if command == All {
            doc.notes.push("numeric and compare skipped: inline algebra".into());
        }
        None
    };
    if let (true, Some(levels)) = (wants(Compare), &levels) {
        if command == All && cfg.h != Rational::from_integer(1.into()) {
            doc.notes.push("compare skipped: needs h = 1".into());
        } else {
            let (rows, unmatched, c) = cross_validate(cfg, cat.as_ref().expect("catalog"), levels)?;
            doc.comparison = Some(rows);
            doc.unmatched_numeric = Some(unmatched);
            doc.checks.extend(c);
        }
    }
    doc.passed = doc.checks.iter().all(|c| c.passed);
    Ok(doc)
}

