//! Output documents. Every field is owned so a document read back from JSON
//! compares equal to the one written; field order is declaration order.

use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool) -> Check {
        Check { name: name.into(), passed, detail: None }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Check {
        self.detail = Some(detail.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumericEcho {
    pub a: f64,
    pub grid: usize,
    pub wall: f64,
    pub cutoff: f64,
    pub bisection_tol: f64,
    pub match_tol: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    /// `q5` or `inline`.
    pub algebra: String,
    pub constants: BTreeMap<String, String>,
    pub p_max: u32,
    pub h: String,
    pub a: String,
    pub rep_p_max: u32,
    pub numeric: NumericEcho,
}

/// A printed value next to the derived one.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoefficientRow {
    pub item: String,
    pub printed: String,
    pub derived: String,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub identities: Vec<Check>,
    pub ac_over_b: CoefficientRow,
    pub bc_table: Vec<CoefficientRow>,
    pub constants: Vec<CoefficientRow>,
    pub casimir: CoefficientRow,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeriveReport {
    pub case: u8,
    pub constants: BTreeMap<String, String>,
    pub a_of_n: String,
    pub b_of_n: String,
    pub rho_of_n: String,
    /// Cleared structure function in `nu = N + u`.
    pub phi: String,
    pub phi_degree: usize,
    /// Printed-versus-derived coefficients that differ (preset only).
    pub deltas: Vec<CoefficientRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BranchRow {
    pub u: String,
    pub multiplicity: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnergySample {
    pub p: u32,
    pub exact: String,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumericRoot {
    pub p: u32,
    pub lo: String,
    pub hi: String,
    pub unitary: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyRow {
    pub index: usize,
    pub branch: usize,
    pub u_branch: String,
    /// `E(p)`, or the defining polynomial for families without closed form.
    pub energy: String,
    pub energy_samples: Vec<EnergySample>,
    pub phi: String,
    pub phi_factors: Vec<String>,
    pub unitary_for_all_p: bool,
    pub exceptions: Vec<u32>,
    pub verdicts: BTreeMap<u32, bool>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub numeric_roots: Vec<NumericRoot>,
}

/// One printed family against the catalog.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PublishedRow {
    pub energy: String,
    pub matched_family: Option<usize>,
    pub printed_phi: String,
    pub prefactor_ratio: Option<String>,
    pub printed_only_roots: Vec<String>,
    pub derived_only_roots: Vec<String>,
    pub published_unitary: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub phi: String,
    pub u_branches: Vec<BranchRow>,
    pub unresolved: Option<String>,
    pub families: Vec<FamilyRow>,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub published: Vec<PublishedRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualRow {
    pub family: usize,
    pub p: u32,
    pub energy: String,
    pub gauge: String,
    pub relation: String,
    pub max_residual: f64,
    pub exact_zero: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CalibrationRow {
    pub name: String,
    pub computed: f64,
    pub exact: f64,
    pub deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelRow {
    pub index: usize,
    pub energy: f64,
    pub well: String,
    pub nx: usize,
    pub ny: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumericReport {
    pub calibrations: Vec<CalibrationRow>,
    pub levels: Vec<LevelRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub family: usize,
    pub p: u32,
    pub predicted: f64,
    pub nearest: Option<f64>,
    pub deviation: Option<f64>,
    pub representable: bool,
    pub matched: bool,
}

/// Everything one invocation produced; stages that did not run are absent.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub command: String,
    pub config: ConfigEcho,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub verify_q5: Option<VerifyReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub derive: Option<DeriveReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub spectrum: Option<SpectrumReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub residuals: Option<Vec<ResidualRow>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub numeric: Option<NumericReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub comparison: Option<Vec<ComparisonRow>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub unmatched_numeric: Option<Vec<f64>>,
    pub notes: Vec<String>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl Document {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }

    /// The CSV tables this document carries, by file stem.
    pub fn csv_tables(&self) -> Vec<(&'static str, String)> {
        let mut out = Vec::new();
        if let Some(v) = &self.verify_q5 {
            let rows = std::iter::once(&v.ac_over_b).chain(&v.bc_table).chain(&v.constants).chain(std::iter::once(&v.casimir));
            out.push(("verify_q5", coefficient_csv(rows)));
        }
        if let Some(d) = &self.derive {
            out.push(("derive", coefficient_csv(&d.deltas)));
        }
        if let Some(s) = &self.spectrum {
            out.push(("families", families_csv(&s.families)));
        }
        if let Some(r) = &self.residuals {
            out.push(("residuals", residuals_csv(r)));
        }
        if let Some(n) = &self.numeric {
            out.push(("numeric", numeric_csv(n)));
        }
        if let Some(c) = &self.comparison {
            out.push(("comparison", comparison_csv(c, self.unmatched_numeric.as_deref().unwrap_or(&[]))));
        }
        out
    }
}

fn finish(w: csv::Writer<Vec<u8>>) -> String {
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8")
}

fn writer(header: &[&str]) -> csv::Writer<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory writer");
    w
}

fn row<I: IntoIterator<Item = String>>(w: &mut csv::Writer<Vec<u8>>, fields: I) {
    w.write_record(fields.into_iter().collect::<Vec<_>>()).expect("in-memory writer");
}

fn opt(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn coefficient_csv<'a>(rows: impl IntoIterator<Item = &'a CoefficientRow>) -> String {
    let mut w = writer(&["item", "printed", "derived", "matches"]);
    for r in rows {
        row(&mut w, [r.item.clone(), r.printed.clone(), r.derived.clone(), r.matches.to_string()]);
    }
    finish(w)
}

fn families_csv(families: &[FamilyRow]) -> String {
    let mut w = writer(&["family", "branch", "u_branch", "energy", "phi", "unitary_for_all_p", "exceptions"]);
    for f in families {
        let exceptions: Vec<String> = f.exceptions.iter().map(u32::to_string).collect();
        row(
            &mut w,
            [
                f.index.to_string(),
                f.branch.to_string(),
                f.u_branch.clone(),
                f.energy.clone(),
                f.phi.clone(),
                f.unitary_for_all_p.to_string(),
                exceptions.join(" "),
            ],
        );
    }
    finish(w)
}

fn residuals_csv(rows: &[ResidualRow]) -> String {
    let mut w = writer(&["family", "p", "energy", "gauge", "relation", "max_residual", "exact_zero"]);
    for r in rows {
        row(
            &mut w,
            [
                r.family.to_string(),
                r.p.to_string(),
                r.energy.clone(),
                r.gauge.clone(),
                r.relation.clone(),
                r.max_residual.to_string(),
                r.exact_zero.to_string(),
            ],
        );
    }
    finish(w)
}

fn numeric_csv(n: &NumericReport) -> String {
    let mut w = writer(&["source", "index", "energy", "deviation"]);
    for (i, c) in n.calibrations.iter().enumerate() {
        row(&mut w, [format!("calibration:{}", c.name), i.to_string(), c.computed.to_string(), c.deviation.to_string()]);
    }
    for l in &n.levels {
        row(&mut w, ["numeric".to_string(), l.index.to_string(), l.energy.to_string(), String::new()]);
    }
    finish(w)
}

fn comparison_csv(rows: &[ComparisonRow], unmatched: &[f64]) -> String {
    let mut w = writer(&["source", "index", "energy", "deviation", "family", "p", "nearest", "matched"]);
    for (i, r) in rows.iter().enumerate() {
        row(
            &mut w,
            [
                "predicted".to_string(),
                i.to_string(),
                r.predicted.to_string(),
                opt(r.deviation),
                r.family.to_string(),
                r.p.to_string(),
                opt(r.nearest),
                r.matched.to_string(),
            ],
        );
    }
    for (i, e) in unmatched.iter().enumerate() {
        row(&mut w, ["unmatched_numeric".to_string(), i.to_string(), e.to_string(), String::new(), String::new(), String::new(), String::new(), String::new()]);
    }
    finish(w)
}

/// Writes `text` to `path`, or to stdout when `path` is `None`.
pub fn write_output(path: Option<&std::path::Path>, text: &str) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
    }
}
