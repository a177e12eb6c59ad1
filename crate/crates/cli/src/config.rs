//! Run configuration: a TOML file with `[algebra]`, `[spectrum]` and
//! `[numeric]` sections, overridden by command-line flags.
//!
//! ```toml
//! [algebra]
//! preset = "q5"            # or inline constants: alpha = "...", ..., k = "..."
//!
//! [spectrum]
//! p_max = 50
//! h = "1"
//! a = "1"
//! rep_p_max = 8            # largest p checked by repcheck
//!
//! [numeric]
//! grid = 1000
//! wall = 8.0
//! cutoff = 6.0
//! bisection_tol = 1e-10
//! match_tol = 2e-3
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;
use superalg::algebra::{q5_spec, CubicAlgebraSpec, CONSTANT_NAMES};
use superalg::exactnum::{parse_expr, sym, PolyFraction, Rational, Symbol, SymbolTable};
use superalg::schrodinger::NumericOptions;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    Toml(String),
    #[error("{field}: {message}")]
    Expr { field: String, message: String },
    #[error("{0}")]
    Invalid(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Preset {
    Q5,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraSource {
    Preset(Preset),
    /// Constants as written, already parsed; missing constants are zero and
    /// a missing `k` stays the free symbol `k`.
    Inline(CubicAlgebraSpec),
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub algebra: AlgebraSource,
    pub p_max: u32,
    pub h: Rational,
    pub a: Rational,
    pub rep_p_max: u32,
    pub numeric: NumericOptions,
    /// Largest accepted |numeric - predicted| in `compare`.
    pub match_tol: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            algebra: AlgebraSource::Preset(Preset::Q5),
            p_max: 50,
            h: Rational::from_integer(1.into()),
            a: Rational::from_integer(1.into()),
            rep_p_max: 8,
            numeric: NumericOptions::default(),
            match_tol: 2e-3,
        }
    }
}

impl RunConfig {
    pub fn spec(&self) -> CubicAlgebraSpec {
        match &self.algebra {
            AlgebraSource::Preset(Preset::Q5) => q5_spec(),
            AlgebraSource::Inline(spec) => spec.clone(),
        }
    }

    pub fn is_q5(&self) -> bool {
        self.algebra == AlgebraSource::Preset(Preset::Q5)
    }

    /// `h` and `a` as a substitution map.
    pub fn values(&self) -> BTreeMap<Symbol, Rational> {
        BTreeMap::from([(sym("h"), self.h.clone()), (sym("a"), self.a.clone())])
    }
}

/// A number written either as an integer or as an expression string.
#[derive(Deserialize)]
#[serde(untagged)]
enum ExactValue {
    Int(i64),
    Text(String),
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawAlgebra {
    preset: Option<String>,
    alpha: Option<String>,
    beta: Option<String>,
    gamma: Option<String>,
    delta: Option<String>,
    epsilon: Option<String>,
    mu: Option<String>,
    nu: Option<String>,
    xi: Option<String>,
    zeta: Option<String>,
    k: Option<String>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawSpectrum {
    p_max: Option<i64>,
    h: Option<ExactValue>,
    a: Option<ExactValue>,
    rep_p_max: Option<i64>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawNumeric {
    grid: Option<i64>,
    wall: Option<f64>,
    cutoff: Option<f64>,
    bisection_tol: Option<f64>,
    match_tol: Option<f64>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(default)]
    algebra: Option<RawAlgebra>,
    #[serde(default)]
    spectrum: RawSpectrum,
    #[serde(default)]
    numeric: RawNumeric,
}

/// Command-line values that take precedence over the file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub preset: Option<Preset>,
    pub p_max: Option<i64>,
    pub a: Option<String>,
    pub grid: Option<i64>,
    pub cutoff: Option<f64>,
    pub tol: Option<f64>,
}

pub fn parse_exact(field: &str, text: &str) -> Result<Rational, ConfigError> {
    let f = parse_field(field, text)?;
    f.constant_value().ok_or_else(|| ConfigError::Expr { field: field.into(), message: format!("`{text}` is not a number") })
}

fn parse_field(field: &str, text: &str) -> Result<PolyFraction, ConfigError> {
    parse_expr(text, &SymbolTable::open()).map_err(|e| ConfigError::Expr { field: field.into(), message: e.to_string() })
}

fn exact_value(field: &str, v: ExactValue) -> Result<Rational, ConfigError> {
    match v {
        ExactValue::Int(n) => Ok(Rational::from_integer(n.into())),
        ExactValue::Text(t) => parse_exact(field, &t),
    }
}

fn nonneg(field: &str, v: i64) -> Result<u32, ConfigError> {
    u32::try_from(v).map_err(|_| ConfigError::Invalid(format!("{field} must be a nonnegative integer, got {v}")))
}

fn positive(field: &str, v: f64) -> Result<f64, ConfigError> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(ConfigError::Invalid(format!("{field} must be positive, got {v}")))
    }
}

fn algebra_source(raw: Option<RawAlgebra>, preset: Option<Preset>) -> Result<AlgebraSource, ConfigError> {
    let raw = raw.unwrap_or_default();
    let inline = [
        &raw.alpha, &raw.beta, &raw.gamma, &raw.delta, &raw.epsilon, &raw.mu, &raw.nu, &raw.xi, &raw.zeta,
    ];
    let has_inline = inline.iter().any(|v| v.is_some()) || raw.k.is_some();
    let file_preset = match raw.preset.as_deref() {
        None => None,
        Some("q5") => Some(Preset::Q5),
        Some(other) => return Err(ConfigError::Invalid(format!("[algebra].preset: unknown preset `{other}` (known: q5)"))),
    };
    if has_inline && (file_preset.is_some() || preset.is_some()) {
        return Err(ConfigError::Invalid("[algebra]: give either a preset or inline constants, not both".into()));
    }
    if !has_inline {
        return Ok(AlgebraSource::Preset(preset.or(file_preset).unwrap_or(Preset::Q5)));
    }
    let mut constants = Vec::with_capacity(9);
    for (name, value) in CONSTANT_NAMES.iter().zip(inline) {
        constants.push(match value {
            Some(t) => parse_field(&format!("[algebra].{name}"), t)?,
            None => PolyFraction::zero(),
        });
    }
    let k = match &raw.k {
        Some(t) => parse_field("[algebra].k", t)?,
        None => PolyFraction::var(sym("k")),
    };
    Ok(AlgebraSource::Inline(CubicAlgebraSpec::from_constants(constants.try_into().expect("nine constants"), k)))
}

/// Parses a configuration document and applies `overrides`.
pub fn from_toml(text: &str, overrides: &Overrides) -> Result<RunConfig, ConfigError> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| ConfigError::Toml(e.to_string().trim_end().to_string()))?;
    let mut cfg = RunConfig { algebra: algebra_source(raw.algebra, overrides.preset)?, ..RunConfig::default() };
    let s = raw.spectrum;
    if let Some(p) = overrides.p_max.or(s.p_max) {
        cfg.p_max = nonneg("p_max", p)?;
    }
    if let Some(p) = s.rep_p_max {
        cfg.rep_p_max = nonneg("[spectrum].rep_p_max", p)?;
    }
    if let Some(h) = s.h {
        cfg.h = exact_value("[spectrum].h", h)?;
    }
    cfg.a = match (&overrides.a, s.a) {
        (Some(t), _) => parse_exact("--a", t)?,
        (None, Some(v)) => exact_value("[spectrum].a", v)?,
        (None, None) => cfg.a,
    };
    let zero = Rational::from_integer(0.into());
    if cfg.h <= zero || cfg.a <= zero {
        return Err(ConfigError::Invalid("h and a must be positive".into()));
    }
    cfg.numeric.a = superalg::exactnum::rational::to_f64(&cfg.a);
    let n = raw.numeric;
    if let Some(g) = overrides.grid.or(n.grid) {
        let g = nonneg("grid", g)? as usize;
        if g < 3 {
            return Err(ConfigError::Invalid(format!("grid must be at least 3, got {g}")));
        }
        cfg.numeric.grid = g;
    }
    if let Some(w) = n.wall {
        cfg.numeric.wall = positive("[numeric].wall", w)?;
    }
    if let Some(c) = overrides.cutoff.or(n.cutoff) {
        cfg.numeric.cutoff = positive("cutoff", c)?;
    }
    if let Some(t) = n.bisection_tol {
        cfg.numeric.tol = positive("[numeric].bisection_tol", t)?;
    }
    if let Some(t) = overrides.tol.or(n.match_tol) {
        cfg.match_tol = positive("tol", t)?;
    }
    Ok(cfg)
}

pub fn load(path: Option<&Path>, overrides: &Overrides) -> Result<RunConfig, ConfigError> {
    let text = match path {
        Some(p) => std::fs::read_to_string(p).map_err(|e| ConfigError::Io { path: p.display().to_string(), message: e.to_string() })?,
        None => String::new(),
    };
    from_toml(&text, overrides)
}

#[cfg(test)]
mod tests {
    use super::*;
    use superalg::exactnum::rat;

    #[test]
    fn empty_is_q5_defaults() {
        let cfg = from_toml("", &Overrides::default()).unwrap();
        assert!(cfg.is_q5());
        assert_eq!(cfg.p_max, 50);
        assert_eq!(cfg.spec(), q5_spec());
    }

    #[test]
    fn inline_constants() {
        let cfg = from_toml("[algebra]\nbeta = \"2\"\nzeta = \"E^2 - 1/3\"\n", &Overrides::default()).unwrap();
        let spec = cfg.spec();
        assert_eq!(spec.beta, PolyFraction::int(2));
        assert!(spec.alpha.is_zero());
        assert_eq!(spec.k, PolyFraction::var(sym("k")));
    }

    #[test]
    fn malformed_expression_reports_offset() {
        let err = from_toml("[algebra]\nzeta = \"h^\"\n", &Overrides::default()).unwrap_err();
        assert!(err.to_string().starts_with("[algebra].zeta: syntax error at offset 2"), "{err}");
    }

    #[test]
    fn preset_and_inline_conflict() {
        assert!(from_toml("[algebra]\npreset = \"q5\"\nbeta = \"1\"\n", &Overrides::default()).is_err());
        let o = Overrides { preset: Some(Preset::Q5), ..Overrides::default() };
        assert!(from_toml("[algebra]\nbeta = \"1\"\n", &o).is_err());
    }

    #[test]
    fn flags_override_file() {
        let o = Overrides { p_max: Some(7), a: Some("3/2".into()), ..Overrides::default() };
        let cfg = from_toml("[spectrum]\np_max = 3\na = 2\n", &o).unwrap();
        assert_eq!((cfg.p_max, cfg.a), (7, rat(3, 2)));
        assert_eq!(cfg.numeric.a, 1.5);
    }

    #[test]
    fn rejects_bad_values() {
        assert!(from_toml("[spectrum]\np_max = -1\n", &Overrides::default()).is_err());
        assert!(from_toml("[spectrum]\na = \"0\"\n", &Overrides::default()).is_err());
        assert!(from_toml("[numeric]\ngrid = 1\n", &Overrides::default()).is_err());
        assert!(from_toml("[numeric]\nunknown = 1\n", &Overrides::default()).is_err());
    }
}
