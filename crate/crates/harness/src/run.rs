//! Dispatch of one experiment to the core operations.

use std::collections::BTreeMap;
use std::time::Instant;

use dixmier_core::catalog;
use dixmier_core::extrapolate::{frak_norms, ExtrapolationReport, PGrid};
use dixmier_core::rearrange::SingularValueProfile;
use dixmier_core::traces::{compare_all, karamata_check, CompareReport, KaramataResult, FUNCTIONAL_NAMES};
use dixmier_core::weight::{check_conditions, ConditionReport};
use dixmier_core::weyl::{dixmier_compare, DixmierReport};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::config::{ExperimentConfig, ExperimentKind};
use crate::csvio;
use crate::error::{HarnessError, Result};

pub const TOOL: &str = "dixmier";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Full output of one experiment.
#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum Outcome {
    Psi(Box<ConditionReport>),
    Lorentz(Box<ExtrapolationReport>),
    Trace(Box<CompareReport>),
    Karamata(Box<KaramataResult>),
    Weyl(Box<DixmierReport>),
}

/// Tabular samples written to the CSV output.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub config: ExperimentConfig,
    pub wall_time_ms: f64,
    pub verdicts: BTreeMap<String, String>,
    /// Headline numbers, e.g. `measurable`, `value` and `gaps` for trace comparisons.
    #[serde(flatten)]
    pub summary: Map<String, Value>,
    pub results: Outcome,
    #[serde(skip)]
    pub table: Table,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Validates `config`, runs it, and writes the configured outputs.
pub fn run(config: &ExperimentConfig) -> Result<RunReport> {
    config.validate()?;
    let start = Instant::now();
    let (results, table, verdicts, summary) = match config.experiment {
        ExperimentKind::PsiReport => psi_report(config)?,
        ExperimentKind::LorentzReport => lorentz_report(config)?,
        ExperimentKind::TraceCompare => trace_compare(config)?,
        ExperimentKind::Karamata => karamata(config)?,
        ExperimentKind::WeylCompare => weyl_compare(config)?,
    };
    let report = RunReport {
        tool: TOOL,
        version: VERSION,
        config: config.clone(),
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
        verdicts,
        summary,
        results,
        table,
    };
    if let Some(path) = &config.outputs.csv {
        csvio::write_table(path, &report.table.header, &report.table.rows)?;
    }
    if let Some(path) = &config.outputs.json {
        csvio::write_file(path, report.to_json().as_bytes())?;
    }
    Ok(report)
}

type Parts = (Outcome, Table, BTreeMap<String, String>, Map<String, Value>);

fn label<T: Serialize>(v: &T) -> String {
    match serde_json::to_value(v) {
        Ok(Value::String(s)) => s,
        Ok(other) => other.to_string(),
        Err(_) => "unknown".into(),
    }
}

fn holds(ok: bool) -> String {
    if ok { "holds" } else { "fails" }.into()
}

pub fn load_profile(config: &ExperimentConfig) -> Result<SingularValueProfile> {
    let w = config.weight_function()?;
    match (&config.profile, &config.profile_csv) {
        (Some(id), _) => catalog::profile(id, &w).map_err(HarnessError::config),
        (None, Some(path)) => csvio::read_profile(path),
        (None, None) => Err(HarnessError::Config("no profile given".into())),
    }
}

fn psi_report(config: &ExperimentConfig) -> Result<Parts> {
    let w = config.weight_function()?;
    let r = check_conditions(&w);
    let rows = r
        .dilation_norms
        .iter()
        .zip(&r.boyd_diagnostic)
        .map(|(&(a, n), &(_, b))| vec![a, n, b.unwrap_or(f64::NAN)])
        .collect();
    let verdicts = BTreeMap::from([
        ("cond_exp_index".into(), label(&r.cond_exp_index)),
        ("cond_ssz".into(), label(&r.cond_ssz)),
        ("cond_easy".into(), label(&r.cond_easy)),
    ]);
    let mut summary = Map::new();
    summary.insert("k_psi".into(), json!(r.k_psi));
    summary.insert("c_zeta".into(), json!(r.c_zeta));
    summary.insert("ssz_limit".into(), json!(r.ssz_limit.estimate));
    let table = Table { header: vec!["a", "dilation_norm", "boyd"], rows };
    Ok((Outcome::Psi(Box::new(r)), table, verdicts, summary))
}

fn lorentz_report(config: &ExperimentConfig) -> Result<Parts> {
    let w = config.weight_function()?;
    let p = load_profile(config)?;
    let r = frak_norms(&p, &w, &PGrid::standard());
    let rows = r
        .eta_samples
        .iter()
        .zip(r.lower_ratios.iter().zip(&r.upper_ratios))
        .map(|(&(q, n), (&lo, &up))| vec![q, n, lo, up])
        .collect();
    let verdicts = BTreeMap::from([("sandwich".into(), holds(r.sandwich_ok))]);
    let mut summary = Map::new();
    summary.insert("lorentz".into(), json!(r.lorentz));
    summary.insert("frak_lower".into(), json!(r.frak_lower.value));
    summary.insert("frak_upper".into(), json!(r.frak_upper.value));
    summary.insert("sandwich_constant".into(), json!(r.sandwich_constant));
    let table = Table { header: vec!["p", "lp_norm", "lower_ratio", "upper_ratio"], rows };
    Ok((Outcome::Lorentz(Box::new(r)), table, verdicts, summary))
}

fn trace_compare(config: &ExperimentConfig) -> Result<Parts> {
    let w = config.weight_function()?;
    let p = load_profile(config)?;
    let g = config.scale_grid()?;
    let r = compare_all(&p, &w, &g, None)?;
    let est = r.estimates();
    let rows = g
        .values()
        .iter()
        .enumerate()
        .map(|(i, &s)| std::iter::once(s).chain(est.iter().map(|e| e.values[i])).collect())
        .collect();
    let mut verdicts: BTreeMap<String, String> =
        FUNCTIONAL_NAMES.iter().zip(est).map(|(n, e)| (n.to_string(), label(&e.verdict))).collect();
    verdicts.insert("measurable".into(), holds(r.measurable));
    let mut gaps = Map::new();
    for (i, a) in FUNCTIONAL_NAMES.iter().enumerate() {
        for (j, b) in FUNCTIONAL_NAMES.iter().enumerate().skip(i + 1) {
            gaps.insert(format!("{a}/{b}"), json!(r.gaps[i][j]));
        }
    }
    let mut summary = Map::new();
    summary.insert("measurable".into(), json!(r.measurable));
    summary.insert("value".into(), json!(r.value));
    summary.insert("gaps".into(), Value::Object(gaps));
    let table = Table { header: vec!["scale", "partial_sum", "cutoff", "zeta", "heat"], rows };
    Ok((Outcome::Trace(Box::new(r)), table, verdicts, summary))
}

fn karamata(config: &ExperimentConfig) -> Result<Parts> {
    let id = config.karamata.as_deref().expect("validated");
    let case = catalog::karamata_case(id).map_err(HarnessError::config)?;
    let g = config.scale_grid()?;
    let r = karamata_check(&case, &g)?;
    let rows = r.lhs.scales.iter().zip(r.lhs.values.iter().zip(&r.rhs.values)).map(|(&s, (&a, &b))| vec![s, a, b]).collect();
    let verdicts = BTreeMap::from([
        ("lhs".into(), label(&r.lhs.verdict)),
        ("rhs".into(), label(&r.rhs.verdict)),
        ("agree".into(), holds(r.agree)),
    ]);
    let mut summary = Map::new();
    summary.insert("lhs".into(), json!(r.lhs.value));
    summary.insert("rhs".into(), json!(r.rhs.value));
    let table = Table { header: vec!["scale", "lhs", "rhs"], rows };
    Ok((Outcome::Karamata(Box::new(r)), table, verdicts, summary))
}

fn weyl_compare(config: &ExperimentConfig) -> Result<Parts> {
    let w = config.weight_function()?;
    let id = config.symbol.as_deref().expect("validated");
    let d = catalog::symbol(id).map_err(HarnessError::config)?;
    let g = config.scale_grid()?;
    let r = dixmier_compare(&d, &w, &g, config.quantization())?;
    let rows = r.spectrum.values.iter().enumerate().map(|(i, &v)| vec![i as f64, v]).collect();
    let verdicts = BTreeMap::from([
        ("sides_agree".into(), holds(r.gap < 0.1 && r.zeta_gap < 0.1)),
        ("lorentz_finite".into(), holds(r.lorentz_operator.is_finite() && r.lorentz_symbol.is_finite())),
        ("boundary".into(), if r.boundary_warning { "truncated" } else { "decayed" }.into()),
    ]);
    let mut summary = Map::new();
    summary.insert("operator_side".into(), json!(r.operator_side));
    summary.insert("symbol_side".into(), json!(r.symbol_side));
    summary.insert("zeta_side".into(), json!(r.zeta_side));
    summary.insert("gap".into(), json!(r.gap));
    summary.insert("trace_identity_gap".into(), json!(r.trace_identity.gap));
    let table = Table { header: vec!["index", "eigenvalue"], rows };
    Ok((Outcome::Weyl(Box::new(r)), table, verdicts, summary))
}
