//! Plain-text rendering for the terminal.

use std::fmt::Write;

use dixmier_core::catalog::CatalogEntry;
use serde_json::Value;

use crate::run::RunReport;

fn cell(v: &Value) -> String {
    match v {
        Value::Number(n) => match n.as_f64() {
            Some(x) if n.is_f64() => format!("{x:.6}"),
            _ => n.to_string(),
        },
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

pub fn render(r: &RunReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}  {:?}  {:.0} ms", r.tool, r.version, r.config.experiment, r.wall_time_ms);
    let width = r.verdicts.keys().chain(r.summary.keys()).map(|k| k.len()).max().unwrap_or(0);
    for (k, v) in &r.summary {
        match v {
            Value::Object(m) => {
                let _ = writeln!(out, "  {k:<width$}");
                for (kk, vv) in m {
                    let _ = writeln!(out, "    {kk:<w2$}  {}", cell(vv), w2 = width + 8);
                }
            }
            _ => {
                let _ = writeln!(out, "  {k:<width$}  {}", cell(v));
            }
        }
    }
    for (k, v) in &r.verdicts {
        let _ = writeln!(out, "  {k:<width$}  [{v}]");
    }
    out
}

pub fn render_catalog(entries: &[CatalogEntry]) -> String {
    let mut out = String::new();
    for e in entries {
        let kind = format!("{:?}", e.kind).to_lowercase();
        let _ = writeln!(out, "{kind:<9} {:<20} {:<55} {}", e.id, e.description, e.note);
    }
    out
}
