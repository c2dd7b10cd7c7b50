//! Flat-file persistence: finite profiles as `knot,value` and sample tables.

use std::fs::File;
use std::io::Write;
use std::path::Path;

use dixmier_core::rearrange::{FiniteProfile, SingularValueProfile};

use crate::error::{HarnessError, Result};

/// Loads a finite profile from a `knot,value` table.
///
/// Row `i` gives the left end of a cell and the value of `μ` on it; the
/// last row closes the support and must carry the value 0.
pub fn read_profile(path: &Path) -> Result<SingularValueProfile> {
    let bad = |reason: String| HarnessError::Csv { path: path.to_path_buf(), reason };
    let mut rdr = csv::Reader::from_path(path).map_err(|e| match e.into_kind() {
        csv::ErrorKind::Io(io) => HarnessError::io(path, io),
        other => bad(format!("{other:?}")),
    })?;
    let headers = rdr.headers().map_err(|e| bad(e.to_string()))?.clone();
    if headers.len() != 2 || &headers[0] != "knot" || &headers[1] != "value" {
        return Err(bad(format!("expected header `knot,value`, got `{}`", headers.iter().collect::<Vec<_>>().join(","))));
    }
    let mut knots = Vec::new();
    let mut values = Vec::new();
    for (line, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| bad(e.to_string()))?;
        let parse = |i: usize| {
            rec[i].trim().parse::<f64>().map_err(|e| bad(format!("row {}: `{}`: {e}", line + 2, &rec[i])))
        };
        knots.push(parse(0)?);
        values.push(parse(1)?);
    }
    match values.pop() {
        Some(0.0) => {}
        Some(v) => return Err(bad(format!("last row must close the support with value 0, got {v}"))),
        None => return Err(bad("no rows".into())),
    }
    let p = FiniteProfile::from_steps(knots, values).map_err(|e| bad(e.to_string()))?;
    Ok(SingularValueProfile::Finite(p))
}

pub fn write_profile(path: &Path, p: &FiniteProfile) -> Result<()> {
    let mut rows = Vec::with_capacity(p.values().len() + 1);
    for (k, v) in p.knots().iter().zip(p.values()) {
        rows.push(vec![*k, *v]);
    }
    rows.push(vec![p.support(), 0.0]);
    write_table(path, &["knot", "value"], &rows)
}

/// Writes a numeric table. Numbers use the shortest representation that
/// round-trips, so equal inputs give byte-identical files.
pub fn write_table(path: &Path, header: &[&str], rows: &[Vec<f64>]) -> Result<()> {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for r in rows {
        let cells: Vec<String> = r.iter().map(|x| format_number(*x)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    write_file(path, out.as_bytes())
}

pub fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
    }
    let mut f = File::create(path).map_err(|e| HarnessError::io(path, e))?;
    f.write_all(bytes).map_err(|e| HarnessError::io(path, e))
}

pub fn format_number(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{x:?}")
    }
}
