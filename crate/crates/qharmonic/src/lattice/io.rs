use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{QError, Result};
use crate::lattice::{LatticeFunction, LatticeGrid, QContext, Role};

/// Marker used in the `n` column for the origin row.
pub const ZERO_ROW: &str = "inf";

/// Format a float with 17 significant digits (lossless round trip).
pub fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

/// CSV with header `n,x,re,im`; the last row (`n = inf`, `x = 0`) holds the limit at zero.
pub fn to_csv(f: &LatticeFunction, ctx: &QContext) -> Result<String> {
    let mut w = csv::Writer::from_writer(vec![]);
    w.write_record(["n", "x", "re", "im"]).map_err(csv_err)?;
    for n in f.grid().exponents() {
        let v = f.at(n);
        w.write_record([n.to_string(), fmt17(ctx.point(n)), fmt17(v.re), fmt17(v.im)]).map_err(csv_err)?;
    }
    let v0 = f.value_at_zero();
    w.write_record([ZERO_ROW.to_string(), fmt17(0.0), fmt17(v0.re), fmt17(v0.im)]).map_err(csv_err)?;
    let bytes = w.into_inner().map_err(|e| QError::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| QError::Io(e.to_string()))
}

/// Parse the CSV produced by [`to_csv`]. Exponents must be consecutive. Without an
/// origin row the innermost value is used as the limit at zero.
pub fn from_csv(text: &str) -> Result<LatticeFunction> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let mut rows: Vec<(i64, C64)> = vec![];
    let mut v0 = None;
    for rec in r.records() {
        let rec = rec.map_err(csv_err)?;
        if rec.len() < 4 {
            return Err(QError::Parse(format!("expected 4 columns, got {}", rec.len())));
        }
        let re = parse_f64(&rec[2])?;
        let im = parse_f64(&rec[3])?;
        let n = rec[0].trim();
        if n == ZERO_ROW {
            v0 = Some(C64::new(re, im));
        } else {
            let n: i64 = n.parse().map_err(|_| QError::Parse(format!("bad exponent '{n}'")))?;
            rows.push((n, C64::new(re, im)));
        }
    }
    if rows.is_empty() {
        return Err(QError::Parse("no lattice rows".into()));
    }
    rows.sort_by_key(|r| r.0);
    for w in rows.windows(2) {
        if w[1].0 != w[0].0 + 1 {
            return Err(QError::Parse(format!("exponents not consecutive at {}", w[1].0)));
        }
    }
    let grid = LatticeGrid::new(rows[0].0, rows[rows.len() - 1].0)?;
    let values: Vec<C64> = rows.into_iter().map(|r| r.1).collect();
    match v0 {
        Some(v0) => LatticeFunction::new(grid, values, v0),
        None => LatticeFunction::from_samples(grid, values),
    }
}

fn parse_f64(s: &str) -> Result<f64> {
    match s.trim().parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        Ok(_) => Err(QError::Parse(format!("non-finite sample '{s}'"))),
        Err(_) => Err(QError::Parse(format!("bad number '{s}'"))),
    }
}

fn csv_err(e: csv::Error) -> QError {
    QError::Parse(e.to_string())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FunctionEnvelope {
    pub q: f64,
    pub alpha: f64,
    pub n_min: String,
    pub n_max: String,
    pub role: Role,
    pub value_at_zero: [f64; 2],
    pub values: Vec<[f64; 2]>,
}

pub fn to_envelope(f: &LatticeFunction, ctx: &QContext) -> FunctionEnvelope {
    let g = f.grid();
    FunctionEnvelope {
        q: ctx.q(),
        alpha: ctx.alpha(),
        n_min: g.n_min.to_string(),
        n_max: g.n_max.to_string(),
        role: f.role(),
        value_at_zero: [f.value_at_zero().re, f.value_at_zero().im],
        values: f.values().iter().map(|v| [v.re, v.im]).collect(),
    }
}

pub fn to_json(f: &LatticeFunction, ctx: &QContext) -> Result<String> {
    serde_json::to_string_pretty(&to_envelope(f, ctx)).map_err(|e| QError::Io(e.to_string()))
}

/// Parse a JSON envelope; returns the function with the `(q, alpha)` it was written with.
pub fn from_json(text: &str) -> Result<(LatticeFunction, f64, f64)> {
    let env: FunctionEnvelope = serde_json::from_str(text).map_err(|e| QError::Parse(e.to_string()))?;
    from_envelope(&env)
}

pub fn from_envelope(env: &FunctionEnvelope) -> Result<(LatticeFunction, f64, f64)> {
    let n_min: i64 = env.n_min.parse().map_err(|_| QError::Parse(format!("bad n_min '{}'", env.n_min)))?;
    let n_max: i64 = env.n_max.parse().map_err(|_| QError::Parse(format!("bad n_max '{}'", env.n_max)))?;
    let grid = LatticeGrid::new(n_min, n_max)?;
    if env.values.iter().chain([&env.value_at_zero]).flatten().any(|v| !v.is_finite()) {
        return Err(QError::Parse("non-finite sample".into()));
    }
    let values = env.values.iter().map(|v| C64::new(v[0], v[1])).collect();
    let f = LatticeFunction::new(grid, values, C64::new(env.value_at_zero[0], env.value_at_zero[1]))?.with_role(env.role);
    Ok((f, env.q, env.alpha))
}

/// Load a function from a `.json` or `.csv` file (by extension; JSON is sniffed otherwise).
pub fn load(path: &std::path::Path) -> Result<LatticeFunction> {
    let text = std::fs::read_to_string(path).map_err(|e| QError::Io(format!("{}: {e}", path.display())))?;
    let is_json = path.extension().map(|e| e == "json").unwrap_or(false) || text.trim_start().starts_with('{');
    if is_json {
        Ok(from_json(&text)?.0)
    } else {
        from_csv(&text)
    }
}
