use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use qharmonic::lattice::{DEFAULT_MAX_TERMS, DEFAULT_PRODUCT_TOL, DEFAULT_TAIL_TOL};
use qharmonic::{LatticeGrid, QContext, QError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(QError::InvalidParameter(format!("format must be csv or json, got '{s}'"))),
        }
    }
}

/// Settings after merging flags, the key=value file and the defaults.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub q: f64,
    pub alpha: f64,
    pub n_min: i64,
    pub n_max: i64,
    /// Whether the window came from a flag or the file rather than the defaults.
    pub grid_given: bool,
    pub tail_tol: f64,
    pub product_tol: f64,
    pub max_terms: usize,
    pub moment_depth: usize,
    pub seed: u64,
    pub strict: bool,
    pub input: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub format: Option<Format>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            q: 0.5,
            alpha: 0.0,
            n_min: -10,
            n_max: 30,
            grid_given: false,
            tail_tol: DEFAULT_TAIL_TOL,
            product_tol: DEFAULT_PRODUCT_TOL,
            max_terms: DEFAULT_MAX_TERMS,
            moment_depth: 3,
            seed: 1,
            strict: false,
            input: None,
            output: None,
            format: None,
        }
    }
}

/// Raw `key=value` pairs; later sources overwrite earlier ones.
pub type Overrides = BTreeMap<String, String>;

pub fn read_file(path: &Path) -> Result<Overrides> {
    let text = std::fs::read_to_string(path).map_err(|e| QError::Io(format!("{}: {e}", path.display())))?;
    parse_file(&text)
}

/// One `key = value` per line; `#` starts a comment.
pub fn parse_file(text: &str) -> Result<Overrides> {
    let mut out = Overrides::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| QError::Parse(format!("config line {}: expected key=value", no + 1)))?;
        out.insert(k.trim().replace('-', "_"), v.trim().to_string());
    }
    Ok(out)
}

fn num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse().map_err(|_| QError::InvalidParameter(format!("{key}: cannot parse '{v}'")))
}

impl RunConfig {
    /// Defaults, then `file`, then `flags`.
    pub fn resolve(file: &Overrides, flags: &Overrides) -> Result<Self> {
        let mut c = RunConfig::default();
        for src in [file, flags] {
            for (k, v) in src {
                c.set(k, v)?;
            }
        }
        Ok(c)
    }

    fn set(&mut self, key: &str, v: &str) -> Result<()> {
        match key {
            "q" => self.q = num(key, v)?,
            "alpha" => self.alpha = num(key, v)?,
            "n_min" | "nmin" => {
                self.n_min = num(key, v)?;
                self.grid_given = true;
            }
            "n_max" | "nmax" => {
                self.n_max = num(key, v)?;
                self.grid_given = true;
            }
            "tail_tol" => self.tail_tol = num(key, v)?,
            "product_tol" => self.product_tol = num(key, v)?,
            "max_terms" => self.max_terms = num(key, v)?,
            "moment_depth" => self.moment_depth = num(key, v)?,
            "seed" => self.seed = num(key, v)?,
            "strict" => self.strict = num(key, v)?,
            "input" => self.input = Some(PathBuf::from(v)),
            "output" => self.output = Some(PathBuf::from(v)),
            "format" => self.format = Some(Format::parse(v)?),
            _ => return Err(QError::InvalidParameter(format!("unknown config key '{key}'"))),
        }
        Ok(())
    }

    pub fn context(&self) -> Result<QContext> {
        QContext::build(self.q, self.alpha, self.tail_tol, self.product_tol, self.max_terms, self.strict)
    }

    /// The window, rejected when its end points `q^n` (or `q^{2n}`) leave the f64 range.
    pub fn grid(&self) -> Result<LatticeGrid> {
        let g = LatticeGrid::new(self.n_min, self.n_max)?;
        let outer = self.q.powf(g.n_min as f64);
        let inner = self.q.powf(g.n_max as f64);
        if !(outer * outer).is_finite() || inner == 0.0 {
            return Err(QError::InvalidParameter(format!(
                "window [{}, {}] leaves the representable range at q = {}",
                g.n_min, g.n_max, self.q
            )));
        }
        Ok(g)
    }

    /// Explicit format, else the output extension, else CSV.
    pub fn output_format(&self) -> Format {
        self.format.unwrap_or_else(|| match self.output.as_ref().and_then(|p| p.extension()) {
            Some(e) if e == "json" => Format::Json,
            _ => Format::Csv,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_beat_file_beat_defaults() {
        let file = parse_file("q = 0.3\nalpha=1 # comment\n\nn-max = 12\n").unwrap();
        let mut flags = Overrides::new();
        flags.insert("q".into(), "0.7".into());
        let c = RunConfig::resolve(&file, &flags).unwrap();
        assert_eq!(c.q, 0.7);
        assert_eq!(c.alpha, 1.0);
        assert_eq!(c.n_max, 12);
        assert_eq!(c.n_min, -10);
        assert!(c.grid_given);
    }

    #[test]
    fn bad_lines_and_keys() {
        assert!(parse_file("q 0.5").is_err());
        let file = parse_file("colour = red").unwrap();
        assert!(RunConfig::resolve(&file, &Overrides::new()).is_err());
    }

    #[test]
    fn format_from_extension() {
        let c = RunConfig { output: Some("x.json".into()), ..Default::default() };
        assert_eq!(c.output_format(), Format::Json);
        assert_eq!(RunConfig::default().output_format(), Format::Csv);
    }
}
