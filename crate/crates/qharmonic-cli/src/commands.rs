use std::path::Path;

use qharmonic::fractional::*;
use qharmonic::harmonic::*;
use qharmonic::lattice::io;
use qharmonic::special::*;
use qharmonic::verify::{self, Suite, VerifyConfig};
use qharmonic::wavelet::*;
use qharmonic::{LatticeFunction, QContext, QError};

use crate::config::{Format, RunConfig};
use crate::{EvalName, WaveletMode};

pub const EXIT_OK: u8 = 0;
pub const EXIT_IDENTITY: u8 = 1;
pub const EXIT_CONFIG: u8 = 2;
pub const EXIT_CONVERGENCE: u8 = 3;
pub const EXIT_ADMISSIBILITY: u8 = 4;

/// Threshold for `wavelet kernel-check`.
const KERNEL_THRESHOLD: f64 = 1e-4;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub kind: String,
    pub message: String,
    pub stage: Option<String>,
}

impl CliError {
    pub fn to_json(&self) -> String {
        let mut v = serde_json::json!({ "error": self.kind, "message": self.message, "exit_code": self.code });
        if let Some(s) = &self.stage {
            v["stage"] = s.clone().into();
        }
        v.to_string()
    }

    fn config(message: impl Into<String>) -> Self {
        CliError { code: EXIT_CONFIG, kind: "invalid_parameter".into(), message: message.into(), stage: None }
    }

    fn at_stage(e: QError, stage: &str) -> Self {
        let mut c = CliError::from(e);
        if c.code != EXIT_ADMISSIBILITY {
            c.code = EXIT_CONVERGENCE;
        }
        c.stage = Some(stage.to_string());
        c
    }
}

impl From<QError> for CliError {
    fn from(e: QError) -> Self {
        let code = match e {
            QError::InvalidParameter(_) | QError::Parse(_) | QError::Io(_) | QError::GridMismatch(_) => EXIT_CONFIG,
            QError::NotAdmissible(_) => EXIT_ADMISSIBILITY,
            _ => EXIT_CONVERGENCE,
        };
        CliError { code, kind: e.kind().to_string(), message: e.to_string(), stage: None }
    }
}

type Res = std::result::Result<u8, CliError>;

fn write_out(text: &str, cfg: &RunConfig) -> Result<(), CliError> {
    match &cfg.output {
        Some(p) => std::fs::write(p, text).map_err(|e| QError::Io(format!("{}: {e}", p.display())).into()),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_function(f: &LatticeFunction, ctx: &QContext, cfg: &RunConfig) -> Result<(), CliError> {
    let text = match cfg.output_format() {
        Format::Csv => io::to_csv(f, ctx)?,
        Format::Json => io::to_json(f, ctx)? + "\n",
    };
    write_out(&text, cfg)
}

fn input_path(cfg: &RunConfig) -> Result<&Path, CliError> {
    cfg.input.as_deref().ok_or_else(|| CliError::config("this command needs --input"))
}

pub fn eval(name: EvalName, cfg: &RunConfig) -> Res {
    let ctx = cfg.context()?;
    let grid = cfg.grid()?;
    let (f, fctx) = match name {
        EvalName::Jalpha => (sample_j(grid, 0, &ctx), ctx),
        EvalName::Cosq => (sample_j(grid, 0, &ctx.cosine()), ctx.cosine()),
        EvalName::Expq => (sample_q_exponential(grid, 0, &ctx), ctx),
        EvalName::GaussianWavelet => (gaussian_wavelet(grid, &ctx)?, ctx),
    };
    write_function(&f, &fctx, cfg)?;
    Ok(EXIT_OK)
}

enum Op {
    Fourier,
    InvFourier,
    Translate(f64),
    Convolve(LatticeFunction),
    Rl,
    Weyl,
    K1,
    K2,
    InvRl,
    InvWeyl,
}

fn parse_op(s: &str, ctx: &QContext) -> Result<Op, CliError> {
    let (head, arg) = match s.split_once(':') {
        Some((h, a)) => (h, Some(a)),
        None => (s, None),
    };
    let op = match (head, arg) {
        ("fourier", None) => Op::Fourier,
        ("inv-fourier", None) => Op::InvFourier,
        ("rl", None) => Op::Rl,
        ("weyl", None) => Op::Weyl,
        ("k1", None) => Op::K1,
        ("k2", None) => Op::K2,
        ("inv-rl", None) => Op::InvRl,
        ("inv-weyl", None) => Op::InvWeyl,
        ("translate", Some(x)) => {
            let x: f64 = x.parse().map_err(|_| CliError::config(format!("{s}: bad translation point")))?;
            if x != 0.0 && ctx.exponent_of(x.abs()).is_none() {
                return Err(CliError::config(format!("{s}: {x} is not a lattice point")));
            }
            Op::Translate(x)
        }
        ("convolve", Some(p)) => Op::Convolve(io::load(Path::new(p))?),
        _ => return Err(CliError::config(format!("unknown pipeline stage '{s}'"))),
    };
    Ok(op)
}

fn warn(w: Option<qharmonic::DomainWarning>) {
    if let Some(w) = w {
        eprintln!("warning: {w}");
    }
}

pub fn pipeline(ops: &[String], cfg: &RunConfig) -> Res {
    let ctx = cfg.context()?;
    let parsed = ops.iter().map(|s| parse_op(s, &ctx)).collect::<Result<Vec<_>, _>>()?;
    let mut f = io::load(input_path(cfg)?)?;
    for (name, op) in ops.iter().zip(parsed) {
        let step = || -> qharmonic::Result<LatticeFunction> {
            Ok(match &op {
                Op::Fourier => bessel_fourier(&f, &ctx)?,
                Op::InvFourier => bessel_fourier_inverse(&f, &ctx)?,
                Op::Translate(x) => translate(&f, *x, &ctx)?,
                Op::Convolve(g) => bessel_convolve(&f, g, &ctx)?,
                Op::Rl => riemann_liouville(&f, &ctx)?,
                Op::Weyl => weyl(&f, &ctx)?,
                Op::K1 => k1(&f, &ctx)?,
                Op::K2 => k2(&f, &ctx)?,
                Op::InvRl => {
                    let (r, w) = riemann_liouville_inverse_checked(&f, &ctx)?;
                    warn(w);
                    r
                }
                Op::InvWeyl => {
                    let (r, w) = weyl_inverse_checked(&f, &ctx)?;
                    warn(w);
                    r
                }
            })
        };
        f = step().map_err(|e| CliError::at_stage(e, name))?;
    }
    write_function(&f, &ctx, cfg)?;
    Ok(EXIT_OK)
}

fn load_wavelet(spec: &str, cfg: &RunConfig, ctx: &QContext) -> Result<WaveletDescriptor, CliError> {
    if spec == "gaussian" {
        return Ok(WaveletDescriptor::gaussian(cfg.grid()?, ctx)?);
    }
    let path = spec
        .strip_prefix("file:")
        .ok_or_else(|| CliError::config(format!("wavelet must be gaussian or file:path, got '{spec}'")))?;
    let g = io::load(Path::new(path))?;
    Ok(WaveletDescriptor::new(g, WaveletKind::Bessel, path, ctx)?)
}

pub fn wavelet(mode: WaveletMode, spec: &str, magnitude: bool, reference: Option<&Path>, cfg: &RunConfig) -> Res {
    let ctx = cfg.context()?;
    let input = input_path(cfg)?;
    let w = load_wavelet(spec, cfg, &ctx)?;
    match mode {
        WaveletMode::Analyze => {
            let f = io::load(input)?;
            let plane = wavelet_transform_auto(&f, &w, &ctx)?;
            let text = if magnitude {
                plane.magnitude_csv()
            } else {
                match cfg.format.unwrap_or(Format::Json) {
                    Format::Json => plane.to_json()? + "\n",
                    Format::Csv => plane.to_csv()?,
                }
            };
            write_out(&text, cfg)?;
            Ok(EXIT_OK)
        }
        WaveletMode::Synthesize => {
            let plane = read_plane(input)?;
            let target = if cfg.grid_given { cfg.grid()? } else { plane.grids.positions };
            let f = wavelet_reconstruct(&plane, &w, target, &ctx)?;
            if let Some(r) = reference {
                let r = io::load(r)?;
                let err = qharmonic::lattice::rel_l2_error(&f, &r, &ctx);
                eprintln!("{}", serde_json::json!({ "reconstruction_rel_l2_error": err }));
            }
            write_function(&f, &ctx, cfg)?;
            Ok(EXIT_OK)
        }
        WaveletMode::KernelCheck => {
            let plane = read_plane(input)?;
            let residual = reproducing_kernel_check(&plane, &w, &ctx)?;
            let pass = residual <= KERNEL_THRESHOLD;
            let report = serde_json::json!({ "residual": residual, "threshold": KERNEL_THRESHOLD, "pass": pass });
            write_out(&format!("{report}\n"), cfg)?;
            Ok(if pass { EXIT_OK } else { EXIT_IDENTITY })
        }
    }
}

fn read_plane(path: &Path) -> Result<TimeScalePlane, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| QError::Io(format!("{}: {e}", path.display())))?;
    Ok(TimeScalePlane::from_json(&text)?)
}

pub fn verify(suites: &[String], json: bool, cfg: &RunConfig) -> Res {
    let ctx = cfg.context()?;
    let mut selected = vec![];
    for s in suites {
        let list = Suite::parse_list(s).ok_or_else(|| CliError::config(format!("unknown suite '{s}'")))?;
        for x in list {
            if !selected.contains(&x) {
                selected.push(x);
            }
        }
    }
    let vcfg = VerifyConfig { ctx, grid: cfg.grid()?, seed: cfg.seed, moment_depth: cfg.moment_depth };
    let report = verify::run(&selected, &vcfg);
    let text = if json { report.to_json() + "\n" } else { report.to_table() };
    write_out(&text, cfg)?;
    Ok(if report.all_pass() { EXIT_OK } else { EXIT_IDENTITY })
}
