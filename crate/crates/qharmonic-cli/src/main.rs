use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod config;

use config::{Overrides, RunConfig};

#[derive(Parser)]
#[command(name = "qharmonic", version, about = "q-Bessel harmonic analysis on the lattice R_q")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

/// Flags shared by every subcommand. Unset flags fall back to `--config`, then defaults.
#[derive(Args, Debug)]
struct Common {
    /// key=value file with any of the settings below
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    q: Option<String>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    alpha: Option<String>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    nmin: Option<String>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    nmax: Option<String>,
    #[arg(long, global = true)]
    tail_tol: Option<String>,
    #[arg(long, global = true)]
    product_tol: Option<String>,
    #[arg(long, global = true)]
    max_terms: Option<String>,
    #[arg(long, global = true)]
    moment_depth: Option<String>,
    #[arg(long, global = true)]
    seed: Option<String>,
    /// reject q with non-integral log(1-q)/log(q)
    #[arg(long, global = true)]
    strict: bool,
    #[arg(short, long, global = true)]
    input: Option<PathBuf>,
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    /// csv or json
    #[arg(long, global = true)]
    format: Option<String>,
}

impl Common {
    fn overrides(&self) -> Overrides {
        let mut o = Overrides::new();
        let mut put = |k: &str, v: &Option<String>| {
            if let Some(v) = v {
                o.insert(k.to_string(), v.clone());
            }
        };
        put("q", &self.q);
        put("alpha", &self.alpha);
        put("n_min", &self.nmin);
        put("n_max", &self.nmax);
        put("tail_tol", &self.tail_tol);
        put("product_tol", &self.product_tol);
        put("max_terms", &self.max_terms);
        put("moment_depth", &self.moment_depth);
        put("seed", &self.seed);
        put("format", &self.format);
        put("input", &self.input.as_ref().map(|p| p.display().to_string()));
        put("output", &self.output.as_ref().map(|p| p.display().to_string()));
        if self.strict {
            o.insert("strict".into(), "true".into());
        }
        o
    }
}

#[derive(Subcommand)]
enum Command {
    /// Sample a special function on the window
    Eval { name: EvalName },
    /// Apply operators left to right to the input function
    Pipeline {
        /// fourier, inv-fourier, translate:x, convolve:path, rl, weyl, k1, k2, inv-rl, inv-weyl
        ops: Vec<String>,
    },
    /// Wavelet analysis, synthesis and reproducing-kernel check
    Wavelet {
        mode: WaveletMode,
        /// gaussian or file:path
        #[arg(long, default_value = "gaussian")]
        wavelet: String,
        /// write the magnitude table instead of the plane (analyze)
        #[arg(long)]
        magnitude: bool,
        /// function to compare the synthesized output against
        #[arg(long)]
        reference: Option<PathBuf>,
    },
    /// Run identity checks and print residuals
    Verify {
        /// core, special, harmonic, wavelet, fractional or all
        #[arg(default_value = "all")]
        suites: Vec<String>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
pub enum EvalName {
    Jalpha,
    Cosq,
    Expq,
    GaussianWavelet,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum WaveletMode {
    Analyze,
    Synthesize,
    KernelCheck,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = (|| {
        let file = match &cli.common.config {
            Some(p) => config::read_file(p)?,
            None => Overrides::new(),
        };
        let cfg = RunConfig::resolve(&file, &cli.common.overrides())?;
        match &cli.command {
            Command::Eval { name } => commands::eval(*name, &cfg),
            Command::Pipeline { ops } => commands::pipeline(ops, &cfg),
            Command::Wavelet { mode, wavelet, magnitude, reference } => {
                commands::wavelet(*mode, wavelet, *magnitude, reference.as_deref(), &cfg)
            }
            Command::Verify { suites, json } => commands::verify(suites, *json, &cfg),
        }
    })();
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.code)
        }
    }
}
