//! Python bindings. The extension module is importable as `qharmonic`.

use num_complex::Complex64 as C64;
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;

use qharmonic::lattice::{io, rel_l2_error, DEFAULT_MAX_TERMS, DEFAULT_PRODUCT_TOL, DEFAULT_TAIL_TOL};
use qharmonic::verify::{self, Suite, VerifyConfig};
use qharmonic::wavelet::{TimeScalePlane, WaveletDescriptor, WaveletKind};
use qharmonic::{fractional, harmonic, special, wavelet as wv};
use qharmonic::{LatticeFunction, LatticeGrid, QContext, QError};

create_exception!(qharmonic, QHarmonicError, PyException);
create_exception!(qharmonic, InvalidParameterError, QHarmonicError);
create_exception!(qharmonic, NonConvergenceError, QHarmonicError);
create_exception!(qharmonic, NotAdmissibleError, QHarmonicError);

fn err(e: QError) -> PyErr {
    let msg = e.to_string();
    match e {
        QError::InvalidParameter(_) | QError::Parse(_) | QError::GridMismatch(_) => InvalidParameterError::new_err(msg),
        QError::NonConvergence(_) => NonConvergenceError::new_err(msg),
        QError::NotAdmissible(_) => NotAdmissibleError::new_err(msg),
        _ => QHarmonicError::new_err(msg),
    }
}

type R<T> = PyResult<T>;

fn grid(n_min: i64, n_max: i64) -> R<LatticeGrid> {
    LatticeGrid::new(n_min, n_max).map_err(err)
}

/// Parameters `(q, alpha)` and the numerical tolerances.
#[pyclass(name = "Context", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyContext(QContext);

#[pymethods]
impl PyContext {
    #[new]
    #[pyo3(signature = (q=0.5, alpha=0.0, tail_tol=DEFAULT_TAIL_TOL, product_tol=DEFAULT_PRODUCT_TOL, max_terms=DEFAULT_MAX_TERMS, strict=false))]
    fn new(q: f64, alpha: f64, tail_tol: f64, product_tol: f64, max_terms: usize, strict: bool) -> R<Self> {
        QContext::build(q, alpha, tail_tol, product_tol, max_terms, strict).map(PyContext).map_err(err)
    }

    #[getter]
    fn q(&self) -> f64 {
        self.0.q()
    }

    #[getter]
    fn alpha(&self) -> f64 {
        self.0.alpha()
    }

    #[getter]
    fn c_alpha(&self) -> f64 {
        self.0.c_alpha()
    }

    fn is_lattice_compatible(&self) -> bool {
        self.0.is_lattice_compatible()
    }

    fn point(&self, n: i64) -> f64 {
        self.0.point(n)
    }

    /// The same parameters at order -1/2.
    fn cosine(&self) -> Self {
        PyContext(self.0.cosine())
    }

    fn __repr__(&self) -> String {
        format!("Context(q={}, alpha={})", self.0.q(), self.0.alpha())
    }
}

/// An even function sampled at `x = q^n`, `n_min <= n <= n_max`, plus its limit at 0.
#[pyclass(name = "Function", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyFunction(LatticeFunction);

#[pymethods]
impl PyFunction {
    /// Samples for `n = n_min, n_min + 1, ...`; without `value_at_zero` the innermost
    /// sample is used.
    #[new]
    #[pyo3(signature = (n_min, values, value_at_zero=None))]
    fn new(n_min: i64, values: Vec<C64>, value_at_zero: Option<C64>) -> R<Self> {
        if values.is_empty() {
            return Err(InvalidParameterError::new_err("no samples"));
        }
        let g = grid(n_min, n_min + values.len() as i64 - 1)?;
        let f = match value_at_zero {
            Some(v0) => LatticeFunction::new(g, values, v0),
            None => LatticeFunction::from_samples(g, values),
        };
        f.map(PyFunction).map_err(err)
    }

    #[getter]
    fn n_min(&self) -> i64 {
        self.0.grid().n_min
    }

    #[getter]
    fn n_max(&self) -> i64 {
        self.0.grid().n_max
    }

    #[getter]
    fn values(&self) -> Vec<C64> {
        self.0.values().to_vec()
    }

    #[getter]
    fn value_at_zero(&self) -> C64 {
        self.0.value_at_zero()
    }

    fn exponents(&self) -> Vec<i64> {
        self.0.grid().exponents().collect()
    }

    fn points(&self, ctx: &PyContext) -> Vec<f64> {
        self.0.grid().exponents().map(|n| ctx.0.point(n)).collect()
    }

    /// Sample at exponent `n`; zero outside the window.
    fn at(&self, n: i64) -> C64 {
        self.0.at(n)
    }

    fn __len__(&self) -> usize {
        self.0.values().len()
    }

    fn to_csv(&self, ctx: &PyContext) -> R<String> {
        io::to_csv(&self.0, &ctx.0).map_err(err)
    }

    fn to_json(&self, ctx: &PyContext) -> R<String> {
        io::to_json(&self.0, &ctx.0).map_err(err)
    }

    #[staticmethod]
    fn from_csv(text: &str) -> R<Self> {
        io::from_csv(text).map(PyFunction).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> R<Self> {
        io::from_json(text).map(|r| PyFunction(r.0)).map_err(err)
    }

    #[staticmethod]
    fn load(path: std::path::PathBuf) -> R<Self> {
        io::load(&path).map(PyFunction).map_err(err)
    }

    fn rel_l2_error(&self, reference: &PyFunction, ctx: &PyContext) -> f64 {
        rel_l2_error(&self.0, &reference.0, &ctx.0)
    }

    fn __repr__(&self) -> String {
        let g = self.0.grid();
        format!("Function(n_min={}, n_max={})", g.n_min, g.n_max)
    }
}

/// An admissible wavelet with its constant `C_g`.
#[pyclass(name = "Wavelet", frozen, skip_from_py_object)]
struct PyWavelet(WaveletDescriptor);

#[pymethods]
impl PyWavelet {
    /// Raises `NotAdmissibleError` when `g` fails the admissibility test.
    #[new]
    #[pyo3(signature = (g, ctx, id="custom"))]
    fn new(g: &PyFunction, ctx: &PyContext, id: &str) -> R<Self> {
        WaveletDescriptor::new(g.0.clone(), WaveletKind::Bessel, id, &ctx.0).map(PyWavelet).map_err(err)
    }

    #[staticmethod]
    #[pyo3(signature = (ctx, n_min=-10, n_max=30))]
    fn gaussian(ctx: &PyContext, n_min: i64, n_max: i64) -> R<Self> {
        WaveletDescriptor::gaussian(grid(n_min, n_max)?, &ctx.0).map(PyWavelet).map_err(err)
    }

    #[getter]
    fn c_g(&self) -> f64 {
        self.0.c_g
    }

    #[getter]
    fn function(&self) -> PyFunction {
        PyFunction(self.0.g.clone())
    }
}

/// Wavelet coefficients on a grid of scales `q^i` and positions `q^k` (and `b = 0`).
#[pyclass(name = "Plane", frozen, skip_from_py_object)]
struct PyPlane(TimeScalePlane);

#[pymethods]
impl PyPlane {
    fn get(&self, i: i64, k: i64) -> C64 {
        self.0.get(i, k)
    }

    fn at_origin(&self, i: i64) -> C64 {
        self.0.at_origin(i)
    }

    #[getter]
    fn scales(&self) -> (i64, i64) {
        (self.0.grids.scales.n_min, self.0.grids.scales.n_max)
    }

    #[getter]
    fn positions(&self) -> (i64, i64) {
        (self.0.grids.positions.n_min, self.0.grids.positions.n_max)
    }

    fn to_json(&self) -> R<String> {
        self.0.to_json().map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> R<Self> {
        TimeScalePlane::from_json(text).map(PyPlane).map_err(err)
    }
}

#[pyfunction]
fn j_alpha(x: f64, ctx: &PyContext) -> R<f64> {
    special::j_normalized(x, &ctx.0).map_err(err)
}

#[pyfunction]
fn cos_q(x: f64, ctx: &PyContext) -> R<f64> {
    special::q_cosine(x, &ctx.0).map_err(err)
}

/// `e_{q^2}(-x^2)`.
#[pyfunction]
fn exp_q(x: f64, ctx: &PyContext) -> f64 {
    special::q_exponential_sq(x, &ctx.0)
}

#[pyfunction]
fn q_gamma(x: f64, ctx: &PyContext) -> R<f64> {
    qharmonic::lattice::q_gamma(x, &ctx.0).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (ctx, n_min=-10, n_max=30, l=0))]
fn sample_j(ctx: &PyContext, n_min: i64, n_max: i64, l: i64) -> R<PyFunction> {
    Ok(PyFunction(special::sample_j(grid(n_min, n_max)?, l, &ctx.0)))
}

#[pyfunction]
#[pyo3(signature = (ctx, n_min=-10, n_max=30, l=0))]
fn sample_exp_q(ctx: &PyContext, n_min: i64, n_max: i64, l: i64) -> R<PyFunction> {
    Ok(PyFunction(special::sample_q_exponential(grid(n_min, n_max)?, l, &ctx.0)))
}

#[pyfunction]
#[pyo3(signature = (ctx, n_min=-10, n_max=30))]
fn gaussian(ctx: &PyContext, n_min: i64, n_max: i64) -> R<PyFunction> {
    special::gaussian(grid(n_min, n_max)?, &ctx.0).map(PyFunction).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (ctx, n_min=-10, n_max=30))]
fn gaussian_wavelet(ctx: &PyContext, n_min: i64, n_max: i64) -> R<PyFunction> {
    special::gaussian_wavelet(grid(n_min, n_max)?, &ctx.0).map(PyFunction).map_err(err)
}

macro_rules! unary {
    ($($name:ident => $path:path),* $(,)?) => {$(
        #[pyfunction]
        fn $name(f: &PyFunction, ctx: &PyContext) -> R<PyFunction> {
            $path(&f.0, &ctx.0).map(PyFunction).map_err(err)
        }
    )*};
}

unary! {
    fourier => harmonic::bessel_fourier,
    inverse_fourier => harmonic::bessel_fourier_inverse,
    cosine_fourier => harmonic::cosine_fourier,
    riemann_liouville => fractional::riemann_liouville,
    weyl => fractional::weyl,
    k1 => fractional::k1,
    k2 => fractional::k2,
}

/// Returns the inverse and a warning string (or `None`) when the input is uncertified.
#[pyfunction]
fn riemann_liouville_inverse(f: &PyFunction, ctx: &PyContext) -> R<(PyFunction, Option<String>)> {
    let (r, w) = fractional::riemann_liouville_inverse_checked(&f.0, &ctx.0).map_err(err)?;
    Ok((PyFunction(r), w.map(|w| w.to_string())))
}

#[pyfunction]
fn weyl_inverse(f: &PyFunction, ctx: &PyContext) -> R<(PyFunction, Option<String>)> {
    let (r, w) = fractional::weyl_inverse_checked(&f.0, &ctx.0).map_err(err)?;
    Ok((PyFunction(r), w.map(|w| w.to_string())))
}

#[pyfunction]
fn translate(f: &PyFunction, x: f64, ctx: &PyContext) -> R<PyFunction> {
    harmonic::translate(&f.0, x, &ctx.0).map(PyFunction).map_err(err)
}

#[pyfunction]
fn convolve(f: &PyFunction, g: &PyFunction, ctx: &PyContext) -> R<PyFunction> {
    harmonic::bessel_convolve(&f.0, &g.0, &ctx.0).map(PyFunction).map_err(err)
}

#[pyfunction]
fn wavelet_transform(f: &PyFunction, w: &PyWavelet, ctx: &PyContext) -> R<PyPlane> {
    wv::wavelet_transform_auto(&f.0, &w.0, &ctx.0).map(PyPlane).map_err(err)
}

/// Inverse transform onto `[n_min, n_max]`, by default the position grid of the plane.
#[pyfunction]
#[pyo3(signature = (plane, w, ctx, n_min=None, n_max=None))]
fn wavelet_reconstruct(plane: &PyPlane, w: &PyWavelet, ctx: &PyContext, n_min: Option<i64>, n_max: Option<i64>) -> R<PyFunction> {
    let p = plane.0.grids.positions;
    let target = grid(n_min.unwrap_or(p.n_min), n_max.unwrap_or(p.n_max))?;
    wv::wavelet_reconstruct(&plane.0, &w.0, target, &ctx.0).map(PyFunction).map_err(err)
}

#[pyfunction]
fn kernel_check(plane: &PyPlane, w: &PyWavelet, ctx: &PyContext) -> R<f64> {
    wv::reproducing_kernel_check(&plane.0, &w.0, &ctx.0).map_err(err)
}

/// Run identity checks; returns the JSON report as a string.
#[pyfunction(name = "verify")]
#[pyo3(signature = (ctx, suites="all", n_min=-10, n_max=30, seed=1))]
fn run_verify(py: Python<'_>, ctx: &PyContext, suites: &str, n_min: i64, n_max: i64, seed: u64) -> R<String> {
    let selected = Suite::parse_list(suites).ok_or_else(|| InvalidParameterError::new_err(format!("unknown suite '{suites}'")))?;
    let mut cfg = VerifyConfig::new(ctx.0.clone());
    cfg.grid = grid(n_min, n_max)?;
    cfg.seed = seed;
    Ok(py.detach(|| verify::run(&selected, &cfg).to_json()))
}

#[pymodule(name = "qharmonic")]
fn py_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("QHarmonicError", py.get_type::<QHarmonicError>())?;
    m.add("InvalidParameterError", py.get_type::<InvalidParameterError>())?;
    m.add("NonConvergenceError", py.get_type::<NonConvergenceError>())?;
    m.add("NotAdmissibleError", py.get_type::<NotAdmissibleError>())?;
    m.add_class::<PyContext>()?;
    m.add_class::<PyFunction>()?;
    m.add_class::<PyWavelet>()?;
    m.add_class::<PyPlane>()?;
    m.add_function(wrap_pyfunction!(j_alpha, m)?)?;
    m.add_function(wrap_pyfunction!(cos_q, m)?)?;
    m.add_function(wrap_pyfunction!(exp_q, m)?)?;
    m.add_function(wrap_pyfunction!(q_gamma, m)?)?;
    m.add_function(wrap_pyfunction!(sample_j, m)?)?;
    m.add_function(wrap_pyfunction!(sample_exp_q, m)?)?;
    m.add_function(wrap_pyfunction!(gaussian, m)?)?;
    m.add_function(wrap_pyfunction!(gaussian_wavelet, m)?)?;
    m.add_function(wrap_pyfunction!(fourier, m)?)?;
    m.add_function(wrap_pyfunction!(inverse_fourier, m)?)?;
    m.add_function(wrap_pyfunction!(cosine_fourier, m)?)?;
    m.add_function(wrap_pyfunction!(riemann_liouville, m)?)?;
    m.add_function(wrap_pyfunction!(weyl, m)?)?;
    m.add_function(wrap_pyfunction!(k1, m)?)?;
    m.add_function(wrap_pyfunction!(k2, m)?)?;
    m.add_function(wrap_pyfunction!(riemann_liouville_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(weyl_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(translate, m)?)?;
    m.add_function(wrap_pyfunction!(convolve, m)?)?;
    m.add_function(wrap_pyfunction!(wavelet_transform, m)?)?;
    m.add_function(wrap_pyfunction!(wavelet_reconstruct, m)?)?;
    m.add_function(wrap_pyfunction!(kernel_check, m)?)?;
    m.add_function(wrap_pyfunction!(run_verify, m)?)?;
    Ok(())
}
