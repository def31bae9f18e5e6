//! Python bindings. Profiles cross the boundary as lists of floats on a
//! uniform grid given by its first node and spacing.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use chscatter::jost::{DEFAULT_VOLTERRA_MAX_ITER, DEFAULT_VOLTERRA_TOL};
use chscatter::liouville::{self, DEFAULT_DECAY_TOL};
use chscatter::recovery::admissible_interval;
use chscatter::solitary::{self, traveling_wave_residual};
use chscatter::spectrum::DEFAULT_SPECTRUM_TOL;
use chscatter::{
    Error, Grid1D, JostFunction, JostMethod, MomentumProfile, PotentialProfile, RecoveryDiagnostics,
    RecoveryResult, SampledFunction, SolitaryWaveSpec,
};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::NonConvergence { .. } | Error::Blowup { .. } | Error::Normalization { .. } => {
            PyRuntimeError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn samples(x0: f64, dx: f64, values: Vec<f64>) -> PyResult<SampledFunction> {
    let grid = Grid1D::new(x0, dx, values.len()).map_err(py_err)?;
    SampledFunction::new(grid, values).map_err(py_err)
}

fn method(name: &str, tol: f64, max_iter: usize) -> PyResult<JostMethod> {
    match name {
        "ode" => Ok(JostMethod::Ode),
        "volterra" => Ok(JostMethod::Volterra { tol, max_iter }),
        other => Err(PyValueError::new_err(format!(
            "method must be 'ode' or 'volterra' (got {other:?})"
        ))),
    }
}

/// Momentum `m` sampled on `x0 + i·dx`.
#[pyclass(name = "MomentumProfile", frozen)]
struct PyMomentum {
    inner: MomentumProfile,
}

#[pymethods]
impl PyMomentum {
    #[new]
    #[pyo3(signature = (x0, dx, values, decay_tol = DEFAULT_DECAY_TOL))]
    fn new(x0: f64, dx: f64, values: Vec<f64>, decay_tol: f64) -> PyResult<Self> {
        let inner = MomentumProfile::new(samples(x0, dx, values)?, decay_tol).map_err(py_err)?;
        Ok(Self { inner })
    }

    #[getter]
    fn coords(&self) -> Vec<f64> {
        self.inner.grid().points().collect()
    }

    #[getter]
    fn values(&self) -> Vec<f64> {
        self.inner.values().to_vec()
    }

    fn __len__(&self) -> usize {
        self.inner.values().len()
    }

    fn __repr__(&self) -> String {
        let g = self.inner.grid();
        format!("MomentumProfile(x=[{}, {}], n={})", g.first(), g.last(), g.len())
    }

    /// `y(x)` on the profile's grid.
    fn forward_coordinate(&self) -> PyResult<Vec<f64>> {
        Ok(liouville::forward_coordinate(&self.inner)
            .map_err(py_err)?
            .values()
            .to_vec())
    }

    fn liouville_shift(&self) -> PyResult<f64> {
        liouville::liouville_shift(&self.inner).map_err(py_err)
    }

    /// Potential on a y-grid; bounds default to the image of the x-grid and
    /// the spacing to the x spacing.
    #[pyo3(signature = (dy = None, ymin = None, ymax = None))]
    fn potential(&self, dy: Option<f64>, ymin: Option<f64>, ymax: Option<f64>) -> PyResult<PyPotential> {
        let (lo, hi) = liouville::forward_coordinate(&self.inner).map_err(py_err)?.range();
        let dy = dy.unwrap_or(self.inner.grid().dx());
        let grid = Grid1D::spanning(ymin.unwrap_or(lo), ymax.unwrap_or(hi), dy).map_err(py_err)?;
        let inner = liouville::compute_potential(&self.inner, &grid).map_err(py_err)?;
        Ok(PyPotential { inner })
    }

    /// `u = (1 - ∂²)⁻¹ m` on the same grid.
    fn helmholtz_inverse(&self) -> Vec<f64> {
        solitary::helmholtz_inverse(&self.inner).values().to_vec()
    }

    fn traveling_wave_residual(&self, c: f64) -> PyResult<f64> {
        traveling_wave_residual(&self.inner, c).map_err(py_err)
    }
}

/// Potential `Q` sampled on `y0 + i·dy`.
#[pyclass(name = "PotentialProfile", frozen)]
struct PyPotential {
    inner: PotentialProfile,
}

#[pymethods]
impl PyPotential {
    /// `decay_tol = None` skips the check that `Q` vanishes at both ends.
    #[new]
    #[pyo3(signature = (y0, dy, values, decay_tol = Some(DEFAULT_DECAY_TOL)))]
    fn new(y0: f64, dy: f64, values: Vec<f64>, decay_tol: Option<f64>) -> PyResult<Self> {
        let q = samples(y0, dy, values)?;
        let inner = match decay_tol {
            Some(tol) => PotentialProfile::new(q, tol).map_err(py_err)?,
            None => PotentialProfile::without_decay_check(q),
        };
        Ok(Self { inner })
    }

    #[getter]
    fn coords(&self) -> Vec<f64> {
        self.inner.grid().points().collect()
    }

    #[getter]
    fn values(&self) -> Vec<f64> {
        self.inner.values().to_vec()
    }

    fn __len__(&self) -> usize {
        self.inner.values().len()
    }

    fn __repr__(&self) -> String {
        let g = self.inner.grid();
        format!("PotentialProfile(y=[{}, {}], n={})", g.first(), g.last(), g.len())
    }

    #[pyo3(signature = (method = "ode", tol = DEFAULT_VOLTERRA_TOL, max_iter = DEFAULT_VOLTERRA_MAX_ITER))]
    fn jost(&self, method: &str, tol: f64, max_iter: usize) -> PyResult<PyJost> {
        let m = self::method(method, tol, max_iter)?;
        Ok(PyJost { inner: m.solve(&self.inner).map_err(py_err)? })
    }

    /// Jost solve and recovery of `m` on `[xmin, xmax]` with spacing `dx`.
    #[pyo3(signature = (xmin, xmax, dx, method = "ode", tol = DEFAULT_VOLTERRA_TOL, max_iter = DEFAULT_VOLTERRA_MAX_ITER))]
    fn invert(
        &self,
        xmin: f64,
        xmax: f64,
        dx: f64,
        method: &str,
        tol: f64,
        max_iter: usize,
    ) -> PyResult<PyRecovery> {
        let m = self::method(method, tol, max_iter)?;
        let grid = Grid1D::spanning(xmin, xmax, dx).map_err(py_err)?;
        let r = chscatter::invert_pipeline(&self.inner, &grid, m).map_err(py_err)?;
        Ok(r.into())
    }

    /// `{"mu": [...], "lambda": [...], "discarded_trials": n, "scan_points": n}`
    #[pyo3(signature = (tol = DEFAULT_SPECTRUM_TOL))]
    fn eigenvalues<'py>(&self, py: Python<'py>, tol: f64) -> PyResult<Bound<'py, PyDict>> {
        let r = chscatter::find_eigenvalues(&self.inner, tol).map_err(py_err)?;
        let d = PyDict::new(py);
        d.set_item("mu", r.mu)?;
        d.set_item("lambda", r.lambda)?;
        d.set_item("discarded_trials", r.discarded_trials)?;
        d.set_item("scan_points", r.scan_points)?;
        Ok(d)
    }
}

#[pyclass(name = "JostFunction", frozen)]
struct PyJost {
    inner: JostFunction,
}

#[pymethods]
impl PyJost {
    #[getter]
    fn coords(&self) -> Vec<f64> {
        self.inner.grid().points().collect()
    }

    #[getter]
    fn values(&self) -> Vec<f64> {
        self.inner.values().to_vec()
    }

    /// `lim f(y) e^{y/2}` as `y → -∞`, read at the left end.
    #[getter]
    fn amp_minus(&self) -> f64 {
        self.inner.amp_minus()
    }

    fn h(&self) -> PyResult<Vec<f64>> {
        Ok(chscatter::compute_h(&self.inner).map_err(py_err)?.values().to_vec())
    }

    fn admissible_interval(&self) -> PyResult<(f64, f64)> {
        Ok(admissible_interval(&chscatter::compute_h(&self.inner).map_err(py_err)?))
    }

    fn recover(&self, xmin: f64, xmax: f64, dx: f64) -> PyResult<PyRecovery> {
        let grid = Grid1D::spanning(xmin, xmax, dx).map_err(py_err)?;
        Ok(chscatter::recover_m(&self.inner, &grid).map_err(py_err)?.into())
    }

    fn residual(&self, q: PyRef<'_, PyPotential>) -> PyResult<f64> {
        chscatter::jost_residual(&self.inner, &q.inner).map_err(py_err)
    }
}

#[pyclass(name = "RecoveryResult", frozen)]
struct PyRecovery {
    m: MomentumProfile,
    h: Vec<f64>,
    diagnostics: RecoveryDiagnostics,
}

impl From<RecoveryResult> for PyRecovery {
    fn from(r: RecoveryResult) -> Self {
        Self { h: r.h.values().to_vec(), m: r.m, diagnostics: r.diagnostics }
    }
}

#[pymethods]
impl PyRecovery {
    #[getter]
    fn m(&self) -> PyMomentum {
        PyMomentum { inner: self.m.clone() }
    }

    /// `H` on the Jost grid.
    #[getter]
    fn h(&self) -> Vec<f64> {
        self.h.clone()
    }

    #[getter]
    fn diagnostics<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let d = PyDict::new(py);
        let g = &self.diagnostics;
        d.set_item("tail_correction", g.tail_correction)?;
        d.set_item("min_f", g.min_f)?;
        d.set_item("amp_minus", g.amp_minus)?;
        d.set_item("h_range", g.h_range)?;
        d.set_item("admissible_x", g.admissible_x)?;
        Ok(d)
    }
}

/// Solitary wave of speed `c > 2` centred at `y0` in the Liouville variable.
#[pyclass(name = "SolitaryWave", frozen)]
struct PySolitary {
    inner: SolitaryWaveSpec,
}

#[pymethods]
impl PySolitary {
    #[new]
    #[pyo3(signature = (c, y0 = 0.0))]
    fn new(c: f64, y0: f64) -> PyResult<Self> {
        Ok(Self { inner: SolitaryWaveSpec::new(c, y0).map_err(py_err)? })
    }

    #[getter]
    fn c(&self) -> f64 {
        self.inner.c()
    }

    #[getter]
    fn y0(&self) -> f64 {
        self.inner.y0()
    }

    #[getter]
    fn depth(&self) -> f64 {
        self.inner.depth()
    }

    #[getter]
    fn kappa(&self) -> f64 {
        self.inner.kappa()
    }

    fn __repr__(&self) -> String {
        format!("SolitaryWave(c={}, y0={})", self.inner.c(), self.inner.y0())
    }

    fn potential(&self, y: f64) -> f64 {
        self.inner.potential(y)
    }

    /// Sampled potential; without bounds the grid spans the decay width.
    #[pyo3(signature = (dy = 1e-3, ymin = None, ymax = None, decay_tol = DEFAULT_DECAY_TOL))]
    fn potential_profile(
        &self,
        dy: f64,
        ymin: Option<f64>,
        ymax: Option<f64>,
        decay_tol: f64,
    ) -> PyResult<PyPotential> {
        let half = self.inner.decay_half_width(decay_tol);
        let y0 = self.inner.y0();
        let grid = Grid1D::spanning(ymin.unwrap_or(y0 - half), ymax.unwrap_or(y0 + half), dy)
            .map_err(py_err)?;
        Ok(PyPotential { inner: self.inner.potential_profile(&grid).map_err(py_err)? })
    }

    /// Recovered profile `Φ` on the default x-grid.
    #[pyo3(signature = (dx = 1e-3, decay_tol = DEFAULT_DECAY_TOL))]
    fn profile(&self, dx: f64, decay_tol: f64) -> PyResult<PyRecovery> {
        let grid = self.inner.default_xgrid(dx, decay_tol).map_err(py_err)?;
        Ok(chscatter::solitary_profile(&self.inner, &grid).map_err(py_err)?.into())
    }
}

/// Closed-form Jost function of the `c = 8/3` well.
#[pyfunction]
fn solitary_jost_exact(y: f64) -> f64 {
    solitary::solitary_jost_exact(y)
}

#[pyfunction]
fn mu_from_lambda(lambda: f64) -> f64 {
    liouville::mu_from_lambda(lambda)
}

#[pyfunction]
fn lambda_from_mu(mu: f64) -> f64 {
    liouville::lambda_from_mu(mu)
}

#[pymodule]
fn chscatter_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyMomentum>()?;
    m.add_class::<PyPotential>()?;
    m.add_class::<PyJost>()?;
    m.add_class::<PyRecovery>()?;
    m.add_class::<PySolitary>()?;
    m.add_function(wrap_pyfunction!(solitary_jost_exact, m)?)?;
    m.add_function(wrap_pyfunction!(mu_from_lambda, m)?)?;
    m.add_function(wrap_pyfunction!(lambda_from_mu, m)?)?;
    Ok(())
}
