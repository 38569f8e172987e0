//! Python bindings: `import knotinv`.

use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use knotinv_core::cli::{analyze_matrix, diagonalize_report, exit_code, Config};
use knotinv_core::decompose::{glue, GlueResult};
use knotinv_core::invariants::KnotReport;
use knotinv_core::laurent::LaurentPoly;
use knotinv_core::seifert::SeifertMatrix;
use knotinv_core::Error;

create_exception!(knotinv, HypothesisError, PyValueError, "A mathematical hypothesis of the operation fails.");

fn to_py(e: Error) -> PyErr {
    match exit_code(&e) {
        2 => PyValueError::new_err(e.to_string()),
        3 => HypothesisError::new_err(format!("{}: {e}", e.kind())),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn json<T: serde::Serialize>(v: &T) -> PyResult<String> {
    serde_json::to_string(v).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

/// Laurent polynomial with rational coefficients, e.g. `"2*t^-1 - 3 + 2*t"`.
#[pyclass(name = "LaurentPoly", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct PyLaurent(LaurentPoly);

#[pymethods]
impl PyLaurent {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(PyLaurent).map_err(to_py)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("LaurentPoly('{}')", self.0)
    }

    fn __add__(&self, o: &Self) -> Self {
        PyLaurent(&self.0 + &o.0)
    }

    fn __sub__(&self, o: &Self) -> Self {
        PyLaurent(&self.0 - &o.0)
    }

    fn __mul__(&self, o: &Self) -> Self {
        PyLaurent(&self.0 * &o.0)
    }

    fn __neg__(&self) -> Self {
        PyLaurent(-&self.0)
    }

    /// `p(1/t)`.
    fn involute(&self) -> Self {
        PyLaurent(self.0.involute())
    }

    fn is_palindromic(&self) -> bool {
        self.0.is_palindromic()
    }

    /// `(low, [coefficients as "p/q" strings])`.
    fn coeffs(&self) -> (i64, Vec<String>) {
        (self.0.low(), self.0.coeffs().iter().map(|c| c.to_string()).collect())
    }

    /// Value at `e^{2πix}`.
    fn eval_circle(&self, x: f64) -> (f64, f64) {
        let z = num_complex::Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * x);
        let v = self.0.eval_complex(z);
        (v.re, v.im)
    }
}

/// Knot invariants from a Seifert matrix.
#[pyclass(name = "Report", frozen, get_all)]
struct PyReport {
    name: Option<String>,
    alexander: String,
    genus: usize,
    mu: usize,
    eta: usize,
    n_r: usize,
    unknotting_lower_bound: usize,
    warnings: Vec<String>,
    json: String,
    /// `(x, sigma, eta)` rows of the plot.
    plot: Vec<(f64, i64, usize)>,
}

impl PyReport {
    fn new(r: KnotReport, plot: Vec<(f64, i64, usize)>) -> PyResult<Self> {
        Ok(PyReport {
            json: json(&r)?,
            name: r.name,
            alexander: r.alexander.to_string(),
            genus: r.genus,
            mu: r.mu,
            eta: r.eta,
            n_r: r.n_r,
            unknotting_lower_bound: r.unknotting_lower_bound,
            warnings: r.warnings,
            plot,
        })
    }
}

#[pymethods]
impl PyReport {
    fn __repr__(&self) -> String {
        format!("Report(mu={}, eta={}, n_r={})", self.mu, self.eta, self.n_r)
    }
}

#[pyclass(name = "SeifertMatrix", frozen, from_py_object)]
#[derive(Clone)]
struct PySeifert(SeifertMatrix);

#[pymethods]
impl PySeifert {
    #[new]
    #[pyo3(signature = (rows, name = None))]
    fn new(rows: Vec<Vec<i64>>, name: Option<String>) -> PyResult<Self> {
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        let mut v = SeifertMatrix::from_i64(&refs).map_err(to_py)?;
        if let Some(n) = name {
            v = v.with_name(n);
        }
        Ok(PySeifert(v))
    }

    /// `name;[[a,b],[c,d]]` row syntax.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        SeifertMatrix::parse_brackets(text).map(PySeifert).map_err(to_py)
    }

    /// `T(2, 2k + 1)`.
    #[staticmethod]
    fn torus(k: usize) -> Self {
        PySeifert(SeifertMatrix::torus_2(k))
    }

    #[getter]
    fn genus(&self) -> usize {
        self.0.genus()
    }

    fn alexander(&self) -> PyResult<PyLaurent> {
        self.0.alexander().map(PyLaurent).map_err(to_py)
    }

    fn connected_sum(&self, o: &Self) -> Self {
        PySeifert(self.0.connected_sum(&o.0))
    }

    fn mirror(&self) -> Self {
        PySeifert(self.0.mirror_reverse())
    }

    #[pyo3(signature = (plot_samples = 512))]
    fn analyze(&self, plot_samples: usize) -> PyResult<PyReport> {
        let config = Config { plot_samples, ..Config::default() };
        config.validate().map_err(|e| PyValueError::new_err(e.message))?;
        let (r, plot) = analyze_matrix(&self.0, &config).map_err(to_py)?;
        PyReport::new(r, plot)
    }
}

#[pyclass(name = "GlueResult", frozen, get_all)]
struct PyGlue {
    epsilon: i8,
    merged: PyLaurent,
    p: PyLaurent,
    q: PyLaurent,
    residual: f64,
}

impl From<GlueResult> for PyGlue {
    fn from(r: GlueResult) -> Self {
        PyGlue {
            epsilon: r.epsilon,
            merged: PyLaurent(r.merged),
            p: PyLaurent(r.p),
            q: PyLaurent(r.q),
            residual: r.witness.residual,
        }
    }
}

/// Replace `diag(a, b)` by the single entry `ε a b`.
#[pyfunction(name = "glue")]
fn py_glue(a: &PyLaurent, b: &PyLaurent) -> PyResult<PyGlue> {
    glue(&a.0, &b.0).map(PyGlue::from).map_err(to_py)
}

/// Minimal diagonal form, as JSON, of any input `knotinv diagonalize` accepts.
#[pyfunction]
fn diagonalize(input_json: &str) -> PyResult<String> {
    let r = diagonalize_report(input_json).map_err(|e| match e.code {
        3 => HypothesisError::new_err(format!("{}: {}", e.kind, e.message)),
        2 => PyValueError::new_err(e.message),
        _ => PyRuntimeError::new_err(e.message),
    })?;
    json(&r)
}

#[pymodule]
fn knotinv(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add("HypothesisError", m.py().get_type::<HypothesisError>())?;
    m.add_class::<PyLaurent>()?;
    m.add_class::<PySeifert>()?;
    m.add_class::<PyReport>()?;
    m.add_class::<PyGlue>()?;
    m.add_function(wrap_pyfunction!(py_glue, m)?)?;
    m.add_function(wrap_pyfunction!(diagonalize, m)?)?;
    Ok(())
}
