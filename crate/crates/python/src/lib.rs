//! Python bindings. Reports come back as dicts, decoded from the same JSON
//! the command line prints.

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use serde::Serialize;
use serde_json::Value;

use ::uplab as core;
use core::{io, Error};

create_exception!(
    uplab,
    UplabError,
    PyException,
    "Raised with (code, detail) for any library error."
);

fn err(e: Error) -> PyErr {
    UplabError::new_err((e.code(), e.to_string()))
}

fn parse(text: &str) -> PyResult<Value> {
    serde_json::from_str(text).map_err(|e| err(Error::InvalidInput(e.to_string())))
}

fn to_py<T: Serialize>(py: Python<'_>, v: &T) -> PyResult<Py<PyAny>> {
    let s = serde_json::to_string(v).map_err(|e| err(Error::InvalidInput(e.to_string())))?;
    Ok(py.import("json")?.call_method1("loads", (s,))?.unbind())
}

/// A finite set of points in P^2 over a finite field or Q.
#[pyclass(name = "Points", frozen)]
struct Points(core::PointConfiguration);

#[pymethods]
impl Points {
    /// Points with integer coordinates over F_p (or F_{p^m}, coordinates read as constants).
    #[new]
    #[pyo3(signature = (p, points, m = 1))]
    fn new(p: u64, points: Vec<[i64; 3]>, m: usize) -> PyResult<Self> {
        let field = core::make_extension(p, m).map_err(err)?;
        core::PointConfiguration::from_i64(&field, &points, "points")
            .map(Points)
            .map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        io::points_from_json(&parse(text)?).map(Points).map_err(err)
    }

    fn to_json(&self) -> String {
        io::points_to_json(&self.0).to_string()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        format!("Points({} over {})", self.0.len(), self.0.field())
    }

    /// {"H", "delta", "a1", "a2", "t", "shape_warnings"}
    fn hilbert(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let p = core::profile(&self.0).map_err(err)?;
        let v = serde_json::json!({
            "H": p.values,
            "delta": p.deltas,
            "a1": p.a1,
            "a2": p.a2,
            "t": p.t,
            "decreasing_type": core::is_decreasing_type(&p),
            "shape_warnings": p.shape_warnings,
        });
        to_py(py, &v)
    }

    fn hilbert_value(&self, degree: usize) -> usize {
        core::hilbert::hilbert_value(&self.0, degree)
    }

    /// Exhaustive unless `samples` is given.
    #[pyo3(signature = (samples = None, seed = 0, budget = core::upp::DEFAULT_UPP_BUDGET))]
    fn upp(&self, py: Python<'_>, samples: Option<usize>, seed: u64, budget: u128) -> PyResult<Py<PyAny>> {
        let r = match samples {
            Some(n) => core::upp_check(&self.0, core::UppMode::Sampled, n, seed, budget),
            None => core::upp_check(&self.0, core::UppMode::Exhaustive, 0, seed, budget),
        }
        .map_err(err)?;
        to_py(py, &r)
    }

    fn minimal_degree(&self) -> usize {
        core::minimal_degree(&self.0)
    }

    /// Basis of the degree-`degree` curves through the points.
    fn linear_system(&self, degree: usize) -> Vec<Form> {
        core::linear_system(&self.0, degree)
            .basis
            .into_iter()
            .map(Form)
            .collect()
    }

    /// Common factor of the degree-`degree` curves through the points.
    fn gcd(&self, degree: usize) -> PyResult<Form> {
        core::gcd_of_system(&core::linear_system(&self.0, degree))
            .map(Form)
            .map_err(err)
    }

    fn collinear_triples(&self) -> Vec<[usize; 3]> {
        core::upp::collinear_triples(&self.0)
    }
}

/// A ternary form.
#[pyclass(name = "Form", frozen)]
struct Form(core::TernaryForm);

#[pymethods]
impl Form {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        io::form_from_json(&parse(text)?).map(Form).map_err(err)
    }

    fn to_json(&self) -> String {
        io::form_to_json(&self.0).to_string()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    /// "true", "false" or "inconclusive".
    #[pyo3(signature = (max_conj, seed = 0))]
    fn absolutely_irreducible(&self, max_conj: usize, seed: u64) -> PyResult<String> {
        let v = core::curves::IrreducibilityTester::new(self.0.field(), max_conj, seed)
            .test(&self.0)
            .map_err(err)?;
        Ok(serde_json::to_value(v).unwrap().as_str().unwrap().to_string())
    }

    fn __repr__(&self) -> String {
        format!("Form({})", self.to_json())
    }
}

/// {"d", "h", "g", "n", "case", "requires_upp"}
#[pyfunction]
fn prop2(py: Python<'_>, n: usize, g: usize) -> PyResult<Py<PyAny>> {
    to_py(py, &core::classify_prop2(n, g).map_err(err)?)
}

/// Section of (t, t^q, t^{q^2}) by a plane through three of its points.
#[pyfunction]
#[pyo3(signature = (p, f, seed, verify = true, ext_m = 3, members = 50))]
fn rathmann(
    py: Python<'_>,
    p: u64,
    f: usize,
    seed: u64,
    verify: bool,
    ext_m: usize,
    members: usize,
) -> PyResult<Py<PyAny>> {
    let r = py
        .detach(|| core::rathmann_pipeline(p, f, ext_m, members, seed, verify))
        .map_err(err)?;
    to_py(py, &r)
}

#[pyfunction]
fn verify_theorem3(
    py: Python<'_>,
    curve_json: &str,
    trials: usize,
    members: usize,
    seed: u64,
    max_ext: usize,
) -> PyResult<Py<PyAny>> {
    let curve = io::curve_from_json(&parse(curve_json)?).map_err(err)?;
    let opts = core::TrialOptions::for_curve(&curve);
    let r = py
        .detach(|| core::verify_theorem3(&curve, trials, members, seed, max_ext, &opts))
        .map_err(err)?;
    to_py(py, &r)
}

#[pyfunction]
fn verify_decreasing_type(
    py: Python<'_>,
    curve_json: &str,
    trials: usize,
    seed: u64,
    max_ext: usize,
) -> PyResult<Py<PyAny>> {
    let curve = io::curve_from_json(&parse(curve_json)?).map_err(err)?;
    let opts = core::TrialOptions::for_curve(&curve);
    let r = py
        .detach(|| core::verify_decreasing_type(&curve, trials, seed, max_ext, &opts))
        .map_err(err)?;
    to_py(py, &r)
}

/// Runs the command line with these arguments; returns (exit code, output).
#[pyfunction]
fn run_cli(py: Python<'_>, args: Vec<String>) -> (i32, String) {
    let out = py.detach(|| core::cli::run(std::iter::once("uplab".to_string()).chain(args)));
    (out.code, out.report)
}

#[pymodule]
fn uplab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("UplabError", m.py().get_type::<UplabError>())?;
    m.add_class::<Points>()?;
    m.add_class::<Form>()?;
    m.add_function(wrap_pyfunction!(prop2, m)?)?;
    m.add_function(wrap_pyfunction!(rathmann, m)?)?;
    m.add_function(wrap_pyfunction!(verify_theorem3, m)?)?;
    m.add_function(wrap_pyfunction!(verify_decreasing_type, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
