//! Python bindings.
//!
//! Exact values cross the boundary as `fractions.Fraction`; approximate
//! values as `(value, bound)` decimal strings.

use std::sync::Arc;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyList;

use hypereuler::exact_arith::{bernoulli_range, faulhaber_coeffs, format_rational};
use hypereuler::numerics::{ApproxValue, NumericConfig, TailMethod};
use hypereuler::{Error, Rational};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::ResourceGuard { .. } | Error::IterationCap { .. } | Error::Consistency(_) => {
            PyRuntimeError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn fraction<'py>(py: Python<'py>, q: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((format_rational(q),))
}

fn to_py_json<'py, T: serde::Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    let s = serde_json::to_string(v).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.getattr("loads")?.call1((s,))
}

fn approx(v: &ApproxValue) -> (String, String) {
    (v.value_string(), v.bound_string())
}

/// Coefficient triangle a(r, m, j) for a fixed r.
#[pyclass(name = "CoeffTable", frozen)]
struct PyCoeffTable {
    inner: Arc<hypereuler::CoeffTable>,
}

#[pymethods]
impl PyCoeffTable {
    #[getter]
    fn r(&self) -> u32 {
        self.inner.r()
    }

    #[getter]
    fn route(&self) -> String {
        self.inner.route().to_string()
    }

    /// a(r, m, j), or None outside the triangle.
    fn a<'py>(&self, py: Python<'py>, m: i64, j: i64) -> PyResult<Option<Bound<'py, PyAny>>> {
        self.inner.a(m, j).map(|q| fraction(py, q)).transpose()
    }

    /// List of `(m, j, Fraction)`.
    fn entries<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyList>> {
        let items = self
            .inner
            .entries()
            .map(|(m, j, q)| Ok((m, j, fraction(py, q)?)))
            .collect::<PyResult<Vec<_>>>()?;
        PyList::new(py, items)
    }

    fn to_json<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py_json(py, &self.inner.to_json())
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    fn to_latex(&self) -> String {
        self.inner.to_latex()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("CoeffTable(r={}, route={})", self.inner.r(), self.inner.route())
    }
}

/// Linear combination of Euler sums and zeta values.
#[pyclass(name = "EulerSumExpr", frozen)]
struct PyEulerSumExpr {
    inner: hypereuler::EulerSumExpr,
}

#[pymethods]
impl PyEulerSumExpr {
    /// List of `(p, q, Fraction)` for the S(p, q) terms.
    fn terms<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyList>> {
        let items = self
            .inner
            .terms()
            .map(|(s, c)| Ok((s.p(), s.q(), fraction(py, c)?)))
            .collect::<PyResult<Vec<_>>>()?;
        PyList::new(py, items)
    }

    fn to_json<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py_json(py, &self.inner.to_json())
    }

    fn to_latex(&self) -> String {
        self.inner.to_latex()
    }

    /// Certified numerical value as `(value, bound)`.
    #[pyo3(signature = (digits = 8))]
    fn evaluate(&self, py: Python<'_>, digits: u32) -> PyResult<(String, String)> {
        let e = &self.inner;
        py.detach(|| hypereuler::evaluate_expr(e, digits)).map(|v| approx(&v)).map_err(py_err)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("EulerSumExpr({:?})", self.inner.to_string())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }
}

/// Outcome of comparing direct summation with the decomposition.
#[pyclass(name = "VerifyReport", frozen)]
struct PyVerifyReport {
    inner: hypereuler::VerifyReport,
}

#[pymethods]
impl PyVerifyReport {
    #[getter]
    fn passed(&self) -> bool {
        self.inner.pass
    }

    #[getter]
    fn direct(&self) -> (String, String) {
        approx(&self.inner.direct)
    }

    #[getter]
    fn decomposed(&self) -> (String, String) {
        approx(&self.inner.decomposed)
    }

    #[getter]
    fn expression(&self) -> PyEulerSumExpr {
        PyEulerSumExpr { inner: self.inner.expression.clone() }
    }

    fn to_json<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py_json(py, &self.inner.to_json())
    }

    fn __str__(&self) -> String {
        self.inner.to_text()
    }
}

/// B_0^+ .. B_n^+ as Fractions (B_1^+ = 1/2).
#[pyfunction]
fn bernoulli<'py>(py: Python<'py>, n: usize) -> PyResult<Bound<'py, PyList>> {
    let items = bernoulli_range(n).iter().map(|q| fraction(py, q)).collect::<PyResult<Vec<_>>>()?;
    PyList::new(py, items)
}

/// Coefficients c_0 .. c_k of the power-sum polynomial of degree k+1.
#[pyfunction]
fn faulhaber<'py>(py: Python<'py>, k: u32) -> PyResult<Bound<'py, PyList>> {
    let items = faulhaber_coeffs(k).iter().map(|q| fraction(py, q)).collect::<PyResult<Vec<_>>>()?;
    PyList::new(py, items)
}

#[pyfunction]
#[pyo3(signature = (r, route = "a"))]
fn coeff_table(py: Python<'_>, r: u32, route: &str) -> PyResult<PyCoeffTable> {
    let inner = py
        .detach(|| match route {
            "a" => Ok(hypereuler::a_table(r)),
            "b" => Ok(hypereuler::b_table(r)),
            other => Err(other.to_string()),
        })
        .map_err(|o| PyValueError::new_err(format!("route must be 'a' or 'b', got {o:?}")))?
        .map_err(py_err)?;
    Ok(PyCoeffTable { inner })
}

/// H_n^{(p,r)} from the nested-sum definition.
#[pyfunction]
fn h_def<'py>(py: Python<'py>, p: u32, r: u32, n: u64) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &hypereuler::h_def(p, r, n).map_err(py_err)?)
}

/// H_n^{(p,r)} from the coefficient expansion.
#[pyfunction]
fn h_closed<'py>(py: Python<'py>, p: u32, r: u32, n: u64) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &hypereuler::h_closed(p, r, n).map_err(py_err)?)
}

#[pyfunction]
fn conway_guy<'py>(py: Python<'py>, r: u32, n: u64) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &hypereuler::conway_guy(r, n).map_err(py_err)?)
}

#[pyfunction]
#[pyo3(signature = (p, r, m, normalize = false, reduce_s1 = false))]
fn decompose(p: u32, r: u32, m: i64, normalize: bool, reduce_s1: bool) -> PyResult<PyEulerSumExpr> {
    let inner = if normalize || reduce_s1 {
        hypereuler::decompose_normalized(p, r, m, reduce_s1)
    } else {
        hypereuler::decompose(p, r, m)
    }
    .map_err(py_err)?;
    Ok(PyEulerSumExpr { inner })
}

/// zeta(s) as `(value, bound)`.
#[pyfunction]
#[pyo3(signature = (s, digits = 8))]
fn zeta_value(py: Python<'_>, s: u32, digits: u32) -> PyResult<(String, String)> {
    py.detach(|| hypereuler::zeta_value(s, digits)).map(|v| approx(&v)).map_err(py_err)
}

/// S(p, q) as `(value, bound)`.
#[pyfunction]
#[pyo3(signature = (p, q, digits = 8))]
fn euler_sum_value(py: Python<'_>, p: i64, q: i64, digits: u32) -> PyResult<(String, String)> {
    py.detach(|| hypereuler::euler_sum_value(p, q, digits)).map(|v| approx(&v)).map_err(py_err)
}

/// Direct value of sum_n H_n^{(p,r)} / n^m as `(value, bound)`.
#[pyfunction]
#[pyo3(signature = (p, r, m, digits = 8))]
fn zeta_h(py: Python<'_>, p: u32, r: u32, m: i64, digits: u32) -> PyResult<(String, String)> {
    py.detach(|| hypereuler::zeta_h_direct(p, r, m, digits)).map(|v| approx(&v)).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (p, r, m, digits = 8, comparison_tail = false, max_terms = 10_000_000))]
fn verify(
    py: Python<'_>,
    p: u32,
    r: u32,
    m: i64,
    digits: u32,
    comparison_tail: bool,
    max_terms: u64,
) -> PyResult<PyVerifyReport> {
    let cfg = NumericConfig {
        max_terms,
        method: if comparison_tail { TailMethod::Comparison } else { TailMethod::EulerMaclaurin },
        ..NumericConfig::default()
    };
    let inner = py.detach(|| hypereuler::numerics::verify_with(p, r, m, digits, &cfg)).map_err(py_err)?;
    Ok(PyVerifyReport { inner })
}

/// Reports for the four coefficient conjectures, as JSON-shaped dicts.
#[pyfunction]
#[pyo3(signature = (r_max = 20))]
fn conjectures<'py>(py: Python<'py>, r_max: u32) -> PyResult<Bound<'py, PyAny>> {
    let reports = py.detach(|| hypereuler::conjecture_lab::check_all(r_max)).map_err(py_err)?;
    to_py_json(py, &reports.iter().map(|r| r.to_json()).collect::<Vec<_>>())
}

#[pymodule]
fn pyhypereuler(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCoeffTable>()?;
    m.add_class::<PyEulerSumExpr>()?;
    m.add_class::<PyVerifyReport>()?;
    m.add_function(wrap_pyfunction!(bernoulli, m)?)?;
    m.add_function(wrap_pyfunction!(faulhaber, m)?)?;
    m.add_function(wrap_pyfunction!(coeff_table, m)?)?;
    m.add_function(wrap_pyfunction!(h_def, m)?)?;
    m.add_function(wrap_pyfunction!(h_closed, m)?)?;
    m.add_function(wrap_pyfunction!(conway_guy, m)?)?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    m.add_function(wrap_pyfunction!(zeta_value, m)?)?;
    m.add_function(wrap_pyfunction!(euler_sum_value, m)?)?;
    m.add_function(wrap_pyfunction!(zeta_h, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(conjectures, m)?)?;
    Ok(())
}
