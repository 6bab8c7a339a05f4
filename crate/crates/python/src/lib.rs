//! Python bindings. Reports come back as plain dicts with decimal-string numerics.

use num_bigint::BigInt;
use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyAny;

use pisotlab::approx::{decay_rate, nearest_integer_distance, scan, SearchSpec};
use pisotlab::classify::{classify_number, pisot_power_search, pseudo_pisot_tuple};
use pisotlab::heights::weil_height;
use pisotlab::partition::{equivalence_partition, lemma3_check};
use pisotlab::products::{evaluate_product, prefix_for_digits, ProductSpec};
use pisotlab::{Ctx, Error, IntPoly, RealBall};

fn err(e: Error) -> PyErr {
    if e.is_precision() {
        PyArithmeticError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn ctx(precision: u32, ceiling: u32) -> Ctx {
    Ctx::new(precision, ceiling)
}

fn to_py<'py, T: serde::Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    let s = serde_json::to_string(v).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (s,))
}

/// Algebraic number given by its minimal polynomial and a root index in
/// canonical order (real part descending, then imaginary part descending).
#[pyclass(name = "AlgebraicNumber", module = "pisotlab", frozen, from_py_object)]
#[derive(Clone)]
struct PyAlgebraic(pisotlab::AlgebraicNumber);

#[pymethods]
impl PyAlgebraic {
    /// Parse `"poly=c0,c1,...;root=k"` or `"rat=p/q"`.
    #[new]
    fn new(literal: &str) -> PyResult<Self> {
        pisotlab::AlgebraicNumber::parse(literal, &Ctx::default()).map(PyAlgebraic).map_err(err)
    }

    /// Root `root` of the irreducible polynomial with coefficients `c0, c1, ...`.
    #[staticmethod]
    fn from_poly(coeffs: Vec<BigInt>, root: usize) -> PyResult<Self> {
        pisotlab::AlgebraicNumber::new(IntPoly::new(coeffs), root, &Ctx::default()).map(PyAlgebraic).map_err(err)
    }

    #[getter]
    fn minpoly(&self) -> Vec<BigInt> {
        self.0.minpoly().coeffs().to_vec()
    }

    #[getter]
    fn root_index(&self) -> usize {
        self.0.root_index()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    fn literal(&self) -> String {
        self.0.literal()
    }

    fn is_real(&self) -> PyResult<bool> {
        self.0.is_real(&Ctx::default()).map_err(err)
    }

    fn is_algebraic_integer(&self) -> bool {
        self.0.is_algebraic_integer()
    }

    /// Floating-point approximation as `(re, im)`.
    fn approx(&self) -> PyResult<(f64, f64)> {
        self.0.to_f64(&Ctx::default()).map_err(err)
    }

    /// Decimal enclosure `(mid, rad)` of the real part, or of the value when real.
    fn enclosure(&self, bits: u32) -> PyResult<(String, String)> {
        let z = self.0.enclosure(bits, &Ctx::default()).map_err(err)?;
        Ok(pisotlab::interval::decimal::ball_to_decimal(&z.re))
    }

    fn conjugates(&self) -> Vec<PyAlgebraic> {
        self.0.all_conjugates().into_iter().map(PyAlgebraic).collect()
    }

    fn __pow__(&self, n: u64, _modulo: Option<u64>) -> PyResult<Self> {
        self.0.pow(n, &Ctx::default()).map(PyAlgebraic).map_err(err)
    }

    fn __neg__(&self) -> PyResult<Self> {
        self.0.negate(&Ctx::default()).map(PyAlgebraic).map_err(err)
    }

    fn inverse(&self) -> PyResult<Self> {
        self.0.inverse(&Ctx::default()).map(PyAlgebraic).map_err(err)
    }

    fn __eq__(&self, other: &PyAlgebraic) -> bool {
        self.0 == other.0
    }

    fn __hash__(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.0.literal().hash(&mut h);
        h.finish()
    }

    fn __repr__(&self) -> String {
        format!("AlgebraicNumber({:?})", self.0.literal())
    }
}

fn unwrap_all(ts: &[PyAlgebraic]) -> Vec<pisotlab::AlgebraicNumber> {
    ts.iter().map(|t| t.0.clone()).collect()
}

#[pyfunction]
#[pyo3(signature = (a, precision = 128, ceiling = 65536))]
fn classify<'py>(py: Python<'py>, a: &PyAlgebraic, precision: u32, ceiling: u32) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &classify_number(&a.0, &ctx(precision, ceiling)).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (numbers, precision = 128, ceiling = 65536))]
fn tuple_check<'py>(py: Python<'py>, numbers: Vec<PyAlgebraic>, precision: u32, ceiling: u32) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &pseudo_pisot_tuple(&unwrap_all(&numbers), &ctx(precision, ceiling)).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (a, bits = 128, ceiling = 65536))]
fn height<'py>(py: Python<'py>, a: &PyAlgebraic, bits: u32, ceiling: u32) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &weil_height(&a.0, bits, &ctx(bits, ceiling)).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (numbers, lemma_r = None, precision = 128, ceiling = 65536))]
fn partition<'py>(
    py: Python<'py>,
    numbers: Vec<PyAlgebraic>,
    lemma_r: Option<u64>,
    precision: u32,
    ceiling: u32,
) -> PyResult<Bound<'py, PyAny>> {
    let c = ctx(precision, ceiling);
    let ts = unwrap_all(&numbers);
    let p = equivalence_partition(&ts, &c).map_err(err)?;
    let l = lemma3_check(&ts, lemma_r.unwrap_or(p.r), &c).map_err(err)?;
    to_py(py, &serde_json::json!({ "partition": p, "lemma3": l }))
}

#[pyfunction]
#[pyo3(signature = (a, m_max = 8, precision = 128, ceiling = 65536))]
fn pisot_power<'py>(py: Python<'py>, a: &PyAlgebraic, m_max: u64, precision: u32, ceiling: u32) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &pisot_power_search(&a.0, m_max, &ctx(precision, ceiling)).map_err(err)?)
}

/// Grid scan; `spec` is the JSON search spec as a string.
#[pyfunction]
#[pyo3(signature = (spec, precision = 128, ceiling = 65536))]
fn search<'py>(py: Python<'py>, spec: &str, precision: u32, ceiling: u32) -> PyResult<Bound<'py, PyAny>> {
    let s: SearchSpec = serde_json::from_str(spec).map_err(|e| PyValueError::new_err(e.to_string()))?;
    to_py(py, &scan(&s, &ctx(precision, ceiling)).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (a, n_max = 60, precision = 128, ceiling = 65536))]
fn decay<'py>(py: Python<'py>, a: &PyAlgebraic, n_max: u64, precision: u32, ceiling: u32) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &decay_rate(&a.0, n_max, &ctx(precision, ceiling)).map_err(err)?)
}

/// Product certificate; `spec` is the JSON product spec as a string.
#[pyfunction]
#[pyo3(signature = (spec, digits = None, precision = 128, ceiling = 65536))]
fn product<'py>(py: Python<'py>, spec: &str, digits: Option<u32>, precision: u32, ceiling: u32) -> PyResult<Bound<'py, PyAny>> {
    let c = ctx(precision, ceiling);
    let mut s: ProductSpec = serde_json::from_str(spec).map_err(|e| PyValueError::new_err(e.to_string()))?;
    if let Some(d) = digits {
        s.m = prefix_for_digits(&s, d, &c).map_err(err)?;
    }
    to_py(py, &evaluate_product(&s, &c).map_err(err)?)
}

/// Distance from `a^n` to the nearest integer as a decimal enclosure `(mid, rad)`.
#[pyfunction]
#[pyo3(signature = (a, n, bits = 128))]
fn power_distance(a: &PyAlgebraic, n: u64, bits: u32) -> PyResult<(String, String)> {
    let x: RealBall = a.0.eval_power_ball(n, bits, &Ctx::default()).map_err(err)?.re;
    Ok(pisotlab::interval::decimal::ball_to_decimal(nearest_integer_distance(&x).dist()))
}

#[pymodule]
#[pyo3(name = "pisotlab")]
fn pisotlab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAlgebraic>()?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(tuple_check, m)?)?;
    m.add_function(wrap_pyfunction!(height, m)?)?;
    m.add_function(wrap_pyfunction!(partition, m)?)?;
    m.add_function(wrap_pyfunction!(pisot_power, m)?)?;
    m.add_function(wrap_pyfunction!(search, m)?)?;
    m.add_function(wrap_pyfunction!(decay, m)?)?;
    m.add_function(wrap_pyfunction!(product, m)?)?;
    m.add_function(wrap_pyfunction!(power_distance, m)?)?;
    Ok(())
}
