//! Python bindings. Rationals cross the boundary as `fractions.Fraction`
//! on the way out and as anything whose `str()` parses (`int`, `str`,
//! `Fraction`) on the way in.

use std::collections::HashMap;

use hermrc::exactalg::{format_rational, parse_rational, MultiPoly, Rational, VarId};
use hermrc::fourier::{self, FourierSeries, SeriesDefaults};
use hermrc::generators::{self, MinorSpec};
use hermrc::laplacian::{self, OperatorContext};
use hermrc::solver::{self, BracketCoefficients, IndexTuple, Normalization};
use hermrc::verify::{self, Suite};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn rational_from_py(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    parse_rational(&obj.str()?.to_cow()?).map_err(value_err)
}

fn rational_to_py<'py>(py: Python<'py>, r: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((format_rational(r),))
}

fn parse_var(name: &str) -> PyResult<VarId> {
    let p: MultiPoly = name.parse().map_err(value_err)?;
    match p.variables().into_iter().collect::<Vec<_>>().as_slice() {
        [v] if p == MultiPoly::var(*v) => Ok(*v),
        _ => Err(PyValueError::new_err(format!("not a variable: {name:?}"))),
    }
}

fn json_loads<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (text,))
}

/// Sparse polynomial with exact rational coefficients in `w[i,j]`, `z[i,j]`,
/// `x[i,u]`, `y[i,u]`.
#[pyclass(name = "Poly", module = "hermrc_py", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyPoly {
    inner: MultiPoly,
}

#[pymethods]
impl PyPoly {
    #[new]
    #[pyo3(signature = (text = "0"))]
    fn new(text: &str) -> PyResult<Self> {
        Ok(Self { inner: text.parse().map_err(value_err)? })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Self { inner: MultiPoly::from_json_str(text).map_err(value_err)? })
    }

    fn to_json(&self) -> String {
        self.inner.to_json_string()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly('{}')", self.inner)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __add__(&self, other: &Self) -> Self {
        Self { inner: &self.inner + &other.inner }
    }

    fn __sub__(&self, other: &Self) -> Self {
        Self { inner: &self.inner - &other.inner }
    }

    fn __mul__(&self, other: &Self) -> Self {
        Self { inner: &self.inner * &other.inner }
    }

    fn __neg__(&self) -> Self {
        Self { inner: -&self.inner }
    }

    fn __pow__(&self, e: u32, _modulo: Option<u32>) -> Self {
        Self { inner: self.inner.pow(e) }
    }

    #[getter]
    fn num_terms(&self) -> usize {
        self.inner.num_terms()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn derivative(&self, var: &str) -> PyResult<Self> {
        Ok(Self { inner: self.inner.derivative(parse_var(var)?) })
    }

    /// Exact value at `{"w[1,1]": 3, ...}`; every variable must be assigned.
    fn evaluate<'py>(&self, py: Python<'py>, point: &Bound<'py, PyDict>) -> PyResult<Bound<'py, PyAny>> {
        let mut pt = HashMap::new();
        for (k, v) in point.iter() {
            pt.insert(parse_var(&k.str()?.to_cow()?)?, rational_from_py(&v)?);
        }
        rational_to_py(py, &self.inner.evaluate_rational(&pt).map_err(value_err)?)
    }
}

/// Solved bracket coefficients `C(α)`.
#[pyclass(name = "Bracket", module = "hermrc_py", frozen)]
pub struct PyBracket {
    inner: BracketCoefficients,
}

#[pymethods]
impl PyBracket {
    #[staticmethod]
    #[pyo3(signature = (n, v, k1, k2, normalization = "integral"))]
    fn solve(n: usize, v: u32, k1: i64, k2: i64, normalization: &str) -> PyResult<Self> {
        solve_coefficients(n, v, k1, k2, normalization)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Self { inner: BracketCoefficients::from_json_str(text).map_err(value_err)? })
    }

    fn to_json(&self) -> String {
        self.inner.to_json_string()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n
    }

    #[getter]
    fn v(&self) -> u32 {
        self.inner.v
    }

    #[getter]
    fn k1(&self) -> i64 {
        self.inner.k1
    }

    #[getter]
    fn k2(&self) -> i64 {
        self.inner.k2
    }

    #[getter]
    fn normalization(&self) -> String {
        self.inner.normalization.to_string()
    }

    /// `[(alpha, Fraction), ...]` in ascending lexicographic order of `alpha`.
    fn coefficients<'py>(&self, py: Python<'py>) -> PyResult<Vec<(Vec<u32>, Bound<'py, PyAny>)>> {
        self.inner.coeffs.iter().map(|(a, c)| Ok((a.0.clone(), rational_to_py(py, c)?))).collect()
    }

    fn get<'py>(&self, py: Python<'py>, alpha: Vec<u32>) -> PyResult<Bound<'py, PyAny>> {
        rational_to_py(py, &self.inner.get(&IndexTuple(alpha)))
    }

    fn renormalize(&self, normalization: &str) -> PyResult<Self> {
        let norm: Normalization = normalization.parse().map_err(value_err)?;
        Ok(Self { inner: self.inner.renormalize(norm) })
    }

    /// `Σ C(α) Q₀^{α₀}⋯Q_n^{α_n}` expanded in `w`, `z`.
    fn polynomial(&self) -> PyResult<PyPoly> {
        let gens = generators::q_generators(self.inner.n).map_err(value_err)?;
        Ok(PyPoly { inner: solver::assemble_bracket(&self.inner, &gens).map_err(value_err)? })
    }

    fn __repr__(&self) -> String {
        format!(
            "Bracket(n={}, v={}, k1={}, k2={}, normalization={})",
            self.inner.n, self.inner.v, self.inner.k1, self.inner.k2, self.inner.normalization
        )
    }
}

/// Truncated Fourier expansion indexed by Hermitian matrices.
#[pyclass(name = "Series", module = "hermrc_py", frozen)]
pub struct PySeries {
    inner: FourierSeries,
}

#[pymethods]
impl PySeries {
    /// `n = 1` series from `q^0, q^1, ...` coefficients.
    #[staticmethod]
    #[pyo3(signature = (coeffs, weight, d = 1))]
    fn from_q_expansion(coeffs: &Bound<'_, PyList>, weight: i64, d: u64) -> PyResult<Self> {
        let c = coeffs.iter().map(|x| rational_from_py(&x)).collect::<PyResult<Vec<_>>>()?;
        Ok(Self { inner: FourierSeries::from_q_expansion(&c, d, weight) })
    }

    #[staticmethod]
    #[pyo3(signature = (text, weight = None, d = None))]
    fn from_json(text: &str, weight: Option<i64>, d: Option<u64>) -> PyResult<Self> {
        Ok(Self { inner: FourierSeries::from_json_str(text, SeriesDefaults { weight, d }).map_err(value_err)? })
    }

    fn to_json(&self) -> String {
        self.inner.to_json_string()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n
    }

    #[getter]
    fn d(&self) -> u64 {
        self.inner.d
    }

    #[getter]
    fn weight(&self) -> i64 {
        self.inner.weight
    }

    fn __len__(&self) -> usize {
        self.inner.support_len()
    }

    /// For `n = 1` with a trace window: coefficients of `q^0..q^bound`.
    fn q_coefficients<'py>(&self, py: Python<'py>) -> PyResult<Option<Vec<Bound<'py, PyAny>>>> {
        self.inner.q_coefficients().map(|cs| cs.iter().map(|c| rational_to_py(py, c)).collect()).transpose()
    }

    fn is_cusp_supported(&self) -> bool {
        fourier::is_cusp_supported(&self.inner)
    }
}

#[pyfunction]
fn q_generators(n: usize) -> PyResult<Vec<PyPoly>> {
    let g = generators::q_generators(n).map_err(value_err)?;
    Ok(g.polys.into_iter().map(|inner| PyPoly { inner }).collect())
}

/// `Q_a` with rows and columns (1-based) removed.
#[pyfunction]
fn q_minor(n: usize, a: i64, rows: Vec<usize>, cols: Vec<usize>) -> PyResult<PyPoly> {
    Ok(PyPoly { inner: generators::q_minor(n, a, &MinorSpec::new(rows, cols)).map_err(value_err)? })
}

#[pyfunction]
#[pyo3(signature = (n, v, k1, k2, normalization = "integral"))]
fn solve_coefficients(n: usize, v: u32, k1: i64, k2: i64, normalization: &str) -> PyResult<PyBracket> {
    let norm: Normalization = normalization.parse().map_err(value_err)?;
    Ok(PyBracket { inner: solver::solve_coefficients(n, v, k1, k2, norm).map_err(value_err)? })
}

/// Unit-normalized classical coefficients keyed by `(r, s)`.
#[pyfunction]
fn classical_coefficients<'py>(py: Python<'py>, k1: i64, k2: i64, v: u32) -> PyResult<Bound<'py, PyDict>> {
    let out = PyDict::new(py);
    for ((r, s), c) in solver::classical_rc_coefficients(k1, k2, v) {
        out.set_item((r, s), rational_to_py(py, &c)?)?;
    }
    Ok(out)
}

#[pyfunction]
fn laplace_total(q: &PyPoly, n: usize, k1: i64, k2: i64) -> PyResult<PyPoly> {
    let ctx = OperatorContext::new(n, k1, k2).map_err(value_err)?;
    Ok(PyPoly { inner: laplacian::laplace_total(&q.inner, &ctx) })
}

#[pyfunction]
fn apply_bracket(f1: &PySeries, f2: &PySeries, bracket: &PyBracket) -> PyResult<PySeries> {
    Ok(PySeries { inner: fourier::apply_bracket(&f1.inner, &f2.inner, &bracket.inner).map_err(value_err)? })
}

#[pyfunction]
fn check_pluriharmonic(q: &PyPoly, n: usize, k1: i64, k2: i64) -> PyResult<bool> {
    Ok(verify::check_pluriharmonic(&q.inner, n, k1, k2).map_err(value_err)?.passed())
}

#[pyfunction]
#[pyo3(signature = (n, v, seed = 0))]
fn dimension_basis(n: usize, v: u32, seed: u64) -> PyResult<bool> {
    Ok(verify::dimension_basis(n, v, seed).map_err(value_err)?.passed())
}

#[pyfunction]
#[pyo3(signature = (n, v, k1, k2, trials = 100, seed = 0))]
fn check_cusp_vanishing(n: usize, v: u32, k1: i64, k2: i64, trials: usize, seed: u64) -> PyResult<bool> {
    Ok(fourier::check_cusp_vanishing(n, v, k1, k2, trials, seed).map_err(value_err)?.passed())
}

/// Runs a verification suite and returns the reports as dicts.
#[pyfunction]
#[pyo3(signature = (n, v, k1, k2, seed = 0, suite = "fast"))]
fn verify_suite<'py>(
    py: Python<'py>,
    n: usize,
    v: u32,
    k1: i64,
    k2: i64,
    seed: u64,
    suite: &str,
) -> PyResult<Vec<Bound<'py, PyAny>>> {
    let suite: Suite = suite.parse().map_err(value_err)?;
    let reports = verify::run_suite(n, v, k1, k2, seed, suite).map_err(value_err)?;
    reports.iter().map(|r| json_loads(py, &r.to_json_line())).collect()
}

#[pyfunction]
fn weight_condition<'py>(py: Python<'py>, d: u64, v: u32) -> PyResult<Bound<'py, PyDict>> {
    let w = fourier::weight_condition(d, v);
    let out = PyDict::new(py);
    out.set_item("d", w.d)?;
    out.set_item("v", w.v)?;
    out.set_item("required_divisor", w.required_divisor)?;
    out.set_item("satisfied", w.satisfied)?;
    Ok(out)
}

#[pymodule]
fn hermrc_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPoly>()?;
    m.add_class::<PyBracket>()?;
    m.add_class::<PySeries>()?;
    m.add_function(wrap_pyfunction!(q_generators, m)?)?;
    m.add_function(wrap_pyfunction!(q_minor, m)?)?;
    m.add_function(wrap_pyfunction!(solve_coefficients, m)?)?;
    m.add_function(wrap_pyfunction!(classical_coefficients, m)?)?;
    m.add_function(wrap_pyfunction!(laplace_total, m)?)?;
    m.add_function(wrap_pyfunction!(apply_bracket, m)?)?;
    m.add_function(wrap_pyfunction!(check_pluriharmonic, m)?)?;
    m.add_function(wrap_pyfunction!(dimension_basis, m)?)?;
    m.add_function(wrap_pyfunction!(check_cusp_vanishing, m)?)?;
    m.add_function(wrap_pyfunction!(verify_suite, m)?)?;
    m.add_function(wrap_pyfunction!(weight_condition, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_var_accepts_only_variables() {
        assert_eq!(parse_var("w[1,2]").unwrap(), VarId::w(1, 2));
        assert_eq!(parse_var("z[2,1]").unwrap(), VarId::z(2, 1));
    }
}
