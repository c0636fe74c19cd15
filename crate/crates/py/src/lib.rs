//! Python bindings: rings, polynomials and ideals, plus the core,
//! counterexample and conjecture entry points. Reports come back as the
//! same dictionaries the command line prints with `--output json`.

use idealcore::core_engine::{core, core_with_reduction, CoreConfig, DEFAULT_REDUCTION_CAP, DEFAULT_SAMPLES};
use idealcore::counterexample::verify_counterexample as verify;
use idealcore::formulas::{self, build_conjecture_ideal, paper_conjecture_ideal};
use idealcore::groebner::krull_dimension;
use idealcore::ideal_ops;
use idealcore::ring::parse_polynomial;
use idealcore::{Error, Field, MonomialOrder, RingContext};
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyType;

pyo3::create_exception!(idealcore, EngineError, PyException, "A computation failed or hit a configured limit.");

fn py_err(e: Error) -> PyErr {
    if e.is_usage() {
        PyValueError::new_err(e.to_string())
    } else {
        EngineError::new_err(e.to_string())
    }
}

fn field(characteristic: u64) -> PyResult<Field> {
    if characteristic == 0 {
        Ok(Field::Rational)
    } else {
        Field::prime(characteristic).map_err(py_err)
    }
}

/// Converts a serializable report into Python objects via `json.loads`.
fn to_python<T: serde::Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| EngineError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

/// A polynomial ring over Q or F_p with a fixed monomial order.
#[pyclass(frozen, skip_from_py_object, module = "idealcore")]
#[derive(Clone)]
pub struct Ring {
    inner: idealcore::Ring,
}

#[pymethods]
impl Ring {
    #[new]
    #[pyo3(signature = (variables, characteristic = 0, order = "degrevlex"))]
    fn new(variables: &Bound<'_, PyAny>, characteristic: u64, order: &str) -> PyResult<Ring> {
        let vars: Vec<String> = match variables.extract::<String>() {
            Ok(s) => s.split(',').map(|v| v.trim().to_string()).collect(),
            Err(_) => variables.extract()?,
        };
        let order: MonomialOrder = order.parse().map_err(py_err)?;
        let inner = RingContext::new(&vars, field(characteristic)?, order).map_err(py_err)?;
        Ok(Ring { inner })
    }

    #[getter]
    fn variables(&self) -> Vec<String> {
        self.inner.var_names().to_vec()
    }

    #[getter]
    fn characteristic(&self) -> u64 {
        self.inner.field().characteristic()
    }

    #[getter]
    fn order(&self) -> String {
        self.inner.order().to_string()
    }

    fn __call__(&self, text: &str) -> PyResult<Polynomial> {
        self.parse(text)
    }

    fn parse(&self, text: &str) -> PyResult<Polynomial> {
        let inner = parse_polynomial(text, &self.inner).map_err(py_err)?;
        Ok(Polynomial { inner })
    }

    /// The ideal generated by the given strings or polynomials.
    fn ideal(&self, generators: Vec<Bound<'_, PyAny>>) -> PyResult<Ideal> {
        Ideal::new(self, generators)
    }

    /// `m^e` for the maximal ideal `m` of the variables.
    fn maximal_ideal_power(&self, e: u32) -> Ideal {
        Ideal { inner: ideal_ops::maximal_ideal_power(&self.inner, e) }
    }

    fn __repr__(&self) -> String {
        format!(
            "Ring([{}], characteristic={}, order='{}')",
            self.inner.var_names().join(", "),
            self.characteristic(),
            self.order()
        )
    }
}

#[pyclass(frozen, skip_from_py_object, module = "idealcore")]
#[derive(Clone)]
pub struct Polynomial {
    inner: idealcore::Polynomial,
}

fn polynomial_of(ring: &idealcore::Ring, obj: &Bound<'_, PyAny>) -> PyResult<idealcore::Polynomial> {
    if let Ok(p) = obj.cast::<Polynomial>() {
        let p = p.get().inner.clone();
        if !RingContext::same(p.ring(), ring) {
            return Err(py_err(Error::RingMismatch));
        }
        return Ok(p);
    }
    if let Ok(n) = obj.extract::<i64>() {
        return Ok(idealcore::Polynomial::from_i64(ring, n));
    }
    let text: String = obj.extract()?;
    parse_polynomial(&text, ring).map_err(py_err)
}

#[pymethods]
impl Polynomial {
    #[getter]
    fn degree(&self) -> Option<u32> {
        self.inner.total_degree()
    }

    fn is_homogeneous(&self) -> bool {
        self.inner.is_homogeneous().0
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn __add__(&self, other: &Bound<'_, PyAny>) -> PyResult<Polynomial> {
        let o = polynomial_of(self.inner.ring(), other)?;
        Ok(Polynomial { inner: self.inner.checked_add(&o).map_err(py_err)? })
    }

    fn __radd__(&self, other: &Bound<'_, PyAny>) -> PyResult<Polynomial> {
        self.__add__(other)
    }

    fn __sub__(&self, other: &Bound<'_, PyAny>) -> PyResult<Polynomial> {
        let o = polynomial_of(self.inner.ring(), other)?;
        Ok(Polynomial { inner: self.inner.checked_sub(&o).map_err(py_err)? })
    }

    fn __mul__(&self, other: &Bound<'_, PyAny>) -> PyResult<Polynomial> {
        let o = polynomial_of(self.inner.ring(), other)?;
        Ok(Polynomial { inner: self.inner.checked_mul(&o).map_err(py_err)? })
    }

    fn __rmul__(&self, other: &Bound<'_, PyAny>) -> PyResult<Polynomial> {
        self.__mul__(other)
    }

    fn __pow__(&self, e: u32, _modulo: Option<Py<PyAny>>) -> Polynomial {
        Polynomial { inner: self.inner.pow(e) }
    }

    fn __eq__(&self, other: &Bound<'_, PyAny>) -> bool {
        polynomial_of(self.inner.ring(), other).is_ok_and(|o| o == self.inner)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Polynomial('{}')", self.inner)
    }
}

/// A homogeneous ideal with cached reduced Gröbner bases.
#[pyclass(frozen, skip_from_py_object, module = "idealcore")]
#[derive(Clone)]
pub struct Ideal {
    inner: idealcore::Ideal,
}

impl Ideal {
    fn other(&self, other: &Ideal) -> PyResult<()> {
        if RingContext::same(self.inner.ring(), other.inner.ring()) {
            Ok(())
        } else {
            Err(py_err(Error::RingMismatch))
        }
    }
}

#[pymethods]
impl Ideal {
    #[new]
    fn new(ring: &Ring, generators: Vec<Bound<'_, PyAny>>) -> PyResult<Ideal> {
        let gens = generators
            .iter()
            .map(|g| polynomial_of(&ring.inner, g))
            .collect::<PyResult<Vec<_>>>()?;
        let inner = idealcore::Ideal::new(&ring.inner, gens).map_err(py_err)?;
        Ok(Ideal { inner })
    }

    #[getter]
    fn ring(&self) -> Ring {
        Ring { inner: self.inner.ring().clone() }
    }

    #[getter]
    fn generators(&self) -> Vec<String> {
        self.inner.generator_strings()
    }

    /// Reduced Gröbner basis, in the ring's order unless `order` is given.
    #[pyo3(signature = (order = None))]
    fn groebner_basis(&self, py: Python<'_>, order: Option<&str>) -> PyResult<Vec<String>> {
        let order = match order {
            Some(o) => o.parse().map_err(py_err)?,
            None => self.inner.ring().order(),
        };
        Ok(py.detach(|| self.inner.groebner_basis_in(order).to_strings()))
    }

    fn minimal_generators(&self, py: Python<'_>) -> Ideal {
        Ideal { inner: py.detach(|| ideal_ops::minimalize_generators(&self.inner)) }
    }

    fn krull_dimension(&self, py: Python<'_>) -> i64 {
        py.detach(|| krull_dimension(&self.inner))
    }

    /// `other ⊆ self`.
    fn contains(&self, py: Python<'_>, other: &Ideal) -> PyResult<bool> {
        self.other(other)?;
        py.detach(|| self.inner.contains(&other.inner)).map_err(py_err)
    }

    fn __contains__(&self, py: Python<'_>, f: &Bound<'_, PyAny>) -> PyResult<bool> {
        let f = polynomial_of(self.inner.ring(), f)?;
        py.detach(|| self.inner.contains_polynomial(&f)).map_err(py_err)
    }

    fn __eq__(&self, py: Python<'_>, other: &Ideal) -> PyResult<bool> {
        self.other(other)?;
        py.detach(|| self.inner.equals(&other.inner)).map_err(py_err)
    }

    fn __add__(&self, other: &Ideal) -> PyResult<Ideal> {
        Ok(Ideal { inner: ideal_ops::ideal_sum(&self.inner, &other.inner).map_err(py_err)? })
    }

    fn __mul__(&self, py: Python<'_>, other: &Ideal) -> PyResult<Ideal> {
        let inner = py.detach(|| ideal_ops::ideal_product(&self.inner, &other.inner)).map_err(py_err)?;
        Ok(Ideal { inner })
    }

    fn __pow__(&self, py: Python<'_>, e: u32, _modulo: Option<Py<PyAny>>) -> Ideal {
        Ideal { inner: py.detach(|| ideal_ops::ideal_power(&self.inner, e)) }
    }

    fn intersect(&self, py: Python<'_>, other: &Ideal) -> PyResult<Ideal> {
        let inner = py.detach(|| ideal_ops::ideal_intersect(&self.inner, &other.inner)).map_err(py_err)?;
        Ok(Ideal { inner })
    }

    /// `self : other`.
    fn colon(&self, py: Python<'_>, other: &Ideal) -> PyResult<Ideal> {
        let inner = py.detach(|| ideal_ops::ideal_colon(&self.inner, &other.inner)).map_err(py_err)?;
        Ok(Ideal { inner })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Ideal{}", self.inner)
    }

    /// Python-side convenience: `Ideal.parse(ring, ["x^2", ...])`.
    #[classmethod]
    fn parse(_cls: &Bound<'_, PyType>, ring: &Ring, generators: Vec<String>) -> PyResult<Ideal> {
        let inner = idealcore::Ideal::parse(&ring.inner, &generators).map_err(py_err)?;
        Ok(Ideal { inner })
    }
}

fn config(seed: u64, samples: usize, max_reduction_number: u32) -> CoreConfig {
    CoreConfig { samples, max_reduction_number, ..CoreConfig::with_seed(seed) }
}

/// `core(I)` from seeded random minimal reductions, or from `reduction`
/// when given. Returns the full report as a dictionary.
#[pyfunction]
#[pyo3(name = "core", signature = (ideal, seed = 0, samples = DEFAULT_SAMPLES, max_reduction_number = DEFAULT_REDUCTION_CAP, reduction = None))]
fn core_report(
    py: Python<'_>,
    ideal: &Ideal,
    seed: u64,
    samples: usize,
    max_reduction_number: u32,
    reduction: Option<&Ideal>,
) -> PyResult<Py<PyAny>> {
    let cfg = config(seed, samples, max_reduction_number);
    let report = py
        .detach(|| match reduction {
            Some(j) => core_with_reduction(&ideal.inner, j.inner.generators(), &cfg, 0),
            None => core(&ideal.inner, &cfg),
        })
        .map_err(py_err)?;
    to_python(py, &report)
}

/// `core(I)` as an ideal.
#[pyfunction]
#[pyo3(signature = (ideal, seed = 0, samples = DEFAULT_SAMPLES))]
fn core_ideal(py: Python<'_>, ideal: &Ideal, seed: u64, samples: usize) -> PyResult<Ideal> {
    let cfg = config(seed, samples, DEFAULT_REDUCTION_CAP);
    let report = py.detach(|| core(&ideal.inner, &cfg)).map_err(py_err)?;
    Ok(Ideal { inner: report.core })
}

/// The six checks of the four-variable counterexample.
#[pyfunction]
#[pyo3(signature = (characteristic = 0, seed = 0))]
fn verify_counterexample(py: Python<'_>, characteristic: u64, seed: u64) -> PyResult<Py<PyAny>> {
    let f = field(characteristic)?;
    let report = py.detach(|| verify(f, seed, false)).map_err(py_err)?;
    to_python(py, &report)
}

#[pyfunction]
fn conjecture_exponents(n: u32, s: u32, d: u32) -> PyResult<(u32, u32)> {
    formulas::conjecture_exponents(n, s, d).map_err(py_err)
}

#[pyfunction]
fn theorem_d1_multiplier_formula(n: u32, s: u32) -> PyResult<(u32, u32)> {
    formulas::theorem_d1_multiplier_formula(n, s).map_err(py_err)
}

/// Engine core of `(s general d-forms) + m^(d+1)` against `m^a I^b`.
#[pyfunction]
#[pyo3(signature = (n, s, d, seed = 0, paper_forms = false, characteristic = 0, samples = DEFAULT_SAMPLES))]
#[allow(clippy::too_many_arguments)]
fn check_conjecture(
    py: Python<'_>,
    n: u32,
    s: u32,
    d: u32,
    seed: u64,
    paper_forms: bool,
    characteristic: u64,
    samples: usize,
) -> PyResult<Py<PyAny>> {
    let f = field(characteristic)?;
    let report = py
        .detach(|| {
            let instance = if paper_forms {
                if (n, s, d) != (4, 3, 2) {
                    return Err(Error::InvalidParameters("paper forms require n=4 s=3 d=2".into()));
                }
                paper_conjecture_ideal(f)?
            } else {
                build_conjecture_ideal(n, s, d, seed, f)?
            };
            formulas::check_conjecture(instance, &config(seed, samples, DEFAULT_REDUCTION_CAP))
        })
        .map_err(py_err)?;
    to_python(py, &report)
}

#[pymodule]
#[pyo3(name = "idealcore")]
fn idealcore_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Ring>()?;
    m.add_class::<Polynomial>()?;
    m.add_class::<Ideal>()?;
    m.add("EngineError", m.py().get_type::<EngineError>())?;
    m.add_function(wrap_pyfunction!(core_report, m)?)?;
    m.add_function(wrap_pyfunction!(core_ideal, m)?)?;
    m.add_function(wrap_pyfunction!(verify_counterexample, m)?)?;
    m.add_function(wrap_pyfunction!(conjecture_exponents, m)?)?;
    m.add_function(wrap_pyfunction!(theorem_d1_multiplier_formula, m)?)?;
    m.add_function(wrap_pyfunction!(check_conjecture, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
