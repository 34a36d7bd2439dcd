//! Python bindings for the graded-hecke workbench. Scalars, segments, and
//! weights enter as strings in the same grammar the CLI accepts; reports
//! and modules cross the boundary as JSON.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use graded_hecke::verify;
use graded_hecke::weight::{kgroup_paths, w_prime_for, Direction};
use graded_hecke::{functor, HModule, KElement, Multisegment, Scalar, Segment, Weight};

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "Scalar", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyScalar {
    inner: Scalar,
}

#[pymethods]
impl PyScalar {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(PyScalar { inner: text.parse().map_err(err)? })
    }

    fn conj(&self) -> PyScalar {
        PyScalar { inner: self.inner.conj() }
    }

    fn neg_conj(&self) -> PyScalar {
        PyScalar { inner: self.inner.neg_conj() }
    }

    fn __add__(&self, other: &PyScalar) -> PyScalar {
        PyScalar { inner: &self.inner + &other.inner }
    }

    fn __sub__(&self, other: &PyScalar) -> PyScalar {
        PyScalar { inner: &self.inner - &other.inner }
    }

    fn __mul__(&self, other: &PyScalar) -> PyScalar {
        PyScalar { inner: &self.inner * &other.inner }
    }

    fn __neg__(&self) -> PyScalar {
        PyScalar { inner: -&self.inner }
    }

    fn __eq__(&self, other: &PyScalar) -> bool {
        self.inner == other.inner
    }

    fn __hash__(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.inner.hash(&mut h);
        h.finish()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Scalar({:?})", self.inner.to_string())
    }
}

#[pyclass(name = "Segment", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySegment {
    inner: Segment,
}

#[pymethods]
impl PySegment {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(PySegment { inner: text.parse().map_err(err)? })
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn truncate_left(&self) -> PyResult<PySegment> {
        Ok(PySegment { inner: self.inner.truncate_left().map_err(err)? })
    }

    fn truncate_right(&self) -> PyResult<PySegment> {
        Ok(PySegment { inner: self.inner.truncate_right().map_err(err)? })
    }

    fn negate_conjugate(&self) -> PySegment {
        PySegment { inner: self.inner.negate_conjugate() }
    }

    fn __eq__(&self, other: &PySegment) -> bool {
        self.inner == other.inner
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Segment({:?})", self.inner.to_string())
    }
}

#[pyclass(name = "Multisegment", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyMultisegment {
    inner: Multisegment,
}

#[pymethods]
impl PyMultisegment {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(PyMultisegment { inner: text.parse().map_err(err)? })
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn total_length(&self) -> usize {
        self.inner.total_length()
    }

    fn segments(&self) -> Vec<PySegment> {
        self.inner
            .segments()
            .iter()
            .map(|s| PySegment { inner: s.clone() })
            .collect()
    }

    fn __eq__(&self, other: &PyMultisegment) -> bool {
        self.inner == other.inner
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Multisegment({:?})", self.inner.to_string())
    }
}

#[pyclass(name = "KElement", skip_from_py_object)]
#[derive(Clone)]
struct PyKElement {
    inner: KElement,
}

#[pymethods]
impl PyKElement {
    #[new]
    fn new() -> Self {
        PyKElement { inner: KElement::zero() }
    }

    #[staticmethod]
    fn monomial(text: &str) -> PyResult<Self> {
        let mono: Multisegment = text.parse().map_err(err)?;
        Ok(PyKElement { inner: KElement::from_monomial(mono) })
    }

    fn add_term(&mut self, mono: &PyMultisegment, coeff: i64) {
        self.inner.add_term(mono.inner.clone(), coeff);
    }

    fn coeff(&self, mono: &PyMultisegment) -> i64 {
        self.inner.coeff(&mono.inner)
    }

    fn jac(&self, a: &PyScalar) -> PyKElement {
        PyKElement { inner: self.inner.jac(&a.inner) }
    }

    fn cojac(&self, a: &PyScalar) -> PyKElement {
        PyKElement { inner: self.inner.cojac(&a.inner) }
    }

    fn hermitian_dual(&self) -> PyKElement {
        PyKElement { inner: self.inner.hermitian_dual() }
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyKElement { inner: serde_json::from_str(text).map_err(err)? })
    }

    fn __add__(&self, other: &PyKElement) -> PyKElement {
        PyKElement { inner: &self.inner + &other.inner }
    }

    fn __sub__(&self, other: &PyKElement) -> PyKElement {
        PyKElement { inner: &self.inner - &other.inner }
    }

    fn __mul__(&self, other: &PyKElement) -> PyKElement {
        PyKElement { inner: &self.inner * &other.inner }
    }

    fn __eq__(&self, other: &PyKElement) -> bool {
        self.inner == other.inner
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("KElement({:?})", self.inner.to_string())
    }
}

#[pyclass(name = "Weight", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyWeight {
    inner: Weight,
}

#[pymethods]
impl PyWeight {
    #[new]
    fn new(lambda_l: &str, lambda_r: &str) -> PyResult<Self> {
        Ok(PyWeight { inner: Weight::parse_lists(lambda_l, lambda_r).map_err(err)? })
    }

    fn n(&self) -> usize {
        self.inner.n()
    }

    fn mu(&self) -> Vec<String> {
        self.inner.mu().iter().map(|x| x.to_string()).collect()
    }

    fn segments(&self) -> Vec<PySegment> {
        self.inner
            .segments()
            .into_iter()
            .map(|s| PySegment { inner: s })
            .collect()
    }

    fn gamma(&self) -> PyResult<PyKElement> {
        let m = self.inner.mu_sum();
        let elem = graded_hecke::KHCElement::from_weight(&self.inner);
        Ok(PyKElement { inner: elem.gamma(m) })
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyWeight { inner: serde_json::from_str(text).map_err(err)? })
    }

    fn __eq__(&self, other: &PyWeight) -> bool {
        self.inner == other.inner
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Weight({:?}, {:?})", self.inner.lambda_l(), self.inner.lambda_r())
    }
}

#[pyclass(name = "HModule", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyHModule {
    inner: HModule,
}

#[pymethods]
impl PyHModule {
    #[staticmethod]
    fn trivial() -> Self {
        PyHModule { inner: HModule::trivial() }
    }

    #[staticmethod]
    fn steinberg(seg: &PySegment) -> Self {
        PyHModule { inner: HModule::steinberg(&seg.inner) }
    }

    #[staticmethod]
    fn evaluation(c: &PyScalar) -> Self {
        PyHModule { inner: HModule::evaluation(&c.inner) }
    }

    #[staticmethod]
    #[pyo3(signature = (weight, dim_cap=None))]
    fn gamma(weight: &PyWeight, dim_cap: Option<usize>) -> PyResult<Self> {
        let cap = dim_cap.unwrap_or_else(graded_hecke::hmodule::default_dim_cap);
        Ok(PyHModule { inner: HModule::gamma_module(&weight.inner, cap).map_err(err)? })
    }

    #[pyo3(signature = (other, dim_cap=None))]
    fn induce(&self, other: &PyHModule, dim_cap: Option<usize>) -> PyResult<Self> {
        let cap = dim_cap.unwrap_or_else(graded_hecke::hmodule::default_dim_cap);
        Ok(PyHModule { inner: self.inner.induce(&other.inner, cap).map_err(err)? })
    }

    fn jacquet(&self, a: &PyScalar) -> PyResult<Self> {
        Ok(PyHModule { inner: functor::jacquet(&self.inner, &a.inner).map_err(err)? })
    }

    fn cojacquet(&self, a: &PyScalar) -> PyResult<Self> {
        Ok(PyHModule { inner: functor::cojacquet(&self.inner, &a.inner).map_err(err)? })
    }

    fn hermitian_dual(&self) -> Self {
        PyHModule { inner: functor::hermitian_dual(&self.inner) }
    }

    fn m(&self) -> usize {
        self.inner.m()
    }

    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn basis_labels(&self) -> Vec<String> {
        self.inner.basis_labels().to_vec()
    }

    /// (pass, name of first failing relation or None)
    fn check_relations(&self) -> (bool, Option<String>) {
        let report = self.inner.check_relations();
        (report.pass, report.first_failure)
    }

    /// y-weight fingerprint as a list of (tuple of scalar strings, multiplicity).
    fn fingerprint(&self) -> PyResult<Vec<(Vec<String>, usize)>> {
        let fp = functor::y_weight_multiset(&self.inner).map_err(err)?;
        Ok(fp
            .into_iter()
            .map(|(tuple, mult)| (tuple.iter().map(Scalar::to_string).collect(), mult))
            .collect())
    }

    /// Generalized eigenvalues of y_1 with multiplicities, as strings.
    fn spectrum_y1(&self) -> PyResult<Vec<(String, usize)>> {
        let spec = functor::spectrum_y1(&self.inner).map_err(err)?;
        Ok(spec.into_iter().map(|(a, d)| (a.to_string(), d)).collect())
    }

    fn to_json(&self) -> String {
        self.inner.to_json_string()
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyHModule { inner: HModule::from_json_str(text).map_err(err)? })
    }

    fn __str__(&self) -> String {
        format!("HModule(m={}, dim={})", self.inner.m(), self.inner.dim())
    }

    fn __repr__(&self) -> String {
        self.__str__()
    }
}

/// Run the K-level commutativity check for one weight and index; returns
/// the report as a JSON string. Direction is "raise-right", "lower-left",
/// or "both".
#[pyfunction]
#[pyo3(signature = (lambda_l, lambda_r, i, direction="both", w_limit=24, seed=0))]
fn kcheck(
    lambda_l: &str,
    lambda_r: &str,
    i: usize,
    direction: &str,
    w_limit: usize,
    seed: u64,
) -> PyResult<String> {
    let lam = Weight::parse_lists(lambda_l, lambda_r).map_err(err)?;
    let dirs: Vec<Direction> = match direction {
        "raise-right" => vec![Direction::RaiseRight],
        "lower-left" => vec![Direction::LowerLeft],
        "both" => vec![Direction::RaiseRight, Direction::LowerLeft],
        other => return Err(err(format!("unknown direction {other:?}"))),
    };
    let ws = w_prime_for(&lam, w_limit, seed);
    let mut cases = Vec::new();
    for dir in dirs {
        for kp in kgroup_paths(&lam, i, dir, &ws).map_err(err)? {
            let mut case = verify::CaseReport::new(format!(
                "lam={lam} i={i} w={} dir={dir}",
                kp.w.one_line()
            ));
            case.path_a = Some(kp.path_a.to_string());
            case.path_b = Some(kp.path_b.to_string());
            case.equal = Some(kp.equal);
            case.push(verify::Check::compare("paths equal", &kp.path_a, &kp.path_b));
            cases.push(case);
        }
    }
    let report = verify::Report::from_cases("kcheck", cases);
    serde_json::to_string(&report).map_err(err)
}

/// Run the full verification suite; returns the report as a JSON string.
#[pyfunction]
#[pyo3(signature = (seed=0, case_count=200, dim_cap=None))]
fn run_suite(seed: u64, case_count: usize, dim_cap: Option<usize>) -> PyResult<String> {
    let cfg = verify::SuiteConfig {
        seed,
        case_count,
        dim_cap: dim_cap.unwrap_or_else(graded_hecke::hmodule::default_dim_cap),
        ..verify::SuiteConfig::default()
    };
    let report = verify::run_suite(&cfg);
    serde_json::to_string(&report).map_err(err)
}

#[pymodule]
fn ghkpy(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyScalar>()?;
    m.add_class::<PySegment>()?;
    m.add_class::<PyMultisegment>()?;
    m.add_class::<PyKElement>()?;
    m.add_class::<PyWeight>()?;
    m.add_class::<PyHModule>()?;
    m.add_function(wrap_pyfunction!(kcheck, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    Ok(())
}
