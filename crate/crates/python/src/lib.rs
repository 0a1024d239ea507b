use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use dtc_core::certificate::Certificate;
use dtc_core::invariants::{self, AdmissibleKind};
use dtc_core::io::{canonical_facets, serialize_complex};
use dtc_core::{categorical_square, Decision, InvariantResult as CoreResult, Status, DEFAULT_BUDGET};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Exact => "exact",
        Status::Bounded => "bounded",
        Status::BudgetExhausted => "budget-exhausted",
        Status::NotCoverable => "not-coverable",
    }
}

fn verdict<T>(d: &Decision<T>) -> &'static str {
    match d {
        Decision::Yes(_) => "yes",
        Decision::No => "no",
        Decision::Unknown => "unknown",
    }
}

/// A finite abstract simplicial complex given by its facets.
#[pyclass(frozen, skip_from_py_object, module = "dtc")]
#[derive(Clone)]
struct Complex {
    inner: dtc_core::Complex,
}

#[pymethods]
impl Complex {
    #[new]
    fn new(facets: Vec<Vec<String>>) -> PyResult<Self> {
        Ok(Complex { inner: dtc_core::Complex::from_facets(&facets).map_err(err)? })
    }

    /// Parses the text or JSON complex format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(Complex { inner: dtc_core::parse_complex(text).map_err(err)? })
    }

    #[getter]
    fn facets(&self) -> Vec<Vec<String>> {
        canonical_facets(&self.inner)
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    #[getter]
    fn num_vertices(&self) -> usize {
        self.inner.num_vertices()
    }

    #[getter]
    fn dimension(&self) -> usize {
        self.inner.dimension()
    }

    fn is_edge_path_connected(&self) -> bool {
        self.inner.is_edge_path_connected()
    }

    fn is_strongly_collapsible(&self) -> bool {
        dtc_core::is_strongly_collapsible(&self.inner)
    }

    /// The categorical square, with vertices labelled `u|v`.
    fn square(&self) -> Complex {
        Complex { inner: categorical_square(&self.inner).complex().clone() }
    }

    /// `(core, steps)` where each step is `(removed, dominator)`.
    fn core(&self) -> (Complex, Vec<(String, String)>) {
        let seq = dtc_core::core(&self.inner);
        let steps = seq
            .steps()
            .iter()
            .map(|s| (self.inner.label(s.removed).to_owned(), self.inner.label(s.dominator).to_owned()))
            .collect();
        (Complex { inner: seq.end().clone() }, steps)
    }

    fn to_text(&self) -> String {
        serialize_complex(&self.inner)
    }

    fn __len__(&self) -> usize {
        self.inner.num_facets()
    }

    fn __repr__(&self) -> String {
        format!("Complex({:?})", canonical_facets(&self.inner))
    }
}

/// Value, bounds and certificate of a `tc` or `scat` computation.
#[pyclass(frozen, module = "dtc")]
struct InvariantResult {
    #[pyo3(get)]
    value: Option<usize>,
    #[pyo3(get)]
    lower_bound: usize,
    #[pyo3(get)]
    upper_bound: Option<usize>,
    #[pyo3(get)]
    status: &'static str,
    #[pyo3(get)]
    cover: Vec<Vec<Vec<String>>>,
    certificate: String,
}

impl InvariantResult {
    fn from_core(r: &CoreResult, k: &dtc_core::Complex, budget: usize) -> Self {
        InvariantResult {
            value: r.value,
            lower_bound: r.lower_bound,
            upper_bound: r.upper_bound,
            status: status_name(r.status),
            cover: r.cover.iter().flatten().map(|s| canonical_facets(&s.subcomplex)).collect(),
            certificate: Certificate::for_invariant(r, k, budget).to_json(),
        }
    }
}

#[pymethods]
impl InvariantResult {
    fn certificate_json(&self) -> &str {
        &self.certificate
    }

    fn __repr__(&self) -> String {
        format!(
            "InvariantResult(value={:?}, lower_bound={}, upper_bound={:?}, status={:?})",
            self.value, self.lower_bound, self.upper_bound, self.status
        )
    }
}

/// Discrete topological complexity.
#[pyfunction]
#[pyo3(signature = (k, budget = DEFAULT_BUDGET))]
fn tc(py: Python<'_>, k: &Complex, budget: usize) -> PyResult<InvariantResult> {
    let inner = k.inner.clone();
    let r = py.detach(|| dtc_core::tc(&inner, budget)).map_err(err)?;
    Ok(InvariantResult::from_core(&r, &inner, budget))
}

/// Simplicial LS-category.
#[pyfunction]
#[pyo3(signature = (k, budget = DEFAULT_BUDGET))]
fn scat(py: Python<'_>, k: &Complex, budget: usize) -> PyResult<InvariantResult> {
    let inner = k.inner.clone();
    let r = py.detach(|| dtc_core::scat(&inner, budget)).map_err(err)?;
    Ok(InvariantResult::from_core(&r, &inner, budget))
}

/// `"yes"`, `"no"` or `"unknown"` for a subcomplex of the square given by
/// facets with pair labels `u|v`.
#[pyfunction]
#[pyo3(signature = (k, omega, budget = DEFAULT_BUDGET))]
fn is_farber(k: &Complex, omega: Vec<Vec<String>>, budget: usize) -> PyResult<&'static str> {
    let p = categorical_square(&k.inner);
    let gens = omega.iter().map(|f| p.complex().simplex_from_labels(f)).collect::<Result<Vec<_>, _>>().map_err(err)?;
    let sub = p.complex().subcomplex(&gens).map_err(err)?;
    Ok(verdict(&invariants::is_farber(&sub, &p, budget).map_err(err)?))
}

#[pyfunction]
#[pyo3(signature = (k, sub, budget = DEFAULT_BUDGET))]
fn is_categorical(k: &Complex, sub: Vec<Vec<String>>, budget: usize) -> PyResult<&'static str> {
    let gens = sub.iter().map(|f| k.inner.simplex_from_labels(f)).collect::<Result<Vec<_>, _>>().map_err(err)?;
    let sub = k.inner.subcomplex(&gens).map_err(err)?;
    Ok(verdict(&invariants::is_categorical(&sub, &k.inner, budget).map_err(err)?))
}

/// Edge-path from `x` to `y` read off a minimum Farber cover.
#[pyfunction]
#[pyo3(signature = (k, x, y, budget = DEFAULT_BUDGET))]
fn motion_plan(k: &Complex, x: &str, y: &str, budget: usize) -> PyResult<Vec<String>> {
    let kk = &k.inner;
    let vx = kk.vertex(x).ok_or_else(|| err(format!("unknown vertex {x:?}")))?;
    let vy = kk.vertex(y).ok_or_else(|| err(format!("unknown vertex {y:?}")))?;
    let p = categorical_square(kk);
    let target = p.complex().label(p.pair(vx, vy)).to_owned();
    let r = dtc_core::tc(kk, budget).map_err(err)?;
    let set = r
        .cover
        .iter()
        .flatten()
        .find(|s| s.kind == AdmissibleKind::Farber && s.subcomplex.vertex(&target).is_some())
        .ok_or_else(|| err("no certified Farber subcomplex contains the pair"))?;
    let plan = invariants::motion_plan(&p, set, vx, vy).map_err(err)?;
    plan.validate(kk).map_err(err)?;
    Ok(plan.path.iter().map(|v| kk.label(*v).to_owned()).collect())
}

/// Re-checks a JSON certificate; raises `ValueError` when it is rejected.
#[pyfunction]
fn verify_certificate(text: &str) -> PyResult<()> {
    Certificate::from_json(text).and_then(|c| c.verify()).map_err(err)
}

#[pymodule]
fn dtc(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Complex>()?;
    m.add_class::<InvariantResult>()?;
    m.add_function(wrap_pyfunction!(tc, m)?)?;
    m.add_function(wrap_pyfunction!(scat, m)?)?;
    m.add_function(wrap_pyfunction!(is_farber, m)?)?;
    m.add_function(wrap_pyfunction!(is_categorical, m)?)?;
    m.add_function(wrap_pyfunction!(motion_plan, m)?)?;
    m.add_function(wrap_pyfunction!(verify_certificate, m)?)?;
    m.add("DEFAULT_BUDGET", DEFAULT_BUDGET)?;
    Ok(())
}
