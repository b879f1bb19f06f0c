//! Python bindings: grids, knot Floer homology and the surgery cone.

use std::collections::BTreeMap;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use gridfloer::complex::{GridComplex, DEFAULT_CAP};
use gridfloer::invariants;
use gridfloer::moves::random_move_sequence;
use gridfloer::surgery::{self, Flavor, HomologySummary, ModelComplex};
use gridfloer::{ComputeError, GridDiagram, GridError, LaurentPoly, ModelError};

/// Grid size cap used when none is given.
const PY_DEFAULT_CAP: usize = 8;

fn grid_err(e: GridError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn compute_err(e: ComputeError) -> PyErr {
    match e {
        ComputeError::Grid(_) | ComputeError::LinkNotSupported(_) | ComputeError::CapExceeded { .. } => PyValueError::new_err(e.to_string()),
        other => PyRuntimeError::new_err(other.to_string()),
    }
}

fn model_err(e: ModelError) -> PyErr {
    match e {
        ModelError::Compute(c) => compute_err(c),
        ModelError::TruncationCheck(_) | ModelError::NoStabilization(_) => PyRuntimeError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn check_cap(cap: usize) -> PyResult<usize> {
    if cap > DEFAULT_CAP {
        return Err(PyValueError::new_err(format!("cap {cap} exceeds the hard limit {DEFAULT_CAP}")));
    }
    Ok(cap)
}

fn parse_flavor(s: &str) -> PyResult<Flavor> {
    s.parse().map_err(PyValueError::new_err)
}

/// A grid diagram; row `r` has its O in column `o[r]` and X in `x[r]`.
#[pyclass(name = "Grid", module = "gridfloer_py", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyGrid {
    inner: GridDiagram,
}

#[pymethods]
impl PyGrid {
    #[new]
    fn new(o: Vec<usize>, x: Vec<usize>) -> PyResult<Self> {
        Ok(PyGrid { inner: GridDiagram::new(o, x).map_err(grid_err)? })
    }

    /// Parses the text (`n=..; O=[..]; X=[..]`) or JSON form.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyGrid { inner: GridDiagram::parse(text).map_err(grid_err)? })
    }

    #[staticmethod]
    fn unknot() -> Self {
        PyGrid { inner: GridDiagram::unknot() }
    }

    #[staticmethod]
    fn trefoil() -> Self {
        PyGrid { inner: GridDiagram::trefoil() }
    }

    #[staticmethod]
    fn figure_eight() -> Self {
        PyGrid { inner: GridDiagram::figure_eight() }
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn o(&self) -> Vec<usize> {
        self.inner.o_cols().to_vec()
    }

    #[getter]
    fn x(&self) -> Vec<usize> {
        self.inner.x_cols().to_vec()
    }

    fn components(&self) -> usize {
        self.inner.link_components().count
    }

    fn is_knot(&self) -> bool {
        self.inner.is_knot()
    }

    fn mirror(&self) -> Self {
        PyGrid { inner: self.inner.mirror() }
    }

    fn connected_sum(&self, other: &PyGrid) -> PyResult<Self> {
        Ok(PyGrid { inner: self.inner.connected_sum(&other.inner).map_err(grid_err)? })
    }

    /// Applies `count` seeded random grid moves, never exceeding `max_n`.
    #[pyo3(signature = (count, seed, max_n = PY_DEFAULT_CAP))]
    fn random_moves(&self, count: usize, seed: u64, max_n: usize) -> Self {
        PyGrid { inner: random_move_sequence(&self.inner, count, seed, max_n.max(self.inner.n())) }
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    /// Normalized Alexander polynomial, as text.
    fn alexander(&self) -> PyResult<String> {
        Ok(gridfloer::alexander::grid_alexander(&self.inner).map_err(compute_err)?.to_string())
    }

    /// `{(M, A): rank}` of HFK-hat.
    #[pyo3(signature = (cap = PY_DEFAULT_CAP))]
    fn hfk_hat(&self, cap: usize) -> PyResult<BTreeMap<(i64, i64), usize>> {
        invariants::hfk_hat(&self.inner, check_cap(cap)?).map_err(compute_err)
    }

    /// Full report: HFK-hat, HFK-minus, genus, fiberedness, tau and checks.
    #[pyo3(signature = (cap = PY_DEFAULT_CAP))]
    fn report<'py>(&self, py: Python<'py>, cap: usize) -> PyResult<Bound<'py, PyDict>> {
        let r = invariants::knot_report(&self.inner, check_cap(cap)?).map_err(compute_err)?;
        let d = PyDict::new(py);
        d.set_item("n", r.n)?;
        d.set_item("hfk_hat", r.hfk_hat)?;
        d.set_item("towers", r.hfk_minus.towers)?;
        d.set_item("torsions", r.hfk_minus.torsions)?;
        d.set_item("genus", r.genus)?;
        d.set_item("fibered", r.fibered)?;
        d.set_item("tau", r.tau)?;
        d.set_item("unknot", r.unknot)?;
        d.set_item("alexander", r.delta.to_string())?;
        d.set_item("checks", r.checks)?;
        Ok(d)
    }

    /// JSON export of the full complex: generators `(id, perm, M, A)` and
    /// arrows `(from, to, o_count, x_count)`.
    #[pyo3(signature = (cap = PY_DEFAULT_CAP))]
    fn labeled_complex(&self, cap: usize) -> PyResult<String> {
        Ok(GridComplex::new(&self.inner, check_cap(cap)?).map_err(compute_err)?.full().to_json())
    }

    fn __repr__(&self) -> String {
        format!("Grid({:?}, {:?})", self.inner.o_cols(), self.inner.x_cols())
    }

    fn __str__(&self) -> String {
        self.inner.to_text()
    }
}

/// A model of the full knot complex for surgery computations.
#[pyclass(name = "Model", module = "gridfloer_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyModel {
    inner: ModelComplex,
}

#[pymethods]
impl PyModel {
    /// `unknot`, `trefoil-left`, `trefoil-right` or `t34`.
    #[staticmethod]
    fn bundled(name: &str) -> PyResult<Self> {
        Ok(PyModel { inner: surgery::bundled_model(name).map_err(model_err)? })
    }

    /// Loads a JSON model document; all validation failures are reported.
    #[staticmethod]
    fn load(document: &str) -> PyResult<Self> {
        Ok(PyModel { inner: surgery::load_model(document).map_err(|e| PyValueError::new_err(e.to_string()))? })
    }

    /// Staircase model of an L-space knot, e.g. `Model.staircase("q^-1 - 1 + q")`.
    #[staticmethod]
    fn staircase(delta: &str) -> PyResult<Self> {
        let delta: LaurentPoly = delta.parse().map_err(PyValueError::new_err)?;
        Ok(PyModel { inner: surgery::staircase_model(&delta).map_err(model_err)? })
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn hat_ranks(&self) -> PyResult<BTreeMap<(i64, i64), usize>> {
        self.inner.hat_ranks().map_err(model_err)
    }

    fn dual(&self) -> Self {
        PyModel { inner: self.inner.dual() }
    }
}

fn summary_dict<'py>(py: Python<'py>, s: &HomologySummary) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("hat_rank", s.hat_rank)?;
    if let Some(p) = &s.plus {
        d.set_item("towers", p.towers)?;
        d.set_item("finite_rank", p.finite_rank)?;
        d.set_item("torsion_orders", p.torsion_orders.clone())?;
    }
    Ok(d)
}

/// Homology of `A_s`: the large surgery in class `[s]`.
#[pyfunction]
#[pyo3(signature = (model, s, flavor = "plus", cutoff = surgery::DEFAULT_CUTOFF))]
fn large_surgery<'py>(py: Python<'py>, model: &PyModel, s: i64, flavor: &str, cutoff: i64) -> PyResult<Bound<'py, PyDict>> {
    let h = surgery::large_surgery(&model.inner, s, parse_flavor(flavor)?, cutoff).map_err(model_err)?;
    summary_dict(py, &h)
}

/// Per-class homology of the `p`-surgery mapping cone.
#[pyfunction]
#[pyo3(signature = (model, p, flavor = "plus", s_max = None, cutoff = surgery::DEFAULT_CUTOFF))]
fn surgery_homology<'py>(py: Python<'py>, model: &PyModel, p: i64, flavor: &str, s_max: Option<i64>, cutoff: i64) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let s_max = s_max.unwrap_or(model.inner.max_abs_alexander() + p.abs());
    let cone = surgery::surgery_cone(&model.inner, p, parse_flavor(flavor)?, s_max, cutoff).map_err(model_err)?;
    let classes = surgery::surgery_homology(&cone).map_err(model_err)?;
    classes
        .iter()
        .map(|c| {
            let d = summary_dict(py, &c.summary)?;
            d.set_item("class", c.class)?;
            Ok(d)
        })
        .collect()
}

/// `(n_j, delta_j)` of an L-space knot's Alexander polynomial.
#[pyfunction]
fn staircase(delta: &str) -> PyResult<(Vec<i64>, Vec<i64>)> {
    let delta: LaurentPoly = delta.parse().map_err(PyValueError::new_err)?;
    let s = invariants::staircase(&delta).map_err(model_err)?;
    Ok((s.n, s.delta))
}

#[pymodule]
fn gridfloer_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGrid>()?;
    m.add_class::<PyModel>()?;
    m.add_function(wrap_pyfunction!(large_surgery, m)?)?;
    m.add_function(wrap_pyfunction!(surgery_homology, m)?)?;
    m.add_function(wrap_pyfunction!(staircase, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
