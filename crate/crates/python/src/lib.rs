//! Python bindings. Structured results come back as plain dicts and lists.

use std::sync::Arc;

use compositum::bimodule::{
    fuse_with, weak_rigidity_check, FoldedCategory, FusionTable, Multiplicity,
};
use compositum::closure::{CompositumSystem, DEFAULT_MAX_COMPOSITA};
use compositum::document::{CloseReport, ContextDocument, FuseReport};
use compositum::fixtures::{closed_fixture, run_examples};
use compositum::numberfield::{sweep, sweep_system, OracleContext, Realization};
use compositum::perm::{subgroup_closure, Permutation as Perm};
use compositum::{Error, DEFAULT_MAX_GROUP_ORDER};
use pyo3::exceptions::{PyKeyError, PyOverflowError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyAny;
use serde::Serialize;

fn err(e: Error) -> PyErr {
    let msg = e.to_string();
    match e {
        Error::UnknownLabel(_) | Error::UnknownNode(_) => PyKeyError::new_err(msg),
        Error::GroupOrderCap { .. } | Error::ClosureCap { .. } | Error::DegreeCap { .. } => {
            PyOverflowError::new_err(msg)
        }
        Error::Internal(_) | Error::TheoremViolation(_) | Error::OracleMismatch(_) => {
            PyRuntimeError::new_err(msg)
        }
        _ => PyValueError::new_err(msg),
    }
}

fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn rule(name: &str) -> PyResult<Multiplicity> {
    match name {
        "bimodule" => Ok(Multiplicity::Bimodule),
        "per-coset" | "per_coset" => Ok(Multiplicity::PerCoset),
        other => Err(PyValueError::new_err(format!("unknown rule `{other}`"))),
    }
}

/// A permutation of `{0, …, n-1}` in one-line notation.
#[pyclass(name = "Permutation", frozen, eq, ord, hash, from_py_object)]
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct PyPermutation(Perm);

#[pymethods]
impl PyPermutation {
    #[new]
    fn new(images: Vec<usize>) -> PyResult<Self> {
        Perm::new(images).map(Self).map_err(err)
    }

    #[staticmethod]
    fn from_cycles(degree: usize, text: &str) -> PyResult<Self> {
        Perm::from_cycles(degree, text).map(Self).map_err(err)
    }

    #[staticmethod]
    fn identity(degree: usize) -> Self {
        Self(Perm::identity(degree))
    }

    #[getter]
    fn images(&self) -> Vec<usize> {
        self.0.images().to_vec()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    /// `self ∘ other`: apply `other` first.
    fn compose(&self, other: &Self) -> PyResult<Self> {
        self.0.compose(&other.0).map(Self).map_err(err)
    }

    fn inverse(&self) -> Self {
        Self(self.0.inverse())
    }

    fn cycles(&self) -> String {
        self.0.to_cycles()
    }

    fn __call__(&self, point: usize) -> PyResult<usize> {
        if point >= self.0.degree() {
            return Err(PyValueError::new_err("point out of range"));
        }
        Ok(self.0.apply(point))
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        self.compose(other)
    }

    fn __repr__(&self) -> String {
        format!("Permutation({:?})", self.0.images())
    }
}

/// Order of the group generated by `generators`.
#[pyfunction]
#[pyo3(signature = (generators, max_order = DEFAULT_MAX_GROUP_ORDER))]
fn group_order(generators: Vec<PyPermutation>, max_order: usize) -> PyResult<usize> {
    let gens: Vec<Perm> = generators.into_iter().map(|p| p.0).collect();
    let degree = gens
        .first()
        .map(Perm::degree)
        .ok_or_else(|| PyValueError::new_err("no generators"))?;
    subgroup_closure(degree, &gens, max_order)
        .map(|g| g.order())
        .map_err(err)
}

/// A system of field nodes and composita read from a context document.
#[pyclass(name = "System", frozen)]
struct PySystem(CompositumSystem);

#[pymethods]
impl PySystem {
    #[staticmethod]
    #[pyo3(signature = (text, max_group_order = DEFAULT_MAX_GROUP_ORDER))]
    fn from_json(text: &str, max_group_order: usize) -> PyResult<Self> {
        ContextDocument::from_json(text)
            .and_then(|d| d.system(max_group_order))
            .map(Self)
            .map_err(err)
    }

    #[staticmethod]
    fn fixture(name: &str) -> PyResult<Self> {
        closed_fixture(name).map(Self).map_err(err)
    }

    #[pyo3(signature = (max_composita = DEFAULT_MAX_COMPOSITA))]
    fn close(&self, max_composita: usize) -> PyResult<Self> {
        self.0.close(max_composita).map(Self).map_err(err)
    }

    #[getter]
    fn is_closed(&self) -> bool {
        self.0.is_closed()
    }

    fn nodes(&self) -> Vec<String> {
        self.0.nodes().map(|n| n.id().to_string()).collect()
    }

    fn labels(&self) -> Vec<String> {
        self.0.composita().iter().map(|v| self.0.label_of(v)).collect()
    }

    fn __len__(&self) -> usize {
        self.0.composita().len()
    }

    fn report<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &CloseReport::new(&self.0).map_err(err)?)
    }

    /// Base field data: indices `[k_A : base]`, orders of `H_A`, triangle check.
    fn base_field<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let base = self.0.base_field().map_err(err)?;
        let tri = self.0.verify_triangles(&base);
        let h: std::collections::BTreeMap<&String, usize> =
            base.h.iter().map(|(k, g)| (k, g.order())).collect();
        let value = serde_json::json!({
            "root": base.root,
            "base_label": base.base_label,
            "indices": base.indices,
            "h_orders": h,
            "groups_closed": base.groups_closed(),
            "triangles": tri.all_pass,
        });
        to_py(py, &value)
    }

    /// `{label: multiplicity}` for the product of two labelled composita.
    #[pyo3(signature = (left, right, rule = "bimodule"))]
    fn fuse<'py>(
        &self,
        py: Python<'py>,
        left: &str,
        right: &str,
        rule: &str,
    ) -> PyResult<Bound<'py, PyAny>> {
        let r = self::rule(rule)?;
        let v = self.0.find_by_label(left).map_err(err)?;
        let w = self.0.find_by_label(right).map_err(err)?;
        let m = fuse_with(v, w, r).map_err(err)?;
        let out: std::collections::BTreeMap<String, usize> = m
            .terms()
            .iter()
            .map(|(x, k)| (self.0.label_of(x), *k))
            .collect();
        to_py(py, &out)
    }

    #[pyo3(signature = (left, right, rule = "bimodule"))]
    fn fuse_report<'py>(
        &self,
        py: Python<'py>,
        left: &str,
        right: &str,
        rule: &str,
    ) -> PyResult<Bound<'py, PyAny>> {
        let r = self::rule(rule)?;
        let v = self.0.find_by_label(left).map_err(err)?;
        let w = self.0.find_by_label(right).map_err(err)?;
        to_py(py, &FuseReport::new(&self.0, v, w, r).map_err(err)?)
    }

    #[pyo3(signature = (rule = "bimodule"))]
    fn fusion_table(&self, rule: &str) -> PyResult<String> {
        Ok(FusionTable::from_system(&self.0, self::rule(rule)?)
            .map_err(err)?
            .to_text())
    }

    fn weak_rigidity(&self) -> PyResult<bool> {
        for v in self.0.composita() {
            if !weak_rigidity_check(v).map_err(err)?.pass {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Objects of the unfolded category.
    fn unfold(&self) -> PyResult<Vec<String>> {
        let folded = FoldedCategory::from_system(&self.0, Multiplicity::Bimodule).map_err(err)?;
        Ok(folded.unfold().map_err(err)?.objects)
    }

    /// Oracle sweep over every composable pair, using the document's realization.
    #[pyo3(signature = (seed = 0))]
    fn oracle_sweep<'py>(&self, py: Python<'py>, seed: u64) -> PyResult<Bound<'py, PyAny>> {
        let real = self
            .0
            .context()
            .realization()
            .cloned()
            .ok_or_else(|| PyValueError::new_err("system has no realization"))?;
        to_py(py, &sweep(&OracleContext::new(real, seed), &self.0))
    }
}

/// Oracle sweep over the subgroup lattice of `cyclotomic:N` or `s3_x3m2`.
#[pyfunction]
#[pyo3(signature = (realization, seed = 0))]
fn lattice_sweep<'py>(py: Python<'py>, realization: &str, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    let real = match realization.split_once(':') {
        Some(("cyclotomic", n)) => Realization::cyclotomic(
            n.parse()
                .map_err(|_| PyValueError::new_err(format!("bad order `{n}`")))?,
        ),
        None if realization == "s3_x3m2" => Realization::s3_x3m2(),
        _ => return Err(PyValueError::new_err(format!("unknown realization `{realization}`"))),
    }
    .map_err(err)?;
    let real = Arc::new(real);
    let sys = sweep_system(&real).map_err(err)?;
    to_py(py, &sweep(&OracleContext::new(real, seed), &sys))
}

/// Runs the bundled fixtures and returns their check results.
#[pyfunction]
#[pyo3(signature = (fixture = None, seed = 0))]
fn examples<'py>(py: Python<'py>, fixture: Option<&str>, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &run_examples(fixture, seed).map_err(err)?)
}

#[pymodule]
fn compositum_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPermutation>()?;
    m.add_class::<PySystem>()?;
    m.add_function(wrap_pyfunction!(group_order, m)?)?;
    m.add_function(wrap_pyfunction!(lattice_sweep, m)?)?;
    m.add_function(wrap_pyfunction!(examples, m)?)?;
    Ok(())
}
