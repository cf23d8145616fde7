//! Python module `ifpart`.
//!
//! Graphs and assigned graphs are immutable classes; everything else is
//! a module-level function returning plain Python values. Exact ratios
//! come back as `fractions.Fraction`.

use ::ifpart as core;
use core::coloring;
use core::configs;
use core::discharge::{self, Lemma8Verdict};
use core::format;
use core::gadget;
use core::generate::{self, GeneratorSpec, Model};
use core::harness::{self, CheckConfig, Theorem};
use core::potential as pot;
use core::solver::{self, Outcome};
use core::verify;
use core::{Rational, VertexLabel};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn fraction<'py>(py: Python<'py>, r: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((*r.numer(), *r.denom()))
}

#[pyclass(name = "Graph", module = "ifpart", frozen)]
pub struct PyGraph {
    inner: core::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (vertex_count, edges = Vec::new()))]
    fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        let inner = core::Graph::from_edges(vertex_count, edges).map_err(value_err)?;
        Ok(PyGraph { inner })
    }

    #[staticmethod]
    fn from_graph6(text: &str) -> PyResult<Self> {
        let inner = format::parse_graph6(text.as_bytes()).map_err(value_err)?;
        Ok(PyGraph { inner })
    }

    #[staticmethod]
    fn from_edge_list(text: &str) -> PyResult<Self> {
        let inner = format::parse_edge_list(text.as_bytes()).map_err(value_err)?.value;
        Ok(PyGraph { inner })
    }

    fn to_graph6(&self) -> String {
        format::to_graph6(&self.inner)
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().to_vec()
    }

    fn neighbors(&self, v: usize) -> PyResult<Vec<usize>> {
        self.inner.check_vertex(v).map_err(value_err)?;
        Ok(self.inner.neighbors(v).to_vec())
    }

    fn degree(&self, v: usize) -> PyResult<usize> {
        self.inner.check_vertex(v).map_err(value_err)?;
        Ok(self.inner.degree(v))
    }

    fn __len__(&self) -> usize {
        self.inner.vertex_count()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Graph({:?})", self.to_graph6())
    }
}

/// A graph whose vertices carry labels `"I"`, `"F"` or `"U"`.
#[pyclass(name = "AssignedGraph", module = "ifpart", frozen)]
pub struct PyAssignedGraph {
    inner: core::AssignedGraph,
}

fn parse_labels(labels: &str) -> PyResult<Vec<VertexLabel>> {
    labels
        .chars()
        .map(|c| VertexLabel::from_letter(c).ok_or_else(|| value_err(format!("unknown label {c:?}"))))
        .collect()
}

#[pymethods]
impl PyAssignedGraph {
    /// `labels` is a string with one letter per vertex; all `U` if omitted.
    #[new]
    #[pyo3(signature = (graph, labels = None))]
    fn new(graph: &PyGraph, labels: Option<&str>) -> PyResult<Self> {
        let g = graph.inner.clone();
        let inner = match labels {
            Some(s) => core::AssignedGraph::new(g, parse_labels(s)?).map_err(value_err)?,
            None => core::AssignedGraph::unassigned(g),
        };
        Ok(PyAssignedGraph { inner })
    }

    #[getter]
    fn graph(&self) -> PyGraph {
        PyGraph {
            inner: self.inner.graph().clone(),
        }
    }

    #[getter]
    fn labels(&self) -> String {
        self.inner.labels().iter().map(|l| l.letter()).collect()
    }

    fn __repr__(&self) -> String {
        format!(
            "AssignedGraph({:?}, {:?})",
            format::to_graph6(self.inner.graph()),
            self.labels()
        )
    }
}

#[pyclass(name = "Partition", module = "ifpart", frozen)]
pub struct PyPartition {
    inner: core::Partition,
}

#[pymethods]
impl PyPartition {
    #[new]
    fn new(independent: Vec<usize>, forest: Vec<usize>) -> Self {
        PyPartition {
            inner: core::Partition::new(independent, forest),
        }
    }

    #[getter]
    fn independent(&self) -> Vec<usize> {
        self.inner.independent.clone()
    }

    #[getter]
    fn forest(&self) -> Vec<usize> {
        self.inner.forest.clone()
    }

    fn __repr__(&self) -> String {
        format!("Partition(I={:?}, F={:?})", self.inner.independent, self.inner.forest)
    }
}

#[pyfunction]
fn potential(ag: &PyAssignedGraph, vertices: Vec<usize>) -> PyResult<i64> {
    pot::potential(&ag.inner, &vertices).map_err(value_err)
}

/// `(value, witness)` for the least potential over nonempty subsets.
#[pyfunction]
fn min_potential(ag: &PyAssignedGraph) -> PyResult<(i64, Vec<usize>)> {
    let w = pot::min_potential(&ag.inner).map_err(value_err)?;
    Ok((w.value, w.vertices))
}

#[pyfunction]
fn all_potentials_positive(ag: &PyAssignedGraph) -> PyResult<bool> {
    pot::all_potentials_positive(&ag.inner).map_err(value_err)
}

/// `(Fraction, witness)` for the maximum average degree.
#[pyfunction]
fn mad<'py>(py: Python<'py>, graph: &PyGraph) -> PyResult<(Bound<'py, PyAny>, Vec<usize>)> {
    let w = pot::mad(&graph.inner).map_err(value_err)?;
    Ok((fraction(py, &w.value)?, w.vertices))
}

#[pyfunction]
fn is_valid_if_partition(ag: &PyAssignedGraph, partition: &PyPartition) -> bool {
    verify::is_valid_if_partition(&ag.inner, &partition.inner)
}

/// A valid partition, or `None` if none exists. Raises `RuntimeError`
/// when the `IFPART_LIMITS` budget runs out.
#[pyfunction]
fn solve_if_partition(py: Python<'_>, ag: &PyAssignedGraph) -> PyResult<Option<PyPartition>> {
    let r = py.detach(|| solver::solve_if_partition(&ag.inner));
    match r.outcome {
        Outcome::Sat { partition } => Ok(Some(PyPartition { inner: partition })),
        Outcome::Unsat => Ok(None),
        Outcome::Inconclusive => Err(PyRuntimeError::new_err("search limit reached")),
    }
}

/// `(k, colors)` with 1-based colors.
#[pyfunction]
fn star_chromatic_number(py: Python<'_>, graph: &PyGraph) -> PyResult<(usize, Vec<u32>)> {
    let r = py.detach(|| coloring::star_chromatic_number(&graph.inner)).map_err(value_err)?;
    Ok((r.colors_used, r.coloring.colors))
}

#[pyfunction]
fn star_coloring_from_partition(graph: &PyGraph, partition: &PyPartition) -> PyResult<Vec<u32>> {
    let r = coloring::star_coloring_from_partition(&graph.inner, &partition.inner).map_err(value_err)?;
    Ok(r.coloring.colors)
}

#[pyfunction]
fn is_star_coloring(graph: &PyGraph, colors: Vec<u32>) -> PyResult<bool> {
    let c = core::StarColoring::new(colors);
    let violations = coloring::verify_star_coloring(&graph.inner, &c).map_err(value_err)?;
    Ok(violations.is_empty())
}

#[pyfunction]
fn sharpness_graph(k: usize) -> PyResult<PyGraph> {
    let s = gadget::sharpness_graph(k).map_err(value_err)?;
    Ok(PyGraph { inner: s.graph })
}

/// `(unassigned graph, vertex_map)`.
#[pyfunction]
fn expand_to_unassigned(ag: &PyAssignedGraph) -> (PyAssignedGraph, Vec<usize>) {
    let e = gadget::expand_to_unassigned(&ag.inner);
    (PyAssignedGraph { inner: e.result }, e.vertex_map)
}

/// `(kind, anchor, vertices)` for every configuration present.
#[pyfunction]
fn detect_configurations(ag: &PyAssignedGraph) -> Vec<(String, usize, Vec<usize>)> {
    configs::detect_configurations(&ag.inner)
        .into_iter()
        .map(|c| (c.kind.name().to_string(), c.anchor, c.vertices))
        .collect()
}

/// Final charges as Fractions, one per vertex.
#[pyfunction]
fn final_charges<'py>(py: Python<'py>, ag: &PyAssignedGraph) -> PyResult<Vec<Bound<'py, PyAny>>> {
    let trace = discharge::run_discharging(&ag.inner);
    trace.last().iter().map(|r| fraction(py, r)).collect()
}

/// `"vacuous"`, `"holds"` or `"violated"`.
#[pyfunction]
fn audit_lemma8(ag: &PyAssignedGraph) -> &'static str {
    match discharge::audit_lemma8(&ag.inner) {
        Lemma8Verdict::Vacuous { .. } => "vacuous",
        Lemma8Verdict::Holds { .. } => "holds",
        Lemma8Verdict::Violated { .. } => "violated",
    }
}

#[pyfunction]
fn gnm(n: usize, m: usize, seed: u64) -> PyResult<PyGraph> {
    let spec = GeneratorSpec {
        model: Model::Gnm { n, m },
        seed,
    };
    let inner = generate::generate(&spec).map_err(value_err)?;
    Ok(PyGraph { inner })
}

/// Runs a named property check and returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (theorem, max_n = None, samples = None, seed = 0))]
fn run_check<'py>(
    py: Python<'py>,
    theorem: &str,
    max_n: Option<usize>,
    samples: Option<u64>,
    seed: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let theorem: Theorem = theorem.parse().map_err(value_err)?;
    let mut config = CheckConfig::defaults(theorem, seed);
    config.max_n = max_n.unwrap_or(config.max_n);
    config.samples = samples.unwrap_or(config.samples);
    let report = py.detach(|| harness::run_check(theorem, config));
    let text = serde_json::to_string(&report).map_err(value_err)?;
    py.import("json")?.getattr("loads")?.call1((text,))
}

#[pymodule(name = "ifpart")]
fn ifpart(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyAssignedGraph>()?;
    m.add_class::<PyPartition>()?;
    m.add_function(wrap_pyfunction!(potential, m)?)?;
    m.add_function(wrap_pyfunction!(min_potential, m)?)?;
    m.add_function(wrap_pyfunction!(all_potentials_positive, m)?)?;
    m.add_function(wrap_pyfunction!(mad, m)?)?;
    m.add_function(wrap_pyfunction!(is_valid_if_partition, m)?)?;
    m.add_function(wrap_pyfunction!(solve_if_partition, m)?)?;
    m.add_function(wrap_pyfunction!(star_chromatic_number, m)?)?;
    m.add_function(wrap_pyfunction!(star_coloring_from_partition, m)?)?;
    m.add_function(wrap_pyfunction!(is_star_coloring, m)?)?;
    m.add_function(wrap_pyfunction!(sharpness_graph, m)?)?;
    m.add_function(wrap_pyfunction!(expand_to_unassigned, m)?)?;
    m.add_function(wrap_pyfunction!(detect_configurations, m)?)?;
    m.add_function(wrap_pyfunction!(final_charges, m)?)?;
    m.add_function(wrap_pyfunction!(audit_lemma8, m)?)?;
    m.add_function(wrap_pyfunction!(gnm, m)?)?;
    m.add_function(wrap_pyfunction!(run_check, m)?)?;
    Ok(())
}
