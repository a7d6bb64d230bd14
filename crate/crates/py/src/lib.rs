//! Python bindings: the graph type plus the kernelizer, solver, oracle,
//! generators and branching-factor analysis.
//!
//! Build as a cdylib and import as `aimkit_py`; see python/smoke_test.py.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use aimkit::analysis;
use aimkit::gen;
use aimkit::graph::{Graph, VertexSet};
use aimkit::kernel::{reduce, Instance, KernelResult};
use aimkit::oracle;
use aimkit::solver;
use aimkit::textio;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_set(ids: Vec<u32>) -> VertexSet {
    ids.into_iter().collect()
}

/// An undirected simple graph with stable vertex ids.
#[pyclass(name = "Graph", skip_from_py_object)]
#[derive(Clone)]
struct PyGraph {
    inner: Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(n: u32, edges: Vec<(u32, u32)>) -> PyResult<Self> {
        Ok(Self {
            inner: Graph::from_edges(n, &edges).map_err(value_error)?,
        })
    }

    /// Parses the `p aim <n> <m>` text format.
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        Ok(Self {
            inner: textio::parse_graph(text).map_err(value_error)?,
        })
    }

    fn to_text(&self) -> String {
        textio::write_graph(&self.inner)
    }

    fn n(&self) -> usize {
        self.inner.vertex_count()
    }

    fn m(&self) -> usize {
        self.inner.edge_count()
    }

    fn vertices(&self) -> Vec<u32> {
        self.inner.vertices().collect()
    }

    fn edges(&self) -> Vec<(u32, u32)> {
        self.inner.edges()
    }

    fn degree(&self, v: u32) -> PyResult<usize> {
        self.inner.degree(v).map_err(value_error)
    }

    fn neighbors(&self, v: u32) -> PyResult<Vec<u32>> {
        if !self.inner.contains(v) {
            return Err(value_error(format!("vertex {v} is not in the graph")));
        }
        Ok(self.inner.neighbors(v).iter().copied().collect())
    }

    fn delete(&self, vertices: Vec<u32>) -> PyResult<Self> {
        Ok(Self {
            inner: self
                .inner
                .delete_vertices(&to_set(vertices))
                .map_err(value_error)?,
        })
    }

    fn connected_components(&self) -> Vec<Vec<u32>> {
        self.inner
            .connected_components()
            .into_iter()
            .map(|c| c.into_iter().collect())
            .collect()
    }

    fn is_induced_matching(&self) -> bool {
        self.inner.is_induced_matching()
    }

    fn is_aim_deletion_set(&self, s: Vec<u32>) -> PyResult<bool> {
        self.inner
            .is_aim_deletion_set(&to_set(s))
            .map_err(value_error)
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(n={}, m={})",
            self.inner.vertex_count(),
            self.inner.edge_count()
        )
    }
}

#[pyfunction]
fn gen_erdos_renyi(n: u32, p: f64, seed: u64) -> PyResult<PyGraph> {
    Ok(PyGraph {
        inner: gen::erdos_renyi(n, p, seed).map_err(value_error)?,
    })
}

#[pyfunction]
fn gen_planted(matching: u32, extra: u32, seed: u64) -> PyGraph {
    PyGraph {
        inner: gen::planted(matching, extra, seed),
    }
}

#[pyfunction]
fn gen_named(name: &str) -> PyResult<PyGraph> {
    Ok(PyGraph {
        inner: gen::named(name).map_err(value_error)?,
    })
}

/// Kernelize: returns {"status": "no"} or {"status": "reduced", "graph": ...,
/// "k": ..., "forced": [...], "kept_edges": [...]}.
#[pyfunction]
fn kernelize<'py>(py: Python<'py>, g: &PyGraph, k: i64) -> PyResult<Bound<'py, PyDict>> {
    let out = PyDict::new(py);
    match reduce(&Instance::new(g.inner.clone(), k)) {
        KernelResult::No => {
            out.set_item("status", "no")?;
        }
        KernelResult::Reduced {
            instance,
            forced,
            kept_edges,
        } => {
            out.set_item("status", "reduced")?;
            out.set_item("n", instance.graph.vertex_count())?;
            out.set_item("k", instance.k)?;
            out.set_item(
                "graph",
                PyGraph {
                    inner: instance.graph,
                },
            )?;
            out.set_item("forced", forced.into_iter().collect::<Vec<_>>())?;
            out.set_item("kept_edges", kept_edges)?;
        }
    }
    Ok(out)
}

/// Decide the instance: {"yes": bool, "witness": [...] | None, "stats": {...}}.
#[pyfunction]
fn solve<'py>(py: Python<'py>, g: &PyGraph, k: i64) -> PyResult<Bound<'py, PyDict>> {
    let result = solver::solve(&Instance::new(g.inner.clone(), k));
    let out = PyDict::new(py);
    out.set_item("yes", result.decision)?;
    out.set_item(
        "witness",
        result.witness.map(|w| w.into_iter().collect::<Vec<u32>>()),
    )?;
    let stats = PyDict::new(py);
    stats.set_item("nodes_total", result.stats.nodes_total)?;
    stats.set_item("max_depth", result.stats.max_depth)?;
    stats.set_item("kernel_calls", result.stats.kernel_calls)?;
    let per_step = PyDict::new(py);
    for (label, count) in &result.stats.nodes_per_step {
        per_step.set_item(label.as_str(), count)?;
    }
    stats.set_item("nodes_per_step", per_step)?;
    out.set_item("stats", stats)?;
    Ok(out)
}

/// Smallest feasible budget and a witness achieving it.
#[pyfunction]
fn min_deletion_k(g: &PyGraph) -> (i64, Vec<u32>) {
    let (k, result) = solver::find_min_k(&g.inner, &solver::SolveConfig::default());
    (
        k,
        result
            .witness
            .map(|w| w.into_iter().collect())
            .unwrap_or_default(),
    )
}

#[pyfunction]
fn verify(g: &PyGraph, k: i64, witness: Vec<u32>) -> PyResult<bool> {
    solver::verify_solution(&g.inner, k, &to_set(witness)).map_err(value_error)
}

/// Brute-force maximum induced matching (small graphs only).
#[pyfunction]
fn oracle_mim(g: &PyGraph) -> PyResult<(usize, Vec<(u32, u32)>)> {
    oracle::max_induced_matching(&g.inner).map_err(value_error)
}

/// Brute-force minimum deletion: (size, witness).
#[pyfunction]
fn oracle_min_deletion(g: &PyGraph) -> PyResult<(usize, Vec<u32>)> {
    let r = oracle::min_aim_deletion(&g.inner).map_err(value_error)?;
    Ok((r.min_deletion, r.witness.into_iter().collect()))
}

/// Largest root of `1 - sum(x^-c)` for the given budget decreases.
#[pyfunction]
fn branching_factor(decreases: Vec<u32>) -> PyResult<f64> {
    let r = analysis::Recurrence::new(decreases).map_err(value_error)?;
    Ok(analysis::branching_factor(&r, analysis::DEFAULT_TOL).value)
}

/// The built-in table of solver step recurrences and their factors.
#[pyfunction]
fn step_factor_table(py: Python<'_>) -> PyResult<Vec<Bound<'_, PyDict>>> {
    analysis::verify_step_factors()
        .into_iter()
        .map(|row| {
            let d = PyDict::new(py);
            d.set_item("label", row.label)?;
            d.set_item("decreases", row.recurrence.decreases().to_vec())?;
            d.set_item("expected", row.expected)?;
            d.set_item("computed", row.computed)?;
            d.set_item("pass", row.pass)?;
            Ok(d)
        })
        .collect()
}

#[pymodule]
fn aimkit_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(gen_erdos_renyi, m)?)?;
    m.add_function(wrap_pyfunction!(gen_planted, m)?)?;
    m.add_function(wrap_pyfunction!(gen_named, m)?)?;
    m.add_function(wrap_pyfunction!(kernelize, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(min_deletion_k, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_mim, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_min_deletion, m)?)?;
    m.add_function(wrap_pyfunction!(branching_factor, m)?)?;
    m.add_function(wrap_pyfunction!(step_factor_table, m)?)?;
    Ok(())
}
