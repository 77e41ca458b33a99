//! Python bindings: border plans, squares, verification, construction,
//! enumeration and symmetries.

use std::collections::HashMap;

use bordered_magic as core;
use bordered_magic::{BorderSymmetry, CornerScope, Error, InnerOrder, SearchBudget};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::BudgetExhausted { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn order(n: usize) -> PyResult<InnerOrder> {
    InnerOrder::new(n).map_err(py_err)
}

fn symmetry(name: &str) -> PyResult<BorderSymmetry> {
    BorderSymmetry::ALL
        .into_iter()
        .find(|s| s.name() == name)
        .ok_or_else(|| {
            let names: Vec<&str> = BorderSymmetry::ALL.iter().map(|s| s.name()).collect();
            PyValueError::new_err(format!(
                "unknown symmetry {name:?}; expected one of {names:?}"
            ))
        })
}

/// Corner values `v, w`, top-row interior `b` and left-column interior `c`
/// of a border around an inner square of order `n`.
#[pyclass(
    name = "BorderPlan",
    module = "bordered_magic",
    frozen,
    eq,
    skip_from_py_object
)]
#[derive(Clone, PartialEq)]
pub struct PyBorderPlan(core::BorderPlan);

#[pymethods]
impl PyBorderPlan {
    /// Rejects plans that are not magic borders unless `check` is false.
    #[new]
    #[pyo3(signature = (n, v, w, b, c, *, check = true))]
    fn new(n: usize, v: i64, w: i64, b: Vec<i64>, c: Vec<i64>, check: bool) -> PyResult<Self> {
        let n = order(n)?;
        if check {
            core::BorderPlan::validated(n, v, w, b, c)
                .map(Self)
                .map_err(py_err)
        } else {
            Ok(Self(core::BorderPlan::new(n, v, w, b, c)))
        }
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n.get()
    }

    #[getter]
    fn v(&self) -> i64 {
        self.0.v
    }

    #[getter]
    fn w(&self) -> i64 {
        self.0.w
    }

    #[getter]
    fn b(&self) -> Vec<i64> {
        self.0.b.clone()
    }

    #[getter]
    fn c(&self) -> Vec<i64> {
        self.0.c.clone()
    }

    fn top_sum(&self) -> i64 {
        self.0.top_sum()
    }

    fn left_sum(&self) -> i64 {
        self.0.left_sum()
    }

    /// The same border with both interiors sorted.
    fn canonical(&self) -> Self {
        Self(self.0.canonical().to_plan())
    }

    /// The full frame as rows; interior cells are `None`.
    fn frame(&self) -> PyResult<Vec<Vec<Option<i64>>>> {
        let frame = core::render_frame(&self.0).map_err(py_err)?;
        Ok(frame.rows().map(|r| r.to_vec()).collect())
    }

    fn __repr__(&self) -> String {
        let p = &self.0;
        format!(
            "BorderPlan(n={}, v={}, w={}, b={:?}, c={:?})",
            p.n, p.v, p.w, p.b, p.c
        )
    }
}

/// Outcome of a verification: `valid` and one message per violation.
#[pyclass(name = "CheckReport", module = "bordered_magic", frozen)]
pub struct PyCheckReport {
    #[pyo3(get)]
    valid: bool,
    #[pyo3(get)]
    violations: Vec<String>,
}

impl From<core::CheckReport> for PyCheckReport {
    fn from(r: core::CheckReport) -> Self {
        Self {
            valid: r.valid,
            violations: r.violations.iter().map(|v| v.to_string()).collect(),
        }
    }
}

#[pymethods]
impl PyCheckReport {
    fn __bool__(&self) -> bool {
        self.valid
    }

    fn __repr__(&self) -> String {
        format!(
            "CheckReport(valid={}, violations={:?})",
            self.valid, self.violations
        )
    }
}

fn square(rows: Vec<Vec<i64>>) -> PyResult<core::MagicSquare> {
    core::MagicSquare::from_rows(&rows).map_err(py_err)
}

/// Line sum of a magic square of order `order`.
#[pyfunction]
fn magic_constant(order: usize) -> PyResult<i64> {
    core::magic_constant(order).map_err(py_err)
}

/// The recipe border of inner order `n >= 3`.
#[pyfunction]
fn build_border(n: usize) -> PyResult<PyBorderPlan> {
    core::build_border(n).map(PyBorderPlan).map_err(py_err)
}

/// A bordered magic square of order `order >= 3`, as rows.
#[pyfunction]
fn build_square(order: usize) -> PyResult<Vec<Vec<i64>>> {
    let sq = core::build_square(order).map_err(py_err)?;
    Ok(sq.rows().map(|r| r.to_vec()).collect())
}

/// A border of even inner order `n` with upper corners `v` and `w`.
/// Returns the plan and a short description of where it came from.
#[pyfunction]
fn construct_with_corners(n: usize, v: i64, w: i64) -> PyResult<(PyBorderPlan, String)> {
    let c = core::construct_with_corners(n, v, w).map_err(py_err)?;
    let source = match c.source {
        core::Source::Order4Table => "order-4 table".to_string(),
        core::Source::Extension { shift } => format!("extension, shift {shift}"),
        core::Source::OrderMTable(status) => format!("order-m table, {}", status.label()),
        core::Source::Search => "search".to_string(),
    };
    Ok((PyBorderPlan(c.plan), source))
}

#[pyfunction]
fn verify_border(plan: &PyBorderPlan) -> PyCheckReport {
    core::verify_border(&plan.0).into()
}

#[pyfunction]
fn verify_square(rows: Vec<Vec<i64>>) -> PyResult<PyCheckReport> {
    Ok(core::verify_square(&square(rows)?).into())
}

/// Checks every concentric layer of a square.
#[pyfunction]
fn verify_bordered(rows: Vec<Vec<i64>>) -> PyResult<PyCheckReport> {
    Ok(core::verify_bordered(&square(rows)?).into())
}

/// Number of canonical borders for each corner pair at inner order `n`.
#[pyfunction]
#[pyo3(signature = (n, all_corners = false, max_nodes = None))]
fn count_omega(
    n: usize,
    all_corners: bool,
    max_nodes: Option<u64>,
) -> PyResult<HashMap<(i64, i64), u64>> {
    let scope = if all_corners {
        CornerScope::Full
    } else {
        CornerScope::Small
    };
    let mut budget = SearchBudget::unlimited();
    if let Some(limit) = max_nodes {
        budget = budget.with_nodes(limit);
    }
    let counts = core::count_omega(order(n)?, scope, budget).map_err(py_err)?;
    Ok(counts.into_iter().collect())
}

/// Canonical borders of inner order `n` with corners `v, w`.
#[pyfunction]
#[pyo3(signature = (n, v, w, limit = None))]
fn enumerate_omega(n: usize, v: i64, w: i64, limit: Option<usize>) -> PyResult<Vec<PyBorderPlan>> {
    let key = core::OmegaKey::new(order(n)?, v, w).map_err(py_err)?;
    let mut budget = SearchBudget::unlimited();
    if let Some(limit) = limit {
        budget = budget.with_solutions(limit);
    }
    let found = core::enumerate_omega(key, budget);
    Ok(found
        .borders
        .iter()
        .map(|b| PyBorderPlan(b.to_plan()))
        .collect())
}

/// Names accepted by `apply_symmetry`.
#[pyfunction]
fn symmetries() -> Vec<&'static str> {
    BorderSymmetry::ALL.iter().map(|s| s.name()).collect()
}

#[pyfunction]
fn apply_symmetry(plan: &PyBorderPlan, name: &str) -> PyResult<PyBorderPlan> {
    Ok(PyBorderPlan(core::apply_symmetry(&plan.0, symmetry(name)?)))
}

/// All eight symmetry images, as `(name, plan)` pairs.
#[pyfunction]
fn orbit(plan: &PyBorderPlan) -> Vec<(&'static str, PyBorderPlan)> {
    core::orbit(&plan.0)
        .into_iter()
        .map(|(s, p)| (s.name(), PyBorderPlan(p)))
        .collect()
}

/// Reorders the top-row and left-column interiors.
#[pyfunction]
fn permute_lines(
    plan: &PyBorderPlan,
    perm_b: Vec<usize>,
    perm_c: Vec<usize>,
) -> PyResult<PyBorderPlan> {
    core::permute_lines(&plan.0, &perm_b, &perm_c)
        .map(PyBorderPlan)
        .map_err(py_err)
}

#[pymodule]
#[pyo3(name = "bordered_magic")]
fn bordered_magic_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyBorderPlan>()?;
    m.add_class::<PyCheckReport>()?;
    m.add_function(wrap_pyfunction!(magic_constant, m)?)?;
    m.add_function(wrap_pyfunction!(build_border, m)?)?;
    m.add_function(wrap_pyfunction!(build_square, m)?)?;
    m.add_function(wrap_pyfunction!(construct_with_corners, m)?)?;
    m.add_function(wrap_pyfunction!(verify_border, m)?)?;
    m.add_function(wrap_pyfunction!(verify_square, m)?)?;
    m.add_function(wrap_pyfunction!(verify_bordered, m)?)?;
    m.add_function(wrap_pyfunction!(count_omega, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_omega, m)?)?;
    m.add_function(wrap_pyfunction!(symmetries, m)?)?;
    m.add_function(wrap_pyfunction!(apply_symmetry, m)?)?;
    m.add_function(wrap_pyfunction!(orbit, m)?)?;
    m.add_function(wrap_pyfunction!(permute_lines, m)?)?;
    Ok(())
}
