//! Python bindings: normal forms, case contexts, the line evaluator,
//! classical realizations and the suite runner.

use std::path::PathBuf;
use std::time::Duration;

use coideal_core::braidact::{tau_images, CaseContext, TauDir};
use coideal_core::chevalley::Realization;
use coideal_core::report::{Report as CoreReport, Status};
use coideal_core::repl::Session as CoreSession;
use coideal_core::suites::{exit_code, run_suite as core_run_suite, SuiteConfig};
use coideal_core::uqg::{parse_expression, set_cache_dir as core_set_cache_dir, set_default_degree_cap};
use coideal_core::{CaseSpec, Error, RootDatum, Uq};
use pyo3::exceptions::{PyRuntimeError, PySyntaxError, PyValueError};
use pyo3::prelude::*;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Parse { .. } => PySyntaxError::new_err(e.to_string()),
        Error::Config(_) | Error::UnknownCase(_) => PyValueError::new_err(e.to_string()),
        e => PyRuntimeError::new_err(e.to_string()),
    }
}

/// `U_q(g)` of a Cartan type such as "A2" or "G2".
#[pyclass(name = "Uq", unsendable)]
struct PyUq {
    uq: Uq,
}

#[pymethods]
impl PyUq {
    #[new]
    fn new(cartan_type: &str) -> PyResult<Self> {
        let rd = RootDatum::parse(cartan_type).map_err(to_py)?;
        Ok(PyUq {
            uq: Uq::new(&rd).map_err(to_py)?,
        })
    }

    #[getter]
    fn rank(&self) -> usize {
        self.uq.rank()
    }

    #[getter]
    fn name(&self) -> String {
        self.uq.datum().name()
    }

    /// Rendered normal form of an expression in E, F, K.
    fn normal_form(&self, expr: &str) -> PyResult<String> {
        let x = parse_expression(expr, Some(self.uq.datum())).map_err(to_py)?;
        Ok(self.uq.normal_form(&x).map_err(to_py)?.to_string())
    }

    fn equal(&self, a: &str, b: &str) -> PyResult<bool> {
        let x = parse_expression(a, Some(self.uq.datum())).map_err(to_py)?;
        let y = parse_expression(b, Some(self.uq.datum())).map_err(to_py)?;
        self.uq.equal(&x, &y).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!("Uq({:?})", self.uq.datum().name())
    }
}

/// A quantum symmetric pair case such as "I-B3" or "III-A7".
#[pyclass(name = "Case", unsendable)]
struct PyCase {
    ctx: CaseContext,
}

#[pymethods]
impl PyCase {
    #[new]
    fn new(id: &str) -> PyResult<Self> {
        let case = CaseSpec::parse(id).map_err(to_py)?;
        Ok(PyCase {
            ctx: CaseContext::new(&case).map_err(to_py)?,
        })
    }

    #[getter]
    fn id(&self) -> String {
        self.ctx.case.id()
    }

    #[getter]
    fn ambient(&self) -> String {
        self.ctx.case.ambient().name()
    }

    #[getter]
    fn sigma_rank(&self) -> usize {
        self.ctx.case.sigma_rank()
    }

    /// Value in `U_q(g)` of an expression that may contain B_i.
    fn value(&self, expr: &str) -> PyResult<String> {
        let x = parse_expression(expr, Some(self.ctx.case.ambient())).map_err(to_py)?;
        Ok(self.ctx.value(&x).map_err(to_py)?.to_string())
    }

    /// Formal image of B_j under τ_i (`minus=False`) or τ_i^-; indices 1-based.
    #[pyo3(signature = (i, j, minus = false))]
    fn tau_image(&self, i: usize, j: usize, minus: bool) -> PyResult<String> {
        if i == 0 || i > self.ctx.case.sigma_rank() || j == 0 || j > self.ctx.case.ambient().rank() {
            return Err(PyValueError::new_err("index out of range"));
        }
        let dir = if minus { TauDir::TauMinus } else { TauDir::Tau };
        let t = tau_images(&self.ctx.case, i - 1, dir).map_err(to_py)?;
        let b = coideal_core::GenSymbol::B(j as u8 - 1);
        Ok(t.images.image(b).map(|x| x.to_string()).unwrap_or_else(|| format!("B{j}")))
    }

    fn __repr__(&self) -> String {
        format!("Case({:?})", self.ctx.case.id())
    }
}

/// Line evaluator: `case ID`, `type NAME`, `nf(x)`, `tau(i, ±, x)`, `T(i, ±, x)`.
#[pyclass(name = "Session", unsendable)]
struct PySession {
    s: CoreSession,
}

#[pymethods]
impl PySession {
    #[new]
    #[pyo3(signature = (case = None))]
    fn new(case: Option<&str>) -> PyResult<Self> {
        let s = match case {
            Some(c) => CoreSession::with_case(c).map_err(to_py)?,
            None => CoreSession::new(),
        };
        Ok(PySession { s })
    }

    fn eval(&mut self, line: &str) -> PyResult<String> {
        self.s.eval(line).map_err(to_py)
    }
}

/// The classical matrix realization of a case at `q = 1`.
#[pyclass(name = "Realization", unsendable)]
struct PyRealization {
    r: Realization,
}

#[pymethods]
impl PyRealization {
    #[new]
    fn new(id: &str) -> PyResult<Self> {
        let case = CaseSpec::parse(id).map_err(to_py)?;
        Ok(PyRealization {
            r: Realization::new(&case).map_err(to_py)?,
        })
    }

    /// Size N of the matrices.
    #[getter]
    fn size(&self) -> usize {
        self.r.dim()
    }

    #[getter]
    fn dim_g(&self) -> usize {
        self.r.g_basis().len()
    }

    #[getter]
    fn dim_k(&self) -> usize {
        self.r.k_basis().len()
    }

    /// Rendered `b_j`, 1-based.
    fn b(&self, j: usize) -> PyResult<String> {
        if j == 0 || j > self.r.case().ambient().rank() {
            return Err(PyValueError::new_err("index out of range"));
        }
        Ok(self.r.b(j).to_string())
    }

    /// Image of an expression in E, F, K, B at `q = 1`.
    fn specialize(&self, expr: &str) -> PyResult<String> {
        let x = parse_expression(expr, Some(self.r.case().ambient())).map_err(to_py)?;
        Ok(self.r.specialize(&x).map_err(to_py)?.to_string())
    }
}

/// Rows of a verification run.
#[pyclass(name = "Report", unsendable)]
struct PyReport {
    rep: CoreReport,
}

#[pymethods]
impl PyReport {
    /// `(suite, check, identity, status, ms, max_terms)` per row.
    #[getter]
    fn rows(&self) -> Vec<(String, String, String, String, u64, usize)> {
        self.rep
            .rows
            .iter()
            .map(|r| (r.suite.clone(), r.check.clone(), r.identity.clone(), r.status.to_string(), r.ms, r.max_terms))
            .collect()
    }

    #[getter]
    fn passed(&self) -> usize {
        self.rep.count(Status::Pass)
    }

    #[getter]
    fn failed(&self) -> usize {
        self.rep.count(Status::Fail)
    }

    #[getter]
    fn skipped(&self) -> usize {
        self.rep.count(Status::Skipped)
    }

    #[pyo3(signature = (allow_skip = false))]
    fn exit_code(&self, allow_skip: bool) -> i32 {
        exit_code(&self.rep, allow_skip)
    }

    fn to_json(&self) -> String {
        self.rep.to_json()
    }

    fn __len__(&self) -> usize {
        self.rep.rows.len()
    }

    fn __repr__(&self) -> String {
        format!("Report(pass={}, fail={}, skipped={})", self.passed(), self.failed(), self.skipped())
    }
}

/// Run a suite by id; see `coideal list` for the ids.
#[pyfunction]
#[pyo3(signature = (suite, checks = None, long = false, time_budget = None, mem_limit = None))]
fn run_suite(
    py: Python<'_>,
    suite: &str,
    checks: Option<Vec<String>>,
    long: bool,
    time_budget: Option<f64>,
    mem_limit: Option<u64>,
) -> PyResult<PyReport> {
    let mut cfg = SuiteConfig::new(suite);
    cfg.checks = checks;
    cfg.long = long;
    cfg.time_budget = time_budget.map(Duration::from_secs_f64);
    cfg.mem_limit = mem_limit;
    let rep = py.detach(|| core_run_suite(&cfg, &mut |_, _| {})).map_err(to_py)?;
    Ok(PyReport { rep })
}

#[pyfunction]
fn set_degree_cap(cap: usize) {
    set_default_degree_cap(cap);
}

#[pyfunction]
#[pyo3(signature = (path = None))]
fn set_cache_dir(path: Option<PathBuf>) {
    core_set_cache_dir(path);
}

#[pymodule(name = "coideal")]
pub fn coideal_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyUq>()?;
    m.add_class::<PyCase>()?;
    m.add_class::<PySession>()?;
    m.add_class::<PyRealization>()?;
    m.add_class::<PyReport>()?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add_function(wrap_pyfunction!(set_degree_cap, m)?)?;
    m.add_function(wrap_pyfunction!(set_cache_dir, m)?)?;
    Ok(())
}
