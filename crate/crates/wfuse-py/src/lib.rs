//! The `wfuse` Python module: statevector oracle, analytic truth tables and
//! the cost engine, exposed with plain Python types (dicts, lists, complex
//! numbers) plus a thin `PureState` class.
//!
//! Build with `cargo build -p wfuse-py --release`, rename the produced
//! `libwfuse.so` to `wfuse.so` somewhere on `sys.path`, and `import wfuse`.
//! `python/smoke_test.py` at the repository root automates exactly that.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use wfuse_core::analytic;
use wfuse_core::cost;
use wfuse_core::oracle;
use wfuse_core::types::SchemeId;

fn value_err(e: wfuse_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_scheme(scheme: &str) -> PyResult<SchemeId> {
    scheme.parse().map_err(PyValueError::new_err)
}

/// A pure state of polarization qubits (H = |0>, V = |1>, big-endian basis
/// ordering with qubit 0 as the most significant bit).
#[pyclass(frozen, skip_from_py_object)]
#[derive(Clone)]
struct PureState {
    inner: wfuse_core::PureState,
}

#[pymethods]
impl PureState {
    #[getter]
    fn qubit_count(&self) -> usize {
        self.inner.qubit_count()
    }

    /// Dense amplitude vector of length `2**qubit_count`.
    fn amplitudes(&self) -> Vec<Complex64> {
        self.inner.amplitudes().to_vec()
    }

    /// Squared overlap `|<self|other>|**2`.
    fn fidelity(&self, other: &PureState) -> PyResult<f64> {
        self.inner.fidelity(&other.inner).map_err(value_err)
    }

    fn __repr__(&self) -> String {
        format!("PureState(qubits={})", self.inner.qubit_count())
    }
}

/// The n-photon W state; `build_w(1)` is a single V photon.
#[pyfunction]
fn build_w(n: u64) -> PyResult<PureState> {
    Ok(PureState {
        inner: oracle::build_w(n).map_err(value_err)?,
    })
}

/// Controlled swap of `target1`/`target2` on basis states where `control`
/// is V.
#[pyfunction]
fn apply_fredkin(
    state: &PureState,
    control: usize,
    target1: usize,
    target2: usize,
) -> PyResult<PureState> {
    Ok(PureState {
        inner: oracle::apply_fredkin(&state.inner, control, target1, target2)
            .map_err(value_err)?,
    })
}

/// Squared overlap of two states of equal qubit count.
#[pyfunction]
fn fidelity(x: &PureState, y: &PureState) -> PyResult<f64> {
    oracle::fidelity(&x.inner, &y.inner).map_err(value_err)
}

fn gate_branch_dict<'py>(
    py: Python<'py>,
    outcome: String,
    probability: f64,
    post: Option<wfuse_core::PureState>,
) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("outcome", outcome)?;
    d.set_item("probability", probability)?;
    d.set_item("post_state", post.map(|inner| PureState { inner }))?;
    Ok(d)
}

/// Measure the postselective fusion gate on `q1` and `q2`. Returns three
/// branch dicts (`outcome`, `probability`, `post_state`), in S, R, F order.
#[pyfunction]
fn fusion_gate_measure<'py>(
    py: Python<'py>,
    state: &PureState,
    q1: usize,
    q2: usize,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    oracle::fusion_gate_measure(&state.inner, q1, q2)
        .map_err(value_err)?
        .into_iter()
        .map(|b| gate_branch_dict(py, b.outcome.to_string(), b.probability, b.post_state))
        .collect()
}

fn scheme_branches<'py>(
    py: Python<'py>,
    branches: Vec<oracle::SchemeBranch>,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    branches
        .into_iter()
        .map(|b| {
            let d = PyDict::new(py);
            let gates: Vec<String> = b.gates.iter().map(|g| g.to_string()).collect();
            d.set_item("gates", gates)?;
            d.set_item("class", b.class.to_string())?;
            d.set_item("probability", b.probability)?;
            d.set_item("post_state", b.post_state.map(|inner| PureState { inner }))?;
            Ok(d)
        })
        .collect()
}

/// Run the three-state scheme; returns the nine joint branches.
#[pyfunction]
fn run_scheme3(py: Python<'_>, n: u64, m: u64, t: u64) -> PyResult<Vec<Bound<'_, PyDict>>> {
    scheme_branches(py, oracle::run_scheme3(n, m, t).map_err(value_err)?)
}

/// Run the plain two-state fusion gate.
#[pyfunction]
fn run_scheme2_basic(py: Python<'_>, n: u64, m: u64) -> PyResult<Vec<Bound<'_, PyDict>>> {
    scheme_branches(py, oracle::run_scheme2_basic(n, m).map_err(value_err)?)
}

/// Run the Fredkin-enhanced two-state scheme.
#[pyfunction]
fn run_scheme2_enhanced(py: Python<'_>, n: u64, m: u64) -> PyResult<Vec<Bound<'_, PyDict>>> {
    scheme_branches(py, oracle::run_scheme2_enhanced(n, m).map_err(value_err)?)
}

/// The eight-row truth table of the three-state scheme.
#[pyfunction]
fn truth_table3(py: Python<'_>, n: u64, m: u64, t: u64) -> PyResult<Vec<Bound<'_, PyDict>>> {
    analytic::truth_table3(n, m, t)
        .map_err(value_err)?
        .into_iter()
        .map(|row| {
            let d = PyDict::new(py);
            let pols =
                |ps: &[wfuse_core::Polarization]| -> Vec<String> { ps.iter().map(|p| p.to_string()).collect() };
            d.set_item("input", pols(&row.input))?;
            d.set_item("throughput", pols(&row.throughput))?;
            d.set_item("fg1", row.gates.0.to_string())?;
            d.set_item("fg2", row.gates.1.to_string())?;
            d.set_item("result", row.result.to_string())?;
            d.set_item("prob_exact", row.probability.to_string())?;
            d.set_item("probability", row.probability.to_f64())?;
            Ok(d)
        })
        .collect()
}

fn outcome_records<'py>(
    py: Python<'py>,
    records: Vec<analytic::OutcomeRecord>,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    records
        .into_iter()
        .map(|r| {
            let d = PyDict::new(py);
            d.set_item("class", r.class.to_string())?;
            d.set_item("probability", r.probability.to_f64())?;
            d.set_item("prob_exact", r.probability.to_string())?;
            d.set_item("blocks", r.result_blocks.to_string())?;
            Ok(d)
        })
        .collect()
}

/// Outcome classes of the three-state scheme with exact probabilities.
#[pyfunction]
fn outcomes3(py: Python<'_>, n: u64, m: u64, t: u64) -> PyResult<Vec<Bound<'_, PyDict>>> {
    outcome_records(py, analytic::outcomes3(n, m, t).map_err(value_err)?)
}

#[pyfunction]
fn outcomes2_basic(py: Python<'_>, n: u64, m: u64) -> PyResult<Vec<Bound<'_, PyDict>>> {
    outcome_records(py, analytic::outcomes2_basic(n, m).map_err(value_err)?)
}

#[pyfunction]
fn outcomes2_enhanced(py: Python<'_>, n: u64, m: u64) -> PyResult<Vec<Bound<'_, PyDict>>> {
    outcome_records(py, analytic::outcomes2_enhanced(n, m).map_err(value_err)?)
}

fn plan_dict<'py>(py: Python<'py>, node: &cost::PlanNode) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("size", node.size)?;
    d.set_item("cost", node.cost.to_f64())?;
    d.set_item("cost_exact", node.cost.to_string())?;
    d.set_item("success_prob", node.success_prob.to_f64())?;
    let children: Vec<Bound<'py, PyDict>> = node
        .children
        .iter()
        .map(|c| plan_dict(py, c))
        .collect::<PyResult<_>>()?;
    d.set_item("children", children)?;
    Ok(d)
}

/// Cheapest no-recycle plan for a target size; returns the plan tree as
/// nested dicts.
#[pyfunction]
fn dp_norecycle<'py>(py: Python<'py>, scheme: &str, target: u64) -> PyResult<Bound<'py, PyDict>> {
    let plan = cost::dp_norecycle(parse_scheme(scheme)?, target).map_err(value_err)?;
    plan_dict(py, &plan)
}

/// Sizes after repeatedly fusing equal-size states, starting from 3.
#[pyfunction]
fn equal_size_sequence(scheme: &str, steps: u64) -> PyResult<Vec<u64>> {
    Ok(cost::equal_size_sequence(parse_scheme(scheme)?, steps))
}

/// `(size, cost, cost_exact)` along the equal-size growth sequence until
/// the last size reaches at least `min_last`.
#[pyfunction]
fn equal_size_costs(scheme: &str, min_last: u64) -> PyResult<Vec<(u64, f64, String)>> {
    Ok(cost::equal_size_costs(parse_scheme(scheme)?, min_last)
        .into_iter()
        .map(|(size, cost)| (size, cost.to_f64(), cost.to_string()))
        .collect())
}

/// Least-squares fit of `cost(N) = c * sqrt(N) * N**(log2(N)/k)`.
#[pyfunction]
fn fit_exponent(py: Python<'_>, points: Vec<(u64, f64)>) -> PyResult<Bound<'_, PyDict>> {
    let fit = cost::fit_exponent(&points).map_err(value_err)?;
    let d = PyDict::new(py);
    d.set_item("k", fit.k)?;
    d.set_item("c", fit.c)?;
    d.set_item("residual", fit.residual)?;
    Ok(d)
}

/// Default set boundaries as `(lo, hi)` pairs, `hi = None` for unbounded.
#[pyfunction]
fn default_sets(scheme: &str) -> PyResult<Vec<(u64, Option<u64>)>> {
    Ok(cost::default_sets(parse_scheme(scheme)?)
        .into_iter()
        .map(|s| (s.lo, s.hi))
        .collect())
}

/// Monte Carlo recycling simulation. `target_size` selects the stopping
/// set (the set containing it); runs are seeded substreams of `seed`, so
/// records are reproducible bit for bit.
#[pyfunction]
#[pyo3(signature = (scheme, target_size, runs = 1000, seed = 0, bell_bin = false))]
fn mc_recycle<'py>(
    py: Python<'py>,
    scheme: &str,
    target_size: u64,
    runs: u64,
    seed: u64,
    bell_bin: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let scheme = parse_scheme(scheme)?;
    let sets = cost::default_sets(scheme);
    let target_set = cost::set_index_for(&sets, target_size)
        .ok_or_else(|| PyValueError::new_err(format!("no set covers size {target_size}")))?;
    let mut config = cost::StrategyConfig::new(scheme, target_set, runs, seed);
    config.bell_bin_enabled = bell_bin;
    let record = cost::mc_recycle(&config).map_err(value_err)?;
    let d = PyDict::new(py);
    d.set_item("scheme", record.scheme.to_string())?;
    d.set_item("target_set", record.target_set)?;
    d.set_item("runs", record.runs)?;
    d.set_item("seed", record.seed)?;
    d.set_item("mean_cost", record.mean_cost)?;
    d.set_item("std_dev", record.std_dev)?;
    Ok(d)
}

#[pymodule]
fn wfuse(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PureState>()?;
    m.add_function(wrap_pyfunction!(build_w, m)?)?;
    m.add_function(wrap_pyfunction!(apply_fredkin, m)?)?;
    m.add_function(wrap_pyfunction!(fidelity, m)?)?;
    m.add_function(wrap_pyfunction!(fusion_gate_measure, m)?)?;
    m.add_function(wrap_pyfunction!(run_scheme3, m)?)?;
    m.add_function(wrap_pyfunction!(run_scheme2_basic, m)?)?;
    m.add_function(wrap_pyfunction!(run_scheme2_enhanced, m)?)?;
    m.add_function(wrap_pyfunction!(truth_table3, m)?)?;
    m.add_function(wrap_pyfunction!(outcomes3, m)?)?;
    m.add_function(wrap_pyfunction!(outcomes2_basic, m)?)?;
    m.add_function(wrap_pyfunction!(outcomes2_enhanced, m)?)?;
    m.add_function(wrap_pyfunction!(dp_norecycle, m)?)?;
    m.add_function(wrap_pyfunction!(equal_size_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(equal_size_costs, m)?)?;
    m.add_function(wrap_pyfunction!(fit_exponent, m)?)?;
    m.add_function(wrap_pyfunction!(default_sets, m)?)?;
    m.add_function(wrap_pyfunction!(mc_recycle, m)?)?;
    Ok(())
}
