//! Implementations behind the CLI subcommands. Everything returns data, so
//! the whole surface is testable without spawning the binary; `main` only
//! parses flags, routes, prints and maps errors to exit codes.

use std::collections::BTreeMap;
use std::path::PathBuf;

use wfuse_core::analytic::{outcomes2_basic, outcomes2_enhanced, outcomes3, truth_table3};
use wfuse_core::block::{Block, BlockState};
use wfuse_core::cost::{
    dp_norecycle, fit_exponent, mc_recycle, set_index_for, FusionOrder, SizeInterval,
    StrategyConfig,
};
use wfuse_core::oracle::{
    run_scheme2_basic, run_scheme2_enhanced, run_scheme3, scheme3_input_probs, SchemeBranch,
};
use wfuse_core::state::MAX_QUBITS;
use wfuse_core::types::{GateOutcome, OutcomeClass, SchemeId};

use crate::csv::CsvTable;
use crate::error::CliError;
use crate::svg::{render_cost_chart, Series};

const TOL: f64 = 1e-12;

// ---------------------------------------------------------------------------
// truth-table
// ---------------------------------------------------------------------------

/// The eight-row truth table as CSV with both exact and float probability
/// columns.
pub fn cmd_truth_table(n: u64, m: u64, t: u64) -> Result<CsvTable, CliError> {
    let rows = truth_table3(n, m, t)?;
    let mut table = CsvTable::new(&[
        "input",
        "throughput",
        "fg1",
        "fg2",
        "result",
        "prob_exact",
        "prob_float",
    ]);
    for row in rows {
        let input = row
            .input
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(",");
        let throughput = format!(
            "{{{},{}}},{{{},{}}}",
            row.throughput[0], row.throughput[1], row.throughput[2], row.throughput[3]
        );
        table.push_row(vec![
            input,
            throughput,
            row.gates.0.to_string(),
            row.gates.1.to_string(),
            row.result.to_string(),
            row.probability.to_string(),
            row.probability.to_f64().to_string(),
        ]);
    }
    Ok(table)
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

/// Outcome of the oracle-vs-analytic matrix.
#[derive(Debug, Default)]
pub struct VerifyReport {
    /// One human-readable line per checked configuration.
    pub lines: Vec<String>,
    /// Descriptions of every failed check; empty means all passed.
    pub failures: Vec<String>,
    pub checks: usize,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn class_probability(branches: &[SchemeBranch], class: OutcomeClass) -> f64 {
    branches
        .iter()
        .filter(|b| b.class == class)
        .map(|b| b.probability)
        .sum()
}

fn class_branch(branches: &[SchemeBranch], class: OutcomeClass) -> Option<&SchemeBranch> {
    branches
        .iter()
        .find(|b| b.class == class && b.probability > 0.0)
}

/// Runs the full equivalence matrix for sizes `2..=max_size` across the
/// three schemes: truth-table rows against oracle input sectors, class
/// probabilities, post-state fidelities and the impossible outcomes.
///
/// The whole matrix must fit the statevector guard, which caps `max_size`
/// at 7 (the largest three-state run needs `3*max_size + 1` qubits).
pub fn cmd_verify(max_size: u64) -> Result<VerifyReport, CliError> {
    if max_size < 2 {
        return Err(CliError::Data(format!(
            "max size must be at least 2, got {max_size}"
        )));
    }
    if 3 * max_size + 1 > MAX_QUBITS as u64 {
        return Err(CliError::Data(format!(
            "max size {max_size} exceeds the oracle guard: the ({max_size},{max_size},{max_size}) \
             run needs {} qubits but the statevector is capped at {MAX_QUBITS}",
            3 * max_size + 1
        )));
    }

    let mut report = VerifyReport::default();
    for n in 2..=max_size {
        for m in 2..=max_size {
            for t in 2..=max_size {
                verify_three(n, m, t, &mut report);
            }
        }
    }
    for n in 2..=max_size {
        for m in 2..=max_size {
            verify_two(n, m, &mut report);
        }
    }
    Ok(report)
}

fn check(report: &mut VerifyReport, ok: bool, what: impl FnOnce() -> String) -> bool {
    report.checks += 1;
    if !ok {
        report.failures.push(what());
    }
    ok
}

fn verify_three(n: u64, m: u64, t: u64, report: &mut VerifyReport) {
    let mut ok = true;
    let rows = truth_table3(n, m, t).expect("sizes checked");
    let sectors = scheme3_input_probs(n, m, t).expect("guard checked");
    let total: wfuse_core::Rational = rows.iter().map(|r| r.probability.clone()).sum();
    ok &= check(report, total.is_one(), || {
        format!("three ({n},{m},{t}): row probabilities sum to {total}, not 1")
    });
    for (row, (pattern, prob)) in rows.iter().zip(&sectors) {
        ok &= check(report, row.input == *pattern, || {
            format!("three ({n},{m},{t}): row order mismatch at {:?}", row.input)
        });
        ok &= check(report, (row.probability.to_f64() - prob).abs() < TOL, || {
            format!(
                "three ({n},{m},{t}) row {:?}: analytic {} vs oracle {prob}",
                row.input, row.probability
            )
        });
    }

    let branches = run_scheme3(n, m, t).expect("guard checked");
    for record in outcomes3(n, m, t).expect("sizes checked") {
        let oracle = class_probability(&branches, record.class);
        ok &= check(
            report,
            (record.probability.to_f64() - oracle).abs() < TOL,
            || {
                format!(
                    "three ({n},{m},{t}) class {}: analytic {} vs oracle {oracle}",
                    record.class, record.probability
                )
            },
        );
        let expected = record.result_blocks.materialize().expect("guard checked");
        match class_branch(&branches, record.class) {
            Some(branch) => {
                let fid = branch
                    .post_state
                    .as_ref()
                    .map(|p| p.fidelity(&expected).expect("same counts"))
                    .unwrap_or(0.0);
                ok &= check(report, fid >= 1.0 - TOL, || {
                    format!(
                        "three ({n},{m},{t}) class {}: fidelity {fid} with {}",
                        record.class, record.result_blocks
                    )
                });
            }
            None => {
                ok &= check(report, false, || {
                    format!("three ({n},{m},{t}) class {}: no oracle branch", record.class)
                });
            }
        }
    }

    for b in &branches {
        let pair = (b.gates[0], b.gates[1]);
        if matches!(
            pair,
            (GateOutcome::Failure, _) | (GateOutcome::Recycle, GateOutcome::Failure)
        ) {
            ok &= check(report, b.probability == 0.0, || {
                format!("three ({n},{m},{t}): impossible pair {pair:?} has probability {}", b.probability)
            });
        }
    }

    report.lines.push(format!(
        "{} three ({n},{m},{t}): rows, classes, post-states, impossible outcomes",
        if ok { "ok  " } else { "FAIL" }
    ));
}

fn verify_two(n: u64, m: u64, report: &mut VerifyReport) {
    let mut ok = true;

    let branches = run_scheme2_basic(n, m).expect("guard checked");
    for record in outcomes2_basic(n, m).expect("sizes checked") {
        let oracle = class_probability(&branches, record.class);
        ok &= check(
            report,
            (record.probability.to_f64() - oracle).abs() < TOL,
            || format!("two-basic ({n},{m}) class {}: oracle {oracle}", record.class),
        );
        if let Some(branch) = class_branch(&branches, record.class) {
            let expected = record.result_blocks.materialize().expect("guard");
            let fid = branch
                .post_state
                .as_ref()
                .map(|p| p.fidelity(&expected).expect("same counts"))
                .unwrap_or(0.0);
            ok &= check(report, fid >= 1.0 - TOL, || {
                format!("two-basic ({n},{m}) class {}: fidelity {fid}", record.class)
            });
        }
    }
    report.lines.push(format!(
        "{} two-basic ({n},{m}): probabilities, post-states",
        if ok { "ok  " } else { "FAIL" }
    ));

    let mut ok = true;
    let branches = run_scheme2_enhanced(n, m).expect("guard checked");
    ok &= check(
        report,
        class_probability(&branches, OutcomeClass::Failure) == 0.0,
        || format!("two-enhanced ({n},{m}): failure branch has nonzero probability"),
    );
    for record in outcomes2_enhanced(n, m).expect("sizes checked") {
        let oracle = class_probability(&branches, record.class);
        ok &= check(
            report,
            (record.probability.to_f64() - oracle).abs() < TOL,
            || format!("two-enhanced ({n},{m}) class {}: oracle {oracle}", record.class),
        );
        // the undetected ancilla photon trails every non-success branch
        let expected = match record.class {
            OutcomeClass::Success => record.result_blocks.clone(),
            _ => {
                let mut blocks = record.result_blocks.blocks().to_vec();
                blocks.push(Block::AllH(1));
                BlockState::new(blocks).expect("valid blocks")
            }
        };
        let expected = expected.materialize().expect("guard");
        if let Some(branch) = class_branch(&branches, record.class) {
            let fid = branch
                .post_state
                .as_ref()
                .map(|p| p.fidelity(&expected).expect("same counts"))
                .unwrap_or(0.0);
            ok &= check(report, fid >= 1.0 - TOL, || {
                format!("two-enhanced ({n},{m}) class {}: fidelity {fid}", record.class)
            });
        }
    }
    report.lines.push(format!(
        "{} two-enhanced ({n},{m}): probabilities, failure-free, post-states",
        if ok { "ok  " } else { "FAIL" }
    ));
}

// ---------------------------------------------------------------------------
// cost
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CostMode {
    NoRecycle,
    Recycle,
}

impl std::str::FromStr for CostMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "norecycle" => Ok(CostMode::NoRecycle),
            "recycle" => Ok(CostMode::Recycle),
            other => Err(format!("unknown mode '{other}' (expected norecycle or recycle)")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CostArgs {
    pub scheme: SchemeId,
    pub mode: CostMode,
    /// Target W sizes. In recycle mode each size selects the set containing
    /// it as the stopping set.
    pub targets: Vec<u64>,
    /// Recycle mode only: stop at this set index instead of deriving it
    /// from a size; the row is labeled with the set's lower bound. Used
    /// when `targets` is empty.
    pub target_set: Option<usize>,
    pub runs: u64,
    pub seed: u64,
    pub sets: Vec<SizeInterval>,
    pub bell_bin: bool,
    pub fusion_order: FusionOrder,
}

/// Result of the cost command: the CSV table plus per-row failure notes
/// (unreachable targets and the like), which make the command exit nonzero
/// without suppressing the healthy rows.
#[derive(Debug)]
pub struct CostOutcome {
    pub table: CsvTable,
    pub row_errors: Vec<String>,
}

pub fn cmd_cost(args: &CostArgs) -> Result<CostOutcome, CliError> {
    let mut table = CsvTable::new(&[
        "scheme",
        "target",
        "mode",
        "cost_mean",
        "cost_std",
        "runs",
        "seed",
        "cost_exact",
    ]);
    let mut row_errors = Vec::new();
    let mut fit_points: Vec<(u64, f64)> = Vec::new();

    let mut requests: Vec<u64> = args.targets.clone();
    if requests.is_empty() {
        if let (CostMode::Recycle, Some(set)) = (args.mode, args.target_set) {
            let lo = args
                .sets
                .get(set)
                .ok_or_else(|| {
                    CliError::Data(format!("target set {set} out of range ({} sets)", args.sets.len()))
                })?
                .lo;
            requests.push(lo);
        } else {
            return Err(CliError::Usage("cost: no targets given".into()));
        }
    }

    for &target in &requests {
        match args.mode {
            CostMode::NoRecycle => match dp_norecycle(args.scheme, target) {
                Ok(plan) => {
                    let mean = plan.cost.to_f64();
                    table.push_row(vec![
                        args.scheme.to_string(),
                        target.to_string(),
                        "norecycle".into(),
                        mean.to_string(),
                        "0".into(),
                        "0".into(),
                        "0".into(),
                        plan.cost.to_string(),
                    ]);
                    fit_points.push((target, mean));
                }
                Err(e) => {
                    table.push_row(vec![
                        args.scheme.to_string(),
                        target.to_string(),
                        "norecycle".into(),
                        String::new(),
                        String::new(),
                        "0".into(),
                        "0".into(),
                        String::new(),
                    ]);
                    row_errors.push(format!("target {target}: {e}"));
                }
            },
            CostMode::Recycle => {
                let set = match set_index_for(&args.sets, target) {
                    Some(set) => set,
                    None => {
                        table.push_row(vec![
                            args.scheme.to_string(),
                            target.to_string(),
                            "recycle".into(),
                            String::new(),
                            String::new(),
                            args.runs.to_string(),
                            args.seed.to_string(),
                            String::new(),
                        ]);
                        row_errors.push(format!("target {target}: no set covers this size"));
                        continue;
                    }
                };
                let config = StrategyConfig {
                    scheme: args.scheme,
                    sets: args.sets.clone(),
                    target_set: set,
                    runs: args.runs,
                    master_seed: args.seed,
                    bell_bin_enabled: args.bell_bin,
                    fusion_order: args.fusion_order,
                };
                let record = mc_recycle(&config)?;
                table.push_row(vec![
                    args.scheme.to_string(),
                    target.to_string(),
                    "recycle".into(),
                    record.mean_cost.to_string(),
                    record.std_dev.to_string(),
                    record.runs.to_string(),
                    record.seed.to_string(),
                    String::new(),
                ]);
                fit_points.push((target, record.mean_cost));
            }
        }
    }

    if fit_points.len() >= 3 {
        fit_points.sort_by_key(|p| p.0);
        fit_points.dedup_by_key(|p| p.0);
        match fit_exponent(&fit_points) {
            Ok(fit) => table.comments.push(format!(
                "k_fit={} c={} residual={}",
                fit.k, fit.c, fit.residual
            )),
            Err(e) => table.comments.push(format!("k_fit=unavailable ({e})")),
        }
    }

    Ok(CostOutcome { table, row_errors })
}

// ---------------------------------------------------------------------------
// plot
// ---------------------------------------------------------------------------

/// Parses one cost CSV into `(scheme/mode, target, cost_mean)` points.
/// Rows with empty cost cells (error entries from a failed cost run) are
/// data errors, named by line.
pub fn plot_points(text: &str, name: &str) -> Result<Vec<(String, f64, f64)>, CliError> {
    let table = CsvTable::parse(text)?;
    let need = |col: &str| {
        table
            .column(col)
            .ok_or_else(|| CliError::Data(format!("{name}: missing column '{col}'")))
    };
    let scheme = need("scheme")?;
    let target = need("target")?;
    let mode = need("mode")?;
    let cost = need("cost_mean")?;

    if table.rows.is_empty() {
        return Err(CliError::Data(format!("{name}: no data rows")));
    }
    let mut points = Vec::new();
    for (idx, row) in table.rows.iter().enumerate() {
        let line = idx + 2; // header is line 1
        let x: f64 = row[target]
            .parse()
            .map_err(|e| CliError::Data(format!("{name} line {line}: target: {e}")))?;
        let y: f64 = row[cost]
            .parse()
            .map_err(|e| CliError::Data(format!("{name} line {line}: cost_mean: {e}")))?;
        points.push((format!("{}/{}", row[scheme], row[mode]), x, y));
    }
    Ok(points)
}

/// Reads cost CSVs and renders a single log-scale chart, one series per
/// (scheme, mode).
pub fn cmd_plot(inputs: &[PathBuf]) -> Result<String, CliError> {
    if inputs.is_empty() {
        return Err(CliError::Usage("plot: at least one CSV input required".into()));
    }
    let mut series: BTreeMap<String, Vec<(f64, f64)>> = BTreeMap::new();
    for path in inputs {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
        for (key, x, y) in plot_points(&text, &path.display().to_string())? {
            series.entry(key).or_default().push((x, y));
        }
    }
    let series: Vec<Series> = series
        .into_iter()
        .map(|(label, mut points)| {
            points.sort_by(|a, b| a.0.total_cmp(&b.0));
            Series { label, points }
        })
        .collect();
    render_cost_chart(&series, "W-state preparation cost")
}

