//! Multi-seed experiment runner: batches of independent runs with derived
//! seeds, aggregate statistics, two-algorithm comparisons with identical seed
//! ranges, and JSON / CSV / Markdown report rendering.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::core::{RunResult, RNG_ALGORITHM};
use crate::error::{Error, Result};
use crate::objectives::{
    lookup, FeasibilityReport, ObjectiveSpec, PenaltyWeights, DEFAULT_FEASIBILITY_RTOL,
};
use crate::pso::{pso_run, PsoParams};
use crate::ueps::{ueps_run, UepsParams};

/// Algorithm selector together with its full hyperparameter bundle.
/// Serializes as the pair of fields `"algorithm"` and `"params"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "algorithm", content = "params", rename_all = "lowercase")]
pub enum AlgorithmConfig {
    Ueps(UepsParams),
    Pso(PsoParams),
}

impl AlgorithmConfig {
    pub fn name(&self) -> &'static str {
        match self {
            AlgorithmConfig::Ueps(_) => "ueps",
            AlgorithmConfig::Pso(_) => "pso",
        }
    }

    pub fn n_particles(&self) -> usize {
        match self {
            AlgorithmConfig::Ueps(p) => p.n_particles,
            AlgorithmConfig::Pso(p) => p.n_particles,
        }
    }

    pub fn max_iter(&self) -> usize {
        match self {
            AlgorithmConfig::Ueps(p) => p.max_iter,
            AlgorithmConfig::Pso(p) => p.max_iter,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            AlgorithmConfig::Ueps(p) => p.validate(),
            AlgorithmConfig::Pso(p) => p.validate(),
        }
    }

    /// One run of the configured algorithm on an unconstrained objective.
    pub fn run(&self, objective: &ObjectiveSpec, seed: u64) -> Result<RunResult> {
        match self {
            AlgorithmConfig::Ueps(p) => ueps_run(objective, p, seed),
            AlgorithmConfig::Pso(p) => pso_run(objective, p, seed),
        }
    }
}

/// Constraint-handling strategy applied before optimization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PenaltyMode {
    /// No transform; the problem must be unconstrained.
    None,
    /// Weighted additive penalty.
    Additive(PenaltyWeights),
    /// Static feasibility penalty with constant `K`.
    Static(f64),
}

impl PenaltyMode {
    pub fn label(&self) -> &'static str {
        match self {
            PenaltyMode::None => "none",
            PenaltyMode::Additive(_) => "additive",
            PenaltyMode::Static(_) => "static",
        }
    }
}

/// Looks up `problem` and applies the penalty transform, rejecting
/// mismatched combinations before any run starts.
pub fn prepare_objective(problem: &str, penalty: &PenaltyMode) -> Result<ObjectiveSpec> {
    let spec = lookup(problem)?;
    match penalty {
        PenaltyMode::None => {
            if spec.is_constrained() {
                return Err(Error::InvalidConfig(format!(
                    "'{problem}' is constrained; choose an additive or static penalty"
                )));
            }
            Ok(spec)
        }
        PenaltyMode::Additive(weights) => {
            if !spec.is_constrained() {
                return Err(Error::InvalidConfig(format!(
                    "'{problem}' is unconstrained; penalty 'additive' does not apply"
                )));
            }
            spec.additive_penalty(weights)
        }
        PenaltyMode::Static(k) => {
            if !spec.is_constrained() {
                return Err(Error::InvalidConfig(format!(
                    "'{problem}' is unconstrained; penalty 'static' does not apply"
                )));
            }
            spec.static_penalty(*k)
        }
    }
}

/// A full batch experiment: one problem, one algorithm, `n_runs` independent
/// runs seeded `base_seed .. base_seed + n_runs - 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub problem: String,
    #[serde(flatten)]
    pub algorithm: AlgorithmConfig,
    pub penalty: PenaltyMode,
    pub n_runs: usize,
    pub base_seed: u64,
}

/// Aggregate statistics over a batch. `std_val` is the population standard
/// deviation; `median_val` averages the two middle runs for even counts;
/// `mean_best_pos` is the componentwise mean of per-run best positions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub best_val: f64,
    pub mean_val: f64,
    pub median_val: f64,
    pub std_val: f64,
    pub mean_best_pos: Vec<f64>,
}

impl Aggregate {
    pub fn from_runs(runs: &[RunResult]) -> Result<Self> {
        if runs.is_empty() {
            return Err(Error::InvalidConfig("cannot aggregate zero runs".into()));
        }
        let values: Vec<f64> = runs.iter().map(|r| r.best_val).collect();
        let best_val = values.iter().cloned().fold(f64::INFINITY, f64::min);
        let mean_val = values.iter().sum::<f64>() / values.len() as f64;
        let std_val = (values.iter().map(|v| (v - mean_val).powi(2)).sum::<f64>()
            / values.len() as f64)
            .sqrt();
        let median_val = median(&values);
        let d = runs[0].best_pos.len();
        let mut mean_best_pos = vec![0.0; d];
        for run in runs {
            for (acc, &x) in mean_best_pos.iter_mut().zip(&run.best_pos) {
                *acc += x;
            }
        }
        for acc in &mut mean_best_pos {
            *acc /= runs.len() as f64;
        }
        Ok(Self {
            best_val,
            mean_val,
            median_val,
            std_val,
            mean_best_pos,
        })
    }
}

fn median(values: &[f64]) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    }
}

/// Results of one batch experiment. `total_wall_time_s` is the sum of per-run
/// wall times, so it is identical whether or not runs executed in parallel.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatchReport {
    pub problem: String,
    #[serde(flatten)]
    pub algorithm: AlgorithmConfig,
    pub penalty: PenaltyMode,
    pub n_runs: usize,
    pub base_seed: u64,
    pub rng: String,
    pub parallel: bool,
    pub runs: Vec<RunResult>,
    pub aggregate: Aggregate,
    pub total_wall_time_s: f64,
    pub evaluations_total: u64,
}

impl BatchReport {
    /// The run achieving the aggregate best value (lowest seed on ties).
    pub fn best_run(&self) -> &RunResult {
        self.runs
            .iter()
            .min_by(|a, b| a.best_val.partial_cmp(&b.best_val).expect("finite"))
            .expect("batch has at least one run")
    }

    /// Drops per-iteration traces, leaving empty arrays in place.
    pub fn strip_traces(&mut self) {
        for run in &mut self.runs {
            run.trace.clear();
        }
    }
}

/// Runs a batch sequentially.
pub fn run_batch(config: &ExperimentConfig) -> Result<BatchReport> {
    run_batch_with_jobs(config, 1)
}

/// Runs a batch with up to `jobs` runs in flight. Each run owns its own
/// seeded stream, so parallel execution changes no numeric output.
pub fn run_batch_with_jobs(config: &ExperimentConfig, jobs: usize) -> Result<BatchReport> {
    if config.n_runs == 0 {
        return Err(Error::InvalidConfig("n_runs must be >= 1".into()));
    }
    if jobs == 0 {
        return Err(Error::InvalidParameter("jobs must be >= 1".into()));
    }
    config.algorithm.validate()?;
    let objective = prepare_objective(&config.problem, &config.penalty)?;
    let last_seed = config
        .base_seed
        .checked_add(config.n_runs as u64 - 1)
        .ok_or_else(|| Error::InvalidConfig("seed range overflows u64".into()))?;
    let seeds: Vec<u64> = (config.base_seed..=last_seed).collect();

    let parallel = jobs > 1;
    let runs: Vec<RunResult> = if parallel {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;
        pool.install(|| {
            seeds
                .par_iter()
                .map(|&seed| config.algorithm.run(&objective, seed))
                .collect::<Result<Vec<_>>>()
        })?
    } else {
        seeds
            .iter()
            .map(|&seed| config.algorithm.run(&objective, seed))
            .collect::<Result<Vec<_>>>()?
    };

    let aggregate = Aggregate::from_runs(&runs)?;
    let total_wall_time_s = runs.iter().map(|r| r.wall_time_s).sum();
    let evaluations_total = runs.iter().map(|r| r.evaluations).sum();
    Ok(BatchReport {
        problem: config.problem.clone(),
        algorithm: config.algorithm.clone(),
        penalty: config.penalty.clone(),
        n_runs: config.n_runs,
        base_seed: config.base_seed,
        rng: RNG_ALGORITHM.to_string(),
        parallel,
        runs,
        aggregate,
        total_wall_time_s,
        evaluations_total,
    })
}

/// Side-by-side batches of both algorithms on one problem, sharing the exact
/// same seed range.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemComparison {
    pub problem: String,
    pub ueps: BatchReport,
    pub pso: BatchReport,
}

/// UEPS-vs-PSO comparison over a problem list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub problems: Vec<ProblemComparison>,
    pub total_wall_time_s: f64,
    pub evaluations_total: u64,
}

/// Runs both algorithms over every problem with identical seed ranges.
/// Problems must be unconstrained (no penalty is applied here).
pub fn compare_algorithms(
    problems: &[String],
    ueps_params: &UepsParams,
    pso_params: &PsoParams,
    n_runs: usize,
    base_seed: u64,
) -> Result<ComparisonReport> {
    compare_algorithms_with_jobs(problems, ueps_params, pso_params, n_runs, base_seed, 1)
}

pub fn compare_algorithms_with_jobs(
    problems: &[String],
    ueps_params: &UepsParams,
    pso_params: &PsoParams,
    n_runs: usize,
    base_seed: u64,
    jobs: usize,
) -> Result<ComparisonReport> {
    let mut comparisons = Vec::with_capacity(problems.len());
    for problem in problems {
        let ueps = run_batch_with_jobs(
            &ExperimentConfig {
                problem: problem.clone(),
                algorithm: AlgorithmConfig::Ueps(ueps_params.clone()),
                penalty: PenaltyMode::None,
                n_runs,
                base_seed,
            },
            jobs,
        )?;
        let pso = run_batch_with_jobs(
            &ExperimentConfig {
                problem: problem.clone(),
                algorithm: AlgorithmConfig::Pso(pso_params.clone()),
                penalty: PenaltyMode::None,
                n_runs,
                base_seed,
            },
            jobs,
        )?;
        comparisons.push(ProblemComparison {
            problem: problem.clone(),
            ueps,
            pso,
        });
    }
    let total_wall_time_s = comparisons
        .iter()
        .map(|c| c.ueps.total_wall_time_s + c.pso.total_wall_time_s)
        .sum();
    let evaluations_total = comparisons
        .iter()
        .map(|c| c.ueps.evaluations_total + c.pso.evaluations_total)
        .sum();
    Ok(ComparisonReport {
        problems: comparisons,
        total_wall_time_s,
        evaluations_total,
    })
}

/// One optimization run plus the context needed to reproduce it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SingleRunReport {
    pub problem: String,
    #[serde(flatten)]
    pub algorithm: AlgorithmConfig,
    pub penalty: PenaltyMode,
    pub rng: String,
    #[serde(flatten)]
    pub result: RunResult,
    /// Constraint diagnostics at the best point, for penalized problems.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub feasibility: Option<FeasibilityReport>,
}

impl SingleRunReport {
    pub fn strip_trace(&mut self) {
        self.result.trace.clear();
    }
}

/// One run of `algorithm` on `problem` under `penalty`, with a feasibility
/// report against the original constraints when a penalty was applied.
pub fn run_single(
    problem: &str,
    algorithm: &AlgorithmConfig,
    penalty: &PenaltyMode,
    seed: u64,
) -> Result<SingleRunReport> {
    algorithm.validate()?;
    let objective = prepare_objective(problem, penalty)?;
    let result = algorithm.run(&objective, seed)?;
    let feasibility = match penalty {
        PenaltyMode::None => None,
        _ => {
            let original = lookup(problem)?;
            Some(original.feasibility(&result.best_pos, DEFAULT_FEASIBILITY_RTOL)?)
        }
    };
    Ok(SingleRunReport {
        problem: problem.to_string(),
        algorithm: algorithm.clone(),
        penalty: penalty.clone(),
        rng: RNG_ALGORITHM.to_string(),
        result,
        feasibility,
    })
}

/// Output encodings for reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
    Markdown,
}

/// Renders a batch report: canonical JSON, one CSV row per run, or a
/// Markdown table with six-decimal values.
pub fn format_report(report: &BatchReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => to_json(report),
        ReportFormat::Csv => batch_csv(report),
        ReportFormat::Markdown => batch_markdown(report),
    }
}

pub(crate) fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize to JSON")
}

/// Six-decimal fixed formatting used in all human-readable output.
pub fn fmt6(v: f64) -> String {
    format!("{v:.6}")
}

/// Formats a point as `(a, b, ...)` with six decimals.
pub fn fmt_point(x: &[f64]) -> String {
    let inner: Vec<String> = x.iter().map(|&v| fmt6(v)).collect();
    format!("({})", inner.join(", "))
}

fn csv_header(d: usize) -> String {
    let mut cols = vec![
        "problem".to_string(),
        "algorithm".to_string(),
        "penalty".to_string(),
        "seed".to_string(),
        "best_val".to_string(),
        "wall_time_s".to_string(),
        "evaluations".to_string(),
    ];
    cols.extend((0..d).map(|j| format!("best_pos_{j}")));
    cols.join(",")
}

fn csv_row(problem: &str, algorithm: &str, penalty: &str, run: &RunResult) -> String {
    let mut cols = vec![
        problem.to_string(),
        algorithm.to_string(),
        penalty.to_string(),
        run.seed.to_string(),
        run.best_val.to_string(),
        run.wall_time_s.to_string(),
        run.evaluations.to_string(),
    ];
    cols.extend(run.best_pos.iter().map(|v| v.to_string()));
    cols.join(",")
}

fn batch_csv(report: &BatchReport) -> String {
    let d = report.runs[0].best_pos.len();
    let mut out = csv_header(d);
    for run in &report.runs {
        out.push('\n');
        out.push_str(&csv_row(
            &report.problem,
            report.algorithm.name(),
            report.penalty.label(),
            run,
        ));
    }
    out.push('\n');
    out
}

const BATCH_TABLE_HEADER: &str = "| Problem | Algorithm | Runs | Best | Median | Mean | Std | Best position | Mean position |\n|---|---|---|---|---|---|---|---|---|";

fn batch_markdown_row(report: &BatchReport) -> String {
    let a = &report.aggregate;
    format!(
        "| {} | {} | {} | {} | {} | {} | {} | {} | {} |",
        report.problem,
        report.algorithm.name(),
        report.n_runs,
        fmt6(a.best_val),
        fmt6(a.median_val),
        fmt6(a.mean_val),
        fmt6(a.std_val),
        fmt_point(&report.best_run().best_pos),
        fmt_point(&a.mean_best_pos),
    )
}

fn batch_markdown(report: &BatchReport) -> String {
    format!("{BATCH_TABLE_HEADER}\n{}\n", batch_markdown_row(report))
}

impl ComparisonReport {
    pub fn to_json(&self) -> String {
        to_json(self)
    }

    /// One CSV row per (problem, algorithm, run).
    pub fn to_csv(&self) -> String {
        let d = self
            .problems
            .first()
            .map(|c| c.ueps.runs[0].best_pos.len())
            .unwrap_or(0);
        let mut out = csv_header(d);
        for comparison in &self.problems {
            for report in [&comparison.ueps, &comparison.pso] {
                for run in &report.runs {
                    out.push('\n');
                    out.push_str(&csv_row(
                        &report.problem,
                        report.algorithm.name(),
                        report.penalty.label(),
                        run,
                    ));
                }
            }
        }
        out.push('\n');
        out
    }

    /// Per-problem result table plus a wall-time summary.
    pub fn to_markdown(&self) -> String {
        let mut out = String::from(BATCH_TABLE_HEADER);
        for comparison in &self.problems {
            out.push('\n');
            out.push_str(&batch_markdown_row(&comparison.ueps));
            out.push('\n');
            out.push_str(&batch_markdown_row(&comparison.pso));
        }
        out.push_str("\n\n| Problem | UEPS time (s) | PSO time (s) |\n|---|---|---|\n");
        for comparison in &self.problems {
            out.push_str(&format!(
                "| {} | {} | {} |\n",
                comparison.problem,
                fmt6(comparison.ueps.total_wall_time_s),
                fmt6(comparison.pso.total_wall_time_s),
            ));
        }
        out.push_str(&format!(
            "\ntotal wall time: {} s over {} evaluations\n",
            fmt6(self.total_wall_time_s),
            self.evaluations_total
        ));
        out
    }
}
