//! Batch experiments over Erdős-Rényi instances.
//!
//! Every instance and solver seed is derived from the master seed and the
//! `(density index, trial)` pair, so results do not depend on how trials
//! are scheduled across threads. Rows come back in `(p, trial, method)`
//! order.

use std::path::Path;
use std::time::Instant;

use mcs_core::graph::{association_graph_with_budget, erdos_renyi, permuted_copy, DEFAULT_ASSOCIATION_BUDGET};
use mcs_core::kernel::reduce_full;
use mcs_core::oracle::verify_common_subgraph;
use mcs_core::seed::derive_seed;
use mcs_core::{solve_mcs, Error, Graph, Method, SolveConfig};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Experiment {
    /// Heuristic sizes on independent pairs.
    Table2,
    /// Reduction accuracy on isomorphic pairs.
    Kernel,
}

/// Method label used in kernel experiment rows.
pub const KERNEL_METHOD: &str = "KERNEL";

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub n: usize,
    pub densities: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
    /// Solvers for `table2`; ignored by `kernel`.
    pub methods: Vec<Method>,
    /// Solver knobs other than method and seed.
    pub solve: SolveConfig,
    /// Record wall times. Off by default so the CSV is reproducible.
    pub timing: bool,
}

impl ExperimentConfig {
    pub fn table2() -> Self {
        Self {
            experiment: Experiment::Table2,
            n: 20,
            densities: (1..=9).map(|k| k as f64 / 10.0).collect(),
            trials: 30,
            seed: 0,
            methods: vec![Method::Rd, Method::Aih, Method::KernelAih],
            solve: SolveConfig::default(),
            timing: false,
        }
    }

    pub fn kernel() -> Self {
        let mut densities = vec![0.01, 0.03, 0.05];
        densities.extend((1..=9).map(|k| k as f64 / 10.0));
        densities.extend([0.95, 0.97, 0.99]);
        Self { experiment: Experiment::Kernel, n: 40, densities, trials: 20, methods: Vec::new(), ..Self::table2() }
    }

    pub fn for_experiment(experiment: Experiment) -> Self {
        match experiment {
            Experiment::Table2 => Self::table2(),
            Experiment::Kernel => Self::kernel(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(CliError::Param(m));
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if self.n == 0 {
            return bad("n must be at least 1".into());
        }
        if self.densities.is_empty() {
            return bad("no densities given".into());
        }
        if let Some(p) = self.densities.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return bad(format!("density {p} outside [0, 1]"));
        }
        if self.experiment == Experiment::Table2 && self.methods.is_empty() {
            return bad("no methods given".into());
        }
        self.solve.validate()?;
        Ok(())
    }
}

/// One CSV row. Columns that do not apply stay empty.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub p: f64,
    pub seed: u64,
    pub method: String,
    pub size: usize,
    pub accuracy: Option<f64>,
    pub iterations: Option<u64>,
    pub kernel_size: Option<usize>,
    pub wall_ms: Option<f64>,
}

/// A row with the mapping behind it.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub row: ResultRow,
    pub mapping: Vec<(usize, usize)>,
}

/// Seeds of one trial: two graphs and the solver.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrialSeeds {
    pub first: u64,
    pub second: u64,
    pub solver: u64,
}

pub fn trial_seeds(master: u64, p_index: usize, trial: usize) -> TrialSeeds {
    let at = |k: u64| derive_seed(master, &[k, p_index as u64, trial as u64]);
    TrialSeeds { first: at(0), second: at(1), solver: at(2) }
}

/// The graph pair of one trial. For `kernel` the second graph is a
/// relabelled copy of the first.
pub fn instance(cfg: &ExperimentConfig, p_index: usize, trial: usize) -> Result<(Graph, Graph)> {
    let seeds = trial_seeds(cfg.seed, p_index, trial);
    let p = cfg.densities[p_index];
    let g1 = erdos_renyi(cfg.n, p, seeds.first)?;
    let g2 = match cfg.experiment {
        Experiment::Table2 => erdos_renyi(cfg.n, p, seeds.second)?,
        Experiment::Kernel => permuted_copy(&g1, seeds.second).0,
    };
    Ok((g1, g2))
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn table2_trial(cfg: &ExperimentConfig, p_index: usize, trial: usize) -> Result<Vec<Outcome>> {
    let (g1, g2) = instance(cfg, p_index, trial)?;
    let seed = trial_seeds(cfg.seed, p_index, trial).solver;
    cfg.methods
        .iter()
        .map(|&method| {
            let solve = SolveConfig { method, seed, ..cfg.solve };
            let start = Instant::now();
            let result = solve_mcs(&g1, &g2, &solve)?;
            let row = ResultRow {
                p: cfg.densities[p_index],
                seed,
                method: method.name().to_string(),
                size: result.size,
                accuracy: None,
                iterations: Some(result.stats.iterations),
                kernel_size: result.stats.kernel_size,
                wall_ms: cfg.timing.then(|| elapsed_ms(start)),
            };
            Ok(Outcome { row, mapping: result.mapping })
        })
        .collect()
}

fn kernel_trial(cfg: &ExperimentConfig, p_index: usize, trial: usize) -> Result<Vec<Outcome>> {
    let (g1, g2) = instance(cfg, p_index, trial)?;
    let assoc = association_graph_with_budget(&g1, &g2, DEFAULT_ASSOCIATION_BUDGET.max(cfg.n * cfg.n))?;
    let start = Instant::now();
    let (set, result) = reduce_full(&assoc.graph.complement(), true)?;
    let wall_ms = cfg.timing.then(|| elapsed_ms(start));
    let mapping = assoc.mapping(&set);
    if !verify_common_subgraph(&g1, &g2, &mapping) {
        return Err(Error::Validation(format!(
            "reduction at p index {p_index}, trial {trial} lifted an invalid mapping"
        ))
        .into());
    }
    let row = ResultRow {
        p: cfg.densities[p_index],
        seed: trial_seeds(cfg.seed, p_index, trial).solver,
        method: KERNEL_METHOD.to_string(),
        size: mapping.len(),
        // the optimum is n for isomorphic pairs
        accuracy: Some(mapping.len() as f64 / cfg.n as f64),
        iterations: None,
        kernel_size: Some(result.exact_kernel_order),
        wall_ms,
    };
    Ok(vec![Outcome { row, mapping }])
}

/// Runs `cfg` and keeps each row's mapping.
pub fn run_outcomes(cfg: &ExperimentConfig) -> Result<Vec<Outcome>> {
    cfg.validate()?;
    let jobs: Vec<(usize, usize)> =
        (0..cfg.densities.len()).flat_map(|pi| (0..cfg.trials).map(move |t| (pi, t))).collect();
    let per_trial: Vec<Vec<Outcome>> = jobs
        .par_iter()
        .map(|&(pi, t)| match cfg.experiment {
            Experiment::Table2 => table2_trial(cfg, pi, t),
            Experiment::Kernel => kernel_trial(cfg, pi, t),
        })
        .collect::<Result<_>>()?;
    Ok(per_trial.into_iter().flatten().collect())
}

pub fn run_table2(cfg: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    if cfg.experiment != Experiment::Table2 {
        return Err(CliError::Param("run_table2 needs a table2 configuration".into()));
    }
    Ok(run_outcomes(cfg)?.into_iter().map(|o| o.row).collect())
}

pub fn run_kernel_experiment(cfg: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    if cfg.experiment != Experiment::Kernel {
        return Err(CliError::Param("run_kernel_experiment needs a kernel configuration".into()));
    }
    Ok(run_outcomes(cfg)?.into_iter().map(|o| o.row).collect())
}

pub fn csv_string(rows: &[ResultRow]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    if rows.is_empty() {
        writer.write_record(CSV_HEADER).expect("writing to memory");
    }
    for row in rows {
        writer.serialize(row).expect("writing to memory");
    }
    String::from_utf8(writer.into_inner().expect("writing to memory")).expect("csv output is utf-8")
}

pub const CSV_HEADER: [&str; 8] = ["p", "seed", "method", "size", "accuracy", "iterations", "kernel_size", "wall_ms"];

pub fn write_csv(rows: &[ResultRow], path: &Path) -> Result<()> {
    crate::error::write_string(path, &csv_string(rows))
}

pub fn parse_csv(text: &str) -> Result<Vec<ResultRow>, crate::error::LineError> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader.headers().map_err(|e| crate::error::LineError { line: 1, message: e.to_string() })?;
    if header.iter().ne(CSV_HEADER) {
        return crate::error::fail(1, format!("expected header {}", CSV_HEADER.join(",")));
    }
    reader
        .deserialize()
        .enumerate()
        .map(|(i, row)| row.map_err(|e| crate::error::LineError { line: i + 2, message: e.to_string() }))
        .collect()
}

pub fn read_csv(path: &Path) -> Result<Vec<ResultRow>> {
    parse_csv(&crate::error::read_to_string(path)?).map_err(|e| e.at(path))
}
