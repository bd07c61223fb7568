use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mcs_core::annealing::{build_schedule, BoundMode};
use mcs_core::dynamics::{trajectory_csv, PayoffMatrix, RdParams, SimplexVector};
use mcs_core::graph::{association_graph_with_budget, erdos_renyi};
use mcs_core::kernel::{reduce, RuleSet};
use mcs_core::oracle::{is_independent, verify_common_subgraph};
use mcs_core::{solve_mcs, Error, MCSResult, Method, SolveConfig};

use crate::bench::{run_outcomes, write_csv, Experiment, ExperimentConfig};
use crate::error::{write_string, Result};
use crate::{dimacs, plot, trace};

#[derive(Debug, Parser)]
#[command(name = "mcs", version, about = "Maximum common subgraph heuristics on association graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write an Erdős-Rényi graph in DIMACS format.
    Gen(GenArgs),
    /// Find a common induced subgraph of two DIMACS graphs.
    Solve(SolveArgs),
    /// Reduce a graph for maximum independent set and dump kernel and trace.
    Kernelize(KernelizeArgs),
    /// Run a batch experiment and write its CSV.
    Bench(BenchArgs),
    /// Chart a results CSV as SVG.
    Plot(PlotArgs),
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub p: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Rd,
    Aih,
    Kaih,
    Krd,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Rd => Method::Rd,
            MethodArg::Aih => Method::Aih,
            MethodArg::Kaih => Method::KernelAih,
            MethodArg::Krd => Method::KernelRd,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BoundArg {
    Safe,
    Paper,
}

impl From<BoundArg> for BoundMode {
    fn from(b: BoundArg) -> Self {
        match b {
            BoundArg::Safe => BoundMode::Safe,
            BoundArg::Paper => BoundMode::Approximate,
        }
    }
}

/// Solver knobs shared by `solve` and `bench`.
#[derive(Debug, Args)]
pub struct SolverArgs {
    /// Stop replicator dynamics once a step moves less than this.
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    #[arg(long, default_value_t = 1_000_000)]
    pub max_iters: u64,
    /// Confidence parameter of the annealing schedule.
    #[arg(long, default_value_t = 0.01)]
    pub delta: f64,
    /// Standard deviation of restart noise.
    #[arg(long, default_value_t = 0.01)]
    pub noise: f64,
    #[arg(long, value_enum, default_value_t = BoundArg::Safe)]
    pub bound: BoundArg,
}

impl SolverArgs {
    fn config(&self, method: Method, seed: u64) -> SolveConfig {
        SolveConfig {
            tol: self.tol,
            max_iters: self.max_iters,
            delta: self.delta,
            noise_sigma: self.noise,
            bound: self.bound.into(),
            ..SolveConfig::new(method, seed)
        }
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub g1: PathBuf,
    #[arg(long)]
    pub g2: PathBuf,
    #[arg(long, value_enum, default_value_t = MethodArg::Aih)]
    pub method: MethodArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Also write the result JSON here; it always goes to stdout.
    #[arg(long)]
    pub json_out: Option<PathBuf>,
    /// Write the annealing schedule as `m,gamma_hat_m,alpha`.
    #[arg(long)]
    pub schedule_out: Option<PathBuf>,
    /// Write `iter,objective,delta_norm` for plain replicator dynamics
    /// started at the barycenter of the association graph.
    #[arg(long)]
    pub trajectory_out: Option<PathBuf>,
    /// Record wall time in the result statistics.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RulesArg {
    All,
    Lineartime,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Switch {
    On,
    Off,
}

#[derive(Debug, Args)]
pub struct KernelizeArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = RulesArg::All)]
    pub rules: RulesArg,
    #[arg(long, value_enum, default_value_t = Switch::Off)]
    pub inexact: Switch,
    #[arg(long)]
    pub out_kernel: PathBuf,
    #[arg(long)]
    pub out_trace: PathBuf,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(value_enum)]
    pub experiment: Experiment,
    /// Graph order; 20 for table2 and 40 for kernel when omitted.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub trials: Option<usize>,
    /// Comma-separated densities.
    #[arg(long, value_delimiter = ',')]
    pub densities: Option<Vec<f64>>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Comma-separated methods for table2.
    #[arg(long, value_enum, value_delimiter = ',')]
    pub methods: Option<Vec<MethodArg>>,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Fill the wall_ms column. Timings make the CSV non-reproducible.
    #[arg(long)]
    pub timing: bool,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Gen(a) => gen(&a),
        Command::Solve(a) => solve(&a),
        Command::Kernelize(a) => kernelize(&a),
        Command::Bench(a) => bench(&a),
        Command::Plot(a) => plot::plot_file(&a.input, &a.out),
    }
}

fn gen(a: &GenArgs) -> Result<()> {
    let g = erdos_renyi(a.n, a.p, a.seed)?;
    let comment = format!("erdos-renyi n={} p={} seed={}", a.n, a.p, a.seed);
    dimacs::write(&a.out, &g, &[&comment])
}

fn json(value: &impl serde::Serialize) -> String {
    let mut text = serde_json::to_string(value).expect("serializable");
    text.push('\n');
    text
}

/// Result JSON as printed by `solve`. Mapping pairs are 0-based.
pub fn result_json(result: &MCSResult) -> String {
    json(result)
}

fn solve(a: &SolveArgs) -> Result<()> {
    let g1 = dimacs::read(&a.g1)?;
    let g2 = dimacs::read(&a.g2)?;
    let cfg = a.solver.config(a.method.into(), a.seed);
    cfg.validate()?;
    let start = Instant::now();
    let mut result = solve_mcs(&g1, &g2, &cfg)?;
    if a.timing {
        result.stats.wall_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    if !verify_common_subgraph(&g1, &g2, &result.mapping) {
        return Err(Error::Validation("solver returned an invalid mapping".into()).into());
    }
    if a.schedule_out.is_some() || a.trajectory_out.is_some() {
        let assoc = association_graph_with_budget(&g1, &g2, cfg.max_association_order)?;
        if let Some(path) = &a.schedule_out {
            write_string(path, &build_schedule(&assoc, cfg.delta, cfg.bound)?.to_csv()?)?;
        }
        if let Some(path) = &a.trajectory_out {
            let x0 = SimplexVector::barycenter(assoc.graph.order())?;
            let params = RdParams { tol: cfg.tol, max_iters: cfg.max_iters };
            write_string(path, &trajectory_csv(&PayoffMatrix::bomze(&assoc.graph), &x0, params)?)?;
        }
    }
    let text = result_json(&result);
    if let Some(path) = &a.json_out {
        write_string(path, &text)?;
    }
    print!("{text}");
    Ok(())
}

fn kernelize(a: &KernelizeArgs) -> Result<()> {
    let g = dimacs::read(&a.input)?;
    let rules = match a.rules {
        RulesArg::All => RuleSet::All,
        RulesArg::Lineartime => RuleSet::LinearTime,
    };
    let inexact = a.inexact == Switch::On;
    let (set, result) = reduce(&g, rules, inexact)?;
    if !is_independent(&g, &set) {
        return Err(Error::Validation("reduction produced a dependent set".into()).into());
    }
    let comment = format!("kernel of {} with {} forced vertices", a.input.display(), result.forced_count);
    dimacs::write(&a.out_kernel, &result.kernel, &[&comment])?;
    trace::write(&a.out_trace, &trace::TraceFile::of(&result))?;
    let summary = serde_json::json!({
        "order": g.order(),
        "kernel_order": result.kernel.order(),
        "exact_kernel_order": result.exact_kernel_order,
        "forced": result.forced_count,
        "independent_set": if inexact { Some(set.len()) } else { None },
    });
    print!("{}", json(&summary));
    Ok(())
}

fn bench(a: &BenchArgs) -> Result<()> {
    let mut cfg = ExperimentConfig::for_experiment(a.experiment);
    if let Some(n) = a.n {
        cfg.n = n;
    }
    if let Some(t) = a.trials {
        cfg.trials = t;
    }
    if let Some(d) = &a.densities {
        cfg.densities = d.clone();
    }
    if let Some(m) = &a.methods {
        cfg.methods = m.iter().map(|&m| m.into()).collect();
    }
    cfg.seed = a.seed;
    cfg.timing = a.timing;
    cfg.solve = a.solver.config(Method::Aih, 0);
    let rows: Vec<_> = run_outcomes(&cfg)?.into_iter().map(|o| o.row).collect();
    write_csv(&rows, &a.out)?;
    eprintln!("wrote {} rows to {}", rows.len(), a.out.display());
    Ok(())
}
