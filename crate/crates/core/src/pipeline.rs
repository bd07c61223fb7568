//! End-to-end MCS solving.
//!
//! `g1, g2` -> association graph -> optional kernelization of its complement
//! -> replicator-based clique search -> lifted clique -> vertex mapping. The
//! mapping is always checked against both input graphs before it is
//! returned.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::annealing::{run_aih_on_graph, AnnealingConfig, BoundMode, ShiftConvention};
use crate::dynamics::{two_phase_rd_on_graph, CliqueSearch, DynamicsConfig, RdParams, DEFAULT_SUPPORT_THRESHOLD};
use crate::error::{param_err, Error, Result};
use crate::graph::{association_graph_with_budget, AssociationGraph, Graph, VertexSet, DEFAULT_ASSOCIATION_BUDGET};
use crate::kernel::{linear_time, KernelResult};
use crate::oracle::{is_clique, verify_common_subgraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Method {
    #[cfg_attr(feature = "serde", serde(rename = "RD"))]
    Rd,
    #[cfg_attr(feature = "serde", serde(rename = "AIH"))]
    Aih,
    #[cfg_attr(feature = "serde", serde(rename = "KERNEL_AIH"))]
    KernelAih,
    #[cfg_attr(feature = "serde", serde(rename = "KERNEL_RD"))]
    KernelRd,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Rd, Method::Aih, Method::KernelAih, Method::KernelRd];

    pub fn name(self) -> &'static str {
        match self {
            Method::Rd => "RD",
            Method::Aih => "AIH",
            Method::KernelAih => "KERNEL_AIH",
            Method::KernelRd => "KERNEL_RD",
        }
    }

    /// Command-line spelling: `rd`, `aih`, `kaih`, `krd`.
    pub fn short_name(self) -> &'static str {
        match self {
            Method::Rd => "rd",
            Method::Aih => "aih",
            Method::KernelAih => "kaih",
            Method::KernelRd => "krd",
        }
    }

    pub fn uses_kernel(self) -> bool {
        matches!(self, Method::KernelAih | Method::KernelRd)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    /// Accepts either spelling, case-insensitively.
    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s) || m.short_name().eq_ignore_ascii_case(s))
            .ok_or_else(|| param_err!("unknown method {s:?}"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolveConfig {
    pub method: Method,
    pub seed: u64,
    pub tol: f64,
    pub max_iters: u64,
    pub delta: f64,
    pub noise_sigma: f64,
    pub max_restarts: u32,
    pub support_threshold: f64,
    pub bound: BoundMode,
    pub shift: ShiftConvention,
    /// Largest association graph `solve_mcs` will build.
    pub max_association_order: usize,
}

impl Default for SolveConfig {
    fn default() -> Self {
        Self {
            method: Method::Aih,
            seed: 0,
            tol: 1e-6,
            max_iters: 1_000_000,
            delta: 0.01,
            noise_sigma: 0.01,
            max_restarts: 10,
            support_threshold: DEFAULT_SUPPORT_THRESHOLD,
            bound: BoundMode::Safe,
            shift: ShiftConvention::Threshold,
            max_association_order: DEFAULT_ASSOCIATION_BUDGET,
        }
    }
}

impl SolveConfig {
    pub fn new(method: Method, seed: u64) -> Self {
        Self { method, seed, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(param_err!("tolerance must be positive, got {}", self.tol));
        }
        if self.max_iters == 0 {
            return Err(param_err!("iteration cap must be at least 1"));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(param_err!("delta must lie in (0, 1), got {}", self.delta));
        }
        if !(self.noise_sigma > 0.0 && self.noise_sigma.is_finite()) {
            return Err(param_err!("noise sigma must be positive, got {}", self.noise_sigma));
        }
        if !(self.support_threshold > 0.0 && self.support_threshold < 1.0) {
            return Err(param_err!("support threshold must lie in (0, 1), got {}", self.support_threshold));
        }
        Ok(())
    }

    pub fn dynamics(&self) -> DynamicsConfig {
        DynamicsConfig {
            rd: RdParams { tol: self.tol, max_iters: self.max_iters },
            noise_sigma: self.noise_sigma,
            max_restarts: self.max_restarts,
            support_threshold: self.support_threshold,
        }
    }

    pub fn annealing(&self) -> AnnealingConfig {
        AnnealingConfig { dynamics: self.dynamics(), delta: self.delta, bound: self.bound, shift: self.shift }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SolveStats {
    /// Replicator steps over all stages.
    pub iterations: u64,
    pub stages: u32,
    pub restarts: u32,
    /// Order of the association graph.
    pub association_order: usize,
    /// Kernel order, for kernelized methods.
    pub kernel_size: Option<usize>,
    /// Clique vertices fixed by the reduction alone, for kernelized methods.
    pub forced: Option<usize>,
    /// Filled in by callers that have a clock.
    pub wall_ms: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MCSResult {
    pub method: Method,
    pub size: usize,
    /// `(i, h)`: vertex `i` of the first graph maps to vertex `h` of the
    /// second.
    pub mapping: Vec<(usize, usize)>,
    pub stats: SolveStats,
    pub seed: u64,
}

/// A clique problem reduced through the complement graph.
#[derive(Clone, Debug, PartialEq)]
pub struct CliqueKernel {
    /// Reduction of the complement; its kernel is an MIS instance.
    pub reduction: KernelResult,
    /// Complement of the reduction kernel: cliques here lift to cliques of
    /// the association graph.
    pub graph: Graph,
    /// Association vertices in every lifted clique.
    pub forced: VertexSet,
}

/// Runs the linear-time reduction without its inexact step on the
/// complement of `assoc`.
pub fn kernelize_for_clique(assoc: &AssociationGraph) -> Result<CliqueKernel> {
    let (forced, reduction) = linear_time(&assoc.graph.complement(), false)?;
    let untouched = reduction.trace.entries.is_empty() && reduction.name_map.iter().copied().eq(0..assoc.graph.order());
    // an untouched kernel is the association graph itself, which keeps its
    // factored product
    let graph = if untouched { assoc.graph.clone() } else { reduction.kernel.complement() };
    Ok(CliqueKernel { reduction, graph, forced })
}

/// Turns a clique of the re-complemented kernel into a clique of the
/// association graph.
pub fn lift_clique(reduction: &KernelResult, kernel_clique: &VertexSet) -> Result<VertexSet> {
    reduction.reconstruct_mis(kernel_clique)
}

fn search(method: Method, graph: &Graph, cap: usize, cfg: &SolveConfig, rng: &mut ChaCha8Rng) -> CliqueSearch {
    match method {
        Method::Rd | Method::KernelRd => two_phase_rd_on_graph(graph, &cfg.dynamics(), rng),
        Method::Aih | Method::KernelAih => run_aih_on_graph(graph, cap, &cfg.annealing(), rng),
    }
}

/// Solves MCS with the configured method. Errors on invalid input or
/// configuration; a mapping that fails verification is reported as
/// [`Error::Validation`].
pub fn solve_mcs(g1: &Graph, g2: &Graph, cfg: &SolveConfig) -> Result<MCSResult> {
    cfg.validate()?;
    let assoc = association_graph_with_budget(g1, g2, cfg.max_association_order)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let cap = assoc.n1.min(assoc.n2);
    let mut stats = SolveStats { association_order: assoc.graph.order(), ..SolveStats::default() };

    let clique = if cfg.method.uses_kernel() {
        let reduced = kernelize_for_clique(&assoc)?;
        stats.kernel_size = Some(reduced.graph.order());
        stats.forced = Some(reduced.forced.len());
        if reduced.graph.order() == 0 {
            reduced.forced
        } else {
            let inner_cap = cap.saturating_sub(reduced.forced.len()).max(1);
            let found = search(cfg.method, &reduced.graph, inner_cap, cfg, &mut rng);
            absorb(&mut stats, &found);
            lift_clique(&reduced.reduction, &found.clique)?
        }
    } else {
        let found = search(cfg.method, &assoc.graph, cap, cfg, &mut rng);
        absorb(&mut stats, &found);
        found.clique
    };

    let mapping = assoc.mapping(&clique);
    if !is_clique(&assoc.graph, &clique) || !verify_common_subgraph(g1, g2, &mapping) {
        return Err(Error::Validation(diagnostic(cfg, &assoc, &clique, &mapping)));
    }
    Ok(MCSResult { method: cfg.method, size: mapping.len(), mapping, stats, seed: cfg.seed })
}

fn absorb(stats: &mut SolveStats, found: &CliqueSearch) {
    stats.iterations += found.iterations;
    stats.stages += found.stages;
    stats.restarts += found.restarts;
}

fn diagnostic(cfg: &SolveConfig, assoc: &AssociationGraph, clique: &VertexSet, mapping: &[(usize, usize)]) -> String {
    format!(
        "method {} seed {} produced an invalid mapping on a {}x{} instance: clique {:?}, mapping {:?}",
        cfg.method,
        cfg.seed,
        assoc.n1,
        assoc.n2,
        clique.as_slice(),
        mapping
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{association_graph, erdos_renyi};
    use crate::oracle::{max_clique_exact, mcs_brute_force, OracleBudget};
    use alloc::string::ToString;

    #[test]
    fn method_names() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
            assert_eq!(m.short_name().parse::<Method>().unwrap(), m);
        }
        assert!("simplex".parse::<Method>().is_err());
        assert_eq!(Method::KernelAih.to_string(), "KERNEL_AIH");
    }

    #[test]
    fn config_validation() {
        assert!(SolveConfig::default().validate().is_ok());
        let bad = [
            SolveConfig { tol: 0.0, ..SolveConfig::default() },
            SolveConfig { max_iters: 0, ..SolveConfig::default() },
            SolveConfig { delta: 1.0, ..SolveConfig::default() },
            SolveConfig { noise_sigma: -1.0, ..SolveConfig::default() },
            SolveConfig { support_threshold: 0.0, ..SolveConfig::default() },
        ];
        for cfg in bad {
            assert!(matches!(solve_mcs(&Graph::complete(2), &Graph::complete(2), &cfg), Err(Error::Parameter(_))));
        }
    }

    #[test]
    fn kernelize_examples() {
        let k3 = Graph::complete(3);
        let assoc = association_graph(&k3, &k3).unwrap();
        let reduced = kernelize_for_clique(&assoc).unwrap();
        let inner = max_clique_exact(&reduced.graph, OracleBudget::default()).unwrap();
        let lifted = lift_clique(&reduced.reduction, &inner).unwrap();
        assert!(is_clique(&assoc.graph, &lifted));
        assert_eq!(lifted.len(), mcs_brute_force(&k3, &k3, OracleBudget::default()).unwrap().len());

        // edgeless association graph: K2 against the empty graph on 2
        let assoc = association_graph(&Graph::complete(2), &Graph::empty(2)).unwrap();
        assert_eq!(assoc.graph.edge_count(), 0);
        let reduced = kernelize_for_clique(&assoc).unwrap();
        assert_eq!(reduced.graph.order(), 4);
        assert!(reduced.forced.is_empty());

        let k1 = Graph::empty(1);
        let assoc = association_graph(&k1, &k1).unwrap();
        let reduced = kernelize_for_clique(&assoc).unwrap();
        assert_eq!(reduced.graph.order(), 0);
        assert_eq!(reduced.forced, [0].into());
    }

    #[test]
    fn edgeless_kernel_stays_whole() {
        let assoc = association_graph(&Graph::complete(2), &Graph::empty(3)).unwrap();
        let reduced = kernelize_for_clique(&assoc).unwrap();
        assert_eq!(reduced.graph, assoc.graph);
    }

    #[test]
    fn lift_with_empty_trace_is_identity() {
        let assoc = AssociationGraph { graph: Graph::empty(4), n1: 2, n2: 2 };
        let reduced = kernelize_for_clique(&assoc).unwrap();
        assert!(reduced.reduction.trace.entries.is_empty());
        assert_eq!(lift_clique(&reduced.reduction, &[2].into()).unwrap(), [2].into());
    }

    #[test]
    fn solve_examples() {
        let k3 = Graph::complete(3);
        let p3 = Graph::path(3);
        for method in Method::ALL {
            for seed in 0..3 {
                let r = solve_mcs(&k3, &p3, &SolveConfig::new(method, seed)).unwrap();
                assert_eq!(r.size, 2, "{method}");
                assert_eq!(r.method, method);
                assert_eq!(r.stats.kernel_size.is_some(), method.uses_kernel());
            }
        }
        let g = erdos_renyi(20, 0.5, 9).unwrap();
        let r = solve_mcs(&g, &g, &SolveConfig::new(Method::Rd, 1)).unwrap();
        assert!(r.size <= 20);
        assert!(verify_common_subgraph(&g, &g, &r.mapping));
    }

    #[test]
    fn solve_rejects_empty_and_oversized() {
        let cfg = SolveConfig::default();
        assert!(matches!(solve_mcs(&Graph::empty(0), &Graph::complete(2), &cfg), Err(Error::Parameter(_))));
        let small = SolveConfig { max_association_order: 3, ..cfg };
        assert!(matches!(solve_mcs(&Graph::complete(2), &Graph::complete(2), &small), Err(Error::Budget(_))));
    }

    #[test]
    fn kernel_preserves_clique_number() {
        for seed in 0..100u64 {
            let n1 = 2 + (seed % 9) as usize;
            let n2 = 2 + ((seed / 9) % 9) as usize;
            let p = 0.1 + 0.8 * ((seed * 37) % 100) as f64 / 100.0;
            let g1 = erdos_renyi(n1, p, seed).unwrap();
            let g2 = erdos_renyi(n2, p, seed + 1000).unwrap();
            let assoc = association_graph(&g1, &g2).unwrap();
            let budget = OracleBudget::with_max_vertices(100);
            let omega = max_clique_exact(&assoc.graph, budget).unwrap().len();
            let reduced = kernelize_for_clique(&assoc).unwrap();
            let inner = max_clique_exact(&reduced.graph, budget).unwrap().len();
            assert_eq!(omega, reduced.forced.len() + inner, "seed {seed}");
        }
    }

    #[test]
    fn deterministic_per_seed() {
        let g1 = erdos_renyi(8, 0.4, 1).unwrap();
        let g2 = erdos_renyi(8, 0.4, 2).unwrap();
        for method in Method::ALL {
            let cfg = SolveConfig::new(method, 77);
            assert_eq!(solve_mcs(&g1, &g2, &cfg).unwrap(), solve_mcs(&g1, &g2, &cfg).unwrap());
        }
    }
}
