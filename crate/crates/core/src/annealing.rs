//! Annealed imitation heuristics.
//!
//! Replicator dynamics are run on a diagonally shifted adjacency matrix for
//! a ladder of `alpha` values chosen from a probabilistic estimate
//! `gamma_hat_m` of `gamma(C)` for `m`-vertex subsets. The ladder starts
//! from an upper bound on the clique number and walks `m` down to two; each
//! stage starts from the previous stage's stationary point. A
//! Bomze-regularized run then polishes the result into a clique.
//!
//! The characteristic vector of a clique `C` is a strict local maximizer of
//! `x'(A + alpha I)x` exactly when `gamma(C) < alpha < 1`, so a stage with
//! `gamma_hat_m < alpha < gamma_hat_{m-1}` keeps cliques of about `m`
//! vertices as attractors and dissolves smaller ones. That is the default
//! [`ShiftConvention::Threshold`]. [`ShiftConvention::Literal`] runs
//! `A - alpha I` with the same ladder instead; for `alpha < -1` every simplex
//! vertex is then a strict local maximizer.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use rand::Rng;

use crate::dynamics::{
    bomze_polish, extract_clique, inject_noise, run_rd, CliqueSearch, DynamicsConfig, PayoffMatrix, SimplexVector,
};
use crate::error::{param_err, Result};
use crate::graph::{AssociationGraph, Graph, VertexSet};

/// Edge density `|E| / (n (n - 1) / 2)`.
pub fn density(g: &Graph) -> Result<f64> {
    let n = g.order();
    if n < 2 {
        return Err(param_err!("density needs at least two vertices, got {n}"));
    }
    Ok(g.edge_count() as f64 / (n * (n - 1) / 2) as f64)
}

/// `gamma_hat_m = 1 - (1 - q) m - sqrt(m q (1 - q) delta^nu)` with
/// `nu = (n - m) / 2`.
pub fn gamma_hat(m: usize, q: f64, n: usize, delta: f64) -> Result<f64> {
    if m < 1 || m > n {
        return Err(param_err!("subset size {m} outside 1..={n}"));
    }
    if !(0.0..=1.0).contains(&q) {
        return Err(param_err!("density {q} outside [0, 1]"));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(param_err!("confidence delta {delta} outside (0, 1)"));
    }
    let m_f = m as f64;
    let nu = (n - m) as f64 / 2.0;
    Ok(1.0 - (1.0 - q) * m_f - libm::sqrt(m_f * q * (1.0 - q) * libm::pow(delta, nu)))
}

/// How the edge-count bound on the clique number is computed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum BoundMode {
    /// Largest `c` with `c (c - 1) / 2 <= |E|`; always a valid upper bound.
    #[default]
    Safe,
    /// `floor(sqrt(8|E| + 1) / 4 + 1/2)`. Not an upper bound in general
    /// (it gives 2 for `K5`); kept for comparison runs.
    Approximate,
}

/// Edge-count bound on the clique number of a graph with `edges` edges.
pub fn edge_clique_bound(edges: usize, mode: BoundMode) -> usize {
    match mode {
        BoundMode::Safe => {
            // c (c - 1) / 2 <= edges
            let mut c = libm::floor((1.0 + libm::sqrt(8.0 * edges as f64 + 1.0)) / 2.0) as usize;
            while c > 1 && c * (c - 1) / 2 > edges {
                c -= 1;
            }
            while (c + 1) * c / 2 <= edges {
                c += 1;
            }
            c
        }
        BoundMode::Approximate => libm::floor(libm::sqrt(8.0 * edges as f64 + 1.0) / 4.0 + 0.5) as usize,
    }
}

/// Upper bound on the clique number of a graph with `edges` edges whose
/// cliques cannot exceed `cap` vertices. Edgeless graphs give 1.
pub fn clique_bound(edges: usize, cap: usize, mode: BoundMode) -> usize {
    if edges == 0 {
        return 1;
    }
    edge_clique_bound(edges, mode).min(cap).max(1)
}

/// `min{edge bound, n1, n2}` for an association graph.
pub fn clique_upper_bound(assoc: &AssociationGraph, mode: BoundMode) -> usize {
    clique_bound(assoc.graph.edge_count(), assoc.n1.min(assoc.n2), mode)
}

/// One rung of the annealing ladder.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnnealingStep {
    pub m: usize,
    pub alpha: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnnealingSchedule {
    pub q: f64,
    pub n: usize,
    pub delta: f64,
    pub c_sup: usize,
    /// `m = c_sup, c_sup - 1, ..., 2` with `alpha_m = (gamma_hat_{m-1} + gamma_hat_m) / 2`.
    pub steps: Vec<AnnealingStep>,
}

impl AnnealingSchedule {
    pub fn new(q: f64, n: usize, c_sup: usize, delta: f64) -> Result<Self> {
        let c_sup = c_sup.min(n);
        let steps = (2..=c_sup)
            .rev()
            .map(|m| {
                let alpha = (gamma_hat(m - 1, q, n, delta)? + gamma_hat(m, q, n, delta)?) / 2.0;
                Ok(AnnealingStep { m, alpha })
            })
            .collect::<Result<Vec<_>>>()?;
        if !(delta > 0.0 && delta < 1.0) {
            return Err(param_err!("confidence delta {delta} outside (0, 1)"));
        }
        Ok(Self { q, n, delta, c_sup, steps })
    }

    /// CSV lines `m,gamma_hat_m,alpha`.
    pub fn to_csv(&self) -> Result<String> {
        let mut out = String::from("m,gamma_hat_m,alpha\n");
        for step in &self.steps {
            let g = gamma_hat(step.m, self.q, self.n, self.delta)?;
            let _ = writeln!(out, "{},{:.17e},{:.17e}", step.m, g, step.alpha);
        }
        Ok(out)
    }
}

/// Schedule for `graph` whose clique number is at most `cap`.
pub fn schedule_for_graph(graph: &Graph, cap: usize, delta: f64, mode: BoundMode) -> Result<AnnealingSchedule> {
    let q = density(graph)?;
    let c_sup = clique_bound(graph.edge_count(), cap, mode);
    AnnealingSchedule::new(q, graph.order(), c_sup, delta)
}

pub fn build_schedule(assoc: &AssociationGraph, delta: f64, mode: BoundMode) -> Result<AnnealingSchedule> {
    schedule_for_graph(&assoc.graph, assoc.n1.min(assoc.n2), delta, mode)
}

/// `A - alpha I`, repaired to non-negative entries for `alpha > 0`.
pub fn shifted_payoff(g: &Graph, alpha: f64) -> PayoffMatrix<'_> {
    PayoffMatrix::shifted(g, alpha)
}

/// `gamma(C) = max_{i not in C} deg_C(i) - |C| + 1`, with the maximum over
/// an empty outside set taken as 0.
pub fn compute_gamma(g: &Graph, c: &VertexSet) -> Result<f64> {
    if c.is_empty() {
        return Err(param_err!("gamma of an empty vertex set"));
    }
    if let Some(v) = c.max().filter(|&v| v >= g.order()) {
        return Err(param_err!("vertex {v} outside graph of order {}", g.order()));
    }
    let outside_max = (0..g.order())
        .filter(|&i| !c.contains(i))
        .map(|i| g.neighbors(i).iter().filter(|&&j| c.contains(j)).count())
        .max()
        .unwrap_or(0);
    Ok(outside_max as f64 - c.len() as f64 + 1.0)
}

/// How a ladder value `alpha` enters the payoff matrix.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum ShiftConvention {
    /// `A + alpha I`: `alpha` is the clique-stability threshold.
    #[default]
    Threshold,
    /// `A - alpha I`.
    Literal,
}

impl ShiftConvention {
    /// Argument for [`shifted_payoff`] that realizes ladder value `alpha`.
    pub fn payoff_shift(self, alpha: f64) -> f64 {
        match self {
            ShiftConvention::Threshold => -alpha,
            ShiftConvention::Literal => alpha,
        }
    }
}

/// Annealing parameters on top of the replicator settings.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnnealingConfig {
    pub dynamics: DynamicsConfig,
    pub delta: f64,
    pub bound: BoundMode,
    pub shift: ShiftConvention,
}

impl Default for AnnealingConfig {
    fn default() -> Self {
        Self {
            dynamics: DynamicsConfig::default(),
            delta: 0.01,
            bound: BoundMode::Safe,
            shift: ShiftConvention::Threshold,
        }
    }
}

/// A point is treated as collapsed onto a simplex vertex above this mass.
const COLLAPSE_LEVEL: f64 = 1.0 - 1e-6;

/// Annealed search on `graph`, whose clique number is at most `cap`.
pub fn run_aih_on_graph<R: Rng + ?Sized>(
    graph: &Graph,
    cap: usize,
    cfg: &AnnealingConfig,
    rng: &mut R,
) -> CliqueSearch {
    let mut search = CliqueSearch::default();
    if graph.order() == 0 {
        return search;
    }
    search.clique = [0].into();
    if graph.order() < 2 {
        return search;
    }
    let _ = anneal(graph, cap, cfg, rng, &mut search);
    search
}

fn anneal<R: Rng + ?Sized>(
    graph: &Graph,
    cap: usize,
    cfg: &AnnealingConfig,
    rng: &mut R,
    search: &mut CliqueSearch,
) -> Result<()> {
    let dyn_cfg = &cfg.dynamics;
    let schedule = schedule_for_graph(graph, cap, cfg.delta, cfg.bound)?;
    let mut x = SimplexVector::barycenter(graph.order())?;
    for step in &schedule.steps {
        let payoff = shifted_payoff(graph, cfg.shift.payoff_shift(step.alpha));
        match run_rd(&payoff, &x, dyn_cfg.rd) {
            Ok(outcome) => {
                search.iterations += outcome.iterations;
                search.stages += 1;
                x = outcome.final_point;
            }
            // x'Wx can only vanish for an edgeless graph with a zero
            // shift; keep the current point.
            Err(crate::Error::DegenerateState) => {}
            Err(e) => return Err(e),
        }
        search.offer(extract_clique(graph, &x, dyn_cfg.support_threshold)?.clique);
        if x.max_component() > COLLAPSE_LEVEL {
            x = inject_noise(&x, dyn_cfg.noise_sigma, rng)?;
        }
    }
    bomze_polish(graph, x, dyn_cfg, rng, search)
}

/// Annealed imitation heuristic on an association graph.
pub fn run_aih<R: Rng + ?Sized>(assoc: &AssociationGraph, cfg: &AnnealingConfig, rng: &mut R) -> CliqueSearch {
    run_aih_on_graph(&assoc.graph, assoc.n1.min(assoc.n2), cfg, rng)
}
