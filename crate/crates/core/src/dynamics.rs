//! Discrete-time replicator dynamics on the standard simplex.
//!
//! For a symmetric payoff matrix `W` with non-negative entries the map
//! `x_i <- x_i (Wx)_i / x'Wx` keeps `x` on the simplex and never decreases
//! `x'Wx`. With `W = A` (adjacency) the maxima are the Motzkin-Straus
//! characteristic vectors of maximum cliques; with `W = A + I/2` every local
//! maximizer is the characteristic vector of a maximal clique.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{param_err, Error, Result};
use crate::graph::{AssociationGraph, Graph, VertexSet};

/// Tolerance on `sum(x) = 1` accepted for simplex points.
pub const SIMPLEX_TOLERANCE: f64 = 1e-9;

/// A point of the standard simplex.
#[derive(Clone, Debug, PartialEq)]
pub struct SimplexVector(Vec<f64>);

impl SimplexVector {
    pub fn new(components: Vec<f64>) -> Result<Self> {
        if components.is_empty() {
            return Err(param_err!("simplex vector needs at least one component"));
        }
        if components.iter().any(|c| !c.is_finite()) {
            return Err(Error::Numeric("simplex vector"));
        }
        if let Some(c) = components.iter().find(|&&c| c < 0.0) {
            return Err(param_err!("negative simplex component {c}"));
        }
        let sum: f64 = components.iter().sum();
        if (sum - 1.0).abs() > SIMPLEX_TOLERANCE {
            return Err(param_err!("simplex components sum to {sum}"));
        }
        Ok(Self(components))
    }

    /// The barycenter `(1/n, ..., 1/n)`.
    pub fn barycenter(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(param_err!("barycenter of an empty simplex"));
        }
        Ok(Self(vec![1.0 / n as f64; n]))
    }

    /// `1/|C|` on members of `c`, zero elsewhere.
    pub fn characteristic(c: &VertexSet, n: usize) -> Result<Self> {
        if c.is_empty() {
            return Err(param_err!("characteristic vector of an empty set"));
        }
        if let Some(v) = c.max().filter(|&v| v >= n) {
            return Err(param_err!("vertex {v} outside simplex of dimension {n}"));
        }
        let mut x = vec![0.0; n];
        let weight = 1.0 / c.len() as f64;
        for v in c {
            x[v] = weight;
        }
        Ok(Self(x))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    /// Indices whose component exceeds `threshold`.
    pub fn support(&self, threshold: f64) -> VertexSet {
        self.0.iter().enumerate().filter(|(_, &c)| c > threshold).map(|(i, _)| i).collect()
    }

    pub fn max_component(&self) -> f64 {
        self.0.iter().copied().fold(0.0, f64::max)
    }

    pub fn distance(&self, other: &Self) -> f64 {
        euclidean(&self.0, &other.0)
    }
}

fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    libm::sqrt(a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum())
}

/// Which quadratic program a payoff matrix encodes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PayoffKind {
    /// `A`, the Motzkin-Straus program.
    Adjacency,
    /// `A + I/2`, Bomze's regularization.
    Bomze,
    /// `A - alpha I`, made non-negative by adding `alpha J` when `alpha > 0`.
    Shifted { alpha: f64 },
    /// Arbitrary symmetric non-negative matrix.
    General,
}

#[derive(Clone, Debug)]
enum Repr<'g> {
    /// `A + diagonal I + uniform J` for the adjacency matrix `A` of a graph.
    /// `dense` holds the 0/1 adjacency row-major when the graph is dense
    /// enough for a dense product to beat the neighbour lists.
    Structured {
        graph: &'g Graph,
        diagonal: f64,
        uniform: f64,
        dense: Option<Vec<f64>>,
    },
    Dense {
        n: usize,
        entries: Vec<f64>,
    },
}

/// Symmetric non-negative payoff matrix.
///
/// Graph-derived matrices are stored implicitly so a product costs
/// `O(n + |E|)` rather than `O(n^2)`.
#[derive(Clone, Debug)]
pub struct PayoffMatrix<'g> {
    repr: Repr<'g>,
    kind: PayoffKind,
}

/// Largest order for which a dense adjacency copy is kept.
const DENSE_PRODUCT_MAX_ORDER: usize = 1500;

impl<'g> Repr<'g> {
    fn structured(graph: &'g Graph, diagonal: f64, uniform: f64) -> Self {
        let n = graph.order();
        let dense = (graph.product().is_none() && n <= DENSE_PRODUCT_MAX_ORDER && 2 * graph.edge_count() * 5 >= n * n)
            .then(|| {
                let mut rows = vec![0.0; n * n];
                for (u, v) in graph.edges() {
                    rows[u * n + v] = 1.0;
                    rows[v * n + u] = 1.0;
                }
                rows
            });
        Repr::Structured { graph, diagonal, uniform, dense }
    }
}

/// Dot product with four partial sums so it vectorizes.
fn dot(a: &[f64], b: &[f64]) -> f64 {
    let mut acc = [0.0; 4];
    let (a4, a_rest) = a.split_at(a.len() - a.len() % 4);
    let (b4, b_rest) = b.split_at(a4.len());
    for (ca, cb) in a4.chunks_exact(4).zip(b4.chunks_exact(4)) {
        for k in 0..4 {
            acc[k] += ca[k] * cb[k];
        }
    }
    let tail: f64 = a_rest.iter().zip(b_rest).map(|(x, y)| x * y).sum();
    (acc[0] + acc[1]) + (acc[2] + acc[3]) + tail
}

impl<'g> PayoffMatrix<'g> {
    pub fn adjacency(graph: &'g Graph) -> Self {
        Self { repr: Repr::structured(graph, 0.0, 0.0), kind: PayoffKind::Adjacency }
    }

    pub fn bomze(graph: &'g Graph) -> Self {
        Self { repr: Repr::structured(graph, 0.5, 0.0), kind: PayoffKind::Bomze }
    }

    /// `A - alpha I`, plus `alpha J` when `alpha > 0` so every entry is
    /// non-negative. On the simplex the added term is the constant `alpha`.
    pub fn shifted(graph: &'g Graph, alpha: f64) -> Self {
        let uniform = if alpha > 0.0 { alpha } else { 0.0 };
        Self { repr: Repr::structured(graph, -alpha, uniform), kind: PayoffKind::Shifted { alpha } }
    }
}

impl PayoffMatrix<'static> {
    /// Dense row-major matrix; must be symmetric within `1e-12` and
    /// non-negative.
    pub fn dense(n: usize, entries: Vec<f64>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(param_err!("expected {} entries, got {}", n * n, entries.len()));
        }
        if entries.iter().any(|e| !e.is_finite()) {
            return Err(Error::Numeric("payoff matrix"));
        }
        if entries.iter().any(|&e| e < 0.0) {
            return Err(param_err!("payoff entries must be non-negative"));
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if (entries[i * n + j] - entries[j * n + i]).abs() > 1e-12 {
                    return Err(param_err!("payoff matrix is not symmetric at ({i}, {j})"));
                }
            }
        }
        Ok(Self { repr: Repr::Dense { n, entries }, kind: PayoffKind::General })
    }
}

impl PayoffMatrix<'_> {
    pub fn dim(&self) -> usize {
        match &self.repr {
            Repr::Structured { graph, .. } => graph.order(),
            Repr::Dense { n, .. } => *n,
        }
    }

    pub fn kind(&self) -> PayoffKind {
        self.kind
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        match &self.repr {
            Repr::Structured { graph, diagonal, uniform, .. } => {
                let a = if graph.has_edge(i, j) { 1.0 } else { 0.0 };
                let d = if i == j { *diagonal } else { 0.0 };
                a + d + uniform
            }
            Repr::Dense { n, entries } => entries[i * n + j],
        }
    }

    /// Materialized row-major entries.
    pub fn to_dense(&self) -> Vec<f64> {
        let n = self.dim();
        (0..n * n).map(|k| self.entry(k / n, k % n)).collect()
    }

    /// Constant by which `x'Wx` exceeds the reported objective on the simplex.
    fn reporting_offset(&self) -> f64 {
        match &self.repr {
            Repr::Structured { uniform, .. } => *uniform,
            Repr::Dense { .. } => 0.0,
        }
    }

    /// `out = W x`.
    fn apply(&self, x: &[f64], out: &mut [f64]) {
        match &self.repr {
            Repr::Structured { graph, diagonal, uniform, dense } => {
                let shift = uniform * x.iter().sum::<f64>();
                if let Some(product) = graph.product() {
                    product.apply(x, out);
                    for (slot, &xv) in out.iter_mut().zip(x) {
                        *slot += diagonal * xv + shift;
                    }
                    return;
                }
                match dense {
                    Some(rows) => {
                        let n = x.len();
                        for (v, slot) in out.iter_mut().enumerate() {
                            *slot = dot(&rows[v * n..(v + 1) * n], x) + diagonal * x[v] + shift;
                        }
                    }
                    None => {
                        for (v, slot) in out.iter_mut().enumerate() {
                            let adjacent: f64 = graph.neighbors(v).iter().map(|&u| x[u]).sum();
                            *slot = adjacent + diagonal * x[v] + shift;
                        }
                    }
                }
            }
            Repr::Dense { n, entries } => {
                for (i, slot) in out.iter_mut().enumerate() {
                    let row = &entries[i * n..(i + 1) * n];
                    *slot = row.iter().zip(x).map(|(w, xj)| w * xj).sum();
                }
            }
        }
    }

    fn check_dim(&self, x: &SimplexVector) -> Result<()> {
        if x.len() != self.dim() {
            return Err(param_err!("payoff of dimension {} applied to vector of length {}", self.dim(), x.len()));
        }
        Ok(())
    }
}

/// Quadratic form `x'Wx`, minus the non-negativity shift for
/// [`PayoffKind::Shifted`] so the value is `x'(A - alpha I)x`.
pub fn objective(w: &PayoffMatrix<'_>, x: &SimplexVector) -> Result<f64> {
    w.check_dim(x)?;
    let mut pi = vec![0.0; x.len()];
    w.apply(x.as_slice(), &mut pi);
    let raw: f64 = x.as_slice().iter().zip(&pi).map(|(a, b)| a * b).sum();
    Ok(raw - w.reporting_offset() * square_sum(x.as_slice()))
}

fn square_sum(x: &[f64]) -> f64 {
    let s: f64 = x.iter().sum();
    s * s
}

/// One replicator step into `out`; returns `x'Wx` at the input point.
fn step_into(w: &PayoffMatrix<'_>, x: &[f64], pi: &mut [f64], out: &mut [f64]) -> Result<f64> {
    w.apply(x, pi);
    let mean: f64 = x.iter().zip(pi.iter()).map(|(a, b)| a * b).sum();
    if !mean.is_finite() {
        return Err(Error::Numeric("replicator step"));
    }
    if mean <= 0.0 {
        return Err(Error::DegenerateState);
    }
    for ((slot, &xi), &p) in out.iter_mut().zip(x).zip(pi.iter()) {
        let v = xi * p / mean;
        // subnormals carry no information here and stall the arithmetic
        *slot = if v >= f64::MIN_POSITIVE { v } else { 0.0 };
    }
    Ok(mean)
}

/// `x'_i = x_i (Wx)_i / x'Wx`.
pub fn rd_step(w: &PayoffMatrix<'_>, x: &SimplexVector) -> Result<SimplexVector> {
    w.check_dim(x)?;
    let n = x.len();
    let mut pi = vec![0.0; n];
    let mut out = vec![0.0; n];
    step_into(w, x.as_slice(), &mut pi, &mut out)?;
    Ok(SimplexVector(out))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RdStatus {
    Converged,
    MaxIterations,
}

#[derive(Clone, Debug)]
pub struct RdOutcome {
    pub final_point: SimplexVector,
    pub iterations: u64,
    pub status: RdStatus,
    /// Objective at `final_point`, as reported by [`objective`].
    pub objective: f64,
}

/// Stopping rule for [`run_rd`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RdParams {
    /// Stop once `||x_t - x_{t-1}||_2 <= tol`.
    pub tol: f64,
    pub max_iters: u64,
}

impl Default for RdParams {
    fn default() -> Self {
        Self { tol: 1e-6, max_iters: 1_000_000 }
    }
}

/// Iterates [`rd_step`] until the step length drops to `tol` or the
/// iteration cap is hit.
pub fn run_rd(w: &PayoffMatrix<'_>, x0: &SimplexVector, params: RdParams) -> Result<RdOutcome> {
    run_rd_observed(w, x0, params, |_, _, _| {})
}

/// [`run_rd`] that reports `(iteration, objective before the step, step
/// length)` after every step.
pub fn run_rd_observed(
    w: &PayoffMatrix<'_>,
    x0: &SimplexVector,
    params: RdParams,
    mut observe: impl FnMut(u64, f64, f64),
) -> Result<RdOutcome> {
    w.check_dim(x0)?;
    let n = x0.len();
    let offset = w.reporting_offset();
    let mut x = x0.as_slice().to_vec();
    let mut next = vec![0.0; n];
    let mut pi = vec![0.0; n];
    let mut iterations = 0;
    let mut status = RdStatus::MaxIterations;
    while iterations < params.max_iters {
        let value = step_into(w, &x, &mut pi, &mut next)?;
        iterations += 1;
        let delta = euclidean(&x, &next);
        observe(iterations, value - offset, delta);
        core::mem::swap(&mut x, &mut next);
        if delta <= params.tol {
            status = RdStatus::Converged;
            break;
        }
    }
    let final_point = SimplexVector(x);
    let objective = objective(w, &final_point)?;
    Ok(RdOutcome { final_point, iterations, status, objective })
}

/// Adds `N(0, sigma^2)` noise per component, clips at zero and
/// renormalizes. Retries up to ten times if everything clips away.
pub fn inject_noise<R: Rng + ?Sized>(x: &SimplexVector, sigma: f64, rng: &mut R) -> Result<SimplexVector> {
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(param_err!("noise sigma must be positive, got {sigma}"));
    }
    let normal = Normal::new(0.0, sigma).map_err(|e| param_err!("{e}"))?;
    for _ in 0..10 {
        let mut y: Vec<f64> = x.as_slice().iter().map(|&c| (c + normal.sample(rng)).max(0.0)).collect();
        let total: f64 = y.iter().sum();
        if total > 0.0 && total.is_finite() {
            y.iter_mut().for_each(|c| *c /= total);
            return Ok(SimplexVector(y));
        }
    }
    Err(Error::DegenerateState)
}

/// Clique read off a simplex point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extraction {
    pub clique: VertexSet,
    /// The point was (numerically) the characteristic vector of a maximal
    /// clique, i.e. a local maximizer of the Bomze program.
    pub characteristic: bool,
}

/// Default support threshold for reading cliques off converged points.
pub const DEFAULT_SUPPORT_THRESHOLD: f64 = 1e-4;

/// Reads a clique off `x`.
///
/// The Bomze objective at a characteristic vector of a `k`-clique is
/// `1 - 1/(2k)`, so `k` is estimated from `f_hat(x)` and the `k` largest
/// components are tried first. If they do not form a clique, support
/// vertices are added greedily in decreasing weight order.
pub fn extract_clique(g: &Graph, x: &SimplexVector, support_threshold: f64) -> Result<Extraction> {
    if x.len() != g.order() {
        return Err(param_err!("vector of length {} for graph of order {}", x.len(), g.order()));
    }
    if x.as_slice().iter().any(|c| !c.is_finite()) {
        return Err(Error::Numeric("clique extraction"));
    }
    let f_hat = objective(&PayoffMatrix::bomze(g), x)?;
    let k = if f_hat < 1.0 {
        let estimate = libm::round(1.0 / (2.0 * (1.0 - f_hat)));
        (estimate.max(1.0) as usize).min(g.order())
    } else {
        g.order()
    };

    let mut ranked: Vec<usize> = (0..x.len()).collect();
    ranked.sort_by(|&a, &b| x.as_slice()[b].total_cmp(&x.as_slice()[a]).then(a.cmp(&b)));

    let top: VertexSet = ranked[..k].iter().copied().collect();
    if crate::oracle::is_clique(g, &top) {
        let characteristic = x.support(support_threshold) == top && is_maximal_clique(g, &top);
        return Ok(Extraction { clique: top, characteristic });
    }

    let mut chosen: Vec<usize> = Vec::new();
    for &v in ranked.iter().take_while(|&&v| x.as_slice()[v] > support_threshold) {
        if chosen.iter().all(|&u| g.has_edge(u, v)) {
            chosen.push(v);
        }
    }
    if chosen.is_empty() {
        chosen.push(ranked[0]);
    }
    Ok(Extraction { clique: chosen.into(), characteristic: false })
}

pub(crate) fn is_maximal_clique(g: &Graph, c: &VertexSet) -> bool {
    let Some(first) = c.iter().next() else {
        return g.order() == 0;
    };
    g.neighbors(first).iter().filter(|&&v| !c.contains(v)).all(|&v| !c.iter().all(|u| g.has_edge(u, v)))
}

/// Knobs shared by the replicator-based clique searches.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DynamicsConfig {
    pub rd: RdParams,
    pub noise_sigma: f64,
    pub max_restarts: u32,
    pub support_threshold: f64,
}

impl Default for DynamicsConfig {
    fn default() -> Self {
        Self {
            rd: RdParams::default(),
            noise_sigma: 0.01,
            max_restarts: 10,
            support_threshold: DEFAULT_SUPPORT_THRESHOLD,
        }
    }
}

/// Best clique found by a dynamics-based search plus effort counters.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CliqueSearch {
    pub clique: VertexSet,
    pub iterations: u64,
    pub stages: u32,
    pub restarts: u32,
}

impl CliqueSearch {
    pub(crate) fn offer(&mut self, candidate: VertexSet) {
        if candidate.len() > self.clique.len() {
            self.clique = candidate;
        }
    }
}

/// Runs RD under `A + I/2` from `start`, extracts a clique, and restarts
/// from a noisy copy of the stationary point while extraction does not find
/// a characteristic vector of a maximal clique.
pub(crate) fn bomze_polish<R: Rng + ?Sized>(
    g: &Graph,
    start: SimplexVector,
    cfg: &DynamicsConfig,
    rng: &mut R,
    search: &mut CliqueSearch,
) -> Result<()> {
    let bomze = PayoffMatrix::bomze(g);
    let mut point = start;
    for attempt in 0..=cfg.max_restarts {
        if attempt > 0 {
            point = inject_noise(&point, cfg.noise_sigma, rng)?;
            search.restarts += 1;
        }
        let outcome = run_rd(&bomze, &point, cfg.rd)?;
        search.iterations += outcome.iterations;
        search.stages += 1;
        let extraction = extract_clique(g, &outcome.final_point, cfg.support_threshold)?;
        search.offer(extraction.clique);
        if extraction.characteristic {
            break;
        }
        point = outcome.final_point;
    }
    Ok(())
}

/// Pelillo's two-phase replicator search: RD under `A` from the
/// barycenter, then RD under `A + I/2` from that stationary point.
pub fn two_phase_rd_on_graph<R: Rng + ?Sized>(g: &Graph, cfg: &DynamicsConfig, rng: &mut R) -> CliqueSearch {
    let mut search = CliqueSearch::default();
    if g.order() == 0 {
        return search;
    }
    search.clique = [0].into();
    let Ok(start) = SimplexVector::barycenter(g.order()) else {
        return search;
    };
    let phase_two_start = match run_rd(&PayoffMatrix::adjacency(g), &start, cfg.rd) {
        Ok(outcome) => {
            search.iterations += outcome.iterations;
            search.stages += 1;
            outcome.final_point
        }
        // edgeless graph: A x vanishes everywhere
        Err(_) => start,
    };
    // A failure here leaves the best clique seen so far, which is at least
    // a single vertex.
    let _ = bomze_polish(g, phase_two_start, cfg, rng, &mut search);
    search
}

pub fn two_phase_rd<R: Rng + ?Sized>(assoc: &AssociationGraph, cfg: &DynamicsConfig, rng: &mut R) -> CliqueSearch {
    two_phase_rd_on_graph(&assoc.graph, cfg, rng)
}

/// Trajectory diagnostics: CSV lines `iter,objective,delta_norm`.
pub fn trajectory_csv(w: &PayoffMatrix<'_>, x0: &SimplexVector, params: RdParams) -> Result<alloc::string::String> {
    use core::fmt::Write;
    let mut out = alloc::string::String::from("iter,objective,delta_norm\n");
    run_rd_observed(w, x0, params, |iter, value, delta| {
        let _ = writeln!(out, "{iter},{value:.17e},{delta:.17e}");
    })?;
    Ok(out)
}
