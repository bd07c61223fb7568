//! Exact solvers and checks used as ground truth at small scale.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use crate::error::{param_err, Error, Result};
use crate::graph::{Graph, VertexSet};

/// Limits for the exponential-time solvers.
///
/// `max_steps` caps the number of search nodes; it stands in for a wall-clock
/// limit since the core crate has no clock.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_vertices: usize,
    pub max_steps: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        Self { max_vertices: 64, max_steps: 200_000_000 }
    }
}

impl OracleBudget {
    pub fn with_max_vertices(max_vertices: usize) -> Self {
        Self { max_vertices, ..Self::default() }
    }
}

struct StepCounter {
    used: u64,
    limit: u64,
}

impl StepCounter {
    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::Budget(format!("exact search exceeded {} steps", self.limit)))
        } else {
            Ok(())
        }
    }
}

fn adjacency_rows(g: &Graph) -> Vec<FixedBitSet> {
    (0..g.order())
        .map(|v| {
            let mut row = FixedBitSet::with_capacity(g.order());
            row.extend(g.neighbors(v).iter().copied());
            row
        })
        .collect()
}

/// Vertices in degeneracy order (repeatedly remove a minimum-degree vertex,
/// smallest index first on ties).
fn degeneracy_order(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n).filter(|&v| !removed[v]).min_by_key(|&v| (degree[v], v)).expect("a vertex remains");
        removed[v] = true;
        order.push(v);
        for &u in g.neighbors(v) {
            if !removed[u] {
                degree[u] -= 1;
            }
        }
    }
    order
}

/// Clique number by Bron-Kerbosch with pivoting and a size cut.
fn clique_number(rows: &[FixedBitSet], order: &[usize], steps: &mut StepCounter) -> Result<usize> {
    fn expand(
        rows: &[FixedBitSet],
        depth: usize,
        mut p: FixedBitSet,
        mut x: FixedBitSet,
        best: &mut usize,
        steps: &mut StepCounter,
    ) -> Result<()> {
        steps.tick()?;
        let p_len = p.count_ones(..);
        if p_len == 0 {
            if x.count_ones(..) == 0 {
                *best = (*best).max(depth);
            }
            return Ok(());
        }
        if depth + p_len <= *best {
            return Ok(());
        }
        // pivot: vertex of P ∪ X with the most neighbors in P
        let pivot = p
            .ones()
            .chain(x.ones())
            .max_by_key(|&u| (rows[u].intersection_count(&p), core::cmp::Reverse(u)))
            .expect("P is non-empty");
        let candidates: Vec<usize> = p.difference(&rows[pivot]).collect();
        for v in candidates {
            let mut next_p = p.clone();
            next_p.intersect_with(&rows[v]);
            let mut next_x = x.clone();
            next_x.intersect_with(&rows[v]);
            expand(rows, depth + 1, next_p, next_x, best, steps)?;
            p.set(v, false);
            x.insert(v);
        }
        Ok(())
    }

    let n = rows.len();
    let mut best = 0;
    let mut position = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    for &v in order {
        let mut p = FixedBitSet::with_capacity(n);
        let mut x = FixedBitSet::with_capacity(n);
        for u in rows[v].ones() {
            if position[u] > position[v] {
                p.insert(u);
            } else {
                x.insert(u);
            }
        }
        expand(rows, 1, p, x, &mut best, steps)?;
    }
    Ok(best)
}

/// Lexicographically smallest clique of exactly `size` vertices.
fn first_clique_of_size(rows: &[FixedBitSet], size: usize, steps: &mut StepCounter) -> Result<Option<Vec<usize>>> {
    fn descend(
        rows: &[FixedBitSet],
        size: usize,
        chosen: &mut Vec<usize>,
        candidates: &FixedBitSet,
        steps: &mut StepCounter,
    ) -> Result<bool> {
        steps.tick()?;
        if chosen.len() == size {
            return Ok(true);
        }
        if chosen.len() + candidates.count_ones(..) < size {
            return Ok(false);
        }
        for v in candidates.ones() {
            let mut next = candidates.clone();
            next.intersect_with(&rows[v]);
            next.set_range(..v + 1, false);
            chosen.push(v);
            if descend(rows, size, chosen, &next, steps)? {
                return Ok(true);
            }
            chosen.pop();
        }
        Ok(false)
    }

    let mut all = FixedBitSet::with_capacity(rows.len());
    all.insert_range(..);
    let mut chosen = Vec::with_capacity(size);
    Ok(descend(rows, size, &mut chosen, &all, steps)?.then_some(chosen))
}

/// Maximum clique, breaking ties towards the lexicographically smallest
/// sorted vertex list.
pub fn max_clique_exact(g: &Graph, budget: OracleBudget) -> Result<VertexSet> {
    if g.order() > budget.max_vertices {
        return Err(Error::Budget(format!(
            "graph of order {} exceeds oracle limit {}",
            g.order(),
            budget.max_vertices
        )));
    }
    if g.order() == 0 {
        return Ok(VertexSet::new());
    }
    let rows = adjacency_rows(g);
    let mut steps = StepCounter { used: 0, limit: budget.max_steps };
    let omega = clique_number(&rows, &degeneracy_order(g), &mut steps)?;
    let clique = first_clique_of_size(&rows, omega, &mut steps)?
        .ok_or_else(|| Error::Logic(format!("no clique of size {omega} on second pass")))?;
    Ok(clique.into())
}

/// Maximum independent set, computed as a maximum clique of the complement.
pub fn mis_exact(g: &Graph, budget: OracleBudget) -> Result<VertexSet> {
    max_clique_exact(&g.complement(), budget)
}

/// Largest induced common subgraph by exhaustive search over injective
/// partial maps `V1 -> V2`. Returns the `(i, h)` pairs of the first maximum
/// map met in lexicographic search order.
pub fn mcs_brute_force(g1: &Graph, g2: &Graph, budget: OracleBudget) -> Result<Vec<(usize, usize)>> {
    struct Search<'a> {
        g1: &'a Graph,
        g2: &'a Graph,
        used: Vec<bool>,
        current: Vec<(usize, usize)>,
        best: Vec<(usize, usize)>,
        steps: StepCounter,
    }

    impl Search<'_> {
        fn consistent(&self, i: usize, h: usize) -> bool {
            self.current.iter().all(|&(j, k)| self.g1.has_edge(i, j) == self.g2.has_edge(h, k))
        }

        fn go(&mut self, i: usize) -> Result<()> {
            self.steps.tick()?;
            let n1 = self.g1.order();
            let free = self.used.iter().filter(|&&u| !u).count();
            if self.current.len() + (n1 - i).min(free) <= self.best.len() {
                return Ok(());
            }
            if i == n1 {
                self.best.clone_from(&self.current);
                return Ok(());
            }
            for h in 0..self.g2.order() {
                if !self.used[h] && self.consistent(i, h) {
                    self.used[h] = true;
                    self.current.push((i, h));
                    self.go(i + 1)?;
                    self.current.pop();
                    self.used[h] = false;
                }
            }
            self.go(i + 1)
        }
    }

    let limit = budget.max_vertices;
    if g1.order() * g2.order() > limit {
        return Err(Error::Budget(format!(
            "brute-force MCS on {}x{} exceeds oracle limit {limit}",
            g1.order(),
            g2.order()
        )));
    }
    let mut search = Search {
        g1,
        g2,
        used: vec![false; g2.order()],
        current: Vec::new(),
        best: Vec::new(),
        steps: StepCounter { used: 0, limit: budget.max_steps },
    };
    search.go(0)?;
    Ok(search.best)
}

pub fn is_clique(g: &Graph, s: &VertexSet) -> bool {
    let members = s.as_slice();
    members.iter().all(|&v| v < g.order())
        && members.iter().enumerate().all(|(k, &u)| members[k + 1..].iter().all(|&v| g.has_edge(u, v)))
}

pub fn is_independent(g: &Graph, s: &VertexSet) -> bool {
    let members = s.as_slice();
    members.iter().all(|&v| v < g.order())
        && members.iter().enumerate().all(|(k, &u)| members[k + 1..].iter().all(|&v| !g.has_edge(u, v)))
}

/// True iff `mapping` is injective in both coordinates, in range, and
/// preserves both adjacency and non-adjacency between every mapped pair.
pub fn verify_common_subgraph(g1: &Graph, g2: &Graph, mapping: &[(usize, usize)]) -> bool {
    let mut seen1 = vec![false; g1.order()];
    let mut seen2 = vec![false; g2.order()];
    for &(i, h) in mapping {
        if i >= g1.order() || h >= g2.order() || seen1[i] || seen2[h] {
            return false;
        }
        seen1[i] = true;
        seen2[h] = true;
    }
    mapping
        .iter()
        .enumerate()
        .all(|(k, &(i, h))| mapping[k + 1..].iter().all(|&(j, l)| g1.has_edge(i, j) == g2.has_edge(h, l)))
}

/// Largest eigenvalue of the adjacency submatrix on `restriction`.
///
/// Power iteration from the all-ones vector on `A_C + I`; the unit shift
/// keeps the Perron eigenvalue strictly dominant in modulus, which plain
/// iteration on `A_C` lacks for bipartite restrictions.
pub fn largest_eigenvalue(g: &Graph, restriction: &VertexSet) -> Result<f64> {
    const MAX_STEPS: usize = 10_000;
    const REL_TOL: f64 = 1e-12;

    if restriction.is_empty() {
        return Err(param_err!("eigenvalue of an empty restriction"));
    }
    if let Some(v) = restriction.max().filter(|&v| v >= g.order()) {
        return Err(param_err!("vertex {v} outside graph of order {}", g.order()));
    }
    let sub = g.induced(restriction.as_slice());
    let k = sub.order();
    let mut x = vec![1.0 / libm::sqrt(k as f64); k];
    let mut y = vec![0.0; k];
    let mut rayleigh = f64::NAN;
    for _ in 0..MAX_STEPS {
        for (v, out) in y.iter_mut().enumerate() {
            *out = x[v] + sub.neighbors(v).iter().map(|&u| x[u]).sum::<f64>();
        }
        let next: f64 = x.iter().zip(&y).map(|(a, b)| a * b).sum();
        let norm = libm::sqrt(y.iter().map(|a| a * a).sum::<f64>());
        for (a, b) in x.iter_mut().zip(&y) {
            *a = b / norm;
        }
        let settled = (next - rayleigh).abs() <= REL_TOL * next.abs().max(1.0);
        rayleigh = next;
        if settled {
            break;
        }
    }
    Ok(rayleigh - 1.0)
}
