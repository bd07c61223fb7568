//! Undirected simple graphs, association graphs and random instances.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{param_err, Error, Result};

/// Graphs up to this order also keep a packed adjacency bit-matrix.
pub const DENSE_MATRIX_THRESHOLD: usize = 4096;

/// Default cap on the order of an association graph (`n1 * n2`).
pub const DEFAULT_ASSOCIATION_BUDGET: usize = 40_000;

/// Undirected simple graph on vertices `0..n`.
///
/// Neighbor lists are sorted and the edge set never contains loops or
/// duplicates. The value is immutable once built.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    edge_count: usize,
    matrix: Option<FixedBitSet>,
    product: Option<SignProduct>,
}

/// Factorization of an association graph's adjacency.
///
/// With `S_g = A_g - complement(A_g)` (entries +-1 off the diagonal) and
/// `B = J - I`, the association adjacency is `(S1 (x) S2 + B1 (x) B2) / 2`,
/// so a product costs `O(n1 n2 (n1 + n2))` instead of `O(n1^2 n2^2)`.
#[derive(Clone, Debug)]
pub(crate) struct SignProduct {
    pub(crate) n1: usize,
    pub(crate) n2: usize,
    pub(crate) s1: Vec<f64>,
    pub(crate) s2: Vec<f64>,
}

impl SignProduct {
    fn of(g1: &Graph, g2: &Graph) -> Self {
        let signs = |g: &Graph| {
            let n = g.order();
            let mut s = vec![-1.0; n * n];
            for v in 0..n {
                s[v * n + v] = 0.0;
                for &u in g.neighbors(v) {
                    s[v * n + u] = 1.0;
                }
            }
            s
        };
        Self { n1: g1.order(), n2: g2.order(), s1: signs(g1), s2: signs(g2) }
    }

    /// `out = A x` for the association adjacency `A`.
    pub(crate) fn apply(&self, x: &[f64], out: &mut [f64]) {
        let (n1, n2) = (self.n1, self.n2);
        // T = S1 X with X the n1 x n2 reshaping of x
        let mut t = vec![0.0; n1 * n2];
        for i in 0..n1 {
            let row = &mut t[i * n2..(i + 1) * n2];
            for j in 0..n1 {
                let s = self.s1[i * n1 + j];
                if s != 0.0 {
                    for (r, &xv) in row.iter_mut().zip(&x[j * n2..(j + 1) * n2]) {
                        *r += s * xv;
                    }
                }
            }
        }
        let mut col = vec![0.0; n2];
        let mut total = 0.0;
        for i in 0..n1 {
            for (c, &xv) in col.iter_mut().zip(&x[i * n2..(i + 1) * n2]) {
                *c += xv;
            }
        }
        for &c in &col {
            total += c;
        }
        for i in 0..n1 {
            let row_sum: f64 = x[i * n2..(i + 1) * n2].iter().sum();
            let dst = &mut out[i * n2..(i + 1) * n2];
            dst.fill(0.0);
            for k in 0..n2 {
                let tk = t[i * n2 + k];
                for (d, &s) in dst.iter_mut().zip(&self.s2[k * n2..(k + 1) * n2]) {
                    *d += tk * s;
                }
            }
            // (B X B)_ih = total - row_i - col_h + x_ih
            for (h, d) in dst.iter_mut().enumerate() {
                *d = 0.5 * (*d + total - row_sum - col[h] + x[i * n2 + h]);
            }
        }
    }
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) collapse into one.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange { u, v, n });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Self::from_sorted_adjacency(adj))
    }

    /// Graph with no edges.
    pub fn empty(n: usize) -> Self {
        Self::from_sorted_adjacency(vec![Vec::new(); n])
    }

    /// Complete graph `K_n`.
    pub fn complete(n: usize) -> Self {
        let adj = (0..n).map(|v| (0..n).filter(|&u| u != v).collect()).collect();
        Self::from_sorted_adjacency(adj)
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Self::new(n, &edges).expect("path edges are valid")
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Self {
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        if n >= 3 {
            edges.push((n - 1, 0));
        }
        Self::new(n, &edges).expect("cycle edges are valid")
    }

    /// Builds from symmetric, sorted, loop-free neighbor lists.
    pub(crate) fn from_sorted_adjacency(adj: Vec<Vec<usize>>) -> Self {
        let n = adj.len();
        let degree_sum: usize = adj.iter().map(Vec::len).sum();
        debug_assert!(degree_sum.is_multiple_of(2));
        let matrix = (n <= DENSE_MATRIX_THRESHOLD).then(|| {
            let mut bits = FixedBitSet::with_capacity(n * n);
            for (u, list) in adj.iter().enumerate() {
                for &v in list {
                    bits.insert(u * n + v);
                }
            }
            bits
        });
        Self { n, adj, edge_count: degree_sum / 2, matrix, product: None }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub(crate) fn product(&self) -> Option<&SignProduct> {
        self.product.as_ref()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// `false` for out-of-range vertices and for `u == v`.
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if u >= self.n || v >= self.n || u == v {
            return false;
        }
        match &self.matrix {
            Some(bits) => bits.contains(u * self.n + v),
            None => self.adj[u].binary_search(&v).is_ok(),
        }
    }

    /// Edges as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn complement(&self) -> Graph {
        let adj = (0..self.n)
            .map(|v| {
                let mut out = Vec::with_capacity(self.n - 1 - self.degree(v));
                let mut it = self.adj[v].iter().peekable();
                for u in 0..self.n {
                    if it.peek() == Some(&&u) {
                        it.next();
                    } else if u != v {
                        out.push(u);
                    }
                }
                out
            })
            .collect();
        Graph::from_sorted_adjacency(adj)
    }

    /// Subgraph induced by `vertices` (relabelled `0..k` in the given order).
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut position = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            position[v] = i;
        }
        let adj = vertices
            .iter()
            .map(|&v| {
                let mut list: Vec<usize> =
                    self.adj[v].iter().filter_map(|&u| (position[u] != usize::MAX).then_some(position[u])).collect();
                list.sort_unstable();
                list
            })
            .collect();
        Graph::from_sorted_adjacency(adj)
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph").field("n", &self.n).field("edges", &self.edges().collect::<Vec<_>>()).finish()
    }
}

/// Sorted, duplicate-free set of vertex indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new() -> Self {
        Self(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn insert(&mut self, v: usize) -> bool {
        match self.0.binary_search(&v) {
            Ok(_) => false,
            Err(at) => {
                self.0.insert(at, v);
                true
            }
        }
    }

    pub fn iter(&self) -> core::iter::Copied<core::slice::Iter<'_, usize>> {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    /// Largest member, if any.
    pub fn max(&self) -> Option<usize> {
        self.0.last().copied()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut v: Vec<usize> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Self(v)
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        v.into_iter().collect()
    }
}

impl<const N: usize> From<[usize; N]> for VertexSet {
    fn from(v: [usize; N]) -> Self {
        v.into_iter().collect()
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = usize;
    type IntoIter = core::iter::Copied<core::slice::Iter<'a, usize>>;

    fn into_iter(self) -> Self::IntoIter {
        self.iter()
    }
}

/// Association graph of two source graphs.
///
/// Vertex `i * n2 + h` stands for the pair `(i, h)` with `i` a vertex of the
/// first graph and `h` a vertex of the second. Two pairs `(i, h)` and `(j, k)`
/// are adjacent iff `i != j`, `h != k`, and `{i, j}` is an edge of the first
/// graph exactly when `{h, k}` is an edge of the second. Cliques are then in
/// bijection with induced common subgraphs.
#[derive(Clone, Debug)]
pub struct AssociationGraph {
    pub graph: Graph,
    pub n1: usize,
    pub n2: usize,
}

impl AssociationGraph {
    pub fn index(&self, i: usize, h: usize) -> usize {
        i * self.n2 + h
    }

    pub fn label(&self, v: usize) -> (usize, usize) {
        (v / self.n2, v % self.n2)
    }

    /// Translates a vertex set of the association graph into `(i, h)` pairs.
    pub fn mapping(&self, clique: &VertexSet) -> Vec<(usize, usize)> {
        clique.iter().map(|v| self.label(v)).collect()
    }
}

/// Association graph with the default vertex budget.
pub fn association_graph(g1: &Graph, g2: &Graph) -> Result<AssociationGraph> {
    association_graph_with_budget(g1, g2, DEFAULT_ASSOCIATION_BUDGET)
}

pub fn association_graph_with_budget(g1: &Graph, g2: &Graph, max_vertices: usize) -> Result<AssociationGraph> {
    let (n1, n2) = (g1.order(), g2.order());
    if n1 == 0 || n2 == 0 {
        return Err(param_err!("association graph needs non-empty inputs (got {n1} and {n2})"));
    }
    let order = n1
        .checked_mul(n2)
        .filter(|&n| n <= max_vertices)
        .ok_or_else(|| Error::Budget(format!("association graph of order {n1}x{n2} exceeds {max_vertices}")))?;

    let mut adj = vec![Vec::new(); order];
    for i in 0..n1 {
        for h in 0..n2 {
            let list = &mut adj[i * n2 + h];
            for j in 0..n1 {
                if j == i {
                    continue;
                }
                let e1 = g1.has_edge(i, j);
                for k in 0..n2 {
                    if k != h && e1 == g2.has_edge(h, k) {
                        list.push(j * n2 + k);
                    }
                }
            }
        }
    }
    let mut graph = Graph::from_sorted_adjacency(adj);
    graph.product = Some(SignProduct::of(g1, g2));
    Ok(AssociationGraph { graph, n1, n2 })
}

/// G(n, p) random graph; each unordered pair is drawn once, in lexicographic
/// order, from a ChaCha8 stream seeded with `seed`.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(param_err!("edge probability {p} outside [0, 1]"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges)
}

/// Relabels `g` with a uniformly random permutation.
///
/// Returns the new graph and `perm` with `perm[old] = new`, so `{u, v}` is an
/// edge of `g` iff `{perm[u], perm[v]}` is an edge of the result.
pub fn permuted_copy(g: &Graph, seed: u64) -> (Graph, Vec<usize>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..g.order()).collect();
    perm.shuffle(&mut rng);
    let edges: Vec<_> = g.edges().map(|(u, v)| (perm[u], perm[v])).collect();
    (Graph::new(g.order(), &edges).expect("relabelled edges stay valid"), perm)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_product_matches_neighbor_sums() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for trial in 0..20u64 {
            let g1 = erdos_renyi(1 + trial as usize % 7, 0.5, trial).unwrap();
            let g2 = erdos_renyi(1 + trial as usize % 5, 0.3, trial + 100).unwrap();
            let assoc = association_graph(&g1, &g2).unwrap();
            let n = assoc.graph.order();
            let x: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
            let mut got = vec![0.0; n];
            assoc.graph.product().unwrap().apply(&x, &mut got);
            for (v, g) in got.iter().enumerate() {
                let want: f64 = assoc.graph.neighbors(v).iter().map(|&u| x[u]).sum();
                assert!((g - want).abs() < 1e-12, "trial {trial} vertex {v}");
            }
        }
    }

    #[test]
    fn construction_examples() {
        let k3 = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(k3.edge_count(), 3);
        assert_eq!(k3, Graph::complete(3));
        assert_eq!(Graph::new(3, &[]).unwrap().edge_count(), 0);
        assert_eq!(Graph::new(2, &[(0, 0)]), Err(Error::SelfLoop(0)));
        assert_eq!(Graph::new(2, &[(0, 2)]), Err(Error::VertexOutOfRange { u: 0, v: 2, n: 2 }));
        let dup = Graph::new(3, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(dup.edge_count(), 1);
    }

    #[test]
    fn complement_examples() {
        assert_eq!(Graph::complete(3).complement(), Graph::empty(3));
        assert_eq!(Graph::empty(4).complement(), Graph::complete(4));
        let p3 = Graph::path(3);
        let expected = Graph::new(3, &[(0, 2)]).unwrap();
        assert_eq!(p3.complement(), expected);
    }

    #[test]
    fn large_graphs_fall_back_to_sorted_lists() {
        let n = DENSE_MATRIX_THRESHOLD + 2;
        let g = Graph::new(n, &[(0, n - 1), (5, 7)]).unwrap();
        assert!(g.matrix.is_none());
        assert!(g.has_edge(n - 1, 0));
        assert!(g.has_edge(7, 5));
        assert!(!g.has_edge(5, 6));
    }

    #[test]
    fn association_of_k2_pair() {
        let k2 = Graph::complete(2);
        let a = association_graph(&k2, &k2).unwrap();
        assert_eq!(a.graph.order(), 4);
        // (0,0)-(1,1) and (0,1)-(1,0)
        let edges: Vec<_> = a.graph.edges().collect();
        assert_eq!(edges, [(0, 3), (1, 2)]);
        assert_eq!(a.label(2), (1, 0));
        assert_eq!(a.index(1, 1), 3);
    }

    #[test]
    fn association_of_k1_pair() {
        let k1 = Graph::empty(1);
        let a = association_graph(&k1, &k1).unwrap();
        assert_eq!(a.graph.order(), 1);
        assert_eq!(a.graph.edge_count(), 0);
    }

    #[test]
    fn association_budget() {
        let g = Graph::empty(10);
        assert!(matches!(association_graph_with_budget(&g, &g, 99), Err(Error::Budget(_))));
        assert!(association_graph_with_budget(&g, &g, 100).is_ok());
        assert!(matches!(association_graph(&Graph::empty(0), &g), Err(Error::Parameter(_))));
    }

    #[test]
    fn erdos_renyi_examples() {
        assert_eq!(erdos_renyi(10, 0.0, 3).unwrap(), Graph::empty(10));
        assert_eq!(erdos_renyi(10, 1.0, 3).unwrap(), Graph::complete(10));
        assert_eq!(erdos_renyi(20, 0.5, 42).unwrap(), erdos_renyi(20, 0.5, 42).unwrap());
        assert_ne!(erdos_renyi(20, 0.5, 42).unwrap(), erdos_renyi(20, 0.5, 43).unwrap());
        assert!(erdos_renyi(5, 1.5, 0).is_err());
        assert!(erdos_renyi(5, -0.1, 0).is_err());
        assert!(erdos_renyi(5, f64::NAN, 0).is_err());
    }

    #[test]
    fn erdos_renyi_edge_count_concentrates() {
        for &p in &[0.1, 0.5, 0.8] {
            let pairs = 190.0;
            let mean = p * pairs;
            let sd = libm::sqrt(pairs * p * (1.0 - p));
            for seed in 0..1000 {
                let m = erdos_renyi(20, p, seed).unwrap().edge_count() as f64;
                assert!((m - mean).abs() <= 4.0 * sd + 1e-9, "p={p} seed={seed} m={m}");
            }
        }
    }

    #[test]
    fn permuted_copy_examples() {
        let (k3, perm) = permuted_copy(&Graph::complete(3), 9);
        assert_eq!(k3, Graph::complete(3));
        let mut sorted = perm.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, [0, 1, 2]);

        let p3 = Graph::path(3);
        let (q, perm) = permuted_copy(&p3, 5);
        for (u, v) in p3.edges() {
            assert!(q.has_edge(perm[u], perm[v]));
        }
        assert_eq!(q.edge_count(), 2);
        assert_eq!(q.degree(perm[1]), 2);
        assert_eq!(q.degree(perm[0]), 1);
        assert_eq!(q.degree(perm[2]), 1);

        assert_eq!(permuted_copy(&Graph::empty(4), 1).0, Graph::empty(4));
    }

    #[test]
    fn induced_subgraph() {
        let g = Graph::cycle(5);
        let h = g.induced(&[0, 1, 2]);
        assert_eq!(h, Graph::path(3));
    }
}
