//! Maximum independent set kernelization.
//!
//! Reductions act on a mutable [`ReductionState`] that keeps adjacency as
//! bit rows, a per-vertex degree cache and the four degree classes used by
//! the linear-time algorithm. Every decision is written to a
//! [`ReductionTrace`]; replaying the trace backwards turns an independent set
//! of the kernel into an independent set of the input graph.
//!
//! Vertices never get renumbered while reducing. Contractions append fresh
//! placeholder ids past the original order, so trace entries stay valid.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// The degree-two path cases of the linear-time algorithm.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum PathCase {
    /// Every vertex of the path has degree two and it closes on itself.
    Cycle,
    /// Both ends attach to the same outside vertex.
    SameEndpoint,
    OddWithEdge,
    OddWithoutEdge,
    EvenWithEdge,
    EvenWithoutEdge,
}

impl PathCase {
    pub fn name(self) -> &'static str {
        match self {
            PathCase::Cycle => "cycle",
            PathCase::SameEndpoint => "same-endpoint",
            PathCase::OddWithEdge => "odd-edge",
            PathCase::OddWithoutEdge => "odd-no-edge",
            PathCase::EvenWithEdge => "even-edge",
            PathCase::EvenWithoutEdge => "even-no-edge",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        [
            PathCase::Cycle,
            PathCase::SameEndpoint,
            PathCase::OddWithEdge,
            PathCase::OddWithoutEdge,
            PathCase::EvenWithEdge,
            PathCase::EvenWithoutEdge,
        ]
        .into_iter()
        .find(|c| c.name() == name)
    }
}

/// One reduction decision.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum TraceEntry {
    /// The vertex became isolated and joins the independent set.
    Include(usize),
    /// The vertex was deleted and stays out of the lifted set.
    Exclude(usize),
    /// Deferred decision: on replay the vertex joins unless one of the two
    /// recorded neighbours already has.
    StackPush { vertex: usize, neighbors: [usize; 2] },
    /// `placeholder` in the set stands for `{left, right}`, otherwise `center`
    /// joins.
    Fold { placeholder: usize, center: usize, left: usize, right: usize },
    /// `placeholder` in the set stands for the three shared neighbours,
    /// otherwise `first` and `second` join.
    Twin { placeholder: usize, first: usize, second: usize, neighborhood: [usize; 3] },
    /// Record of a degree-two path reduction. Replay ignores it; the stack
    /// entries that follow carry the decisions.
    Path { case: PathCase, path: Vec<usize>, endpoints: Option<(usize, usize)> },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ReductionTrace {
    /// Order of the graph the reduction started from. Ids at or above it are
    /// placeholders.
    pub original_order: usize,
    pub entries: Vec<TraceEntry>,
}

impl ReductionTrace {
    pub fn new(original_order: usize) -> Self {
        Self { original_order, entries: Vec::new() }
    }

    /// Largest id mentioned by any entry, plus one.
    fn id_bound(&self) -> usize {
        let mut bound = self.original_order;
        let mut see = |v: usize| bound = bound.max(v + 1);
        for e in &self.entries {
            match e {
                TraceEntry::Include(v) | TraceEntry::Exclude(v) => see(*v),
                TraceEntry::StackPush { vertex, neighbors } => {
                    see(*vertex);
                    neighbors.iter().for_each(|&u| see(u));
                }
                TraceEntry::Fold { placeholder, center, left, right } => {
                    [*placeholder, *center, *left, *right].into_iter().for_each(&mut see)
                }
                TraceEntry::Twin { placeholder, first, second, neighborhood } => {
                    [*placeholder, *first, *second].into_iter().for_each(&mut see);
                    neighborhood.iter().for_each(|&u| see(u));
                }
                TraceEntry::Path { path, endpoints, .. } => {
                    path.iter().for_each(|&u| see(u));
                    if let Some((a, b)) = endpoints {
                        see(*a);
                        see(*b);
                    }
                }
            }
        }
        bound
    }

    /// Replays the trace backwards starting from `chosen`, a set of ids
    /// alive at the end of the reduction.
    pub fn replay(&self, chosen: &[usize]) -> Result<VertexSet> {
        let bound = self.id_bound().max(chosen.iter().map(|&v| v + 1).max().unwrap_or(0));
        let mut member = FixedBitSet::with_capacity(bound);
        for &v in chosen {
            member.insert(v);
        }
        for entry in self.entries.iter().rev() {
            match *entry {
                TraceEntry::Include(v) => member.insert(v),
                TraceEntry::Exclude(_) | TraceEntry::Path { .. } => {}
                TraceEntry::StackPush { vertex, neighbors: [a, b] } => {
                    if !member.contains(a) && !member.contains(b) {
                        member.insert(vertex);
                    }
                }
                TraceEntry::Fold { placeholder, center, left, right } => {
                    if member.contains(placeholder) {
                        member.set(placeholder, false);
                        member.insert(left);
                        member.insert(right);
                    } else {
                        member.insert(center);
                    }
                }
                TraceEntry::Twin { placeholder, first, second, neighborhood } => {
                    if member.contains(placeholder) {
                        member.set(placeholder, false);
                        neighborhood.iter().for_each(|&u| member.insert(u));
                    } else {
                        member.insert(first);
                        member.insert(second);
                    }
                }
            }
        }
        if let Some(p) = member.ones().find(|&v| v >= self.original_order) {
            return Err(Error::Logic(format!("placeholder {p} survived trace replay")));
        }
        Ok(member.ones().collect())
    }
}

/// Residual graph plus everything needed to lift its solutions.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelResult {
    pub kernel: Graph,
    pub trace: ReductionTrace,
    /// Kernel vertex to reduction id. Ids below `trace.original_order` are
    /// vertices of the input graph; larger ids are placeholders.
    pub name_map: Vec<usize>,
    /// Size of the lifted set contributed by the trace alone.
    pub forced_count: usize,
    /// Order of the kernel the exact rules reached before the first inexact
    /// deletion; equals `kernel.order()` when none happened.
    pub exact_kernel_order: usize,
}

impl KernelResult {
    /// Lifts an independent set of the kernel to one of the input graph with
    /// `forced_count` more vertices.
    pub fn reconstruct_mis(&self, kernel_mis: &VertexSet) -> Result<VertexSet> {
        if let Some(v) = kernel_mis.max().filter(|&v| v >= self.kernel.order()) {
            return Err(Error::Contract(format!("vertex {v} is not in the kernel of order {}", self.kernel.order())));
        }
        if !crate::oracle::is_independent(&self.kernel, kernel_mis) {
            return Err(Error::Contract("kernel set is not independent".into()));
        }
        let chosen: Vec<usize> = kernel_mis.iter().map(|v| self.name_map[v]).collect();
        self.trace.replay(&chosen)
    }
}

/// `V_=0`, `V_=1`, `V_=2` and `V_>=3`.
#[derive(Clone, Debug, Default)]
pub struct DegreeBuckets {
    lists: [Vec<usize>; 4],
    position: Vec<usize>,
    class: Vec<u8>,
}

const NO_CLASS: u8 = u8::MAX;

impl DegreeBuckets {
    pub fn class_of_degree(d: usize) -> usize {
        d.min(3)
    }

    fn ensure(&mut self, v: usize) {
        if v >= self.class.len() {
            self.class.resize(v + 1, NO_CLASS);
            self.position.resize(v + 1, 0);
        }
    }

    fn insert(&mut self, v: usize, class: usize) {
        self.ensure(v);
        debug_assert_eq!(self.class[v], NO_CLASS);
        self.class[v] = class as u8;
        self.position[v] = self.lists[class].len();
        self.lists[class].push(v);
    }

    fn remove(&mut self, v: usize) {
        let Some(class) = self.class.get(v).copied().filter(|&c| c != NO_CLASS) else {
            return;
        };
        let list = &mut self.lists[class as usize];
        let at = self.position[v];
        list.swap_remove(at);
        if let Some(&moved) = list.get(at) {
            self.position[moved] = at;
        }
        self.class[v] = NO_CLASS;
    }

    fn move_to(&mut self, v: usize, class: usize) {
        if self.class.get(v).copied() != Some(class as u8) {
            self.remove(v);
            self.insert(v, class);
        }
    }

    /// Class index (0..=3) of `v`, if it is bucketed.
    pub fn class(&self, v: usize) -> Option<usize> {
        self.class.get(v).copied().filter(|&c| c != NO_CLASS).map(usize::from)
    }

    /// Vertices of class `class` (0..=3), in no particular order.
    pub fn members(&self, class: usize) -> &[usize] {
        &self.lists[class]
    }
}

/// Which rules an exhaustive reduction may use.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RuleSet {
    /// Degree-one and degree-two-path rules only.
    LinearTime,
    /// Linear-time rules, vertex folding, twin, unconfined and diamond, in
    /// that priority.
    #[default]
    All,
}

/// Outcome of the confinement procedure started from one vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Confinement {
    Unconfined,
    /// The vertex is confined; `set` is the final `S`.
    Confined {
        set: Vec<usize>,
    },
}

/// Mutable graph under reduction.
#[derive(Clone, Debug)]
pub struct ReductionState {
    original_order: usize,
    rows: Vec<FixedBitSet>,
    degree: Vec<usize>,
    alive: FixedBitSet,
    buckets: DegreeBuckets,
    trace: Vec<TraceEntry>,
    /// Vertices whose neighbourhood changed since the engine last looked.
    touched: Vec<usize>,
    scratch_closed: FixedBitSet,
    scratch_count: Vec<u32>,
    exact_kernel_order: Option<usize>,
}

impl ReductionState {
    pub fn new(g: &Graph) -> Self {
        let n = g.order();
        let capacity = n + n / 2 + 2;
        let mut rows = Vec::with_capacity(capacity);
        for v in 0..n {
            let mut row = FixedBitSet::with_capacity(capacity);
            for &u in g.neighbors(v) {
                row.insert(u);
            }
            rows.push(row);
        }
        let mut alive = FixedBitSet::with_capacity(capacity);
        alive.insert_range(0..n);
        let mut state = Self {
            original_order: n,
            rows,
            degree: (0..n).map(|v| g.degree(v)).collect(),
            alive,
            buckets: DegreeBuckets::default(),
            trace: Vec::new(),
            touched: Vec::new(),
            scratch_closed: FixedBitSet::with_capacity(capacity),
            scratch_count: vec![0; capacity],
            exact_kernel_order: None,
        };
        for v in 0..n {
            state.bucket(v);
        }
        state
    }

    pub fn original_order(&self) -> usize {
        self.original_order
    }

    pub fn is_alive(&self, v: usize) -> bool {
        self.alive.contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degree[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.rows.len() && self.rows[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.rows[v].ones()
    }

    pub fn buckets(&self) -> &DegreeBuckets {
        &self.buckets
    }

    pub fn trace_entries(&self) -> &[TraceEntry] {
        &self.trace
    }

    /// Live vertices with at least one edge.
    pub fn kernel_order(&self) -> usize {
        (1..4).map(|c| self.buckets.members(c).len()).sum()
    }

    fn check_alive(&self, v: usize) -> Result<()> {
        if v < self.rows.len() && self.alive.contains(v) {
            Ok(())
        } else {
            Err(Error::Logic(format!("vertex {v} is not alive")))
        }
    }

    /// Puts a live vertex into its degree class. Entering `V_=0` is final:
    /// the vertex joins the independent set.
    fn bucket(&mut self, v: usize) {
        let class = DegreeBuckets::class_of_degree(self.degree[v]);
        if class == 0 && self.buckets.class(v) != Some(0) {
            self.trace.push(TraceEntry::Include(v));
        }
        self.buckets.move_to(v, class);
    }

    fn push_placeholder(&mut self) -> usize {
        let id = self.rows.len();
        let needed = id + 1;
        if needed > self.alive.len() {
            let capacity = needed * 2;
            for row in &mut self.rows {
                row.grow(capacity);
            }
            self.alive.grow(capacity);
            self.scratch_closed.grow(capacity);
            self.scratch_count.resize(capacity, 0);
        }
        let capacity = self.alive.len();
        self.rows.push(FixedBitSet::with_capacity(capacity));
        self.degree.push(0);
        id
    }

    fn add_edge(&mut self, u: usize, v: usize) {
        if u != v && !self.rows[u].contains(v) {
            self.rows[u].insert(v);
            self.rows[v].insert(u);
            self.degree[u] += 1;
            self.degree[v] += 1;
            self.touched.push(u);
            self.touched.push(v);
            self.bucket(u);
            self.bucket(v);
        }
    }

    /// Removes `set` without recording decisions for it; the caller records
    /// whatever entry explains the removal. Neighbours left without edges
    /// join the independent set.
    fn remove_silently(&mut self, set: &[usize]) {
        for &v in set {
            self.alive.set(v, false);
            self.buckets.remove(v);
        }
        for &v in set {
            let row = core::mem::take(&mut self.rows[v]);
            for u in row.ones() {
                self.rows[u].set(v, false);
                self.degree[u] -= 1;
                if self.alive.contains(u) {
                    self.touched.push(u);
                    self.bucket(u);
                }
            }
            self.degree[v] = 0;
        }
    }

    /// Deletes `v` and its edges; `v` stays out of the lifted set.
    pub fn delete_vertex(&mut self, v: usize) -> Result<()> {
        self.check_alive(v)?;
        self.trace.push(TraceEntry::Exclude(v));
        self.remove_silently(&[v]);
        self.audit_in_debug();
        Ok(())
    }

    /// Merges `v` into `w`: `w` gains `N(v) \ {w}` and `v` disappears. A
    /// structural primitive that records nothing in the trace.
    pub fn contract(&mut self, v: usize, w: usize) -> Result<()> {
        self.check_alive(v)?;
        self.check_alive(w)?;
        if v == w {
            return Err(Error::Logic(format!("cannot contract vertex {v} into itself")));
        }
        let incoming: Vec<usize> = self.rows[v].ones().filter(|&u| u != w).collect();
        for u in incoming {
            self.add_edge(w, u);
        }
        self.remove_silently(&[v]);
        // w may have lost its only edge
        self.bucket(w);
        self.audit_in_debug();
        Ok(())
    }

    /// New vertex adjacent to `neighbors`, created before the vertices it
    /// replaces are removed so nothing is isolated in between.
    fn create_placeholder(&mut self, neighbors: &[usize], replaced: &[usize]) -> usize {
        let x = self.push_placeholder();
        self.alive.insert(x);
        self.buckets.ensure(x);
        for &u in neighbors {
            self.rows[x].insert(u);
            self.rows[u].insert(x);
            self.degree[u] += 1;
            self.touched.push(u);
            self.bucket(u);
        }
        self.degree[x] = neighbors.len();
        self.touched.push(x);
        self.remove_silently(replaced);
        self.bucket(x);
        x
    }

    /// Union of the neighbourhoods of `set`, minus `set`.
    fn outer_neighborhood(&self, set: &[usize]) -> Vec<usize> {
        let mut union = FixedBitSet::with_capacity(self.alive.len());
        for &v in set {
            union.union_with(&self.rows[v]);
        }
        for &v in set {
            union.set(v, false);
        }
        union.ones().collect()
    }

    /// Folds a degree-two vertex with non-adjacent neighbours. Returns
    /// whether the rule applied.
    pub fn vertex_fold(&mut self, v: usize) -> Result<bool> {
        self.check_alive(v)?;
        if self.degree[v] != 2 {
            return Ok(false);
        }
        let mut it = self.rows[v].ones();
        let (u, w) = (it.next().unwrap_or(v), it.next().unwrap_or(v));
        if self.has_edge(u, w) {
            return Ok(false);
        }
        self.fold(v, u, w);
        self.audit_in_debug();
        Ok(true)
    }

    fn fold(&mut self, v: usize, u: usize, w: usize) -> usize {
        let placeholder = self.rows.len();
        self.trace.push(TraceEntry::Fold { placeholder, center: v, left: u, right: w });
        let outer = self.outer_neighborhood(&[v, u, w]);
        self.create_placeholder(&outer, &[v, u, w])
    }

    fn other_neighbor(&self, v: usize, not: usize) -> usize {
        self.rows[v].ones().find(|&u| u != not).unwrap_or(not)
    }

    /// The linear-time degree-two rule at `u`.
    pub fn degree_two_reduction(&mut self, u: usize) -> Result<()> {
        self.check_alive(u)?;
        if self.degree[u] != 2 {
            return Err(Error::Logic(format!("vertex {u} has degree {}, not 2", self.degree[u])));
        }
        let mut ends = self.rows[u].ones();
        let (a, b) = (ends.next().unwrap_or(u), ends.next().unwrap_or(u));

        // walk from u towards a, then towards b
        let mut left = Vec::new();
        let (mut prev, mut cur) = (u, a);
        let mut cycle = false;
        while self.degree[cur] == 2 {
            if cur == u {
                cycle = true;
                break;
            }
            left.push(cur);
            let next = self.other_neighbor(cur, prev);
            prev = cur;
            cur = next;
        }
        if cycle {
            let mut path = vec![u];
            path.extend(left.iter().copied().filter(|&x| x != u));
            self.trace.push(TraceEntry::Path { case: PathCase::Cycle, path, endpoints: None });
            self.delete_vertex(u)?;
            return Ok(());
        }
        let v = cur;
        let mut right = Vec::new();
        let (mut prev, mut cur) = (u, b);
        while self.degree[cur] == 2 {
            right.push(cur);
            let next = self.other_neighbor(cur, prev);
            prev = cur;
            cur = next;
        }
        let w = cur;
        let mut path: Vec<usize> = left.into_iter().rev().collect();
        path.push(u);
        path.extend(right);
        let l = path.len();

        if v == w {
            self.trace.push(TraceEntry::Path { case: PathCase::SameEndpoint, path, endpoints: Some((v, w)) });
            self.delete_vertex(v)?;
        } else if l % 2 == 1 {
            if self.has_edge(v, w) {
                self.trace.push(TraceEntry::Path { case: PathCase::OddWithEdge, path, endpoints: Some((v, w)) });
                self.delete_vertex(v)?;
                self.delete_vertex(w)?;
            } else if l == 1 {
                // Re-adding (v1, w) would change nothing; fold instead.
                self.fold(path[0], v, w);
            } else {
                self.trace.push(TraceEntry::Path {
                    case: PathCase::OddWithoutEdge,
                    path: path.clone(),
                    endpoints: Some((v, w)),
                });
                self.add_edge(path[0], w);
                for i in (1..l).rev() {
                    let after = if i + 1 < l { path[i + 1] } else { w };
                    self.trace.push(TraceEntry::StackPush { vertex: path[i], neighbors: [path[i - 1], after] });
                }
                self.remove_silently(&path[1..]);
            }
        } else {
            let case = if self.has_edge(v, w) { PathCase::EvenWithEdge } else { PathCase::EvenWithoutEdge };
            self.trace.push(TraceEntry::Path { case, path: path.clone(), endpoints: Some((v, w)) });
            self.add_edge(v, w);
            for i in (0..l).rev() {
                let before = if i == 0 { v } else { path[i - 1] };
                let after = if i + 1 < l { path[i + 1] } else { w };
                self.trace.push(TraceEntry::StackPush { vertex: path[i], neighbors: [before, after] });
            }
            self.remove_silently(&path);
        }
        self.audit_in_debug();
        Ok(())
    }

    /// Deletes the neighbour of a degree-one vertex.
    fn degree_one_reduction(&mut self, v: usize) -> Result<()> {
        let u = self.rows[v].minimum().ok_or_else(|| Error::Logic(format!("vertex {v} has no neighbour")))?;
        self.delete_vertex(u)
    }

    /// Deletes a vertex of maximum degree (smallest id on ties).
    fn inexact_reduction(&mut self) -> Result<bool> {
        let best = self
            .buckets
            .members(3)
            .iter()
            .chain(self.buckets.members(2))
            .chain(self.buckets.members(1))
            .copied()
            .max_by_key(|&v| (self.degree[v], core::cmp::Reverse(v)));
        if best.is_some() && self.exact_kernel_order.is_none() {
            self.exact_kernel_order = Some(self.alive.ones().filter(|&v| self.degree[v] > 0).count());
        }
        match best {
            Some(v) => self.delete_vertex(v).map(|()| true),
            None => Ok(false),
        }
    }

    /// `|N(u) \ closed|`, stopping at `cap`.
    fn outside_count(&self, u: usize, cap: usize) -> usize {
        let mut count = 0;
        for (r, c) in self.rows[u].as_slice().iter().zip(self.scratch_closed.as_slice()) {
            count += (r & !c).count_ones() as usize;
            if count >= cap {
                return cap;
            }
        }
        count
    }

    fn first_outside(&self, u: usize) -> Option<usize> {
        self.rows[u].ones().find(|&y| !self.scratch_closed.contains(y))
    }

    /// Grows `S = {v}` while some `u` in `N(S)` with a single neighbour in
    /// `S` has exactly one neighbour outside `N[S]`. Among candidates the
    /// one with the fewest outside neighbours is taken.
    pub fn confinement(&mut self, v: usize) -> Result<Confinement> {
        self.check_alive(v)?;
        // First step with S = {v} straight off the rows. |N(u) \ N[v]| is at
        // least deg(u) - deg(v), which skips most candidates unread.
        let mut may_grow = false;
        for u in self.rows[v].ones() {
            if self.degree[u] > self.degree[v] + 1 {
                continue;
            }
            // v itself is the one neighbour of u missing from row v
            let mut outside = 0;
            for (r, c) in self.rows[u].as_slice().iter().zip(self.rows[v].as_slice()) {
                outside += (r & !c).count_ones();
                if outside > 2 {
                    break;
                }
            }
            match outside {
                1 => return Ok(Confinement::Unconfined),
                2 => may_grow = true,
                _ => {}
            }
        }
        if !may_grow {
            return Ok(Confinement::Confined { set: vec![v] });
        }
        let mut set = vec![v];
        let mut frontier: Vec<usize> = Vec::new();
        self.scratch_closed.insert(v);
        for u in self.rows[v].ones() {
            self.scratch_closed.insert(u);
            self.scratch_count[u] = 1;
            frontier.push(u);
        }
        let result = loop {
            let mut grow = None;
            let mut unconfined = false;
            for &u in &frontier {
                if self.scratch_count[u] != 1 {
                    continue;
                }
                match self.outside_count(u, 2) {
                    0 => {
                        unconfined = true;
                        break;
                    }
                    1 if grow.is_none() => grow = Some(u),
                    _ => {}
                }
            }
            if unconfined {
                break Confinement::Unconfined;
            }
            let Some(u) = grow else {
                break Confinement::Confined { set: set.clone() };
            };
            let w = self.first_outside(u).unwrap_or(u);
            set.push(w);
            self.scratch_closed.insert(w);
            for y in self.rows[w].ones() {
                if !self.scratch_closed.put(y) {
                    frontier.push(y);
                }
                self.scratch_count[y] += 1;
            }
        };
        for &u in frontier.iter().chain(&set) {
            self.scratch_closed.set(u, false);
            self.scratch_count[u] = 0;
        }
        Ok(result)
    }

    /// Deletes `v` if it is unconfined. Returns whether the rule applied.
    pub fn unconfined_reduce(&mut self, v: usize) -> Result<bool> {
        match self.confinement(v)? {
            Confinement::Unconfined => {
                self.delete_vertex(v)?;
                Ok(true)
            }
            Confinement::Confined { .. } => Ok(false),
        }
    }

    /// For a confined `v` with final set `S`: deletes `v` when two
    /// non-adjacent `u1, u2` in `N(S)` satisfy
    /// `N(u1) \ N(S) = N(u2) \ N(S) = {s1, s2}`.
    pub fn diamond_reduce(&mut self, v: usize) -> Result<bool> {
        let Confinement::Confined { set } = self.confinement(v)? else {
            return Ok(false);
        };
        if set.len() < 2 {
            return Ok(false);
        }
        let mut in_set = FixedBitSet::with_capacity(self.alive.len());
        let mut open = FixedBitSet::with_capacity(self.alive.len());
        for &s in &set {
            in_set.insert(s);
            open.union_with(&self.rows[s]);
        }
        // (s1, s2, u) for u whose neighbours outside N(S) are exactly two
        // vertices of S
        let mut keyed: Vec<(usize, usize, usize)> = Vec::new();
        for u in open.ones() {
            let mut outside = self.rows[u].difference(&open);
            let (Some(s1), Some(s2), None) = (outside.next(), outside.next(), outside.next()) else {
                continue;
            };
            if in_set.contains(s1) && in_set.contains(s2) {
                keyed.push((s1, s2, u));
            }
        }
        keyed.sort_unstable();
        let found = keyed.chunk_by(|a, b| (a.0, a.1) == (b.0, b.1)).any(|group| {
            group.iter().enumerate().any(|(i, a)| group[i + 1..].iter().any(|b| !self.has_edge(a.2, b.2)))
        });
        if found {
            self.delete_vertex(v)?;
        }
        Ok(found)
    }

    /// Twin rule for degree-three `u` and `v` with `N(u) = N(v)`. Returns
    /// whether it applied.
    pub fn twin_reduce(&mut self, u: usize, v: usize) -> Result<bool> {
        self.check_alive(u)?;
        self.check_alive(v)?;
        if u == v || self.degree[u] != 3 || self.degree[v] != 3 || self.has_edge(u, v) || self.rows[u] != self.rows[v] {
            return Ok(false);
        }
        let nb: Vec<usize> = self.rows[u].ones().collect();
        let [a, b, c] = [nb[0], nb[1], nb[2]];
        if self.has_edge(a, b) || self.has_edge(a, c) || self.has_edge(b, c) {
            // u and v become isolated and are included
            for x in [a, b, c] {
                self.delete_vertex(x)?;
            }
        } else {
            let placeholder = self.rows.len();
            self.trace.push(TraceEntry::Twin { placeholder, first: u, second: v, neighborhood: [a, b, c] });
            let outer = self.outer_neighborhood(&[u, v, a, b, c]);
            self.create_placeholder(&outer, &[u, v, a, b, c]);
        }
        self.audit_in_debug();
        Ok(true)
    }

    /// A twin of the degree-three vertex `u`, if any.
    fn find_twin(&self, u: usize) -> Option<usize> {
        if self.degree[u] != 3 {
            return None;
        }
        let a = self.rows[u].ones().min_by_key(|&x| self.degree[x])?;
        self.rows[a].ones().find(|&v| v != u && self.degree[v] == 3 && self.rows[v] == self.rows[u])
    }

    /// Checks rows, degrees, liveness and buckets against each other.
    pub fn audit(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::Logic(format!("reduction state audit: {what}")));
        for v in 0..self.rows.len() {
            let alive = self.alive.contains(v);
            let d = self.rows[v].count_ones(..);
            if d != self.degree[v] {
                return bad(&format!("degree cache of {v} is {} but row has {d}", self.degree[v]));
            }
            for u in self.rows[v].ones() {
                if u == v || !self.rows[u].contains(v) || !alive || !self.alive.contains(u) {
                    return bad(&format!("edge ({v}, {u}) is asymmetric or touches a dead vertex"));
                }
            }
            let class = self.buckets.class(v);
            match (alive, class) {
                (false, None) => {}
                (true, Some(c)) if c == DegreeBuckets::class_of_degree(d) => {}
                _ => return bad(&format!("vertex {v} has class {class:?} with degree {d}, alive {alive}")),
            }
        }
        Ok(())
    }

    fn audit_in_debug(&self) {
        #[cfg(debug_assertions)]
        if self.rows.len() <= 200 {
            if let Err(e) = self.audit() {
                panic!("{e}");
            }
        }
    }

    /// One step of the linear-time loop without the inexact branch.
    fn linear_time_step(&mut self) -> Result<bool> {
        if let Some(&v) = self.buckets.members(1).last() {
            self.degree_one_reduction(v)?;
            return Ok(true);
        }
        if let Some(&u) = self.buckets.members(2).last() {
            self.degree_two_reduction(u)?;
            return Ok(true);
        }
        Ok(false)
    }

    /// Freezes the current graph into a kernel.
    pub fn finish(self) -> Result<(VertexSet, KernelResult)> {
        let name_map: Vec<usize> =
            (0..self.rows.len()).filter(|&v| self.alive.contains(v) && self.degree[v] > 0).collect();
        let mut index = vec![usize::MAX; self.rows.len()];
        for (k, &v) in name_map.iter().enumerate() {
            index[v] = k;
        }
        let adj: Vec<Vec<usize>> = name_map.iter().map(|&v| self.rows[v].ones().map(|u| index[u]).collect()).collect();
        let kernel = Graph::from_sorted_adjacency(adj);
        let trace = ReductionTrace { original_order: self.original_order, entries: self.trace };
        let forced = trace.replay(&[])?;
        let exact_kernel_order = self.exact_kernel_order.unwrap_or(kernel.order());
        let result = KernelResult { kernel, trace, name_map, forced_count: forced.len(), exact_kernel_order };
        Ok((forced, result))
    }
}

/// Worklist of vertices to re-examine for one expensive rule.
struct Worklist {
    queue: VecDeque<usize>,
    queued: FixedBitSet,
}

impl Worklist {
    fn new(capacity: usize) -> Self {
        Self { queue: VecDeque::new(), queued: FixedBitSet::with_capacity(capacity) }
    }

    fn push(&mut self, v: usize) {
        if v >= self.queued.len() {
            self.queued.grow(v + 1);
        }
        if !self.queued.put(v) {
            self.queue.push_back(v);
        }
    }

    fn pop(&mut self) -> Option<usize> {
        while let Some(v) = self.queue.pop_front() {
            // entries dropped by `remove` stay queued but are skipped here
            if self.queued.contains(v) {
                self.queued.set(v, false);
                return Some(v);
            }
        }
        None
    }

    fn remove(&mut self, v: usize) {
        if v < self.queued.len() {
            self.queued.set(v, false);
        }
    }
}

struct Engine {
    state: ReductionState,
    rules: RuleSet,
    twin: Worklist,
    unconfined: Worklist,
    diamond: Worklist,
}

impl Engine {
    fn new(g: &Graph, rules: RuleSet) -> Self {
        let state = ReductionState::new(g);
        let cap = state.alive.len();
        let mut engine = Self {
            state,
            rules,
            twin: Worklist::new(cap),
            unconfined: Worklist::new(cap),
            diamond: Worklist::new(cap),
        };
        engine.enqueue_all();
        engine
    }

    fn enqueue_all(&mut self) {
        if self.rules == RuleSet::LinearTime {
            return;
        }
        for v in self.state.alive.ones() {
            if self.state.degree[v] > 0 {
                self.twin.push(v);
                self.unconfined.push(v);
                self.diamond.push(v);
            }
        }
    }

    /// Queues everything within two hops of a changed vertex.
    fn absorb_touched(&mut self) {
        let touched = core::mem::take(&mut self.state.touched);
        if self.rules == RuleSet::LinearTime {
            return;
        }
        let mut region = FixedBitSet::with_capacity(self.state.alive.len());
        for &t in &touched {
            if t < self.state.rows.len() {
                region.insert(t);
                region.union_with(&self.state.rows[t]);
            }
        }
        let first: Vec<usize> = region.ones().collect();
        for u in first {
            let row = &self.state.rows[u];
            region.union_with(row);
        }
        region.intersect_with(&self.state.alive);
        for v in region.ones() {
            if self.state.degree[v] > 0 {
                self.twin.push(v);
                self.unconfined.push(v);
                self.diamond.push(v);
            }
        }
    }

    fn usable(&self, v: usize) -> bool {
        self.state.alive.contains(v) && self.state.degree[v] > 0
    }

    /// Applies the highest-priority rule that fires. Returns whether any did.
    fn fire_one(&mut self) -> Result<bool> {
        if self.state.linear_time_step()? {
            return Ok(true);
        }
        if self.rules == RuleSet::LinearTime {
            return Ok(false);
        }
        let twos: Vec<usize> = self.state.buckets.members(2).to_vec();
        for v in twos {
            if self.state.vertex_fold(v)? {
                return Ok(true);
            }
        }
        while let Some(u) = self.twin.pop() {
            if self.usable(u) {
                if let Some(v) = self.state.find_twin(u) {
                    self.state.twin_reduce(u, v)?;
                    return Ok(true);
                }
            }
        }
        while let Some(v) = self.unconfined.pop() {
            if !self.usable(v) {
                continue;
            }
            match self.state.confinement(v)? {
                Confinement::Unconfined => {
                    self.state.delete_vertex(v)?;
                    return Ok(true);
                }
                // nothing has changed since, and a diamond needs |S| >= 2
                Confinement::Confined { set } if set.len() < 2 => self.diamond.remove(v),
                Confinement::Confined { .. } => {}
            }
        }
        while let Some(v) = self.diamond.pop() {
            if self.usable(v) && self.state.diamond_reduce(v)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn run(&mut self, allow_inexact: bool) -> Result<()> {
        loop {
            if self.fire_one()? {
                self.absorb_touched();
                continue;
            }
            if !allow_inexact && self.rules == RuleSet::All {
                // Confinement can reach beyond two hops; confirm the fixpoint.
                self.enqueue_all();
                if self.fire_one()? {
                    self.absorb_touched();
                    continue;
                }
            }
            if allow_inexact && self.state.inexact_reduction()? {
                self.absorb_touched();
                continue;
            }
            return Ok(());
        }
    }
}

/// Greedily adds vertices of `g`, in id order, that have no neighbour in
/// `set`.
fn extend_to_maximal(g: &Graph, set: VertexSet) -> VertexSet {
    let mut member = FixedBitSet::with_capacity(g.order());
    for v in set.iter() {
        member.insert(v);
    }
    for v in 0..g.order() {
        if !member.contains(v) && g.neighbors(v).iter().all(|&u| !member.contains(u)) {
            member.insert(v);
        }
    }
    member.ones().collect()
}

/// Exhaustive reduction with `rules`.
///
/// With `allow_inexact` the highest-degree vertex is deleted whenever no
/// rule fires, so the kernel ends empty and the returned set is a maximal
/// independent set of `g`. Without it the loop stops at the first point
/// where nothing fires and the returned set is the part decided by the
/// trace alone.
pub fn reduce(g: &Graph, rules: RuleSet, allow_inexact: bool) -> Result<(VertexSet, KernelResult)> {
    let mut engine = Engine::new(g, rules);
    engine.run(allow_inexact)?;
    let (forced, result) = engine.state.finish()?;
    if allow_inexact {
        return Ok((extend_to_maximal(g, forced), result));
    }
    Ok((forced, result))
}

/// The linear-time algorithm: degree-one and degree-two rules, with the
/// inexact branch as the fallback when `allow_inexact` is set.
pub fn linear_time(g: &Graph, allow_inexact: bool) -> Result<(VertexSet, KernelResult)> {
    reduce(g, RuleSet::LinearTime, allow_inexact)
}

/// All five rule families in priority order, rescanning from the top after
/// each firing.
pub fn reduce_full(g: &Graph, allow_inexact: bool) -> Result<(VertexSet, KernelResult)> {
    reduce(g, RuleSet::All, allow_inexact)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::erdos_renyi;
    use crate::oracle::{is_independent, mis_exact, OracleBudget};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn mis_size(g: &Graph) -> usize {
        mis_exact(g, OracleBudget::default()).unwrap().len()
    }

    /// Kernel MIS by the oracle, lifted back.
    fn lifted_optimum(g: &Graph, rules: RuleSet) -> VertexSet {
        let (_, kr) = reduce(g, rules, false).unwrap();
        let kmis = mis_exact(&kr.kernel, OracleBudget::default()).unwrap();
        let lifted = kr.reconstruct_mis(&kmis).unwrap();
        assert_eq!(lifted.len(), kmis.len() + kr.forced_count);
        assert!(is_independent(g, &lifted));
        lifted
    }

    fn random_tree(n: usize, rng: &mut ChaCha8Rng) -> Graph {
        let edges: Vec<_> = (1..n).map(|v| (rng.random_range(0..v), v)).collect();
        Graph::new(n, &edges).unwrap()
    }

    #[test]
    fn linear_time_examples() {
        let (mis, kr) = linear_time(&Graph::path(5), true).unwrap();
        assert_eq!(mis.len(), 3);
        assert!(is_independent(&Graph::path(5), &mis));
        assert_eq!(kr.kernel.order(), 0);

        let (mis, _) = linear_time(&Graph::cycle(4), true).unwrap();
        assert_eq!(mis.len(), mis_size(&Graph::cycle(4)));

        let k4 = Graph::complete(4);
        let (mis, kr) = linear_time(&k4, false).unwrap();
        assert!(mis.is_empty());
        assert_eq!(kr.kernel, k4);
        assert!(kr.trace.entries.is_empty());
    }

    #[test]
    fn linear_time_leaves_no_low_degree_vertex() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for seed in 0..200 {
            let n = rng.random_range(1..30);
            let p = rng.random_range(0.05..0.6);
            let g = erdos_renyi(n, p, seed).unwrap();
            let (_, kr) = linear_time(&g, false).unwrap();
            assert!((0..kr.kernel.order()).all(|v| kr.kernel.degree(v) >= 3), "seed {seed}");
        }
    }

    #[test]
    fn delete_and_contract_examples() {
        let star = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let mut s = ReductionState::new(&star);
        s.delete_vertex(0).unwrap();
        let mut zero = s.buckets().members(0).to_vec();
        zero.sort_unstable();
        assert_eq!(zero, [1, 2, 3]);

        let mut s = ReductionState::new(&Graph::complete(2));
        s.contract(0, 1).unwrap();
        assert!(!s.is_alive(0));
        assert_eq!(s.degree(1), 0);
        assert_eq!(s.buckets().class(1), Some(0));

        let mut s = ReductionState::new(&Graph::complete(4));
        assert_eq!(s.buckets().members(3).len(), 4);
        s.delete_vertex(0).unwrap();
        assert_eq!(s.buckets().members(2).len(), 3);
        assert!(s.delete_vertex(0).is_err());
        s.audit().unwrap();
    }

    #[test]
    fn degree_two_examples() {
        // cycle: one vertex deleted
        let mut s = ReductionState::new(&Graph::cycle(4));
        s.degree_two_reduction(0).unwrap();
        assert!(matches!(s.trace_entries()[0], TraceEntry::Path { case: PathCase::Cycle, .. }));
        assert_eq!(s.trace_entries()[1], TraceEntry::Exclude(0));
        assert_eq!((0..4).filter(|&v| s.is_alive(v)).count(), 3);

        // P3 interior: a single odd vertex between non-adjacent ends
        let p3 = Graph::path(3);
        let mut s = ReductionState::new(&p3);
        s.degree_two_reduction(1).unwrap();
        assert!(!s.trace_entries().iter().any(|e| matches!(e, TraceEntry::StackPush { .. })));
        let (_, kr) = s.finish().unwrap();
        let kmis = mis_exact(&kr.kernel, OracleBudget::default()).unwrap();
        assert_eq!(kr.reconstruct_mis(&kmis).unwrap().len(), 2);

        // two degree-two vertices between adjacent v = 0 and w = 3, both
        // of which have a pendant-free extra neighbour
        let g = Graph::new(6, &[(0, 1), (1, 2), (2, 3), (0, 3), (0, 4), (3, 5), (4, 5), (0, 5), (3, 4)]).unwrap();
        let mut s = ReductionState::new(&g);
        s.degree_two_reduction(1).unwrap();
        let pushes: Vec<usize> = s
            .trace_entries()
            .iter()
            .filter_map(|e| match e {
                TraceEntry::StackPush { vertex, .. } => Some(*vertex),
                _ => None,
            })
            .collect();
        assert_eq!(pushes, [2, 1]);
        assert!(matches!(s.trace_entries()[0], TraceEntry::Path { case: PathCase::EvenWithEdge, .. }));
        let (_, kr) = s.finish().unwrap();
        let kmis = mis_exact(&kr.kernel, OracleBudget::default()).unwrap();
        let lifted = kr.reconstruct_mis(&kmis).unwrap();
        assert!(is_independent(&g, &lifted));
        assert_eq!(lifted.len(), mis_size(&g));

        let mut s = ReductionState::new(&Graph::complete(4));
        assert!(matches!(s.degree_two_reduction(0), Err(Error::Logic(_))));
    }

    #[test]
    fn fold_examples() {
        let mut s = ReductionState::new(&Graph::path(3));
        assert!(s.vertex_fold(1).unwrap());
        let (_, kr) = s.finish().unwrap();
        // the placeholder is isolated, so the trace already includes it
        assert_eq!(kr.kernel.order(), 0);
        assert_eq!(kr.reconstruct_mis(&VertexSet::new()).unwrap(), [0, 2].into());

        let c4 = Graph::cycle(4);
        let mut s = ReductionState::new(&c4);
        assert!(s.vertex_fold(1).unwrap());
        let (_, kr) = s.finish().unwrap();
        assert_eq!(kr.kernel, Graph::complete(2));
        let lifted = kr.reconstruct_mis(&[0].into()).unwrap();
        assert_eq!(lifted.len(), 2);
        assert!(is_independent(&c4, &lifted));

        let mut s = ReductionState::new(&Graph::complete(3));
        assert!(!s.vertex_fold(0).unwrap());
    }

    #[test]
    fn unconfined_examples() {
        let mut s = ReductionState::new(&Graph::complete(3));
        assert!(s.unconfined_reduce(0).unwrap());
        assert!(s.unconfined_reduce(1).unwrap());
        let (forced, kr) = s.finish().unwrap();
        assert_eq!(kr.kernel.order(), 0);
        assert_eq!(forced.len(), 1);

        let mut s = ReductionState::new(&Graph::empty(1));
        assert!(!s.unconfined_reduce(0).unwrap());

        let mut s = ReductionState::new(&Graph::complete(2));
        assert_eq!(s.confinement(0).unwrap(), Confinement::Unconfined);
    }

    #[test]
    fn diamond_examples() {
        // v = 0 and s = 1 both adjacent to 2, 3, 4; 2 also reaches 5
        let g = Graph::new(6, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 5)]).unwrap();
        let mut s = ReductionState::new(&g);
        assert_eq!(s.confinement(0).unwrap(), Confinement::Confined { set: vec![0, 1] });
        assert!(s.diamond_reduce(0).unwrap());
        let (_, kr) = s.finish().unwrap();
        let kmis = mis_exact(&kr.kernel, OracleBudget::default()).unwrap();
        let lifted = kr.reconstruct_mis(&kmis).unwrap();
        assert_eq!(lifted.len(), mis_size(&g));

        let mut s = ReductionState::new(&Graph::complete(2));
        assert!(!s.diamond_reduce(0).unwrap());
    }

    #[test]
    fn diamond_preserves_mis_on_random_graphs() {
        for seed in 0..100 {
            let g = erdos_renyi(10, 0.3, seed).unwrap();
            for v in 0..g.order() {
                let mut s = ReductionState::new(&g);
                if s.diamond_reduce(v).unwrap() {
                    let (_, kr) = s.finish().unwrap();
                    let kmis = mis_exact(&kr.kernel, OracleBudget::default()).unwrap();
                    assert_eq!(kr.reconstruct_mis(&kmis).unwrap().len(), mis_size(&g), "seed {seed} v {v}");
                }
            }
        }
    }

    #[test]
    fn twin_examples() {
        // {u, v} = {0, 1} against {a, b, c} = {2, 3, 4}
        let bip = [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)];
        let mut with_edge = bip.to_vec();
        with_edge.push((2, 3));
        let g = Graph::new(5, &with_edge).unwrap();
        let mut s = ReductionState::new(&g);
        assert!(s.twin_reduce(0, 1).unwrap());
        let (forced, kr) = s.finish().unwrap();
        assert_eq!(kr.kernel.order(), 0);
        assert_eq!(forced, [0, 1].into());
        assert_eq!(forced.len(), mis_size(&g));

        let g = Graph::new(5, &bip).unwrap();
        let mut s = ReductionState::new(&g);
        assert!(s.twin_reduce(0, 1).unwrap());
        let (forced, kr) = s.finish().unwrap();
        assert_eq!(kr.kernel.order(), 0);
        assert_eq!(forced, [2, 3, 4].into());
        assert_eq!(forced.len(), mis_size(&g));

        let g = Graph::new(6, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 5)]).unwrap();
        let mut s = ReductionState::new(&g);
        assert!(!s.twin_reduce(0, 1).unwrap());
    }

    #[test]
    fn twin_contraction_with_outside_neighbours() {
        let g =
            Graph::new(8, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 5), (3, 6), (4, 7), (5, 6)]).unwrap();
        let mut s = ReductionState::new(&g);
        assert!(s.twin_reduce(0, 1).unwrap());
        let (_, kr) = s.finish().unwrap();
        for kmis in [mis_exact(&kr.kernel, OracleBudget::default()).unwrap(), VertexSet::new()] {
            let lifted = kr.reconstruct_mis(&kmis).unwrap();
            assert!(is_independent(&g, &lifted));
            assert_eq!(lifted.len(), kmis.len() + kr.forced_count);
        }
    }

    #[test]
    fn reduce_full_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let n = rng.random_range(1..25);
            let tree = random_tree(n, &mut rng);
            let (forced, kr) = reduce_full(&tree, false).unwrap();
            assert_eq!(kr.kernel.order(), 0);
            assert_eq!(forced.len(), mis_size(&tree));
            assert!(is_independent(&tree, &forced));
        }
        let k5 = Graph::complete(5);
        let (_, kr) = reduce(&k5, RuleSet::LinearTime, false).unwrap();
        assert_eq!(kr.kernel, k5);
    }

    #[test]
    fn reduce_full_is_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for seed in 0..300 {
            let n = rng.random_range(1..=14);
            let p = rng.random_range(0.1..=0.9);
            let g = erdos_renyi(n, p, seed).unwrap();
            for rules in [RuleSet::LinearTime, RuleSet::All] {
                assert_eq!(lifted_optimum(&g, rules).len(), mis_size(&g), "seed {seed} {rules:?}");
            }
        }
    }

    #[test]
    fn inexact_gives_maximal_independent_sets() {
        for seed in 0..100 {
            let g = erdos_renyi(20, 0.3, seed).unwrap();
            for rules in [RuleSet::LinearTime, RuleSet::All] {
                let (mis, kr) = reduce(&g, rules, true).unwrap();
                assert_eq!(kr.kernel.order(), 0);
                assert!(is_independent(&g, &mis));
                assert!((0..g.order()).all(|v| mis.contains(v) || g.neighbors(v).iter().any(|&u| mis.contains(u))));
            }
        }
    }

    #[test]
    fn reconstruct_examples() {
        let g = Graph::complete(4);
        let (_, kr) = linear_time(&g, false).unwrap();
        assert_eq!(kr.reconstruct_mis(&[2].into()).unwrap(), [2].into());
        assert!(matches!(kr.reconstruct_mis(&[0, 1].into()), Err(Error::Contract(_))));
        assert!(matches!(kr.reconstruct_mis(&[9].into()), Err(Error::Contract(_))));

        let c4 = Graph::cycle(4);
        let (mis, kr) = reduce_full(&c4, false).unwrap();
        assert_eq!(kr.kernel.order(), 0);
        assert_eq!(mis.len(), 2);
        assert!(is_independent(&c4, &mis));
    }

    #[test]
    fn deterministic() {
        for seed in 0..20 {
            let g = erdos_renyi(30, 0.2, seed).unwrap();
            assert_eq!(reduce_full(&g, true).unwrap(), reduce_full(&g, true).unwrap());
        }
    }

    #[test]
    fn path_case_names_round_trip() {
        for case in [
            PathCase::Cycle,
            PathCase::SameEndpoint,
            PathCase::OddWithEdge,
            PathCase::OddWithoutEdge,
            PathCase::EvenWithEdge,
            PathCase::EvenWithoutEdge,
        ] {
            assert_eq!(PathCase::from_name(case.name()), Some(case));
        }
        assert_eq!(PathCase::from_name("spiral"), None);
    }
}
