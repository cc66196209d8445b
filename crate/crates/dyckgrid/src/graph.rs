//! Simple undirected graphs on dense vertex ids.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};

/// A simple undirected graph on vertices `0..n`.
///
/// Edges are stored as sorted pairs `(u, v)` with `u < v`, in sorted order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

/// A set of vertices, kept sorted.
pub type VertexSet = BTreeSet<usize>;

/// Pairwise disjoint non-empty vertex sets.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Partition {
    pub parts: Vec<VertexSet>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph, rejecting loops, duplicates and out-of-range endpoints.
    pub fn from_edge_list(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for &(u, v) in pairs {
            if u >= n || v >= n {
                return Err(Error::EndpointOutOfRange { u, v, n });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::DuplicateEdge(u, v));
            }
        }
        Ok(Self::from_sorted_set(n, seen))
    }

    /// Builds a graph, silently dropping loops and merging duplicates.
    pub fn from_edges_lossy(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let set: BTreeSet<_> = pairs
            .into_iter()
            .filter(|&(u, v)| u != v)
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect();
        assert!(
            set.iter().all(|&(_, v)| v < n),
            "edge endpoint out of range"
        );
        Self::from_sorted_set(n, set)
    }

    fn from_sorted_set(n: usize, set: BTreeSet<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &set {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Graph {
            n,
            edges: set.into_iter().collect(),
            adj,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: usize) -> Self {
        let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::from_edges_lossy(n, pairs)
    }

    /// Path on `n` vertices.
    pub fn path(n: usize) -> Self {
        Self::from_edges_lossy(n, (1..n).map(|v| (v - 1, v)))
    }

    /// Cycle on `n ≥ 3` vertices.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        Self::from_edges_lossy(n, (0..n).map(|v| (v, (v + 1) % n)))
    }

    /// The `(rows × cols)` grid, vertex `(r, c)` numbered `r * cols + c`.
    pub fn grid(rows: usize, cols: usize) -> Self {
        let mut e = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                let v = r * cols + c;
                if c + 1 < cols {
                    e.push((v, v + 1));
                }
                if r + 1 < rows {
                    e.push((v, v + cols));
                }
            }
        }
        Self::from_edges_lossy(rows * cols, e)
    }

    /// Adds edges, ignoring ones already present.
    pub fn with_edges(&self, extra: impl IntoIterator<Item = (usize, usize)>) -> Self {
        Self::from_edges_lossy(self.n, self.edges.iter().copied().chain(extra))
    }

    /// Removes the given edges if present.
    pub fn without_edges(&self, drop: &[(usize, usize)]) -> Self {
        let drop: BTreeSet<_> = drop.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        Self::from_edges_lossy(
            self.n,
            self.edges.iter().copied().filter(|e| !drop.contains(e)),
        )
    }

    /// Deletes `del` and renumbers the rest in increasing order.
    ///
    /// Returns the new graph and the map from old ids to new ids
    /// (`None` for deleted vertices).
    pub fn delete_vertices(&self, del: &VertexSet) -> (Graph, Vec<Option<usize>>) {
        let mut map = vec![None; self.n];
        let mut next = 0;
        for (v, slot) in map.iter_mut().enumerate() {
            if !del.contains(&v) {
                *slot = Some(next);
                next += 1;
            }
        }
        let e = self
            .edges
            .iter()
            .filter_map(|&(u, v)| Some((map[u]?, map[v]?)));
        (Self::from_edges_lossy(next, e), map)
    }

    /// Subgraph induced by `keep`, renumbered in increasing order.
    pub fn induced(&self, keep: &VertexSet) -> (Graph, Vec<Option<usize>>) {
        let del: VertexSet = (0..self.n).filter(|v| !keep.contains(v)).collect();
        self.delete_vertices(&del)
    }

    /// Whether `set` induces a connected subgraph. The empty set is not connected.
    pub fn is_connected_set(&self, set: &VertexSet) -> bool {
        let Some(&start) = set.iter().next() else {
            return false;
        };
        self.reach_within(start, |v| set.contains(&v)).len() == set.len()
    }

    /// Vertices reachable from `start` through vertices satisfying `allowed`.
    pub fn reach_within(&self, start: usize, allowed: impl Fn(usize) -> bool) -> VertexSet {
        let mut seen = VertexSet::new();
        if !allowed(start) {
            return seen;
        }
        seen.insert(start);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if allowed(w) && seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.reach_within(0, |_| true).len() == self.n
    }

    /// Connected components, sorted by minimum vertex.
    pub fn connected_components(&self) -> Partition {
        self.components_avoiding(&VertexSet::new())
    }

    /// Components of `G - removed`, sorted by minimum vertex.
    pub fn components_avoiding(&self, removed: &VertexSet) -> Partition {
        let mut seen = vec![false; self.n];
        let mut parts = Vec::new();
        for v in 0..self.n {
            if seen[v] || removed.contains(&v) {
                continue;
            }
            let comp = self.reach_within(v, |w| !removed.contains(&w));
            for &w in &comp {
                seen[w] = true;
            }
            parts.push(comp);
        }
        Partition { parts }
    }

    /// Open neighbourhood of a set.
    pub fn neighborhood(&self, set: &VertexSet) -> VertexSet {
        set.iter()
            .flat_map(|&v| self.adj[v].iter().copied())
            .filter(|w| !set.contains(w))
            .collect()
    }

    /// Contracts each part to a vertex; uncovered vertices are deleted.
    pub fn contract_partition(&self, p: &Partition) -> Result<Graph> {
        let mut owner = vec![usize::MAX; self.n];
        for (i, part) in p.parts.iter().enumerate() {
            if !self.is_connected_set(part) {
                return Err(Error::DisconnectedPart(part.iter().copied().collect()));
            }
            for &v in part {
                if v >= self.n {
                    return Err(Error::EndpointOutOfRange { u: v, v, n: self.n });
                }
                if owner[v] != usize::MAX {
                    return Err(Error::OverlappingParts(v));
                }
                owner[v] = i;
            }
        }
        let e = self.edges.iter().filter_map(|&(u, v)| {
            let (a, b) = (owner[u], owner[v]);
            (a != usize::MAX && b != usize::MAX && a != b).then_some((a, b))
        });
        Ok(Self::from_edges_lossy(p.parts.len(), e))
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n;
        let e = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(u, v)| (u + off, v + off)));
        Self::from_edges_lossy(self.n + other.n, e)
    }

    /// Line graph; vertex `i` is the `i`-th edge in sorted order.
    pub fn line_graph(&self) -> Graph {
        let mut e = Vec::new();
        for v in 0..self.n {
            let inc: Vec<usize> = self.adj[v]
                .iter()
                .map(|&w| self.edge_index(v, w).expect("edge present"))
                .collect();
            for i in 0..inc.len() {
                for j in i + 1..inc.len() {
                    e.push((inc[i], inc[j]));
                }
            }
        }
        Self::from_edges_lossy(self.m(), e)
    }

    /// Position of edge `uv` in the sorted edge list.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    /// Adjacency as bitmasks; only valid when `n <= 64`.
    pub fn masks(&self) -> Vec<u64> {
        assert!(self.n <= 64, "bitmask view needs n <= 64");
        self.adj
            .iter()
            .map(|a| a.iter().fold(0u64, |m, &w| m | 1 << w))
            .collect()
    }
}

impl Partition {
    pub fn new(parts: Vec<VertexSet>) -> Self {
        Partition { parts }
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

/// Shorthand for building a vertex set.
pub fn vset(items: impl IntoIterator<Item = usize>) -> VertexSet {
    items.into_iter().collect()
}
