//! Small simple undirected graphs on at most 64 vertices.
//!
//! A neighborhood is a single `u64`, so most set operations are one or two
//! machine instructions.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 64;

/// A set of vertex indices, stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        VertexSet(low_mask(n))
    }

    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | (1u64 << v))
    }

    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << v))
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> Bits {
        Bits(self.0)
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(it: I) -> Self {
        it.into_iter().fold(VertexSet::EMPTY, |s, v| s.with(v))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Iterator over set bits of a word, lowest first.
#[derive(Clone, Copy, Debug)]
pub struct Bits(pub u64);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let v = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(v)
        }
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Bits {}

#[inline]
pub(crate) fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Simple undirected graph with adjacency stored as per-vertex bitsets.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl Graph {
    /// Edgeless graph `E_n`.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::CapacityExceeded(n));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from raw adjacency words, checking symmetry and range.
    pub fn from_adjacency(adj: Vec<u64>) -> Result<Self> {
        let n = adj.len();
        if n > MAX_VERTICES {
            return Err(Error::CapacityExceeded(n));
        }
        let mask = low_mask(n);
        for (v, &row) in adj.iter().enumerate() {
            if row & !mask != 0 {
                let bad = (row & !mask).trailing_zeros() as usize;
                return Err(Error::InvalidVertex { vertex: bad, n });
            }
            if row >> v & 1 == 1 {
                return Err(Error::LoopRejected(v));
            }
            for u in Bits(row) {
                if adj[u] >> v & 1 == 0 {
                    return Err(Error::InvalidParameters(format!("asymmetric adjacency between {v} and {u}")));
                }
            }
        }
        Ok(Graph { n, adj })
    }

    pub(crate) fn from_adjacency_unchecked(adj: Vec<u64>) -> Self {
        Graph { n: adj.len(), adj }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n {
            return Err(Error::InvalidVertex { vertex: u, n: self.n });
        }
        if v >= self.n {
            return Err(Error::InvalidVertex { vertex: v, n: self.n });
        }
        if u == v {
            return Err(Error::LoopRejected(u));
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        if u < self.n && v < self.n {
            self.adj[u] &= !(1 << v);
            self.adj[v] &= !(1 << u);
        }
    }

    /// Flips the pair `{u, v}`. Panics on out-of-range or equal endpoints.
    pub fn toggle_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n && u != v);
        self.adj[u] ^= 1 << v;
        self.adj[v] ^= 1 << u;
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        let all = low_mask(n);
        for v in 0..n {
            g.adj[v] = all & !(1 << v);
        }
        Ok(g)
    }

    /// Path `P_n` on `n` vertices.
    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges)
    }

    /// Cycle `C_n` on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameters(format!("cycle needs >= 3 vertices, got {n}")));
        }
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((n - 1, 0));
        Graph::from_edges(n, &edges)
    }

    /// Star `S_n` on `n` vertices (center 0, `n - 1` leaves).
    pub fn star(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
        Graph::from_edges(n, &edges)
    }

    /// `M_{2t}`: `t` independent edges.
    pub fn matching(t: usize) -> Result<Self> {
        let edges: Vec<_> = (0..t).map(|i| (2 * i, 2 * i + 1)).collect();
        Graph::from_edges(2 * t, &edges)
    }

    /// Complete multipartite graph with the given part sizes.
    pub fn complete_multipartite(parts: &[usize]) -> Result<Self> {
        let n: usize = parts.iter().sum();
        let mut g = Graph::empty(n)?;
        let all = low_mask(n);
        let mut start = 0;
        for &size in parts {
            let part = low_mask(size) << start;
            for v in start..start + size {
                g.adj[v] = all & !part;
            }
            start += size;
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    #[inline]
    pub(crate) fn row(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub(crate) fn rows(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u] >> v & 1 == 1
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).min().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in Bits(self.adj[u] >> u >> 1) {
                out.push((u, u + 1 + v));
            }
        }
        out
    }

    pub fn isolated_vertices(&self) -> VertexSet {
        VertexSet::from_iter((0..self.n).filter(|&v| self.adj[v] == 0))
    }

    /// `G ∪ H`, with the vertices of `H` shifted after those of `G`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(Error::CapacityExceeded(n));
        }
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|&r| r << self.n));
        Ok(Graph { n, adj })
    }

    /// `G + H`: the disjoint union plus every edge between the two sides.
    pub fn join(&self, other: &Graph) -> Result<Graph> {
        let mut g = self.disjoint_union(other)?;
        let left = low_mask(self.n);
        let right = low_mask(other.n) << self.n;
        for v in 0..self.n {
            g.adj[v] |= right;
        }
        for v in self.n..g.n {
            g.adj[v] |= left;
        }
        Ok(g)
    }

    /// `G[S]`, relabeled `0..|S|` in increasing vertex order. Isolated
    /// vertices of `S` are kept.
    pub fn induced_subgraph(&self, s: VertexSet) -> Result<Graph> {
        if !s.is_subset(self.vertices()) {
            let bad = s.difference(self.vertices()).iter().next().unwrap_or(0);
            return Err(Error::InvalidVertex { vertex: bad, n: self.n });
        }
        let verts: Vec<usize> = s.iter().collect();
        let mut adj = vec![0u64; verts.len()];
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate() {
                if self.adj[u] >> v & 1 == 1 {
                    adj[i] |= 1 << j;
                }
            }
        }
        Ok(Graph { n: verts.len(), adj })
    }

    /// `G` with every vertex outside `keep` deleted.
    pub fn remove_vertices(&self, drop: VertexSet) -> Result<Graph> {
        self.induced_subgraph(self.vertices().difference(drop))
    }

    /// Relabels so that vertex `v` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut adj = vec![0u64; self.n];
        for u in 0..self.n {
            let mut row = 0u64;
            for v in Bits(self.adj[u]) {
                row |= 1 << perm[v];
            }
            adj[perm[u]] = row;
        }
        Graph { n: self.n, adj }
    }

    pub fn complement(&self) -> Graph {
        let all = low_mask(self.n);
        let adj = (0..self.n).map(|v| all & !self.adj[v] & !(1 << v)).collect();
        Graph { n: self.n, adj }
    }

    /// Vertex sets of the connected components, ordered by smallest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen >> s & 1 == 1 {
                continue;
            }
            let mut comp = 1u64 << s;
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0u64;
                for v in Bits(frontier) {
                    next |= self.adj[v];
                }
                frontier = next & !comp;
                comp |= next;
            }
            seen |= comp;
            out.push(VertexSet(comp));
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// A proper 2-coloring as `(side0, side1)`, or `None` if there is an odd
    /// cycle. Within each component the smallest vertex is on side 0.
    pub fn bipartition(&self) -> Option<(VertexSet, VertexSet)> {
        let mut side0 = 0u64;
        let mut side1 = 0u64;
        for comp in self.components() {
            let start = comp.iter().next().unwrap();
            let mut a = 1u64 << start;
            let mut b = 0u64;
            let mut frontier = a;
            let mut on_a = true;
            while frontier != 0 {
                let mut next = 0u64;
                for v in Bits(frontier) {
                    next |= self.adj[v];
                }
                if on_a {
                    if next & a != 0 {
                        return None;
                    }
                    next &= !b;
                    b |= next;
                } else {
                    if next & b != 0 {
                        return None;
                    }
                    next &= !a;
                    a |= next;
                }
                frontier = next;
                on_a = !on_a;
            }
            side0 |= a;
            side1 |= b;
        }
        Some((VertexSet(side0), VertexSet(side1)))
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    pub fn is_independent(&self, s: VertexSet) -> bool {
        s.iter().all(|v| self.adj[v] & s.0 == 0)
    }

    pub fn is_vertex_cover(&self, s: VertexSet) -> bool {
        let rest = self.vertices().difference(s);
        self.is_independent(rest)
    }
}
