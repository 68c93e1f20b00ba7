//! Simple undirected graphs on at most 64 vertices.
//!
//! Adjacency is kept as one `u64` bitmask per vertex, so vertex sets, neighbor
//! queries and component searches are all word operations. Vertex indices are
//! dense (`0..n`); [`Graph::join`] and [`Graph::disjoint_union`] place the
//! first operand's vertices first.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported order.
pub const MAX_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("order {n} exceeds the supported maximum of {max}")]
    OrderTooLarge { n: usize, max: usize },
    #[error("vertex {v} out of range for order {n}")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("empty residual graph")]
    EmptyResidual,
    #[error("graph has no vertices")]
    EmptyGraph,
}

/// A set of vertices, stored as a bitmask over `0..64`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// All vertices `0..n`.
    pub fn full(n: usize) -> Self {
        VertexSet(low_mask(n))
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(vertices: I) -> Self {
        VertexSet(vertices.into_iter().fold(0u64, |m, v| m | (1u64 << v)))
    }

    /// The contiguous block `start..end`.
    pub fn range(start: usize, end: usize) -> Self {
        VertexSet(low_mask(end) & !low_mask(start))
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
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

    /// Smallest member, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::from_vertices(iter)
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexIter;

    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

/// Ascending iterator over the members of a [`VertexSet`].
#[derive(Clone, Debug)]
pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for VertexIter {}

#[inline]
fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Undirected simple graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    ///
    /// Panics if `n > MAX_ORDER`; use [`Graph::try_empty`] for untrusted input.
    pub fn empty(n: usize) -> Self {
        Self::try_empty(n).expect("graph order")
    }

    pub fn try_empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_ORDER {
            return Err(GraphError::OrderTooLarge { n, max: MAX_ORDER });
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::try_empty(n)?;
        for (u, v) in edges {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from the packed upper-triangle bitmask used by the
    /// exhaustive enumerator: bit `idx` corresponds to the `idx`-th pair in
    /// `(0,1), (0,2), (1,2), (0,3), ...` (column-major, as in graph6).
    /// Pairs past the 64th are left out.
    pub fn from_pair_mask(n: usize, mask: u64) -> Self {
        let mut g = Self::empty(n);
        let mut idx = 0;
        for j in 1..n {
            for i in 0..j {
                if mask.checked_shr(idx).unwrap_or(0) & 1 == 1 {
                    g.add_edge(i, j);
                }
                idx += 1;
            }
        }
        g
    }

    /// Builds a graph directly from adjacency rows. Rows must be symmetric
    /// with a zero diagonal; only checked in debug builds.
    pub fn from_rows(rows: Vec<u64>) -> Self {
        let g = Graph {
            n: rows.len(),
            adj: rows,
        };
        debug_assert!(g.check_invariants());
        g
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.try_add_edge(u, v).expect("edge endpoints")
    }

    pub fn try_add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        for w in [u, v] {
            if w >= self.n {
                return Err(GraphError::VertexOutOfRange { v: w, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::Loop(u));
        }
        self.adj[u] |= 1u64 << v;
        self.adj[v] |= 1u64 << u;
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !(1u64 << v);
        self.adj[v] &= !(1u64 << u);
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            let higher = self.adj[u] & !low_mask(u + 1);
            out.extend(VertexSet(higher).iter().map(|v| (u, v)));
        }
        out
    }

    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    /// Dense row-major 0/1 adjacency matrix.
    pub fn adjacency_matrix(&self) -> Vec<f64> {
        let n = self.n;
        let mut m = vec![0.0; n * n];
        for u in 0..n {
            for v in self.neighbors(u) {
                m[u * n + v] = 1.0;
            }
        }
        m
    }

    pub fn is_regular(&self) -> bool {
        let d = self.degrees();
        d.windows(2).all(|w| w[0] == w[1])
    }

    /// Complete graph `K_m`.
    pub fn complete(m: usize) -> Self {
        let full = low_mask(m);
        Graph::from_rows((0..m).map(|v| full & !(1u64 << v)).collect())
    }

    /// `G1 ∪ G2`: vertices of `self` first, then `other` shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Self {
        assert!(self.n + other.n <= MAX_ORDER, "union order exceeds {MAX_ORDER}");
        let shift = self.n;
        let mut rows = self.adj.clone();
        rows.extend(other.adj.iter().map(|r| r << shift));
        Graph::from_rows(rows)
    }

    /// `m` disjoint copies of `self`.
    pub fn copies(&self, m: usize) -> Self {
        (0..m).fold(Graph::empty(0), |acc, _| acc.disjoint_union(self))
    }

    /// `G1 ∨ G2`: the disjoint union plus every cross edge.
    pub fn join(&self, other: &Graph) -> Self {
        let mut g = self.disjoint_union(other);
        let left = VertexSet::range(0, self.n).0;
        let right = VertexSet::range(self.n, self.n + other.n).0;
        for v in 0..self.n {
            g.adj[v] |= right;
        }
        for v in self.n..g.n {
            g.adj[v] |= left;
        }
        g
    }

    /// Relabels so that vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        let mut rows = vec![0u64; self.n];
        for u in 0..self.n {
            rows[perm[u]] = self.neighbors(u).iter().fold(0u64, |m, v| m | 1u64 << perm[v]);
        }
        Graph::from_rows(rows)
    }

    /// Induced subgraph on `keep`, relabelled densely in ascending order.
    pub fn induced(&self, keep: VertexSet) -> Self {
        let verts = keep.intersection(self.vertices()).to_vec();
        let mut index = [usize::MAX; 64];
        for (i, &v) in verts.iter().enumerate() {
            index[v] = i;
        }
        let rows = verts
            .iter()
            .map(|&v| {
                VertexSet(self.adj[v] & keep.0)
                    .iter()
                    .fold(0u64, |m, w| m | 1u64 << index[w])
            })
            .collect();
        Graph::from_rows(rows)
    }

    /// Vertices reachable from `start` without entering `blocked`.
    pub fn reach(&self, start: usize, allowed: VertexSet) -> VertexSet {
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u64;
            for v in VertexSet(frontier) {
                next |= self.adj[v];
            }
            next &= allowed.0 & !seen;
            seen |= next;
            frontier = next;
        }
        VertexSet(seen)
    }

    /// Connected components of the subgraph induced by `within`, ordered by
    /// smallest vertex.
    pub fn components_within(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut rest = within;
        let mut out = Vec::new();
        while let Some(v) = rest.first() {
            let comp = self.reach(v, within);
            rest = rest.difference(comp);
            out.push(comp);
        }
        out
    }

    /// Number of components of the subgraph induced by `within`.
    #[inline]
    pub fn count_components_within(&self, within: VertexSet) -> usize {
        let mut rest = within.0;
        let mut count = 0;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= !self.reach(v, within).0;
            count += 1;
        }
        count
    }

    /// `c(G − S)` together with the component vertex sets of `G − S`.
    ///
    /// `S = ∅` is allowed. `S = V(G)` is an error since nothing remains.
    pub fn components_after_deletion(&self, removed: VertexSet) -> Result<(usize, Vec<VertexSet>), GraphError> {
        if let Some(v) = removed.difference(self.vertices()).first() {
            return Err(GraphError::VertexOutOfRange { v, n: self.n });
        }
        let rest = self.vertices().difference(removed);
        if rest.is_empty() {
            return Err(GraphError::EmptyResidual);
        }
        let comps = self.components_within(rest);
        Ok((comps.len(), comps))
    }

    pub fn is_connected(&self) -> Result<bool, GraphError> {
        if self.n == 0 {
            return Err(GraphError::EmptyGraph);
        }
        Ok(self.reach(0, self.vertices()) == self.vertices())
    }

    /// True if every edge of `self` is an edge of `host` (same vertex labels).
    pub fn is_spanning_subgraph_of(&self, host: &Graph) -> bool {
        self.n == host.n && self.adj.iter().zip(&host.adj).all(|(a, h)| a & !h == 0)
    }

    fn check_invariants(&self) -> bool {
        let full = low_mask(self.n);
        self.n <= MAX_ORDER
            && (0..self.n).all(|u| {
                self.adj[u] & !full == 0
                    && !self.has_edge(u, u)
                    && self.neighbors(u).iter().all(|v| self.has_edge(v, u))
            })
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star(leaves: usize) -> Graph {
        Graph::complete(1).join(&Graph::empty(leaves))
    }

    #[test]
    fn complete_graph_examples() {
        let k1 = Graph::complete(1);
        assert_eq!((k1.order(), k1.edge_count()), (1, 0));
        assert_eq!(Graph::complete(3).edge_count(), 3);
        let k7 = Graph::complete(7);
        assert_eq!(k7.edge_count(), 21);
        assert!(k7.degrees().iter().all(|&d| d == 6));
        assert_eq!(Graph::complete(0).order(), 0);
    }

    #[test]
    fn union_examples() {
        let k1 = Graph::complete(1);
        let two = k1.disjoint_union(&k1);
        assert_eq!((two.order(), two.edge_count()), (2, 0));

        let g = Graph::complete(2).disjoint_union(&Graph::complete(3));
        assert_eq!((g.order(), g.edge_count()), (5, 4));
        assert_eq!(g.components_after_deletion(VertexSet::EMPTY).unwrap().0, 2);

        let five = k1.copies(5);
        assert_eq!((five.order(), five.edge_count()), (5, 0));
        assert_eq!(five, Graph::empty(5));
    }

    #[test]
    fn join_examples() {
        let s = star(6);
        assert_eq!(s.order(), 7);
        assert_eq!(s.degree(0), 6);
        assert_eq!(s.edge_count(), 6);
        assert_eq!(Graph::complete(2).join(&Graph::complete(2)), Graph::complete(4));
    }

    #[test]
    fn components_after_deletion_examples() {
        let s = star(6);
        let (c, comps) = s.components_after_deletion(VertexSet::singleton(0)).unwrap();
        assert_eq!(c, 6);
        assert!(comps.iter().all(|comp| comp.len() == 1));

        let k7 = Graph::complete(7);
        let (c, _) = k7
            .components_after_deletion(VertexSet::from_vertices([1, 3, 5]))
            .unwrap();
        assert_eq!(c, 1);

        // K_1 ∨ (K_2 ∪ 6K_1)
        let g = Graph::complete(1).join(&Graph::complete(2).disjoint_union(&Graph::empty(6)));
        assert_eq!(g.order(), 9);
        let (c, comps) = g.components_after_deletion(VertexSet::singleton(0)).unwrap();
        assert_eq!(c, 7);
        assert_eq!(comps[0], VertexSet::from_vertices([1, 2]));
    }

    #[test]
    fn deleting_everything_is_an_error() {
        let g = Graph::complete(3);
        assert_eq!(
            g.components_after_deletion(VertexSet::full(3)),
            Err(GraphError::EmptyResidual)
        );
        assert!(matches!(
            g.components_after_deletion(VertexSet::singleton(5)),
            Err(GraphError::VertexOutOfRange { v: 5, n: 3 })
        ));
    }

    #[test]
    fn connectivity_examples() {
        assert!(Graph::complete(7).is_connected().unwrap());
        assert!(!Graph::complete(2)
            .disjoint_union(&Graph::complete(3))
            .is_connected()
            .unwrap());
        assert!(Graph::empty(3).join(&Graph::empty(2)).is_connected().unwrap());
        assert_eq!(Graph::empty(0).is_connected(), Err(GraphError::EmptyGraph));
    }

    #[test]
    fn pair_mask_is_column_major() {
        // bit 0 = (0,1), bit 1 = (0,2), bit 2 = (1,2)
        let g = Graph::from_pair_mask(3, 0b100);
        assert_eq!(g.edges(), vec![(1, 2)]);
        assert_eq!(Graph::from_pair_mask(4, 0b111111), Graph::complete(4));
    }

    #[test]
    fn induced_and_relabel() {
        let g = star(4);
        let h = g.induced(VertexSet::from_vertices([0, 2, 3]));
        assert_eq!(h.edges(), vec![(0, 1), (0, 2)]);
        let r = g.relabel(&[4, 0, 1, 2, 3]);
        assert_eq!(r.degree(4), 4);
        assert_eq!(r.edge_count(), 4);
    }

    #[test]
    fn rejects_bad_edges() {
        let mut g = Graph::empty(3);
        assert_eq!(g.try_add_edge(1, 1), Err(GraphError::Loop(1)));
        assert!(g.try_add_edge(0, 3).is_err());
        assert!(Graph::try_empty(65).is_err());
    }
}
