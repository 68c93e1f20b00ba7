//! Total k-excess of spanning trees.
//!
//! `te(T, k) = Σ_v max(0, d_T(v) − k)`; a spanning tree with `te = 0` is a
//! spanning k-tree. Minimisation comes in three flavours that are
//! cross-checked in tests: an exact branch-and-bound ([`min_total_excess_exact`]),
//! an exhaustive Prüfer enumeration ([`prufer_oracle_min_excess`]) and a
//! local-search upper bound ([`min_total_excess_heuristic`]).

mod exact;
mod heuristic;
mod prufer;
mod win;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, GraphError};

pub use exact::{has_bounded_excess_tree, min_total_excess_exact, MAX_EXACT_ORDER};
pub use heuristic::min_total_excess_heuristic;
pub use prufer::{prufer_decode, prufer_oracle_min_excess, MAX_PRUFER_ORDER};
pub use win::{win_condition_report, win_condition_worst_violator, WinReport, WinViolation, MAX_WIN_ORDER};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExcessError {
    #[error("graph is not connected")]
    Disconnected,
    #[error("order {n} exceeds {what} scope (max {max}){hint}")]
    Scope {
        n: usize,
        max: usize,
        what: &'static str,
        hint: &'static str,
    },
    #[error("invalid degree bound k = {0}")]
    InvalidK(usize),
    #[error("not a spanning tree of the host graph: {0}")]
    InvalidTree(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn require_connected(g: &Graph) -> Result<(), ExcessError> {
    if g.is_connected()? {
        Ok(())
    } else {
        Err(ExcessError::Disconnected)
    }
}

/// A spanning tree of some host graph, as a sorted edge list with a parent
/// array rooted at vertex 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpanningTree {
    edges: Vec<(usize, usize)>,
    #[serde(skip)]
    parent: Vec<Option<usize>>,
    #[serde(skip)]
    degrees: Vec<usize>,
}

impl SpanningTree {
    /// Validates that `edges` form a spanning tree of `host`.
    pub fn new(host: &Graph, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, ExcessError> {
        let n = host.order();
        let mut edges: Vec<(usize, usize)> = edges.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
        edges.sort_unstable();
        if n == 0 {
            return Err(ExcessError::InvalidTree("empty host".into()));
        }
        if edges.len() != n - 1 {
            return Err(ExcessError::InvalidTree(format!(
                "{} edges for {} vertices",
                edges.len(),
                n
            )));
        }
        let mut tree = Graph::empty(n);
        for &(u, v) in &edges {
            if u >= n || v >= n || u == v || !host.has_edge(u, v) {
                return Err(ExcessError::InvalidTree(format!("({u}, {v}) is not a host edge")));
            }
            if tree.has_edge(u, v) {
                return Err(ExcessError::InvalidTree(format!("({u}, {v}) repeated")));
            }
            tree.add_edge(u, v);
        }
        if !tree.is_connected()? {
            return Err(ExcessError::InvalidTree("edges do not span the host".into()));
        }

        let mut parent = vec![None; n];
        let mut seen = 1u64;
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(u) = queue.pop_front() {
            for v in tree.neighbors(u) {
                if seen >> v & 1 == 0 {
                    seen |= 1 << v;
                    parent[v] = Some(u);
                    queue.push_back(v);
                }
            }
        }
        Ok(SpanningTree {
            edges,
            parent,
            degrees: tree.degrees(),
        })
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn parent(&self) -> &[Option<usize>] {
        &self.parent
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn order(&self) -> usize {
        self.degrees.len()
    }
}

/// `te(T, k)`.
pub fn total_excess(tree: &SpanningTree, k: usize) -> usize {
    excess_of_degrees(tree.degrees(), k)
}

pub(crate) fn excess_of_degrees(degrees: &[usize], k: usize) -> usize {
    degrees.iter().map(|&d| d.saturating_sub(k)).sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exact,
    Heuristic,
    Oracle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExcessResult {
    pub value: usize,
    pub witness: SpanningTree,
    pub method: Method,
    pub nodes: u64,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (0..n - 1).map(|i| (i, i + 1))).unwrap()
    }

    #[test]
    fn total_excess_examples() {
        let p5 = path(5);
        let t = SpanningTree::new(&p5, p5.edges()).unwrap();
        assert_eq!(total_excess(&t, 2), 0);

        let star = Graph::complete(1).join(&Graph::empty(6));
        let t = SpanningTree::new(&star, star.edges()).unwrap();
        assert_eq!(total_excess(&t, 5), 1);
        assert_eq!(t.parent()[3], Some(0));

        // double star: centres 0 and 1, each with three leaves
        let ds = Graph::from_edges(8, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 5), (1, 6), (1, 7)]).unwrap();
        let t = SpanningTree::new(&ds, ds.edges()).unwrap();
        assert_eq!(total_excess(&t, 3), 2);
    }

    #[test]
    fn tree_validation() {
        let k4 = Graph::complete(4);
        assert!(SpanningTree::new(&k4, [(0, 1), (1, 2)]).is_err());
        assert!(SpanningTree::new(&k4, [(0, 1), (1, 0), (2, 3)]).is_err());
        assert!(SpanningTree::new(&k4, [(0, 1), (0, 2), (1, 2)]).is_err());
        assert!(SpanningTree::new(&path(4), [(0, 1), (1, 2), (0, 3)]).is_err());
        let t = SpanningTree::new(&k4, [(3, 2), (1, 0), (2, 0)]).unwrap();
        assert_eq!(t.edges(), &[(0, 1), (0, 2), (2, 3)]);
        assert_eq!(t.degrees(), &[2, 1, 2, 1]);
    }
}
