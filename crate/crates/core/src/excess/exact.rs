//! Branch-and-bound over edge inclusion/exclusion.
//!
//! Edges are decided in descending order of `min(deg u, deg v)` so that
//! high-degree choices come first. The bound is the excess already forced by
//! committed tree degrees (it can only grow), and a node is dropped when the
//! committed forest plus the undecided edges no longer spans the graph.
//! Bridges of the host are committed before the search starts.

use super::{require_connected, ExcessError, ExcessResult, Method, SpanningTree};
use crate::graph::Graph;

/// Largest order accepted by the exact search.
pub const MAX_EXACT_ORDER: usize = 12;

#[derive(Clone, Copy)]
struct Forest {
    parent: [u8; MAX_EXACT_ORDER],
    degree: [u8; MAX_EXACT_ORDER],
}

impl Forest {
    fn new() -> Self {
        let mut parent = [0u8; MAX_EXACT_ORDER];
        for (i, p) in parent.iter_mut().enumerate() {
            *p = i as u8;
        }
        Forest {
            parent,
            degree: [0; MAX_EXACT_ORDER],
        }
    }

    fn find(&self, mut v: usize) -> usize {
        while self.parent[v] as usize != v {
            v = self.parent[v] as usize;
        }
        v
    }

    /// Adds `(u, v)` if it joins two trees; returns the excess increase.
    fn link(&mut self, u: usize, v: usize, k: usize) -> Option<usize> {
        let (ru, rv) = (self.find(u), self.find(v));
        if ru == rv {
            return None;
        }
        self.parent[ru] = rv as u8;
        let mut inc = 0;
        for w in [u, v] {
            self.degree[w] += 1;
            if self.degree[w] as usize > k {
                inc += 1;
            }
        }
        Some(inc)
    }
}

struct Search {
    n: usize,
    k: usize,
    /// Branching edges, in decision order.
    edges: Vec<(usize, usize)>,
    /// Prune any node whose excess is `>= best`.
    best: usize,
    best_tree: Option<Vec<(usize, usize)>>,
    stop_on_first: bool,
    nodes: u64,
}

impl Search {
    fn spans(&self, forest: &Forest, from: usize) -> bool {
        let mut f = *forest;
        let mut joins = 0;
        for &(u, v) in &self.edges[from..] {
            let (ru, rv) = (f.find(u), f.find(v));
            if ru != rv {
                f.parent[ru] = rv as u8;
                joins += 1;
            }
        }
        let roots = (0..self.n).filter(|&v| forest.find(v) == v).count();
        joins + 1 >= roots
    }

    /// Returns true when the search should stop.
    fn dfs(&mut self, idx: usize, forest: Forest, chosen: &mut Vec<(usize, usize)>, excess: usize) -> bool {
        self.nodes += 1;
        if excess >= self.best {
            return false;
        }
        if chosen.len() == self.n - 1 {
            self.best = excess;
            self.best_tree = Some(chosen.clone());
            return self.stop_on_first;
        }
        if idx == self.edges.len() || !self.spans(&forest, idx) {
            return false;
        }
        let (u, v) = self.edges[idx];
        let mut with = forest;
        if let Some(inc) = with.link(u, v, self.k) {
            chosen.push((u, v));
            let stop = self.dfs(idx + 1, with, chosen, excess + inc);
            chosen.pop();
            if stop {
                return true;
            }
        }
        self.dfs(idx + 1, forest, chosen, excess)
    }
}

fn bridges(g: &Graph) -> Vec<(usize, usize)> {
    g.edges()
        .into_iter()
        .filter(|&(u, v)| {
            let mut h = g.clone();
            h.remove_edge(u, v);
            !h.reach(u, h.vertices()).contains(v)
        })
        .collect()
}

struct Outcome {
    best: Option<(usize, Vec<(usize, usize)>)>,
    nodes: u64,
}

/// Searches for a spanning tree containing `forced`, avoiding `banned`, with
/// excess strictly below `cutoff`. With `stop_on_first` the first such tree is
/// returned, otherwise the minimum.
fn run(
    g: &Graph,
    k: usize,
    forced: &[(usize, usize)],
    banned: &[(usize, usize)],
    cutoff: usize,
    stop_on_first: bool,
) -> Outcome {
    let n = g.order();
    let mut forest = Forest::new();
    let mut chosen = Vec::with_capacity(n.saturating_sub(1));
    let mut excess = 0;
    for &(u, v) in forced {
        match forest.link(u, v, k) {
            Some(inc) => {
                excess += inc;
                chosen.push((u, v));
            }
            None => return Outcome { best: None, nodes: 0 },
        }
    }
    let deg = g.degrees();
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .filter(|e| !forced.contains(e) && !banned.contains(e))
        .collect();
    edges.sort_by_key(|&(u, v)| (std::cmp::Reverse(deg[u].min(deg[v])), u, v));

    let mut search = Search {
        n,
        k,
        edges,
        best: cutoff,
        best_tree: None,
        stop_on_first,
        nodes: 0,
    };
    search.dfs(0, forest, &mut chosen, excess);
    Outcome {
        best: search.best_tree.map(|t| (search.best, t)),
        nodes: search.nodes,
    }
}

fn check_scope(g: &Graph, k: usize) -> Result<(), ExcessError> {
    if g.order() > MAX_EXACT_ORDER {
        return Err(ExcessError::Scope {
            n: g.order(),
            max: MAX_EXACT_ORDER,
            what: "exact search",
            hint: "; use min_total_excess_heuristic",
        });
    }
    if k == 0 {
        return Err(ExcessError::InvalidK(k));
    }
    require_connected(g)
}

/// Minimum of `te(T, k)` over all spanning trees of `g`.
///
/// With `upper_bound = Some(b)` the search runs in decision mode: it stops
/// at the first tree with excess at most `b`, and if none exists the result
/// carries the true minimum. Without it the witness is the lexicographically
/// smallest edge list among optimal trees.
pub fn min_total_excess_exact(g: &Graph, k: usize, upper_bound: Option<usize>) -> Result<ExcessResult, ExcessError> {
    check_scope(g, k)?;
    let forced = bridges(g);

    if let Some(ub) = upper_bound {
        let first = run(g, k, &forced, &[], ub + 1, true);
        if let Some((value, edges)) = first.best {
            return Ok(ExcessResult {
                value,
                witness: SpanningTree::new(g, edges)?,
                method: Method::Exact,
                nodes: first.nodes,
            });
        }
        let mut full = min_total_excess_exact(g, k, None)?;
        full.nodes += first.nodes;
        return Ok(full);
    }

    let best = run(g, k, &forced, &[], usize::MAX, false);
    let mut nodes = best.nodes;
    let (value, _) = best.best.expect("connected graph has a spanning tree");

    // Canonical witness: walk edges in lexicographic order, keeping each one
    // that still admits an optimal completion.
    let mut keep: Vec<(usize, usize)> = Vec::new();
    let mut drop: Vec<(usize, usize)> = Vec::new();
    for e in g.edges() {
        if keep.len() + 1 == g.order() {
            break;
        }
        keep.push(e);
        let probe = run(g, k, &keep, &drop, value + 1, true);
        nodes += probe.nodes;
        if probe.best.is_none() {
            keep.pop();
            drop.push(e);
        }
    }
    Ok(ExcessResult {
        value,
        witness: SpanningTree::new(g, keep)?,
        method: Method::Exact,
        nodes,
    })
}

/// Whether `g` has a spanning tree `T` with `te(T, k) ≤ b`.
pub fn has_bounded_excess_tree(g: &Graph, k: usize, b: usize) -> Result<bool, ExcessError> {
    check_scope(g, k)?;
    if g.order() == 1 {
        return Ok(true);
    }
    Ok(run(g, k, &bridges(g), &[], b + 1, true).best.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::excess::total_excess;

    fn star(leaves: usize) -> Graph {
        Graph::complete(1).join(&Graph::empty(leaves))
    }

    #[test]
    fn exact_examples() {
        let r = min_total_excess_exact(&star(6), 5, None).unwrap();
        assert_eq!(r.value, 1);
        assert_eq!(r.witness.edges(), star(6).edges().as_slice());

        let r = min_total_excess_exact(&Graph::complete(7), 2, None).unwrap();
        assert_eq!(r.value, 0);
        // lexicographically smallest Hamilton path of K_7
        assert_eq!(r.witness.edges(), &[(0, 1), (0, 2), (1, 3), (2, 4), (3, 5), (4, 6)]);

        // K_1 ∨ (K_2 ∪ 6K_1)
        let g = Graph::complete(1).join(&Graph::complete(2).disjoint_union(&Graph::empty(6)));
        let r = min_total_excess_exact(&g, 5, None).unwrap();
        assert_eq!(r.value, 2);
        assert_eq!(total_excess(&r.witness, 5), 2);
    }

    #[test]
    fn decision_examples() {
        assert!(!has_bounded_excess_tree(&star(6), 5, 0).unwrap());
        assert!(has_bounded_excess_tree(&star(6), 5, 1).unwrap());
        assert!(has_bounded_excess_tree(&Graph::complete(7), 5, 0).unwrap());
        assert!(has_bounded_excess_tree(&Graph::complete(1), 1, 0).unwrap());
    }

    #[test]
    fn decision_mode_reports_true_minimum_on_failure() {
        let r = min_total_excess_exact(&star(6), 2, Some(1)).unwrap();
        assert_eq!(r.value, 4);
        let r = min_total_excess_exact(&Graph::complete(6), 1, Some(5)).unwrap();
        assert!(r.value <= 5);
        assert_eq!(total_excess(&r.witness, 1), r.value);
    }

    #[test]
    fn errors() {
        let split = Graph::complete(2).disjoint_union(&Graph::complete(2));
        assert_eq!(min_total_excess_exact(&split, 2, None), Err(ExcessError::Disconnected));
        assert!(matches!(
            min_total_excess_exact(&Graph::complete(13), 2, None),
            Err(ExcessError::Scope { n: 13, .. })
        ));
        assert_eq!(
            has_bounded_excess_tree(&Graph::complete(3), 0, 0),
            Err(ExcessError::InvalidK(0))
        );
    }

    #[test]
    fn k4_with_k1_needs_two() {
        // best tree on 4 vertices under k = 1 is a path: excess 0 + 1 + 1 + 0
        assert_eq!(min_total_excess_exact(&Graph::complete(4), 1, None).unwrap().value, 2);
    }
}
