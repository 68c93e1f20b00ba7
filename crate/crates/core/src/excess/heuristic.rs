//! Edge-swap local search; an upper bound on the minimum total excess.

use std::collections::VecDeque;

use super::{excess_of_degrees, require_connected, ExcessError, ExcessResult, Method, SpanningTree};
use crate::graph::Graph;

fn bfs_tree(g: &Graph, root: usize) -> Vec<(usize, usize)> {
    let mut seen = 1u64 << root;
    let mut queue = VecDeque::from([root]);
    let mut edges = Vec::with_capacity(g.order().saturating_sub(1));
    while let Some(u) = queue.pop_front() {
        for v in g.neighbors(u) {
            if seen >> v & 1 == 0 {
                seen |= 1 << v;
                edges.push((u.min(v), u.max(v)));
                queue.push_back(v);
            }
        }
    }
    edges
}

/// Tree edges on the path between `a` and `b`.
fn tree_path(tree: &Graph, a: usize, b: usize) -> Vec<(usize, usize)> {
    let n = tree.order();
    let mut prev = vec![usize::MAX; n];
    prev[a] = a;
    let mut queue = VecDeque::from([a]);
    while let Some(u) = queue.pop_front() {
        if u == b {
            break;
        }
        for v in tree.neighbors(u) {
            if prev[v] == usize::MAX {
                prev[v] = u;
                queue.push_back(v);
            }
        }
    }
    let mut path = Vec::new();
    let mut cur = b;
    while cur != a {
        let p = prev[cur];
        path.push((p.min(cur), p.max(cur)));
        cur = p;
    }
    path
}

fn local_search(g: &Graph, k: usize, start: Vec<(usize, usize)>) -> (Graph, usize) {
    let n = g.order();
    let mut tree = Graph::from_edges(n, start).expect("tree edges lie in host");
    let mut deg = tree.degrees();
    let mut excess = excess_of_degrees(&deg, k);
    'improve: while excess > 0 {
        for (u, v) in g.edges() {
            if tree.has_edge(u, v) {
                continue;
            }
            for (x, y) in tree_path(&tree, u, v) {
                deg[u] += 1;
                deg[v] += 1;
                deg[x] -= 1;
                deg[y] -= 1;
                let candidate = excess_of_degrees(&deg, k);
                if candidate < excess {
                    tree.remove_edge(x, y);
                    tree.add_edge(u, v);
                    excess = candidate;
                    continue 'improve;
                }
                deg[u] -= 1;
                deg[v] -= 1;
                deg[x] += 1;
                deg[y] += 1;
            }
        }
        break;
    }
    (tree, excess)
}

/// Best local optimum over `restarts` BFS starting trees, rooted at
/// vertices `0, 1, 2, ...` in turn.
pub fn min_total_excess_heuristic(g: &Graph, k: usize, restarts: usize) -> Result<ExcessResult, ExcessError> {
    require_connected(g)?;
    let n = g.order();
    let mut best: Option<(usize, Graph)> = None;
    let mut nodes = 0u64;
    for r in 0..restarts.max(1) {
        let (tree, excess) = local_search(g, k, bfs_tree(g, r % n));
        nodes += 1;
        if best.as_ref().is_none_or(|(b, _)| excess < *b) {
            best = Some((excess, tree));
        }
        if excess == 0 {
            break;
        }
    }
    let (value, tree) = best.expect("at least one restart");
    Ok(ExcessResult {
        value,
        witness: SpanningTree::new(g, tree.edges())?,
        method: Method::Heuristic,
        nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::excess::total_excess;

    #[test]
    fn heuristic_examples() {
        let star = Graph::complete(1).join(&Graph::empty(6));
        let r = min_total_excess_heuristic(&star, 5, 3).unwrap();
        assert_eq!(r.value, 1);
        assert_eq!(r.method, Method::Heuristic);

        // BFS from 0 in K_7 is a star; swaps must reach a spanning 2-tree
        let r = min_total_excess_heuristic(&Graph::complete(7), 2, 1).unwrap();
        assert_eq!(r.value, 0);
        assert_eq!(total_excess(&r.witness, 2), 0);
    }

    #[test]
    fn path_path_case() {
        let p = Graph::from_edges(6, (0..5).map(|i| (i, i + 1))).unwrap();
        assert_eq!(min_total_excess_heuristic(&p, 2, 1).unwrap().value, 0);
    }
}
