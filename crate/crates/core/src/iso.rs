//! Brute-force isomorphism for small graphs.
//!
//! Candidate images are restricted to vertices with the same degree and the
//! same multiset of neighbor degrees; the remaining search is plain
//! backtracking over partial bijections.

use thiserror::Error;

use crate::graph::Graph;

/// Largest order accepted by [`is_isomorphic`].
pub const MAX_ISO_ORDER: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("order {0} exceeds isomorphism scope (max {MAX_ISO_ORDER})")]
pub struct IsoScopeError(pub usize);

type Invariant = (usize, Vec<usize>);

fn invariants(g: &Graph) -> Vec<Invariant> {
    let deg = g.degrees();
    (0..g.order())
        .map(|v| {
            let mut nd: Vec<usize> = g.neighbors(v).iter().map(|w| deg[w]).collect();
            nd.sort_unstable();
            (deg[v], nd)
        })
        .collect()
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> Result<bool, IsoScopeError> {
    for g in [a, b] {
        if g.order() > MAX_ISO_ORDER {
            return Err(IsoScopeError(g.order()));
        }
    }
    Ok(find_isomorphism(a, b).is_some())
}

/// A bijection `map` with `a.has_edge(u, v) == b.has_edge(map[u], map[v])`.
///
/// Has no order cap of its own; callers are expected to keep inputs small.
pub fn find_isomorphism(a: &Graph, b: &Graph) -> Option<Vec<usize>> {
    let n = a.order();
    if n != b.order() || a.edge_count() != b.edge_count() {
        return None;
    }
    let inv_a = invariants(a);
    let inv_b = invariants(b);
    let mut sa = inv_a.clone();
    let mut sb = inv_b.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return None;
    }

    let candidates: Vec<u64> = (0..n)
        .map(|u| (0..n).filter(|&v| inv_a[u] == inv_b[v]).fold(0u64, |m, v| m | 1 << v))
        .collect();

    // Map the most constrained vertices first, preferring ones adjacent to
    // already-ordered vertices so adjacency checks bite early.
    let mut order = Vec::with_capacity(n);
    let mut placed = 0u64;
    while order.len() < n {
        let next = (0..n)
            .filter(|&u| placed >> u & 1 == 0)
            .min_by_key(|&u| {
                let touches = (a.neighbors(u).0 & placed).count_ones();
                (candidates[u].count_ones(), std::cmp::Reverse(touches), u)
            })
            .expect("unplaced vertex");
        placed |= 1 << next;
        order.push(next);
    }

    let mut map = vec![usize::MAX; n];
    let mut used = 0u64;
    extend(a, b, &order, &candidates, 0, &mut map, &mut used).then_some(map)
}

fn extend(
    a: &Graph,
    b: &Graph,
    order: &[usize],
    candidates: &[u64],
    depth: usize,
    map: &mut [usize],
    used: &mut u64,
) -> bool {
    let Some(&u) = order.get(depth) else {
        return true;
    };
    let mut free = candidates[u] & !*used;
    while free != 0 {
        let v = free.trailing_zeros() as usize;
        free &= free - 1;
        let consistent = order[..depth]
            .iter()
            .all(|&w| a.has_edge(u, w) == b.has_edge(v, map[w]));
        if !consistent {
            continue;
        }
        map[u] = v;
        *used |= 1 << v;
        if extend(a, b, order, candidates, depth + 1, map, used) {
            return true;
        }
        *used &= !(1 << v);
        map[u] = usize::MAX;
    }
    false
}
