//! Graph enumeration: all labelled graphs by pair bitmask, and one
//! representative per isomorphism class for small orders.

use std::collections::HashMap;

use crate::graph::Graph;
use crate::iso::{find_isomorphism, MAX_ISO_ORDER};

/// Largest order for [`nonisomorphic_graphs`].
pub const MAX_CLASS_ORDER: usize = 8;

/// Number of vertex pairs, i.e. the bit width of a labelled-graph mask.
pub fn pair_count(n: usize) -> u32 {
    (n * n.saturating_sub(1) / 2) as u32
}

type Signature = (usize, Vec<(usize, usize, Vec<usize>)>);

/// Isomorphism-invariant fingerprint: edge count and the sorted multiset of
/// (degree, triangles through v, sorted neighbor degrees).
fn signature(g: &Graph) -> Signature {
    let deg = g.degrees();
    let mut verts: Vec<(usize, usize, Vec<usize>)> = (0..g.order())
        .map(|v| {
            let nb = g.neighbors(v);
            let tri = nb.iter().map(|w| g.neighbors(w).intersection(nb).len()).sum::<usize>() / 2;
            let mut nd: Vec<usize> = nb.iter().map(|w| deg[w]).collect();
            nd.sort_unstable();
            (deg[v], tri, nd)
        })
        .collect();
    verts.sort();
    (g.edge_count(), verts)
}

/// One graph per isomorphism class on `n` vertices, built by adding a vertex
/// to each class on `n − 1` vertices in every possible way and discarding
/// repeats. Output order is deterministic.
pub fn nonisomorphic_graphs(n: usize) -> Vec<Graph> {
    assert!(
        n <= MAX_CLASS_ORDER.min(MAX_ISO_ORDER),
        "class enumeration limited to n <= {MAX_CLASS_ORDER}"
    );
    let mut classes = vec![Graph::empty(0)];
    for order in 1..=n {
        let mut buckets: HashMap<Signature, Vec<usize>> = HashMap::new();
        let mut next: Vec<Graph> = Vec::new();
        for base in &classes {
            for nbrs in 0u64..(1u64 << (order - 1)) {
                let mut rows: Vec<u64> = base.rows().to_vec();
                for (v, row) in rows.iter_mut().enumerate() {
                    if nbrs >> v & 1 == 1 {
                        *row |= 1 << (order - 1);
                    }
                }
                rows.push(nbrs);
                let g = Graph::from_rows(rows);
                let bucket = buckets.entry(signature(&g)).or_default();
                if bucket.iter().any(|&i| find_isomorphism(&next[i], &g).is_some()) {
                    continue;
                }
                bucket.push(next.len());
                next.push(g);
            }
        }
        classes = next;
    }
    classes
}

pub fn connected_nonisomorphic_graphs(n: usize) -> Vec<Graph> {
    nonisomorphic_graphs(n)
        .into_iter()
        .filter(|g| g.is_connected().unwrap_or(false))
        .collect()
}
