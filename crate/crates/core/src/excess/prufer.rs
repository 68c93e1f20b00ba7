//! Exhaustive oracle over all `n^(n-2)` labelled trees.

use super::{require_connected, ExcessError};
use crate::graph::Graph;

pub const MAX_PRUFER_ORDER: usize = 8;

/// Decodes a Prüfer sequence over `0..n` (with `n = seq.len() + 2`) into the
/// edge list of its labelled tree.
pub fn prufer_decode(seq: &[usize]) -> Vec<(usize, usize)> {
    let n = seq.len() + 2;
    let mut degree = vec![1usize; n];
    for &v in seq {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &v in seq {
        let leaf = (0..n).find(|&u| degree[u] == 1).expect("a leaf exists");
        edges.push((leaf.min(v), leaf.max(v)));
        degree[leaf] -= 1;
        degree[v] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&u| degree[u] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Minimum `te(T, k)` over labelled trees whose edges all lie in `g`.
///
/// The tree's degrees are read off the sequence (`1 + occurrences`), so a
/// sequence is only decoded when it could beat the current minimum.
pub fn prufer_oracle_min_excess(g: &Graph, k: usize) -> Result<usize, ExcessError> {
    let n = g.order();
    if !(3..=MAX_PRUFER_ORDER).contains(&n) {
        return Err(ExcessError::Scope {
            n,
            max: MAX_PRUFER_ORDER,
            what: "Prüfer oracle (3..=8)",
            hint: "",
        });
    }
    require_connected(g)?;

    let len = n - 2;
    let mut seq = vec![0usize; len];
    let mut best = usize::MAX;
    loop {
        let mut count = [0usize; MAX_PRUFER_ORDER];
        for &v in &seq {
            count[v] += 1;
        }
        let te: usize = count[..n].iter().map(|&c| (c + 1).saturating_sub(k)).sum();
        if te < best && prufer_decode(&seq).iter().all(|&(u, v)| g.has_edge(u, v)) {
            best = te;
        }
        // next sequence in base n
        let mut i = 0;
        while i < len {
            seq[i] += 1;
            if seq[i] < n {
                break;
            }
            seq[i] = 0;
            i += 1;
        }
        if i == len {
            break;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn decode_is_a_bijection_onto_trees() {
        // Cayley: 4^2 = 16 distinct labelled trees on 4 vertices
        let mut trees = HashSet::new();
        for a in 0..4 {
            for b in 0..4 {
                let mut e = prufer_decode(&[a, b]);
                e.sort();
                let t = Graph::from_edges(4, e.iter().copied()).unwrap();
                assert!(t.is_connected().unwrap());
                trees.insert(e);
            }
        }
        assert_eq!(trees.len(), 16);
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(prufer_oracle_min_excess(&Graph::complete(4), 1).unwrap(), 2);
        let star = Graph::complete(1).join(&Graph::empty(6));
        assert_eq!(prufer_oracle_min_excess(&star, 5).unwrap(), 1);
        let c5 = Graph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        assert_eq!(prufer_oracle_min_excess(&c5, 2).unwrap(), 0);
    }

    #[test]
    fn scope() {
        assert!(prufer_oracle_min_excess(&Graph::complete(9), 2).is_err());
        assert!(prufer_oracle_min_excess(&Graph::complete(2), 2).is_err());
    }
}
