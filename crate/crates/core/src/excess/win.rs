//! The cut condition `c(G − S) ≤ (k − 2)|S| + b + 2` over all vertex subsets.
//!
//! If it holds for every `S`, a spanning tree with `te(T, k) ≤ b` exists. The
//! condition is sufficient only; graphs violating it may still have such a
//! tree.

use serde::Serialize;

use super::{require_connected, ExcessError};
use crate::graph::{Graph, VertexSet};

pub const MAX_WIN_ORDER: usize = 22;

/// The subset with the largest slack `c(G − S) − ((k − 2)|S| + b + 2)`.
/// The condition fails exactly when `slack > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WinViolation {
    pub subset: VertexSet,
    pub components: usize,
    pub slack: i64,
}

impl WinViolation {
    pub fn violated(&self) -> bool {
        self.slack > 0
    }
}

/// Visits `r`-subsets of `0..n` in lexicographic order of their sorted
/// members.
fn for_each_combination(n: usize, r: usize, mut f: impl FnMut(VertexSet)) {
    if r > n {
        return;
    }
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        f(VertexSet::from_vertices(idx.iter().copied()));
        let Some(i) = (0..r).rev().find(|&i| idx[i] != i + n - r) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Maximises the slack over proper subsets `S ⊊ V(G)`, scanning by size then
/// lexicographically and keeping the first maximiser. `S = ∅` is included
/// only when `include_empty` is set.
pub fn win_condition_worst_violator(
    g: &Graph,
    k: usize,
    b: usize,
    include_empty: bool,
) -> Result<WinViolation, ExcessError> {
    let n = g.order();
    if n > MAX_WIN_ORDER {
        return Err(ExcessError::Scope {
            n,
            max: MAX_WIN_ORDER,
            what: "subset scan",
            hint: "; sample subsets instead",
        });
    }
    if k < 2 {
        return Err(ExcessError::InvalidK(k));
    }
    require_connected(g)?;
    if n == 1 && !include_empty {
        return Err(ExcessError::Scope {
            n,
            max: MAX_WIN_ORDER,
            what: "subset scan (no nonempty proper subset)",
            hint: "",
        });
    }

    let all = g.vertices();
    let mut best: Option<WinViolation> = None;
    let start = if include_empty { 0 } else { 1 };
    for r in start..n {
        let bound = ((k - 2) * r + b + 2) as i64;
        for_each_combination(n, r, |s| {
            let components = g.count_components_within(all.difference(s));
            let slack = components as i64 - bound;
            if best.is_none_or(|w| slack > w.slack) {
                best = Some(WinViolation {
                    subset: s,
                    components,
                    slack,
                });
            }
        });
    }
    Ok(best.expect("at least one subset scanned"))
}

/// Both readings of the quantifier: nonempty `S` only, and all `S`
/// including `∅`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WinReport {
    pub nonempty: WinViolation,
    pub with_empty: WinViolation,
    /// Slack of `S = ∅` alone, `c(G) − (b + 2)`.
    pub empty_slack: i64,
}

pub fn win_condition_report(g: &Graph, k: usize, b: usize) -> Result<WinReport, ExcessError> {
    let nonempty = win_condition_worst_violator(g, k, b, false)?;
    let with_empty = win_condition_worst_violator(g, k, b, true)?;
    let empty_slack = g.count_components_within(g.vertices()) as i64 - (b as i64 + 2);
    Ok(WinReport {
        nonempty,
        with_empty,
        empty_slack,
    })
}
