//! The extremal join families.
//!
//! * `Gstar(n, k, b)   = K_1 ∨ (K_{n−k−b−1} ∪ (k+b)K_1)`
//! * `B1(n, s, k, b)   = K_s ∨ (K_{n−(k−1)s−b−2} ∪ ((k−2)s+b+2)K_1)`
//! * `Star(s, k, b)    = K_s ∨ ((k−2)s+b+3)K_1`
//!
//! Vertices are laid out block by block: the join clique first, then the
//! large clique, then the independent vertices. The block partition is
//! therefore positional and is returned by [`FamilySpec::partition`].

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::excess::{min_total_excess_exact, total_excess, ExcessError, SpanningTree, MAX_EXACT_ORDER};
use crate::graph::{Graph, VertexSet, MAX_ORDER};
use crate::poly::{b1_matrix, b2_matrix, bstar_matrix};
use crate::spectral::Partition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtremalError {
    #[error("clique block empty: need n >= {need}, got n = {n}")]
    CliqueBlockEmpty { n: usize, need: usize },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error(transparent)]
    Excess(#[from] ExcessError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Gstar,
    B1,
    Star,
}

/// Parameters of one family member. `n` is ignored for [`Family::Star`] and
/// `s` is ignored for [`Family::Gstar`] (it is always 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    pub n: usize,
    pub s: usize,
    pub k: usize,
    pub b: usize,
}

impl FamilySpec {
    pub fn gstar(n: usize, k: usize, b: usize) -> Self {
        FamilySpec {
            family: Family::Gstar,
            n,
            s: 1,
            k,
            b,
        }
    }

    pub fn b1(n: usize, s: usize, k: usize, b: usize) -> Self {
        FamilySpec {
            family: Family::B1,
            n,
            s,
            k,
            b,
        }
    }

    pub fn star(s: usize, k: usize, b: usize) -> Self {
        FamilySpec {
            family: Family::Star,
            n: 0,
            s,
            k,
            b,
        }
    }

    /// Sizes of (join clique, large clique, independent set); the star family
    /// has no large clique and returns two blocks.
    pub fn block_sizes(&self) -> Result<Vec<usize>, ExtremalError> {
        let FamilySpec { n, s, k, b, .. } = *self;
        if k < 2 {
            return Err(ExtremalError::InvalidParameters(format!("k = {k} < 2")));
        }
        let sizes = match self.family {
            Family::Gstar => {
                let need = k + b + 2;
                if n < need {
                    return Err(ExtremalError::CliqueBlockEmpty { n, need });
                }
                vec![1, n - k - b - 1, k + b]
            }
            Family::B1 => {
                if s < 1 {
                    return Err(ExtremalError::InvalidParameters("s = 0".into()));
                }
                let need = (k - 1) * s + b + 3;
                if n < need {
                    return Err(ExtremalError::CliqueBlockEmpty { n, need });
                }
                vec![s, n - (k - 1) * s - b - 2, (k - 2) * s + b + 2]
            }
            Family::Star => {
                if s < 1 {
                    return Err(ExtremalError::InvalidParameters("s = 0".into()));
                }
                vec![s, (k - 2) * s + b + 3]
            }
        };
        let total: usize = sizes.iter().sum();
        if total > MAX_ORDER {
            return Err(ExtremalError::InvalidParameters(format!(
                "order {total} exceeds {MAX_ORDER}"
            )));
        }
        Ok(sizes)
    }

    pub fn build(&self) -> Result<Graph, ExtremalError> {
        let sizes = self.block_sizes()?;
        let hub = Graph::complete(sizes[0]);
        let rest = match self.family {
            Family::Star => Graph::empty(sizes[1]),
            _ => Graph::complete(sizes[1]).disjoint_union(&Graph::empty(sizes[2])),
        };
        Ok(hub.join(&rest))
    }

    pub fn partition(&self) -> Result<Partition, ExtremalError> {
        Partition::blocks(&self.block_sizes()?).map_err(|e| ExtremalError::InvalidParameters(e.to_string()))
    }

    /// The quotient matrix predicted by the family's template.
    pub fn quotient_template(&self) -> Result<Vec<Vec<i64>>, ExtremalError> {
        self.block_sizes()?;
        let [n, s, k, b] = [self.n, self.s, self.k, self.b].map(|v| v as i64);
        Ok(match self.family {
            Family::Gstar => bstar_matrix(n, k, b),
            Family::B1 => b1_matrix(n, s, k, b),
            Family::Star => b2_matrix(s, k, b),
        })
    }

    /// The vertex set deleted by the cut argument: the join clique.
    pub fn join_clique(&self) -> Result<VertexSet, ExtremalError> {
        Ok(VertexSet::range(0, self.block_sizes()?[0]))
    }
}

pub fn build_gstar(n: usize, k: usize, b: usize) -> Result<Graph, ExtremalError> {
    FamilySpec::gstar(n, k, b).build()
}

pub fn build_b1_family(n: usize, s: usize, k: usize, b: usize) -> Result<Graph, ExtremalError> {
    FamilySpec::b1(n, s, k, b).build()
}

pub fn build_star_family(s: usize, k: usize, b: usize) -> Result<Graph, ExtremalError> {
    FamilySpec::star(s, k, b).build()
}

/// `K_s ∨ (K_{n_1} ∪ … ∪ K_{n_t})`.
pub fn clique_join(s: usize, parts: &[usize]) -> Graph {
    let union = parts
        .iter()
        .fold(Graph::empty(0), |acc, &p| acc.disjoint_union(&Graph::complete(p)));
    Graph::complete(s).join(&union)
}

/// Non-increasing profiles `n_1 ≥ … ≥ n_t ≥ 1` summing to `total`.
pub fn part_profiles(total: usize, t: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, slots: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 0 {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let hi = cap.min(rest.saturating_sub(slots - 1));
        for first in (1..=hi).rev() {
            if first * slots < rest {
                break;
            }
            cur.push(first);
            go(rest - first, slots - 1, first, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(total, t, total, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertificationMode {
    Exact,
    Structural,
    /// Exact up to the exact-search order, structural above.
    Auto,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExceptionCertificate {
    pub n: usize,
    pub k: usize,
    pub b: usize,
    pub mode: CertificationMode,
    /// Minimum total k-excess; proved by search (exact) or by matching
    /// lower bound and witness (structural).
    pub min_excess: usize,
    /// `Σ_v max(0, c(G − v) − k)`, a lower bound valid for every spanning tree.
    pub cut_lower_bound: usize,
    pub witness: SpanningTree,
    pub is_exception: bool,
}

/// Lower bound on `te(T, k)` for every spanning tree `T`: a vertex whose
/// deletion leaves `c` components has tree degree at least `c`.
pub fn cut_degree_lower_bound(g: &Graph, k: usize) -> usize {
    let all = g.vertices();
    (0..g.order())
        .map(|v| {
            g.count_components_within(all.difference(VertexSet::singleton(v)))
                .saturating_sub(k)
        })
        .sum()
}

/// The tree that hangs every independent vertex and one clique vertex off
/// the hub and threads the clique as a path.
fn gstar_witness(g: &Graph, sizes: &[usize]) -> Result<SpanningTree, ExcessError> {
    let clique = 1..1 + sizes[1];
    let indep = 1 + sizes[1]..g.order();
    let mut edges = vec![(0, 1)];
    edges.extend(clique.clone().zip(clique.skip(1)));
    edges.extend(indep.map(|v| (0, v)));
    SpanningTree::new(g, edges)
}

/// Certifies that `G★(n, k, b)` has no spanning tree with `te ≤ b`.
pub fn verify_gstar_is_exception(
    n: usize,
    k: usize,
    b: usize,
    mode: CertificationMode,
) -> Result<ExceptionCertificate, ExtremalError> {
    let spec = FamilySpec::gstar(n, k, b);
    let sizes = spec.block_sizes()?;
    let g = spec.build()?;
    let cut_lower_bound = cut_degree_lower_bound(&g, k);

    let mode = match mode {
        CertificationMode::Auto if n <= MAX_EXACT_ORDER => CertificationMode::Exact,
        CertificationMode::Auto => CertificationMode::Structural,
        m => m,
    };
    let (min_excess, witness) = match mode {
        CertificationMode::Exact => {
            let r = min_total_excess_exact(&g, k, None)?;
            (r.value, r.witness)
        }
        _ => {
            let witness = gstar_witness(&g, &sizes)?;
            let upper = total_excess(&witness, k);
            if upper != cut_lower_bound {
                return Err(ExtremalError::InvalidParameters(format!(
                    "structural certificate does not close: lower {cut_lower_bound}, witness {upper}"
                )));
            }
            (upper, witness)
        }
    };
    Ok(ExceptionCertificate {
        n,
        k,
        b,
        mode,
        min_excess,
        cut_lower_bound,
        witness,
        is_exception: min_excess > b,
    })
}
