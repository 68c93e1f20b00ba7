use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use super::{perron_bracket, SpectralError};
use crate::graph::{Graph, VertexSet};
use crate::poly::{char_poly_exact, largest_real_root};

/// Ordered cells partitioning `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    order: usize,
    cells: Vec<VertexSet>,
}

impl Partition {
    pub fn new(order: usize, cells: Vec<VertexSet>) -> Result<Self, SpectralError> {
        let mut seen = VertexSet::EMPTY;
        for (i, cell) in cells.iter().enumerate() {
            if cell.is_empty() {
                return Err(SpectralError::Partition(format!("cell {i} is empty")));
            }
            if !seen.intersection(*cell).is_empty() {
                return Err(SpectralError::Partition(format!("cell {i} overlaps an earlier cell")));
            }
            seen = seen.union(*cell);
        }
        if seen != VertexSet::full(order) {
            return Err(SpectralError::Partition(format!("cells do not cover 0..{order}")));
        }
        Ok(Partition { order, cells })
    }

    /// Consecutive blocks of the given sizes: `0..a`, `a..a+b`, ...
    pub fn blocks(sizes: &[usize]) -> Result<Self, SpectralError> {
        let mut start = 0;
        let cells = sizes
            .iter()
            .map(|&len| {
                let cell = VertexSet::range(start, start + len);
                start += len;
                cell
            })
            .collect();
        Partition::new(start, cells)
    }

    pub fn cells(&self) -> &[VertexSet] {
        &self.cells
    }

    pub fn order(&self) -> usize {
        self.order
    }

    fn check_graph(&self, g: &Graph) -> Result<(), SpectralError> {
        if self.order != g.order() {
            return Err(SpectralError::Partition(format!(
                "partition covers {} vertices, graph has {}",
                self.order,
                g.order()
            )));
        }
        Ok(())
    }
}

/// Cell-level matrix of average row sums. Entries are exact rationals.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotientMatrix {
    dim: usize,
    entries: Vec<Ratio<i64>>,
    partition: Option<Partition>,
}

impl QuotientMatrix {
    /// Wraps a matrix that did not come from a partition (e.g. a template).
    pub fn from_integer_rows(rows: &[Vec<i64>]) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "quotient matrix must be square");
        QuotientMatrix {
            dim,
            entries: rows.iter().flatten().map(|&v| Ratio::from_integer(v)).collect(),
            partition: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> Ratio<i64> {
        self.entries[i * self.dim + j]
    }

    pub fn partition(&self) -> Option<&Partition> {
        self.partition.as_ref()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.entries.iter().map(|r| r.to_f64().expect("finite ratio")).collect()
    }

    /// Integer rows, if every entry is integral.
    pub fn to_integer_rows(&self) -> Option<Vec<Vec<i64>>> {
        self.entries.iter().all(|r| r.is_integer()).then(|| {
            self.entries
                .chunks(self.dim)
                .map(|row| row.iter().map(|r| r.to_integer()).collect())
                .collect()
        })
    }
}

/// Entry `(i, j)` is the number of edges from cell `i` into cell `j`,
/// counted from cell `i`'s side, divided by `|cell i|`.
pub fn quotient_matrix(g: &Graph, p: &Partition) -> Result<QuotientMatrix, SpectralError> {
    p.check_graph(g)?;
    let dim = p.cells.len();
    let mut entries = Vec::with_capacity(dim * dim);
    for ci in &p.cells {
        for cj in &p.cells {
            let total: usize = ci.iter().map(|v| g.neighbors(v).intersection(*cj).len()).sum();
            entries.push(Ratio::new(total as i64, ci.len() as i64));
        }
    }
    Ok(QuotientMatrix {
        dim,
        entries,
        partition: Some(p.clone()),
    })
}

/// Every vertex of cell `i` has the same number of neighbors in cell `j`,
/// for all ordered pairs `(i, j)`. Partitions of another order are never
/// equitable for `g`.
pub fn is_equitable(g: &Graph, p: &Partition) -> bool {
    if p.check_graph(g).is_err() {
        return false;
    }
    p.cells.iter().all(|ci| {
        p.cells.iter().all(|cj| {
            let mut counts = ci.iter().map(|v| g.neighbors(v).intersection(*cj).len());
            let first = counts.next();
            counts.all(|c| Some(c) == first)
        })
    })
}

/// Perron root of a nonnegative quotient matrix.
///
/// Power iteration on `B + I` narrows a Collatz–Wielandt bracket to `tol`.
/// Integral matrices of dimension at most 3 are cross-checked against the
/// largest root of their exact characteristic polynomial.
pub fn largest_eigenvalue_of_quotient(b: &QuotientMatrix, tol: f64) -> Result<f64, SpectralError> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(SpectralError::BadTolerance(tol));
    }
    for i in 0..b.dim {
        for j in 0..b.dim {
            if b.entry(i, j) < Ratio::zero() {
                return Err(SpectralError::NegativeEntry(i, j));
            }
        }
    }
    if b.dim == 0 {
        return Ok(0.0);
    }
    let m = b.to_f64();
    let (lo, hi) = perron_bracket(&m, b.dim, tol, 200_000);
    if hi - lo >= tol {
        return Err(SpectralError::QuotientNoConvergence { lo, hi });
    }
    let power = lo + (hi - lo) / 2.0;

    if b.dim <= 3 {
        if let Some(rows) = b.to_integer_rows() {
            let p = char_poly_exact(&rows).expect("small square matrix");
            let bound = m.chunks(b.dim).map(|r| r.iter().sum::<f64>()).fold(0.0, f64::max) + 1.0;
            let exact = largest_real_root(&p, bound, 1e-12)
                .map_err(|_| SpectralError::QuotientCrossCheck { power, exact: f64::NAN })?;
            if (exact - power).abs() > tol + 1e-9 {
                return Err(SpectralError::QuotientCrossCheck { power, exact });
            }
        }
    }
    Ok(power)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{spectral_radius, DEFAULT_TOL};

    fn star(leaves: usize) -> Graph {
        Graph::complete(1).join(&Graph::empty(leaves))
    }

    fn int_rows(q: &QuotientMatrix) -> Vec<Vec<i64>> {
        q.to_integer_rows().expect("integral quotient")
    }

    #[test]
    fn star_quotient() {
        let p = Partition::blocks(&[1, 6]).unwrap();
        let q = quotient_matrix(&star(6), &p).unwrap();
        assert_eq!(int_rows(&q), vec![vec![0, 6], vec![1, 0]]);
        assert!(is_equitable(&star(6), &p));
        let rho = largest_eigenvalue_of_quotient(&q, 1e-12).unwrap();
        assert!((rho - 6f64.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn gstar_9_5_1_quotient() {
        // K_1 ∨ (K_2 ∪ 6K_1)
        let g = Graph::complete(1).join(&Graph::complete(2).disjoint_union(&Graph::empty(6)));
        let p = Partition::blocks(&[1, 2, 6]).unwrap();
        assert!(is_equitable(&g, &p));
        let q = quotient_matrix(&g, &p).unwrap();
        assert_eq!(int_rows(&q), vec![vec![0, 2, 6], vec![1, 1, 0], vec![1, 0, 0]]);
        let via_q = largest_eigenvalue_of_quotient(&q, 1e-12).unwrap();
        let via_g = spectral_radius(&g, DEFAULT_TOL).unwrap();
        assert!((via_q - via_g).abs() < 1e-8);
    }

    #[test]
    fn single_cell_gives_average_degree() {
        let g = star(4);
        let q = quotient_matrix(&g, &Partition::blocks(&[5]).unwrap()).unwrap();
        assert_eq!(q.entry(0, 0), Ratio::new(8, 5));
        assert!(q.to_integer_rows().is_none());
        assert!(!is_equitable(&g, &Partition::blocks(&[5]).unwrap()));
        let c = Graph::from_edges(6, (0..6).map(|i| (i, (i + 1) % 6))).unwrap();
        assert!(is_equitable(&c, &Partition::blocks(&[6]).unwrap()));
    }

    #[test]
    fn uneven_split_of_star_is_not_equitable() {
        let p = Partition::new(7, vec![VertexSet::from_vertices([0, 1]), VertexSet::range(2, 7)]).unwrap();
        assert!(!is_equitable(&star(6), &p));
    }

    #[test]
    fn complete_graph_quotients() {
        let g = Graph::complete(6);
        for sizes in [&[6][..], &[1, 5], &[2, 2, 2], &[3, 1, 2]] {
            let p = Partition::blocks(sizes).unwrap();
            assert!(is_equitable(&g, &p));
            let rho = largest_eigenvalue_of_quotient(&quotient_matrix(&g, &p).unwrap(), 1e-12).unwrap();
            assert!((rho - 5.0).abs() < 1e-10);
        }
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(
            3,
            vec![
                VertexSet::from_vertices([0, 1]),
                VertexSet::EMPTY,
                VertexSet::singleton(2)
            ]
        )
        .is_err());
        assert!(Partition::new(
            3,
            vec![VertexSet::from_vertices([0, 1]), VertexSet::from_vertices([1, 2])]
        )
        .is_err());
        assert!(Partition::new(3, vec![VertexSet::from_vertices([0, 1])]).is_err());
        let p = Partition::blocks(&[2, 2]).unwrap();
        assert!(quotient_matrix(&Graph::complete(3), &p).is_err());
    }

    #[test]
    fn negative_entry_rejected() {
        let q = QuotientMatrix::from_integer_rows(&[vec![0, 1], vec![-1, 0]]);
        assert_eq!(
            largest_eigenvalue_of_quotient(&q, 1e-10),
            Err(SpectralError::NegativeEntry(1, 0))
        );
    }
}
