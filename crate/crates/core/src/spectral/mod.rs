//! Adjacency spectra.
//!
//! Full spectra come from cyclic Jacobi sweeps on the dense adjacency matrix.
//! For connected graphs the top eigenvalue is also bracketed independently by
//! Collatz–Wielandt bounds from power iteration on `A + I`, and the two must
//! agree.

mod quotient;

use thiserror::Error;

use crate::graph::Graph;

pub use quotient::{is_equitable, largest_eigenvalue_of_quotient, quotient_matrix, Partition, QuotientMatrix};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error("Jacobi sweeps did not converge; largest eigenvalue in [{lo}, {hi}]")]
    NoConvergence { lo: f64, hi: f64 },
    #[error("Jacobi value {jacobi} outside power-iteration bracket [{lo}, {hi}]")]
    CrossCheck { jacobi: f64, lo: f64, hi: f64 },
    #[error("partition error: {0}")]
    Partition(String),
    #[error("quotient matrix has a negative entry at ({0}, {1})")]
    NegativeEntry(usize, usize),
    #[error("power iteration on quotient did not reach tolerance; root in [{lo}, {hi}]")]
    QuotientNoConvergence { lo: f64, hi: f64 },
    #[error("quotient Perron root {power} disagrees with characteristic polynomial root {exact}")]
    QuotientCrossCheck { power: f64, exact: f64 },
}

/// Eigenvalues in descending order.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    /// Off-diagonal Frobenius norm at termination; every eigenvalue is
    /// within this distance of the reported value.
    pub tolerance: f64,
}

impl Spectrum {
    pub fn largest(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }
}

/// Eigenvalues of a dense symmetric row-major matrix by cyclic Jacobi.
pub fn symmetric_eigenvalues(matrix: &[f64], dim: usize, tol: f64) -> Result<Spectrum, SpectralError> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(SpectralError::BadTolerance(tol));
    }
    assert_eq!(matrix.len(), dim * dim);
    let mut a = matrix.to_vec();
    let off_norm = |a: &[f64]| -> f64 {
        let mut sum = 0.0;
        for p in 0..dim {
            for q in p + 1..dim {
                sum += 2.0 * a[p * dim + q] * a[p * dim + q];
            }
        }
        sum.sqrt()
    };

    let mut off = off_norm(&a);
    let mut sweeps = 0;
    while off >= tol {
        if sweeps == MAX_SWEEPS {
            let top = (0..dim).map(|i| a[i * dim + i]).fold(f64::NEG_INFINITY, f64::max);
            return Err(SpectralError::NoConvergence {
                lo: top - off,
                hi: top + off,
            });
        }
        for p in 0..dim {
            for q in p + 1..dim {
                let apq = a[p * dim + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * dim + p];
                let aqq = a[q * dim + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                a[p * dim + p] = app - t * apq;
                a[q * dim + q] = aqq + t * apq;
                a[p * dim + q] = 0.0;
                a[q * dim + p] = 0.0;
                for r in 0..dim {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = a[r * dim + p];
                    let arq = a[r * dim + q];
                    let new_rp = c * arp - s * arq;
                    let new_rq = s * arp + c * arq;
                    a[r * dim + p] = new_rp;
                    a[p * dim + r] = new_rp;
                    a[r * dim + q] = new_rq;
                    a[q * dim + r] = new_rq;
                }
            }
        }
        sweeps += 1;
        off = off_norm(&a);
    }

    let mut eigenvalues: Vec<f64> = (0..dim).map(|i| a[i * dim + i]).collect();
    eigenvalues.sort_by(|x, y| y.total_cmp(x));
    Ok(Spectrum {
        eigenvalues,
        tolerance: off,
    })
}

pub fn spectrum(g: &Graph, tol: f64) -> Result<Spectrum, SpectralError> {
    symmetric_eigenvalues(&g.adjacency_matrix(), g.order(), tol)
}

/// Collatz–Wielandt bracket `[lo, hi]` on the Perron root of a nonnegative
/// row-major matrix, refined by power iteration on `M + I` from the all-ones
/// vector. Stops when `hi − lo < width` or after `max_iter` steps.
pub fn perron_bracket(matrix: &[f64], dim: usize, width: f64, max_iter: usize) -> (f64, f64) {
    let mut v = vec![1.0; dim];
    let mut w = vec![0.0; dim];
    let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
    for _ in 0..=max_iter {
        for i in 0..dim {
            let row = &matrix[i * dim..(i + 1) * dim];
            w[i] = v[i] + row.iter().zip(&v).map(|(a, x)| a * x).sum::<f64>();
        }
        let (mut rmin, mut rmax) = (f64::INFINITY, f64::NEG_INFINITY);
        for i in 0..dim {
            let r = w[i] / v[i];
            rmin = rmin.min(r);
            rmax = rmax.max(r);
        }
        lo = lo.max(rmin - 1.0);
        hi = hi.min(rmax - 1.0);
        if hi - lo < width {
            break;
        }
        let norm = w.iter().fold(0.0f64, |m, x| m.max(*x));
        for i in 0..dim {
            v[i] = w[i] / norm;
        }
    }
    (lo, hi)
}

/// ρ(G), the largest adjacency eigenvalue.
///
/// Connected inputs are additionally checked against an independent power
/// iteration bracket; disagreement is reported as an error rather than
/// returning a doubtful value.
pub fn spectral_radius(g: &Graph, tol: f64) -> Result<f64, SpectralError> {
    let n = g.order();
    if n == 0 {
        return Err(SpectralError::EmptyGraph);
    }
    let matrix = g.adjacency_matrix();
    let spec = symmetric_eigenvalues(&matrix, n, tol)?;
    let rho = spec.largest();
    if g.is_connected().unwrap_or(false) {
        let (lo, hi) = perron_bracket(&matrix, n, 1e-6, 500);
        let slack = 1e-9 + spec.tolerance;
        if rho < lo - slack || rho > hi + slack {
            return Err(SpectralError::CrossCheck { jacobi: rho, lo, hi });
        }
    }
    Ok(rho)
}
