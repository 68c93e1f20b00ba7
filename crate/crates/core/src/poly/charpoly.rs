use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{PolyError, UniPoly};

/// Largest dimension accepted by [`char_poly_exact`].
pub const MAX_CHARPOLY_DIM: usize = 12;

/// `det(xI − M)` for a square integer matrix, via the Faddeev–LeVerrier
/// recurrence in exact rational arithmetic.
pub fn char_poly_exact(m: &[Vec<i64>]) -> Result<UniPoly, PolyError> {
    let dim = m.len();
    if let Some(row) = m.iter().find(|r| r.len() != dim) {
        return Err(PolyError::NotSquare {
            rows: dim,
            cols: row.len(),
        });
    }
    if dim > MAX_CHARPOLY_DIM {
        return Err(PolyError::DimensionTooLarge(dim));
    }
    let a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
        .collect();

    // coeffs[i] is the coefficient of x^i
    let mut coeffs = vec![BigRational::zero(); dim + 1];
    coeffs[dim] = BigRational::one();
    let mut mk = vec![vec![BigRational::zero(); dim]; dim];
    for k in 1..=dim {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = mat_mul(&a, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[dim - k + 1];
        }
        mk = next;
        let am = mat_mul(&a, &mk);
        let trace = (0..dim).fold(BigRational::zero(), |t, i| t + &am[i][i]);
        coeffs[dim - k] = -trace / BigRational::from_integer(BigInt::from(k));
    }

    let ints = coeffs
        .into_iter()
        .map(|c| {
            assert!(
                c.is_integer(),
                "characteristic polynomial of an integer matrix is integral"
            );
            c.to_integer()
        })
        .collect();
    Ok(UniPoly::new(ints))
}

fn mat_mul(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = a.len();
    let mut out = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    out
}
