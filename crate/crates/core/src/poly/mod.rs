//! Exact polynomial arithmetic: univariate integer polynomials with root
//! isolation, multivariate polynomials over `(x, n, s, k, b)`, exact
//! characteristic polynomials, and the quotient-polynomial templates of the
//! extremal join families.

mod charpoly;
mod multi;
pub mod templates;
mod uni;

use thiserror::Error;

pub use charpoly::{char_poly_exact, MAX_CHARPOLY_DIM};
pub use multi::{Exponents, MultiPoly, Var};
pub use templates::{
    b1_matrix, b2_matrix, bstar_matrix, check_f1_negativity, check_identity_with, closed_form_rho, f1, phi_b1, phi_b2,
    phi_bstar, verify_identity, F1Grid, F1Report, F1Row, IdentityCheck,
};
pub use uni::{largest_real_root, UniPoly};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolyError {
    #[error("matrix is not square ({rows} rows, a row of length {cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension {0} exceeds the exact characteristic polynomial limit of {MAX_CHARPOLY_DIM}")]
    DimensionTooLarge(usize),
    #[error("polynomial is constant")]
    ConstantPolynomial,
    #[error("no real root in bracket (0, {hi}]")]
    NoRootInBracket { hi: f64 },
}
