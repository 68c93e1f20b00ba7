//! Quotient matrices of the extremal join families and their characteristic
//! polynomials, written as exact polynomials in `(x, n, s, k, b)`.
//!
//! `B1` is the quotient of `K_s ∨ (K_{n-(k-1)s-b-2} ∪ ((k-2)s+b+2)K_1)`,
//! `B2` of `K_s ∨ ((k-2)s+b+3)K_1`, and `Bstar` of
//! `K_1 ∨ (K_{n-k-b-1} ∪ (k+b)K_1)`, each under the block partition
//! (join clique, large clique, independent vertices).

use rayon::prelude::*;
use serde::Serialize;

use super::multi::{MultiPoly, Var};
use super::{largest_real_root, PolyError};

fn vars() -> [MultiPoly; 5] {
    Var::ALL.map(MultiPoly::var)
}

/// φ_{B1}(x) = x³ + (−n+(k−2)s+b+4)x² − (n+(k−2)s²−(k−b−4)s−b−3)x
///            + (k−2)s²n + (b+2)sn − (k−2)(k−1)s³ − (2bk+5k−3b−8)s² − (b+2)(b+3)s
pub fn phi_b1() -> MultiPoly {
    let [x, n, s, k, b] = vars();
    let x2 = x.pow(2);
    let s2 = s.pow(2);
    x.pow(3) + (-&n + (&k - 2) * &s + &b + 4) * &x2 - (&n + (&k - 2) * &s2 - (&k - &b - 4) * &s - &b - 3) * &x
        + (&k - 2) * &s2 * &n
        + (&b + 2) * &s * &n
        - (&k - 2) * (&k - 1) * s.pow(3)
        - (2 * &b * &k + 5 * &k - 3 * &b - 8) * &s2
        - (&b + 2) * (&b + 3) * &s
}

/// φ_{B2}(x) = x² − (s−1)x − s((k−2)s+b+3)
pub fn phi_b2() -> MultiPoly {
    let [x, _, s, k, b] = vars();
    x.pow(2) - (&s - 1) * &x - &s * ((&k - 2) * &s + &b + 3)
}

/// φ_{B★}(x) = x³ + (−n+k+b+2)x² − (n−1)x + (k+b)n − k² − 2bk − 2k − b² − 2b
pub fn phi_bstar() -> MultiPoly {
    let [x, n, _, k, b] = vars();
    x.pow(3) + (-&n + &k + &b + 2) * x.pow(2) - (&n - 1) * &x + (&k + &b) * &n
        - k.pow(2)
        - 2 * &b * &k
        - 2 * &k
        - b.pow(2)
        - 2 * &b
}

/// f₁(x) = −(k−2)x² + ((k−2)s+b+2)x − (k−2)sn − (k+b)n + (k−2)(k−1)s²
///         + (k²+2bk+2k−3b−6)s + k² + 2bk + b² + 2k + 2b
pub fn f1() -> MultiPoly {
    let [x, n, s, k, b] = vars();
    -((&k - 2) * x.pow(2)) + ((&k - 2) * &s + &b + 2) * &x - (&k - 2) * &s * &n - (&k + &b) * &n
        + (&k - 2) * (&k - 1) * s.pow(2)
        + (k.pow(2) + 2 * &b * &k + 2 * &k - 3 * &b - 6) * &s
        + k.pow(2)
        + 2 * &b * &k
        + b.pow(2)
        + 2 * &k
        + 2 * &b
}

/// Quotient of the `K_s ∨ (K_{n-(k-1)s-b-2} ∪ ((k-2)s+b+2)K_1)` partition.
pub fn b1_matrix(n: i64, s: i64, k: i64, b: i64) -> Vec<Vec<i64>> {
    let big = n - (k - 1) * s - b - 2;
    let indep = (k - 2) * s + b + 2;
    vec![vec![s - 1, big, indep], vec![s, big - 1, 0], vec![s, 0, 0]]
}

/// Quotient of `K_s ∨ ((k-2)s+b+3)K_1`.
pub fn b2_matrix(s: i64, k: i64, b: i64) -> Vec<Vec<i64>> {
    vec![vec![s - 1, (k - 2) * s + b + 3], vec![s, 0]]
}

/// Quotient of `K_1 ∨ (K_{n-k-b-1} ∪ (k+b)K_1)`.
pub fn bstar_matrix(n: i64, k: i64, b: i64) -> Vec<Vec<i64>> {
    vec![vec![0, n - k - b - 1, k + b], vec![1, n - k - b - 2, 0], vec![1, 0, 0]]
}

/// Outcome of checking `φ_{B★} − φ_{B1} = (s−1)·f₁`.
#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub holds: bool,
    /// `φ_{B★} − φ_{B1} − (s−1)·f₁`; zero when the identity holds.
    pub difference: MultiPoly,
}

/// Checks the identity with a caller-supplied `f₁`.
pub fn check_identity_with(f1: &MultiPoly) -> IdentityCheck {
    let s = MultiPoly::var(Var::S);
    let difference = phi_bstar() - phi_b1() - (s - 1) * f1;
    IdentityCheck {
        holds: difference.is_zero(),
        difference,
    }
}

pub fn verify_identity() -> IdentityCheck {
    check_identity_with(&f1())
}

/// Largest eigenvalue of `K_s ∨ ((k-2)s+b+3)K_1`:
/// `(s − 1 + √((4k−7)s² + (4b+10)s + 1)) / 2`.
pub fn closed_form_rho(s: i64, k: i64, b: i64) -> f64 {
    assert!(
        s >= 1 && k >= 2 && b >= 0,
        "closed_form_rho needs s >= 1, k >= 2, b >= 0"
    );
    let radicand = (4 * k - 7) * s * s + (4 * b + 10) * s + 1;
    assert!(radicand >= 0);
    ((s - 1) as f64 + (radicand as f64).sqrt()) / 2.0
}

/// Parameter grid for [`check_f1_negativity`]. For each `(s, k)`, `b` runs
/// over `0..=b_max.unwrap_or(k-3)` and `n` over `(k−1)s+b+3 + offset`.
#[derive(Clone, Debug, Serialize)]
pub struct F1Grid {
    pub s: (i64, i64),
    pub k: (i64, i64),
    pub b_max: Option<i64>,
    pub n_offsets: Vec<i64>,
}

impl F1Grid {
    pub fn points(&self) -> Vec<(i64, i64, i64, i64)> {
        let mut out = Vec::new();
        for s in self.s.0..=self.s.1 {
            for k in self.k.0..=self.k.1 {
                for b in 0..=self.b_max.unwrap_or(k - 3) {
                    for &off in &self.n_offsets {
                        out.push((s, k, b, (k - 1) * s + b + 3 + off));
                    }
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct F1Row {
    pub s: i64,
    pub k: i64,
    pub b: i64,
    pub n: i64,
    pub rho1: f64,
    pub f1_value: f64,
    pub negative: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SkippedPoint {
    pub s: i64,
    pub k: i64,
    pub b: i64,
    pub n: i64,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct F1Report {
    pub rows: Vec<F1Row>,
    pub skipped: Vec<SkippedPoint>,
    /// Largest f₁(ρ₁) over evaluated points; `None` if nothing was evaluated.
    pub max_value: Option<f64>,
}

impl F1Report {
    pub fn all_negative(&self) -> bool {
        self.rows.iter().all(|r| r.negative)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("s,k,b,n,rho1,f1_value,sign\n");
        for r in &self.rows {
            let sign = if r.f1_value < 0.0 {
                "-"
            } else if r.f1_value > 0.0 {
                "+"
            } else {
                "0"
            };
            out.push_str(&format!(
                "{},{},{},{},{:.12},{:.9},{}\n",
                r.s, r.k, r.b, r.n, r.rho1, r.f1_value, sign
            ));
        }
        out
    }
}

fn hypothesis_violation(s: i64, k: i64, b: i64, n: i64) -> Option<String> {
    if s < 2 {
        Some("s < 2".into())
    } else if b < 0 {
        Some("b < 0".into())
    } else if k < 5.max(b + 3) {
        Some("k < max{5, b+3}".into())
    } else if (b, k) == (2, 5) {
        Some("(b,k) = (2,5) excluded".into())
    } else if n < (k - 1) * s + b + 3 {
        Some("n < (k-1)s+b+3".into())
    } else {
        None
    }
}

/// Evaluates f₁ at the largest root ρ₁ of φ_{B1} for every grid point that
/// satisfies the hypotheses; other points are skipped and listed.
pub fn check_f1_negativity(grid: &F1Grid) -> Result<F1Report, PolyError> {
    let phi = phi_b1();
    let f = f1();
    let results: Vec<Result<Result<F1Row, SkippedPoint>, PolyError>> = grid
        .points()
        .into_par_iter()
        .map(|(s, k, b, n)| {
            if let Some(reason) = hypothesis_violation(s, k, b, n) {
                return Ok(Err(SkippedPoint { s, k, b, n, reason }));
            }
            let rho1 = largest_real_root(&phi.instantiate(n, s, k, b), n as f64, 1e-12)?;
            let f1_value = f.instantiate(n, s, k, b).eval_f64(rho1);
            Ok(Ok(F1Row {
                s,
                k,
                b,
                n,
                rho1,
                f1_value,
                negative: f1_value < 0.0,
            }))
        })
        .collect();

    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for r in results {
        match r? {
            Ok(row) => rows.push(row),
            Err(skip) => skipped.push(skip),
        }
    }
    let max_value = rows.iter().map(|r| r.f1_value).reduce(f64::max);
    Ok(F1Report {
        rows,
        skipped,
        max_value,
    })
}
