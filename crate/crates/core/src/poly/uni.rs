use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::PolyError;

/// Univariate polynomial in `x` with integer coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<BigInt>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| {
            acc * x + BigRational::from_integer(c.clone())
        })
    }

    fn rational_coeffs(&self) -> Vec<BigRational> {
        self.coeffs.iter().cloned().map(BigRational::from_integer).collect()
    }

    fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// `p / gcd(p, p')`, scaled back to a primitive integer polynomial.
    pub fn square_free(&self) -> UniPoly {
        if self.degree().unwrap_or(0) < 1 {
            return self.clone();
        }
        let p = self.rational_coeffs();
        let g = rational_gcd(p.clone(), self.derivative().rational_coeffs());
        if g.len() <= 1 {
            return self.clone();
        }
        let (q, _) = rational_divmod(&p, &g);
        primitive(&q)
    }

    /// Coefficients of `p(y + a)` in `y`, lowest degree first.
    pub fn taylor_shift(&self, a: &BigRational) -> Vec<BigRational> {
        let mut c = self.rational_coeffs();
        let d = c.len();
        for i in 0..d {
            for j in (i..d - 1).rev() {
                let t = &c[j + 1] * a;
                c[j] += t;
            }
        }
        c
    }
}

/// Sign changes in a coefficient sequence, zeros skipped.
pub(crate) fn sign_variations(coeffs: &[BigRational]) -> usize {
    let signs: Vec<bool> = coeffs
        .iter()
        .filter(|c| !c.is_zero())
        .map(|c| c.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn rational_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = trim(a.to_vec());
    let b = trim(b.to_vec());
    let lead = b.last().expect("nonzero divisor").clone();
    if rem.len() < b.len() {
        return (vec![], rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() && !rem.is_empty() {
        let shift = rem.len() - b.len();
        let factor = rem.last().unwrap() / &lead;
        for (i, bc) in b.iter().enumerate() {
            rem[shift + i] -= &factor * bc;
        }
        quot[shift] = factor;
        rem = trim(rem);
    }
    (quot, rem)
}

fn rational_gcd(mut a: Vec<BigRational>, mut b: Vec<BigRational>) -> Vec<BigRational> {
    a = trim(a);
    b = trim(b);
    while !b.is_empty() {
        let (_, r) = rational_divmod(&a, &b);
        a = b;
        b = r;
    }
    a
}

fn primitive(p: &[BigRational]) -> UniPoly {
    use num_integer::Integer;
    let lcm = p.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    let sign = if ints.last().is_some_and(|c| c.is_negative()) {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    UniPoly::new(ints.into_iter().map(|c| c / &g * &sign).collect())
}

fn rational_from_f64(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite bracket point")
}

/// Largest real root of `p` in `(0, hi]`.
///
/// Scans downward from `hi` on a grid, bisects the first sign change with
/// exact rational sign evaluation, then confirms by Descartes' rule that
/// `p(y + upper)` has no positive root. Unconfirmed results trigger a finer
/// scan; after the last refinement the best bracketed root is returned.
pub fn largest_real_root(p: &UniPoly, hi: f64, tol: f64) -> Result<f64, PolyError> {
    if p.degree().unwrap_or(0) == 0 {
        return Err(PolyError::ConstantPolynomial);
    }
    if !(hi > 0.0 && hi.is_finite()) || tol.is_nan() || tol <= 0.0 {
        return Err(PolyError::NoRootInBracket { hi });
    }
    let q = p.square_free();
    let sign_at = |x: f64| -> i8 {
        let v = q.eval_rational(&rational_from_f64(x));
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    };
    let no_root_above = |x: f64| sign_variations(&q.taylor_shift(&rational_from_f64(x))) == 0;

    let mut fallback = None;
    for level in 6..=16 {
        let steps = 1usize << level;
        let h = hi / steps as f64;
        let mut upper = hi;
        let mut upper_sign = sign_at(hi);
        let mut found = None;
        if upper_sign == 0 {
            found = Some((hi, hi));
        } else {
            for i in 1..=steps {
                let x = if i == steps { 0.0 } else { hi - h * i as f64 };
                let sx = sign_at(x);
                if sx == 0 {
                    found = Some((x, x));
                    break;
                }
                if sx != upper_sign {
                    found = Some((x, upper));
                    break;
                }
                upper = x;
                upper_sign = sx;
            }
        }
        let Some((mut lo, mut up)) = found else {
            continue;
        };
        if lo != up {
            let lo_sign = sign_at(lo);
            while up - lo > tol {
                let mid = lo + (up - lo) / 2.0;
                if mid <= lo || mid >= up {
                    break;
                }
                let sm = sign_at(mid);
                if sm == 0 {
                    lo = mid;
                    up = mid;
                    break;
                }
                if sm == lo_sign {
                    lo = mid;
                } else {
                    up = mid;
                }
            }
        }
        let root = lo + (up - lo) / 2.0;
        if no_root_above(up) {
            return Ok(root);
        }
        fallback = Some(root);
    }
    fallback.ok_or(PolyError::NoRootInBracket { hi })
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag.is_one();
            match i {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "x")?,
                1 => write!(f, "{mag}x")?,
                _ if unit => write!(f, "x^{i}")?,
                _ => write!(f, "{mag}x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display() {
        assert_eq!(UniPoly::from_i64s(&[-2, -3, 0, 1]).to_string(), "x^3 - 3x - 2");
        assert_eq!(UniPoly::from_i64s(&[0, -6, 0, 1]).to_string(), "x^3 - 6x");
        assert_eq!(UniPoly::from_i64s(&[]).to_string(), "0");
    }

    #[test]
    fn root_examples() {
        let cubic = UniPoly::from_i64s(&[0, -6, 0, 1]);
        let r = largest_real_root(&cubic, 7.0, 1e-12).unwrap();
        assert!((r - 6f64.sqrt()).abs() < 1e-11);

        let linear = UniPoly::from_i64s(&[-5, 1]);
        assert!((largest_real_root(&linear, 6.0, 1e-12).unwrap() - 5.0).abs() < 1e-12);
        // root sitting exactly on the bracket end
        assert_eq!(largest_real_root(&linear, 5.0, 1e-12).unwrap(), 5.0);
    }

    #[test]
    fn double_root_found_via_square_free_part() {
        // (x - 2)^2 (x + 1) = x^3 - 3x^2 + 4
        let p = UniPoly::from_i64s(&[4, 0, -3, 1]);
        assert_eq!(p.square_free(), UniPoly::from_i64s(&[-2, -1, 1]));
        assert!((largest_real_root(&p, 5.0, 1e-12).unwrap() - 2.0).abs() < 1e-11);
    }

    #[test]
    fn close_roots_are_not_skipped() {
        // (x - 3)(x - 3.001)(x - 1) scaled to integers: roots 3, 3.001, 1
        // (1000x - 3001)(x - 3)(x - 1)
        let p = UniPoly::from_i64s(&[-9003, 15004, -7001, 1000]);
        let r = largest_real_root(&p, 10.0, 1e-12).unwrap();
        assert!((r - 3.001).abs() < 1e-10, "{r}");
    }

    #[test]
    fn errors() {
        assert_eq!(
            largest_real_root(&UniPoly::from_i64s(&[3]), 1.0, 1e-9),
            Err(PolyError::ConstantPolynomial)
        );
        // x^2 + 1 has no real root
        assert!(matches!(
            largest_real_root(&UniPoly::from_i64s(&[1, 0, 1]), 4.0, 1e-9),
            Err(PolyError::NoRootInBracket { .. })
        ));
    }

    #[test]
    fn taylor_shift_matches_evaluation() {
        let p = UniPoly::from_i64s(&[4, 0, -3, 1]);
        let a = BigRational::new(7.into(), 3.into());
        let shifted = p.taylor_shift(&a);
        assert_eq!(shifted[0], p.eval_rational(&a));
        assert_eq!(shifted[3], BigRational::one());
    }
}
