use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::UniPoly;

/// Formal variables, in exponent-vector order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    X = 0,
    N = 1,
    S = 2,
    K = 3,
    B = 4,
}

impl Var {
    pub const ALL: [Var; 5] = [Var::X, Var::N, Var::S, Var::K, Var::B];

    fn name(self) -> &'static str {
        ["x", "n", "s", "k", "b"][self as usize]
    }
}

pub type Exponents = [u32; 5];

/// Polynomial in `(x, n, s, k, b)` with big-integer coefficients.
///
/// Terms live in a `BTreeMap` keyed by exponent vector, so two polynomials
/// are equal exactly when their maps are. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    terms: BTreeMap<Exponents, BigInt>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, [0; 5])
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; 5];
        e[v as usize] = 1;
        Self::monomial(1, e)
    }

    pub fn monomial(c: impl Into<BigInt>, exps: Exponents) -> Self {
        let mut p = Self::zero();
        p.add_term(exps, c.into());
        p
    }

    fn add_term(&mut self, exps: Exponents, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigInt)> {
        self.terms.iter()
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(1), |acc, _| &acc * self)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|e| e[v as usize]).max().unwrap_or(0)
    }

    /// Replaces `v` by `value` everywhere.
    pub fn substitute(&self, v: Var, value: &MultiPoly) -> MultiPoly {
        let idx = v as usize;
        let max = self.degree_in(v);
        let powers: Vec<MultiPoly> = std::iter::successors(Some(Self::constant(1)), |p| Some(p * value))
            .take(max as usize + 1)
            .collect();
        let mut out = MultiPoly::zero();
        for (exps, c) in &self.terms {
            let mut rest = *exps;
            rest[idx] = 0;
            let base = MultiPoly::monomial(c.clone(), rest);
            out = out + &base * &powers[exps[idx] as usize];
        }
        out
    }

    /// Exact evaluation; `point` is indexed by [`Var`].
    pub fn eval(&self, point: &[BigRational; 5]) -> BigRational {
        let mut acc = BigRational::zero();
        for (exps, c) in &self.terms {
            let mut term = BigRational::from_integer(c.clone());
            for (i, &e) in exps.iter().enumerate() {
                for _ in 0..e {
                    term *= &point[i];
                }
            }
            acc += term;
        }
        acc
    }

    /// Fixes `(n, s, k, b)` and returns the remaining polynomial in `x`.
    pub fn instantiate(&self, n: i64, s: i64, k: i64, b: i64) -> UniPoly {
        let vals = [n, s, k, b].map(BigInt::from);
        let deg = self.degree_in(Var::X) as usize;
        let mut coeffs = vec![BigInt::zero(); deg + 1];
        for (exps, c) in &self.terms {
            let mut term = c.clone();
            for (val, &e) in vals.iter().zip(&exps[1..]) {
                term *= num_traits::pow(val.clone(), e as usize);
            }
            coeffs[exps[0] as usize] += term;
        }
        UniPoly::new(coeffs)
    }
}

impl From<i64> for MultiPoly {
    fn from(c: i64) -> Self {
        MultiPoly::constant(c)
    }
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self + &(-rhs)
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let mut e = *ea;
                for i in 0..5 {
                    e[i] += eb[i];
                }
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

// Owned and mixed-scalar forms delegate to the reference impls.
macro_rules! forward_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly { (&self).$m(&rhs) }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: &MultiPoly) -> MultiPoly { (&self).$m(rhs) }
        }
        impl $tr<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly { self.$m(&rhs) }
        }
        impl $tr<i64> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: i64) -> MultiPoly { (&self).$m(&MultiPoly::constant(rhs)) }
        }
        impl $tr<i64> for &MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: i64) -> MultiPoly { self.$m(&MultiPoly::constant(rhs)) }
        }
        impl $tr<MultiPoly> for i64 {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly { (&MultiPoly::constant(self)).$m(&rhs) }
        }
        impl $tr<&MultiPoly> for i64 {
            type Output = MultiPoly;
            fn $m(self, rhs: &MultiPoly) -> MultiPoly { (&MultiPoly::constant(self)).$m(rhs) }
        }
    )*};
}

forward_ops!(Add add, Sub sub, Mul mul);

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // highest total degree first for readability
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(e, _)| (std::cmp::Reverse(e.iter().sum::<u32>()), std::cmp::Reverse(**e)));
        for (i, (exps, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mag = c.abs();
            let mut factors: Vec<String> = Var::ALL
                .iter()
                .filter(|v| exps[**v as usize] > 0)
                .map(|v| match exps[*v as usize] {
                    1 => v.name().to_string(),
                    e => format!("{}^{}", v.name(), e),
                })
                .collect();
            if !mag.is_one() || factors.is_empty() {
                factors.insert(0, mag.to_string());
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}
