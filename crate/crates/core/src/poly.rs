//! Dense polynomials in the hyperarc-marking variable `y`, plus the
//! binomial exponent helpers every counting formula uses.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Polynomial in `y`; `coeffs[q]` is the coefficient of `y^q`.
///
/// Always canonical: no trailing zeros, so the zero polynomial is the empty
/// vector and derived `PartialEq` is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Poly<T> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// `c * y^degree`
    pub fn monomial(c: T, degree: usize) -> Self {
        let mut coeffs = vec![T::zero(); degree];
        coeffs.push(c);
        Poly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Builds a polynomial from `(q, count)` pairs, summing repeated degrees.
    pub fn from_terms<I: IntoIterator<Item = (usize, T)>>(terms: I) -> Self {
        let mut coeffs: Vec<T> = Vec::new();
        for (q, c) in terms {
            if coeffs.len() <= q {
                coeffs.resize(q + 1, T::zero());
            }
            coeffs[q] += c;
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `y^q`, zero past the degree.
    pub fn coeff(&self, q: usize) -> T {
        self.coeffs.get(q).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// `(1 + y)^e`, coefficient of `y^k` is `C(e, k)`.
    pub fn one_plus_y_pow(e: u64) -> Self {
        let e_len = usize::try_from(e).expect("exponent fits in memory");
        let mut coeffs = Vec::with_capacity(e_len + 1);
        let mut c = T::one();
        coeffs.push(c.clone());
        for j in 0..e {
            c = c * T::from_count(e - j) / T::from_count(j + 1);
            coeffs.push(c.clone());
        }
        Poly { coeffs }
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::from_coeffs(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Multiplies by `(1 + y)^e` through repeated shift-and-add; only
    /// additions, which beats a dense product when `e` is small.
    pub fn mul_one_plus_y_pow(&self, e: u64) -> Self {
        if self.is_zero() || e == 0 {
            return self.clone();
        }
        let e_len = usize::try_from(e).expect("exponent fits in memory");
        let mut coeffs = self.coeffs.clone();
        coeffs.reserve(e_len);
        for _ in 0..e_len {
            coeffs.push(T::zero());
            for i in (1..coeffs.len()).rev() {
                let prev = coeffs[i - 1].clone();
                coeffs[i] += prev;
            }
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn eval(&self, y0: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * y0.clone() + c.clone())
    }

    /// Sum of coefficients, i.e. the value at `y = 1`.
    pub fn total(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |acc, c| acc + c.clone())
    }

    fn add_ref(&self, other: &Self) -> Self {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (a, b) in coeffs.iter_mut().zip(&short.coeffs) {
            *a += b.clone();
        }
        Poly::from_coeffs(coeffs)
    }

    fn sub_ref(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(len, T::zero());
        for (a, b) in coeffs.iter_mut().zip(&other.coeffs) {
            *a -= b.clone();
        }
        Poly::from_coeffs(coeffs)
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (acc, b) in coeffs[i..].iter_mut().zip(&other.coeffs) {
                acc.add_product(a, b);
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

impl<T: Scalar> Default for Poly<T> {
    fn default() -> Self {
        Poly::zero()
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $inner:ident) => {
        impl<T: Scalar> $trait<&Poly<T>> for &Poly<T> {
            type Output = Poly<T>;
            fn $method(self, rhs: &Poly<T>) -> Poly<T> {
                self.$inner(rhs)
            }
        }
        impl<T: Scalar> $trait<Poly<T>> for Poly<T> {
            type Output = Poly<T>;
            fn $method(self, rhs: Poly<T>) -> Poly<T> {
                self.$inner(&rhs)
            }
        }
        impl<T: Scalar> $trait<&Poly<T>> for Poly<T> {
            type Output = Poly<T>;
            fn $method(self, rhs: &Poly<T>) -> Poly<T> {
                self.$inner(rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl<T: Scalar> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl<T: Scalar> Neg for Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        -&self
    }
}

impl<T: Scalar> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (q, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = *c < T::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            first = false;
            let show_coeff = q == 0 || !abs.is_one();
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match q {
                0 => {}
                1 => write!(f, "y")?,
                _ => write!(f, "y^{q}")?,
            }
        }
        Ok(())
    }
}

/// Exact `C(n, k)`; zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    BigInt::from(acc)
}

/// `C(n, k)` in machine integers, `None` on overflow.
pub fn binomial_u64(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul(u128::from(n - i))? / u128::from(i + 1);
    }
    u64::try_from(acc).ok()
}

pub(crate) fn checked_binomial(n: u64, k: u64) -> Result<u64> {
    binomial_u64(n, k).ok_or(Error::BinomialOverflow { n, k })
}

/// Number of `b`-node sets that straddle a `k` / `n - k` split:
/// `C(n, b) - C(k, b) - C(n - k, b)`.
pub fn mix_exponent(n: u64, k: u64, b: u32) -> Result<u64> {
    if k > n {
        return Err(Error::KExceedsN { n, k });
    }
    let b = u64::from(b);
    let all = checked_binomial(n, b)?;
    let left = checked_binomial(k, b)?;
    let right = checked_binomial(n - k, b)?;
    Ok(all - left - right)
}
