//! Truncated power series in `x` with polynomial-in-`y` coefficients.
//!
//! Two conventions share the same storage, a vector `f_0(y), ..., f_N(y)`:
//!
//! * [`Egf`] reads it as `sum f_n(y) x^n / n!`.
//! * [`Hgf`] (graded form) reads it as `sum f_n(y) x^n / (n! (1+y)^C(n,b))`.
//!
//! The `(1+y)^C(n,b)` denominators are never materialised. Converting
//! between the two conventions is a re-tag, and the product of two graded
//! series picks up the straddling factor `(1+y)^(C(n,b) - C(k,b) - C(n-k,b))`
//! so that everything stays in integer polynomials.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::poly::{mix_exponent, Poly};
use crate::scalar::Scalar;

/// Exponential generating function truncated at `x^N` (inclusive).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Egf<T> {
    b: u32,
    coeffs: Vec<Poly<T>>,
}

/// Hypergraphic generating function in graded form, truncated at `x^N`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Hgf<T> {
    b: u32,
    coeffs: Vec<Poly<T>>,
}

fn check_shape<T>(b: u32, coeffs: &[Poly<T>]) -> Result<()> {
    if b < 2 {
        return Err(Error::InvalidUniformity(b));
    }
    if coeffs.is_empty() {
        return Err(Error::EmptySeries);
    }
    Ok(())
}

fn check_same(lhs: (u32, usize), rhs: (u32, usize)) -> Result<()> {
    if lhs != rhs {
        return Err(Error::SeriesMismatch {
            lhs_b: lhs.0,
            lhs_n: lhs.1,
            rhs_b: rhs.0,
            rhs_n: rhs.1,
        });
    }
    Ok(())
}

/// Rows `0..=n` of Pascal's triangle in the scalar ring.
pub(crate) fn pascal<T: Scalar>(n: usize) -> Vec<Vec<T>> {
    let mut rows: Vec<Vec<T>> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut row = vec![T::one(); i + 1];
        for j in 1..i {
            row[j] = rows[i - 1][j - 1].clone() + rows[i - 1][j].clone();
        }
        rows.push(row);
    }
    rows
}

/// Caches `(1+y)^m` rows across the terms of one product.
struct BinomialRows<T> {
    rows: HashMap<u64, Poly<T>>,
}

impl<T: Scalar> BinomialRows<T> {
    fn new() -> Self {
        BinomialRows {
            rows: HashMap::new(),
        }
    }

    fn times(&mut self, p: &Poly<T>, m: u64) -> Poly<T> {
        if m <= 8 {
            return p.mul_one_plus_y_pow(m);
        }
        let row = self
            .rows
            .entry(m)
            .or_insert_with(|| Poly::one_plus_y_pow(m));
        p * &*row
    }
}

macro_rules! common_impl {
    ($ty:ident) => {
        impl<T: Scalar> $ty<T> {
            pub fn new(b: u32, coeffs: Vec<Poly<T>>) -> Result<Self> {
                check_shape(b, &coeffs)?;
                Ok($ty { b, coeffs })
            }

            pub fn zero(b: u32, order: usize) -> Result<Self> {
                Self::new(b, vec![Poly::zero(); order + 1])
            }

            /// The series `1`.
            pub fn one(b: u32, order: usize) -> Result<Self> {
                let mut s = Self::zero(b, order)?;
                s.coeffs[0] = Poly::one();
                Ok(s)
            }

            pub fn b(&self) -> u32 {
                self.b
            }

            /// Truncation order `N`; coefficients `0..=N` are stored.
            pub fn order(&self) -> usize {
                self.coeffs.len() - 1
            }

            pub fn coeffs(&self) -> &[Poly<T>] {
                &self.coeffs
            }

            pub fn into_coeffs(self) -> Vec<Poly<T>> {
                self.coeffs
            }

            pub fn coeff(&self, n: usize) -> &Poly<T> {
                &self.coeffs[n]
            }

            pub fn is_one(&self) -> bool {
                self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Poly::is_zero)
            }

            fn shape(&self) -> (u32, usize) {
                (self.b, self.order())
            }

            pub fn add(&self, other: &Self) -> Result<Self> {
                check_same(self.shape(), other.shape())?;
                let coeffs = self
                    .coeffs
                    .iter()
                    .zip(&other.coeffs)
                    .map(|(f, g)| f + g)
                    .collect();
                Ok($ty { b: self.b, coeffs })
            }

            pub fn sub(&self, other: &Self) -> Result<Self> {
                check_same(self.shape(), other.shape())?;
                let coeffs = self
                    .coeffs
                    .iter()
                    .zip(&other.coeffs)
                    .map(|(f, g)| f - g)
                    .collect();
                Ok($ty { b: self.b, coeffs })
            }

            pub fn neg(&self) -> Self {
                $ty {
                    b: self.b,
                    coeffs: self.coeffs.iter().map(|f| -f).collect(),
                }
            }

            /// Specialises every coefficient at `y = y0`.
            pub fn eval_y(&self, y0: &T) -> Vec<T> {
                self.coeffs.iter().map(|f| f.eval(y0)).collect()
            }
        }
    };
}

common_impl!(Egf);
common_impl!(Hgf);

impl<T: Scalar> Egf<T> {
    /// `sum x^n / n!`
    pub fn exp_x(b: u32, order: usize) -> Result<Self> {
        Self::new(b, vec![Poly::one(); order + 1])
    }

    /// The Delta operator: same numerators, now read with the
    /// `(1+y)^C(n,b)` denominators.
    pub fn delta(&self) -> Hgf<T> {
        Hgf {
            b: self.b,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn into_delta(self) -> Hgf<T> {
        Hgf {
            b: self.b,
            coeffs: self.coeffs,
        }
    }

    /// Exponential Hadamard product: coefficientwise `f_n g_n`.
    pub fn hadamard(&self, other: &Self) -> Result<Self> {
        check_same(self.shape(), other.shape())?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(f, g)| f * g)
            .collect();
        Ok(Egf { b: self.b, coeffs })
    }

    /// Ordinary EGF product (binomial convolution).
    pub fn mul(&self, other: &Self) -> Result<Self> {
        check_same(self.shape(), other.shape())?;
        let order = self.order();
        let binom = pascal::<T>(order);
        let mut coeffs = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut c = Poly::zero();
            for k in 0..=n {
                let (f, g) = (&self.coeffs[k], &other.coeffs[n - k]);
                if f.is_zero() || g.is_zero() {
                    continue;
                }
                c = c + (f * g).scale(&binom[n][k]);
            }
            coeffs.push(c);
        }
        Ok(Egf { b: self.b, coeffs })
    }

    /// `exp(f)` for `f_0 = 0`, via `e_n = sum_{k=1}^n C(n-1, k-1) f_k e_{n-k}`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::BadConstantTerm {
                op: "exp",
                expected: "0",
            });
        }
        let order = self.order();
        let binom = pascal::<T>(order);
        let mut e: Vec<Poly<T>> = Vec::with_capacity(order + 1);
        e.push(Poly::one());
        for n in 1..=order {
            let mut acc = Poly::zero();
            for k in 1..=n {
                let f = &self.coeffs[k];
                if f.is_zero() || e[n - k].is_zero() {
                    continue;
                }
                acc = acc + (f * &e[n - k]).scale(&binom[n - 1][k - 1]);
            }
            e.push(acc);
        }
        Ok(Egf {
            b: self.b,
            coeffs: e,
        })
    }

    /// Inverse of [`Egf::exp`] for `e_0 = 1`, via
    /// `f_n = e_n - sum_{k=1}^{n-1} C(n-1, k-1) f_k e_{n-k}`.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::BadConstantTerm {
                op: "log",
                expected: "1",
            });
        }
        let order = self.order();
        let binom = pascal::<T>(order);
        let mut f: Vec<Poly<T>> = Vec::with_capacity(order + 1);
        f.push(Poly::zero());
        for n in 1..=order {
            let mut acc = self.coeffs[n].clone();
            for k in 1..n {
                if f[k].is_zero() || self.coeffs[n - k].is_zero() {
                    continue;
                }
                acc = acc - (&f[k] * &self.coeffs[n - k]).scale(&binom[n - 1][k - 1]);
            }
            f.push(acc);
        }
        Ok(Egf {
            b: self.b,
            coeffs: f,
        })
    }
}

impl<T: Scalar> Hgf<T> {
    /// `theta_b`: HGF of sets of isolated nodes; stored numerators all `1`.
    pub fn theta(b: u32, order: usize) -> Result<Self> {
        Ok(Egf::exp_x(b, order)?.into_delta())
    }

    /// `phi`: HGF of the sequence `(-1)^n`.
    pub fn phi(b: u32, order: usize) -> Result<Self> {
        let coeffs = (0..=order)
            .map(|n| {
                if n % 2 == 0 {
                    Poly::one()
                } else {
                    -Poly::one()
                }
            })
            .collect();
        Self::new(b, coeffs)
    }

    /// Inverse of the Delta operator.
    pub fn undelta(&self) -> Egf<T> {
        Egf {
            b: self.b,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn into_undelta(self) -> Egf<T> {
        Egf {
            b: self.b,
            coeffs: self.coeffs,
        }
    }

    /// Ordinary product of the two HGFs as `x`-series, in stored
    /// coordinates: `c_n = sum_k C(n,k) (1+y)^mix(n,k,b) f_k g_{n-k}`.
    /// Combinatorially this is the HGF of the arrow product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        check_same(self.shape(), other.shape())?;
        let order = self.order();
        let binom = pascal::<T>(order);
        let mut rows = BinomialRows::new();
        let mut coeffs = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut c = Poly::zero();
            for k in 0..=n {
                let (f, g) = (&self.coeffs[k], &other.coeffs[n - k]);
                if f.is_zero() || g.is_zero() {
                    continue;
                }
                let m = mix_exponent(n as u64, k as u64, self.b)?;
                c = c + rows.times(&(f * g), m).scale(&binom[n][k]);
            }
            coeffs.push(c);
        }
        Ok(Hgf { b: self.b, coeffs })
    }

    /// Multiplicative inverse for `f_0 = 1`, by the triangular recurrence
    /// `g_n = -sum_{k=1}^n C(n,k) (1+y)^mix(n,k,b) f_k g_{n-k}`.
    pub fn reciprocal(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::BadConstantTerm {
                op: "reciprocal",
                expected: "1",
            });
        }
        let order = self.order();
        let binom = pascal::<T>(order);
        let mut rows = BinomialRows::new();
        let mut g: Vec<Poly<T>> = Vec::with_capacity(order + 1);
        g.push(Poly::one());
        for n in 1..=order {
            let mut acc = Poly::zero();
            for k in 1..=n {
                let f = &self.coeffs[k];
                if f.is_zero() || g[n - k].is_zero() {
                    continue;
                }
                let m = mix_exponent(n as u64, k as u64, self.b)?;
                acc = acc + rows.times(&(f * &g[n - k]), m).scale(&binom[n][k]);
            }
            g.push(-acc);
        }
        Ok(Hgf {
            b: self.b,
            coeffs: g,
        })
    }
}
