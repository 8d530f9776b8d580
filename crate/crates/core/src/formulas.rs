//! Counting pipelines built on the graded series algebra.
//!
//! Every printed identity is computed exactly as stated, including the ones
//! that do not enumerate anything for `b >= 3`. Where a printed form is
//! already wrong at `n = 1` or `n = 2` a corrected variant sits next to it
//! under its own [`Method`]; which of them matches ground truth is decided
//! by the harness, never here.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{checked_binomial, mix_exponent, Poly};
use crate::scalar::Scalar;
use crate::series::{pascal, Egf, Hgf};

/// Largest `n` accepted by the composition sum unless a cap is given.
pub const COMPOSITIONS_MAX_N: usize = 12;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Total,
    Acyclic,
    Strong,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// `(1+y)^((2^b-2) C(n,b))`
    ClosedForm,
    /// Acyclic: reciprocal of `phi`.
    Reciprocal,
    /// Acyclic: inclusion-exclusion recurrence.
    Recurrence,
    /// Acyclic: composition sum with sign `(-1)^(n+j)`.
    Compositions,
    /// Acyclic: composition sum with the printed sign `(-1)^j`.
    CompositionsPrinted,
    /// Strong: `-log(Delta^-1(1/H))`.
    Inversion,
    /// Strong: lambda recurrence with `lambda_{n-1}` inside the sum.
    LambdaPrinted,
    /// Strong: lambda recurrence with `lambda_{n-t}` inside the sum.
    LambdaCorrected,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Total, Family::Acyclic, Family::Strong];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Total => "total",
            Family::Acyclic => "acyclic",
            Family::Strong => "strong",
        }
    }

    pub fn default_method(self) -> Method {
        match self {
            Family::Total => Method::ClosedForm,
            Family::Acyclic => Method::Reciprocal,
            Family::Strong => Method::Inversion,
        }
    }

    pub fn methods(self) -> &'static [Method] {
        match self {
            Family::Total => &[Method::ClosedForm],
            Family::Acyclic => &[
                Method::Reciprocal,
                Method::Recurrence,
                Method::Compositions,
                Method::CompositionsPrinted,
            ],
            Family::Strong => &[
                Method::Inversion,
                Method::LambdaPrinted,
                Method::LambdaCorrected,
            ],
        }
    }
}

impl Method {
    pub const ALL: [Method; 8] = [
        Method::ClosedForm,
        Method::Reciprocal,
        Method::Recurrence,
        Method::Compositions,
        Method::CompositionsPrinted,
        Method::Inversion,
        Method::LambdaPrinted,
        Method::LambdaCorrected,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed-form",
            Method::Reciprocal => "reciprocal",
            Method::Recurrence => "recurrence",
            Method::Compositions => "compositions",
            Method::CompositionsPrinted => "compositions-printed",
            Method::Inversion => "inversion",
            Method::LambdaPrinted => "lambda-printed",
            Method::LambdaCorrected => "lambda-corrected",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::UnknownName {
                kind: "family",
                value: s.to_string(),
            })
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::UnknownName {
                kind: "method",
                value: s.to_string(),
            })
    }
}

/// Claimed counts: `counts[n]` has `y^q` coefficient equal to the number of
/// `n`-node, `q`-hyperarc structures in the family (if the method is right).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CountSeq<T> {
    pub b: u32,
    pub family: Family,
    pub method: Method,
    pub counts: Vec<Poly<T>>,
}

impl<T: Scalar> CountSeq<T> {
    pub fn order(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn eval(&self, y0: &T) -> Vec<T> {
        self.counts.iter().map(|p| p.eval(y0)).collect()
    }

    /// Reads the counts as graded HGF numerators.
    pub fn to_hgf(&self) -> Result<Hgf<T>> {
        Hgf::new(self.b, self.counts.clone())
    }

    /// Node counts `n` whose polynomial cannot be a census: a negative
    /// coefficient, or degree above the number of available hyperarcs.
    pub fn implausible_orders(&self) -> Vec<usize> {
        self.counts
            .iter()
            .enumerate()
            .filter(|(n, p)| {
                let max = total_hyperarc_count(*n as u64, self.b).ok();
                let too_high = match (p.degree(), max) {
                    (Some(d), Some(m)) => d as u64 > m,
                    _ => false,
                };
                too_high || p.coeffs().iter().any(|c| *c < T::zero())
            })
            .map(|(n, _)| n)
            .collect()
    }
}

fn check_b(b: u32) -> Result<()> {
    if b < 2 {
        return Err(Error::InvalidUniformity(b));
    }
    Ok(())
}

/// Number of possible hyperarcs on `n` nodes: `(2^b - 2) C(n, b)`.
pub fn total_hyperarc_count(n: u64, b: u32) -> Result<u64> {
    check_b(b)?;
    let orientations = 1u64
        .checked_shl(b)
        .filter(|_| b < 64)
        .ok_or(Error::BinomialOverflow { n, k: u64::from(b) })?
        - 2;
    let sets = checked_binomial(n, u64::from(b))?;
    orientations
        .checked_mul(sets)
        .ok_or(Error::BinomialOverflow { n, k: u64::from(b) })
}

/// All dihypergraphs: `h_n = (1+y)^((2^b-2) C(n,b))`. The graded form stores
/// the same numerators; its implicit denominator accounts for the drop to
/// `(2^b-3) C(n,b)` in the HGF.
pub fn all_dihypergraphs<T: Scalar>(b: u32, order: usize) -> Result<(CountSeq<T>, Hgf<T>)> {
    check_b(b)?;
    let counts = (0..=order)
        .map(|n| total_hyperarc_count(n as u64, b).map(Poly::one_plus_y_pow))
        .collect::<Result<Vec<_>>>()?;
    let graded = Hgf::new(b, counts.clone())?;
    Ok((
        CountSeq {
            b,
            family: Family::Total,
            method: Method::ClosedForm,
            counts,
        },
        graded,
    ))
}

/// Acyclic counts as the stored coefficients of `1 / phi`.
pub fn acyclic_via_reciprocal<T: Scalar>(b: u32, order: usize) -> Result<CountSeq<T>> {
    let a = Hgf::<T>::phi(b, order)?.reciprocal()?;
    Ok(CountSeq {
        b,
        family: Family::Acyclic,
        method: Method::Reciprocal,
        counts: a.into_coeffs(),
    })
}

/// `a_n = sum_{k=1}^n (-1)^(k-1) C(n,k) (1+y)^mix(n,k,b) a_{n-k}`, `a_0 = 1`.
pub fn acyclic_via_recurrence<T: Scalar>(b: u32, order: usize) -> Result<CountSeq<T>> {
    check_b(b)?;
    let binom = pascal::<T>(order);
    let mut a: Vec<Poly<T>> = vec![Poly::one()];
    for n in 1..=order {
        let mut acc = Poly::zero();
        for k in 1..=n {
            let m = mix_exponent(n as u64, k as u64, b)?;
            let term = a[n - k].mul_one_plus_y_pow(m).scale(&binom[n][k]);
            acc = if k % 2 == 1 { acc + term } else { acc - term };
        }
        a.push(acc);
    }
    Ok(CountSeq {
        b,
        family: Family::Acyclic,
        method: Method::Recurrence,
        counts: a,
    })
}

/// Sign convention for the explicit composition sum.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CompositionSign {
    /// `(-1)^(n+j)`, which gives `a_1 = 1`.
    Corrected,
    /// `(-1)^j` as printed, which gives `a_1 = -1`.
    AsPrinted,
}

/// `sum_j sign(n,j) sum_{n_1+..+n_j=n} multinomial(n; n_i) (1+y)^(C(n,b) - sum C(n_i,b))`.
///
/// Walks all `2^(n-1)` compositions, so `n` is capped.
pub fn acyclic_via_compositions<T: Scalar>(
    n: usize,
    b: u32,
    sign: CompositionSign,
) -> Result<Poly<T>> {
    acyclic_via_compositions_capped(n, b, sign, COMPOSITIONS_MAX_N)
}

pub fn acyclic_via_compositions_capped<T: Scalar>(
    n: usize,
    b: u32,
    sign: CompositionSign,
    cap: usize,
) -> Result<Poly<T>> {
    check_b(b)?;
    if n > cap || n > 40 {
        return Err(Error::CompositionsTooLarge { n, cap });
    }
    if n == 0 {
        return Ok(Poly::one());
    }
    let mut factorial = vec![T::one()];
    for i in 1..=n {
        let next = factorial[i - 1].clone() * T::from_count(i as u64);
        factorial.push(next);
    }
    let full = checked_binomial(n as u64, u64::from(b))?;
    // exponent -> signed multiplicity
    let mut by_exponent: BTreeMap<u64, T> = BTreeMap::new();
    for cuts in 0u64..(1u64 << (n - 1)) {
        let mut parts = Vec::with_capacity(n);
        let mut run = 1usize;
        for i in 0..n - 1 {
            if cuts >> i & 1 == 1 {
                parts.push(run);
                run = 1;
            } else {
                run += 1;
            }
        }
        parts.push(run);
        let j = parts.len();
        let mut multinomial = factorial[n].clone();
        let mut inner = 0u64;
        for &part in &parts {
            multinomial /= factorial[part].clone();
            inner += checked_binomial(part as u64, u64::from(b))?;
        }
        let negative = match sign {
            CompositionSign::Corrected => (n + j) % 2 == 1,
            CompositionSign::AsPrinted => j % 2 == 1,
        };
        let entry = by_exponent.entry(full - inner).or_insert_with(T::zero);
        if negative {
            *entry -= multinomial;
        } else {
            *entry += multinomial;
        }
    }
    Ok(by_exponent
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .fold(Poly::zero(), |acc, (e, c)| {
            acc + Poly::one_plus_y_pow(e).scale(&c)
        }))
}

fn acyclic_compositions_seq<T: Scalar>(
    b: u32,
    order: usize,
    sign: CompositionSign,
) -> Result<CountSeq<T>> {
    let counts = (0..=order)
        .map(|n| acyclic_via_compositions(n, b, sign))
        .collect::<Result<Vec<_>>>()?;
    Ok(CountSeq {
        b,
        family: Family::Acyclic,
        method: match sign {
            CompositionSign::Corrected => Method::Compositions,
            CompositionSign::AsPrinted => Method::CompositionsPrinted,
        },
        counts,
    })
}

/// Strong counts from `H = (Delta(exp(-s)))^-1`, where the outer inverse is
/// the ordinary `x`-series reciprocal. `counts[0] = 0`.
pub fn strong_via_inversion<T: Scalar>(b: u32, order: usize) -> Result<CountSeq<T>> {
    let (_, h) = all_dihypergraphs::<T>(b, order)?;
    let exp_neg_s = h.reciprocal()?.into_undelta();
    let s = exp_neg_s.log()?.neg();
    Ok(CountSeq {
        b,
        family: Family::Strong,
        method: Method::Inversion,
        counts: s.into_coeffs(),
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LambdaVariant {
    /// `lambda_{n-1}` inside the sum, as printed.
    AsPrinted,
    /// `lambda_{n-t}` inside the sum.
    IndexCorrected,
}

impl LambdaVariant {
    pub fn method(self) -> Method {
        match self {
            LambdaVariant::AsPrinted => Method::LambdaPrinted,
            LambdaVariant::IndexCorrected => Method::LambdaCorrected,
        }
    }
}

/// The lambda recurrence for strong counts:
///
/// `lambda_n = (1+y)^((2^b-2)C(n,b)) - sum_{t=1}^{n-1} C(n,t) (1+y)^((2^b-2)C(t,b)) lambda_?`
/// `s_n = lambda_n + sum_{t=1}^{n-1} C(n-1,t) s_{n-t} lambda_t`
///
/// Returns `(lambda, s)` with `lambda[0]` and `s[0]` set to zero; neither
/// index is read by the recurrence.
pub fn lambda_recurrence<T: Scalar>(
    b: u32,
    order: usize,
    variant: LambdaVariant,
) -> Result<(Vec<Poly<T>>, CountSeq<T>)> {
    check_b(b)?;
    let binom = pascal::<T>(order);
    let arcs = |n: usize| total_hyperarc_count(n as u64, b);
    let mut lambda: Vec<Poly<T>> = vec![Poly::zero()];
    for n in 1..=order {
        let mut acc = Poly::one_plus_y_pow(arcs(n)?);
        for t in 1..n {
            let inner = match variant {
                LambdaVariant::AsPrinted => &lambda[n - 1],
                LambdaVariant::IndexCorrected => &lambda[n - t],
            };
            acc = acc - inner.mul_one_plus_y_pow(arcs(t)?).scale(&binom[n][t]);
        }
        lambda.push(acc);
    }
    let mut s: Vec<Poly<T>> = vec![Poly::zero()];
    for n in 1..=order {
        let mut acc = lambda[n].clone();
        for t in 1..n {
            acc = acc + (&s[n - t] * &lambda[t]).scale(&binom[n - 1][t]);
        }
        s.push(acc);
    }
    Ok((
        lambda,
        CountSeq {
            b,
            family: Family::Strong,
            method: variant.method(),
            counts: s,
        },
    ))
}

/// Runs `method` for `family` through order `N`.
pub fn count_sequence<T: Scalar>(
    family: Family,
    method: Method,
    b: u32,
    order: usize,
) -> Result<CountSeq<T>> {
    match (family, method) {
        (Family::Total, Method::ClosedForm) => Ok(all_dihypergraphs(b, order)?.0),
        (Family::Acyclic, Method::Reciprocal) => acyclic_via_reciprocal(b, order),
        (Family::Acyclic, Method::Recurrence) => acyclic_via_recurrence(b, order),
        (Family::Acyclic, Method::Compositions) => {
            acyclic_compositions_seq(b, order, CompositionSign::Corrected)
        }
        (Family::Acyclic, Method::CompositionsPrinted) => {
            acyclic_compositions_seq(b, order, CompositionSign::AsPrinted)
        }
        (Family::Strong, Method::Inversion) => strong_via_inversion(b, order),
        (Family::Strong, Method::LambdaPrinted) => {
            Ok(lambda_recurrence(b, order, LambdaVariant::AsPrinted)?.1)
        }
        (Family::Strong, Method::LambdaCorrected) => {
            Ok(lambda_recurrence(b, order, LambdaVariant::IndexCorrected)?.1)
        }
        _ => Err(Error::UnsupportedMethod {
            family: family.to_string(),
            method: method.to_string(),
        }),
    }
}

/// Convenience: `(-1)^n` as an EGF, i.e. `exp(-x)`.
pub fn exp_neg_x<T: Scalar>(b: u32, order: usize) -> Result<Egf<T>> {
    Egf::new(
        b,
        (0..=order)
            .map(|n| {
                if n % 2 == 0 {
                    Poly::one()
                } else {
                    -Poly::one()
                }
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::One;

    type P = Poly<BigInt>;

    fn p(cs: &[i64]) -> P {
        Poly::from_coeffs(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn at_one(seq: &CountSeq<BigInt>) -> Vec<i64> {
        seq.eval(&BigInt::one())
            .into_iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect()
    }

    #[test]
    fn total_hyperarcs() {
        assert_eq!(total_hyperarc_count(3, 2).unwrap(), 6);
        assert_eq!(total_hyperarc_count(3, 3).unwrap(), 6);
        assert_eq!(total_hyperarc_count(4, 3).unwrap(), 24);
        assert_eq!(total_hyperarc_count(2, 3).unwrap(), 0);
        assert!(total_hyperarc_count(3, 1).is_err());
    }

    #[test]
    fn all_dihypergraph_examples() {
        let (seq, h) = all_dihypergraphs::<BigInt>(2, 3).unwrap();
        assert_eq!(seq.counts[3], P::one_plus_y_pow(6));
        assert_eq!(seq.counts[3].total(), BigInt::from(64));
        assert_eq!(seq.counts[2], p(&[1, 2, 1]));
        assert_eq!(h.coeffs(), &seq.counts[..]);
        let (seq3, _) = all_dihypergraphs::<BigInt>(3, 3).unwrap();
        assert_eq!(seq3.counts[3], P::one_plus_y_pow(6));
    }

    #[test]
    fn acyclic_examples() {
        let a = acyclic_via_reciprocal::<BigInt>(2, 5).unwrap();
        assert_eq!(at_one(&a), vec![1, 1, 3, 25, 543, 29281]);
        assert_eq!(a.counts[3], p(&[1, 6, 12, 6]));

        let a3 = acyclic_via_reciprocal::<BigInt>(3, 4).unwrap();
        assert_eq!(a3.counts[3], P::one());
        assert_eq!(a3.counts[4].total(), BigInt::from(-33));
        assert_eq!(a3.implausible_orders(), vec![4]);

        let r = acyclic_via_recurrence::<BigInt>(2, 2).unwrap();
        assert_eq!(r.counts[2], p(&[1, 2]));
        let r3 = acyclic_via_recurrence::<BigInt>(3, 3).unwrap();
        assert_eq!(r3.counts[3], P::one());
    }

    #[test]
    fn reciprocal_equals_recurrence() {
        for b in 2..=4 {
            let a = acyclic_via_reciprocal::<BigInt>(b, 10).unwrap();
            let r = acyclic_via_recurrence::<BigInt>(b, 10).unwrap();
            assert_eq!(a.counts, r.counts, "b={b}");
        }
    }

    #[test]
    fn composition_examples() {
        for b in 2..=5 {
            assert_eq!(
                acyclic_via_compositions::<BigInt>(1, b, CompositionSign::Corrected).unwrap(),
                P::one()
            );
            assert_eq!(
                acyclic_via_compositions::<BigInt>(1, b, CompositionSign::AsPrinted).unwrap(),
                -P::one()
            );
        }
        assert_eq!(
            acyclic_via_compositions::<BigInt>(2, 2, CompositionSign::Corrected).unwrap(),
            p(&[1, 2])
        );
        for b in 2..=3 {
            let r = acyclic_via_recurrence::<BigInt>(b, 8).unwrap();
            for n in 0..=8 {
                assert_eq!(
                    acyclic_via_compositions::<BigInt>(n, b, CompositionSign::Corrected).unwrap(),
                    r.counts[n],
                    "n={n} b={b}"
                );
            }
        }
        assert!(matches!(
            acyclic_via_compositions::<BigInt>(13, 2, CompositionSign::Corrected),
            Err(Error::CompositionsTooLarge { .. })
        ));
    }

    #[test]
    fn as_printed_composition_sign_flips_odd_n() {
        let r = acyclic_via_recurrence::<BigInt>(3, 7).unwrap();
        for n in 0..=7 {
            let printed =
                acyclic_via_compositions::<BigInt>(n, 3, CompositionSign::AsPrinted).unwrap();
            let expected = if n % 2 == 1 {
                -&r.counts[n]
            } else {
                r.counts[n].clone()
            };
            assert_eq!(printed, expected);
        }
    }

    #[test]
    fn strong_examples() {
        let s = strong_via_inversion::<BigInt>(2, 5).unwrap();
        assert_eq!(at_one(&s), vec![0, 1, 1, 18, 1606, 565080]);
        assert_eq!(s.counts[2], p(&[0, 0, 1]));
        assert!(s.counts[0].is_zero());
    }

    #[test]
    fn strong_pipeline_is_consistent() {
        for b in 2..=4 {
            let order = 8;
            let s = strong_via_inversion::<BigInt>(b, order).unwrap();
            let (_, h) = all_dihypergraphs::<BigInt>(b, order).unwrap();
            let e = Egf::new(b, s.counts.clone()).unwrap().neg().exp().unwrap();
            assert!(e.delta().mul(&h).unwrap().is_one(), "b={b}");
        }
    }

    #[test]
    fn lambda_examples() {
        let (lambda, s) = lambda_recurrence::<BigInt>(2, 5, LambdaVariant::IndexCorrected).unwrap();
        assert_eq!(lambda[1], P::one());
        assert_eq!(lambda[2], p(&[-1, 2, 1]));
        assert_eq!(s.counts[2], p(&[0, 2, 1]));
        let (lp, sp) = lambda_recurrence::<BigInt>(2, 5, LambdaVariant::AsPrinted).unwrap();
        assert_eq!(lp[2], lambda[2]);
        assert_eq!(sp.counts[2], s.counts[2]);
        assert_ne!(lp[3], lambda[3]);
    }

    #[test]
    fn dispatch() {
        assert!(count_sequence::<BigInt>(Family::Strong, Method::Reciprocal, 2, 3).is_err());
        for family in Family::ALL {
            for &method in family.methods() {
                let seq = count_sequence::<BigInt>(family, method, 3, 5).unwrap();
                assert_eq!(seq.order(), 5);
                assert_eq!(seq.method, method);
            }
        }
        assert_eq!(
            "lambda-printed".parse::<Method>().unwrap(),
            Method::LambdaPrinted
        );
        assert!("nope".parse::<Family>().is_err());
    }

    #[test]
    fn exp_neg_x_delta_is_phi() {
        assert_eq!(
            exp_neg_x::<BigInt>(3, 6).unwrap().delta(),
            Hgf::phi(3, 6).unwrap()
        );
    }
}
