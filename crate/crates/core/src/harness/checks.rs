//! Named check suites behind `dihyper check`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::compare::{lambda_verdict, marked_component_check, marked_source_check};
use crate::error::{Error, Result};
use crate::formulas::{
    acyclic_via_compositions, acyclic_via_reciprocal, acyclic_via_recurrence, all_dihypergraphs,
    strong_via_inversion, total_hyperarc_count, CompositionSign,
};
use crate::oracle::fixtures::Fixture;
use crate::oracle::{census_with, hyperarc_universe, CensusOptions};
use crate::poly::{binomial_u64, mix_exponent};
use crate::series::{Egf, Hgf};
use crate::{BigInt, YPoly};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// Recorded outcome of a claim under adjudication; never fails a run.
    Finding,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl CheckOutcome {
    fn pass_if(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        CheckOutcome {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            detail: detail.into(),
        }
    }

    fn finding(name: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckOutcome {
            name: name.into(),
            status: Status::Finding,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Finding => "FIND",
        };
        write!(f, "[{tag}] {}", self.name)?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Suite {
    Identities,
    MarkedSource,
    Fixtures,
    Lambda,
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "identities" => Ok(Suite::Identities),
            "marked-source" => Ok(Suite::MarkedSource),
            "fixtures" => Ok(Suite::Fixtures),
            "lambda" => Ok(Suite::Lambda),
            _ => Err(Error::UnknownName {
                kind: "suite",
                value: s.to_string(),
            }),
        }
    }
}

pub fn run_suite(suite: Suite, opts: &CensusOptions) -> Result<Vec<CheckOutcome>> {
    match suite {
        Suite::Identities => identities(10, opts),
        Suite::MarkedSource => marked_source(opts),
        Suite::Fixtures => fixtures(),
        Suite::Lambda => lambda(),
    }
}

/// Algebraic identities for `b` in 2..=4 up to order `order`.
pub fn identities(order: usize, opts: &CensusOptions) -> Result<Vec<CheckOutcome>> {
    let mut out = Vec::new();
    for b in 2..=4u32 {
        let phi = Hgf::<BigInt>::phi(b, order)?;
        let a = acyclic_via_reciprocal::<BigInt>(b, order)?;
        let a_hgf = a.to_hgf()?;
        out.push(CheckOutcome::pass_if(
            format!("b={b}: A * phi = 1 up to N={order}"),
            a_hgf.mul(&phi)?.is_one(),
            "",
        ));

        let (_, h) = all_dihypergraphs::<BigInt>(b, order)?;
        let s = strong_via_inversion::<BigInt>(b, order)?;
        let s_egf = Egf::new(b, s.counts.clone())?;
        let exp_neg_s = s_egf.neg().exp()?;
        out.push(CheckOutcome::pass_if(
            format!("b={b}: Delta(exp(-s)) * H = 1 up to N={order}"),
            exp_neg_s.delta().mul(&h)?.is_one(),
            "",
        ));

        out.push(CheckOutcome::pass_if(
            format!("b={b}: Delta round trips"),
            a_hgf.undelta().delta() == a_hgf && exp_neg_s.delta().undelta() == exp_neg_s,
            "",
        ));
        out.push(CheckOutcome::pass_if(
            format!("b={b}: exp/log round trips"),
            exp_neg_s.log()? == s_egf.neg() && exp_neg_s.log()?.exp()? == exp_neg_s,
            "",
        ));

        let rec = acyclic_via_recurrence::<BigInt>(b, order)?;
        let comp_n = order.min(8);
        let comps = (0..=comp_n)
            .map(|n| acyclic_via_compositions::<BigInt>(n, b, CompositionSign::Corrected))
            .collect::<Result<Vec<YPoly>>>()?;
        out.push(CheckOutcome::pass_if(
            format!(
                "b={b}: acyclic reciprocal = recurrence (n<={order}) = compositions (n<={comp_n})"
            ),
            rec.counts == a.counts && comps[..] == a.counts[..=comp_n],
            "",
        ));
    }

    let mut vandermonde = true;
    for b in 2..=5u32 {
        for n in 0..=20u64 {
            for k in 0..=n {
                let sum: u64 = (1..u64::from(b))
                    .map(|i| {
                        binomial_u64(k, i).unwrap_or(0)
                            * binomial_u64(n - k, u64::from(b) - i).unwrap_or(0)
                    })
                    .sum();
                vandermonde &= mix_exponent(n, k, b)? == sum;
            }
        }
    }
    out.push(CheckOutcome::pass_if(
        "mix exponent = Vandermonde sum (n<=20, b<=5)",
        vandermonde,
        "",
    ));

    let mut universe_ok = true;
    for b in 2..=4u32 {
        for n in 0..=8usize {
            universe_ok &=
                hyperarc_universe(n, b)?.len() as u64 == total_hyperarc_count(n as u64, b)?;
        }
    }
    out.push(CheckOutcome::pass_if(
        "universe size = (2^b-2) C(n,b) (n<=8, b<=4)",
        universe_ok,
        "",
    ));

    for (n, b) in [(2usize, 2u32), (3, 2), (4, 2), (3, 3)] {
        let t = census_with(n, b, opts)?;
        let expected = YPoly::one_plus_y_pow(total_hyperarc_count(n as u64, b)?);
        out.push(CheckOutcome::pass_if(
            format!(
                "census totals n={n} b={b} = (1+y)^{}",
                total_hyperarc_count(n as u64, b)?
            ),
            t.family_poly::<BigInt>(crate::Family::Total) == expected && t.sourceless == 0,
            format!("{} dihypergraphs", t.total_count()),
        ));
    }
    Ok(out)
}

pub fn marked_source(opts: &CensusOptions) -> Result<Vec<CheckOutcome>> {
    let mut out = Vec::new();
    for n in 0..=4 {
        for u0 in 0..=3 {
            let c = marked_source_check(2, n, u0, opts)?;
            out.push(CheckOutcome::pass_if(
                format!("acyclic sources b=2 n={n} u0={u0}"),
                c.equal,
                format!("residual {}", c.residual_poly()),
            ));
            let c = marked_component_check(2, n, u0, opts)?;
            out.push(CheckOutcome::pass_if(
                format!("source components b=2 n={n} u0={u0}"),
                c.equal,
                format!("residual {}", c.residual_poly()),
            ));
        }
    }
    for u0 in 1..=2 {
        let c = marked_source_check(3, 3, u0, opts)?;
        out.push(CheckOutcome::finding(
            format!("acyclic sources b=3 n=3 u0={u0}"),
            format!("equal={} residual {}", c.equal, c.residual_poly()),
        ));
        let c = marked_component_check(3, 3, u0, opts)?;
        out.push(CheckOutcome::finding(
            format!("source components b=3 n=3 u0={u0}"),
            format!("equal={} residual {}", c.equal, c.residual_poly()),
        ));
    }
    Ok(out)
}

pub fn fixtures() -> Result<Vec<CheckOutcome>> {
    let fig1 = Fixture::builtin("fig1")?.classify()?;
    let core = [2i64, 3, 4, 6];
    let witness_ok = fig1
        .cycle_witness
        .as_ref()
        .is_some_and(|c| !c.is_empty() && c.iter().all(|v| core.contains(v)));
    let fig2 = Fixture::builtin("fig2")?.classify()?;
    Ok(vec![
        CheckOutcome::pass_if(
            "fig1 is cyclic with a witness inside {2,3,4,6}",
            !fig1.acyclic && witness_ok,
            format!("witness {:?}", fig1.cycle_witness.unwrap_or_default()),
        ),
        CheckOutcome::pass_if(
            "fig2 strong components {1},{5},{7},{2,3,4,6}",
            fig2.strong_components == vec![vec![1], vec![2, 3, 4, 6], vec![5], vec![7]]
                && !fig2.strong,
            format!("{:?}", fig2.strong_components),
        ),
        CheckOutcome::pass_if(
            "fig2 has 2 source strong components, both sources",
            fig2.source_components == 2 && fig2.sources == 2,
            format!(
                "{} components, {} sources",
                fig2.source_components, fig2.sources
            ),
        ),
    ])
}

pub fn lambda() -> Result<Vec<CheckOutcome>> {
    let reports = lambda_verdict(2, 5)?;
    Ok(reports
        .iter()
        .map(|r| {
            let detail = match r.first_mismatch() {
                Some((n, m)) => format!(
                    "verdict {}; first disagreement at n={n}, q={}: {} vs {}",
                    r.verdict, m.q, m.formula, m.reference
                ),
                None => format!("verdict {}", r.verdict),
            };
            CheckOutcome::finding(
                format!("{} vs {} (b=2, N=5)", r.method, r.reference),
                detail,
            )
        })
        .collect())
}
