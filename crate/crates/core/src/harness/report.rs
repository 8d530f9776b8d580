//! Serialized forms. Every count is a decimal string; coefficients overflow
//! 64 bits long before the oracle stops being feasible.

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formulas::{CountSeq, Family, Method};
use crate::oracle::{CensusTable, Semantics};
use crate::{BigInt, YPoly};

/// One polynomial `counts[n]`, as
/// `{"b", "n", "family", "method", "semantics", "coeffs": [["q", "count"], ...]}`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CountRecord {
    pub b: u32,
    pub n: usize,
    pub family: String,
    pub method: String,
    pub semantics: String,
    pub coeffs: Vec<(String, String)>,
}

impl CountRecord {
    pub fn new(b: u32, n: usize, family: Family, method: &str, poly: &YPoly) -> Self {
        CountRecord {
            b,
            n,
            family: family.to_string(),
            method: method.to_string(),
            semantics: Semantics::HeadToTail.to_string(),
            coeffs: poly
                .coeffs()
                .iter()
                .enumerate()
                .map(|(q, c)| (q.to_string(), c.to_string()))
                .collect(),
        }
    }

    pub fn to_poly(&self) -> Result<YPoly> {
        let terms = self
            .coeffs
            .iter()
            .map(|(q, c)| {
                let q: usize = q.parse().map_err(|_| bad_record(q))?;
                let c: BigInt = c.parse().map_err(|_| bad_record(c))?;
                Ok((q, c))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(YPoly::from_terms(terms))
    }
}

fn bad_record(token: &str) -> Error {
    Error::UnknownName {
        kind: "integer",
        value: token.to_string(),
    }
}

pub fn sequence_records(seq: &CountSeq<BigInt>) -> Vec<CountRecord> {
    seq.counts
        .iter()
        .enumerate()
        .map(|(n, p)| CountRecord::new(seq.b, n, seq.family, seq.method.as_str(), p))
        .collect()
}

pub fn census_records(table: &CensusTable) -> Vec<CountRecord> {
    Family::ALL
        .iter()
        .map(|&f| CountRecord::new(table.b, table.n, f, "oracle", &table.family_poly(f)))
        .collect()
}

pub const CSV_HEADER: &str = "b,n,family,method,q,count";

pub fn records_csv(records: &[CountRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        for (q, c) in &r.coeffs {
            let _ = writeln!(out, "{},{},{},{},{},{}", r.b, r.n, r.family, r.method, q, c);
        }
    }
    out
}

/// A sequence specialised at `y = y0`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct EvalRecord {
    pub b: u32,
    pub family: String,
    pub method: String,
    pub semantics: String,
    pub y: String,
    pub values: Vec<String>,
}

impl EvalRecord {
    pub fn new(seq: &CountSeq<BigInt>, y0: &BigInt) -> Self {
        EvalRecord {
            b: seq.b,
            family: seq.family.to_string(),
            method: seq.method.to_string(),
            semantics: Semantics::HeadToTail.to_string(),
            y: y0.to_string(),
            values: seq.eval(y0).iter().map(BigInt::to_string).collect(),
        }
    }

    pub fn csv(&self) -> String {
        let mut out = String::from("b,n,family,method,y,value\n");
        for (n, v) in self.values.iter().enumerate() {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                self.b, n, self.family, self.method, self.y, v
            );
        }
        out
    }
}

pub fn census_text(t: &CensusTable) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "census n={} b={} semantics={}", t.n, t.b, t.semantics);
    let _ = writeln!(
        out,
        "{:>4} {:>12} {:>12} {:>12}  (source components, sources): count",
        "q", "total", "acyclic", "strong"
    );
    for r in &t.rows {
        let joint: Vec<String> = r
            .joint
            .iter()
            .map(|j| format!("({},{}):{}", j.source_components, j.sources, j.count))
            .collect();
        let _ = writeln!(
            out,
            "{:>4} {:>12} {:>12} {:>12}  {}",
            r.q,
            r.total,
            r.acyclic,
            r.strong,
            joint.join(" ")
        );
    }
    let _ = writeln!(
        out,
        "sum  {:>12} {:>12} {:>12}",
        t.total_count(),
        t.rows.iter().map(|r| r.acyclic).sum::<u64>(),
        t.rows.iter().map(|r| r.strong).sum::<u64>()
    );
    let _ = write!(
        out,
        "dihypergraphs without a source strong component: {}",
        t.sourceless
    );
    out
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Match,
    Mismatch,
    OracleUnavailable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Match => "match",
            Verdict::Mismatch => "mismatch",
            Verdict::OracleUnavailable => "oracle-unavailable",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Mismatch {
    pub q: usize,
    pub formula: String,
    pub reference: String,
}

/// Comparison at one node count. Polynomials are dense coefficient lists.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CompareRecord {
    pub n: usize,
    pub status: Verdict,
    pub formula: Vec<String>,
    pub reference: Option<Vec<String>>,
    pub mismatches: Vec<Mismatch>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Timing {
    pub formula_ms: u64,
    pub reference_ms: u64,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CompareReport {
    pub b: u32,
    pub family: Family,
    pub method: Method,
    pub semantics: Semantics,
    /// `"oracle"` or `"method:<name>"`.
    pub reference: String,
    pub records: Vec<CompareRecord>,
    pub verdict: Verdict,
    /// Wall-clock timings; left out unless asked for so reports stay
    /// byte-reproducible.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

pub(crate) fn poly_strings(p: &YPoly) -> Vec<String> {
    p.coeffs().iter().map(BigInt::to_string).collect()
}

impl CompareRecord {
    pub fn compare(n: usize, formula: &YPoly, reference: &YPoly) -> Self {
        let len = formula.coeffs().len().max(reference.coeffs().len());
        let mismatches: Vec<Mismatch> = (0..len)
            .filter_map(|q| {
                let (f, r) = (formula.coeff(q), reference.coeff(q));
                (f != r).then(|| Mismatch {
                    q,
                    formula: f.to_string(),
                    reference: r.to_string(),
                })
            })
            .collect();
        CompareRecord {
            n,
            status: if mismatches.is_empty() {
                Verdict::Match
            } else {
                Verdict::Mismatch
            },
            formula: poly_strings(formula),
            reference: Some(poly_strings(reference)),
            mismatches,
            note: None,
        }
    }

    pub fn unavailable(n: usize, formula: &YPoly, note: String) -> Self {
        CompareRecord {
            n,
            status: Verdict::OracleUnavailable,
            formula: poly_strings(formula),
            reference: None,
            mismatches: Vec::new(),
            note: Some(note),
        }
    }
}

impl CompareReport {
    pub fn overall(records: &[CompareRecord]) -> Verdict {
        if records.iter().any(|r| r.status == Verdict::Mismatch) {
            Verdict::Mismatch
        } else if records
            .iter()
            .any(|r| r.status == Verdict::OracleUnavailable)
        {
            Verdict::OracleUnavailable
        } else {
            Verdict::Match
        }
    }

    /// `(n, mismatch)` with the smallest `n`, then smallest `q`.
    pub fn first_mismatch(&self) -> Option<(usize, &Mismatch)> {
        self.records
            .iter()
            .find_map(|r| r.mismatches.first().map(|m| (r.n, m)))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

fn show(coeffs: &[String]) -> String {
    let terms: Vec<(usize, BigInt)> = coeffs
        .iter()
        .enumerate()
        .map(|(q, c)| (q, c.parse().unwrap_or_default()))
        .collect();
    YPoly::from_terms(terms).to_string()
}

impl fmt::Display for CompareReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "compare {} b={} method={} reference={} semantics={}",
            self.family, self.b, self.method, self.reference, self.semantics
        )?;
        for r in &self.records {
            match r.status {
                Verdict::Match => writeln!(f, "  n={}: match  {}", r.n, show(&r.formula))?,
                Verdict::OracleUnavailable => writeln!(
                    f,
                    "  n={}: oracle-unavailable ({})  formula {}",
                    r.n,
                    r.note.as_deref().unwrap_or(""),
                    show(&r.formula)
                )?,
                Verdict::Mismatch => {
                    writeln!(f, "  n={}: mismatch", r.n)?;
                    writeln!(f, "    formula   {}", show(&r.formula))?;
                    writeln!(
                        f,
                        "    reference {}",
                        show(r.reference.as_deref().unwrap_or(&[]))
                    )?;
                    let cells: Vec<String> = r
                        .mismatches
                        .iter()
                        .map(|m| format!("q={}: {} vs {}", m.q, m.formula, m.reference))
                        .collect();
                    writeln!(f, "    differs at {}", cells.join(", "))?;
                }
            }
        }
        if let Some(t) = &self.timing {
            writeln!(
                f,
                "  timing: formula {} ms, reference {} ms",
                t.formula_ms, t.reference_ms
            )?;
        }
        match self.first_mismatch() {
            Some((n, m)) => write!(
                f,
                "verdict: {} (first at n={}, q={}: formula {} vs {} {})",
                self.verdict, n, m.q, m.formula, self.reference, m.reference
            ),
            None => write!(f, "verdict: {}", self.verdict),
        }
    }
}
