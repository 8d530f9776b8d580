//! Hand-specified dihypergraphs stored as JSON.
//!
//! Schema:
//!
//! ```json
//! {
//!   "name": "fig2",
//!   "description": "free text",
//!   "nodes": [1, 2, 3],
//!   "hyperarcs": [{ "tail": [1], "head": [2, 3] }]
//! }
//! ```
//!
//! Node labels are arbitrary integers; their position in `nodes` is the
//! internal index.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Dihypergraph, Hyperarc, Semantics};
use crate::error::{Error, Result};

const FIG1: &str = include_str!("../../fixtures/fig1.json");
const FIG2: &str = include_str!("../../fixtures/fig2.json");

pub const BUILTIN: [&str; 2] = ["fig1", "fig2"];

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FixtureArc {
    pub tail: Vec<i64>,
    pub head: Vec<i64>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Fixture {
    pub name: String,
    #[serde(default)]
    pub description: String,
    pub nodes: Vec<i64>,
    pub hyperarcs: Vec<FixtureArc>,
}

impl Fixture {
    pub fn builtin(name: &str) -> Result<Self> {
        let text = match name {
            "fig1" => FIG1,
            "fig2" => FIG2,
            _ => {
                return Err(Error::UnknownName {
                    kind: "fixture",
                    value: name.to_string(),
                })
            }
        };
        Fixture::from_json(text)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    fn index_of(&self, label: i64) -> Result<usize> {
        self.nodes
            .iter()
            .position(|&l| l == label)
            .ok_or_else(|| Error::InvalidHyperarc(format!("unknown node label {label}")))
    }

    pub fn to_dihypergraph(&self) -> Result<Dihypergraph> {
        let arcs = self
            .hyperarcs
            .iter()
            .map(|a| {
                let tail = a
                    .tail
                    .iter()
                    .map(|&l| self.index_of(l))
                    .collect::<Result<Vec<_>>>()?;
                let head = a
                    .head
                    .iter()
                    .map(|&l| self.index_of(l))
                    .collect::<Result<Vec<_>>>()?;
                Hyperarc::from_nodes(&tail, &head)
            })
            .collect::<Result<Vec<_>>>()?;
        Dihypergraph::new(self.nodes.len(), arcs)
    }

    pub fn classify(&self) -> Result<FixtureReport> {
        let h = self.to_dihypergraph()?;
        let rel = h.induced_adjacency();
        let label = |v: usize| self.nodes[v];
        let labels = |vs: &[usize]| vs.iter().map(|&v| label(v)).collect::<Vec<_>>();
        let sccs = h.scc_decompose();
        let (source_components, sources) = if h.n() > 0 {
            h.source_components()?
        } else {
            (0, 0)
        };
        Ok(FixtureReport {
            name: self.name.clone(),
            semantics: Semantics::HeadToTail,
            nodes: self.nodes.len(),
            hyperarcs: h.arcs().len(),
            uniformity: h.uniformity(),
            induced_arcs: rel.arcs().map(|(u, v)| [label(u), label(v)]).collect(),
            acyclic: h.is_acyclic(),
            cycle_witness: rel.longest_cycle().map(|c| labels(&c)),
            strong_components: sccs.iter().map(|c| labels(c)).collect(),
            strong: h.is_strong(),
            source_components,
            sources,
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FixtureReport {
    pub name: String,
    pub semantics: Semantics,
    pub nodes: usize,
    pub hyperarcs: usize,
    pub uniformity: Option<u32>,
    pub induced_arcs: Vec<[i64; 2]>,
    pub acyclic: bool,
    /// Longest simple cycle, starting at its smallest node.
    pub cycle_witness: Option<Vec<i64>>,
    pub strong_components: Vec<Vec<i64>>,
    pub strong: bool,
    pub source_components: usize,
    pub sources: usize,
}

fn join(v: &[i64], sep: &str) -> String {
    v.iter().map(i64::to_string).collect::<Vec<_>>().join(sep)
}

impl fmt::Display for FixtureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "fixture {} ({} semantics)", self.name, self.semantics)?;
        let uniform = match self.uniformity {
            Some(b) => format!("{b}-uniform"),
            None => "non-uniform".to_string(),
        };
        writeln!(
            f,
            "  {} nodes, {} hyperarcs, {}",
            self.nodes, self.hyperarcs, uniform
        )?;
        let arcs: Vec<String> = self
            .induced_arcs
            .iter()
            .map(|[u, v]| format!("{u}->{v}"))
            .collect();
        writeln!(f, "  induced arcs: {}", arcs.join(" "))?;
        match &self.cycle_witness {
            Some(c) => writeln!(f, "  cyclic; cycle witness through nodes {}", join(c, ","))?,
            None => writeln!(f, "  acyclic")?,
        }
        let comps: Vec<String> = self
            .strong_components
            .iter()
            .map(|c| format!("{{{}}}", join(c, ",")))
            .collect();
        writeln!(f, "  strong components: {}", comps.join(" "))?;
        writeln!(
            f,
            "  strongly connected: {}",
            if self.strong { "yes" } else { "no" }
        )?;
        write!(
            f,
            "  source strong components: {} ({} sources)",
            self.source_components, self.sources
        )
    }
}
