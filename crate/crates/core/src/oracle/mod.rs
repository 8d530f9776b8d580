//! Ground truth by exhaustion.
//!
//! Reachability follows head-to-tail semantics: a path enters a hyperarc at a
//! tail node and leaves at a head node. Every structural question therefore
//! reduces to the induced relation `u -> v` iff some hyperarc has `u` in its
//! tail and `v` in its head.

mod census;
pub mod fixtures;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formulas::total_hyperarc_count;

pub use census::{
    census, census_with, CensusOptions, CensusRow, CensusTable, JointCount, DEFAULT_CAP,
};

/// Node sets are bitmasks, so node counts are bounded by the mask width.
pub const MAX_NODES: usize = 8;

pub type NodeSet = u8;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Semantics {
    #[default]
    HeadToTail,
}

impl Semantics {
    pub fn as_str(self) -> &'static str {
        match self {
            Semantics::HeadToTail => "head-to-tail",
        }
    }
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Hyperarc {
    tail: NodeSet,
    head: NodeSet,
}

impl Hyperarc {
    pub fn new(tail: NodeSet, head: NodeSet) -> Result<Self> {
        if tail == 0 || head == 0 {
            return Err(Error::InvalidHyperarc(
                "tail and head must be nonempty".into(),
            ));
        }
        if tail & head != 0 {
            return Err(Error::InvalidHyperarc(format!(
                "tail {tail:#b} and head {head:#b} overlap"
            )));
        }
        Ok(Hyperarc { tail, head })
    }

    pub fn from_nodes(tail: &[usize], head: &[usize]) -> Result<Self> {
        let mask = |nodes: &[usize]| -> Result<NodeSet> {
            nodes.iter().try_fold(0u8, |acc, &v| {
                if v >= MAX_NODES {
                    return Err(Error::InvalidHyperarc(format!("node {v} out of range")));
                }
                Ok(acc | 1 << v)
            })
        };
        Hyperarc::new(mask(tail)?, mask(head)?)
    }

    pub fn tail(self) -> NodeSet {
        self.tail
    }

    pub fn head(self) -> NodeSet {
        self.head
    }

    pub fn size(self) -> u32 {
        self.tail.count_ones() + self.head.count_ones()
    }

    pub fn nodes(self) -> NodeSet {
        self.tail | self.head
    }
}

/// All hyperarcs of a `b`-uniform dihypergraph on `n` nodes, ordered by the
/// underlying `b`-set (as a bitmask) and then by the tail bitmask.
pub fn hyperarc_universe(n: usize, b: u32) -> Result<Vec<Hyperarc>> {
    if n > MAX_NODES {
        return Err(Error::TooManyNodes(n));
    }
    if b < 2 {
        return Err(Error::InvalidUniformity(b));
    }
    let mut arcs = Vec::new();
    for set in 0u16..(1u16 << n) {
        if set.count_ones() != b {
            continue;
        }
        let set = set as u8;
        // proper nonempty subsets of `set`, ascending
        let mut tails: Vec<u8> = Vec::new();
        let mut sub = set.wrapping_sub(1) & set;
        while sub != 0 {
            tails.push(sub);
            sub = sub.wrapping_sub(1) & set;
        }
        tails.sort_unstable();
        arcs.extend(tails.into_iter().map(|tail| Hyperarc {
            tail,
            head: set & !tail,
        }));
    }
    debug_assert_eq!(arcs.len() as u64, total_hyperarc_count(n as u64, b)?);
    Ok(arcs)
}

/// Binary relation on at most [`MAX_NODES`] nodes; `succ[u]` is a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Relation {
    n: usize,
    succ: [NodeSet; MAX_NODES],
}

/// Everything the census needs to know about one relation.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Classification {
    pub acyclic: bool,
    pub strong: bool,
    pub components: u8,
    pub source_components: u8,
    pub sources: u8,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_NODES);
        Relation {
            n,
            succ: [0; MAX_NODES],
        }
    }

    pub fn from_successors(n: usize, succ: &[NodeSet]) -> Self {
        let mut r = Relation::empty(n);
        r.succ[..n].copy_from_slice(&succ[..n]);
        r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add(&mut self, u: usize, v: usize) {
        self.succ[u] |= 1 << v;
    }

    pub fn has(&self, u: usize, v: usize) -> bool {
        self.succ[u] >> v & 1 == 1
    }

    pub fn successors(&self, u: usize) -> NodeSet {
        self.succ[u]
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            (0..self.n)
                .filter(move |&v| self.has(u, v))
                .map(move |v| (u, v))
        })
    }

    /// `reach[u]` = nodes reachable from `u` by a path of length >= 1.
    pub fn closure(&self) -> [NodeSet; MAX_NODES] {
        let mut reach = self.succ;
        for k in 0..self.n {
            for i in 0..self.n {
                if reach[i] >> k & 1 == 1 {
                    reach[i] |= reach[k];
                }
            }
        }
        reach
    }

    /// Bitset route, used on the census hot path.
    pub fn classify(&self) -> Classification {
        let n = self.n;
        if n == 0 {
            return Classification {
                acyclic: true,
                ..Default::default()
            };
        }
        let reach = self.closure();
        let mut pred = [0u8; MAX_NODES];
        for u in 0..n {
            for v in 0..n {
                if self.has(u, v) {
                    pred[v] |= 1 << u;
                }
            }
        }
        let mut acyclic = true;
        let mut seen: NodeSet = 0;
        let mut c = Classification::default();
        for i in 0..n {
            if reach[i] >> i & 1 == 1 {
                acyclic = false;
            }
            if seen >> i & 1 == 1 {
                continue;
            }
            let mut comp: NodeSet = 1 << i;
            for j in i + 1..n {
                if reach[i] >> j & 1 == 1 && reach[j] >> i & 1 == 1 {
                    comp |= 1 << j;
                }
            }
            seen |= comp;
            c.components += 1;
            let incoming = (0..n)
                .filter(|&v| comp >> v & 1 == 1)
                .fold(0u8, |acc, v| acc | pred[v]);
            if incoming & !comp == 0 {
                c.source_components += 1;
                if comp.count_ones() == 1 {
                    c.sources += 1;
                }
            }
        }
        c.acyclic = acyclic;
        c.strong = c.components == 1;
        c
    }

    /// Tarjan's algorithm. Classes are returned sorted by smallest member,
    /// each class sorted ascending.
    pub fn strongly_connected_components(&self) -> Vec<Vec<usize>> {
        struct State {
            index: Vec<Option<usize>>,
            low: Vec<usize>,
            on_stack: Vec<bool>,
            stack: Vec<usize>,
            next: usize,
            out: Vec<Vec<usize>>,
        }

        fn visit(r: &Relation, v: usize, s: &mut State) {
            s.index[v] = Some(s.next);
            s.low[v] = s.next;
            s.next += 1;
            s.stack.push(v);
            s.on_stack[v] = true;
            for w in 0..r.n {
                if !r.has(v, w) {
                    continue;
                }
                match s.index[w] {
                    None => {
                        visit(r, w, s);
                        s.low[v] = s.low[v].min(s.low[w]);
                    }
                    Some(iw) if s.on_stack[w] => s.low[v] = s.low[v].min(iw),
                    Some(_) => {}
                }
            }
            if Some(s.low[v]) == s.index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = s.stack.pop().expect("tarjan stack underflow");
                    s.on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                s.out.push(comp);
            }
        }

        let n = self.n;
        let mut s = State {
            index: vec![None; n],
            low: vec![0; n],
            on_stack: vec![false; n],
            stack: Vec::new(),
            next: 0,
            out: Vec::new(),
        };
        for v in 0..n {
            if s.index[v].is_none() {
                visit(self, v, &mut s);
            }
        }
        s.out.sort_unstable_by_key(|c| c[0]);
        s.out
    }

    /// Some directed cycle, found by DFS, or `None` when acyclic.
    pub fn find_cycle(&self) -> Option<Vec<usize>> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            New,
            Active,
            Done,
        }
        fn dfs(
            r: &Relation,
            v: usize,
            mark: &mut [Mark],
            path: &mut Vec<usize>,
        ) -> Option<Vec<usize>> {
            mark[v] = Mark::Active;
            path.push(v);
            for w in 0..r.n {
                if !r.has(v, w) {
                    continue;
                }
                match mark[w] {
                    Mark::Active => {
                        let start = path
                            .iter()
                            .position(|&x| x == w)
                            .expect("active node on path");
                        return Some(path[start..].to_vec());
                    }
                    Mark::New => {
                        if let Some(c) = dfs(r, w, mark, path) {
                            return Some(c);
                        }
                    }
                    Mark::Done => {}
                }
            }
            path.pop();
            mark[v] = Mark::Done;
            None
        }
        let mut mark = vec![Mark::New; self.n];
        (0..self.n).find_map(|v| {
            if mark[v] == Mark::New {
                dfs(self, v, &mut mark, &mut Vec::new())
            } else {
                None
            }
        })
    }

    /// A longest simple cycle, rotated to start at its smallest node.
    /// Exhaustive; meant for reports on small fixtures.
    pub fn longest_cycle(&self) -> Option<Vec<usize>> {
        fn extend(
            r: &Relation,
            start: usize,
            path: &mut Vec<usize>,
            used: NodeSet,
            best: &mut Option<Vec<usize>>,
        ) {
            let v = *path.last().expect("nonempty path");
            for w in 0..r.n {
                if !r.has(v, w) {
                    continue;
                }
                if w == start {
                    if best.as_ref().is_none_or(|b| path.len() > b.len()) {
                        *best = Some(path.clone());
                    }
                } else if w > start && used >> w & 1 == 0 {
                    path.push(w);
                    extend(r, start, path, used | 1 << w, best);
                    path.pop();
                }
            }
        }
        let mut best = None;
        for start in 0..self.n {
            extend(self, start, &mut vec![start], 1 << start, &mut best);
        }
        best
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Dihypergraph {
    n: usize,
    arcs: Vec<Hyperarc>,
}

impl Dihypergraph {
    /// Hyperarcs may have any size; duplicates and out-of-range nodes are
    /// rejected.
    pub fn new(n: usize, mut arcs: Vec<Hyperarc>) -> Result<Self> {
        if n > MAX_NODES {
            return Err(Error::TooManyNodes(n));
        }
        let limit: u16 = (1u16 << n) - 1;
        if let Some(bad) = arcs.iter().find(|a| u16::from(a.nodes()) & !limit != 0) {
            return Err(Error::InvalidHyperarc(format!(
                "{bad:?} uses a node >= {n}"
            )));
        }
        arcs.sort_unstable();
        if arcs.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidHyperarc("duplicate hyperarc".into()));
        }
        Ok(Dihypergraph { n, arcs })
    }

    pub fn empty(n: usize) -> Result<Self> {
        Dihypergraph::new(n, Vec::new())
    }

    /// The dihypergraph selecting `universe[i]` for every set bit `i`.
    pub fn from_subset(n: usize, universe: &[Hyperarc], mask: u64) -> Result<Self> {
        let arcs = universe
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, a)| *a)
            .collect();
        Dihypergraph::new(n, arcs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[Hyperarc] {
        &self.arcs
    }

    /// `Some(b)` if every hyperarc has exactly `b` nodes (`None` when there
    /// are no hyperarcs or sizes differ).
    pub fn uniformity(&self) -> Option<u32> {
        let first = self.arcs.first()?.size();
        self.arcs.iter().all(|a| a.size() == first).then_some(first)
    }

    pub fn induced_adjacency(&self) -> Relation {
        let mut r = Relation::empty(self.n);
        for arc in &self.arcs {
            for u in 0..self.n {
                if arc.tail >> u & 1 == 1 {
                    r.succ[u] |= arc.head;
                }
            }
        }
        r
    }

    pub fn is_acyclic(&self) -> bool {
        self.induced_adjacency().find_cycle().is_none()
    }

    pub fn scc_decompose(&self) -> Vec<Vec<usize>> {
        self.induced_adjacency().strongly_connected_components()
    }

    pub fn is_strong(&self) -> bool {
        self.n >= 1 && self.scc_decompose().len() == 1
    }

    /// `(source strong components, sources)`: components of the condensation
    /// with no incoming arc, and how many of them are single nodes.
    pub fn source_components(&self) -> Result<(usize, usize)> {
        if self.n == 0 {
            return Err(Error::EmptyDihypergraph);
        }
        let rel = self.induced_adjacency();
        let comps = rel.strongly_connected_components();
        let mut comp_of = vec![0usize; self.n];
        for (i, c) in comps.iter().enumerate() {
            for &v in c {
                comp_of[v] = i;
            }
        }
        let mut has_incoming = vec![false; comps.len()];
        for (u, v) in rel.arcs() {
            if comp_of[u] != comp_of[v] {
                has_incoming[comp_of[v]] = true;
            }
        }
        let sources: Vec<&Vec<usize>> = comps
            .iter()
            .zip(&has_incoming)
            .filter(|(_, inc)| !**inc)
            .map(|(c, _)| c)
            .collect();
        let singletons = sources.iter().filter(|c| c.len() == 1).count();
        Ok((sources.len(), singletons))
    }
}
