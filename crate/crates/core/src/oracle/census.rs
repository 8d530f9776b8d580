use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{hyperarc_universe, Classification, Relation, Semantics, MAX_NODES};
use crate::error::{Error, Result};
use crate::formulas::Family;
use crate::poly::Poly;
use crate::scalar::Scalar;

/// Default limit on the universe size, i.e. at most `2^26` subsets.
pub const DEFAULT_CAP: u32 = 26;

/// Relations with at most this many possible arcs are classified once up
/// front and looked up during the sweep.
const LOOKUP_BITS: usize = 20;

/// Subset bits handled by the inner loop of one work item.
const INNER_BITS: usize = 12;

#[derive(Clone, Copy, Debug)]
pub struct CensusOptions {
    pub cap: u32,
    /// Worker threads; `None` uses the global rayon pool.
    pub jobs: Option<usize>,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            cap: DEFAULT_CAP,
            jobs: None,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct JointCount {
    pub source_components: u32,
    pub sources: u32,
    pub count: u64,
}

/// Counts among dihypergraphs with exactly `q` hyperarcs.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CensusRow {
    pub q: usize,
    pub total: u64,
    pub acyclic: u64,
    pub strong: u64,
    /// Joint distribution of (source strong components, sources), nonzero
    /// cells only, ordered lexicographically.
    pub joint: Vec<JointCount>,
    /// `acyclic_by_sources[k]`: acyclic dihypergraphs with `k` sources.
    pub acyclic_by_sources: Vec<u64>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CensusTable {
    pub n: usize,
    pub b: u32,
    pub semantics: Semantics,
    pub rows: Vec<CensusRow>,
    /// Nonempty dihypergraphs seen without a source strong component.
    /// Always zero; kept so every sweep reports the check.
    pub sourceless: u64,
}

impl CensusTable {
    pub fn family_poly<T: Scalar>(&self, family: Family) -> Poly<T> {
        Poly::from_terms(self.rows.iter().map(|r| {
            let c = match family {
                Family::Total => r.total,
                Family::Acyclic => r.acyclic,
                Family::Strong => r.strong,
            };
            (r.q, T::from_count(c))
        }))
    }

    pub fn total_count(&self) -> u64 {
        self.rows.iter().map(|r| r.total).sum()
    }

    /// `sum over acyclic H of (1 + u0)^sources(H) y^q(H)`.
    pub fn acyclic_marked_sources<T: Scalar>(&self, u0: &T) -> Poly<T> {
        let base = T::one() + u0.clone();
        Poly::from_terms(self.rows.iter().flat_map(|r| {
            let base = base.clone();
            r.acyclic_by_sources
                .iter()
                .enumerate()
                .map(move |(k, &c)| (r.q, T::from_count(c) * pow(&base, k)))
        }))
    }

    /// `sum over all H of (1 + u0)^(source strong components) y^q(H)`.
    pub fn marked_source_components<T: Scalar>(&self, u0: &T) -> Poly<T> {
        let base = T::one() + u0.clone();
        Poly::from_terms(self.rows.iter().flat_map(|r| {
            let base = base.clone();
            r.joint.iter().map(move |j| {
                (
                    r.q,
                    T::from_count(j.count) * pow(&base, j.source_components as usize),
                )
            })
        }))
    }
}

fn pow<T: Scalar>(base: &T, e: usize) -> T {
    (0..e).fold(T::one(), |acc, _| acc * base.clone())
}

/// Census with default options.
pub fn census(n: usize, b: u32) -> Result<CensusTable> {
    census_with(n, b, &CensusOptions::default())
}

/// Enumerates every subset of the hyperarc universe, classifies it and
/// aggregates exact counts. Work is split over disjoint subset ranges and
/// merged by addition, so the table does not depend on the worker count.
pub fn census_with(n: usize, b: u32, opts: &CensusOptions) -> Result<CensusTable> {
    let universe = hyperarc_universe(n, b)?;
    let m = universe.len();
    if m as u64 > u64::from(opts.cap) || m > 62 {
        return Err(Error::OracleCapExceeded {
            n,
            b,
            bits: m as u64,
            cap: opts.cap,
        });
    }
    let run = || sweep(n, &universe, LOOKUP_BITS);
    let tally = match opts.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .expect("thread pool")
            .install(run),
        None => run(),
    };
    Ok(tally.into_table(n, b, m))
}

struct PairIndex {
    n: usize,
}

impl PairIndex {
    fn bits(&self) -> usize {
        self.n * self.n.saturating_sub(1)
    }

    fn encode(&self, u: usize, v: usize) -> usize {
        u * (self.n - 1) + if v > u { v - 1 } else { v }
    }

    fn decode(&self, mut mask: u64) -> Relation {
        let mut r = Relation::empty(self.n);
        while mask != 0 {
            let idx = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            let u = idx / (self.n - 1);
            let rem = idx % (self.n - 1);
            r.add(u, if rem >= u { rem + 1 } else { rem });
        }
        r
    }
}

fn pack(c: Classification) -> u16 {
    u16::from(c.acyclic)
        | u16::from(c.strong) << 1
        | u16::from(c.source_components) << 2
        | u16::from(c.sources) << 6
}

struct Tally {
    width: usize,
    total: Vec<u64>,
    acyclic: Vec<u64>,
    strong: Vec<u64>,
    joint: Vec<u64>,
    acyclic_sources: Vec<u64>,
    sourceless: u64,
}

impl Tally {
    fn new(n: usize, m: usize) -> Self {
        let width = n + 1;
        Tally {
            width,
            total: vec![0; m + 1],
            acyclic: vec![0; m + 1],
            strong: vec![0; m + 1],
            joint: vec![0; (m + 1) * width * width],
            acyclic_sources: vec![0; (m + 1) * width],
            sourceless: 0,
        }
    }

    #[inline]
    fn record(&mut self, q: usize, packed: u16, nonempty: bool) {
        let ssc = usize::from(packed >> 2 & 0xf);
        let src = usize::from(packed >> 6 & 0xf);
        self.total[q] += 1;
        if packed & 1 == 1 {
            self.acyclic[q] += 1;
            self.acyclic_sources[q * self.width + src] += 1;
        }
        if packed & 2 == 2 {
            self.strong[q] += 1;
        }
        self.joint[(q * self.width + ssc) * self.width + src] += 1;
        if nonempty && ssc == 0 {
            self.sourceless += 1;
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        fn add(a: &mut [u64], b: &[u64]) {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
        }
        add(&mut self.total, &other.total);
        add(&mut self.acyclic, &other.acyclic);
        add(&mut self.strong, &other.strong);
        add(&mut self.joint, &other.joint);
        add(&mut self.acyclic_sources, &other.acyclic_sources);
        self.sourceless += other.sourceless;
        self
    }

    fn into_table(self, n: usize, b: u32, m: usize) -> CensusTable {
        let w = self.width;
        let rows = (0..=m)
            .map(|q| {
                let mut joint = Vec::new();
                for ssc in 0..w {
                    for src in 0..w {
                        let count = self.joint[(q * w + ssc) * w + src];
                        if count > 0 {
                            joint.push(JointCount {
                                source_components: ssc as u32,
                                sources: src as u32,
                                count,
                            });
                        }
                    }
                }
                let mut by_sources = self.acyclic_sources[q * w..(q + 1) * w].to_vec();
                while by_sources.last() == Some(&0) {
                    by_sources.pop();
                }
                CensusRow {
                    q,
                    total: self.total[q],
                    acyclic: self.acyclic[q],
                    strong: self.strong[q],
                    joint,
                    acyclic_by_sources: by_sources,
                }
            })
            .collect();
        CensusTable {
            n,
            b,
            semantics: Semantics::HeadToTail,
            rows,
            sourceless: self.sourceless,
        }
    }
}

fn sweep(n: usize, universe: &[super::Hyperarc], lookup_bits: usize) -> Tally {
    debug_assert!(n <= MAX_NODES);
    let m = universe.len();
    if n == 0 {
        let mut t = Tally::new(0, 0);
        t.record(0, pack(Relation::empty(0).classify()), false);
        return t;
    }
    let pairs = PairIndex { n };
    let arc_masks: Vec<u64> = universe
        .iter()
        .map(|a| {
            let mut mask = 0u64;
            for u in 0..n {
                for v in 0..n {
                    if a.tail() >> u & 1 == 1 && a.head() >> v & 1 == 1 {
                        mask |= 1 << pairs.encode(u, v);
                    }
                }
            }
            mask
        })
        .collect();

    let lookup: Option<Vec<u16>> = (pairs.bits() <= lookup_bits).then(|| {
        (0..1u64 << pairs.bits())
            .into_par_iter()
            .map(|mask| pack(pairs.decode(mask).classify()))
            .collect()
    });
    let classify = |mask: u64| -> u16 {
        match &lookup {
            Some(table) => table[mask as usize],
            None => pack(pairs.decode(mask).classify()),
        }
    };

    let inner = m.min(INNER_BITS);
    let low_masks: Vec<u64> = (0..1usize << inner)
        .map(|s| {
            (0..inner)
                .filter(|i| s >> i & 1 == 1)
                .fold(0u64, |acc, i| acc | arc_masks[i])
        })
        .collect();
    let outer = m - inner;

    (0..1u64 << outer)
        .into_par_iter()
        .fold(
            || Tally::new(n, m),
            |mut t, hi| {
                let hi_mask = (0..outer)
                    .filter(|i| hi >> i & 1 == 1)
                    .fold(0u64, |acc, i| acc | arc_masks[inner + i]);
                let hi_q = hi.count_ones() as usize;
                for (lo, &lo_mask) in low_masks.iter().enumerate() {
                    let q = hi_q + lo.count_ones() as usize;
                    t.record(q, classify(hi_mask | lo_mask), true);
                }
                t
            },
        )
        .reduce(|| Tally::new(n, m), Tally::merge)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::Dihypergraph;
    use num_bigint::BigInt;

    #[test]
    fn two_node_digraphs() {
        let t = census(2, 2).unwrap();
        let col = |f: fn(&CensusRow) -> u64| t.rows.iter().map(f).collect::<Vec<_>>();
        assert_eq!(col(|r| r.total), vec![1, 2, 1]);
        assert_eq!(col(|r| r.acyclic), vec![1, 2, 0]);
        assert_eq!(col(|r| r.strong), vec![0, 0, 1]);
        assert_eq!(t.rows[0].acyclic_by_sources, vec![0, 0, 1]);
        assert_eq!(t.rows[1].acyclic_by_sources, vec![0, 2]);
        assert_eq!(t.sourceless, 0);
    }

    #[test]
    fn three_node_sums() {
        let t = census(3, 2).unwrap();
        assert_eq!(t.rows.iter().map(|r| r.acyclic).sum::<u64>(), 25);
        assert_eq!(t.rows.iter().map(|r| r.strong).sum::<u64>(), 18);
        let t3 = census(3, 3).unwrap();
        assert_eq!(t3.rows[1].acyclic, 6);
    }

    #[test]
    fn empty_and_single_node() {
        let t = census(0, 2).unwrap();
        assert_eq!(t.rows.len(), 1);
        assert_eq!(
            (t.rows[0].total, t.rows[0].acyclic, t.rows[0].strong),
            (1, 1, 0)
        );
        let t = census(1, 3).unwrap();
        assert_eq!(
            (t.rows[0].total, t.rows[0].acyclic, t.rows[0].strong),
            (1, 1, 1)
        );
    }

    #[test]
    fn cap_is_enforced() {
        let err = census_with(
            4,
            3,
            &CensusOptions {
                cap: 20,
                jobs: None,
            },
        )
        .unwrap_err();
        assert!(matches!(
            err,
            Error::OracleCapExceeded {
                bits: 24,
                cap: 20,
                ..
            }
        ));
    }

    #[test]
    fn independent_of_worker_count() {
        let a = census_with(
            4,
            2,
            &CensusOptions {
                cap: 26,
                jobs: Some(1),
            },
        )
        .unwrap();
        let b = census_with(
            4,
            2,
            &CensusOptions {
                cap: 26,
                jobs: Some(3),
            },
        )
        .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn matches_explicit_structures() {
        // slow route: build every dihypergraph and classify with Tarjan
        for (n, b) in [(3, 2), (4, 2), (3, 3)] {
            let universe = hyperarc_universe(n, b).unwrap();
            let mut total = vec![0u64; universe.len() + 1];
            let mut acyclic = total.clone();
            let mut strong = total.clone();
            for mask in 0..1u64 << universe.len() {
                let h = Dihypergraph::from_subset(n, &universe, mask).unwrap();
                let q = mask.count_ones() as usize;
                total[q] += 1;
                acyclic[q] += u64::from(h.is_acyclic());
                strong[q] += u64::from(h.is_strong());
            }
            let t = census(n, b).unwrap();
            assert_eq!(t.rows.iter().map(|r| r.total).collect::<Vec<_>>(), total);
            assert_eq!(
                t.rows.iter().map(|r| r.acyclic).collect::<Vec<_>>(),
                acyclic
            );
            assert_eq!(t.rows.iter().map(|r| r.strong).collect::<Vec<_>>(), strong);
        }
    }

    #[test]
    fn direct_classification_path() {
        for (n, b) in [(4, 2), (4, 3), (3, 3)] {
            let universe = hyperarc_universe(n, b).unwrap();
            let m = universe.len();
            let with = sweep(n, &universe, LOOKUP_BITS).into_table(n, b, m);
            let without = sweep(n, &universe, 0).into_table(n, b, m);
            assert_eq!(with, without);
        }
    }

    #[test]
    fn marked_sums_at_zero_and_one() {
        let t = census(3, 2).unwrap();
        // u0 = 0 drops the marking entirely
        assert_eq!(
            t.acyclic_marked_sources(&BigInt::from(0)),
            t.family_poly(Family::Acyclic)
        );
        assert_eq!(
            t.marked_source_components(&BigInt::from(0)),
            t.family_poly(Family::Total)
        );
    }
}
