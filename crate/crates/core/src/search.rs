//! Exhaustive enumeration of minimal blocking sets up to a size threshold in small
//! projective spaces.
//!
//! Points and hyperplanes are packed into `u128` incidence masks, so the search is
//! limited to geometries with at most 128 points.

use rayon::prelude::*;
use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analysis::certify::{certify_linearity, CertifyOptions, LinearityCertificate};
use crate::blocking::{analyze_with_census, BlockingError, BlockingOptions, BlockingReport};
use crate::census::LineCensus;
use crate::geometry::Geometry;
use crate::pointset::PointSet;

pub const DEFAULT_GUARD: u64 = 100;
const MASK_BITS: u64 = 128;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("PG({n},{q}) has {points} points, above the guard of {guard}; pass force to run anyway")]
    GuardExceeded { n: usize, q: u64, points: u64, guard: u64 },
    #[error("the search supports at most {MASK_BITS} points, PG({n},{q}) has {points}")]
    TooLarge { n: usize, q: u64, points: u64 },
    #[error("max size {max_size} is below q + 1 = {line}, the size of the smallest blocking set")]
    MaxSizeTooSmall { max_size: usize, line: u64 },
    #[error(transparent)]
    Blocking(#[from] BlockingError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Dedup {
    Memo,
    None,
}

#[derive(Clone)]
pub struct SearchConfig {
    pub geometry: Geometry,
    /// Defaults to the largest size below `3(q+1)/2`.
    pub max_size: Option<usize>,
    pub dedup: Dedup,
    /// Worker threads; 0 uses the ambient rayon pool.
    pub parallel_width: usize,
    pub seed: u64,
    pub prune: bool,
    pub guard: u64,
    pub force: bool,
}

impl SearchConfig {
    pub fn new(geometry: Geometry) -> Self {
        SearchConfig {
            geometry,
            max_size: None,
            dedup: Dedup::Memo,
            parallel_width: 0,
            seed: 0,
            prune: true,
            guard: DEFAULT_GUARD,
            force: false,
        }
    }

    pub fn effective_max_size(&self) -> usize {
        self.max_size.unwrap_or_else(|| small_threshold(self.geometry.q()))
    }
}

/// Largest `s` with `s < 3(q+1)/2`.
pub fn small_threshold(q: u64) -> usize {
    ((3 * (q + 1) - 1) / 2) as usize
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Linearity {
    /// A line of the ambient space.
    Line,
    Certified { certificate: LinearityCertificate },
    Uncertified { reason: String },
}

impl Linearity {
    pub fn is_linear(&self) -> bool {
        matches!(self, Linearity::Line | Linearity::Certified { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    /// Sorted point indices.
    pub points: Vec<u64>,
    pub report: BlockingReport,
    pub linearity: Linearity,
}

impl CatalogEntry {
    pub fn point_set(&self, g: &Geometry) -> PointSet {
        PointSet::from_indices(g.num_points(), self.points.iter().copied())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchCounters {
    pub nodes: u64,
    pub pruned: u64,
    pub leaves: u64,
    pub non_minimal_leaves: u64,
    pub duplicates: u64,
}

impl SearchCounters {
    fn add(&mut self, o: &SearchCounters) {
        self.nodes += o.nodes;
        self.pruned += o.pruned;
        self.leaves += o.leaves;
        self.non_minimal_leaves += o.non_minimal_leaves;
        self.duplicates += o.duplicates;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub n: usize,
    pub q: u64,
    pub max_size: usize,
    pub prune: bool,
    pub catalog: Vec<CatalogEntry>,
    pub counters: SearchCounters,
}

struct Problem {
    hyper: Vec<u128>,
    max_size: usize,
    prune: bool,
}

fn bits(mut m: u128) -> impl Iterator<Item = u32> {
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let b = m.trailing_zeros();
        m &= m - 1;
        Some(b)
    })
}

impl Problem {
    fn new(g: &Geometry, max_size: usize, prune: bool) -> Self {
        let coords: Vec<Vec<_>> = (0..g.num_points()).map(|i| g.coords(i)).collect();
        let hyper = g
            .hyperplanes()
            .map(|h| coords.iter().enumerate().filter(|(_, c)| g.incident(&h, c)).fold(0u128, |m, (i, _)| m | 1 << i))
            .collect();
        Problem { hyper, max_size, prune }
    }

    fn has_tangent(&self, s: u128, p: u32) -> bool {
        let bit = 1u128 << p;
        self.hyper.iter().any(|&h| h & s == bit)
    }

    fn is_minimal(&self, s: u128) -> bool {
        bits(s).all(|p| self.has_tangent(s, p))
    }

    /// Pick the branching hyperplane, or report a leaf or a dead node.
    fn select(&self, s: u128, x: u128) -> Select {
        let mut best: Option<(u32, usize)> = None;
        for (i, &h) in self.hyper.iter().enumerate() {
            if h & s != 0 {
                continue;
            }
            let avail = (h & !x).count_ones();
            if avail == 0 {
                return Select::Dead;
            }
            if best.is_none_or(|(c, _)| avail < c) {
                best = Some((avail, i));
            }
        }
        match best {
            None => Select::Leaf,
            Some((_, i)) => Select::Branch(self.hyper[i] & !x),
        }
    }

    /// Greedy family of unblocked hyperplanes with pairwise disjoint available points;
    /// each needs its own new point.
    fn disjoint_bound(&self, s: u128, x: u128) -> usize {
        let mut avail: Vec<u128> = self.hyper.iter().filter(|&&h| h & s == 0).map(|&h| h & !x).collect();
        avail.sort_by_key(|a| a.count_ones());
        let mut used = 0u128;
        let mut count = 0;
        for a in avail {
            if a & used == 0 {
                used |= a;
                count += 1;
            }
        }
        count
    }

    fn children(&self, s: u128, x: u128, avail: u128) -> Vec<(u128, u128)> {
        let mut x = x;
        bits(avail)
            .map(|p| {
                let child = (s | 1 << p, x);
                x |= 1 << p;
                child
            })
            .collect()
    }

    /// Counts the node and decides whether to expand it.
    fn visit(&self, s: u128, x: u128, out: &mut Vec<u128>, c: &mut SearchCounters) -> Option<u128> {
        c.nodes += 1;
        let size = s.count_ones() as usize;
        let avail = match self.select(s, x) {
            Select::Dead => {
                c.pruned += 1;
                return None;
            }
            Select::Leaf => {
                c.leaves += 1;
                if self.is_minimal(s) {
                    out.push(s);
                } else {
                    c.non_minimal_leaves += 1;
                }
                return None;
            }
            Select::Branch(avail) => avail,
        };
        if size >= self.max_size {
            c.pruned += 1;
            return None;
        }
        // adding points never creates tangents, so a point without one stays inessential
        if self.prune && (size + self.disjoint_bound(s, x) > self.max_size || !self.is_minimal(s))
        {
            c.pruned += 1;
            return None;
        }
        Some(avail)
    }

    fn dfs(&self, s: u128, x: u128, out: &mut Vec<u128>, c: &mut SearchCounters) {
        if let Some(avail) = self.visit(s, x, out, c) {
            for (cs, cx) in self.children(s, x, avail) {
                self.dfs(cs, cx, out, c);
            }
        }
    }
}

enum Select {
    Dead,
    Leaf,
    Branch(u128),
}

fn check_config(cfg: &SearchConfig) -> Result<usize, SearchError> {
    let g = &cfg.geometry;
    let points = g.num_points();
    if points > cfg.guard && !cfg.force {
        return Err(SearchError::GuardExceeded { n: g.n(), q: g.q(), points, guard: cfg.guard });
    }
    if points > MASK_BITS {
        return Err(SearchError::TooLarge { n: g.n(), q: g.q(), points });
    }
    let max_size = cfg.effective_max_size();
    if (max_size as u64) < g.q() + 1 {
        return Err(SearchError::MaxSizeTooSmall { max_size, line: g.q() + 1 });
    }
    Ok(max_size)
}

/// Raw enumeration: sorted index tuples of every minimal blocking set of size at most
/// `max_size`, without reports.
pub fn enumerate_tuples(cfg: &SearchConfig) -> Result<(Vec<Vec<u64>>, SearchCounters), SearchError> {
    let max_size = check_config(cfg)?;
    let problem = Problem::new(&cfg.geometry, max_size, cfg.prune);
    let run = || {
        let mut root_out = Vec::new();
        let mut counters = SearchCounters::default();
        let Some(avail) = problem.visit(0, 0, &mut root_out, &mut counters) else {
            return (root_out, counters);
        };
        let branches: Vec<(Vec<u128>, SearchCounters)> = problem
            .children(0, 0, avail)
            .into_par_iter()
            .map(|(s, x)| {
                let mut out = Vec::new();
                let mut c = SearchCounters::default();
                problem.dfs(s, x, &mut out, &mut c);
                (out, c)
            })
            .collect();
        for (out, c) in branches {
            root_out.extend(out);
            counters.add(&c);
        }
        (root_out, counters)
    };
    let (masks, mut counters) = if cfg.parallel_width > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.parallel_width)
            .build()
            .expect("thread pool")
            .install(run)
    } else {
        run()
    };

    let mut tuples: Vec<Vec<u64>> = masks.into_iter().map(|m| bits(m).map(u64::from).collect()).collect();
    tuples.sort();
    if cfg.dedup == Dedup::Memo {
        let mut seen = FxHashSet::default();
        tuples.retain(|t| {
            let fresh = seen.insert(t.clone());
            if !fresh {
                counters.duplicates += 1;
            }
            fresh
        });
    }
    Ok((tuples, counters))
}

/// Full catalog with a blocking report and a linearity verdict per entry.
pub fn enumerate_minimal(cfg: &SearchConfig) -> Result<SearchResult, SearchError> {
    let (tuples, counters) = enumerate_tuples(cfg)?;
    let g = &cfg.geometry;
    let opts = BlockingOptions { seed: cfg.seed, ..Default::default() };
    let describe = |t: &Vec<u64>| -> Result<CatalogEntry, SearchError> {
        let b = PointSet::from_indices(g.num_points(), t.iter().copied());
        let census = LineCensus::build(g, &b);
        let report = analyze_with_census(g, &b, &census, &opts)?;
        let linearity = if report.span_dim == 1 {
            Linearity::Line
        } else {
            match certify_linearity(g, &b, &census, &report, &CertifyOptions::default()) {
                Ok(cert) if cert.verified => Linearity::Certified { certificate: cert },
                Ok(cert) => Linearity::Uncertified { reason: format!("xi has dimension {}", cert.xi_dim) },
                Err(err) => Linearity::Uncertified { reason: err.to_string() },
            }
        };
        Ok(CatalogEntry { points: t.clone(), report, linearity })
    };
    let catalog: Result<Vec<CatalogEntry>, SearchError> = if cfg.parallel_width > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.parallel_width)
            .build()
            .expect("thread pool")
            .install(|| tuples.par_iter().map(describe).collect())
    } else {
        tuples.par_iter().map(describe).collect()
    };
    Ok(SearchResult {
        n: g.n(),
        q: g.q(),
        max_size: cfg.effective_max_size(),
        prune: cfg.prune,
        catalog: catalog?,
        counters,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryCheck {
    pub index: usize,
    pub size: usize,
    pub one_mod_p_violations: u64,
    pub exponent: u32,
    pub linearity: String,
    /// Hypothesis label of the certificate, for certified entries.
    pub label: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogVerification {
    pub entries: Vec<EntryCheck>,
    /// Entries with a line meeting them in a number of points other than 1 mod p.
    pub alarms: Vec<usize>,
    pub lines: usize,
    pub certified: usize,
    pub uncertified: usize,
    pub sizes: std::collections::BTreeMap<usize, usize>,
}

pub fn verify_catalog(g: &Geometry, res: &SearchResult) -> CatalogVerification {
    let (p, t) = (g.field().p(), g.field().t());
    let entries: Vec<EntryCheck> = res
        .catalog
        .par_iter()
        .enumerate()
        .map(|(index, entry)| {
            let census = LineCensus::build(g, &entry.point_set(g));
            let violations = census.mod_p_violations(p as u64).iter().map(|&(_, c)| c).sum();
            let (linearity, label) = match &entry.linearity {
                Linearity::Line => ("line".to_string(), None),
                Linearity::Certified { certificate } => ("certified".to_string(), Some(certificate.label.clone())),
                Linearity::Uncertified { reason } => (format!("uncertified: {reason}"), None),
            };
            EntryCheck {
                index,
                size: entry.points.len(),
                one_mod_p_violations: violations,
                exponent: census.exponent(p, t),
                linearity,
                label,
            }
        })
        .collect();
    let alarms = entries.iter().filter(|e| e.one_mod_p_violations > 0).map(|e| e.index).collect();
    let count = |f: fn(&Linearity) -> bool| res.catalog.iter().filter(|e| f(&e.linearity)).count();
    let mut sizes = std::collections::BTreeMap::new();
    for e in &res.catalog {
        *sizes.entry(e.points.len()).or_insert(0) += 1;
    }
    CatalogVerification {
        entries,
        alarms,
        lines: count(|l| matches!(l, Linearity::Line)),
        certified: count(|l| matches!(l, Linearity::Certified { .. })),
        uncertified: count(|l| matches!(l, Linearity::Uncertified { .. })),
        sizes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn cfg(p: u32, t: u32) -> SearchConfig {
        SearchConfig::new(Geometry::lazy(2, FieldSpec::auto(p, t).unwrap()).unwrap())
    }

    #[test]
    fn thresholds() {
        assert_eq!(small_threshold(2), 4);
        assert_eq!(small_threshold(3), 5);
        assert_eq!(small_threshold(4), 7);
        assert_eq!(small_threshold(49), 74);
    }

    #[test]
    fn guard_and_size_checks() {
        let mut c = cfg(2, 4);
        assert!(matches!(enumerate_tuples(&c), Err(SearchError::GuardExceeded { points: 273, .. })));
        c.force = true;
        assert!(matches!(enumerate_tuples(&c), Err(SearchError::TooLarge { .. })));
        let mut c = cfg(2, 2);
        c.max_size = Some(4);
        assert!(matches!(enumerate_tuples(&c), Err(SearchError::MaxSizeTooSmall { .. })));
    }

    #[test]
    fn pg2_4_lines_only_at_size_5() {
        let mut c = cfg(2, 2);
        c.max_size = Some(5);
        let (tuples, _) = enumerate_tuples(&c).unwrap();
        assert_eq!(tuples.len(), 21);
        assert!(tuples.iter().all(|t| t.len() == 5));
    }

    #[test]
    fn pruning_keeps_the_catalog() {
        let mut c = cfg(3, 1);
        let (a, ca) = enumerate_tuples(&c).unwrap();
        c.prune = false;
        let (b, cb) = enumerate_tuples(&c).unwrap();
        assert_eq!(a, b);
        assert!(ca.nodes < cb.nodes);
        assert_eq!(ca.duplicates, 0);
    }

    #[test]
    fn width_does_not_change_output() {
        let mut c = cfg(3, 1);
        c.parallel_width = 1;
        let a = enumerate_minimal(&c).unwrap();
        c.parallel_width = 3;
        let b = enumerate_minimal(&c).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}
