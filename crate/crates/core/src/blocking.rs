//! Blocking, minimality, exponents, projection and reduction to a minimal set.
//!
//! In the plane everything follows from the line census. In higher dimension the
//! hyperplanes are scanned exhaustively when that fits the work budget; beyond it,
//! blocking needs rank evidence for a linear set and tangent hyperplanes are found
//! by seeded random sampling (a found tangent is a proof, a miss is reported).

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::census::{capped_valuation, LineCensus};
use crate::field::Code;
use crate::geometry::{Geometry, GeometryError, Hyperplane, NormalizedVectors};
use crate::pointset::PointSet;

/// Default cap on `hyperplanes x |B|` for exhaustive scans.
pub const DEFAULT_WORK_BUDGET: u64 = 400_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BlockingError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("the point set is not blocking")]
    NotBlocking,
    #[error("point {0} is not in the set")]
    NotMember(u64),
    #[error("the centre of projection lies in the set")]
    QInB,
    #[error("the centre of projection lies in the target hyperplane")]
    QInH,
    #[error("{what} needs about {work} incidence checks, above the budget of {budget}")]
    BudgetExceeded { what: &'static str, work: u64, budget: u64 },
}

/// Evidence that `B = B(U)` for an GF(p^e)-subspace `U` of the given rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearSetInfo {
    pub e: u32,
    pub rank: usize,
}

#[derive(Debug, Clone)]
pub struct BlockingOptions {
    pub work_budget: u64,
    pub seed: u64,
    pub tangent_tries: u32,
    pub linear: Option<LinearSetInfo>,
}

impl Default for BlockingOptions {
    fn default() -> Self {
        BlockingOptions { work_budget: DEFAULT_WORK_BUDGET, seed: 0, tangent_tries: 200, linear: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    LineCensus,
    HyperplaneScan,
    RankBound,
    RandomTangents,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExponentSource {
    Hyperplanes,
    Lines,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witnesses {
    pub unblocked_hyperplane: Option<u64>,
    /// point index -> index of a tangent hyperplane at it
    pub tangents: BTreeMap<u64, u64>,
    pub inessential: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockingReport {
    pub n: usize,
    pub p: u32,
    pub t: u32,
    pub size: usize,
    pub kappa: i64,
    pub is_blocking: bool,
    pub is_minimal: bool,
    pub is_small: bool,
    pub blocking_method: Method,
    pub minimality_method: Method,
    pub exponent_e: Option<u32>,
    pub exponent_source: ExponentSource,
    pub exponent_e_lines: u32,
    pub exponent_consistent: Option<bool>,
    pub q0: Option<u64>,
    pub h: Option<u32>,
    pub h_integral: bool,
    pub span_dim: isize,
    pub point_exponents: BTreeMap<u64, u32>,
    pub witnesses: Witnesses,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentInfo {
    pub e: u32,
    pub q0: u64,
    /// `t / e`, when `e` divides `t`
    pub h: Option<u32>,
    pub source: ExponentSource,
}

/// Outcome of scanning every hyperplane.
#[derive(Debug, Clone)]
pub struct HyperplaneScan {
    pub unblocked: Option<u64>,
    /// gcd of `|H cap B| - 1` over all hyperplanes meeting B
    pub gcd: u64,
    /// first tangent hyperplane at each census position
    pub tangents: Vec<Option<u64>>,
}

pub fn is_small(g: &Geometry, b: &PointSet) -> bool {
    2 * (b.len() as u64) < 3 * (g.q() + 1)
}

fn scan_work(g: &Geometry, b: &PointSet) -> u64 {
    g.num_hyperplanes().saturating_mul(b.len() as u64)
}

/// Every hyperplane against every point of `b`, in parallel over hyperplane blocks.
pub fn hyperplane_scan(g: &Geometry, b: &PointSet, budget: u64) -> Result<HyperplaneScan, BlockingError> {
    let work = scan_work(g, b);
    if work > budget {
        return Err(BlockingError::BudgetExceeded { what: "hyperplane scan", work, budget });
    }
    let stride = g.n() + 1;
    let coords = g.coords_of_set(b);
    let m = b.len();
    let f = g.field();
    const BLOCK: u64 = 4096;
    let blocks = g.num_hyperplanes().div_ceil(BLOCK);
    let partials: Vec<HyperplaneScan> = (0..blocks)
        .into_par_iter()
        .map(|blk| {
            let mut out = HyperplaneScan { unblocked: None, gcd: 0, tangents: vec![None; m] };
            let mut dual = vec![0; stride];
            for hi in blk * BLOCK..((blk + 1) * BLOCK).min(g.num_hyperplanes()) {
                g.coords_into(hi, &mut dual);
                let mut count = 0u64;
                let mut last = 0;
                for j in 0..m {
                    if f.dot(&dual, &coords[j * stride..(j + 1) * stride]) == 0 {
                        count += 1;
                        last = j;
                    }
                }
                match count {
                    0 => {
                        out.unblocked.get_or_insert(hi);
                    }
                    1 => {
                        out.tangents[last].get_or_insert(hi);
                    }
                    _ => out.gcd = gcd(out.gcd, count - 1),
                }
            }
            out
        })
        .collect();
    let mut acc = HyperplaneScan { unblocked: None, gcd: 0, tangents: vec![None; m] };
    for part in partials {
        if acc.unblocked.is_none() {
            acc.unblocked = part.unblocked;
        }
        acc.gcd = gcd(acc.gcd, part.gcd);
        for (a, t) in acc.tangents.iter_mut().zip(part.tangents) {
            if a.is_none() {
                *a = t;
            }
        }
    }
    Ok(acc)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Directions from `p` to the other points of `b`, as normalized indices of `Q - Q[lead] P`.
fn directions(g: &Geometry, b: &PointSet, p: &[Code]) -> FxHashSet<u64> {
    let f = g.field();
    let lead = p.iter().position(|&c| c != 0).unwrap();
    let mut q = vec![0; p.len()];
    let mut dirs = FxHashSet::default();
    for idx in b.iter() {
        g.coords_into(idx, &mut q);
        if q == p {
            continue;
        }
        let c = q[lead];
        for k in 0..q.len() {
            q[k] = f.sub(q[k], f.mul(c, p[k]));
        }
        g.normalize(&mut q);
        dirs.insert(g.index_of_normalized(&q));
    }
    dirs
}

/// A line through `p` containing no other point of `b`: the first direction, in index
/// order, that no point of `b` uses.
pub fn tangent_line(g: &Geometry, b: &PointSet, p: u64) -> Option<Vec<Vec<Code>>> {
    let pc = g.coords(p);
    let lead = pc.iter().position(|&c| c != 0).unwrap();
    let dirs = directions(g, b, &pc);
    if dirs.len() as u64 == g.lines_through_point() {
        return None;
    }
    NormalizedVectors::new(g.n(), g.q() as Code)
        .map(|mut v| {
            v.insert(lead, 0);
            v
        })
        .find(|v| !dirs.contains(&g.index_of_normalized(v)))
        .map(|v| vec![pc, v])
}

fn tangent_in_plane(g: &Geometry, b: &PointSet, p: u64) -> Option<u64> {
    let rows = tangent_line(g, b, p)?;
    let line = g.subspace_from_rows(rows);
    let dual = g.annihilator(&line);
    Some(g.hyperplane_from_dual(&dual.rows()[0]).unwrap().index)
}

fn random_tangent(g: &Geometry, coords: &[Code], p: u64, seed: u64, tries: u32) -> Option<u64> {
    let f = g.field();
    let pc = g.coords(p);
    let lead = pc.iter().position(|&c| c != 0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ p.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let stride = g.n() + 1;
    let q = g.q() as Code;
    for _ in 0..tries {
        let mut a: Vec<Code> = (0..stride).map(|_| rng.gen_range(0..q)).collect();
        let d = f.dot(&a, &pc);
        a[lead] = f.sub(a[lead], d);
        if a.iter().all(|&c| c == 0) {
            continue;
        }
        let hits = coords.chunks(stride).filter(|x| f.dot(&a, x) == 0).take(2).count();
        if hits == 1 {
            return Some(g.hyperplane_from_dual(&a).unwrap().index);
        }
    }
    None
}

/// A tangent hyperplane at `p` with respect to `b`, if one exists (exact for n = 2 and
/// small geometries).
pub fn tangent_hyperplane(g: &Geometry, b: &PointSet, p: u64, opts: &BlockingOptions) -> Result<Option<u64>, BlockingError> {
    if !b.contains(p) {
        return Err(BlockingError::NotMember(p));
    }
    if g.n() == 2 {
        return Ok(tangent_in_plane(g, b, p));
    }
    let pc = g.coords(p);
    let through = g.points_in_dim(g.n() as isize - 1);
    let work = through.saturating_mul(b.len() as u64);
    if work <= opts.work_budget {
        let point = g.subspace_from_rows(vec![pc]);
        let coords = g.coords_of_set(b);
        let stride = g.n() + 1;
        let f = g.field();
        for h in g.hyperplanes_through(&point) {
            if coords.chunks(stride).filter(|x| f.dot(&h.dual, x) == 0).count() == 1 {
                return Ok(Some(h.index));
            }
        }
        return Ok(None);
    }
    match random_tangent(g, &g.coords_of_set(b), p, opts.seed, opts.tangent_tries) {
        Some(h) => Ok(Some(h)),
        None => Err(BlockingError::BudgetExceeded { what: "tangent search", work, budget: opts.work_budget }),
    }
}

pub fn is_blocking(g: &Geometry, b: &PointSet, opts: &BlockingOptions) -> Result<(bool, Option<u64>), BlockingError> {
    if g.n() == 1 {
        return Ok((!b.is_empty(), if b.is_empty() { Some(0) } else { None }));
    }
    if b.is_empty() {
        return Ok((false, Some(0)));
    }
    if g.n() == 2 {
        let c = LineCensus::build(g, b);
        return Ok(plane_blocking(g, b, &c));
    }
    if scan_work(g, b) <= opts.work_budget {
        let scan = hyperplane_scan(g, b, opts.work_budget)?;
        return Ok((scan.unblocked.is_none(), scan.unblocked));
    }
    rank_bound(g, opts).map(|ok| (ok, None))
}

fn rank_bound(g: &Geometry, opts: &BlockingOptions) -> Result<bool, BlockingError> {
    let t = g.field().t();
    match opts.linear {
        Some(info) if info.e > 0 && t % info.e == 0 && info.rank > (t / info.e) as usize => Ok(true),
        _ => Err(BlockingError::BudgetExceeded { what: "hyperplane scan", work: u64::MAX, budget: opts.work_budget }),
    }
}

/// In the plane, B is blocking iff the census counts every line as met. The witness
/// for a non-blocking set is the first line disjoint from B.
fn plane_blocking(g: &Geometry, b: &PointSet, c: &LineCensus) -> (bool, Option<u64>) {
    if c.lines_meeting() == g.num_hyperplanes() {
        return (true, None);
    }
    let coords = g.coords_of_set(b);
    let f = g.field();
    let witness = g
        .hyperplanes()
        .find(|h| coords.chunks(g.n() + 1).all(|x| f.dot(&h.dual, x) != 0))
        .map(|h| h.index);
    (false, witness)
}

/// Minimality via tangent witnesses.
pub fn is_minimal(g: &Geometry, b: &PointSet, opts: &BlockingOptions) -> Result<(bool, Witnesses), BlockingError> {
    if !is_blocking(g, b, opts)?.0 {
        return Err(BlockingError::NotBlocking);
    }
    let (tangents, _) = tangent_witnesses(g, b, None, opts)?;
    Ok(witnesses_verdict(b, tangents, None))
}

fn witnesses_verdict(b: &PointSet, tangents: Vec<Option<u64>>, unblocked: Option<u64>) -> (bool, Witnesses) {
    let mut w = Witnesses { unblocked_hyperplane: unblocked, tangents: BTreeMap::new(), inessential: Vec::new() };
    for (p, t) in b.iter().zip(tangents) {
        match t {
            Some(h) => {
                w.tangents.insert(p, h);
            }
            None => w.inessential.push(p),
        }
    }
    (w.inessential.is_empty(), w)
}

/// Tangent witness per census position and the method that produced them.
fn tangent_witnesses(
    g: &Geometry,
    b: &PointSet,
    scan: Option<&HyperplaneScan>,
    opts: &BlockingOptions,
) -> Result<(Vec<Option<u64>>, Method), BlockingError> {
    let pts = b.to_vec();
    if g.n() <= 2 {
        let t = pts
            .par_iter()
            .map(|&p| if g.n() == 2 { tangent_in_plane(g, b, p) } else { Some(p) })
            .collect();
        return Ok((t, Method::LineCensus));
    }
    if let Some(s) = scan {
        return Ok((s.tangents.clone(), Method::HyperplaneScan));
    }
    let coords = g.coords_of_set(b);
    let found: Vec<Option<u64>> =
        pts.par_iter().map(|&p| random_tangent(g, &coords, p, opts.seed, opts.tangent_tries)).collect();
    if found.iter().any(|t| t.is_none()) {
        return Err(BlockingError::BudgetExceeded {
            what: "tangent search",
            work: scan_work(g, b),
            budget: opts.work_budget,
        });
    }
    Ok((found, Method::RandomTangents))
}

/// Exponent from hyperplanes when they can be scanned, from lines otherwise.
pub fn exponent(g: &Geometry, b: &PointSet, opts: &BlockingOptions) -> Result<ExponentInfo, BlockingError> {
    let report = analyze(g, b, opts)?;
    if !report.is_blocking {
        return Err(BlockingError::NotBlocking);
    }
    let e = report.exponent_e.unwrap();
    Ok(ExponentInfo { e, q0: report.q0.unwrap(), h: report.h, source: report.exponent_source })
}

pub fn point_exponent(g: &Geometry, b: &PointSet, p: u64) -> Result<u32, BlockingError> {
    if !b.contains(p) {
        return Err(BlockingError::NotMember(p));
    }
    let pc = g.coords(p);
    let f = g.field();
    let lead = pc.iter().position(|&c| c != 0).unwrap();
    let mut counts: rustc_hash::FxHashMap<u64, u64> = Default::default();
    let mut q = vec![0; pc.len()];
    for idx in b.iter().filter(|&i| i != p) {
        g.coords_into(idx, &mut q);
        let c = q[lead];
        for k in 0..q.len() {
            q[k] = f.sub(q[k], f.mul(c, pc[k]));
        }
        g.normalize(&mut q);
        *counts.entry(g.index_of_normalized(&q)).or_insert(0) += 1;
    }
    Ok(capped_valuation(counts.into_values(), f.p(), f.t()))
}

/// Full report, building the line census internally.
pub fn analyze(g: &Geometry, b: &PointSet, opts: &BlockingOptions) -> Result<BlockingReport, BlockingError> {
    let census = LineCensus::build(g, b);
    analyze_with_census(g, b, &census, opts)
}

pub fn analyze_with_census(
    g: &Geometry,
    b: &PointSet,
    census: &LineCensus,
    opts: &BlockingOptions,
) -> Result<BlockingReport, BlockingError> {
    let f = g.field();
    let (p, t) = (f.p(), f.t());
    let e_lines = census.exponent(p, t);
    let point_exponents: BTreeMap<u64, u32> =
        census.points().iter().enumerate().map(|(pos, &pt)| (pt, census.point_exponent(pos, p, t))).collect();

    let (blocking, unblocked, blocking_method, e_hyper, scan) = if g.n() <= 2 {
        let (ok, w) = if g.n() == 2 { plane_blocking(g, b, census) } else { (!b.is_empty(), None) };
        (ok, w, Method::LineCensus, Some(e_lines), None)
    } else if scan_work(g, b) <= opts.work_budget {
        let scan = hyperplane_scan(g, b, opts.work_budget)?;
        let e = capped_valuation(std::iter::once(scan.gcd), p, t);
        (scan.unblocked.is_none(), scan.unblocked, Method::HyperplaneScan, Some(e), Some(scan))
    } else {
        (rank_bound(g, opts)?, None, Method::RankBound, None, None)
    };

    let (minimal, witnesses, minimality_method) = if blocking && !b.is_empty() {
        let (tangents, method) = tangent_witnesses(g, b, scan.as_ref(), opts)?;
        let (ok, w) = witnesses_verdict(b, tangents, None);
        (ok, w, method)
    } else {
        let w = Witnesses { unblocked_hyperplane: unblocked, tangents: BTreeMap::new(), inessential: Vec::new() };
        (false, w, blocking_method)
    };

    let (exponent_e, exponent_source) = match e_hyper {
        Some(e) => (Some(e), ExponentSource::Hyperplanes),
        None => (Some(e_lines), ExponentSource::Lines),
    };
    let exponent_e = if blocking { exponent_e } else { None };
    let q0 = exponent_e.map(|e| (p as u64).pow(e));
    let h = exponent_e.filter(|&e| e > 0 && t % e == 0).map(|e| t / e);
    Ok(BlockingReport {
        n: g.n(),
        p,
        t,
        size: b.len(),
        kappa: b.len() as i64 - g.q() as i64,
        is_blocking: blocking,
        is_minimal: minimal,
        is_small: is_small(g, b),
        blocking_method,
        minimality_method,
        exponent_e,
        exponent_source,
        exponent_e_lines: e_lines,
        exponent_consistent: e_hyper.filter(|_| blocking).map(|e| e == e_lines),
        q0,
        h,
        h_integral: h.is_some(),
        span_dim: g.span_set(b).dim(),
        point_exponents,
        witnesses,
    })
}

/// Projection of `b` from `q` onto the hyperplane `hp`, re-coordinatized through the
/// pivot columns of the echelon basis of `hp`. Returns PG(n-1, q) and the image.
pub fn project(g: &Geometry, b: &PointSet, q: u64, hp: &Hyperplane) -> Result<(Geometry, PointSet), BlockingError> {
    if b.contains(q) {
        return Err(BlockingError::QInB);
    }
    let qc = g.coords(q);
    let f = g.field();
    let aq = f.dot(&hp.dual, &qc);
    if aq == 0 {
        return Err(BlockingError::QInH);
    }
    let target = Geometry::lazy(g.n() - 1, f.clone())?;
    let sub = g.hyperplane_subspace(hp);
    let pivots = sub.pivots();
    let mut x = vec![0; g.n() + 1];
    let mut y = vec![0; g.n()];
    let mut image = PointSet::new(target.num_points());
    for idx in b.iter() {
        g.coords_into(idx, &mut x);
        let ap = f.dot(&hp.dual, &x);
        for k in 0..x.len() {
            x[k] = f.sub(f.mul(aq, x[k]), f.mul(ap, qc[k]));
        }
        for (yi, &c) in y.iter_mut().zip(&pivots) {
            *yi = x[c];
        }
        target.normalize(&mut y);
        image.insert(target.index_of_normalized(&y));
    }
    Ok((target, image))
}

/// First point (in index order) outside `b` lying on no secant of `b`.
pub fn find_tangent_only_point(g: &Geometry, b: &PointSet, budget: u64) -> Result<Option<u64>, BlockingError> {
    let work = g.num_points().saturating_mul(b.len() as u64);
    let m = b.len();
    let mut q = vec![0; g.n() + 1];
    let mut scanned = 0u64;
    for idx in 0..g.num_points() {
        if b.contains(idx) {
            continue;
        }
        scanned += m as u64;
        if scanned > budget {
            return Err(BlockingError::BudgetExceeded { what: "tangent-only point scan", work, budget });
        }
        g.coords_into(idx, &mut q);
        if directions(g, b, &q).len() == m {
            return Ok(Some(idx));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RemovalOrder {
    Lex,
    Random(u64),
}

/// Removes points without a tangent hyperplane, in the given order, until minimal.
/// A single pass suffices: removals never destroy the tangents of the points kept.
pub fn reduce_to_minimal(g: &Geometry, b: &PointSet, order: RemovalOrder, opts: &BlockingOptions) -> Result<PointSet, BlockingError> {
    if !is_blocking(g, b, opts)?.0 {
        return Err(BlockingError::NotBlocking);
    }
    let mut pts = b.to_vec();
    if let RemovalOrder::Random(seed) = order {
        use rand::seq::SliceRandom;
        pts.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    let mut cur = b.clone();
    for p in pts {
        if tangent_hyperplane(g, &cur, p, opts)?.is_none() {
            cur.remove(p);
        }
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn plane(p: u32, t: u32) -> Geometry {
        Geometry::lazy(2, FieldSpec::auto(p, t).unwrap()).unwrap()
    }

    fn line(g: &Geometry) -> PointSet {
        let mut rows = vec![vec![0; g.n() + 1]; 2];
        rows[0][0] = 1;
        rows[1][1] = 1;
        g.points_of(&g.subspace_from_rows(rows))
    }

    #[test]
    fn line_in_plane() {
        let g = plane(7, 2);
        let b = line(&g);
        let r = analyze(&g, &b, &Default::default()).unwrap();
        assert!(r.is_blocking && r.is_minimal && r.is_small);
        assert_eq!(r.exponent_e, Some(2));
        assert_eq!(r.h, Some(1));
        assert_eq!(r.span_dim, 1);
        assert_eq!(r.witnesses.tangents.len(), 50);
        for (&pt, &h) in &r.witnesses.tangents {
            let hp = g.hyperplane(h).unwrap();
            let meet = g.set_meet(&b, &g.hyperplane_subspace(&hp));
            assert_eq!(meet.to_vec(), vec![pt]);
        }
    }

    #[test]
    fn single_point_is_not_blocking() {
        let g = plane(2, 2);
        let b = PointSet::from_indices(g.num_points(), [4]);
        let (ok, w) = is_blocking(&g, &b, &Default::default()).unwrap();
        assert!(!ok);
        let hp = g.hyperplane(w.unwrap()).unwrap();
        assert!(!g.incident(&hp, &g.coords(4)));
        assert_eq!(is_minimal(&g, &b, &Default::default()).unwrap_err(), BlockingError::NotBlocking);
    }

    #[test]
    fn line_plus_point_is_not_minimal() {
        let g = plane(7, 2);
        let mut b = line(&g);
        let extra = g.index_of(&[1, 2, 3]).unwrap();
        b.insert(extra);
        let (minimal, w) = is_minimal(&g, &b, &Default::default()).unwrap();
        assert!(!minimal);
        assert_eq!(w.inessential, vec![extra]);
    }

    #[test]
    fn hyperplane_scan_in_pg3() {
        let g = Geometry::lazy(3, FieldSpec::auto(3, 1).unwrap()).unwrap();
        let b = line(&g);
        let r = analyze(&g, &b, &Default::default()).unwrap();
        assert!(r.is_blocking && r.is_minimal);
        assert_eq!(r.blocking_method, Method::HyperplaneScan);
        assert_eq!(r.exponent_e, Some(1));
        assert_eq!(r.exponent_consistent, Some(true));
        // a plane blocks, but no plane is tangent to it
        let plane = g.subspace_from_rows(vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0]]);
        let r = analyze(&g, &g.points_of(&plane), &Default::default()).unwrap();
        assert!(r.is_blocking && !r.is_minimal);
        assert_eq!(r.witnesses.inessential.len(), 13);
        let r = analyze(&g, &PointSet::from_indices(g.num_points(), [7]), &Default::default()).unwrap();
        assert!(!r.is_blocking);
        assert!(r.witnesses.unblocked_hyperplane.is_some());
    }

    #[test]
    fn budget_forces_random_tangents_or_rank_bound() {
        let g = Geometry::lazy(3, FieldSpec::auto(3, 1).unwrap()).unwrap();
        let b = line(&g);
        let mut opts = BlockingOptions { work_budget: 10, ..Default::default() };
        assert!(matches!(analyze(&g, &b, &opts), Err(BlockingError::BudgetExceeded { .. })));
        opts.linear = Some(LinearSetInfo { e: 1, rank: 2 });
        let r = analyze(&g, &b, &opts).unwrap();
        assert_eq!(r.blocking_method, Method::RankBound);
        assert_eq!(r.minimality_method, Method::RandomTangents);
        assert_eq!(r.exponent_source, ExponentSource::Lines);
        assert!(r.is_minimal);
        for (&pt, &h) in &r.witnesses.tangents {
            let hp = g.hyperplane(h).unwrap();
            assert_eq!(g.set_meet(&b, &g.hyperplane_subspace(&hp)).to_vec(), vec![pt]);
        }
        let plane = g.points_of(&g.subspace_from_rows(vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0]]));
        assert!(matches!(
            tangent_hyperplane(&g, &plane, plane.first().unwrap(), &opts),
            Err(BlockingError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn point_exponents() {
        let g = plane(7, 2);
        let b = line(&g);
        assert_eq!(point_exponent(&g, &b, b.first().unwrap()).unwrap(), 2);
        assert_eq!(point_exponent(&g, &b, 9999 % g.num_points()).ok(), None);
    }

    #[test]
    fn projection_identity_on_hyperplane() {
        let g = Geometry::lazy(3, FieldSpec::auto(5, 1).unwrap()).unwrap();
        let hp = g.hyperplane_from_dual(&[0, 0, 0, 1]).unwrap();
        let sub = g.hyperplane_subspace(&hp);
        let b = PointSet::from_indices(g.num_points(), g.points_of(&sub).iter().take(9));
        let q = g.index_of(&[0, 0, 0, 1]).unwrap();
        let (target, img) = project(&g, &b, q, &hp).unwrap();
        assert_eq!(target.n(), 2);
        let back: Vec<u64> = b.iter().map(|i| target.index_of(&g.coords(i)[..3]).unwrap()).collect();
        assert_eq!(img, PointSet::from_indices(target.num_points(), back));
        assert_eq!(project(&g, &b, b.first().unwrap(), &hp).unwrap_err(), BlockingError::QInB);
        let inside = g.points_of(&sub).iter().find(|&i| !b.contains(i)).unwrap();
        assert_eq!(project(&g, &b, inside, &hp).unwrap_err(), BlockingError::QInH);
    }

    #[test]
    fn reduction_of_line_plus_points() {
        let g = plane(7, 2);
        let l = line(&g);
        let mut b = l.clone();
        for v in [[1, 2, 3], [1, 5, 9], [1, 17, 30]] {
            b.insert(g.index_of(&v).unwrap());
        }
        let opts = BlockingOptions::default();
        assert_eq!(reduce_to_minimal(&g, &b, RemovalOrder::Lex, &opts).unwrap(), l);
        for seed in 0..5 {
            assert_eq!(reduce_to_minimal(&g, &b, RemovalOrder::Random(seed), &opts).unwrap(), l);
        }
        assert_eq!(reduce_to_minimal(&g, &l, RemovalOrder::Lex, &opts).unwrap(), l);
    }

    #[test]
    fn tangent_only_point_off_a_line() {
        let g = Geometry::lazy(3, FieldSpec::auto(3, 1).unwrap()).unwrap();
        let l = line(&g);
        let q = find_tangent_only_point(&g, &l, u64::MAX).unwrap().unwrap();
        assert!(!l.contains(q));
        assert_eq!(q, 0);
    }
}
