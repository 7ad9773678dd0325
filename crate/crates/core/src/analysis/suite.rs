//! Runs every bound against a point set and reports PASS / FAIL / INFORMATIONAL /
//! OUTSIDE_HYPOTHESES per statement.

use rayon::prelude::*;
use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use super::bounds::{lemma_bound, BoundExtra, Lemma};
use super::certify::check_span_hypotheses;
use super::planes::{coords_of, group_planes};
use super::subline::{is_subline, is_subplane};
use crate::blocking::BlockingReport;
use crate::census::LineCensus;
use crate::geometry::{Geometry, Subspace};
use crate::pointset::PointSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Pass,
    Fail,
    Informational,
    OutsideHypotheses,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteEntry {
    pub lemma: String,
    pub anchor_quote: String,
    pub bound: Option<i64>,
    pub measured: Option<i64>,
    pub status: Status,
    pub scope: String,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct SuiteOptions {
    /// Plane censuses run through every secant when `#secants * |B|` stays below this.
    pub plane_budget: u64,
    /// Otherwise only secants through this many lowest points are used.
    pub anchors: usize,
    /// Cap on the number of distinct good planes tested for being subplanes.
    pub subplane_checks: usize,
    /// Restrict the suite to these statements; `None` runs all of them.
    pub only: Option<Vec<Lemma>>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { plane_budget: 200_000_000, anchors: 5, subplane_checks: 200, only: None }
    }
}

/// Sublines check over every (q0+1)-secant: `(checked, violations)`, violations given
/// by the lowest point of the offending secant.
pub fn check_sublines(g: &Geometry, census: &LineCensus, e: u32) -> (usize, Vec<u64>) {
    let q0 = (g.field().p() as usize).pow(e);
    let ids: Vec<usize> = census.secants_of_size(q0 + 1).collect();
    let bad: Vec<u64> = ids
        .par_iter()
        .filter_map(|&s| {
            let set = PointSet::from_indices(g.num_points(), census.secant_points(s));
            match is_subline(g, &set, e) {
                Ok(true) => None,
                _ => Some(census.points()[census.secant(s)[0] as usize]),
            }
        })
        .collect();
    (ids.len(), bad)
}

struct Ctx {
    ssm: bool,
    q0: u64,
    h: u32,
    integral: bool,
    spans: bool,
}

impl Ctx {
    fn status(&self, lemma: Lemma, holds: bool) -> Status {
        if lemma.needs_span() && !self.spans {
            return Status::OutsideHypotheses;
        }
        let below = self.h < lemma.min_h() || (lemma.needs_q0_at_least_7() && self.q0 < 7);
        if !self.ssm || !self.integral || below {
            return Status::Informational;
        }
        if holds {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

fn entry(lemma: Lemma, bound: Option<i64>, measured: Option<i64>, status: Status, scope: &str, detail: String) -> SuiteEntry {
    SuiteEntry {
        lemma: lemma.id().to_string(),
        anchor_quote: lemma.formula().to_string(),
        bound,
        measured,
        status,
        scope: scope.to_string(),
        detail,
    }
}

#[derive(Default)]
struct PlaneStats {
    min: Option<usize>,
    max: Option<usize>,
    min_above_good: Option<usize>,
    /// (q0+1)-secants: (secant id, good planes, fewest points off the line)
    secants: Vec<(usize, usize, Option<usize>)>,
    good_planes: Vec<Subspace>,
}

fn opt_min(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

fn opt_max(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

fn plane_stats(g: &Geometry, b: &PointSet, census: &LineCensus, q0: u64, scope: &[usize], spans: bool) -> PlaneStats {
    let good_size = (q0 * q0 + q0 + 1) as usize;
    let k = q0 as usize + 1;
    if g.n() == 2 {
        let mut st = PlaneStats::default();
        if spans {
            st.min = Some(b.len());
            st.max = Some(b.len());
            if b.len() > good_size {
                st.min_above_good = Some(b.len());
            }
        }
        let good = usize::from(spans && b.len() == good_size);
        for &s in scope.iter().filter(|&&s| census.secant(s).len() == k) {
            st.secants.push((s, good, spans.then(|| b.len() - k)));
        }
        return st;
    }
    let coords = coords_of(g, census);
    let per: Vec<PlaneStats> = scope
        .par_iter()
        .map(|&s| {
            let (line, groups) = group_planes(g, &coords, census, s);
            let mut st = PlaneStats::default();
            let mut good = 0;
            let mut min_off = None;
            for grp in &groups {
                let count = line.len() + grp.len();
                st.min = opt_min(st.min, Some(count));
                st.max = opt_max(st.max, Some(count));
                if count > good_size {
                    st.min_above_good = opt_min(st.min_above_good, Some(count));
                }
                min_off = opt_min(min_off, Some(grp.len()));
                if count == good_size {
                    good += 1;
                    if line.len() == k {
                        let pts = [line[0], line[1], grp[0]];
                        st.good_planes.push(g.subspace_from_rows(pts.iter().map(|&i| g.coords(census.points()[i as usize])).collect()));
                    }
                }
            }
            if line.len() == k {
                st.secants.push((s, good, min_off));
            }
            st
        })
        .collect();
    let mut acc = PlaneStats::default();
    for st in per {
        acc.min = opt_min(acc.min, st.min);
        acc.max = opt_max(acc.max, st.max);
        acc.min_above_good = opt_min(acc.min_above_good, st.min_above_good);
        acc.secants.extend(st.secants);
        acc.good_planes.extend(st.good_planes);
    }
    acc
}

pub fn run_lemma_suite(g: &Geometry, b: &PointSet, census: &LineCensus, report: &BlockingReport, opts: &SuiteOptions) -> Vec<SuiteEntry> {
    let f = g.field();
    let (p, t) = (f.p(), f.t());
    let ssm = report.is_blocking && report.is_minimal && report.is_small;
    let e = report.exponent_e.unwrap_or(report.exponent_e_lines);
    let q0 = (p as u64).pow(e);
    let integral = e > 0 && t % e == 0;
    let h = if integral { t / e } else { 0 };
    let spans = check_span_hypotheses(q0, h, report.span_dim).spans_h_minus_1;
    let ctx = Ctx { ssm, q0, h, integral, spans };
    let k = q0 as usize + 1;
    let bound = |lemma: Lemma, extra: Option<&BoundExtra>| lemma_bound(lemma, q0, h, extra).ok();
    let mut out = Vec::new();

    // lines
    let violations: u64 = census.mod_p_violations(p as u64).iter().map(|&(_, c)| c).sum();
    out.push(entry(
        Lemma::OneModP,
        Some(0),
        Some(violations as i64),
        ctx.status(Lemma::OneModP, violations == 0),
        "exhaustive",
        format!("{} lines meet B, size histogram {:?}", census.lines_meeting(), census.histogram()),
    ));
    if integral {
        let (checked, bad) = check_sublines(g, census, e);
        out.push(entry(
            Lemma::Sublines,
            Some(0),
            Some(bad.len() as i64),
            ctx.status(Lemma::Sublines, bad.is_empty()),
            "exhaustive",
            format!("{checked} secants of size {k} checked, violations at {bad:?}"),
        ));
    } else {
        out.push(entry(Lemma::Sublines, None, None, Status::Informational, "none", format!("e = {e} does not divide t = {t}")));
    }

    let size_bound = bound(Lemma::Size, None);
    out.push(entry(
        Lemma::Size,
        size_bound.map(|b| b.value),
        Some(b.len() as i64),
        ctx.status(Lemma::Size, size_bound.is_some_and(|bd| b.len() as i64 <= bd.value)),
        "exhaustive",
        truncation_note(size_bound.is_some_and(|b| b.truncated)),
    ));

    let q0_counts: Vec<u64> =
        (0..census.size()).map(|pos| census.secants_of_size_through(pos, k)).filter(|&c| c > 0).collect();
    let qb = bound(Lemma::Q0Secants, None);
    let min_q0 = q0_counts.iter().min().copied();
    out.push(entry(
        Lemma::Q0Secants,
        qb.map(|b| b.value),
        min_q0.map(|c| c as i64),
        ctx.status(Lemma::Q0Secants, min_q0.is_none_or(|c| qb.is_some_and(|b| c as i64 >= b.value))),
        "exhaustive",
        format!("{} points on a {k}-secant; {}", q0_counts.len(), truncation_note(qb.is_some_and(|b| b.truncated))),
    ));

    if g.n() == 2 {
        let mut worst: Option<(i64, i64, u64)> = None;
        for pos in 0..census.size() {
            let e_p = census.point_exponent(pos, p, t);
            let x = BoundExtra { q: g.q(), kappa: report.kappa, p, e_p };
            let bd = lemma_bound(Lemma::Blokhuis, q0, h, Some(&x)).unwrap().value;
            let m = census.secant_count(pos) as i64;
            if worst.is_none_or(|(wb, wm, _)| m - bd < wm - wb) {
                worst = Some((bd, m, census.points()[pos]));
            }
        }
        let holds = worst.is_none_or(|(bd, m, _)| m >= bd);
        let status = ctx.status(Lemma::Blokhuis, holds);
        out.push(entry(
            Lemma::Blokhuis,
            worst.map(|w| w.0),
            worst.map(|w| w.1),
            status,
            "exhaustive",
            worst.map_or("empty set".into(), |w| format!("tightest at point {}", w.2)),
        ));
    } else {
        out.push(entry(Lemma::Blokhuis, None, None, Status::OutsideHypotheses, "none", "stated for planes only".into()));
    }

    let de = bound(Lemma::DoubleExponent, None);
    let doubles: Vec<u64> = (0..census.size())
        .filter(|&pos| integral && census.point_exponent(pos, p, t) == 2 * e)
        .map(|pos| census.secant_count(pos))
        .collect();
    let min_de = doubles.iter().min().copied();
    out.push(entry(
        Lemma::DoubleExponent,
        de.map(|b| b.value),
        min_de.map(|c| c as i64),
        ctx.status(Lemma::DoubleExponent, min_de.is_none_or(|c| de.is_some_and(|b| c as i64 >= b.value))),
        "exhaustive",
        format!("{} points with e_P = 2e; {}", doubles.len(), truncation_note(de.is_some_and(|b| b.truncated))),
    ));

    let wanted = |l: &Lemma| opts.only.as_ref().is_none_or(|only| only.contains(l));
    const PLANE_LEMMAS: [Lemma; 6] =
        [Lemma::PlaneLower, Lemma::PlaneLinear, Lemma::PlaneGap, Lemma::PlaneCap, Lemma::GoodPlanes, Lemma::SingleBadSecant];
    if !PLANE_LEMMAS.iter().any(wanted) {
        out.retain(|e| Lemma::from_id(&e.lemma).is_some_and(|l| wanted(&l)));
        return out;
    }

    // planes
    let total_work = (census.num_secants() as u64).saturating_mul(census.size() as u64);
    let (scope_ids, scope_points, scope_name): (Vec<usize>, Vec<usize>, String) =
        if g.n() == 2 || total_work <= opts.plane_budget {
            ((0..census.num_secants()).collect(), (0..census.size()).collect(), "exhaustive".into())
        } else {
            let anchors: Vec<usize> = (0..census.size().min(opts.anchors)).collect();
            let mut ids = FxHashSet::default();
            for &a in &anchors {
                ids.extend(census.secants_through(a));
            }
            let mut ids: Vec<usize> = ids.into_iter().collect();
            ids.sort_unstable();
            let name = format!("planes through secants at the {} lowest points", anchors.len());
            (ids, anchors, name)
        };
    let st = plane_stats(g, b, census, q0, &scope_ids, g.n() > 2 || report.span_dim == 2);

    let lower = bound(Lemma::PlaneLower, None).map(|b| b.value);
    out.push(entry(
        Lemma::PlaneLower,
        lower,
        st.min.map(|m| m as i64),
        ctx.status(Lemma::PlaneLower, st.min.is_none_or(|m| Some(m as i64) >= lower)),
        &scope_name,
        String::new(),
    ));

    let mut distinct: Vec<Subspace> = st.good_planes.clone();
    if g.n() == 2 && report.span_dim == 2 && b.len() as u64 == q0 * q0 + q0 + 1 {
        distinct.push(g.span_set(b));
    }
    distinct.sort();
    distinct.dedup();
    distinct.truncate(opts.subplane_checks);
    let not_subplanes = distinct
        .par_iter()
        .filter(|pl| {
            let meet = g.set_meet(b, pl);
            !matches!(is_subplane(g, &meet, e), Ok(true))
        })
        .count();
    out.push(entry(
        Lemma::PlaneLinear,
        Some(0),
        Some(not_subplanes as i64),
        ctx.status(Lemma::PlaneLinear, not_subplanes == 0),
        &scope_name,
        format!("{} planes with q0^2+q0+1 points checked", distinct.len()),
    ));

    let gap = bound(Lemma::PlaneGap, None).map(|b| b.value);
    out.push(entry(
        Lemma::PlaneGap,
        gap,
        st.min_above_good.map(|m| m as i64),
        ctx.status(Lemma::PlaneGap, st.min_above_good.is_none_or(|m| Some(m as i64) >= gap)),
        &scope_name,
        "smallest plane intersection above q0^2+q0+1".into(),
    ));

    let cap = bound(Lemma::PlaneCap, None).map(|b| b.value);
    out.push(entry(
        Lemma::PlaneCap,
        cap,
        st.max.map(|m| m as i64),
        ctx.status(Lemma::PlaneCap, st.max.is_none_or(|m| Some(m as i64) <= cap)),
        &scope_name,
        String::new(),
    ));

    let gp = bound(Lemma::GoodPlanes, None);
    let heavy = (q0 * q0 * q0 + q0 + 1) as usize;
    let mut all_bad = 0;
    let mut gp_violations = 0;
    let mut min_positive: Option<usize> = None;
    for &(_, good, min_off) in &st.secants {
        if good == 0 {
            all_bad += 1;
            if min_off.is_some_and(|m| m < heavy) {
                gp_violations += 1;
            }
        } else {
            min_positive = opt_min(min_positive, Some(good));
            if gp.is_some_and(|b| (good as i64) < b.value) {
                gp_violations += 1;
            }
        }
    }
    out.push(entry(
        Lemma::GoodPlanes,
        gp.map(|b| b.value),
        min_positive.map(|m| m as i64),
        ctx.status(Lemma::GoodPlanes, gp_violations == 0),
        &scope_name,
        format!(
            "{} secants of size {k}, {all_bad} on bad planes only, {gp_violations} violations; {}",
            st.secants.len(),
            truncation_note(gp.is_some_and(|b| b.truncated))
        ),
    ));

    let bad_ids: FxHashSet<usize> = st.secants.iter().filter(|s| s.1 == 0).map(|s| s.0).collect();
    let mut per_point = vec![0i64; census.size()];
    for &s in &bad_ids {
        for &pos in census.secant(s) {
            per_point[pos as usize] += 1;
        }
    }
    let worst = scope_points.iter().map(|&pos| per_point[pos]).max();
    out.push(entry(
        Lemma::SingleBadSecant,
        Some(1),
        worst,
        ctx.status(Lemma::SingleBadSecant, worst.is_none_or(|w| w <= 1)),
        &scope_name,
        truncation_note(h < Lemma::SingleBadSecant.min_h()),
    ));
    out.retain(|e| Lemma::from_id(&e.lemma).is_some_and(|l| wanted(&l)));
    out
}

fn truncation_note(truncated: bool) -> String {
    if truncated {
        "terms with negative exponents dropped".into()
    } else {
        String::new()
    }
}
