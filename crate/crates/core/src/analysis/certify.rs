//! Constructive linearity check: lift the (q0+1)-secants through a point to lines of
//! the reduced space through a common point `x`, span them to `xi` and compare
//! `B(xi)` with `B`.

use serde::{Deserialize, Serialize};

use super::AnalysisError;
use crate::blocking::BlockingReport;
use crate::census::LineCensus;
use crate::field::Code;
use crate::geometry::Geometry;
use crate::pointset::PointSet;
use crate::reduction::{ReductionError, SpreadContext};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanHypotheses {
    pub q0: u64,
    pub h: u32,
    pub span_dim: isize,
    pub h_above_3: bool,
    pub q0_above_5h_minus_11: bool,
    pub q0_at_least_7: bool,
    pub spans_h_minus_1: bool,
    pub inside: bool,
}

impl SpanHypotheses {
    pub fn label(&self) -> &'static str {
        if self.inside {
            "inside-hypotheses"
        } else {
            "outside-hypotheses"
        }
    }
}

pub fn check_span_hypotheses(q0: u64, h: u32, span_dim: isize) -> SpanHypotheses {
    let h_above_3 = h > 3;
    let q0_above_5h_minus_11 = q0 as i64 > 5 * h as i64 - 11;
    let q0_at_least_7 = q0 >= 7;
    let spans_h_minus_1 = span_dim == h as isize - 1;
    SpanHypotheses {
        q0,
        h,
        span_dim,
        h_above_3,
        q0_above_5h_minus_11,
        q0_at_least_7,
        spans_h_minus_1,
        inside: h_above_3 && q0_above_5h_minus_11 && q0_at_least_7 && spans_h_minus_1,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearityCertificate {
    pub anchor: u64,
    pub x: Vec<Code>,
    pub lifted_lines: Vec<Vec<Vec<Code>>>,
    pub skipped: usize,
    pub xi: Vec<Vec<Code>>,
    pub xi_dim: isize,
    pub verified: bool,
    pub q0: u64,
    pub h: u32,
    pub attempts: usize,
    pub hypotheses: SpanHypotheses,
    pub label: String,
}

#[derive(Debug, Clone)]
pub struct CertifyOptions {
    /// Total (anchor, x) pairs tried before giving up.
    pub max_attempts: usize,
    /// Choices of `x` tried per anchor point.
    pub x_per_anchor: usize,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions { max_attempts: 5, x_per_anchor: 2 }
    }
}

pub fn certify_linearity(
    g: &Geometry,
    b: &PointSet,
    census: &LineCensus,
    report: &BlockingReport,
    opts: &CertifyOptions,
) -> Result<LinearityCertificate, AnalysisError> {
    if !(report.is_blocking && report.is_minimal && report.is_small) {
        return Err(AnalysisError::NotSmallMinimal);
    }
    let e = report.exponent_e.ok_or(AnalysisError::NotSmallMinimal)?;
    let h = report.h.ok_or(AnalysisError::NonIntegralDegree { e, t: report.t })?;
    let q0 = (report.p as u64).pow(e);
    let k = q0 as usize + 1;
    let ctx = SpreadContext::new(g.n(), g.field().clone(), e)?;
    let hypotheses = check_span_hypotheses(q0, h, report.span_dim);

    let anchors = (0..census.size()).filter(|&pos| census.secants_of_size_through(pos, k) > 0);
    let mut attempts = 0;
    let mut last = None;
    'outer: for pos in anchors {
        let anchor = census.points()[pos];
        let secants: Vec<PointSet> = census
            .secants_through(pos)
            .into_iter()
            .filter(|&s| census.secant(s).len() == k)
            .map(|s| PointSet::from_indices(g.num_points(), census.secant_points(s)))
            .collect();
        let element = ctx.spread_element(&g.point(anchor)?);
        for x in ctx.reduced().subspace_vectors(&element).take(opts.x_per_anchor) {
            if attempts == opts.max_attempts {
                break 'outer;
            }
            attempts += 1;
            let mut lines = Vec::new();
            let mut skipped = 0;
            for s in &secants {
                match ctx.lift_subline(s, anchor, &x) {
                    Ok(l) => lines.push(l),
                    Err(ReductionError::LiftInconsistent | ReductionError::NotASubline) => skipped += 1,
                    Err(err) => return Err(err.into()),
                }
            }
            let rows: Vec<Vec<Code>> = lines.iter().flat_map(|l| l.rows().iter().cloned()).collect();
            let xi = ctx.reduced_subspace(rows);
            let xi_dim = xi.dim();
            let verified = xi_dim == h as isize && !xi.is_empty() && ctx.linear_set_from_subspace(&xi)? == *b;
            let cert = LinearityCertificate {
                anchor,
                x,
                lifted_lines: lines.iter().map(|l| l.rows().to_vec()).collect(),
                skipped,
                xi: xi.rows().to_vec(),
                xi_dim,
                verified,
                q0,
                h,
                attempts,
                label: hypotheses.label().to_string(),
                hypotheses: hypotheses.clone(),
            };
            if verified {
                return Ok(cert);
            }
            last = Some(cert);
        }
    }
    last.ok_or(AnalysisError::NoSecant)
}
