//! Planes through a secant line, found by grouping the points of `B` off the line
//! according to the plane they span with it.

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use super::AnalysisError;
use crate::census::LineCensus;
use crate::field::Code;
use crate::geometry::Geometry;
use crate::linalg;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneInfo {
    /// Lowest point of the plane's intersection with `B` off the line.
    pub first_off_line: u64,
    /// `|Pi cap B|`
    pub count: usize,
    pub good: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneCensus {
    pub line: Vec<u64>,
    pub planes: Vec<PlaneInfo>,
}

impl PlaneCensus {
    pub fn good_count(&self) -> usize {
        self.planes.iter().filter(|p| p.good).count()
    }

    /// Smallest number of points off the line over the planes found.
    pub fn min_off_line(&self) -> Option<usize> {
        self.planes.iter().map(|p| p.count - self.line.len()).min()
    }
}

/// Groups the census points off secant `secant` by the plane they span with it.
/// Returns `(line positions, groups of positions)` with groups in order of their lowest point.
pub(crate) fn group_planes(g: &Geometry, coords: &[Code], census: &LineCensus, secant: usize) -> (Vec<u32>, Vec<Vec<u32>>) {
    let stride = g.n() + 1;
    let f = g.field();
    let line = census.secant(secant).to_vec();
    let a = line[0] as usize;
    let b = line[1] as usize;
    let mut rows = vec![coords[a * stride..(a + 1) * stride].to_vec(), coords[b * stride..(b + 1) * stride].to_vec()];
    let pivots = linalg::rref(f, &mut rows);
    let mut groups: FxHashMap<u64, usize> = FxHashMap::default();
    let mut out: Vec<Vec<u32>> = Vec::new();
    let mut v = vec![0; stride];
    let mut on_line = line.iter().peekable();
    for pos in 0..census.size() {
        if on_line.peek().is_some_and(|&&l| l as usize == pos) {
            on_line.next();
            continue;
        }
        v.copy_from_slice(&coords[pos * stride..(pos + 1) * stride]);
        linalg::reduce_against(f, &rows, &pivots, &mut v);
        g.normalize(&mut v);
        let key = g.index_of_normalized(&v);
        let slot = *groups.entry(key).or_insert_with(|| {
            out.push(Vec::new());
            out.len() - 1
        });
        out[slot].push(pos as u32);
    }
    (line, out)
}

pub fn plane_census(g: &Geometry, census: &LineCensus, secant: usize, q0: u64) -> Result<PlaneCensus, AnalysisError> {
    if secant >= census.num_secants() || census.secant(secant).len() as u64 != q0 + 1 {
        return Err(AnalysisError::NotASecant);
    }
    let coords = coords_of(g, census);
    Ok(plane_census_with(g, &coords, census, secant, q0))
}

pub(crate) fn coords_of(g: &Geometry, census: &LineCensus) -> Vec<Code> {
    let stride = g.n() + 1;
    let mut coords = vec![0; census.size() * stride];
    for (i, &p) in census.points().iter().enumerate() {
        g.coords_into(p, &mut coords[i * stride..(i + 1) * stride]);
    }
    coords
}

pub(crate) fn plane_census_with(g: &Geometry, coords: &[Code], census: &LineCensus, secant: usize, q0: u64) -> PlaneCensus {
    let (line, groups) = group_planes(g, coords, census, secant);
    let good_size = (q0 * q0 + q0 + 1) as usize;
    let planes = groups
        .iter()
        .map(|grp| {
            let count = line.len() + grp.len();
            PlaneInfo { first_off_line: census.points()[grp[0] as usize], count, good: count == good_size }
        })
        .collect();
    PlaneCensus { line: line.iter().map(|&i| census.points()[i as usize]).collect(), planes }
}
