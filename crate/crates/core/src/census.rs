//! Line census of a point set: every line meeting `B` in at least two points is found
//! by grouping the other points of `B` around each point, so the cost is `O(|B|^2)`
//! regardless of the size of the ambient space.

use std::collections::BTreeMap;

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::field::Code;
use crate::geometry::Geometry;
use crate::pointset::PointSet;

#[derive(Debug, Clone)]
pub struct LineCensus {
    points: Vec<u64>,
    lines_per_point: u64,
    /// `k -> number of lines meeting B in exactly k points`, for `k >= 1`.
    histogram: BTreeMap<u64, u64>,
    offsets: Vec<usize>,
    arena: Vec<u32>,
    /// Per point: `(k, number of k-secants through it)` for `k >= 2`, ascending in `k`.
    point_sizes: Vec<Vec<(u32, u32)>>,
}

struct PointScan {
    sizes: Vec<(u32, u32)>,
    lines: Vec<Vec<u32>>,
}

impl LineCensus {
    pub fn build(g: &Geometry, b: &PointSet) -> LineCensus {
        let points = b.to_vec();
        let m = points.len();
        let stride = g.n() + 1;
        let coords = g.coords_of_set(b);
        let scans: Vec<PointScan> = (0..m)
            .into_par_iter()
            .map_init(
                || (FxHashMap::<u64, (u32, u32)>::default(), vec![0u64; m], vec![0 as Code; stride]),
                |(groups, keys, v), pos| scan_point(g, &coords, stride, pos, groups, keys, v),
            )
            .collect();

        let mut offsets = vec![0];
        let mut arena = Vec::new();
        let mut histogram = BTreeMap::new();
        let mut point_sizes = Vec::with_capacity(m);
        for scan in scans {
            for line in scan.lines {
                *histogram.entry(line.len() as u64).or_insert(0) += 1;
                arena.extend_from_slice(&line);
                offsets.push(arena.len());
            }
            point_sizes.push(scan.sizes);
        }
        let lines_per_point = g.lines_through_point();
        let incidences: u64 = point_sizes.iter().flatten().map(|&(_, c)| c as u64).sum();
        let tangents = m as u64 * lines_per_point - incidences;
        if tangents > 0 {
            histogram.insert(1, tangents);
        }
        LineCensus { points, lines_per_point, histogram, offsets, arena, point_sizes }
    }

    pub fn size(&self) -> usize {
        self.points.len()
    }

    /// Points of `B` in ascending order; census positions index into this.
    pub fn points(&self) -> &[u64] {
        &self.points
    }

    pub fn position(&self, point: u64) -> Option<usize> {
        self.points.binary_search(&point).ok()
    }

    pub fn histogram(&self) -> &BTreeMap<u64, u64> {
        &self.histogram
    }

    pub fn lines_meeting(&self) -> u64 {
        self.histogram.values().sum()
    }

    pub fn num_secants(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Positions of the points on secant `i`, ascending.
    pub fn secant(&self, i: usize) -> &[u32] {
        &self.arena[self.offsets[i]..self.offsets[i + 1]]
    }

    pub fn secant_points(&self, i: usize) -> Vec<u64> {
        self.secant(i).iter().map(|&j| self.points[j as usize]).collect()
    }

    pub fn secants_of_size(&self, k: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.num_secants()).filter(move |&i| self.secant(i).len() == k)
    }

    /// Secants through the point at `pos`, in census order.
    pub fn secants_through(&self, pos: usize) -> Vec<usize> {
        let pos = pos as u32;
        (0..self.num_secants()).filter(|&i| self.secant(i).binary_search(&pos).is_ok()).collect()
    }

    pub fn point_histogram(&self, pos: usize) -> &[(u32, u32)] {
        &self.point_sizes[pos]
    }

    pub fn secant_count(&self, pos: usize) -> u64 {
        self.point_sizes[pos].iter().map(|&(_, c)| c as u64).sum()
    }

    pub fn secants_of_size_through(&self, pos: usize, k: usize) -> u64 {
        self.point_sizes[pos].iter().find(|&&(s, _)| s as usize == k).map_or(0, |&(_, c)| c as u64)
    }

    pub fn tangents_through(&self, pos: usize) -> u64 {
        self.lines_per_point - self.secant_count(pos)
    }

    /// Every pair of points lies on exactly one line: `sum C(k,2) N_k = C(|B|,2)`.
    pub fn pair_identity_holds(&self) -> bool {
        let m = self.points.len() as u128;
        let pairs: u128 = self.histogram.iter().map(|(&k, &c)| (k as u128 * (k as u128 - 1) / 2) * c as u128).sum();
        pairs == m * m.saturating_sub(1) / 2
    }

    /// Line sizes `k` (with multiplicity) violating `k = 1 mod p`.
    pub fn mod_p_violations(&self, p: u64) -> Vec<(u64, u64)> {
        self.histogram.iter().filter(|(&k, _)| k % p != 1 % p).map(|(&k, &c)| (k, c)).collect()
    }

    /// Largest `e <= t` with every line meeting B in `1 mod p^e` points.
    pub fn exponent(&self, p: u32, t: u32) -> u32 {
        capped_valuation(self.histogram.keys().map(|&k| k - 1), p, t)
    }

    /// Same as [`Self::exponent`], restricted to lines through the point at `pos`.
    pub fn point_exponent(&self, pos: usize, p: u32, t: u32) -> u32 {
        capped_valuation(self.point_sizes[pos].iter().map(|&(k, _)| k as u64 - 1), p, t)
    }
}

/// `min(t, v_p(gcd(values)))`, treating zeros as divisible by everything.
pub fn capped_valuation(values: impl Iterator<Item = u64>, p: u32, t: u32) -> u32 {
    let g = values.fold(0u64, gcd);
    if g == 0 {
        return t;
    }
    let mut e = 0;
    let mut g = g;
    while e < t && g % p as u64 == 0 {
        g /= p as u64;
        e += 1;
    }
    e
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn scan_point(
    g: &Geometry,
    coords: &[Code],
    stride: usize,
    pos: usize,
    groups: &mut FxHashMap<u64, (u32, u32)>,
    keys: &mut [u64],
    v: &mut [Code],
) -> PointScan {
    let f = g.field();
    let m = keys.len();
    let p = &coords[pos * stride..(pos + 1) * stride];
    let lead = p.iter().position(|&c| c != 0).unwrap();
    groups.clear();
    // (count, first member) per direction through P
    for j in 0..m {
        if j == pos {
            continue;
        }
        let q = &coords[j * stride..(j + 1) * stride];
        let c = q[lead];
        for k in 0..stride {
            v[k] = f.sub(q[k], f.mul(c, p[k]));
        }
        g.normalize(v);
        let key = g.index_of_normalized(v);
        keys[j] = key;
        groups.entry(key).and_modify(|e| e.0 += 1).or_insert((1, j as u32));
    }

    let mut size_counts: FxHashMap<u32, u32> = FxHashMap::default();
    let mut owned: FxHashMap<u64, usize> = FxHashMap::default();
    let mut firsts: Vec<(u32, u64)> = Vec::new();
    for (&key, &(count, first)) in groups.iter() {
        *size_counts.entry(count + 1).or_insert(0) += 1;
        if first as usize > pos {
            firsts.push((first, key));
        }
    }
    firsts.sort_unstable();
    let mut lines: Vec<Vec<u32>> = firsts
        .iter()
        .enumerate()
        .map(|(slot, &(_, key))| {
            owned.insert(key, slot);
            let mut l = Vec::with_capacity(groups[&key].0 as usize + 1);
            l.push(pos as u32);
            l
        })
        .collect();
    if !lines.is_empty() {
        for (j, &key) in keys.iter().enumerate().skip(pos + 1) {
            if let Some(&slot) = owned.get(&key) {
                lines[slot].push(j as u32);
            }
        }
    }
    let mut sizes: Vec<(u32, u32)> = size_counts.into_iter().collect();
    sizes.sort_unstable();
    PointScan { sizes, lines }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    #[test]
    fn census_of_a_line() {
        let g = Geometry::lazy(2, FieldSpec::auto(7, 2).unwrap()).unwrap();
        let l = g.subspace_from_rows(vec![vec![1, 0, 0], vec![0, 1, 0]]);
        let b = g.points_of(&l);
        let c = LineCensus::build(&g, &b);
        assert_eq!(c.num_secants(), 1);
        assert_eq!(c.histogram()[&50], 1);
        assert_eq!(c.histogram()[&1], 50 * 49);
        assert_eq!(c.lines_meeting(), 2451);
        assert!(c.pair_identity_holds());
        assert_eq!(c.exponent(7, 2), 2);
        assert_eq!(c.point_exponent(3, 7, 2), 2);
        assert_eq!(c.tangents_through(0), 49);
    }

    #[test]
    fn census_matches_brute_force_line_scan() {
        // a few scattered points of PG(2,4), checked against every line
        let g = Geometry::build(2, FieldSpec::auto(2, 2).unwrap(), Default::default()).unwrap();
        let b = PointSet::from_indices(g.num_points(), [0, 1, 2, 5, 9, 13, 17, 20]);
        let c = LineCensus::build(&g, &b);
        let mut brute: BTreeMap<u64, u64> = BTreeMap::new();
        for l in g.subspaces_of_dim(1) {
            let k = g.set_meet(&b, &l).len() as u64;
            if k > 0 {
                *brute.entry(k).or_insert(0) += 1;
            }
        }
        assert_eq!(c.histogram(), &brute);
        assert!(c.pair_identity_holds());
        for i in 0..c.num_secants() {
            let pts = c.secant_points(i);
            let l = g.subspace_from_rows(vec![g.coords(pts[0]), g.coords(pts[1])]);
            assert_eq!(g.set_meet(&b, &l).to_vec(), pts);
        }
    }

    #[test]
    fn valuation() {
        assert_eq!(capped_valuation([7u64, 49].into_iter(), 7, 3), 1);
        assert_eq!(capped_valuation([0u64, 49].into_iter(), 7, 1), 1);
        assert_eq!(capped_valuation(std::iter::empty(), 7, 2), 2);
        assert_eq!(capped_valuation([3u64].into_iter(), 7, 2), 0);
    }
}
