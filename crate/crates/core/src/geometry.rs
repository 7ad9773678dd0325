//! Points, subspaces and hyperplanes of PG(n, q).
//!
//! A point is a nonzero vector of `V(n+1, q)` normalized so that its leftmost nonzero
//! coordinate is 1. Its index is its rank among all normalized vectors in lexicographic
//! order of the coordinate codes, so `(0,..,0,1)` is point 0 and `(1,q-1,..,q-1)` is the
//! last point. The index is computed arithmetically; no point table is stored, which is
//! what lets the reduced spaces of field reduction stay lazy.
//!
//! Hyperplanes are indexed the same way through their normalized dual vectors.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::field::{Code, FieldSpec};
use crate::linalg;
use crate::pointset::PointSet;

/// Default cap on the number of points of a geometry built with [`Geometry::build`].
pub const DEFAULT_POINT_BUDGET: u64 = 1 << 27;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("PG({n},{q}) has {points} points, above the budget of {budget}")]
    BudgetExceeded { n: usize, q: u64, points: u64, budget: u64 },
    #[error("PG({n},{q}) is too large to index with 64-bit integers")]
    Overflow { n: usize, q: u64 },
    #[error("a line needs two distinct points")]
    EqualPoints,
    #[error("the zero vector is not a projective point")]
    ZeroVector,
    #[error("expected a vector of length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("coordinate code {0} is out of range")]
    CodeOutOfRange(Code),
    #[error("index {0} is out of range")]
    IndexOutOfRange(u64),
}

#[derive(Debug, Clone, Copy)]
pub struct BuildOptions {
    pub materialize_lines: bool,
    pub budget: u64,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { materialize_lines: false, budget: DEFAULT_POINT_BUDGET }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    pub coords: Vec<Code>,
    pub index: u64,
}

/// A projective subspace stored as its reduced row echelon basis, which is the
/// canonical representative: equal subspaces have identical rows.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    n: usize,
    rows: Vec<Vec<Code>>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {}, {:?})", self.dim(), self.rows)
    }
}

impl Subspace {
    pub fn empty(n: usize) -> Self {
        Subspace { n, rows: Vec::new() }
    }

    /// Projective dimension; -1 for the empty subspace.
    pub fn dim(&self) -> isize {
        self.rows.len() as isize - 1
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<Code>] {
        &self.rows
    }

    /// Pivot columns of the echelon basis.
    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.iter().position(|&x| x != 0).unwrap()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hyperplane {
    pub dual: Vec<Code>,
    pub index: u64,
}

/// Lexicographic odometer over normalized vectors of a fixed length.
#[derive(Debug, Clone)]
pub struct NormalizedVectors {
    q: Code,
    cur: Vec<Code>,
    lead: usize,
    done: bool,
}

impl NormalizedVectors {
    pub fn new(len: usize, q: Code) -> Self {
        let mut cur = vec![0; len];
        let done = len == 0;
        if !done {
            cur[len - 1] = 1;
        }
        NormalizedVectors { q, cur, lead: len.saturating_sub(1), done }
    }
}

impl Iterator for NormalizedVectors {
    type Item = Vec<Code>;

    fn next(&mut self) -> Option<Vec<Code>> {
        if self.done {
            return None;
        }
        let out = self.cur.clone();
        let len = self.cur.len();
        let mut pos = len;
        loop {
            if pos == self.lead + 1 {
                // tail overflowed: move the leading 1 one step left
                if self.lead == 0 {
                    self.done = true;
                } else {
                    self.cur[self.lead] = 0;
                    self.lead -= 1;
                    self.cur[self.lead] = 1;
                }
                break;
            }
            pos -= 1;
            self.cur[pos] += 1;
            if self.cur[pos] < self.q {
                break;
            }
            self.cur[pos] = 0;
        }
        Some(out)
    }
}

#[derive(Clone)]
pub struct Geometry {
    n: usize,
    field: Arc<FieldSpec>,
    q: u64,
    block: Vec<u64>,
    lines: Option<Vec<Subspace>>,
}

impl fmt::Debug for Geometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PG({}, {})", self.n, self.q)
    }
}

impl Geometry {
    /// A geometry with no materialized tables and no size guard.
    pub fn lazy(n: usize, field: Arc<FieldSpec>) -> Result<Self, GeometryError> {
        let q = field.q() as u64;
        let mut qpow = vec![1u64];
        let mut block = vec![0u64];
        for k in 0..=n {
            let next_pow = qpow[k].checked_mul(q).ok_or(GeometryError::Overflow { n, q })?;
            let next_block = block[k].checked_add(qpow[k]).ok_or(GeometryError::Overflow { n, q })?;
            qpow.push(next_pow);
            block.push(next_block);
        }
        Ok(Geometry { n, field, q, block, lines: None })
    }

    pub fn build(n: usize, field: Arc<FieldSpec>, opts: BuildOptions) -> Result<Self, GeometryError> {
        let mut g = Self::lazy(n, field)?;
        if g.num_points() > opts.budget {
            return Err(GeometryError::BudgetExceeded { n, q: g.q, points: g.num_points(), budget: opts.budget });
        }
        if opts.materialize_lines && n >= 1 {
            g.lines = Some(g.subspaces_of_dim(1).collect());
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn num_points(&self) -> u64 {
        self.block[self.n + 1]
    }

    pub fn num_hyperplanes(&self) -> u64 {
        self.num_points()
    }

    /// Number of points of a projective k-space over the same field.
    pub fn points_in_dim(&self, k: isize) -> u64 {
        if k < 0 {
            0
        } else {
            self.block[k as usize + 1]
        }
    }

    /// Number of lines through a point: (q^n - 1)/(q - 1).
    pub fn lines_through_point(&self) -> u64 {
        self.block[self.n]
    }

    pub fn lines(&self) -> Option<&[Subspace]> {
        self.lines.as_deref()
    }

    /// Scales `v` so that its leftmost nonzero coordinate is 1. Returns the leading
    /// position, or `None` for the zero vector.
    #[inline]
    pub fn normalize(&self, v: &mut [Code]) -> Option<usize> {
        let lead = v.iter().position(|&x| x != 0)?;
        let c = v[lead];
        if c != 1 {
            let inv = self.field.inv(c);
            v[lead] = 1;
            for x in v[lead + 1..].iter_mut() {
                *x = self.field.mul(*x, inv);
            }
        }
        Some(lead)
    }

    /// Index of an already normalized vector.
    #[inline]
    pub fn index_of_normalized(&self, v: &[Code]) -> u64 {
        let lead = v.iter().position(|&x| x != 0).expect("zero vector");
        let mut tail = 0u64;
        for &x in &v[lead + 1..] {
            tail = tail * self.q + x as u64;
        }
        self.block[self.n - lead] + tail
    }

    /// Normalizes a copy of `v` and returns its index.
    pub fn index_of(&self, v: &[Code]) -> Result<u64, GeometryError> {
        self.check_vector(v)?;
        let mut w = v.to_vec();
        self.normalize(&mut w).ok_or(GeometryError::ZeroVector)?;
        Ok(self.index_of_normalized(&w))
    }

    fn check_vector(&self, v: &[Code]) -> Result<(), GeometryError> {
        if v.len() != self.n + 1 {
            return Err(GeometryError::DimensionMismatch { expected: self.n + 1, got: v.len() });
        }
        if let Some(&bad) = v.iter().find(|&&x| x as u64 >= self.q) {
            return Err(GeometryError::CodeOutOfRange(bad));
        }
        Ok(())
    }

    #[inline]
    pub fn coords_into(&self, index: u64, out: &mut [Code]) {
        debug_assert!(index < self.num_points());
        let mut k = 0;
        while index >= self.block[k + 1] {
            k += 1;
        }
        let lead = self.n - k;
        let mut tail = index - self.block[k];
        out[..lead].fill(0);
        out[lead] = 1;
        for pos in (lead + 1..=self.n).rev() {
            out[pos] = (tail % self.q) as Code;
            tail /= self.q;
        }
    }

    pub fn coords(&self, index: u64) -> Vec<Code> {
        let mut v = vec![0; self.n + 1];
        self.coords_into(index, &mut v);
        v
    }

    pub fn point(&self, index: u64) -> Result<ProjPoint, GeometryError> {
        if index >= self.num_points() {
            return Err(GeometryError::IndexOutOfRange(index));
        }
        Ok(ProjPoint { coords: self.coords(index), index })
    }

    pub fn point_from_coords(&self, v: &[Code]) -> Result<ProjPoint, GeometryError> {
        self.check_vector(v)?;
        let mut w = v.to_vec();
        self.normalize(&mut w).ok_or(GeometryError::ZeroVector)?;
        let index = self.index_of_normalized(&w);
        Ok(ProjPoint { coords: w, index })
    }

    /// Coordinates of every point of `set`, flattened with stride n+1.
    pub fn coords_of_set(&self, set: &PointSet) -> Vec<Code> {
        let stride = self.n + 1;
        let mut out = vec![0; set.len() * stride];
        for (i, idx) in set.iter().enumerate() {
            self.coords_into(idx, &mut out[i * stride..(i + 1) * stride]);
        }
        out
    }

    pub fn hyperplane(&self, index: u64) -> Result<Hyperplane, GeometryError> {
        if index >= self.num_hyperplanes() {
            return Err(GeometryError::IndexOutOfRange(index));
        }
        Ok(Hyperplane { dual: self.coords(index), index })
    }

    pub fn hyperplane_from_dual(&self, a: &[Code]) -> Result<Hyperplane, GeometryError> {
        let p = self.point_from_coords(a)?;
        Ok(Hyperplane { dual: p.coords, index: p.index })
    }

    /// The hyperplane as a subspace of the geometry.
    pub fn hyperplane_subspace(&self, h: &Hyperplane) -> Subspace {
        self.subspace_from_rows(linalg_null(&self.field, &[h.dual.clone()], self.n + 1))
    }

    pub fn hyperplanes(&self) -> impl Iterator<Item = Hyperplane> + '_ {
        (0..self.num_hyperplanes()).map(move |i| Hyperplane { dual: self.coords(i), index: i })
    }

    /// All hyperplanes containing `s`, in increasing index order.
    pub fn hyperplanes_through(&self, s: &Subspace) -> impl Iterator<Item = Hyperplane> + '_ {
        let ann = self.annihilator(s);
        self.subspace_vectors(&ann).map(move |dual| {
            let index = self.index_of_normalized(&dual);
            Hyperplane { dual, index }
        })
    }

    #[inline]
    pub fn incident(&self, h: &Hyperplane, point: &[Code]) -> bool {
        self.field.dot(&h.dual, point) == 0
    }

    pub fn subspace_from_rows(&self, mut rows: Vec<Vec<Code>>) -> Subspace {
        debug_assert!(rows.iter().all(|r| r.len() == self.n + 1));
        linalg::rref(&self.field, &mut rows);
        Subspace { n: self.n, rows }
    }

    pub fn span_points(&self, points: &[ProjPoint]) -> Subspace {
        self.subspace_from_rows(points.iter().map(|p| p.coords.clone()).collect())
    }

    pub fn span(&self, parts: &[&Subspace]) -> Subspace {
        self.subspace_from_rows(parts.iter().flat_map(|s| s.rows.iter().cloned()).collect())
    }

    pub fn span_set(&self, set: &PointSet) -> Subspace {
        let mut basis = linalg::EchelonBasis::new(self.n + 1);
        let mut v = vec![0; self.n + 1];
        for idx in set.iter() {
            self.coords_into(idx, &mut v);
            basis.insert(&self.field, &v);
            if basis.is_full() {
                break;
            }
        }
        self.subspace_from_rows(basis.into_rows())
    }

    pub fn line_through(&self, a: &ProjPoint, b: &ProjPoint) -> Result<Subspace, GeometryError> {
        if a.index == b.index {
            return Err(GeometryError::EqualPoints);
        }
        Ok(self.subspace_from_rows(vec![a.coords.clone(), b.coords.clone()]))
    }

    /// The dual subspace `{a : a . x = 0 for all x in s}`, as a subspace of the dual space.
    pub fn annihilator(&self, s: &Subspace) -> Subspace {
        self.subspace_from_rows(linalg_null(&self.field, &s.rows, self.n + 1))
    }

    pub fn intersect(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let ann_a = self.annihilator(a);
        let ann_b = self.annihilator(b);
        let joined = self.span(&[&ann_a, &ann_b]);
        self.annihilator(&joined)
    }

    pub fn contains_vector(&self, s: &Subspace, v: &[Code]) -> bool {
        let mut w = v.to_vec();
        linalg::reduce_against(&self.field, &s.rows, &s.pivots(), &mut w)
    }

    pub fn contains_subspace(&self, outer: &Subspace, inner: &Subspace) -> bool {
        inner.rows.iter().all(|r| self.contains_vector(outer, r))
    }

    /// Normalized vectors of the points of `s`, in increasing index order.
    pub fn subspace_vectors<'a>(&'a self, s: &Subspace) -> impl Iterator<Item = Vec<Code>> + 'a {
        let rows = s.rows.clone();
        let field = self.field.clone();
        let len = self.n + 1;
        NormalizedVectors::new(rows.len(), self.q as Code).map(move |c| {
            let mut v = vec![0; len];
            for (coef, row) in c.iter().zip(&rows) {
                if *coef == 0 {
                    continue;
                }
                for (x, &y) in v.iter_mut().zip(row) {
                    *x = field.add(*x, field.mul(*coef, y));
                }
            }
            v
        })
    }

    pub fn points_of(&self, s: &Subspace) -> PointSet {
        PointSet::from_indices(self.num_points(), self.subspace_vectors(s).map(|v| self.index_of_normalized(&v)))
    }

    /// `b` intersected with the points of `s`, choosing the cheaper direction.
    pub fn set_meet(&self, b: &PointSet, s: &Subspace) -> PointSet {
        if s.is_empty() {
            return PointSet::new(self.num_points());
        }
        if (b.len() as u64) < self.points_in_dim(s.dim()) {
            let ann = self.annihilator(s);
            let mut v = vec![0; self.n + 1];
            let hits = b
                .iter()
                .filter(|&idx| {
                    self.coords_into(idx, &mut v);
                    ann.rows.iter().all(|a| self.field.dot(a, &v) == 0)
                })
                .collect::<Vec<_>>();
            PointSet::from_indices(self.num_points(), hits)
        } else {
            PointSet::from_indices(
                self.num_points(),
                self.subspace_vectors(s).map(|v| self.index_of_normalized(&v)).filter(|&i| b.contains(i)),
            )
        }
    }

    /// Every subspace of projective dimension `k`, enumerated through echelon patterns.
    pub fn subspaces_of_dim(&self, k: usize) -> impl Iterator<Item = Subspace> + '_ {
        let ncols = self.n + 1;
        let rank = k + 1;
        let q = self.q as Code;
        let n = self.n;
        combinations(ncols, rank).flat_map(move |pivots| {
            let mut free = Vec::new();
            for (r, &pc) in pivots.iter().enumerate() {
                for c in pc + 1..ncols {
                    if !pivots.contains(&c) {
                        free.push((r, c));
                    }
                }
            }
            let total = (q as u64).pow(free.len() as u32);
            let pivots = pivots.clone();
            (0..total).map(move |mut code| {
                let mut rows = vec![vec![0; ncols]; rank];
                for (r, &pc) in pivots.iter().enumerate() {
                    rows[r][pc] = 1;
                }
                for &(r, c) in free.iter().rev() {
                    rows[r][c] = (code % q as u64) as Code;
                    code /= q as u64;
                }
                Subspace { n, rows }
            })
        })
    }
}

fn linalg_null(field: &FieldSpec, rows: &[Vec<Code>], ncols: usize) -> Vec<Vec<Code>> {
    let mut m = rows.to_vec();
    let piv = linalg::rref(field, &mut m);
    linalg::null_space(field, &m, &piv, ncols)
}

fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Option<Vec<usize>> = if k <= n { Some((0..k).collect()) } else { None };
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let c = cur.as_mut().unwrap();
        let mut i = k;
        loop {
            if i == 0 {
                cur = None;
                break;
            }
            i -= 1;
            if c[i] < n - k + i {
                c[i] += 1;
                for j in i + 1..k {
                    c[j] = c[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn pg(n: usize, p: u32, t: u32) -> Geometry {
        Geometry::build(n, FieldSpec::auto(p, t).unwrap(), BuildOptions::default()).unwrap()
    }

    #[test]
    fn point_counts() {
        assert_eq!(pg(2, 7, 2).num_points(), 2451);
        assert_eq!(pg(2, 7, 3).num_points(), 343 * 343 + 343 + 1);
        assert_eq!(pg(5, 7, 1).num_points(), 19_608);
        let lines = Geometry::build(2, FieldSpec::auto(7, 2).unwrap(), BuildOptions { materialize_lines: true, ..Default::default() })
            .unwrap();
        assert_eq!(lines.lines().unwrap().len(), 2451);
    }

    #[test]
    fn budget_guard() {
        let err = Geometry::build(3, FieldSpec::auto(11, 4).unwrap(), BuildOptions::default()).unwrap_err();
        assert!(matches!(err, GeometryError::BudgetExceeded { .. }));
        assert!(Geometry::lazy(3, FieldSpec::auto(11, 4).unwrap()).is_ok());
    }

    #[test]
    fn index_roundtrip_and_order() {
        let g = pg(2, 2, 2);
        let mut prev: Option<Vec<Code>> = None;
        for i in 0..g.num_points() {
            let v = g.coords(i);
            assert_eq!(g.index_of_normalized(&v), i);
            if let Some(p) = prev {
                assert!(p < v, "lexicographic order");
            }
            prev = Some(v);
        }
        assert_eq!(g.coords(0), vec![0, 0, 1]);
    }

    #[test]
    fn normalized_vectors_match_index_order() {
        let g = pg(3, 3, 1);
        let all: Vec<_> = NormalizedVectors::new(4, 3).collect();
        assert_eq!(all.len() as u64, g.num_points());
        for (i, v) in all.iter().enumerate() {
            assert_eq!(g.index_of_normalized(v), i as u64);
        }
    }

    #[test]
    fn coordinate_line() {
        let g = pg(2, 7, 2);
        let p = g.point_from_coords(&[1, 0, 0]).unwrap();
        let q = g.point_from_coords(&[0, 1, 0]).unwrap();
        let l = g.line_through(&p, &q).unwrap();
        assert_eq!(l, g.line_through(&q, &p).unwrap());
        assert_eq!(g.points_of(&l).len(), 50);
        let ann = g.annihilator(&l);
        assert_eq!(ann.rows(), &[vec![0, 0, 1]]);
        assert_eq!(g.line_through(&p, &p).unwrap_err(), GeometryError::EqualPoints);
    }

    #[test]
    fn spans_and_point_counts() {
        let g = pg(2, 2, 2);
        let a = g.point_from_coords(&[1, 0, 0]).unwrap();
        let c = g.point_from_coords(&[0, 0, 1]).unwrap();
        assert_eq!(g.points_of(&g.line_through(&a, &c).unwrap()).len(), 5);
        assert_eq!(g.span_points(&[a.clone()]).dim(), 0);
        let frame: Vec<_> = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]]
            .iter()
            .map(|v| g.point_from_coords(v).unwrap())
            .collect();
        assert_eq!(g.span_points(&frame).dim(), 2);

        let h = pg(3, 5, 2);
        let plane = h.subspace_from_rows(vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0]]);
        assert_eq!(h.points_of(&plane).len(), 651);
    }

    #[test]
    fn hyperplane_pencils() {
        let g = pg(2, 7, 2);
        assert_eq!(g.hyperplanes().count(), 2451);
        let g3 = pg(3, 7, 2);
        let line = g3.subspace_from_rows(vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0]]);
        let through: Vec<_> = g3.hyperplanes_through(&line).collect();
        assert_eq!(through.len(), 50);
        assert!(through.windows(2).all(|w| w[0].index < w[1].index));
        let small = pg(2, 2, 2);
        let pt = small.point(7).unwrap();
        assert_eq!(small.hyperplanes_through(&small.span_points(&[pt])).count(), 5);
    }

    #[test]
    fn intersections() {
        let g = pg(2, 5, 1);
        let l1 = g.subspace_from_rows(vec![vec![1, 0, 0], vec![0, 1, 0]]);
        let l2 = g.subspace_from_rows(vec![vec![1, 2, 3], vec![0, 0, 1]]);
        assert_eq!(g.intersect(&l1, &l2).dim(), 0);
        let g3 = pg(3, 3, 1);
        let a = g3.subspace_from_rows(vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0]]);
        let b = g3.subspace_from_rows(vec![vec![0, 0, 1, 0], vec![0, 0, 0, 1]]);
        assert!(g3.intersect(&a, &b).is_empty());
        let h = g3.subspace_from_rows(vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 1]]);
        assert_eq!(g3.intersect(&a, &h), a);
    }

    #[test]
    fn set_meet_both_directions() {
        let g = pg(2, 7, 2);
        let l = g.subspace_from_rows(vec![vec![1, 0, 0], vec![0, 1, 0]]);
        let line_pts = g.points_of(&l);
        assert_eq!(g.set_meet(&line_pts, &l).len(), 50);
        let other = g.subspace_from_rows(vec![vec![0, 0, 1], vec![1, 1, 0]]);
        let meet = g.set_meet(&line_pts, &other);
        assert_eq!(meet.len(), 1);
        let far = PointSet::from_indices(g.num_points(), [g.index_of(&[0, 0, 1]).unwrap()]);
        assert_eq!(g.set_meet(&far, &l).len(), 0);
    }

    #[test]
    fn line_through_is_unique_in_pg24() {
        let g = pg(2, 2, 2);
        let lines: Vec<_> = g.subspaces_of_dim(1).collect();
        assert_eq!(lines.len(), 21);
        for a in 0..g.num_points() {
            for b in a + 1..g.num_points() {
                let pa = g.point(a).unwrap();
                let pb = g.point(b).unwrap();
                let containing: Vec<_> = lines
                    .iter()
                    .filter(|l| g.contains_vector(l, &pa.coords) && g.contains_vector(l, &pb.coords))
                    .collect();
                assert_eq!(containing.len(), 1);
                assert_eq!(containing[0], &g.line_through(&pa, &pb).unwrap());
            }
        }
    }

    #[test]
    fn span_of_points_of_is_identity() {
        let g = pg(3, 3, 1);
        for s in g.subspaces_of_dim(1).take(40).chain(g.subspaces_of_dim(2).take(20)) {
            assert_eq!(g.span_set(&g.points_of(&s)), s);
        }
    }

    #[test]
    fn duality_counts() {
        let g = pg(3, 2, 1);
        let p = g.point(3).unwrap();
        let through = g.hyperplanes_through(&g.span_points(&[p])).count() as u64;
        let h = g.hyperplane(3).unwrap();
        assert_eq!(through, g.points_of(&g.hyperplane_subspace(&h)).len() as u64);
    }
}
