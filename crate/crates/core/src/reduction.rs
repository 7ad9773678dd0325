//! Field reduction: PG(n, q0^h) against the Desarguesian (h-1)-spread of
//! PG(h(n+1)-1, q0), linear sets `B(U)` and `B(pi)`, and lifting sublines.
//!
//! The reduction map sends a coordinate `a` of GF(q) to its coordinates
//! `(c_0, .., c_{h-1})` over GF(q0) in the basis `1, d, .., d^{h-1}`, where `d` is the
//! class of `x` in the polynomial representation of GF(q). Coordinate `i` of the big
//! vector occupies positions `i*h .. i*h + h` of the reduced vector.

use std::ops::Deref;
use std::sync::Arc;

use rustc_hash::FxHashSet;
use thiserror::Error;

use crate::analysis::subline;
use crate::field::{Code, FieldError, FieldSpec, SubfieldHandle};
use crate::geometry::{Geometry, GeometryError, NormalizedVectors, ProjPoint, Subspace};
use crate::pointset::PointSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("the generating set only spans the zero vector")]
    ZeroOnly,
    #[error("the point set is not a subline over GF(q0)")]
    NotASubline,
    #[error("no line through the chosen reduced point reproduces the subline")]
    LiftInconsistent,
    #[error("point {0} does not belong to the subline")]
    NotMember(u64),
    #[error("the reduced point does not lie in the spread element of the anchor")]
    NotInSpreadElement,
    #[error("subspace lives in PG({got},q0), expected PG({expected},q0)")]
    WrongAmbient { expected: usize, got: usize },
}

/// A subspace of the reduced geometry PG(h(n+1)-1, q0).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedSubspace(pub Subspace);

impl Deref for ReducedSubspace {
    type Target = Subspace;

    fn deref(&self) -> &Subspace {
        &self.0
    }
}

/// Result of closing a generating set under GF(q0)-linear combinations.
#[derive(Debug, Clone)]
pub struct LinearSet {
    pub points: PointSet,
    pub rank: usize,
}

pub struct SpreadContext {
    big: Geometry,
    reduced: Geometry,
    sub: SubfieldHandle,
    h: usize,
    basis: Vec<Code>,
    decomp: Vec<Code>,
}

impl std::fmt::Debug for SpreadContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SpreadContext({:?} -> {:?})", self.big, self.reduced)
    }
}

impl SpreadContext {
    /// Field reduction of PG(n, p^t) over the subfield GF(p^e).
    pub fn new(n: usize, big_field: Arc<FieldSpec>, e: u32) -> Result<Self, ReductionError> {
        let sub = SubfieldHandle::new(&big_field, e)?;
        let h = (big_field.t() / e) as usize;
        let big = Geometry::lazy(n, big_field.clone())?;
        let reduced = Geometry::lazy((n + 1) * h - 1, sub.small().clone())?;
        let delta = big_field.generator_x();
        let basis: Vec<Code> = (0..h).map(|j| big_field.pow(delta, j as u64)).collect();

        let q = big_field.q() as usize;
        let q0 = sub.q0();
        let mut decomp = vec![Code::MAX; q * h];
        let mut coeffs = vec![0 as Code; h];
        for _ in 0..q {
            let a = coeffs
                .iter()
                .zip(&basis)
                .fold(0, |acc, (&c, &b)| big_field.add(acc, big_field.mul(sub.embed(c), b)));
            debug_assert_eq!(decomp[a as usize * h], Code::MAX, "basis is not independent");
            decomp[a as usize * h..(a as usize + 1) * h].copy_from_slice(&coeffs);
            for c in coeffs.iter_mut() {
                *c += 1;
                if *c < q0 {
                    break;
                }
                *c = 0;
            }
        }
        Ok(SpreadContext { big, reduced, sub, h, basis, decomp })
    }

    pub fn big(&self) -> &Geometry {
        &self.big
    }

    pub fn reduced(&self) -> &Geometry {
        &self.reduced
    }

    pub fn subfield(&self) -> &SubfieldHandle {
        &self.sub
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn q0(&self) -> u32 {
        self.sub.q0()
    }

    pub fn e(&self) -> u32 {
        self.sub.e()
    }

    /// Coordinates of `a` over GF(q0).
    #[inline]
    pub fn decompose(&self, a: Code) -> &[Code] {
        &self.decomp[a as usize * self.h..(a as usize + 1) * self.h]
    }

    pub fn eps(&self, v: &[Code]) -> Vec<Code> {
        let mut out = vec![0; v.len() * self.h];
        self.eps_into(v, &mut out);
        out
    }

    #[inline]
    pub fn eps_into(&self, v: &[Code], out: &mut [Code]) {
        for (i, &a) in v.iter().enumerate() {
            out[i * self.h..(i + 1) * self.h].copy_from_slice(self.decompose(a));
        }
    }

    pub fn eps_inv(&self, w: &[Code]) -> Vec<Code> {
        let mut out = vec![0; w.len() / self.h];
        self.eps_inv_into(w, &mut out);
        out
    }

    #[inline]
    pub fn eps_inv_into(&self, w: &[Code], out: &mut [Code]) {
        let f = self.big.field();
        for (i, o) in out.iter_mut().enumerate() {
            *o = w[i * self.h..(i + 1) * self.h]
                .iter()
                .zip(&self.basis)
                .fold(0, |acc, (&c, &b)| f.add(acc, f.mul(self.sub.embed(c), b)));
        }
    }

    /// Index of the big point `<eps^{-1}(w)>`.
    pub fn big_point_of(&self, w: &[Code]) -> u64 {
        let mut v = self.eps_inv(w);
        self.big.normalize(&mut v).expect("nonzero reduced vector");
        self.big.index_of_normalized(&v)
    }

    /// `D(P) = { <eps(alpha u)> : alpha in GF(q)^* }`, spanned by `eps(d^j u)`.
    pub fn spread_element(&self, p: &ProjPoint) -> ReducedSubspace {
        let f = self.big.field();
        let rows = self
            .basis
            .iter()
            .map(|&b| {
                let scaled: Vec<Code> = p.coords.iter().map(|&x| f.mul(b, x)).collect();
                self.eps(&scaled)
            })
            .collect();
        ReducedSubspace(self.reduced.subspace_from_rows(rows))
    }

    pub fn reduced_subspace(&self, rows: Vec<Vec<Code>>) -> ReducedSubspace {
        ReducedSubspace(self.reduced.subspace_from_rows(rows))
    }

    /// `<eps(U)>` for a generating list of big vectors.
    pub fn span_of_vectors(&self, gens: &[Vec<Code>]) -> ReducedSubspace {
        self.reduced_subspace(gens.iter().map(|g| self.eps(g)).collect())
    }

    /// `B(pi)`: enumerates the points of `pi` and maps each back to its big point.
    pub fn linear_set_from_subspace(&self, pi: &ReducedSubspace) -> Result<PointSet, ReductionError> {
        if pi.ambient_dim() != self.reduced.n() {
            return Err(ReductionError::WrongAmbient { expected: self.reduced.n(), got: pi.ambient_dim() });
        }
        let mut v = vec![0; self.big.n() + 1];
        let indices: Vec<u64> = self
            .reduced
            .subspace_vectors(pi)
            .map(|w| {
                self.eps_inv_into(&w, &mut v);
                self.big.normalize(&mut v);
                self.big.index_of_normalized(&v)
            })
            .collect();
        Ok(PointSet::from_indices(self.big.num_points(), indices))
    }

    /// `B(U)` computed in the big space: `U` is closed under GF(q0)-combinations
    /// directly, without passing through the reduction map.
    pub fn linear_set_from_vectors(&self, gens: &[Vec<Code>]) -> Result<LinearSet, ReductionError> {
        let f = self.big.field();
        let dim = self.big.n() + 1;
        for g in gens {
            if g.len() != dim {
                return Err(GeometryError::DimensionMismatch { expected: dim, got: g.len() }.into());
            }
        }
        let scalars: Vec<Code> = (0..self.q0()).map(|c| self.sub.embed(c)).collect();
        let mut span: FxHashSet<Vec<Code>> = FxHashSet::default();
        span.insert(vec![0; dim]);
        let mut rank = 0;
        for g in gens {
            if span.contains(g) {
                continue;
            }
            let current: Vec<Vec<Code>> = span.iter().cloned().collect();
            for s in &current {
                for &c in &scalars[1..] {
                    let v: Vec<Code> = s.iter().zip(g).map(|(&a, &b)| f.add(a, f.mul(c, b))).collect();
                    span.insert(v);
                }
            }
            rank += 1;
        }
        if rank == 0 {
            return Err(ReductionError::ZeroOnly);
        }
        let indices: Vec<u64> = span
            .into_iter()
            .filter_map(|mut v| {
                self.big.normalize(&mut v)?;
                Some(self.big.index_of_normalized(&v))
            })
            .collect();
        Ok(LinearSet { points: PointSet::from_indices(self.big.num_points(), indices), rank })
    }

    /// The unique reduced line through `x` whose image under `B` is the subline `s`.
    ///
    /// With `v = eps^{-1}(x)` representing `p`, the first two other points `Q1 = <w1>`
    /// and `Q2 = <w2>` of `s` fix the line: writing `w2 = a v + b w1`, every line through
    /// `x` mapping onto `s` is `<eps(v), eps(beta w1)>` with `beta` in `(b/a) GF(q0)^*`.
    pub fn lift_subline(&self, s: &PointSet, p: u64, x: &[Code]) -> Result<ReducedSubspace, ReductionError> {
        if !s.contains(p) {
            return Err(ReductionError::NotMember(p));
        }
        if s.len() != self.q0() as usize + 1 || !subline::is_subline(&self.big, s, self.e()).unwrap_or(false) {
            return Err(ReductionError::NotASubline);
        }
        let anchor = self.big.point(p)?;
        let element = self.spread_element(&anchor);
        if !self.reduced.contains_vector(&element, x) || x.iter().all(|&c| c == 0) {
            return Err(ReductionError::NotInSpreadElement);
        }
        let f = self.big.field();
        let v = self.eps_inv(x);
        let mut others = s.iter().filter(|&i| i != p);
        let w1 = self.big.coords(others.next().unwrap());
        let w2 = self.big.coords(others.next().unwrap());
        let (a, b) = solve_pair(f, &v, &w1, &w2).ok_or(ReductionError::NotASubline)?;
        if a == 0 || b == 0 {
            return Err(ReductionError::NotASubline);
        }
        let beta = f.div(b, a);
        let bw1: Vec<Code> = w1.iter().map(|&c| f.mul(beta, c)).collect();
        let line = self.reduced_subspace(vec![self.eps(&v), self.eps(&bw1)]);
        if self.linear_set_from_subspace(&line)? != *s {
            return Err(ReductionError::LiftInconsistent);
        }
        Ok(line)
    }
}

/// Solves `w = a u + b v` for independent `u, v`; `None` if `w` is not in their span.
pub(crate) fn solve_pair(f: &FieldSpec, u: &[Code], v: &[Code], w: &[Code]) -> Option<(Code, Code)> {
    let len = u.len();
    for i in 0..len {
        for j in i + 1..len {
            let det = f.sub(f.mul(u[i], v[j]), f.mul(u[j], v[i]));
            if det == 0 {
                continue;
            }
            let inv = f.inv(det);
            let a = f.mul(f.sub(f.mul(w[i], v[j]), f.mul(w[j], v[i])), inv);
            let b = f.mul(f.sub(f.mul(u[i], w[j]), f.mul(u[j], w[i])), inv);
            let ok = (0..len).all(|k| f.add(f.mul(a, u[k]), f.mul(b, v[k])) == w[k]);
            return ok.then_some((a, b));
        }
    }
    None
}

/// Reduced-point indices covered by the spread elements of all big points, in order.
/// Used to verify the partition property.
pub fn spread_cover(ctx: &SpreadContext) -> Vec<Vec<u64>> {
    (0..ctx.big().num_points())
        .map(|i| {
            let p = ctx.big().point(i).unwrap();
            let el = ctx.spread_element(&p);
            ctx.reduced().subspace_vectors(&el).map(|v| ctx.reduced().index_of_normalized(&v)).collect()
        })
        .collect()
}

/// Normalized coefficient vectors over GF(q0) of length `len`, convenience re-export.
pub fn projective_coefficients(len: usize, q0: u32) -> NormalizedVectors {
    NormalizedVectors::new(len, q0)
}
