//! Standard instances: lines, Baer subplanes, Frobenius and trace linear sets, and
//! random linear sets obtained from random subspaces of the reduced space.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::blocking::{self, BlockingOptions, LinearSetInfo};
use crate::field::{Code, FieldError, FieldSpec};
use crate::geometry::{Geometry, GeometryError};
use crate::pointset::PointSet;
use crate::reduction::{ReducedSubspace, ReductionError, SpreadContext};

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error("invalid parameters: {0}")]
    Invalid(String),
    #[error("no acceptable instance after {0} attempts")]
    Exhausted(usize),
}

pub struct Instance {
    pub name: String,
    pub geometry: Geometry,
    pub points: PointSet,
    pub linear: Option<LinearSetInfo>,
    /// Generating subspace in the reduced space, for linear sets.
    pub reduced: Option<ReducedSubspace>,
}

impl std::fmt::Debug for Instance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} in {:?} ({} points)", self.name, self.geometry, self.points.len())
    }
}

/// The line `x_2 = .. = x_n = 0`.
pub fn line(n: usize, field: Arc<FieldSpec>) -> Result<Instance, CorpusError> {
    if n < 1 {
        return Err(CorpusError::Invalid("a line needs n >= 1".into()));
    }
    let g = Geometry::lazy(n, field)?;
    let mut rows = vec![vec![0; n + 1]; 2];
    rows[0][0] = 1;
    rows[1][1] = 1;
    let points = g.points_of(&g.subspace_from_rows(rows));
    let t = g.field().t();
    Ok(Instance {
        name: format!("line PG({},{})", n, g.q()),
        geometry: g,
        points,
        linear: Some(LinearSetInfo { e: t, rank: 2 }),
        reduced: None,
    })
}

fn subfield_points(field: &Arc<FieldSpec>, e: u32, dims: usize, embed: impl Fn(&[Code]) -> Vec<Code>, g: &Geometry) -> Result<PointSet, CorpusError> {
    let sub = field.subfield(e)?;
    let members = sub.members();
    let mut set = PointSet::new(g.num_points());
    let mut idx = vec![0usize; dims];
    loop {
        let v: Vec<Code> = idx.iter().map(|&i| members[i]).collect();
        if v.iter().any(|&c| c != 0) {
            set.insert(g.index_of(&embed(&v))?);
        }
        let mut k = 0;
        while k < dims {
            idx[k] += 1;
            if idx[k] < members.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == dims {
            return Ok(set);
        }
    }
}

/// A Baer subplane PG(2, sqrt q): in PG(2, q) the points with all coordinates in the
/// subfield; for `n >= 3` their image in the plane `x_3 = x_0 + x_1 + x_2`,
/// `x_4 = .. = x_n = 0`.
pub fn baer_subplane_in(n: usize, field: Arc<FieldSpec>) -> Result<Instance, CorpusError> {
    let t = field.t();
    if t % 2 != 0 {
        return Err(CorpusError::Invalid(format!("a Baer subplane needs an even degree, got t = {t}")));
    }
    if n < 2 {
        return Err(CorpusError::Invalid("a Baer subplane needs n >= 2".into()));
    }
    let g = Geometry::lazy(n, field.clone())?;
    let f = field.clone();
    let embed = move |v: &[Code]| {
        let mut w = vec![0; n + 1];
        w[..3].copy_from_slice(v);
        if n >= 3 {
            w[3] = f.add(f.add(v[0], v[1]), v[2]);
        }
        w
    };
    let points = subfield_points(&field, t / 2, 3, embed, &g)?;
    let name = if n == 2 { format!("Baer subplane PG(2,{})", g.q()) } else { format!("planar Baer subplane PG({n},{})", g.q()) };
    Ok(Instance { name, geometry: g, points, linear: Some(LinearSetInfo { e: t / 2, rank: 3 }), reduced: None })
}

pub fn baer_subplane(p: u32, t: u32) -> Result<Instance, CorpusError> {
    baer_subplane_in(2, FieldSpec::auto(p, t)?)
}

pub fn planar_baer_subplane(p: u32, t: u32) -> Result<Instance, CorpusError> {
    baer_subplane_in(3, FieldSpec::auto(p, t)?)
}

/// `B(U)` for generators over GF(p^e), built through the reduced subspace `<eps(U)>`.
pub fn linear_set(name: String, n: usize, field: Arc<FieldSpec>, e: u32, gens: &[Vec<Code>]) -> Result<Instance, CorpusError> {
    let ctx = SpreadContext::new(n, field, e)?;
    let pi = ctx.span_of_vectors(gens);
    if pi.is_empty() {
        return Err(ReductionError::ZeroOnly.into());
    }
    let points = ctx.linear_set_from_subspace(&pi)?;
    let rank = pi.rows().len();
    let geometry = Geometry::lazy(n, ctx.big().field().clone())?;
    Ok(Instance { name, geometry, points, linear: Some(LinearSetInfo { e, rank }), reduced: Some(pi) })
}

/// Powers `1, d, .., d^{h-1}` of the class of `x`, a basis of GF(p^t) over GF(p^e).
fn power_basis(field: &FieldSpec, h: u32) -> Vec<Code> {
    (0..h).map(|j| field.pow(field.generator_x(), j as u64)).collect()
}

/// `{(x, Tr(x), c) : x in GF(q), c in GF(q0)}` in PG(2, q), with the trace from GF(q) to
/// GF(q0 = p^e). Rank `h + 1`.
pub fn trace_linear_set(p: u32, t: u32, e: u32) -> Result<Instance, CorpusError> {
    let field = FieldSpec::auto(p, t)?;
    if t % e != 0 {
        return Err(FieldError::NonDivisorDegree { e, t }.into());
    }
    let h = t / e;
    let tr = |x: Code| (0..h).fold(0, |acc, i| field.add(acc, field.frobenius(x, e * i)));
    let mut gens: Vec<Vec<Code>> = power_basis(&field, h).into_iter().map(|b| vec![b, tr(b), 0]).collect();
    gens.push(vec![0, 0, 1]);
    linear_set(format!("trace linear set PG(2,{})", field.q()), 2, field.clone(), e, &gens)
}

/// `{(x, x^q0, .., x^{q0^{n-1}}, c) : x in GF(q), c in GF(q0)}` in PG(n, q), q0 = p^e.
/// Rank `h + 1`; scattered, so it has `(q0^{h+1} - 1)/(q0 - 1)` points.
pub fn frobenius_linear_set(n: usize, p: u32, t: u32, e: u32) -> Result<Instance, CorpusError> {
    let field = FieldSpec::auto(p, t)?;
    if t % e != 0 {
        return Err(FieldError::NonDivisorDegree { e, t }.into());
    }
    if n < 2 {
        return Err(CorpusError::Invalid("need n >= 2".into()));
    }
    let h = t / e;
    let mut gens: Vec<Vec<Code>> = power_basis(&field, h)
        .into_iter()
        .map(|b| {
            let mut v: Vec<Code> = (0..n as u32).map(|i| field.frobenius(b, e * i)).collect();
            v.push(0);
            v
        })
        .collect();
    let mut last = vec![0; n + 1];
    last[n] = 1;
    gens.push(last);
    linear_set(format!("rank-{} linear set PG({},{})", h + 1, n, field.q()), n, field.clone(), e, &gens)
}

/// A random rank-`rank` subspace of the reduced space of PG(n, p^t) over GF(p^e), kept
/// only when `B(pi)` is a small minimal blocking set of exponent exactly `e`.
pub fn random_linear_blocking_set(
    n: usize,
    p: u32,
    t: u32,
    e: u32,
    rank: usize,
    seed: u64,
    max_attempts: usize,
) -> Result<Instance, CorpusError> {
    let field = FieldSpec::auto(p, t)?;
    let ctx = SpreadContext::new(n, field.clone(), e)?;
    let len = ctx.reduced().n() + 1;
    if rank > len {
        return Err(CorpusError::Invalid(format!("rank {rank} exceeds the reduced dimension {len}")));
    }
    let q0 = ctx.q0();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let opts = BlockingOptions { seed, linear: Some(LinearSetInfo { e, rank }), ..Default::default() };
    for _ in 0..max_attempts {
        let rows: Vec<Vec<Code>> = (0..rank).map(|_| (0..len).map(|_| rng.gen_range(0..q0)).collect()).collect();
        let pi = ctx.reduced_subspace(rows);
        if pi.rows().len() != rank {
            continue;
        }
        let points = ctx.linear_set_from_subspace(&pi)?;
        let g = Geometry::lazy(n, field.clone())?;
        let Ok(report) = blocking::analyze(&g, &points, &opts) else {
            continue;
        };
        if report.is_blocking && report.is_minimal && report.is_small && report.exponent_e == Some(e) {
            return Ok(Instance {
                name: format!("random rank-{rank} linear set PG({n},{})", g.q()),
                geometry: g,
                points,
                linear: Some(LinearSetInfo { e, rank }),
                reduced: Some(pi),
            });
        }
    }
    Err(CorpusError::Exhausted(max_attempts))
}

/// A line of PG(2, q) together with extra points off it.
pub fn line_plus_points(p: u32, t: u32, extra: &[[Code; 3]]) -> Result<Instance, CorpusError> {
    let mut inst = line(2, FieldSpec::auto(p, t)?)?;
    for v in extra {
        inst.points.insert(inst.geometry.index_of(v)?);
    }
    inst.name = format!("line plus {} points PG(2,{})", extra.len(), inst.geometry.q());
    inst.linear = None;
    Ok(inst)
}
