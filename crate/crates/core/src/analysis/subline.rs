//! Sublines PG(1, p^e) and subplanes PG(2, p^e) inside PG(n, p^t).

use rustc_hash::FxHashMap;

use super::AnalysisError;
use crate::field::{Code, FieldError, FieldSpec};
use crate::geometry::Geometry;
use crate::pointset::PointSet;
use crate::reduction::solve_pair;

fn subfield_order(f: &FieldSpec, e: u32) -> Result<u64, FieldError> {
    if e == 0 || f.t() % e != 0 {
        return Err(FieldError::NonDivisorDegree { e, t: f.t() });
    }
    Ok((f.p() as u64).pow(e))
}

/// Whether `s` is a subline over GF(p^e).
///
/// Points are written as `alpha a + beta b` in terms of the first two points; after
/// rescaling so the third point is `a + b`, `s` is a subline exactly when every ratio
/// `alpha / beta` lies in GF(p^e).
pub fn is_subline(g: &Geometry, s: &PointSet, e: u32) -> Result<bool, AnalysisError> {
    let f = g.field();
    let q0 = subfield_order(f, e)?;
    if s.len() as u64 != q0 + 1 {
        return Err(AnalysisError::WrongSize { expected: q0 as usize + 1, got: s.len() });
    }
    let pts: Vec<Vec<Code>> = s.iter().map(|i| g.coords(i)).collect();
    let (a, b) = (&pts[0], &pts[1]);
    let mut coeffs = Vec::with_capacity(pts.len() - 2);
    for x in &pts[2..] {
        coeffs.push(solve_pair(f, a, b, x).ok_or(AnalysisError::NotCollinear)?);
    }
    let (ac, bc) = coeffs[0];
    let scale = f.div(bc, ac);
    Ok(coeffs[1..].iter().all(|&(al, be)| {
        let r = f.mul(f.div(al, be), scale);
        f.pow(r, q0) == r
    }))
}

/// Lines spanned by pairs of `s`, as sorted lists of positions into `pts`.
pub(crate) fn local_lines(g: &Geometry, pts: &[Vec<Code>]) -> Vec<Vec<usize>> {
    let f = g.field();
    let mut lines = Vec::new();
    let mut v = vec![0; g.n() + 1];
    for (i, p) in pts.iter().enumerate() {
        let lead = p.iter().position(|&c| c != 0).unwrap();
        let mut groups: FxHashMap<u64, Vec<usize>> = FxHashMap::default();
        let mut order = Vec::new();
        for (j, q) in pts.iter().enumerate() {
            if j == i {
                continue;
            }
            for (k, x) in v.iter_mut().enumerate() {
                *x = f.sub(q[k], f.mul(q[lead], p[k]));
            }
            g.normalize(&mut v);
            let key = g.index_of_normalized(&v);
            groups
                .entry(key)
                .or_insert_with(|| {
                    order.push(key);
                    Vec::new()
                })
                .push(j);
        }
        for key in order {
            let members = &groups[&key];
            if members[0] > i {
                let mut line = vec![i];
                line.extend_from_slice(members);
                lines.push(line);
            }
        }
    }
    lines
}

/// Whether `s` is a subplane PG(2, p^e): every pair of its points spans a line meeting
/// `s` in a subline, and any two of those lines meet inside `s`.
pub fn is_subplane(g: &Geometry, s: &PointSet, e: u32) -> Result<bool, AnalysisError> {
    let q0 = subfield_order(g.field(), e)? as usize;
    let expected = q0 * q0 + q0 + 1;
    if s.len() != expected {
        return Err(AnalysisError::WrongSize { expected, got: s.len() });
    }
    if g.span_set(s).dim() != 2 {
        return Err(AnalysisError::NotPlanar);
    }
    let idx = s.to_vec();
    let pts: Vec<Vec<Code>> = idx.iter().map(|&i| g.coords(i)).collect();
    let lines = local_lines(g, &pts);
    if lines.len() != expected || lines.iter().any(|l| l.len() != q0 + 1) {
        return Ok(false);
    }
    for l in &lines {
        let set = PointSet::from_indices(g.num_points(), l.iter().map(|&j| idx[j]));
        if !is_subline(g, &set, e)? {
            return Ok(false);
        }
    }
    let meets = |a: &[usize], b: &[usize]| a.iter().any(|x| b.binary_search(x).is_ok());
    for (i, a) in lines.iter().enumerate() {
        if lines[i + 1..].iter().any(|b| !meets(a, b)) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn plane(p: u32, t: u32) -> Geometry {
        Geometry::lazy(2, FieldSpec::auto(p, t).unwrap()).unwrap()
    }

    fn baer(g: &Geometry, sub: &crate::field::SubfieldHandle) -> PointSet {
        let m = sub.members();
        let mut s = PointSet::new(g.num_points());
        for &a in &m {
            for &b in &m {
                for &c in &m {
                    if let Ok(i) = g.index_of(&[a, b, c]) {
                        s.insert(i);
                    }
                }
            }
        }
        s
    }

    #[test]
    fn three_points_over_gf2() {
        let g = plane(2, 2);
        let s = PointSet::from_indices(g.num_points(), [g.index_of(&[1, 0, 0]).unwrap(), g.index_of(&[0, 1, 0]).unwrap(), g.index_of(&[1, 3, 0]).unwrap()]);
        assert!(is_subline(&g, &s, 1).unwrap());
    }

    #[test]
    fn wrong_size_and_collinearity() {
        let g = plane(7, 2);
        let line = g.subspace_from_rows(vec![vec![1, 0, 0], vec![0, 1, 0]]);
        let pts: Vec<u64> = g.points_of(&line).iter().take(9).collect();
        let s = PointSet::from_indices(g.num_points(), pts.clone());
        assert_eq!(is_subline(&g, &s, 1), Err(AnalysisError::WrongSize { expected: 8, got: 9 }));
        let mut t = PointSet::from_indices(g.num_points(), pts[..7].iter().copied());
        t.insert(g.index_of(&[0, 0, 1]).unwrap());
        assert_eq!(is_subline(&g, &t, 1), Err(AnalysisError::NotCollinear));
    }

    #[test]
    fn baer_subline_and_subplane() {
        let g = plane(7, 2);
        let sub = g.field().subfield(1).unwrap();
        let m = sub.members();
        let mut s = PointSet::new(g.num_points());
        s.insert(g.index_of(&[0, 1, 0]).unwrap());
        for &a in &m {
            s.insert(g.index_of(&[1, a, 0]).unwrap());
        }
        assert!(is_subline(&g, &s, 1).unwrap());
        // image under a projectivity (x, y) -> (x + y, d y) stays a subline
        let f = g.field().clone();
        let d = f.generator_x();
        let img = PointSet::from_indices(
            g.num_points(),
            s.iter().map(|i| {
                let v = g.coords(i);
                g.index_of(&[f.add(v[0], v[1]), f.mul(d, v[1]), 0]).unwrap()
            }),
        );
        assert!(is_subline(&g, &img, 1).unwrap());
        // replacing one point breaks it
        let mut bad = s.clone();
        bad.remove(g.index_of(&[1, 3, 0]).unwrap());
        bad.insert(g.index_of(&[1, d, 0]).unwrap());
        assert!(!is_subline(&g, &bad, 1).unwrap());

        let b = baer(&g, &sub);
        assert_eq!(b.len(), 57);
        assert!(is_subplane(&g, &b, 1).unwrap());
        let moved = PointSet::from_indices(
            g.num_points(),
            b.iter().map(|i| {
                let v = g.coords(i);
                g.index_of(&[f.add(v[0], f.mul(d, v[2])), v[1], f.add(v[2], v[1])]).unwrap()
            }),
        );
        assert!(is_subplane(&g, &moved, 1).unwrap());
        let mut broken = b.clone();
        broken.remove(b.first().unwrap());
        broken.insert(g.index_of(&[1, d, 0]).unwrap());
        assert!(!is_subplane(&g, &broken, 1).unwrap());
    }
}
