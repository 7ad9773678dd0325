//! Row reduction over a finite field.

use crate::field::{Code, FieldSpec};

/// Brings `rows` into reduced row echelon form in place, dropping zero rows.
/// Returns the pivot column of each remaining row.
pub fn rref(field: &FieldSpec, rows: &mut Vec<Vec<Code>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(sel) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, sel);
        let inv = field.inv(rows[r][c]);
        if inv != 1 {
            for x in rows[r][c..].iter_mut() {
                *x = field.mul(*x, inv);
            }
        }
        let (head, tail) = rows.split_at_mut(r);
        let (pivot_row, rest) = tail.split_first_mut().unwrap();
        for other in head.iter_mut().chain(rest.iter_mut()) {
            let factor = other[c];
            if factor != 0 {
                for (x, &y) in other[c..].iter_mut().zip(&pivot_row[c..]) {
                    *x = field.sub(*x, field.mul(factor, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(field: &FieldSpec, rows: &[Vec<Code>]) -> usize {
    let mut m = rows.to_vec();
    rref(field, &mut m).len()
}

/// Basis of `{x : row . x = 0 for every row}`, given rows already in RREF.
pub fn null_space(field: &FieldSpec, rref_rows: &[Vec<Code>], pivots: &[usize], ncols: usize) -> Vec<Vec<Code>> {
    let mut is_pivot = vec![None; ncols];
    for (i, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(i);
    }
    let mut basis = Vec::new();
    for free in 0..ncols {
        if is_pivot[free].is_some() {
            continue;
        }
        let mut v = vec![0; ncols];
        v[free] = 1;
        for (i, &c) in pivots.iter().enumerate() {
            v[c] = field.neg(rref_rows[i][free]);
        }
        basis.push(v);
    }
    basis
}

/// Reduces `v` against RREF rows; returns true if `v` lies in their span.
pub fn reduce_against(field: &FieldSpec, rows: &[Vec<Code>], pivots: &[usize], v: &mut [Code]) -> bool {
    for (row, &c) in rows.iter().zip(pivots) {
        let factor = v[c];
        if factor != 0 {
            for (x, &y) in v.iter_mut().zip(row) {
                *x = field.sub(*x, field.mul(factor, y));
            }
        }
    }
    v.iter().all(|&x| x == 0)
}

/// Incrementally maintained echelon basis, used for rank computations over long vector streams.
#[derive(Debug, Clone)]
pub struct EchelonBasis {
    rows: Vec<Vec<Code>>,
    pivots: Vec<usize>,
    ncols: usize,
}

impl EchelonBasis {
    pub fn new(ncols: usize) -> Self {
        EchelonBasis { rows: Vec::new(), pivots: Vec::new(), ncols }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    /// Adds `v`; returns false when it was already in the span.
    pub fn insert(&mut self, field: &FieldSpec, v: &[Code]) -> bool {
        let mut w = v.to_vec();
        if reduce_against(field, &self.rows, &self.pivots, &mut w) {
            return false;
        }
        self.rows.push(w);
        self.pivots = rref(field, &mut self.rows);
        true
    }

    pub fn contains(&self, field: &FieldSpec, v: &[Code]) -> bool {
        let mut w = v.to_vec();
        reduce_against(field, &self.rows, &self.pivots, &mut w)
    }

    pub fn rows(&self) -> &[Vec<Code>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<Code>> {
        self.rows
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Modulus;

    #[test]
    fn rref_of_dependent_rows() {
        let f = FieldSpec::new(7, 1, Modulus::Auto).unwrap();
        let mut m = vec![vec![2, 4, 6], vec![1, 2, 3], vec![0, 1, 1]];
        let piv = rref(&f, &mut m);
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(m, vec![vec![1, 0, 1], vec![0, 1, 1]]);
        let ns = null_space(&f, &m, &piv, 3);
        assert_eq!(ns, vec![vec![6, 6, 1]]);
        for row in &m {
            assert_eq!(f.dot(row, &ns[0]), 0);
        }
    }

    #[test]
    fn echelon_basis_tracks_rank() {
        let f = FieldSpec::new(5, 1, Modulus::Auto).unwrap();
        let mut b = EchelonBasis::new(3);
        assert!(b.insert(&f, &[1, 2, 3]));
        assert!(!b.insert(&f, &[2, 4, 1]));
        assert!(b.insert(&f, &[0, 0, 1]));
        assert_eq!(b.rank(), 2);
        assert!(b.contains(&f, &[3, 1, 0]));
    }
}
