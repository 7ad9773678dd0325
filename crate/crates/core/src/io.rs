//! Text formats.
//!
//! Point sets:
//! ```text
//! # comment
//! PG n p t c_0 .. c_t
//! x_0 .. x_n
//! ```
//! one point per line as integer element codes. Several blocks may follow each other
//! in one file. Reduced subspaces start with `RED m q0`, followed by one row of
//! `m + 1` codes over GF(q0) per line.

use std::fmt::Write;
use std::sync::Arc;

use thiserror::Error;

use crate::field::{Code, FieldError, FieldSpec, Modulus};
use crate::geometry::{Geometry, GeometryError};
use crate::pointset::PointSet;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

fn parse_err(line: usize, msg: impl Into<String>) -> IoError {
    IoError::Parse { line, msg: msg.into() }
}

/// Non-empty lines with comments stripped, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn numbers(line: usize, s: &str) -> Result<Vec<u64>, IoError> {
    s.split_whitespace().map(|w| w.parse::<u64>().map_err(|_| parse_err(line, format!("not an integer: {w:?}")))).collect()
}

pub fn write_point_set(g: &Geometry, b: &PointSet) -> String {
    let f = g.field();
    let mut out = format!("PG {} {} {}", g.n(), f.p(), f.t());
    for c in f.modulus() {
        write!(out, " {c}").unwrap();
    }
    out.push('\n');
    let mut v = vec![0; g.n() + 1];
    for i in b.iter() {
        g.coords_into(i, &mut v);
        let row: Vec<String> = v.iter().map(|c| c.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub struct PointSetBlock {
    pub geometry: Geometry,
    pub points: PointSet,
}

fn parse_header(line: usize, rest: &str) -> Result<Geometry, IoError> {
    let nums = numbers(line, rest)?;
    if nums.len() < 4 {
        return Err(parse_err(line, "header needs n, p, t and the modulus coefficients"));
    }
    let (n, p, t) = (nums[0] as usize, nums[1] as u32, nums[2] as u32);
    let modulus: Vec<u32> = nums[3..].iter().map(|&c| c as u32).collect();
    let field = FieldSpec::new(p, t, Modulus::Given(modulus))?;
    Ok(Geometry::lazy(n, Arc::new(field))?)
}

/// Every block in the file, in order.
pub fn parse_point_sets(text: &str) -> Result<Vec<PointSetBlock>, IoError> {
    let mut blocks: Vec<PointSetBlock> = Vec::new();
    for (line, l) in content_lines(text) {
        if let Some(rest) = l.strip_prefix("PG") {
            let geometry = parse_header(line, rest)?;
            let points = PointSet::new(geometry.num_points());
            blocks.push(PointSetBlock { geometry, points });
            continue;
        }
        let Some(block) = blocks.last_mut() else {
            return Err(parse_err(line, "expected a `PG n p t c_0 .. c_t` header"));
        };
        let g = &block.geometry;
        let nums = numbers(line, l)?;
        if nums.len() != g.n() + 1 {
            return Err(parse_err(line, format!("expected {} coordinates, got {}", g.n() + 1, nums.len())));
        }
        if let Some(&c) = nums.iter().find(|&&c| c >= g.q()) {
            return Err(parse_err(line, format!("code {c} is out of range for GF({})", g.q())));
        }
        let v: Vec<Code> = nums.iter().map(|&c| c as Code).collect();
        let index = g.index_of(&v).map_err(|e| parse_err(line, e.to_string()))?;
        if !block.points.insert(index) {
            return Err(parse_err(line, "repeated point"));
        }
    }
    Ok(blocks)
}

/// Exactly one block.
pub fn parse_point_set(text: &str) -> Result<PointSetBlock, IoError> {
    let mut blocks = parse_point_sets(text)?;
    match blocks.len() {
        1 => Ok(blocks.pop().unwrap()),
        0 => Err(parse_err(0, "no `PG` header found")),
        k => Err(parse_err(0, format!("expected one point set, found {k}"))),
    }
}

fn code_row(line: usize, l: &str, width: usize, modulus: u64) -> Result<Vec<Code>, IoError> {
    let nums = numbers(line, l)?;
    if nums.len() != width {
        return Err(parse_err(line, format!("expected {width} codes, got {}", nums.len())));
    }
    if let Some(&c) = nums.iter().find(|&&c| c >= modulus) {
        return Err(parse_err(line, format!("code {c} is out of range (field of order {modulus})")));
    }
    Ok(nums.into_iter().map(|c| c as Code).collect())
}

/// Rows of integer codes below `modulus`, each of length `width`.
pub fn parse_code_rows(text: &str, width: usize, modulus: u64) -> Result<Vec<Vec<Code>>, IoError> {
    content_lines(text).map(|(line, l)| code_row(line, l, width, modulus)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedFile {
    /// Projective dimension of the reduced space.
    pub m: usize,
    pub q0: u64,
    pub rows: Vec<Vec<Code>>,
}

pub fn write_reduced(m: usize, q0: u64, rows: &[Vec<Code>]) -> String {
    let mut out = format!("RED {m} {q0}\n");
    for r in rows {
        let row: Vec<String> = r.iter().map(|c| c.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_reduced(text: &str) -> Result<ReducedFile, IoError> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or_else(|| parse_err(0, "empty file"))?;
    let rest = header.strip_prefix("RED").ok_or_else(|| parse_err(line, "expected a `RED m q0` header"))?;
    let nums = numbers(line, rest)?;
    let [m, q0] = nums[..] else {
        return Err(parse_err(line, "expected `RED m q0`"));
    };
    let rows = lines.map(|(line, l)| code_row(line, l, m as usize + 1, q0)).collect::<Result<_, _>>()?;
    Ok(ReducedFile { m: m as usize, q0, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_set_round_trip() {
        let g = Geometry::lazy(2, FieldSpec::auto(7, 2).unwrap()).unwrap();
        let b = PointSet::from_indices(g.num_points(), [0, 5, 77, 2450]);
        let text = write_point_set(&g, &b);
        assert!(text.starts_with("PG 2 7 2 "));
        let back = parse_point_set(&format!("# a comment\n{text}")).unwrap();
        assert_eq!(back.points, b);
        assert_eq!(back.geometry.field().modulus(), g.field().modulus());
    }

    #[test]
    fn scaled_points_are_normalized() {
        let text = "PG 2 5 1 0 1\n2 4 0 # same as 1 2 0\n0 0 3\n";
        let b = parse_point_set(text).unwrap();
        let g = &b.geometry;
        assert_eq!(b.points.len(), 2);
        assert!(b.points.contains(g.index_of(&[1, 2, 0]).unwrap()));
        assert!(b.points.contains(g.index_of(&[0, 0, 1]).unwrap()));
    }

    #[test]
    fn parse_errors() {
        for bad in [
            "1 0 0\n",
            "PG 2 7 1\n",
            "PG 2 6 1 0 1\n",
            "PG 2 7 1 0 1\n1 0\n",
            "PG 2 7 1 0 1\n0 0 0\n",
            "PG 2 7 1 0 1\n9 0 0\n",
            "PG 2 7 1 0 1\n1 0 0\n2 0 0\n",
            "PG 2 7 1 0 1\nx 0 0\n",
        ] {
            assert!(parse_point_set(bad).is_err(), "{bad:?}");
        }
        assert!(matches!(parse_point_set("PG 2 7 1 0 1\n1 0 0\n1 1\n"), Err(IoError::Parse { line: 3, .. })));
    }

    #[test]
    fn several_blocks() {
        let text = "PG 1 2 1 0 1\n1 0\nPG 1 3 1 0 1\n1 1\n0 1\n";
        let blocks = parse_point_sets(text).unwrap();
        assert_eq!(blocks.len(), 2);
        assert_eq!(blocks[1].points.len(), 2);
        assert!(parse_point_set(text).is_err());
    }

    #[test]
    fn reduced_round_trip() {
        let rows = vec![vec![1, 0, 0, 3, 4, 0], vec![0, 1, 6, 0, 0, 2]];
        let text = write_reduced(5, 7, &rows);
        assert_eq!(parse_reduced(&text).unwrap(), ReducedFile { m: 5, q0: 7, rows });
        assert!(parse_reduced("RED 5 7\n1 2 3\n").is_err());
        assert!(parse_reduced("RED 1 7\n1 7\n").is_err());
        assert!(parse_reduced("1 0\n").is_err());
    }
}
