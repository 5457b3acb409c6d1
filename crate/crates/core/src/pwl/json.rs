//! JSON exchange format for [`PwlFunction`].
//!
//! ```json
//! {"dim": 1,
//!  "vertices": [[["0","1"]], [["1","2"]], [["1","1"]]],
//!  "cells": [[0,1],[1,2]],
//!  "pieces": [{"a":[2],"b":0}, {"a":[-2],"b":2}]}
//! ```
//!
//! Each vertex is a list of `d` rationals written as `[numerator, denominator]`
//! string pairs; a bare pair is also accepted when `d = 1`.

use num::BigInt;
use serde::{Deserialize, Serialize};

use super::{AffinePieceZ, CellComplex, PwlError, PwlFunction};
use crate::rational::RatPair;

/// Integer written as a JSON number when it fits, else as a decimal string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonInt {
    Small(i64),
    Big(String),
}

impl JsonInt {
    fn from_big(x: &BigInt) -> JsonInt {
        i64::try_from(x).map(JsonInt::Small).unwrap_or_else(|_| JsonInt::Big(x.to_string()))
    }

    fn to_big(&self) -> Result<BigInt, PwlError> {
        match self {
            JsonInt::Small(v) => Ok(BigInt::from(*v)),
            JsonInt::Big(s) => s.parse().map_err(|_| PwlError::Malformed(format!("bad integer `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonVertex {
    Point(Vec<RatPair>),
    Scalar(RatPair),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonPiece {
    pub a: Vec<JsonInt>,
    pub b: JsonInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PwlJson {
    pub dim: usize,
    pub vertices: Vec<JsonVertex>,
    pub cells: Vec<Vec<usize>>,
    pub pieces: Vec<JsonPiece>,
}

impl From<&PwlFunction> for PwlJson {
    fn from(f: &PwlFunction) -> Self {
        PwlJson {
            dim: f.dim(),
            vertices: f
                .complex()
                .vertices()
                .iter()
                .map(|p| JsonVertex::Point(p.iter().cloned().map(RatPair).collect()))
                .collect(),
            cells: f.complex().cells().to_vec(),
            pieces: f
                .pieces()
                .iter()
                .map(|p| JsonPiece { a: p.a.iter().map(JsonInt::from_big).collect(), b: JsonInt::from_big(&p.b) })
                .collect(),
        }
    }
}

impl PwlJson {
    /// Validates and builds the function. Cells with more than `d + 1`
    /// vertices (convex polygons, listed in boundary order) are fanned into triangles.
    pub fn to_function(&self) -> Result<PwlFunction, PwlError> {
        let vertices = self
            .vertices
            .iter()
            .map(|v| match v {
                JsonVertex::Point(p) => p.iter().map(|r| r.0.clone()).collect(),
                JsonVertex::Scalar(r) => vec![r.0.clone()],
            })
            .collect();
        if self.cells.len() != self.pieces.len() {
            return Err(PwlError::Malformed("cells and pieces differ in number".into()));
        }
        let mut cells = Vec::new();
        let mut pieces = Vec::new();
        for (cell, piece) in self.cells.iter().zip(&self.pieces) {
            let piece = AffinePieceZ {
                a: piece.a.iter().map(JsonInt::to_big).collect::<Result<_, _>>()?,
                b: piece.b.to_big()?,
            };
            if self.dim == 2 && cell.len() > 3 {
                for k in 1..cell.len() - 1 {
                    cells.push(vec![cell[0], cell[k], cell[k + 1]]);
                    pieces.push(piece.clone());
                }
            } else {
                cells.push(cell.clone());
                pieces.push(piece);
            }
        }
        PwlFunction::new(CellComplex::new(self.dim, vertices, cells)?, pieces)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse_formula, tent};

    #[test]
    fn round_trip() {
        for (f, d) in [(tent(0), 1), (parse_formula("x0 * x1 | !x1").unwrap(), 2)] {
            let p = PwlFunction::from_formula(&f, d).unwrap();
            let text = serde_json::to_string(&PwlJson::from(&p)).unwrap();
            let back: PwlJson = serde_json::from_str(&text).unwrap();
            assert_eq!(back.to_function().unwrap(), p);
        }
    }

    #[test]
    fn accepts_scalar_vertices_and_polygons() {
        let text = r#"{"dim":1,"vertices":[["0","1"],["1","1"]],"cells":[[0,1]],"pieces":[{"a":[1],"b":0}]}"#;
        let j: PwlJson = serde_json::from_str(text).unwrap();
        assert_eq!(j.to_function().unwrap(), PwlFunction::projection(1, 0));
        let square = r#"{"dim":2,"vertices":[[["0","1"],["0","1"]],[["1","1"],["0","1"]],[["1","1"],["1","1"]],[["0","1"],["1","1"]]],
            "cells":[[0,1,2,3]],"pieces":[{"a":[0,1],"b":0}]}"#;
        let j: PwlJson = serde_json::from_str(square).unwrap();
        assert_eq!(j.to_function().unwrap(), PwlFunction::projection(2, 1));
    }

    #[test]
    fn rejects_discontinuous_input() {
        let text = r#"{"dim":1,"vertices":[["0","1"],["1","2"],["1","1"]],"cells":[[0,1],[1,2]],
            "pieces":[{"a":[1],"b":0},{"a":[0],"b":1}]}"#;
        let j: PwlJson = serde_json::from_str(text).unwrap();
        assert!(matches!(j.to_function(), Err(PwlError::InvalidFunction(_))));
    }
}
