//! McNaughton functions: continuous piecewise-affine maps `[0,1]^d → [0,1]`
//! with integer coefficients, represented exactly on rational triangulations
//! for `d ≤ 2`.

pub mod affine;
mod complex;
mod function;
mod geom;
mod json;
pub mod synthesis;

use thiserror::Error;

pub use affine::{affine_from_simplex_pair, AffineMapQ, AffineMapZ};
pub use complex::{common_refinement, CellComplex};
pub use function::{AffinePieceZ, Integral, PwlFunction, PwlOp};
pub use json::{JsonInt, JsonPiece, JsonVertex, PwlJson};
pub use synthesis::{clamped_affine_formula, pwl_to_formula_1d};

pub(crate) use complex::{overlay_2d, Mesh};
pub(crate) use geom::V2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PwlError {
    #[error("dimension {0} is not supported (only 1 and 2)")]
    Dimension(usize),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("formula uses variable x{index}, beyond dimension {dim}")]
    VariableOutOfRange { index: usize, dim: usize },
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("invalid function: {0}")]
    InvalidFunction(String),
    #[error("point is outside the unit cube or of the wrong dimension")]
    PointOutside,
    #[error("invalid box: {0}")]
    InvalidBox(String),
    #[error("source simplex is degenerate")]
    DegenerateSimplex,
    #[error("piece count {0} exceeds the limit {1}")]
    TooManyPieces(usize, usize),
    #[error("malformed exchange data: {0}")]
    Malformed(String),
}
