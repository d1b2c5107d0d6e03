//! Exact arithmetic over `Z[dr, 1/dr, db, 1/db]` and exact linear algebra
//! over it.
//!
//! The loop parameters `dr = q_r + 1/q_r` and `db = q_b + 1/q_b` are the ring
//! generators; the `q`'s themselves only appear in the numeric layers.

use alloc::string::String;

mod laurent;
mod matrix;
pub mod univariate;

pub use laurent::{poly_add, poly_eval, poly_mul, LaurentPoly, Monomial, Variable};
pub use matrix::{poly_det, PolyMatrix};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("cannot substitute zero for the invertible variable {0:?}")]
    ZeroSubstitution(Variable),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("division leaves a remainder")]
    InexactDivision,
    #[error("determinant of a non-square {rows}x{cols} matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix shapes {left:?} and {right:?} do not compose")]
    Shape {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("rows of unequal length")]
    Ragged,
    #[error("cannot parse polynomial {0:?}")]
    Parse(String),
}
