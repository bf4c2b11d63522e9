//! Ambient variable shapes: polynomials live on n-by-k matrices of
//! indeterminates x[l,j], 1 <= l <= n (rows), 1 <= j <= k (columns).

use crate::error::{CoreError, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Shape (n, k) of the variable matrix. k = 0 is allowed and means the
/// polynomial ring is the constants.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash, Serialize, Deserialize)]
pub struct Shape {
    pub n: usize,
    pub k: usize,
}

impl Shape {
    pub fn new(n: usize, k: usize) -> Result<Shape> {
        if n == 0 {
            return Err(CoreError::InvalidArgument("n must be >= 1".into()));
        }
        Ok(Shape { n, k })
    }

    /// Number of indeterminates, n*k.
    pub fn nvars(&self) -> usize {
        self.n * self.k
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.n, self.k)
    }
}

/// One-based (row, column) index of a variable.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct VarIndex {
    pub row: usize,
    pub col: usize,
}

impl VarIndex {
    pub fn new(row: usize, col: usize) -> VarIndex {
        VarIndex { row, col }
    }

    /// Flat position in (row, col) order: row-major.
    pub fn flatten(&self, shape: Shape) -> usize {
        debug_assert!(self.row >= 1 && self.row <= shape.n);
        debug_assert!(self.col >= 1 && self.col <= shape.k);
        (self.row - 1) * shape.k + (self.col - 1)
    }

    pub fn unflatten(pos: usize, shape: Shape) -> VarIndex {
        debug_assert!(pos < shape.nvars());
        VarIndex {
            row: pos / shape.k + 1,
            col: pos % shape.k + 1,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flatten_round_trip() {
        let s = Shape::new(3, 2).unwrap();
        for pos in 0..s.nvars() {
            let v = VarIndex::unflatten(pos, s);
            assert_eq!(v.flatten(s), pos);
        }
        assert_eq!(VarIndex::new(1, 1).flatten(s), 0);
        assert_eq!(VarIndex::new(2, 1).flatten(s), 2);
        assert_eq!(VarIndex::new(3, 2).flatten(s), 5);
    }

    #[test]
    fn zero_rows_rejected() {
        assert!(Shape::new(0, 1).is_err());
        assert!(Shape::new(1, 0).is_ok());
    }
}
