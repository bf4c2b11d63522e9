//! Monomials as exponent vectors over a flattened (row, col) variable
//! layout, ordered graded-lexicographically.

use crate::shape::{Shape, VarIndex};
use num::bigint::BigInt;
use num::One;
use std::cmp::Ordering;

/// Exponent vector of length shape.nvars(). The empty vector is the
/// monomial 1 (shape with k = 0, or any shape's degree-0 monomial has all
/// zero exponents).
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn unit(shape: Shape) -> Monomial {
        Monomial {
            exps: vec![0; shape.nvars()],
        }
    }

    pub fn from_exps(exps: Vec<u32>) -> Monomial {
        Monomial { exps }
    }

    pub fn var(shape: Shape, v: VarIndex) -> Monomial {
        let mut m = Monomial::unit(shape);
        m.exps[v.flatten(shape)] = 1;
        m
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp_at(&self, pos: usize) -> u32 {
        self.exps[pos]
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_unit(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Divide exponentwise; None when any exponent would go negative.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = Vec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            if a < b {
                return None;
            }
            exps.push(a - b);
        }
        Some(Monomial { exps })
    }

    /// Falling-factorial coefficient of applying the derivative monomial
    /// `beta` to this monomial: prod_i alpha_i (alpha_i-1) ... , together
    /// with the shifted monomial. None when the derivative kills it.
    pub fn differentiate(&self, beta: &Monomial) -> Option<(BigInt, Monomial)> {
        let rest = self.checked_div(beta)?;
        let mut c = BigInt::one();
        for (a, b) in self.exps.iter().zip(&beta.exps) {
            for t in 0..*b {
                c *= BigInt::from(a - t);
            }
        }
        Some((c, rest))
    }

    /// Total degree carried by each column of the variable matrix.
    pub fn column_degrees(&self, shape: Shape) -> Vec<u32> {
        let mut cols = vec![0u32; shape.k];
        for (pos, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                cols[pos % shape.k] += e;
            }
        }
        cols
    }

    /// Total degree carried by each row.
    pub fn row_degrees(&self, shape: Shape) -> Vec<u32> {
        let mut rows = vec![0u32; shape.n];
        for (pos, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                rows[pos / shape.k] += e;
            }
        }
        rows
    }
}

/// Graded lexicographic order on flattened exponents: lower total degree
/// first; within a degree, lexicographically larger exponent vectors first
/// (so x[1,1]^2 precedes x[1,1]*x[2,1] precedes x[2,1]^2).
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
