//! Dense exact linear algebra over the rationals.
//!
//! Elimination is fraction-free: each row is scaled to integers and reduced
//! with the Bareiss update, so intermediate entries stay integral and no
//! rounding can occur. Kernels are returned as coprime-integer vectors with
//! the first nonzero coordinate positive, in free-column order; the whole
//! pipeline is deterministic regardless of thread count.

use crate::error::{CoreError, Result};
use crate::rational::{Rat, Scalar};
use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![<Rat as Scalar>::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(|v| v.len()).unwrap_or(0);
        if rows.iter().any(|v| v.len() != c) {
            return Err(CoreError::InvalidArgument("ragged matrix rows".into()));
        }
        Ok(RationalMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.data[r * self.cols + c] = v;
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = <Rat as Scalar>::zero();
                for c in 0..self.cols {
                    let a = self.at(r, c);
                    if !Scalar::is_zero(a) && !Scalar::is_zero(&v[c]) {
                        acc += a * &v[c];
                    }
                }
                acc
            })
            .collect()
    }

    /// Integer matrix with the same row spans: each row scaled by the lcm
    /// of its denominators.
    fn to_integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| {
                let mut lcm = BigInt::one();
                for c in 0..self.cols {
                    let d = self.at(r, c).denom();
                    lcm = lcm.lcm(d);
                }
                (0..self.cols)
                    .map(|c| {
                        let v = self.at(r, c);
                        v.numer() * (&lcm / v.denom())
                    })
                    .collect()
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        let mut m = self.to_integer_rows();
        bareiss_echelon(&mut m).len()
    }

    /// Basis of the right nullspace. Each vector has coprime integer
    /// entries and positive first nonzero coordinate; vectors are emitted
    /// in ascending free-column order.
    pub fn kernel(&self) -> Vec<Vec<Rat>> {
        let mut m = self.to_integer_rows();
        let pivots = bareiss_echelon(&mut m);
        let pivot_set: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &p in &pivots {
                v[p] = true;
            }
            v
        };
        let mut out = Vec::new();
        for f in 0..self.cols {
            if pivot_set[f] {
                continue;
            }
            let mut x = vec![<Rat as Scalar>::zero(); self.cols];
            x[f] = <Rat as Scalar>::one();
            // rows of the echelon form above the free column, bottom-up
            for i in (0..pivots.len()).rev() {
                let c = pivots[i];
                if c > f {
                    continue;
                }
                let mut s = <Rat as Scalar>::zero();
                for cc in (c + 1)..self.cols {
                    if !m[i][cc].is_zero() && !Scalar::is_zero(&x[cc]) {
                        s += Rat::from_integer(m[i][cc].clone()) * &x[cc];
                    }
                }
                x[c] = -s / Rat::from_integer(m[i][c].clone());
            }
            normalize_integer_vector(&mut x);
            out.push(x);
        }
        out
    }

    /// One exact solution of self * x = b with free variables set to zero,
    /// or None when inconsistent.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(b.len(), self.rows);
        // rational Gauss-Jordan on the augmented matrix; matrices on this
        // path are small (subspace coordinates, span membership)
        let mut m: Vec<Vec<Rat>> = (0..self.rows)
            .map(|r| {
                let mut row: Vec<Rat> = (0..self.cols).map(|c| self.at(r, c).clone()).collect();
                row.push(b[r].clone());
                row
            })
            .collect();
        let cols = self.cols + 1;
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..self.rows).find(|&i| !Scalar::is_zero(&m[i][c])) else {
                continue;
            };
            m.swap(r, p);
            let inv = m[r][c].clone();
            for cc in c..cols {
                m[r][cc] = &m[r][cc] / &inv;
            }
            for i in 0..self.rows {
                if i != r && !Scalar::is_zero(&m[i][c]) {
                    let f = m[i][c].clone();
                    for cc in c..cols {
                        let delta = &m[r][cc] * &f;
                        m[i][cc] = &m[i][cc] - &delta;
                    }
                }
            }
            pivots.push((r, c));
            r += 1;
            if r == self.rows {
                break;
            }
        }
        // inconsistent when a zero row has nonzero rhs
        for i in r..self.rows {
            if !Scalar::is_zero(&m[i][self.cols]) {
                return None;
            }
        }
        let mut x = vec![<Rat as Scalar>::zero(); self.cols];
        for (pr, pc) in pivots {
            x[pc] = m[pr][self.cols].clone();
        }
        Some(x)
    }
}

/// In-place fraction-free row echelon (Bareiss). Returns pivot columns.
/// Pivot choice is the first nonzero entry in row order, so the result is
/// reproducible.
fn bareiss_echelon(m: &mut [Vec<BigInt>]) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        // every remaining row is updated, even with a zero multiplier:
        // the division by the previous pivot is only exact when the minor
        // structure is maintained uniformly
        for i in (r + 1)..rows {
            for cc in (c + 1)..cols {
                let t = &m[r][c] * &m[i][cc] - &m[i][c] * &m[r][cc];
                debug_assert!((&t % &prev).is_zero());
                m[i][cc] = t / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Scale a rational vector to coprime integers with positive first nonzero
/// coordinate. The zero vector is left unchanged.
pub fn normalize_integer_vector(v: &mut [Rat]) {
    let mut lcm = BigInt::one();
    for x in v.iter() {
        if !Scalar::is_zero(x) {
            lcm = lcm.lcm(x.denom());
        }
    }
    let mut gcd = BigInt::zero();
    let scaled: Vec<BigInt> = v
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect();
    for x in &scaled {
        gcd = gcd.gcd(x);
    }
    if gcd.is_zero() {
        return;
    }
    let first = scaled.iter().find(|x| !x.is_zero()).unwrap();
    let sign = if first.is_negative() {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    let div = gcd * sign;
    for (slot, x) in v.iter_mut().zip(scaled) {
        *slot = Rat::from_integer(x / &div);
    }
}

/// Coordinates of `v` in the span of `span` (vectors as rows), or None if
/// v lies outside it.
pub fn coords_in_span(span: &[Vec<Rat>], v: &[Rat]) -> Option<Vec<Rat>> {
    if span.is_empty() {
        return if v.iter().all(Scalar::is_zero) {
            Some(Vec::new())
        } else {
            None
        };
    }
    let dim = span[0].len();
    assert_eq!(v.len(), dim);
    // columns are span vectors
    let mut m = RationalMatrix::zeros(dim, span.len());
    for (j, s) in span.iter().enumerate() {
        assert_eq!(s.len(), dim);
        for (i, x) in s.iter().enumerate() {
            m.set(i, j, x.clone());
        }
    }
    m.solve(v)
}

/// Rank of the row span of `vecs`.
pub fn row_span_rank(vecs: &[Vec<Rat>]) -> usize {
    if vecs.is_empty() {
        return 0;
    }
    RationalMatrix::from_rows(vecs.to_vec()).unwrap().rank()
}

/// Incrementally grown row space kept in reduced echelon form, for orbit
/// closures where vectors arrive one at a time.
pub struct SpanBuilder {
    len: usize,
    rows: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl SpanBuilder {
    pub fn new(len: usize) -> Self {
        SpanBuilder {
            len,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut [Rat]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !Scalar::is_zero(&v[p]) {
                let factor = v[p].clone();
                for (slot, r) in v.iter_mut().zip(row) {
                    *slot = slot.sub_ref(&factor.mul_ref(r));
                }
            }
        }
    }

    /// Add the vector to the span; returns true when the rank grows.
    pub fn insert(&mut self, mut v: Vec<Rat>) -> bool {
        assert_eq!(v.len(), self.len);
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !Scalar::is_zero(x)) else {
            return false;
        };
        let inv = <Rat as Scalar>::one() / v[p].clone();
        for slot in v.iter_mut() {
            *slot = slot.mul_ref(&inv);
        }
        // back-substitute to keep earlier rows reduced
        for (row, &rp) in self.rows.iter_mut().zip(&self.pivots) {
            debug_assert!(rp != p);
            if !Scalar::is_zero(&row[p]) {
                let factor = row[p].clone();
                for (slot, x) in row.iter_mut().zip(&v) {
                    *slot = slot.sub_ref(&factor.mul_ref(x));
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Scalar::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat_int(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn span_builder_tracks_rank_and_membership() {
        let v = |xs: &[i64]| xs.iter().map(|&x| rat_int(x)).collect::<Vec<_>>();
        let mut b = SpanBuilder::new(3);
        assert!(b.insert(v(&[1, 2, 3])));
        assert!(!b.insert(v(&[2, 4, 6])));
        assert!(b.insert(v(&[0, 1, 1])));
        assert_eq!(b.rank(), 2);
        assert!(b.contains(&v(&[1, 3, 4])));
        assert!(!b.contains(&v(&[0, 0, 1])));
        assert!(b.insert(v(&[5, 5, 6])));
        assert_eq!(b.rank(), 3);
        assert!(!b.insert(v(&[7, -2, 9])));
    }

    #[test]
    fn laplacian_row_kernel() {
        // matrix of the two-variable Laplacian on [x^2, xy, y^2]
        let a = m(&[&[2, 0, 2]]);
        let k = a.kernel();
        assert_eq!(
            k,
            vec![
                vec![rat_int(0), rat_int(1), rat_int(0)],
                vec![rat_int(1), rat_int(0), rat_int(-1)],
            ]
        );
        assert_eq!(a.rank(), 1);
    }

    #[test]
    fn kernel_normalization() {
        // row 2x + 3y = 0 has kernel (3, -2) -> first coordinate positive
        let a = m(&[&[2, 3]]);
        assert_eq!(a.kernel(), vec![vec![rat_int(3), rat_int(-2)]]);
        // fractional input normalizes to coprime integers
        let b = RationalMatrix::from_rows(vec![vec![rat(1, 2), rat(1, 3)]]).unwrap();
        assert_eq!(b.kernel(), vec![vec![rat_int(2), rat_int(-3)]]);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let x = a.solve(&[rat_int(5), rat_int(11)]).unwrap();
        assert_eq!(x, vec![rat_int(1), rat_int(2)]);
        let b = m(&[&[1, 1], &[2, 2]]);
        assert!(b.solve(&[rat_int(1), rat_int(3)]).is_none());
        assert!(b.solve(&[rat_int(1), rat_int(2)]).is_some());
    }

    #[test]
    fn coords_in_span_round_trip() {
        let span = vec![
            vec![rat_int(1), rat_int(0), rat_int(-1)],
            vec![rat_int(0), rat_int(1), rat_int(0)],
        ];
        let v = vec![rat_int(2), rat_int(-3), rat_int(-2)];
        let c = coords_in_span(&span, &v).unwrap();
        assert_eq!(c, vec![rat_int(2), rat_int(-3)]);
        let w = vec![rat_int(1), rat_int(0), rat_int(0)];
        assert!(coords_in_span(&span, &w).is_none());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn kernel_is_annihilated_and_maximal(
            rows in 1usize..5, cols in 1usize..6,
            seed in proptest::collection::vec(-6i64..=6, 30),
            dseed in proptest::collection::vec(1i64..=4, 30),
        ) {
            let a = RationalMatrix::from_rows(
                (0..rows).map(|r| (0..cols).map(|c| {
                    rat(seed[(r * cols + c) % seed.len()], dseed[(r + c) % dseed.len()])
                }).collect()).collect()
            ).unwrap();
            let kernel = a.kernel();
            let rank = a.rank();
            // rank-nullity
            prop_assert_eq!(rank + kernel.len(), cols);
            for v in &kernel {
                // annihilation
                prop_assert!(a.mul_vec(v).iter().all(Scalar::is_zero));
                // integrality + coprimality + sign
                let mut g = BigInt::zero();
                for x in v {
                    prop_assert!(x.is_integer());
                    g = g.gcd(x.numer());
                }
                prop_assert_eq!(g, BigInt::one());
                let first = v.iter().find(|x| !Scalar::is_zero(*x)).unwrap();
                prop_assert!(first.numer() > &BigInt::zero());
            }
            // kernel vectors are independent, and the kernel is maximal:
            // any unit vector outside its span strictly increases rank
            if !kernel.is_empty() {
                prop_assert_eq!(row_span_rank(&kernel), kernel.len());
            }
            for c in 0..cols {
                let mut unit = vec![<Rat as Scalar>::zero(); cols];
                unit[c] = <Rat as Scalar>::one();
                if coords_in_span(&kernel, &unit).is_none() {
                    let mut stack = kernel.clone();
                    stack.push(unit);
                    prop_assert_eq!(row_span_rank(&stack), kernel.len() + 1);
                }
            }
        }
    }
}
