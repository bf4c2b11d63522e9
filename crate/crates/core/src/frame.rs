//! Split coordinate frame for the orthogonal side.
//!
//! Real row coordinates x_1..x_n are regrouped per plane into
//! u_p = x_{2p-1} + i x_{2p} and v_p = x_{2p-1} - i x_{2p}, with a leftover
//! w = x_n when n is odd. In these coordinates the rotation Cartan operators
//! act diagonally on monomials and every root vector, Laplacian, and column
//! operator has rational coefficients, so all weight-space linear algebra
//! stays over the rationals. Complex scalars appear only when converting
//! back to the x frame.
//!
//! Frame polynomials reuse the (n,k) shape with rows reinterpreted:
//! rows 1..m are u_1..u_m, rows m+1..2m are v_1..v_m, row n is w (odd n).

use crate::diffop::{CxOp, Op};
use crate::error::Result;
use crate::monomial::Monomial;
use crate::poly::{CxPoly, Poly, Polynomial};
use crate::rational::{rat, rat_int, GaussRat};
use crate::shape::{Shape, VarIndex};

pub struct OrthFrame {
    shape: Shape,
    m: usize,
    odd: bool,
}

impl OrthFrame {
    pub fn new(n: usize, k: usize) -> Result<OrthFrame> {
        let shape = Shape::new(n, k)?;
        Ok(OrthFrame {
            shape,
            m: n / 2,
            odd: n % 2 == 1,
        })
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    /// Number of u,v planes.
    pub fn pairs(&self) -> usize {
        self.m
    }

    pub fn is_odd(&self) -> bool {
        self.odd
    }

    fn u(&self, p: usize, j: usize) -> Monomial {
        Monomial::var(self.shape, VarIndex::new(p, j))
    }

    fn v(&self, p: usize, j: usize) -> Monomial {
        Monomial::var(self.shape, VarIndex::new(self.m + p, j))
    }

    fn w(&self, j: usize) -> Monomial {
        debug_assert!(self.odd);
        Monomial::var(self.shape, VarIndex::new(self.shape.n, j))
    }

    /// H_p = sum_j (u_pj d_upj - v_pj d_vpj); diagonal on monomials.
    pub fn cartan(&self, p: usize) -> Op {
        let mut op = Op::zero(self.shape);
        for j in 1..=self.shape.k {
            op.add_term(self.u(p, j), self.u(p, j), rat_int(1));
            op.add_term(self.v(p, j), self.v(p, j), rat_int(-1));
        }
        op
    }

    fn raise_long(&self, p: usize, q: usize) -> Op {
        // root e_p - e_q
        let mut op = Op::zero(self.shape);
        for j in 1..=self.shape.k {
            op.add_term(self.u(p, j), self.u(q, j), rat_int(1));
            op.add_term(self.v(q, j), self.v(p, j), rat_int(-1));
        }
        op
    }

    fn raise_sum(&self, p: usize, q: usize) -> Op {
        // root e_p + e_q
        let mut op = Op::zero(self.shape);
        for j in 1..=self.shape.k {
            op.add_term(self.u(p, j), self.v(q, j), rat_int(1));
            op.add_term(self.u(q, j), self.v(p, j), rat_int(-1));
        }
        op
    }

    fn lower_sum(&self, p: usize, q: usize) -> Op {
        // root -e_p - e_q
        let mut op = Op::zero(self.shape);
        for j in 1..=self.shape.k {
            op.add_term(self.v(p, j), self.u(q, j), rat_int(1));
            op.add_term(self.v(q, j), self.u(p, j), rat_int(-1));
        }
        op
    }

    fn raise_short(&self, p: usize) -> Op {
        // root e_p; the 2 balances B(u,v) = 1/2 against B(w,w) = 1
        let mut op = Op::zero(self.shape);
        for j in 1..=self.shape.k {
            op.add_term(self.u(p, j), self.w(j), rat_int(1));
            op.add_term(self.w(j), self.v(p, j), rat_int(-2));
        }
        op
    }

    fn lower_short(&self, p: usize) -> Op {
        // root -e_p
        let mut op = Op::zero(self.shape);
        for j in 1..=self.shape.k {
            op.add_term(self.v(p, j), self.w(j), rat_int(1));
            op.add_term(self.w(j), self.u(p, j), rat_int(-2));
        }
        op
    }

    /// Every root vector with its root, deterministic order.
    pub fn so_root_vectors(&self) -> Vec<(Vec<i64>, Op)> {
        let m = self.m;
        let mut out = Vec::new();
        let root = |entries: &[(usize, i64)]| {
            let mut r = vec![0i64; m];
            for &(p, c) in entries {
                r[p - 1] = c;
            }
            r
        };
        for p in 1..=m {
            for q in 1..=m {
                if p != q {
                    out.push((root(&[(p, 1), (q, -1)]), self.raise_long(p, q)));
                }
            }
        }
        for p in 1..=m {
            for q in (p + 1)..=m {
                out.push((root(&[(p, 1), (q, 1)]), self.raise_sum(p, q)));
                out.push((root(&[(p, -1), (q, -1)]), self.lower_sum(p, q)));
            }
        }
        if self.odd {
            for p in 1..=m {
                out.push((root(&[(p, 1)]), self.raise_short(p)));
                out.push((root(&[(p, -1)]), self.lower_short(p)));
            }
        }
        out
    }

    /// Raising operators for the simple positive roots; a joint kernel
    /// vector of these inside a weight space is a highest weight vector.
    pub fn so_simple_raising(&self) -> Vec<Op> {
        let m = self.m;
        let mut out = Vec::new();
        for p in 1..m {
            out.push(self.raise_long(p, p + 1));
        }
        if self.odd && m >= 1 {
            out.push(self.raise_short(m));
        }
        if !self.odd && m >= 2 {
            out.push(self.raise_sum(m - 1, m));
        }
        out
    }

    /// Root vectors plus Cartan operators: a spanning family of the
    /// rotation algebra used for orbit closure.
    pub fn so_spanning(&self) -> Vec<Op> {
        let mut out: Vec<Op> = self.so_root_vectors().into_iter().map(|(_, op)| op).collect();
        for p in 1..=self.m {
            out.push(self.cartan(p));
        }
        out
    }

    /// Column raising E_ij (i != j, no shift needed) in frame rows: the
    /// pairing sum_rows y_ri d_rj is row-basis independent.
    pub fn gl_raising(&self, i: usize, j: usize) -> Op {
        let mut op = Op::zero(self.shape);
        for r in 1..=self.shape.n {
            op.add_term(
                Monomial::var(self.shape, VarIndex::new(r, i)),
                Monomial::var(self.shape, VarIndex::new(r, j)),
                rat_int(1),
            );
        }
        op
    }

    pub fn gl_simple_raising(&self) -> Vec<Op> {
        (1..self.shape.k).map(|j| self.gl_raising(j, j + 1)).collect()
    }

    /// The Laplacian pairing of columns i and j in frame coordinates.
    pub fn laplacian(&self, i: usize, j: usize) -> Op {
        let unit = Monomial::unit(self.shape);
        let mut op = Op::zero(self.shape);
        for p in 1..=self.m {
            op.add_term(unit.clone(), self.u(p, i).mul(&self.v(p, j)), rat_int(2));
            op.add_term(unit.clone(), self.v(p, i).mul(&self.u(p, j)), rat_int(2));
        }
        if self.odd {
            op.add_term(unit.clone(), self.w(i).mul(&self.w(j)), rat_int(1));
        }
        op
    }

    pub fn laplacians(&self) -> Vec<Op> {
        let mut out = Vec::new();
        for i in 1..=self.shape.k {
            for j in i..=self.shape.k {
                out.push(self.laplacian(i, j));
            }
        }
        out
    }

    /// The quadratic invariant r_ij expressed in frame coordinates.
    pub fn quad_invariant(&self, i: usize, j: usize) -> Poly {
        let mut out = Polynomial::zero(self.shape);
        for p in 1..=self.m {
            out.add_term(self.u(p, i).mul(&self.v(p, j)), rat(1, 2));
            out.add_term(self.u(p, j).mul(&self.v(p, i)), rat(1, 2));
        }
        if self.odd {
            out.add_term(self.w(i).mul(&self.w(j)), rat_int(1));
        }
        out
    }

    /// For even n: the reflection conjugating the last plane, implemented
    /// as the swap of the u_m and v_m rows. Determinant -1 in the x frame.
    pub fn conjugation_swap(&self) -> Option<crate::operators::SignedPermAction> {
        if self.odd || self.m == 0 {
            return None;
        }
        Some(crate::operators::SignedPermAction::transposition(
            self.shape,
            self.m,
            2 * self.m,
        ))
    }

    /// Rotation weight of a frame monomial: mu_p = deg_u_p - deg_v_p.
    pub fn so_weight(&self, mono: &Monomial) -> Vec<i64> {
        let k = self.shape.k;
        let mut out = vec![0i64; self.m];
        for (pos, &e) in mono.exps().iter().enumerate() {
            let row = pos / k;
            if row < self.m {
                out[row] += e as i64;
            } else if row < 2 * self.m {
                out[row - self.m] -= e as i64;
            }
        }
        out
    }

    fn x_images(&self) -> Vec<CxPoly> {
        let shape = self.shape;
        let mut images = Vec::with_capacity(shape.nvars());
        for row in 1..=shape.n {
            for col in 1..=shape.k {
                let mut img = Polynomial::zero(shape);
                if row <= self.m {
                    img.add_term(
                        Monomial::var(shape, VarIndex::new(2 * row - 1, col)),
                        GaussRat::real(rat_int(1)),
                    );
                    img.add_term(
                        Monomial::var(shape, VarIndex::new(2 * row, col)),
                        GaussRat::imag(rat_int(1)),
                    );
                } else if row <= 2 * self.m {
                    let p = row - self.m;
                    img.add_term(
                        Monomial::var(shape, VarIndex::new(2 * p - 1, col)),
                        GaussRat::real(rat_int(1)),
                    );
                    img.add_term(
                        Monomial::var(shape, VarIndex::new(2 * p, col)),
                        GaussRat::imag(rat_int(-1)),
                    );
                } else {
                    img.add_term(
                        Monomial::var(shape, VarIndex::new(shape.n, col)),
                        GaussRat::real(rat_int(1)),
                    );
                }
                images.push(img);
            }
        }
        images
    }

    fn frame_images(&self) -> Vec<CxPoly> {
        let shape = self.shape;
        let mut images = Vec::with_capacity(shape.nvars());
        let half = GaussRat::real(rat(1, 2));
        let minus_half_i = GaussRat::imag(rat(-1, 2));
        let half_i = GaussRat::imag(rat(1, 2));
        for row in 1..=shape.n {
            for col in 1..=shape.k {
                let mut img = Polynomial::zero(shape);
                if !self.odd || row < shape.n {
                    let p = row.div_ceil(2);
                    if row % 2 == 1 {
                        // x_{2p-1} = (u_p + v_p)/2
                        img.add_term(self.u(p, col), half.clone());
                        img.add_term(self.v(p, col), half.clone());
                    } else {
                        // x_{2p} = (u_p - v_p)/(2i) = -(i/2)(u_p - v_p)
                        img.add_term(self.u(p, col), minus_half_i.clone());
                        img.add_term(self.v(p, col), half_i.clone());
                    }
                } else {
                    img.add_term(self.w(col), GaussRat::real(rat_int(1)));
                }
                images.push(img);
            }
        }
        images
    }

    /// Rewrite a frame polynomial in the x frame.
    pub fn to_x(&self, f: &CxPoly) -> CxPoly {
        f.substitute(&self.x_images(), |c| c.clone())
            .expect("frame images match shape")
    }

    pub fn to_x_real(&self, f: &Poly) -> CxPoly {
        self.to_x(&f.to_complex())
    }

    /// Rewrite an x-frame polynomial in frame coordinates.
    pub fn from_x(&self, f: &CxPoly) -> CxPoly {
        f.substitute(&self.frame_images(), |c| c.clone())
            .expect("frame images match shape")
    }

    fn x_mult(&self, frame_row: usize, j: usize) -> CxOp {
        let shape = self.shape;
        let mut op = CxOp::zero(shape);
        let unit = Monomial::unit(shape);
        if frame_row <= self.m {
            op.add_term(
                Monomial::var(shape, VarIndex::new(2 * frame_row - 1, j)),
                unit.clone(),
                GaussRat::real(rat_int(1)),
            );
            op.add_term(
                Monomial::var(shape, VarIndex::new(2 * frame_row, j)),
                unit,
                GaussRat::imag(rat_int(1)),
            );
        } else if frame_row <= 2 * self.m {
            let p = frame_row - self.m;
            op.add_term(
                Monomial::var(shape, VarIndex::new(2 * p - 1, j)),
                unit.clone(),
                GaussRat::real(rat_int(1)),
            );
            op.add_term(
                Monomial::var(shape, VarIndex::new(2 * p, j)),
                unit,
                GaussRat::imag(rat_int(-1)),
            );
        } else {
            op.add_term(
                Monomial::var(shape, VarIndex::new(shape.n, j)),
                unit,
                GaussRat::real(rat_int(1)),
            );
        }
        op
    }

    fn x_deriv(&self, frame_row: usize, j: usize) -> CxOp {
        let shape = self.shape;
        let mut op = CxOp::zero(shape);
        let unit = Monomial::unit(shape);
        if frame_row <= self.m {
            op.add_term(
                unit.clone(),
                Monomial::var(shape, VarIndex::new(2 * frame_row - 1, j)),
                GaussRat::real(rat(1, 2)),
            );
            op.add_term(
                unit,
                Monomial::var(shape, VarIndex::new(2 * frame_row, j)),
                GaussRat::imag(rat(-1, 2)),
            );
        } else if frame_row <= 2 * self.m {
            let p = frame_row - self.m;
            op.add_term(
                unit.clone(),
                Monomial::var(shape, VarIndex::new(2 * p - 1, j)),
                GaussRat::real(rat(1, 2)),
            );
            op.add_term(
                unit,
                Monomial::var(shape, VarIndex::new(2 * p, j)),
                GaussRat::imag(rat(1, 2)),
            );
        } else {
            op.add_term(
                unit,
                Monomial::var(shape, VarIndex::new(shape.n, j)),
                GaussRat::real(rat_int(1)),
            );
        }
        op
    }

    /// Simple raising operators rebuilt directly in x coordinates by
    /// composing multiplication and derivative combinations. Shares no
    /// code with the frame builders or the coordinate substitution, so it
    /// serves as an independent check on reported highest weight vectors.
    pub fn so_simple_raising_x(&self) -> Vec<CxOp> {
        let m = self.m;
        let k = self.shape.k;
        let u = |p: usize| p;
        let v = |p: usize| m + p;
        let w = self.shape.n;
        let pair = |a: usize, b: usize| -> CxOp {
            let mut op = CxOp::zero(self.shape);
            for j in 1..=k {
                op = op.add(&self.x_mult(a, j).compose(&self.x_deriv(b, j)));
            }
            op
        };
        let mut out = Vec::new();
        for p in 1..m {
            out.push(pair(u(p), u(p + 1)).sub(&pair(v(p + 1), v(p))));
        }
        if self.odd && m >= 1 {
            out.push(
                pair(u(m), w).sub(&pair(w, v(m)).scale(&GaussRat::real(rat_int(2)))),
            );
        }
        if !self.odd && m >= 2 {
            out.push(pair(u(m - 1), v(m)).sub(&pair(u(m), v(m - 1))));
        }
        out
    }
}

/// Complexified column raising operator on x coordinates, for post hoc
/// verification independent of the frame machinery.
pub fn gl_raising_x(shape: Shape, i: usize, j: usize) -> CxOp {
    let mut op = CxOp::zero(shape);
    for l in 1..=shape.n {
        op.add_term(
            Monomial::var(shape, VarIndex::new(l, i)),
            Monomial::var(shape, VarIndex::new(l, j)),
            GaussRat::real(rat_int(1)),
        );
    }
    op
}

/// x-frame Cartan operator of plane p: -i L_{2p-1,2p} summed over columns.
pub fn so_cartan_x(shape: Shape, p: usize) -> CxOp {
    let mut op = CxOp::zero(shape);
    for j in 1..=shape.k {
        let a = Monomial::var(shape, VarIndex::new(2 * p - 1, j));
        let b = Monomial::var(shape, VarIndex::new(2 * p, j));
        op.add_term(a.clone(), b.clone(), GaussRat::imag(rat_int(-1)));
        op.add_term(b, a, GaussRat::imag(rat_int(1)));
    }
    op
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::graded_basis;
    use crate::operators::{build_orth, build_sp2k, SignedPermAction};

    fn frames() -> Vec<OrthFrame> {
        [(1, 1), (2, 1), (3, 1), (4, 2), (5, 1), (3, 2), (2, 2)]
            .into_iter()
            .map(|(n, k)| OrthFrame::new(n, k).unwrap())
            .collect()
    }

    #[test]
    fn root_vector_count_matches_algebra_dimension() {
        for f in frames() {
            let n = f.shape().n;
            let expected = n * (n - 1) / 2;
            assert_eq!(
                f.so_root_vectors().len() + f.pairs(),
                expected,
                "so({n}) dimension"
            );
        }
    }

    #[test]
    fn root_vectors_annihilate_quadratic_invariants() {
        for f in frames() {
            let k = f.shape().k;
            for op in f.so_spanning() {
                for i in 1..=k {
                    for j in i..=k {
                        let r = f.quad_invariant(i, j);
                        assert!(
                            op.apply(&r).is_zero(),
                            "n={} op {op} on r_{i}{j}",
                            f.shape().n
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn root_vectors_have_declared_weights() {
        for f in frames() {
            for (alpha, x) in f.so_root_vectors() {
                for p in 1..=f.pairs() {
                    let lhs = f.cartan(p).commutator(&x);
                    assert_eq!(
                        lhs,
                        x.scale(&rat_int(alpha[p - 1])),
                        "[H_{p}, X_{alpha:?}] at n={}",
                        f.shape().n
                    );
                }
            }
        }
    }

    #[test]
    fn long_root_bracket_gives_cartan_difference() {
        let f = OrthFrame::new(4, 2).unwrap();
        let x12 = f.raise_long(1, 2);
        let x21 = f.raise_long(2, 1);
        assert_eq!(x12.commutator(&x21), f.cartan(1).sub(&f.cartan(2)));
    }

    #[test]
    fn short_root_bracket_hits_cartan() {
        let f = OrthFrame::new(3, 1).unwrap();
        let plus = f.raise_short(1);
        let minus = f.lower_short(1);
        assert_eq!(plus.commutator(&minus), f.cartan(1).scale(&rat_int(-2)));
    }

    #[test]
    fn cartan_action_matches_x_frame_rotation() {
        for f in frames() {
            let shape = f.shape();
            if f.pairs() == 0 {
                continue;
            }
            let pool = graded_basis(shape, 2);
            for p in 1..=f.pairs() {
                let hx = so_cartan_x(shape, p);
                for m in pool.span.monomials() {
                    let fm = Polynomial::from_monomial(shape, m.clone(), GaussRat::real(rat_int(1)));
                    assert_eq!(f.to_x(&f.cartan(p).to_complex().apply(&fm)), hx.apply(&f.to_x(&fm)));
                }
            }
        }
    }

    #[test]
    fn x_cartan_lies_in_the_rotation_span() {
        // -i L_{2p-1,2p} is build_orth's generator complexified and scaled
        let shape = Shape::new(4, 1).unwrap();
        let orth = build_orth(4, 1).unwrap();
        for p in 1..=2usize {
            let expected = so_cartan_x(shape, p);
            let found = orth
                .list()
                .iter()
                .find(|(a, b, _)| (*a, *b) == (2 * p - 1, 2 * p))
                .map(|(_, _, l)| l.to_complex().scale(&GaussRat::imag(rat_int(-1))))
                .unwrap();
            assert_eq!(found, expected);
        }
    }

    #[test]
    fn laplacian_and_column_operators_match_x_frame() {
        for f in frames() {
            let shape = f.shape();
            let sp = build_sp2k(shape.n, shape.k).unwrap();
            let pool = graded_basis(shape, 3);
            for i in 1..=shape.k {
                for j in i..=shape.k {
                    let lap_x = sp.p_minus(i, j).to_complex();
                    let lap_f = f.laplacian(i, j).to_complex();
                    for m in pool.span.monomials().iter().take(12) {
                        let fm =
                            Polynomial::from_monomial(shape, m.clone(), GaussRat::real(rat_int(1)));
                        assert_eq!(f.to_x(&lap_f.apply(&fm)), lap_x.apply(&f.to_x(&fm)));
                    }
                }
            }
            for i in 1..=shape.k {
                for j in 1..=shape.k {
                    if i == j {
                        continue;
                    }
                    let ex = gl_raising_x(shape, i, j);
                    let ef = f.gl_raising(i, j).to_complex();
                    for m in pool.span.monomials().iter().take(12) {
                        let fm =
                            Polynomial::from_monomial(shape, m.clone(), GaussRat::real(rat_int(1)));
                        assert_eq!(f.to_x(&ef.apply(&fm)), ex.apply(&f.to_x(&fm)));
                    }
                }
            }
        }
    }

    #[test]
    fn quadratic_invariant_maps_to_column_pairing() {
        for f in frames() {
            let shape = f.shape();
            let sp = build_sp2k(shape.n, shape.k).unwrap();
            for i in 1..=shape.k {
                for j in i..=shape.k {
                    // p_plus(i,j) is multiplication by the pairing polynomial
                    let mut expected = Polynomial::zero(shape);
                    for ((xm, _), c) in sp.p_plus(i, j).terms() {
                        expected.add_term(xm.clone(), GaussRat::real(c.clone()));
                    }
                    assert_eq!(f.to_x_real(&f.quad_invariant(i, j)), expected);
                }
            }
        }
    }

    #[test]
    fn frame_conversions_invert_each_other() {
        for f in frames() {
            let shape = f.shape();
            for d in 0..=3u32 {
                for m in graded_basis(shape, d).span.monomials().iter().take(15) {
                    let fm = Polynomial::from_monomial(shape, m.clone(), GaussRat::real(rat_int(1)));
                    assert_eq!(f.from_x(&f.to_x(&fm)), fm);
                    assert_eq!(f.to_x(&f.from_x(&fm)), fm);
                }
            }
        }
    }

    #[test]
    fn monomials_are_weight_vectors() {
        for f in frames() {
            let shape = f.shape();
            for m in graded_basis(shape, 3).span.monomials() {
                let mu = f.so_weight(m);
                let fm = Polynomial::from_monomial(shape, m.clone(), rat_int(1));
                for p in 1..=f.pairs() {
                    assert_eq!(f.cartan(p).apply(&fm), fm.scale(&rat_int(mu[p - 1])));
                }
            }
        }
    }

    #[test]
    fn composed_x_raisings_match_the_frame_route() {
        for f in frames() {
            let shape = f.shape();
            let frame_ops = f.so_simple_raising();
            let x_ops = f.so_simple_raising_x();
            assert_eq!(frame_ops.len(), x_ops.len());
            for (ff, fx) in frame_ops.iter().zip(&x_ops) {
                for m in graded_basis(shape, 3).span.monomials().iter().take(15) {
                    let fm =
                        Polynomial::from_monomial(shape, m.clone(), GaussRat::real(rat_int(1)));
                    assert_eq!(
                        f.to_x(&ff.to_complex().apply(&fm)),
                        fx.apply(&f.to_x(&fm)),
                        "n={} op {ff}",
                        shape.n
                    );
                }
            }
        }
    }

    #[test]
    fn conjugation_swap_is_the_last_reflection() {
        for (n, k) in [(2usize, 1usize), (2, 2), (4, 1), (4, 2)] {
            let f = OrthFrame::new(n, k).unwrap();
            let swap = f.conjugation_swap().unwrap();
            let shape = f.shape();
            let refl = SignedPermAction::reflection(shape, n);
            for m in graded_basis(shape, 3).span.monomials().iter().take(20) {
                let fm = Polynomial::from_monomial(shape, m.clone(), GaussRat::real(rat_int(1)));
                assert_eq!(f.to_x(&swap.act(&fm)), refl.act(&f.to_x(&fm)));
            }
            assert!(OrthFrame::new(3, 1).unwrap().conjugation_swap().is_none());
        }
    }
}
