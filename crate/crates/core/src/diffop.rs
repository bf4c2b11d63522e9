//! Polynomial-coefficient differential operators on the matrix variable
//! space: the Weyl algebra in normal-ordered form.
//!
//! A term is (x-monomial, derivative-monomial, coefficient); composition
//! re-normal-orders via the Leibniz identity
//! d^a (x^b .) = sum_g C(a,g) * fall(b,g) * x^(b-g) d^(a-g),
//! so operator identities like commutation relations become exact term-map
//! comparisons.

use crate::basis::{graded_basis, MonoSpan};
use crate::error::{CoreError, Result};
use crate::matrix::RationalMatrix;
use crate::monomial::Monomial;
use crate::poly::{join_terms, render_term, tokenize_terms, Polynomial};
use crate::rational::{GaussRat, Rat, Scalar};
use crate::shape::{Shape, VarIndex};
use num::bigint::BigInt;
use num::One;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiffOperator<C: Scalar> {
    shape: Shape,
    terms: BTreeMap<(Monomial, Monomial), C>,
}

pub type Op = DiffOperator<Rat>;
pub type CxOp = DiffOperator<GaussRat>;

impl<C: Scalar> DiffOperator<C> {
    pub fn zero(shape: Shape) -> Self {
        DiffOperator {
            shape,
            terms: BTreeMap::new(),
        }
    }

    /// Multiplication by a constant.
    pub fn scalar(shape: Shape, c: C) -> Self {
        let mut op = Self::zero(shape);
        op.add_term(Monomial::unit(shape), Monomial::unit(shape), c);
        op
    }

    /// The partial derivative in x[row, col].
    pub fn partial(shape: Shape, row: usize, col: usize) -> Self {
        let mut op = Self::zero(shape);
        op.add_term(
            Monomial::unit(shape),
            Monomial::var(shape, VarIndex::new(row, col)),
            C::one(),
        );
        op
    }

    /// Multiplication by the variable x[row, col].
    pub fn times_var(shape: Shape, row: usize, col: usize) -> Self {
        let mut op = Self::zero(shape);
        op.add_term(
            Monomial::var(shape, VarIndex::new(row, col)),
            Monomial::unit(shape),
            C::one(),
        );
        op
    }

    /// Multiplication by a polynomial.
    pub fn times_poly(p: &Polynomial<C>) -> Self {
        let mut op = Self::zero(p.shape());
        for (m, c) in p.terms() {
            op.add_term(m.clone(), Monomial::unit(p.shape()), c.clone());
        }
        op
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Monomial, Monomial), &C)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, xm: Monomial, dm: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((xm, dm)) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add_ref(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.shape, other.shape);
        let mut out = self.clone();
        for ((xm, dm), c) in &other.terms {
            out.add_term(xm.clone(), dm.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.shape, other.shape);
        let mut out = self.clone();
        for ((xm, dm), c) in &other.terms {
            out.add_term(xm.clone(), dm.clone(), c.neg_ref());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(self.shape);
        for ((xm, dm), c) in &self.terms {
            out.terms.insert((xm.clone(), dm.clone()), c.neg_ref());
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.shape);
        for ((xm, dm), v) in &self.terms {
            out.add_term(xm.clone(), dm.clone(), v.mul_ref(c));
        }
        out
    }

    /// Apply to a polynomial.
    pub fn apply(&self, p: &Polynomial<C>) -> Polynomial<C> {
        debug_assert_eq!(self.shape, p.shape());
        let mut out = Polynomial::zero(self.shape);
        for ((xm, dm), c) in &self.terms {
            for (pm, pc) in p.terms() {
                if let Some((fall, rest)) = pm.differentiate(dm) {
                    out.add_term(rest.mul(xm), c.mul_ref(pc).mul_big(&fall));
                }
            }
        }
        out
    }

    pub fn apply_monomial(&self, m: &Monomial) -> Polynomial<C> {
        let mut out = Polynomial::zero(self.shape);
        for ((xm, dm), c) in &self.terms {
            if let Some((fall, rest)) = m.differentiate(dm) {
                out.add_term(rest.mul(xm), c.mul_big(&fall));
            }
        }
        out
    }

    /// Push the terms of self applied to factor*m onto an accumulator
    /// without normalizing; callers sort and fold.
    pub(crate) fn push_apply(&self, m: &Monomial, factor: &C, out: &mut Vec<(Monomial, C)>) {
        for ((xm, dm), c) in &self.terms {
            if let Some((fall, rest)) = m.differentiate(dm) {
                out.push((rest.mul(xm), c.mul_ref(factor).mul_big(&fall)));
            }
        }
    }

    /// Normal-ordered composition: (self.compose(rhs))(p) = self(rhs(p)).
    pub fn compose(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.shape, rhs.shape);
        let mut out = Self::zero(self.shape);
        for ((xa, da), ca) in &self.terms {
            for ((xb, db), cb) in &rhs.terms {
                let cab = ca.mul_ref(cb);
                // gamma runs below min(da, xb) componentwise
                let cap: Vec<u32> = da
                    .exps()
                    .iter()
                    .zip(xb.exps())
                    .map(|(a, b)| *a.min(b))
                    .collect();
                for gamma in odometer(&cap) {
                    let mut coef = BigInt::one();
                    for (i, &g) in gamma.iter().enumerate() {
                        if g > 0 {
                            coef *= binomial_big(da.exps()[i], g) * falling_big(xb.exps()[i], g);
                        }
                    }
                    let gm = Monomial::from_exps(gamma);
                    let xm = xa.mul(&xb.checked_div(&gm).unwrap());
                    let dm = db.mul(&da.checked_div(&gm).unwrap());
                    out.add_term(xm, dm, cab.mul_big(&coef));
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.compose(other).sub(&other.compose(self))
    }

    /// Uniform total-degree shift (x-degree minus derivative degree) of all
    /// terms. The zero operator reports 0.
    pub fn degree_shift(&self) -> Result<i64> {
        let mut shift: Option<i64> = None;
        for (xm, dm) in self.terms.keys() {
            let s = xm.degree() as i64 - dm.degree() as i64;
            match shift {
                None => shift = Some(s),
                Some(prev) if prev != s => {
                    return Err(CoreError::InhomogeneousOperator(format!(
                        "term shifts {prev} and {s} in one operator"
                    )))
                }
                _ => {}
            }
        }
        Ok(shift.unwrap_or(0))
    }

    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> DiffOperator<D> {
        let mut out = DiffOperator::zero(self.shape);
        for ((xm, dm), c) in &self.terms {
            out.add_term(xm.clone(), dm.clone(), f(c));
        }
        out
    }

    /// Parse the canonical text form produced by Display.
    pub fn parse(s: &str, shape: Shape) -> Result<Self> {
        let mut out = Self::zero(shape);
        for term in tokenize_terms(s)? {
            let mut coeff = if term.coeff.is_empty() {
                C::one()
            } else {
                C::parse_coeff(&term.coeff)?
            };
            if term.neg {
                coeff = coeff.neg_ref();
            }
            let mut xe = vec![0u32; shape.nvars()];
            let mut de = vec![0u32; shape.nvars()];
            for (sym, row, col, e) in term.factors {
                if row == 0 || row > shape.n || col == 0 || col > shape.k {
                    return Err(CoreError::Parse(format!(
                        "index [{row},{col}] outside shape {shape}"
                    )));
                }
                let pos = VarIndex::new(row, col).flatten(shape);
                match sym {
                    'x' => xe[pos] += e,
                    'd' => de[pos] += e,
                    _ => return Err(CoreError::Parse(format!("unknown symbol {sym}"))),
                }
            }
            out.add_term(Monomial::from_exps(xe), Monomial::from_exps(de), coeff);
        }
        Ok(out)
    }
}

impl Op {
    pub fn to_complex(&self) -> CxOp {
        self.map_coeffs(GaussRat::from_rat)
    }

    /// Matrix of the operator from a domain span onto the sorted span of
    /// its image. Rows index target monomials, columns domain monomials.
    pub fn matrix_on(&self, domain: &MonoSpan) -> (MonoSpan, RationalMatrix) {
        let images: Vec<Polynomial<Rat>> = domain
            .monomials()
            .iter()
            .map(|m| self.apply_monomial(m))
            .collect();
        let mut support = Vec::new();
        for p in &images {
            for (m, _) in p.terms() {
                support.push(m.clone());
            }
        }
        let target = MonoSpan::sorted(self.shape, support);
        let mut mat = RationalMatrix::zeros(target.len(), domain.len());
        for (j, p) in images.iter().enumerate() {
            for (m, c) in p.terms() {
                mat.set(target.index_of(m).unwrap(), j, c.clone());
            }
        }
        (target, mat)
    }

    /// Matrix with a prescribed target span; errors if any image term falls
    /// outside it.
    pub fn matrix_between(&self, domain: &MonoSpan, target: &MonoSpan) -> Result<RationalMatrix> {
        let mut mat = RationalMatrix::zeros(target.len(), domain.len());
        for (j, m) in domain.monomials().iter().enumerate() {
            let p = self.apply_monomial(m);
            for (mono, c) in p.terms() {
                let Some(i) = target.index_of(mono) else {
                    return Err(CoreError::InvalidArgument(format!(
                        "image term outside target span: {mono:?}"
                    )));
                };
                mat.set(i, j, c.clone());
            }
        }
        Ok(mat)
    }

    /// Exact coefficients expressing this operator in the span of a family,
    /// or None when it lies outside.
    pub fn in_span(&self, family: &[Op]) -> Option<Vec<Rat>> {
        let mut keys: std::collections::BTreeSet<(Monomial, Monomial)> = Default::default();
        for op in family.iter().chain(std::iter::once(self)) {
            for (k, _) in op.terms() {
                keys.insert(k.clone());
            }
        }
        let keys: Vec<_> = keys.into_iter().collect();
        let mut mat = RationalMatrix::zeros(keys.len(), family.len());
        for (j, op) in family.iter().enumerate() {
            for ((xm, dm), c) in op.terms() {
                let i = keys.binary_search(&(xm.clone(), dm.clone())).unwrap();
                mat.set(i, j, c.clone());
            }
        }
        let rhs: Vec<Rat> = keys
            .iter()
            .map(|k| {
                self.terms
                    .get(k)
                    .cloned()
                    .unwrap_or_else(<Rat as Scalar>::zero)
            })
            .collect();
        mat.solve(&rhs)
    }
}

impl<C: Scalar> fmt::Display for DiffOperator<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shape = self.shape;
        let rendered = self
            .terms
            .iter()
            .map(|((xm, dm), c)| {
                let mut parts: Vec<(char, usize, usize, u32)> = Vec::new();
                for (pos, &e) in xm.exps().iter().enumerate() {
                    if e > 0 {
                        let v = VarIndex::unflatten(pos, shape);
                        parts.push(('x', v.row, v.col, e));
                    }
                }
                for (pos, &e) in dm.exps().iter().enumerate() {
                    if e > 0 {
                        let v = VarIndex::unflatten(pos, shape);
                        parts.push(('d', v.row, v.col, e));
                    }
                }
                render_term(c, &parts)
            })
            .collect();
        write!(f, "{}", join_terms(rendered))
    }
}

// k <= n holds at every call site
fn binomial_big(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn falling_big(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= BigInt::from(n - i);
    }
    acc
}

/// All integer vectors 0 <= v <= cap componentwise, iterating the sparse
/// support only.
fn odometer(cap: &[u32]) -> Vec<Vec<u32>> {
    let support: Vec<usize> = cap
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(i, _)| i)
        .collect();
    let mut out = Vec::new();
    let mut cur = vec![0u32; cap.len()];
    loop {
        out.push(cur.clone());
        // increment
        let mut pos = 0;
        loop {
            if pos == support.len() {
                return out;
            }
            let i = support[pos];
            if cur[i] < cap[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = 0;
            pos += 1;
        }
    }
}

/// Joint kernel of a family of degree-homogeneous operators inside the
/// degree-d graded piece, as normalized polynomials.
///
/// Matrices of all operators are stacked over the full graded basis and the
/// exact nullspace is taken; kernel polynomials have coprime integer
/// coefficients and deterministic sign.
pub fn kernel_basis(ops: &[Op], n: usize, k: usize, d: u32) -> Result<Vec<Polynomial<Rat>>> {
    let shape = Shape::new(n, k)?;
    let domain = graded_basis(shape, d);
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for op in ops {
        if op.shape() != shape {
            return Err(CoreError::ShapeMismatch(format!(
                "operator shape {} vs requested {}",
                op.shape(),
                shape
            )));
        }
        let shift = op.degree_shift()?;
        let target_deg = d as i64 + shift;
        if target_deg < 0 {
            continue; // the operator annihilates the whole piece
        }
        let target = graded_basis(shape, target_deg as u32);
        let mat = op.matrix_between(&domain.span, &target.span)?;
        for r in 0..mat.nrows() {
            rows.push((0..mat.ncols()).map(|c| mat.at(r, c).clone()).collect());
        }
    }
    let kernel = if rows.is_empty() {
        // no constraints: the whole graded piece
        let mut vecs = Vec::new();
        for i in 0..domain.span.len() {
            let mut v = vec![<Rat as Scalar>::zero(); domain.span.len()];
            v[i] = <Rat as Scalar>::one();
            vecs.push(v);
        }
        vecs
    } else {
        RationalMatrix::from_rows(rows)?.kernel()
    };
    Ok(kernel
        .iter()
        .map(|v| domain.span.poly_from_coords(v))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;
    use crate::rational::{rat, rat_int};

    fn s(n: usize, k: usize) -> Shape {
        Shape::new(n, k).unwrap()
    }

    #[test]
    fn normal_ordering_of_d_after_x() {
        // d/dx . x = 1 + x d/dx
        let sh = s(1, 1);
        let dx = Op::partial(sh, 1, 1);
        let x = Op::times_var(sh, 1, 1);
        let c = dx.compose(&x);
        assert_eq!(c.to_string(), "1 + x[1,1]*d[1,1]");
        assert_eq!(dx.commutator(&x).to_string(), "1");
    }

    #[test]
    fn apply_matches_composition() {
        let sh = s(2, 2);
        let a = Op::parse("x[1,1]*d[2,1] + 1/2*d[1,2]^2", sh).unwrap();
        let b = Op::parse("x[2,2]^2*d[1,1] - x[1,2]", sh).unwrap();
        let ab = a.compose(&b);
        let mut checked = 0;
        for d in 0..=5u32 {
            for m in graded_basis(sh, d).span.monomials() {
                let p = Poly::from_monomial(sh, m.clone(), rat_int(1));
                assert_eq!(ab.apply(&p), a.apply(&b.apply(&p)));
                checked += 1;
            }
        }
        assert!(checked >= 100);
        // associativity spot check
        let c = Op::parse("d[2,2]*d[1,1]", sh).unwrap();
        assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
    }

    #[test]
    fn one_variable_triple_brackets() {
        // e = -1/2 x^2, h = 1/2 + x d, f = 1/2 d^2 satisfy
        // [e,f] = h, [h,e] = 2e, [h,f] = -2f
        let sh = s(1, 1);
        let e = Op::parse("-1/2*x[1,1]^2", sh).unwrap();
        let h = Op::parse("1/2 + x[1,1]*d[1,1]", sh).unwrap();
        let f = Op::parse("1/2*d[1,1]^2", sh).unwrap();
        assert_eq!(e.commutator(&f), h);
        assert_eq!(h.commutator(&e), e.scale(&rat_int(2)));
        assert_eq!(h.commutator(&f), f.scale(&rat_int(-2)));
    }

    #[test]
    fn laplacian_application() {
        let sh = s(2, 1);
        let lap = Op::parse("d[1,1]^2 + d[2,1]^2", sh).unwrap();
        let q = Poly::parse("x[1,1]^2 + x[2,1]^2", sh).unwrap();
        assert_eq!(lap.apply(&q), Poly::constant(sh, rat_int(4)));
        let euler = Op::parse("x[1,1]*d[1,1] + x[2,1]*d[2,1]", sh).unwrap();
        let p = Poly::parse("x[1,1]^2*x[2,1]", sh).unwrap();
        assert_eq!(euler.apply(&p), p.scale(&rat_int(3)));
    }

    #[test]
    fn degree_shift_detection() {
        let sh = s(1, 1);
        assert_eq!(
            Op::parse("1/2 + x[1,1]*d[1,1]", sh).unwrap().degree_shift().unwrap(),
            0
        );
        assert_eq!(Op::partial(sh, 1, 1).degree_shift().unwrap(), -1);
        assert!(Op::parse("x[1,1] + d[1,1]", sh)
            .unwrap()
            .degree_shift()
            .is_err());
        assert_eq!(Op::zero(sh).degree_shift().unwrap(), 0);
    }

    #[test]
    fn span_membership() {
        let sh = s(1, 1);
        let h = Op::parse("1/2 + x[1,1]*d[1,1]", sh).unwrap();
        let one = Op::scalar(sh, rat_int(1));
        let euler = Op::parse("x[1,1]*d[1,1]", sh).unwrap();
        let coords = h.in_span(&[one.clone(), euler.clone()]).unwrap();
        assert_eq!(coords, vec![rat(1, 2), rat_int(1)]);
        assert!(Op::partial(sh, 1, 1).in_span(&[one, euler]).is_none());
    }

    #[test]
    fn laplacian_kernel_in_degree_two() {
        let sh = s(2, 1);
        let lap = Op::parse("d[1,1]^2 + d[2,1]^2", sh).unwrap();
        let kernel = kernel_basis(&[lap], 2, 1, 2).unwrap();
        let strings: Vec<String> = kernel.iter().map(|p| p.to_string()).collect();
        assert_eq!(strings, vec!["x[1,1]*x[2,1]", "x[1,1]^2 - x[2,1]^2"]);
    }

    #[test]
    fn second_order_family_with_no_kernel() {
        let ops = vec![
            Op::parse("d[1,1]^2", s(1, 2)).unwrap(),
            Op::parse("d[1,1]*d[1,2]", s(1, 2)).unwrap(),
            Op::parse("d[1,2]^2", s(1, 2)).unwrap(),
        ];
        assert_eq!(kernel_basis(&ops, 1, 2, 2).unwrap().len(), 0);
        // while degrees 0 and 1 are untouched
        assert_eq!(kernel_basis(&ops, 1, 2, 1).unwrap().len(), 2);
        assert_eq!(kernel_basis(&ops, 1, 2, 0).unwrap().len(), 1);
    }

    #[test]
    fn operator_text_round_trip() {
        let sh = s(2, 2);
        let cases = [
            "0",
            "3/2",
            "1/2*d[1,1]^2",
            "x[1,1]*d[2,1] - x[2,1]*d[1,1]",
            "3/2 + x[1,1]*d[1,1] + x[2,2]^2*d[1,2]^3",
        ];
        for c in cases {
            let op = Op::parse(c, sh).unwrap();
            assert_eq!(op.to_string(), c, "round trip {c}");
        }
    }
}
