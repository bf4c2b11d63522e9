//! Ordered monomial spans and graded bases.
//!
//! A `MonoSpan` is a deterministic ordered list of distinct monomials with
//! index lookup; `GradedBasis` is the span of all monomials of one total
//! degree. Operator matrices, kernels, and weight spaces all express their
//! vectors in these coordinates.

use crate::error::{CoreError, Result};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::rational::Scalar;
use crate::shape::Shape;
use std::collections::HashMap;

#[derive(Clone, Debug)]
pub struct MonoSpan {
    shape: Shape,
    monos: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl MonoSpan {
    /// Build from a list of distinct monomials, keeping the given order.
    pub fn new(shape: Shape, monos: Vec<Monomial>) -> Self {
        let index = monos
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        MonoSpan {
            shape,
            monos,
            index,
        }
    }

    /// Build from any collection by sorting into canonical graded-lex order
    /// and removing duplicates.
    pub fn sorted(shape: Shape, mut monos: Vec<Monomial>) -> Self {
        monos.sort();
        monos.dedup();
        Self::new(shape, monos)
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }

    pub fn mono(&self, i: usize) -> &Monomial {
        &self.monos[i]
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monos
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinate vector of a polynomial, failing if any term lies outside
    /// the span.
    pub fn coords<C: Scalar>(&self, p: &Polynomial<C>) -> Result<Vec<C>> {
        if p.shape() != self.shape {
            return Err(CoreError::ShapeMismatch(format!(
                "{} vs {}",
                p.shape(),
                self.shape
            )));
        }
        let mut v = vec![C::zero(); self.monos.len()];
        for (m, c) in p.terms() {
            let Some(i) = self.index_of(m) else {
                return Err(CoreError::InvalidArgument(format!(
                    "term outside span: {m:?}"
                )));
            };
            v[i] = c.clone();
        }
        Ok(v)
    }

    pub fn poly_from_coords<C: Scalar>(&self, v: &[C]) -> Polynomial<C> {
        assert_eq!(v.len(), self.monos.len());
        let mut p = Polynomial::zero(self.shape);
        for (m, c) in self.monos.iter().zip(v) {
            p.add_term(m.clone(), c.clone());
        }
        p
    }

    /// Sub-span of monomials satisfying a predicate, order preserved.
    pub fn filter(&self, pred: impl Fn(&Monomial) -> bool) -> MonoSpan {
        MonoSpan::new(
            self.shape,
            self.monos.iter().filter(|m| pred(m)).cloned().collect(),
        )
    }
}

/// All monomials of one total degree in canonical graded-lex order.
#[derive(Clone, Debug)]
pub struct GradedBasis {
    pub degree: u32,
    pub span: MonoSpan,
}

/// Ordered basis of the degree-d graded piece of the polynomial ring on an
/// n-by-k variable matrix. Size is C(nk+d-1, d); with k = 0 the only basis
/// element is the empty monomial in degree 0.
pub fn monomial_basis(n: usize, k: usize, d: u32) -> Result<GradedBasis> {
    let shape = Shape::new(n, k)?;
    Ok(graded_basis(shape, d))
}

pub fn graded_basis(shape: Shape, d: u32) -> GradedBasis {
    let nvars = shape.nvars();
    let mut monos = Vec::new();
    if nvars == 0 {
        if d == 0 {
            monos.push(Monomial::unit(shape));
        }
    } else {
        let mut exps = vec![0u32; nvars];
        descend(&mut monos, &mut exps, 0, d);
    }
    GradedBasis {
        degree: d,
        span: MonoSpan::new(shape, monos),
    }
}

/// Emit exponent vectors of total degree `left` over positions pos.. in
/// lexicographically descending order (matching the graded-lex basis
/// order).
fn descend(out: &mut Vec<Monomial>, exps: &mut Vec<u32>, pos: usize, left: u32) {
    if pos + 1 == exps.len() {
        exps[pos] = left;
        out.push(Monomial::from_exps(exps.clone()));
        exps[pos] = 0;
        return;
    }
    for e in (0..=left).rev() {
        exps[pos] = e;
        descend(out, exps, pos + 1, left - e);
        exps[pos] = 0;
    }
}

/// Partition a graded basis into column-multidegree blocks, ordered by
/// descending lexicographic multidegree. Every operator family used here
/// maps each block into a single block, so kernels and weight analysis
/// can proceed blockwise.
pub fn column_blocks(basis: &GradedBasis) -> Vec<(Vec<u32>, MonoSpan)> {
    let shape = basis.span.shape();
    let mut groups: std::collections::BTreeMap<Vec<u32>, Vec<Monomial>> = Default::default();
    for m in basis.span.monomials() {
        groups
            .entry(m.column_degrees(shape))
            .or_default()
            .push(m.clone());
    }
    groups
        .into_iter()
        .rev()
        .map(|(c, monos)| (c, MonoSpan::new(shape, monos)))
        .collect()
}

/// Number of monomials of degree d in v variables: C(v+d-1, d).
pub fn stars_and_bars(v: usize, d: u32) -> u128 {
    if v == 0 {
        return if d == 0 { 1 } else { 0 };
    }
    binomial(v as u128 + d as u128 - 1, d as u128)
}

pub fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;

    #[test]
    fn basis_sizes_match_counting() {
        for n in 1..=3usize {
            for k in 0..=3usize {
                for d in 0..=6u32 {
                    let b = monomial_basis(n, k, d).unwrap();
                    assert_eq!(
                        b.span.len() as u128,
                        stars_and_bars(n * k, d),
                        "size ({n},{k},{d})"
                    );
                }
            }
        }
    }

    #[test]
    fn basis_order_is_graded_lex() {
        let b = monomial_basis(2, 1, 2).unwrap();
        let strings: Vec<String> = b
            .span
            .monomials()
            .iter()
            .map(|m| {
                Poly::from_monomial(b.span.shape(), m.clone(), crate::rational::rat_int(1))
                    .to_string()
            })
            .collect();
        assert_eq!(strings, vec!["x[1,1]^2", "x[1,1]*x[2,1]", "x[2,1]^2"]);
        // the order is sorted ascending in the monomial Ord
        let mut sorted = b.span.monomials().to_vec();
        sorted.sort();
        assert_eq!(sorted, b.span.monomials());
    }

    #[test]
    fn degree_three_single_variable() {
        let b = monomial_basis(1, 1, 3).unwrap();
        assert_eq!(b.span.len(), 1);
        assert_eq!(b.span.mono(0).exps(), &[3]);
    }

    #[test]
    fn empty_shape_convention() {
        let b = monomial_basis(2, 0, 0).unwrap();
        assert_eq!(b.span.len(), 1);
        assert!(b.span.mono(0).is_unit());
        assert_eq!(monomial_basis(2, 0, 3).unwrap().span.len(), 0);
    }

    #[test]
    fn coords_round_trip() {
        let b = monomial_basis(2, 2, 2).unwrap();
        let s = b.span.shape();
        let p = Poly::var(s, 1, 1)
            .mul(&Poly::var(s, 2, 2))
            .add(&Poly::var(s, 1, 2).pow(2));
        let v = b.span.coords(&p).unwrap();
        assert_eq!(b.span.poly_from_coords(&v), p);
        // a term of the wrong degree is outside the span
        assert!(b.span.coords(&Poly::one(s)).is_err());
    }

    #[test]
    fn blocks_partition_basis() {
        let b = monomial_basis(2, 2, 3).unwrap();
        let blocks = column_blocks(&b);
        let total: usize = blocks.iter().map(|(_, s)| s.len()).sum();
        assert_eq!(total, b.span.len());
        // descending lex block order
        let degs: Vec<Vec<u32>> = blocks.iter().map(|(c, _)| c.clone()).collect();
        assert_eq!(
            degs,
            vec![vec![3, 0], vec![2, 1], vec![1, 2], vec![0, 3]]
        );
    }
}
