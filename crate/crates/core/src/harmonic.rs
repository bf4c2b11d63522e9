//! Joint Laplacian kernels and the sl2 structure they generate.
//!
//! Everything here works in the standard x coordinates over the rationals.
//! The Laplacian pairings preserve the column multidegree grading up to a
//! shift, so kernels are computed block by block instead of on the full
//! degree space; the blocked result is regression-tested against the
//! unblocked stack elsewhere.

use serde::{Deserialize, Serialize};

use crate::basis::{binomial, column_blocks, graded_basis, MonoSpan};
use crate::diffop::Op;
use crate::error::{CoreError, Result};
use crate::matrix::{coords_in_span, row_span_rank, RationalMatrix};
use crate::operators::{build_sl2, build_sp2k, SignedPermAction};
use crate::poly::{Poly, Polynomial};
use crate::rational::{half_int, rat_int, Rat, Scalar};
use crate::shape::Shape;

/// Coordinate vectors spanning the joint kernel of the operators on the
/// span, additionally fixed by each of the group actions. Operators may
/// map the span anywhere; actions must permute it (up to sign).
pub(crate) fn joint_kernel_on_span(
    ops: &[&Op],
    actions: &[&SignedPermAction],
    span: &MonoSpan,
) -> Vec<Vec<Rat>> {
    if span.len() == 0 {
        return Vec::new();
    }
    // only operator stacks over spans big enough for elimination to
    // outweigh file traffic are worth memoizing
    let cacheable = actions.is_empty() && span.len() >= 64 && crate::cache::enabled();
    let key = if cacheable {
        let key = crate::cache::kernel_key(ops, span);
        if let Some(hit) = crate::cache::load_kernel(&key, span.len()) {
            return hit;
        }
        Some(key)
    } else {
        None
    };
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for op in ops {
        let (_, mat) = op.matrix_on(span);
        for r in 0..mat.nrows() {
            rows.push((0..mat.ncols()).map(|c| mat.at(r, c).clone()).collect());
        }
    }
    for g in actions {
        for (i, m) in span.monomials().iter().enumerate() {
            let (sign, image) = g.act_monomial(m);
            let mut row = vec![Rat::zero(); span.len()];
            let pos = span
                .index_of(&image)
                .expect("action must permute the span");
            row[pos] = row[pos].add_ref(&rat_int(sign));
            row[i] = row[i].sub_ref(&rat_int(1));
            if row.iter().any(|c| !Scalar::is_zero(c)) {
                rows.push(row);
            }
        }
    }
    let kernel = if rows.is_empty() {
        (0..span.len())
            .map(|i| {
                let mut v = vec![Rat::zero(); span.len()];
                v[i] = Rat::one();
                v
            })
            .collect()
    } else {
        let mat = RationalMatrix::from_rows(rows).expect("uniform row length");
        mat.kernel()
    };
    if let Some(key) = key {
        crate::cache::store_kernel(&key, &kernel);
    }
    kernel
}

fn blocked_joint_kernel(
    shape: Shape,
    degree: u32,
    ops: &[&Op],
    actions: &[&SignedPermAction],
) -> Vec<Poly> {
    let mut out = Vec::new();
    for (_, block) in column_blocks(&graded_basis(shape, degree)) {
        for v in joint_kernel_on_span(ops, actions, &block) {
            out.push(block.poly_from_coords(&v));
        }
    }
    out
}

/// The degree-d space annihilated by every Laplacian pairing.
pub struct HarmonicSpace {
    shape: Shape,
    degree: u32,
    basis: Vec<Poly>,
}

impl HarmonicSpace {
    pub fn shape(&self) -> Shape {
        self.shape
    }
    pub fn degree(&self) -> u32 {
        self.degree
    }
    pub fn basis(&self) -> &[Poly] {
        &self.basis
    }
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

pub fn harmonic_space(n: usize, k: usize, d: u32) -> Result<HarmonicSpace> {
    let shape = Shape::new(n, k)?;
    let basis = if k == 0 {
        if d == 0 {
            vec![Polynomial::constant(shape, Rat::one())]
        } else {
            Vec::new()
        }
    } else {
        let sp = build_sp2k(n, k)?;
        let lowering: Vec<&Op> = sp.p_minus_list().into_iter().map(|(_, _, op)| op).collect();
        blocked_joint_kernel(shape, d, &lowering, &[])
    };
    Ok(HarmonicSpace {
        shape,
        degree: d,
        basis,
    })
}

/// One layer of the separated decomposition: the radial power j, the
/// harmonic degree d = m - 2j, and the dimension contributed.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeparationLayer {
    pub radial_power: u32,
    pub harmonic_degree: u32,
    pub dimension: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeparationCertificate {
    pub n: usize,
    pub degree: u32,
    pub layers: Vec<SeparationLayer>,
    pub layer_total: usize,
    pub full_dimension: usize,
    pub independent: bool,
    pub pass: bool,
}

/// Check that degree-m polynomials in one column split as the direct sum
/// of q^j times the degree-(m-2j) harmonics: dimensions add up and the
/// assembled layer bases are linearly independent.
pub fn separation_of_variables(n: usize, degree: u32) -> Result<SeparationCertificate> {
    let shape = Shape::new(n, 1)?;
    let ambient = graded_basis(shape, degree);
    let q = quadric(shape);
    let mut layers = Vec::new();
    let mut vectors: Vec<Vec<Rat>> = Vec::new();
    let mut j = 0u32;
    while 2 * j <= degree {
        let hd = degree - 2 * j;
        let h = harmonic_space(n, 1, hd)?;
        let qj = q.pow(j);
        for b in h.basis() {
            vectors.push(ambient.span.coords(&qj.mul(b))?);
        }
        layers.push(SeparationLayer {
            radial_power: j,
            harmonic_degree: hd,
            dimension: h.dimension(),
        });
        j += 1;
    }
    let layer_total: usize = layers.iter().map(|l| l.dimension).sum();
    let full_dimension = ambient.span.len();
    let independent = row_span_rank(&vectors) == layer_total;
    Ok(SeparationCertificate {
        n,
        degree,
        pass: layer_total == full_dimension && independent,
        layers,
        layer_total,
        full_dimension,
        independent,
    })
}

fn quadric(shape: Shape) -> Poly {
    let sp = build_sp2k(shape.n, shape.k).expect("k >= 1");
    let mut q = Polynomial::zero(shape);
    for ((xm, _), c) in sp.p_plus(1, 1).terms() {
        q.add_term(xm.clone(), c.clone());
    }
    q
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LadderRung {
    pub index: u32,
    #[serde(with = "crate::rational::rat_serde")]
    pub eigenvalue: Rat,
    pub dimension: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeightLadder {
    pub n: usize,
    pub degree: u32,
    pub rungs: Vec<LadderRung>,
    pub eigenvalues_verified: bool,
    pub raising_injective: bool,
    pub lowering_annihilates_bottom: bool,
    pub lowering_descends: bool,
    pub pass: bool,
}

/// Climb the sl2 ladder over the degree-d harmonics in one column: verify
/// the h eigenvalue d + n/2 + 2j on each rung, injectivity of e going up,
/// and that f kills the bottom rung and otherwise steps down one rung.
pub fn weight_ladder(n: usize, d: u32, max_rung: u32) -> Result<WeightLadder> {
    let shape = Shape::new(n, 1)?;
    let sl2 = build_sl2(n)?;
    let base = harmonic_space(n, 1, d)?;
    if base.dimension() == 0 {
        return Err(CoreError::InvalidArgument(format!(
            "harmonic space of degree {d} for n={n} is zero; no ladder to climb"
        )));
    }
    let q = quadric(shape);
    let rung_basis = |j: u32| -> Vec<Poly> {
        let qj = q.pow(j);
        base.basis().iter().map(|b| qj.mul(b)).collect()
    };
    let mut rungs = Vec::new();
    let mut eigen_ok = true;
    let mut raise_ok = true;
    let mut bottom_ok = true;
    let mut lower_ok = true;
    for j in 0..=max_rung {
        let basis = rung_basis(j);
        let eigenvalue = rat_int(d as i64 + 2 * j as i64) + half_int(n as i64);
        for b in &basis {
            if sl2.h.apply(b) != b.scale(&eigenvalue) {
                eigen_ok = false;
            }
        }
        // raising into the next rung: images must land in its span, injectively
        let up_span = graded_basis(shape, d + 2 * j + 2);
        let next: Vec<Vec<Rat>> = rung_basis(j + 1)
            .iter()
            .map(|p| up_span.span.coords(p).expect("degree matches"))
            .collect();
        let mut image_coords = Vec::new();
        for b in &basis {
            let img = up_span.span.coords(&sl2.e.apply(b)).expect("degree matches");
            match coords_in_span(&next, &img) {
                Some(c) => image_coords.push(c),
                None => raise_ok = false,
            }
        }
        if row_span_rank(&image_coords) != basis.len() {
            raise_ok = false;
        }
        // lowering: zero on the bottom, down one rung above it
        if j == 0 {
            for b in &basis {
                if !sl2.f.apply(b).is_zero() {
                    bottom_ok = false;
                }
            }
        } else {
            let down_span = graded_basis(shape, d + 2 * j - 2);
            let below: Vec<Vec<Rat>> = rung_basis(j - 1)
                .iter()
                .map(|p| down_span.span.coords(p).expect("degree matches"))
                .collect();
            let mut down_coords = Vec::new();
            for b in &basis {
                let img = down_span
                    .span
                    .coords(&sl2.f.apply(b))
                    .expect("degree matches");
                match coords_in_span(&below, &img) {
                    Some(c) => down_coords.push(c),
                    None => lower_ok = false,
                }
            }
            if row_span_rank(&down_coords) != basis.len() {
                lower_ok = false;
            }
        }
        rungs.push(LadderRung {
            index: j,
            eigenvalue,
            dimension: basis.len(),
        });
    }
    Ok(WeightLadder {
        n,
        degree: d,
        rungs,
        eigenvalues_verified: eigen_ok,
        raising_injective: raise_ok,
        lowering_annihilates_bottom: bottom_ok,
        lowering_descends: lower_ok,
        pass: eigen_ok && raise_ok && bottom_ok && lower_ok,
    })
}

/// Basis of the degree-d polynomials fixed by the full orthogonal group:
/// the joint kernel of the rotation generators intersected with the +1
/// eigenspace of a determinant -1 reflection (and of -1 when n is even,
/// though rotation invariance already forces that one).
pub fn invariant_subspace(n: usize, k: usize, d: u32) -> Result<Vec<Poly>> {
    let shape = Shape::new(n, k)?;
    if k == 0 {
        return Ok(if d == 0 {
            vec![Polynomial::constant(shape, Rat::one())]
        } else {
            Vec::new()
        });
    }
    let orth = crate::operators::build_orth(n, k)?;
    let ops: Vec<&Op> = orth.list().iter().map(|(_, _, op)| op).collect();
    let mut actions = vec![SignedPermAction::reflection(shape, n)];
    if n % 2 == 0 {
        actions.push(SignedPermAction::minus_identity(shape));
    }
    let action_refs: Vec<&SignedPermAction> = actions.iter().collect();
    Ok(blocked_joint_kernel(shape, d, &ops, &action_refs))
}

/// Closed form for one-column harmonic dimensions.
pub fn harmonic_dimension_one_column(n: usize, d: u32) -> usize {
    let full = |deg: u32| -> usize {
        if n == 0 {
            return usize::from(deg == 0);
        }
        binomial(n as u128 + deg as u128 - 1, deg as u128)
            .try_into()
            .expect("fits usize")
    };
    if d < 2 {
        full(d)
    } else {
        full(d) - full(d - 2)
    }
}
